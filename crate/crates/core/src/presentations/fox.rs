use super::group_ring::GroupRingElement;
use super::word::{FreeWord, Letter};

/// The Fox derivative `∂w/∂g`.
///
/// Scans the word left to right with the running prefix `u`: a letter `g`
/// contributes `u`, a letter `g^-1` contributes `-u g^-1`.
pub fn fox_derivative(w: &FreeWord, generator: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        if l.generator == generator {
            if l.inverse {
                prefix.push(l);
                out.add_term(FreeWord::from_letters(prefix.iter().copied()), -1);
                continue;
            }
            out.add_term(FreeWord::from_letters(prefix.iter().copied()), 1);
        }
        prefix.push(l);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(pairs: &[(usize, i64)]) -> FreeWord {
        FreeWord::from_pairs(pairs)
    }

    #[test]
    fn axioms() {
        assert_eq!(fox_derivative(&FreeWord::generator(0), 0), GroupRingElement::one());
        assert_eq!(fox_derivative(&w(&[(0, 1), (1, 1)]), 0), GroupRingElement::one());
        let xinv = w(&[(0, -1)]);
        assert_eq!(fox_derivative(&xinv, 0), GroupRingElement::term(xinv.clone(), -1));
        assert!(fox_derivative(&FreeWord::generator(1), 0).is_zero());
    }

    #[test]
    fn trefoil_relator() {
        // r = x y x y^-1 x^-1 y^-1, d r / d x = 1 + x y - x y x y^-1 x^-1
        let r = w(&[(0, 1), (1, 1), (0, 1), (1, -1), (0, -1), (1, -1)]);
        let mut expected = GroupRingElement::one();
        expected.add_term(w(&[(0, 1), (1, 1)]), 1);
        expected.add_term(w(&[(0, 1), (1, 1), (0, 1), (1, -1), (0, -1)]), -1);
        assert_eq!(fox_derivative(&r, 0), expected);
    }

    fn word() -> impl Strategy<Value = FreeWord> {
        prop::collection::vec((0usize..3, any::<bool>()), 0..8)
            .prop_map(|v| FreeWord::from_letters(v.into_iter().map(|(g, i)| Letter::new(g, i))))
    }

    proptest! {
        #[test]
        fn product_rule(u in word(), v in word(), g in 0usize..3) {
            let lhs = fox_derivative(&(&u * &v), g);
            let rhs = &fox_derivative(&u, g) + &(&GroupRingElement::word(u.clone()) * &fox_derivative(&v, g));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn augmentation_is_exponent_sum(u in word(), g in 0usize..3) {
            prop_assert_eq!(fox_derivative(&u, g).augmentation(), u.exponent_sums(3)[g]);
        }

        #[test]
        fn fundamental_formula(u in word()) {
            // sum_j (d u / d g_j)(g_j - 1) = u - 1
            let mut acc = GroupRingElement::zero();
            for g in 0..3 {
                let gm1 = &GroupRingElement::word(FreeWord::generator(g)) - &GroupRingElement::one();
                acc = &acc + &(&fox_derivative(&u, g) * &gm1);
            }
            prop_assert_eq!(acc, &GroupRingElement::word(u) - &GroupRingElement::one());
        }
    }
}
