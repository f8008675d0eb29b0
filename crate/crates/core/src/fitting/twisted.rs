use super::complex::ChainComplex;
use super::minors::{IdealGcd, MinorEngine};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::presentations::{GroupRingElement, Presentation};
use crate::representations::SubstitutionMap;

/// The front `0 <- ZG <- ZG^s <- ZG^l` of the free resolution of `Z`
/// coming from a presentation, with `∂_1 = (1 - g_j)` and `∂_2` the
/// Alexander matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionFront {
    pub ranks: [usize; 3],
    pub d1: Matrix<GroupRingElement>,
    pub d2: Matrix<GroupRingElement>,
}

pub fn resolution_from_presentation(p: &Presentation) -> ResolutionFront {
    ResolutionFront {
        ranks: [1, p.num_generators(), p.num_relators()],
        d1: p.fundamental_column(),
        d2: p.alexander_matrix(),
    }
}

impl ResolutionFront {
    /// `ψ` applied blockwise; the result is checked to be a complex over `Λ`.
    pub fn twisted(&self, psi: &SubstitutionMap) -> Result<ChainComplex> {
        let n = psi.dim();
        ChainComplex::new(
            psi.ring(),
            psi.nvars(),
            self.ranks.iter().map(|r| r * n).collect(),
            vec![psi.psi_matrix(&self.d1), psi.psi_matrix(&self.d2)],
        )
    }
}

/// `δ_m(G, ρ_π)`: the GCD of `I_{n(s-1) - m + 1}(ψ(∂_2))`. The case `m = 1`
/// is `A(G, ρ_π)`.
pub fn twisted_fitting(p: &Presentation, psi: &SubstitutionMap, m: i64, engine: &MinorEngine) -> Result<IdealGcd> {
    let d2 = psi.psi_matrix(&p.alexander_matrix());
    let size = (psi.dim() * p.num_generators()) as i64 - psi.dim() as i64 - m + 1;
    engine.ideal_gcd(&d2, size)
}
