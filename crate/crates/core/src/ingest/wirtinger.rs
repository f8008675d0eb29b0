use std::collections::BTreeMap;

use super::pd::PDCode;
use crate::error::{Error, Result};
use crate::laurent::Monomial;
use crate::presentations::{Abelianization, FreeWord, Letter, Presentation};

/// A link-group presentation read off a diagram: one generator per arc, one
/// relator per crossing with the last one dropped.
#[derive(Clone, Debug)]
pub struct Wirtinger {
    pub presentation: Presentation,
    /// The link component of each generator, numbered from 0.
    pub components: Vec<usize>,
    pub num_components: usize,
    /// `+1` or `-1` per crossing, in input order.
    pub signs: Vec<i8>,
    /// The relator that was dropped, kept for presentation-independence
    /// checks.
    pub dropped: FreeWord,
}

impl Wirtinger {
    /// The full presentation with every crossing relator, one of which is a
    /// consequence of the others.
    pub fn all_relators(&self) -> Vec<FreeWord> {
        let mut all = self.presentation.relators().to_vec();
        all.push(self.dropped.clone());
        all
    }

    /// The same group with relator `i` of the full list dropped instead.
    pub fn dropping(&self, i: usize) -> Result<Presentation> {
        let mut all = self.all_relators();
        if i >= all.len() {
            return Err(Error::Invalid(format!("no relator {}", i + 1)));
        }
        all.remove(i);
        Presentation::new(self.presentation.generators().to_vec(), all)
    }
}

/// Union-find over edge indices.
struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

/// Slot `(crossing, position)`.
type Slot = (usize, usize);

struct Oriented {
    /// For each edge, the slot it runs into.
    head: Vec<Slot>,
    component: Vec<usize>,
    num_components: usize,
}

fn orient(code: &PDCode) -> Result<(Vec<u32>, Oriented)> {
    let labels: Vec<u32> = {
        let mut v: Vec<u32> = code.crossings().iter().flat_map(|c| c.0).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let index = |e: u32| labels.binary_search(&e).unwrap();
    let mut slots: Vec<Vec<Slot>> = vec![Vec::new(); labels.len()];
    for (c, x) in code.crossings().iter().enumerate() {
        for (p, &e) in x.0.iter().enumerate() {
            slots[index(e)].push((c, p));
        }
    }
    let edge_at = |(c, p): Slot| index(code.crossings()[c].0[p]);
    let other_end = |e: usize, s: Slot| if slots[e][0] == s { slots[e][1] } else { slots[e][0] };

    let n = labels.len();
    let mut head: Vec<Option<Slot>> = vec![None; n];
    let mut component = vec![usize::MAX; n];
    let mut ncomp = 0;
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        // Walk once with an arbitrary direction, then fix it up.
        let mut cycle: Vec<(usize, Slot)> = Vec::new();
        let (mut e, mut h) = (start, slots[start][0]);
        loop {
            cycle.push((e, h));
            let out = (h.0, (h.1 + 2) % 4);
            let next = edge_at(out);
            h = other_end(next, out);
            e = next;
            if e == start && h == cycle[0].1 {
                break;
            }
            if cycle.len() > n {
                return Err(Error::Invalid("PD code does not close up into components".into()));
            }
        }
        let forward = cycle.iter().any(|(_, h)| h.1 == 0);
        let backward = cycle.iter().any(|(_, h)| h.1 == 2);
        if forward && backward {
            return Err(Error::Invalid(format!(
                "edge {} runs both into and out of an under-crossing; inconsistent orientation",
                labels[start]
            )));
        }
        // A component that never passes under keeps the direction leaving
        // its smallest label; it is split from the rest anyway.
        let flip = backward;
        for &(e, h) in &cycle {
            let h = if flip { other_end(e, h) } else { h };
            if head[e].is_some() {
                return Err(Error::Invalid(format!("edge {} visited twice", labels[e])));
            }
            head[e] = Some(h);
            component[e] = ncomp;
        }
        ncomp += 1;
    }
    Ok((
        labels,
        Oriented {
            head: head.into_iter().map(Option::unwrap).collect(),
            component,
            num_components: ncomp,
        },
    ))
}

/// Builds the Wirtinger presentation. At a crossing with incoming
/// under-arc `a`, outgoing under-arc `c` and over-arc `y`, the relator is
/// `y a y⁻¹ c⁻¹` for a positive crossing and `y⁻¹ a y c⁻¹` for a negative one.
pub fn pd_to_wirtinger(code: &PDCode) -> Result<Wirtinger> {
    let (labels, o) = orient(code)?;
    let index = |e: u32| labels.binary_search(&e).unwrap();
    let n = labels.len();

    let mut dsu = Dsu((0..n).collect());
    for x in code.crossings() {
        dsu.union(index(x.0[1]), index(x.0[3]));
    }
    // arcs in order of their smallest edge label
    let mut arc_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut arc = vec![0usize; n];
    for (e, a) in arc.iter_mut().enumerate() {
        let r = dsu.find(e);
        let fresh = arc_of_root.len();
        *a = *arc_of_root.entry(r).or_insert(fresh);
    }
    let narcs = arc_of_root.len();
    let mut components = vec![0usize; narcs];
    for e in 0..n {
        components[arc[e]] = o.component[e];
    }

    let mut relators = Vec::with_capacity(code.crossings().len());
    let mut signs = Vec::with_capacity(code.crossings().len());
    for (c, x) in code.crossings().iter().enumerate() {
        let [i, j, k, l] = x.0.map(index);
        if o.head[i] != (c, 0) {
            return Err(Error::Invalid(format!(
                "crossing {x}: first label must be the incoming under-strand"
            )));
        }
        let sign: i8 = if o.head[l] == (c, 3) {
            1
        } else if o.head[j] == (c, 1) {
            -1
        } else {
            return Err(Error::Invalid(format!("crossing {x}: over-strand has no direction")));
        };
        let y = arc[j];
        let pos = sign > 0;
        relators.push(FreeWord::from_letters([
            Letter::new(y, !pos),
            Letter::new(arc[i], false),
            Letter::new(y, pos),
            Letter::new(arc[k], true),
        ]));
        signs.push(sign);
    }
    let dropped = relators.pop().unwrap_or_else(FreeWord::identity);
    let names = (1..=narcs).map(|a| format!("x{a}")).collect();
    Ok(Wirtinger {
        presentation: Presentation::new(names, relators)?,
        components,
        num_components: o.num_components,
        signs,
        dropped,
    })
}

/// The meridian homomorphism: every Wirtinger generator goes to `t`, or in
/// the multi-variable form to the variable of its component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeridianMap {
    pub multivariable: bool,
    pub map: Abelianization,
}

pub fn meridian_map(p: &Presentation, components: &[usize], multivariable: bool) -> Result<MeridianMap> {
    if components.len() != p.num_generators() {
        return Err(Error::Dimension(format!(
            "{} component labels for {} generators",
            components.len(),
            p.num_generators()
        )));
    }
    let k = if multivariable {
        components.iter().max().map_or(0, |m| m + 1)
    } else {
        1
    };
    if multivariable && (0..k).any(|c| !components.contains(&c)) {
        return Err(Error::Invalid("component labels must be 0..m without gaps".into()));
    }
    let images = components
        .iter()
        .map(|&c| {
            if multivariable {
                Monomial::var(k, c)
            } else {
                Monomial::var(1, 0)
            }
        })
        .collect();
    let map = Abelianization::new(p, images).map_err(|e| {
        Error::Invalid(format!(
            "component assignment does not factor through the relators: {e}"
        ))
    })?;
    Ok(MeridianMap { multivariable, map })
}
