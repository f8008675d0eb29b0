use std::f64::consts::PI;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fm::{feasible_point, strictly_feasible, Constraint, Relation};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Monomial, Scalar};
use crate::novikov::CohomologyClass;

/// How the acyclic set is described beyond the list of cones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConeTag {
    Empty,
    AllNonzero,
    /// Every coefficient is a unit; the open cones fill the complement of
    /// the listed walls `⟨ξ, w⟩ = 0`, up to lower-dimensional pieces of the
    /// walls that are also acyclic.
    ComplementOfHyperplanes {
        walls: Vec<Vec<i64>>,
    },
    Generic,
}

/// An open polyhedral cone `{ξ : ⟨ξ, d⟩ > 0 for all d in gt}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone {
    /// The Newton-polytope vertex (one per intersected system).
    pub vertices: Vec<Vec<i64>>,
    pub gt: Vec<Vec<i64>>,
}

impl Cone {
    pub fn contains(&self, xi: &CohomologyClass) -> bool {
        self.gt.iter().all(|d| {
            let v: Scalar = xi.eval(&Monomial::new(d.clone()));
            v > Scalar::from_integer(0.into())
        })
    }

    /// A rational point inside the cone.
    pub fn witness(&self, dim: usize) -> Option<Vec<Scalar>> {
        strictly_feasible(&self.gt, dim)
    }
}

/// A finite union of disjoint open cones in `H^1(M; R) = R^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSystem {
    pub dim: usize,
    pub tag: ConeTag,
    pub cones: Vec<Cone>,
}

fn diff(a: &Monomial, b: &Monomial) -> Vec<i64> {
    a.exponents().iter().zip(b.exponents()).map(|(x, y)| x - y).collect()
}

fn primitive(mut d: Vec<i64>) -> Vec<i64> {
    let g = d.iter().fold(0i64, |g, &x| num_integer::Integer::gcd(&g, &x));
    if g > 1 {
        for x in &mut d {
            *x /= g;
        }
    }
    // fix the sign so that the first nonzero entry is positive
    if d.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        for x in &mut d {
            *x = -*x;
        }
    }
    d
}

fn vertex_cone(v: &Monomial, support: &[Monomial]) -> Option<Cone> {
    let gt: Vec<Vec<i64>> = support.iter().filter(|p| *p != v).map(|p| diff(v, p)).collect();
    strictly_feasible(&gt, v.nvars())?;
    Some(Cone {
        vertices: vec![v.exponents().to_vec()],
        gt,
    })
}

/// Whether `[v, w]` is an edge of the Newton polytope: some `ξ` attains its
/// maximum exactly on `{v, w}`.
fn is_edge(v: &Monomial, w: &Monomial, support: &[Monomial]) -> bool {
    let dir = diff(v, w);
    let mut cs = vec![Constraint::homogeneous(&dir, Relation::Equal)];
    for p in support {
        let d = diff(v, p);
        // points on the line through v and w tie with them for every such ξ
        let collinear = (0..d.len()).all(|i| (0..d.len()).all(|j| d[i] * dir[j] == d[j] * dir[i]));
        if !collinear {
            cs.push(Constraint::homogeneous(&d, Relation::Greater));
        }
    }
    feasible_point(&cs, v.nvars()).is_some()
}

/// The set of `ξ` for which `a` is `ξ`-monic, as a union of open cones, one
/// per Newton-polytope vertex with a unit coefficient.
pub fn acyclicity_cones(a: &LaurentPoly) -> ConeSystem {
    let dim = a.nvars();
    if a.is_zero() {
        return ConeSystem {
            dim,
            tag: ConeTag::Empty,
            cones: vec![],
        };
    }
    if a.is_monomial() {
        let tag = if a.is_unit() {
            ConeTag::AllNonzero
        } else {
            ConeTag::Empty
        };
        return ConeSystem {
            dim,
            tag,
            cones: vec![],
        };
    }
    let support = a.newton_support();
    let ring = a.ring();
    let candidates: Vec<&Monomial> = support.iter().filter(|m| ring.is_unit(&a.coefficient(m))).collect();
    #[cfg(feature = "parallel")]
    let found: Vec<Option<Cone>> = candidates.par_iter().map(|v| vertex_cone(v, &support)).collect();
    #[cfg(not(feature = "parallel"))]
    let found: Vec<Option<Cone>> = candidates.iter().map(|v| vertex_cone(v, &support)).collect();
    let cones: Vec<Cone> = found.into_iter().flatten().collect();

    let all_units = candidates.len() == support.len();
    let tag = if cones.is_empty() {
        ConeTag::Empty
    } else if all_units {
        let mut walls: Vec<Vec<i64>> = Vec::new();
        let verts: Vec<Monomial> = cones.iter().map(|c| Monomial::new(c.vertices[0].clone())).collect();
        for (i, v) in verts.iter().enumerate() {
            for w in &verts[i + 1..] {
                if is_edge(v, w, &support) {
                    let d = primitive(diff(v, w));
                    if !walls.contains(&d) {
                        walls.push(d);
                    }
                }
            }
        }
        walls.sort();
        ConeTag::ComplementOfHyperplanes { walls }
    } else {
        ConeTag::Generic
    };
    ConeSystem { dim, tag, cones }
}

impl ConeSystem {
    /// Whether `ξ` lies in the set, with the index of the cone containing
    /// it. The all-nonzero system has no cones, so the index is `None` there.
    pub fn membership(&self, xi: &CohomologyClass) -> Result<(bool, Option<usize>)> {
        if xi.dim() != self.dim {
            return Err(Error::VariableMismatch(self.dim, xi.dim()));
        }
        if xi.is_zero() {
            return Err(Error::Invalid("the cohomology class must be nonzero".into()));
        }
        match self.tag {
            ConeTag::Empty => Ok((false, None)),
            ConeTag::AllNonzero => Ok((true, None)),
            _ => Ok(match self.cones.iter().position(|c| c.contains(xi)) {
                Some(i) => (true, Some(i)),
                None => (false, None),
            }),
        }
    }

    /// Drops inequalities implied by the others in each cone.
    pub fn minimize(&self) -> ConeSystem {
        let cones = self
            .cones
            .iter()
            .map(|c| {
                let mut gt: Vec<Vec<i64>> = Vec::new();
                for d in c.gt.iter().map(|d| primitive_positive(d.clone())) {
                    if !gt.contains(&d) {
                        gt.push(d);
                    }
                }
                let mut i = 0;
                while i < gt.len() {
                    let mut cs: Vec<Constraint> = gt
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, d)| Constraint::homogeneous(d, Relation::Greater))
                        .collect();
                    let neg: Vec<i64> = gt[i].iter().map(|x| -x).collect();
                    cs.push(Constraint::homogeneous(&neg, Relation::AtLeast));
                    if feasible_point(&cs, self.dim).is_none() {
                        gt.remove(i);
                    } else {
                        i += 1;
                    }
                }
                Cone {
                    vertices: c.vertices.clone(),
                    gt,
                }
            })
            .collect();
        ConeSystem {
            dim: self.dim,
            tag: self.tag.clone(),
            cones,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "dim": self.dim,
            "tag": match &self.tag {
                ConeTag::Empty => "empty",
                ConeTag::AllNonzero => "all-nonzero",
                ConeTag::ComplementOfHyperplanes { .. } => "complement-of-hyperplanes",
                ConeTag::Generic => "generic",
            },
            "cones": self.cones.iter().map(|c| {
                let vertex = if c.vertices.len() == 1 {
                    serde_json::json!(c.vertices[0])
                } else {
                    serde_json::json!(c.vertices)
                };
                serde_json::json!({"vertex": vertex, "gt": c.gt})
            }).collect::<Vec<_>>(),
        });
        if let ConeTag::ComplementOfHyperplanes { walls } = &self.tag {
            v["walls"] = serde_json::json!(walls);
        }
        v
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct RawCone {
            vertex: serde_json::Value,
            gt: Vec<Vec<i64>>,
        }
        #[derive(Deserialize)]
        struct Raw {
            dim: usize,
            tag: String,
            #[serde(default)]
            walls: Vec<Vec<i64>>,
            cones: Vec<RawCone>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
        let tag = match raw.tag.as_str() {
            "empty" => ConeTag::Empty,
            "all-nonzero" => ConeTag::AllNonzero,
            "complement-of-hyperplanes" => ConeTag::ComplementOfHyperplanes { walls: raw.walls },
            "generic" => ConeTag::Generic,
            other => return Err(Error::Invalid(format!("unknown cone tag `{other}`"))),
        };
        let mut cones = Vec::new();
        for c in raw.cones {
            let vertices: Vec<Vec<i64>> = match serde_json::from_value::<Vec<i64>>(c.vertex.clone()) {
                Ok(v) => vec![v],
                Err(_) => {
                    serde_json::from_value(c.vertex).map_err(|e| Error::Invalid(format!("bad cone vertex: {e}")))?
                }
            };
            if c.gt.iter().chain(&vertices).any(|d| d.len() != raw.dim) {
                return Err(Error::Dimension(format!(
                    "cone vector of wrong length in dimension {}",
                    raw.dim
                )));
            }
            cones.push(Cone { vertices, gt: c.gt });
        }
        Ok(ConeSystem {
            dim: raw.dim,
            tag,
            cones,
        })
    }
}

fn primitive_positive(d: Vec<i64>) -> Vec<i64> {
    let g = d.iter().fold(0i64, |g, &x| num_integer::Integer::gcd(&g, &x));
    if g > 1 {
        d.into_iter().map(|x| x / g).collect()
    } else {
        d
    }
}

/// `⋂ V(ρ_i)`: pairwise conjunctions of cones, pruned by feasibility.
pub fn intersect(systems: &[ConeSystem]) -> Result<ConeSystem> {
    let first = systems
        .first()
        .ok_or_else(|| Error::Invalid("nothing to intersect".into()))?;
    let mut acc = first.clone();
    for s in &systems[1..] {
        if s.dim != acc.dim {
            return Err(Error::VariableMismatch(acc.dim, s.dim));
        }
        acc = intersect_two(&acc, s);
    }
    Ok(acc)
}

fn intersect_two(a: &ConeSystem, b: &ConeSystem) -> ConeSystem {
    let dim = a.dim;
    match (&a.tag, &b.tag) {
        (ConeTag::Empty, _) | (_, ConeTag::Empty) => {
            return ConeSystem {
                dim,
                tag: ConeTag::Empty,
                cones: vec![],
            };
        }
        (ConeTag::AllNonzero, _) => return b.clone(),
        (_, ConeTag::AllNonzero) => return a.clone(),
        _ => {}
    }
    let mut cones = Vec::new();
    for x in &a.cones {
        for y in &b.cones {
            let mut gt = x.gt.clone();
            gt.extend(y.gt.iter().filter(|d| !x.gt.contains(d)).cloned());
            if strictly_feasible(&gt, dim).is_some() {
                let mut vertices = x.vertices.clone();
                vertices.extend(y.vertices.iter().cloned());
                cones.push(Cone { vertices, gt });
            }
        }
    }
    let tag = if cones.is_empty() {
        ConeTag::Empty
    } else {
        match (&a.tag, &b.tag) {
            (ConeTag::ComplementOfHyperplanes { walls: w1 }, ConeTag::ComplementOfHyperplanes { walls: w2 }) => {
                let mut walls = w1.clone();
                walls.extend(w2.iter().filter(|w| !w1.contains(w)).cloned());
                walls.sort();
                ConeTag::ComplementOfHyperplanes { walls }
            }
            _ => ConeTag::Generic,
        }
    };
    ConeSystem { dim, tag, cones }
}

/// One sample of a planar angle sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub degrees: f64,
    /// The rational direction actually tested.
    pub xi: [String; 2],
    pub inside: bool,
    pub cone: Option<usize>,
}

/// Tests `n` equally spaced directions of the plane (`k = 2`), each
/// replaced by a nearby rational vector.
pub fn angle_sweep(sys: &ConeSystem, n: usize) -> Result<Vec<SweepRow>> {
    if sys.dim != 2 {
        return Err(Error::Dimension(format!(
            "angle sweep needs dimension 2, got {}",
            sys.dim
        )));
    }
    const DEN: i64 = 10_000;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let theta = 2.0 * PI * i as f64 / n as f64;
        let q = |x: f64| Scalar::new(((x * DEN as f64).round() as i64).into(), DEN.into());
        let xi = CohomologyClass::new(vec![q(theta.cos()), q(theta.sin())]);
        let (inside, cone) = sys.membership(&xi)?;
        let vals = xi.values();
        out.push(SweepRow {
            degrees: 360.0 * i as f64 / n as f64,
            xi: [vals[0].to_string(), vals[1].to_string()],
            inside,
            cone,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{parse_poly, CoefficientRing};
    use crate::novikov::is_xi_monic;

    const Z: CoefficientRing = CoefficientRing::Integers;

    fn p(s: &str, k: usize) -> LaurentPoly {
        parse_poly(s, Z, Some(k)).unwrap()
    }

    #[test]
    fn triangle() {
        let sys = acyclicity_cones(&p("1 + t1 + t2", 2));
        assert_eq!(sys.cones.len(), 3);
        let by_vertex = |v: &[i64]| sys.cones.iter().find(|c| c.vertices[0] == v).unwrap().gt.clone();
        assert_eq!(by_vertex(&[0, 0]), vec![vec![0, -1], vec![-1, 0]]);
        assert_eq!(by_vertex(&[1, 0]), vec![vec![1, 0], vec![1, -1]]);
        assert_eq!(by_vertex(&[0, 1]), vec![vec![0, 1], vec![-1, 1]]);
        let xi = |a, b| CohomologyClass::from_ints(&[a, b]);
        let (inside, cone) = sys.membership(&xi(2, 1)).unwrap();
        assert!(inside);
        assert_eq!(sys.cones[cone.unwrap()].vertices[0], vec![1, 0]);
        assert!(!sys.membership(&xi(1, 1)).unwrap().0);
        // on the wall ξ1 = ξ2 but still acyclic
        assert!(sys.membership(&xi(-1, -1)).unwrap().0);
        assert_eq!(
            sys.tag,
            ConeTag::ComplementOfHyperplanes {
                walls: vec![vec![0, 1], vec![1, -1], vec![1, 0]]
            }
        );
    }

    #[test]
    fn degenerate_cases() {
        assert_eq!(acyclicity_cones(&LaurentPoly::zero(Z, 2)).tag, ConeTag::Empty);
        assert_eq!(acyclicity_cones(&p("-t1*t2^-1", 2)).tag, ConeTag::AllNonzero);
        assert_eq!(acyclicity_cones(&p("2*t", 1)).tag, ConeTag::Empty);
        let q = parse_poly("2*t", CoefficientRing::Rationals, Some(1)).unwrap();
        assert_eq!(acyclicity_cones(&q).tag, ConeTag::AllNonzero);
        // interior point 2*t1*t2 is not a vertex and has a non-unit coefficient
        let g = acyclicity_cones(&p("1 + t1^2 + t2^2 + 2*t1*t2", 2));
        assert_eq!(g.tag, ConeTag::Generic);
        assert_eq!(g.cones.len(), 3);
        let line = acyclicity_cones(&parse_poly("2*t^2 - 3*t + 2", CoefficientRing::Rationals, Some(1)).unwrap());
        assert_eq!(line.tag, ConeTag::ComplementOfHyperplanes { walls: vec![vec![1]] });
        let sq = acyclicity_cones(&p("1 - 2*t1 + t1^2 + t2", 2));
        assert_eq!(sq.cones.len(), 3);
        let e = acyclicity_cones(&p("2 + 2*t1 + 3*t2", 2));
        assert_eq!((e.tag, e.cones.len()), (ConeTag::Empty, 0));
    }

    #[test]
    fn intersections() {
        let s = acyclicity_cones(&p("1 + t1 + t2", 2));
        let all = acyclicity_cones(&p("1", 2));
        let empty = acyclicity_cones(&LaurentPoly::zero(Z, 2));
        assert_eq!(intersect(&[all, s.clone()]).unwrap(), s);
        assert_eq!(intersect(&[s.clone(), empty]).unwrap().tag, ConeTag::Empty);

        let line = acyclicity_cones(&p("1 + t1", 2));
        let both = intersect(&[s.clone(), line.clone()]).unwrap();
        for a in -5i64..=5 {
            for b in -5i64..=5 {
                if (a, b) == (0, 0) {
                    continue;
                }
                let xi = CohomologyClass::from_ints(&[a, b]);
                let expected = s.membership(&xi).unwrap().0 && line.membership(&xi).unwrap().0;
                assert_eq!(both.membership(&xi).unwrap().0, expected, "{a},{b}");
            }
        }
        assert!(intersect(&[s, acyclicity_cones(&p("1 + t", 1))]).is_err());
    }

    #[test]
    fn minimize_and_json() {
        let sys = acyclicity_cones(&p("1 + t1 + t2 + t1*t2 + 3*t1^2*t2^-1", 2));
        let m = sys.minimize();
        for (a, b) in sys.cones.iter().zip(&m.cones) {
            assert!(b.gt.len() <= a.gt.len());
        }
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                if (a, b) != (0, 0) {
                    let xi = CohomologyClass::from_ints(&[a, b]);
                    assert_eq!(sys.membership(&xi).unwrap(), m.membership(&xi).unwrap());
                }
            }
        }
        let back = ConeSystem::from_json(&sys.to_json().to_string()).unwrap();
        assert_eq!(back, sys);
        let both = intersect(&[sys.clone(), acyclicity_cones(&p("1 + t2", 2))]).unwrap();
        assert_eq!(ConeSystem::from_json(&both.to_json().to_string()).unwrap(), both);
    }

    #[test]
    fn sweep() {
        let sys = acyclicity_cones(&p("1 + t1 + t2", 2));
        let rows = angle_sweep(&sys, 8).unwrap();
        let inside: Vec<bool> = rows.iter().map(|r| r.inside).collect();
        // 0°, 45° (tie), 90°, 135°, 180°, 225°, 270°, 315°
        assert_eq!(inside, vec![true, false, true, true, false, true, false, true]);
        let a = p("1 + t1 + t2", 2);
        for r in &rows {
            let xi = CohomologyClass::parse(&format!("{},{}", r.xi[0], r.xi[1])).unwrap();
            assert_eq!(r.inside, is_xi_monic(&a, &xi).unwrap());
        }
    }
}
