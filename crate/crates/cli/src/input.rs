use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use twistinv::fitting::{ChainComplex, MinorEngine, DEFAULT_MINOR_BUDGET};
use twistinv::ingest::{meridian_map, pd_to_wirtinger, PDCode};
use twistinv::laurent::CoefficientRing;
use twistinv::novikov::CohomologyClass;
use twistinv::presentations::{abelianize, Presentation};
use twistinv::representations::{Representation, SubstitutionMap};

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Presentation file (`gens:` / `rel:` lines)
    #[arg(long, value_name = "FILE", group = "source")]
    pub pres: Option<PathBuf>,

    /// PD code file (`pd:` lines, or a `braid:` line)
    #[arg(long, value_name = "FILE", group = "source")]
    pub pd: Option<PathBuf>,

    /// Braid word such as "s1 s1 s1"; the closure is taken
    #[arg(long, value_name = "WORD", group = "source")]
    pub braid: Option<String>,

    /// Representation file (JSON); the default is trivial and 1-dimensional
    #[arg(long, value_name = "FILE")]
    pub rep: Option<PathBuf>,

    /// Coefficient ring override: Z, Q or Z/p
    #[arg(long, value_name = "RING")]
    pub ring: Option<CoefficientRing>,

    /// Map every meridian of a link to the same variable t
    #[arg(long)]
    pub one_variable: bool,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,

    /// Give up (exit 3) after this many minors
    #[arg(long, value_name = "N", default_value_t = DEFAULT_MINOR_BUDGET, global = true)]
    pub minor_budget: u64,

    /// Worker threads for minor evaluation
    #[arg(long, value_name = "N", global = true)]
    pub threads: Option<usize>,
}

/// A group with its projection and representation, ready for `ψ`.
pub struct Group {
    pub presentation: Presentation,
    pub psi: SubstitutionMap,
}

impl Group {
    pub fn engine(&self, g: &Global) -> MinorEngine {
        MinorEngine::new(self.psi.ring(), self.psi.nvars()).with_budget(g.minor_budget)
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

impl Source {
    pub fn given(&self) -> bool {
        self.pres.is_some() || self.pd.is_some() || self.braid.is_some()
    }

    pub fn load(&self) -> Result<Group> {
        let (presentation, pi) = if let Some(path) = &self.pres {
            let p = Presentation::parse(&read(path)?).with_context(|| format!("in {}", path.display()))?;
            let pi = abelianize(&p)?;
            (p, pi)
        } else {
            let code = match (&self.pd, &self.braid) {
                (Some(path), _) => PDCode::parse(&read(path)?).with_context(|| format!("in {}", path.display()))?,
                (None, Some(word)) => PDCode::parse(&format!("braid: {word}"))?,
                (None, None) => bail!("give one of --pres, --pd or --braid"),
            };
            let w = pd_to_wirtinger(&code)?;
            let multi = w.num_components > 1 && !self.one_variable;
            let m = meridian_map(&w.presentation, &w.components, multi)?;
            (w.presentation, m.map)
        };
        let rep = match &self.rep {
            Some(path) => {
                let r = Representation::from_json(&read(path)?, &presentation)
                    .with_context(|| format!("in {}", path.display()))?;
                r.validate(&presentation)?;
                match self.ring {
                    Some(ring) => r.change_ring(ring)?,
                    None => r,
                }
            }
            None => Representation::trivial(
                self.ring.unwrap_or(CoefficientRing::Integers),
                presentation.num_generators(),
            ),
        };
        let psi = SubstitutionMap::new(rep, pi)?;
        Ok(Group { presentation, psi })
    }
}

pub fn load_complex(path: &Path, ring: Option<CoefficientRing>) -> Result<ChainComplex> {
    let text = read(path)?;
    let c = ChainComplex::from_json(&text).with_context(|| format!("in {}", path.display()))?;
    match ring {
        Some(r) if r != c.ring() => bail!("--ring {r} conflicts with the complex's ring {}", c.ring()),
        _ => Ok(c),
    }
}

pub fn parse_xi(xi: Option<&str>, k: usize) -> Result<CohomologyClass> {
    let xi = match xi {
        Some(s) => CohomologyClass::parse(s)?,
        None => bail!("this command needs --xi"),
    };
    if xi.dim() != k {
        bail!("--xi has {} entries but H has rank {k}", xi.dim());
    }
    Ok(xi)
}
