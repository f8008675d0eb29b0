//! WebAssembly bindings for the `www/` demo page.
//!
//! Each export takes the group as text and answers with a JSON string. The
//! text is read as a PD code when it contains `X(` or a `braid:` line, and
//! as a presentation otherwise. `rep` is an optional representation in the
//! JSON format of `twistinv::representations`; an empty string means the
//! trivial 1-dimensional one.

use serde_json::{json, Value};
use twistinv::cones::{acyclicity_cones, angle_sweep};
use twistinv::fitting::{twisted_fitting, MinorEngine};
use twistinv::ingest::{meridian_map, pd_to_wirtinger, PDCode};
use twistinv::laurent::CoefficientRing;
use twistinv::novikov::{fibred_obstruction, CohomologyClass};
use twistinv::presentations::{abelianize, Presentation};
use twistinv::representations::{Representation, SubstitutionMap};
use twistinv::wada::twisted_alexander;
use wasm_bindgen::prelude::wasm_bindgen;

/// The browser has no way to interrupt a long computation, so the page
/// gets a smaller minor budget than the command line.
const WEB_MINOR_BUDGET: u64 = 200_000;

type Answer = Result<Value, String>;

struct Group {
    presentation: Presentation,
    psi: SubstitutionMap,
}

impl Group {
    fn engine(&self) -> MinorEngine {
        MinorEngine::new(self.psi.ring(), self.psi.nvars()).with_budget(WEB_MINOR_BUDGET)
    }
}

fn looks_like_pd(text: &str) -> bool {
    text.contains("X(") || text.lines().any(|l| l.trim_start().starts_with("braid:"))
}

fn load(text: &str, rep: &str) -> Result<Group, String> {
    let err = |e: twistinv::Error| e.to_string();
    let (presentation, pi) = if looks_like_pd(text) {
        let code = if text.contains("pd:") || text.contains("braid:") {
            PDCode::parse(text)
        } else {
            PDCode::parse(&format!("pd: {}", text.trim()))
        };
        let w = pd_to_wirtinger(&code.map_err(err)?).map_err(err)?;
        let m = meridian_map(&w.presentation, &w.components, w.num_components > 1).map_err(err)?;
        (w.presentation, m.map)
    } else {
        let p = Presentation::parse(text).map_err(err)?;
        let pi = abelianize(&p).map_err(err)?;
        (p, pi)
    };
    let rep = if rep.trim().is_empty() {
        Representation::trivial(CoefficientRing::Integers, presentation.num_generators())
    } else {
        let r = Representation::from_json(rep, &presentation).map_err(err)?;
        r.validate(&presentation).map_err(err)?;
        r
    };
    let psi = SubstitutionMap::new(rep, pi).map_err(err)?;
    Ok(Group { presentation, psi })
}

/// Twisted Alexander polynomial with its numerator and denominator.
pub fn tap_json(text: &str, rep: &str) -> Answer {
    let g = load(text, rep)?;
    let d = twisted_alexander(&g.presentation, &g.psi, &g.engine()).map_err(|e| e.to_string())?;
    Ok(d.to_json())
}

/// Fibring obstruction together with its witness.
pub fn fibred_json(text: &str, rep: &str) -> Answer {
    let g = load(text, rep)?;
    let r = fibred_obstruction(&g.presentation, &g.psi, &g.engine()).map_err(|e| e.to_string())?;
    Ok(r.to_json())
}

/// Acyclicity cones of A(G, ρ). With `xi` nonempty the answer also says
/// which cone holds that class, and with `sweep > 0` a rank 2 group gets
/// that many sampled directions.
pub fn cones_json(text: &str, rep: &str, xi: &str, sweep: usize) -> Answer {
    let g = load(text, rep)?;
    if g.psi.nvars() == 0 {
        return Err("the abelianization has rank 0".into());
    }
    let a = twisted_fitting(&g.presentation, &g.psi, 1, &g.engine()).map_err(|e| e.to_string())?;
    let sys = acyclicity_cones(&a.gcd);
    let mut v = sys.to_json();
    v["polynomial"] = json!(a.gcd.to_string());
    if !xi.trim().is_empty() {
        let class = CohomologyClass::parse(xi).map_err(|e| e.to_string())?;
        let (inside, cone) = sys.membership(&class).map_err(|e| e.to_string())?;
        v["membership"] = json!({"xi": class.to_string(), "inside": inside, "cone": cone});
    }
    if sweep > 0 && sys.dim == 2 {
        let rows = angle_sweep(&sys, sweep).map_err(|e| e.to_string())?;
        v["sweep"] = serde_json::to_value(rows).map_err(|e| e.to_string())?;
    }
    Ok(v)
}

fn export(a: Answer) -> Result<String, String> {
    a.map(|v| v.to_string())
}

#[wasm_bindgen]
pub fn tap(text: &str, rep: &str) -> Result<String, String> {
    export(tap_json(text, rep))
}

#[wasm_bindgen]
pub fn fibred(text: &str, rep: &str) -> Result<String, String> {
    export(fibred_json(text, rep))
}

#[wasm_bindgen]
pub fn cones(text: &str, rep: &str, xi: &str, sweep: usize) -> Result<String, String> {
    export(cones_json(text, rep, xi, sweep))
}
