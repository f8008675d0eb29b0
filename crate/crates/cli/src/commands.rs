use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};
use twistinv::cones::{acyclicity_cones, angle_sweep, intersect, ConeSystem, ConeTag};
use twistinv::fitting::{fitting_sequence, homology_over_pid, twisted_fitting, IdealClass, IdealGcd, MinorEngine};
use twistinv::laurent::LaurentPoly;
use twistinv::novikov::{fibred_obstruction, morse_lower_bounds, novikov_numbers, vanishing_3mfd, NovikovNumbers};
use twistinv::representations::{Representation, SubstitutionMap};
use twistinv::wada::{twisted_alexander, twisted_alexander_at};
use twistinv::Error;

use crate::input::{load_complex, parse_xi, Global, Group};
use crate::Command;

pub struct Outcome {
    pub text: String,
    pub status: u8,
}

impl Outcome {
    fn new(g: &Global, json: Value, text: String, degenerate: bool) -> Self {
        let text = if g.json {
            let mut s = serde_json::to_string_pretty(&json).expect("JSON values serialize");
            s.push('\n');
            s
        } else {
            text
        };
        Outcome {
            text,
            status: u8::from(degenerate),
        }
    }
}

/// 1 for valid input with a degenerate answer, 3 for an exhausted minor
/// budget, 2 for everything else.
pub fn exit_status(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. }) => 3,
        Some(Error::NoAdmissibleColumn | Error::TrivialAbelianization) => 1,
        _ => 2,
    }
}

pub fn run(cmd: Command, g: &Global) -> Result<Outcome> {
    match cmd {
        Command::Tap { source, column } => tap(&source.load()?, column, g),
        Command::Fitting { source, complex, m } => match complex {
            Some(path) => fitting_complex(&load_complex(&path, source.ring)?, g),
            None => fitting_group(&source.load()?, m, g),
        },
        Command::Novikov { source, complex, xi } => match complex {
            Some(path) => {
                let c = load_complex(&path, source.ring)?;
                let xi = parse_xi(xi.as_deref(), c.nvars())?;
                let engine = MinorEngine::new(c.ring(), c.nvars()).with_budget(g.minor_budget);
                let n = novikov_numbers(&c, &xi, &engine)?;
                Ok(Outcome::new(g, n.to_json(), numbers_text(&n), false))
            }
            None => novikov_group(&source.load()?, xi.as_deref(), g),
        },
        Command::Cones {
            source,
            minimize,
            sweep,
            xi,
        } => {
            let group = source.load()?;
            let mut sys = cones_of(&group, g)?;
            if minimize {
                sys = sys.minimize();
            }
            cones_report(&sys, sweep, xi.as_deref(), g)
        }
        Command::Fibred { source } => {
            let group = source.load()?;
            let r = fibred_obstruction(&group.presentation, &group.psi, &group.engine(g))?;
            let mut text = format!("obstructed: {}\nwitness: {}\n", r.obstructed, r.witness.gcd);
            if let Some(d) = &r.delta {
                writeln!(text, "twisted alexander: {d}")?;
            }
            Ok(Outcome::new(g, r.to_json(), text, false))
        }
        Command::Intersect {
            source,
            with_rep,
            cones,
            minimize,
        } => {
            let mut systems = Vec::new();
            if source.given() {
                let group = source.load()?;
                systems.push(cones_of(&group, g)?);
                for path in &with_rep {
                    let text =
                        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
                    let rep = Representation::from_json(&text, &group.presentation)
                        .with_context(|| format!("in {}", path.display()))?;
                    rep.validate(&group.presentation)?;
                    let rep = match source.ring {
                        Some(r) => rep.change_ring(r)?,
                        None => rep,
                    };
                    let other = Group {
                        psi: SubstitutionMap::new(rep, group.psi.abelianization().clone())?,
                        presentation: group.presentation.clone(),
                    };
                    systems.push(cones_of(&other, g)?);
                }
            } else if !with_rep.is_empty() {
                bail!("--with-rep needs a group (--pres, --pd or --braid)");
            }
            for path in &cones {
                let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
                systems.push(ConeSystem::from_json(&text).with_context(|| format!("in {}", path.display()))?);
            }
            if systems.is_empty() {
                bail!("nothing to intersect: give a group and/or --cones files");
            }
            let mut sys = intersect(&systems)?;
            if minimize {
                sys = sys.minimize();
            }
            cones_report(&sys, None, None, g)
        }
    }
}

fn tap(group: &Group, column: Option<usize>, g: &Global) -> Result<Outcome> {
    let engine = group.engine(g);
    let d = match column {
        Some(0) => bail!("--column is 1-based"),
        Some(j) => twisted_alexander_at(&group.presentation, &group.psi, j - 1, &engine)?,
        None => twisted_alexander(&group.presentation, &group.psi, &engine)?,
    };
    Ok(Outcome::new(g, d.to_json(), format!("{d}\n"), d.is_zero()))
}

fn ideal_json(m: i64, e: &IdealGcd) -> Value {
    json!({"m": m, "class": e.class.as_str(), "gcd": e.gcd.to_string()})
}

fn fitting_group(group: &Group, m: i64, g: &Global) -> Result<Outcome> {
    let e = twisted_fitting(&group.presentation, &group.psi, m, &group.engine(g))?;
    let text = format!("delta_{m}: {} ({})\n", e.gcd, e.class.as_str());
    Ok(Outcome::new(g, ideal_json(m, &e), text, e.is_zero()))
}

fn fitting_complex(c: &twistinv::fitting::ChainComplex, g: &Global) -> Result<Outcome> {
    let engine = MinorEngine::new(c.ring(), c.nvars()).with_budget(g.minor_budget);
    let mut text = String::new();
    let mut degrees = Vec::new();
    for k in 0..=c.top() {
        let s = fitting_sequence(c, k, &engine)?;
        let ideals: Vec<Value> = s
            .entries
            .iter()
            .enumerate()
            .map(|(i, e)| ideal_json(s.first_index + i as i64, e))
            .collect();
        let reduced: Vec<String> = s.reduced().iter().map(LaurentPoly::to_string).collect();
        writeln!(
            text,
            "degree {k}: A = {}, reduced sequence [{}]",
            s.zero_count,
            reduced.join(", ")
        )?;
        for (i, e) in s.entries.iter().enumerate() {
            if e.class == IdealClass::Proper {
                writeln!(text, "  J_{} = ({})", s.first_index + i as i64, e.gcd)?;
            }
        }
        degrees.push(json!({
            "degree": k,
            "first_index": s.first_index,
            "zero_count": s.zero_count,
            "ideals": ideals,
            "reduced": reduced,
        }));
    }
    let mut out = json!({"degrees": degrees});
    if let Ok(h) = homology_over_pid(c, &engine) {
        let rows: Vec<Value> = h
            .iter()
            .map(|x| {
                let t: Vec<String> = x.torsion.iter().map(LaurentPoly::to_string).collect();
                writeln!(text, "H_{}: rank {}, torsion [{}]", x.degree, x.betti, t.join(", ")).ok();
                json!({"degree": x.degree, "betti": x.betti, "torsion": t})
            })
            .collect();
        out["homology"] = json!(rows);
    }
    Ok(Outcome::new(g, out, text, false))
}

fn numbers_text(n: &NovikovNumbers) -> String {
    let mut text = String::new();
    for d in &n.degrees {
        let tau: Vec<String> = d.tau.iter().map(LaurentPoly::to_string).collect();
        let _ = write!(text, "degree {}: bhat = {}, qhat = {}", d.degree, d.bhat, d.qhat);
        if !tau.is_empty() {
            let _ = write!(text, ", tau = [{}]", tau.join(", "));
        }
        text.push('\n');
    }
    let bounds: Vec<String> = morse_lower_bounds(n).iter().map(usize::to_string).collect();
    let _ = writeln!(text, "morse lower bounds: {}", bounds.join(" "));
    if !n.injective {
        text.push_str("note: xi is not injective; the counts are not covered by the Betti/torsion theorem\n");
    }
    text
}

fn novikov_group(group: &Group, xi: Option<&str>, g: &Global) -> Result<Outcome> {
    let xi = parse_xi(xi, group.psi.nvars())?;
    let r = vanishing_3mfd(&group.presentation, &group.psi, &xi, &group.engine(g))?;
    let mut text = format!(
        "xi: {xi}\nvanishes: {} (valid under the 3-manifold hypothesis)\n",
        r.vanishes
    );
    writeln!(text, "fitting route: A = {}, monic: {}", r.witness.gcd, r.monic)?;
    match (&r.delta, r.wada_monic) {
        (Some(d), Some(m)) => writeln!(text, "wada route: {d}, monic: {m}")?,
        _ => writeln!(text, "wada route: undefined")?,
    }
    text.push_str(&numbers_text(&r.numbers));
    Ok(Outcome::new(g, r.to_json(), text, false))
}

fn cones_of(group: &Group, g: &Global) -> Result<ConeSystem> {
    if group.psi.nvars() == 0 {
        return Err(Error::TrivialAbelianization.into());
    }
    let a = twisted_fitting(&group.presentation, &group.psi, 1, &group.engine(g))?;
    Ok(acyclicity_cones(&a.gcd))
}

fn vector(v: &[i64]) -> String {
    format!("({})", v.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
}

fn cones_report(sys: &ConeSystem, sweep: Option<usize>, xi: Option<&str>, g: &Global) -> Result<Outcome> {
    let mut json = sys.to_json();
    let tag = json["tag"].as_str().unwrap_or_default().to_string();
    let mut text = format!("dim: {}\ntag: {tag}\n", sys.dim);
    if let ConeTag::ComplementOfHyperplanes { walls } = &sys.tag {
        let w: Vec<String> = walls.iter().map(|w| vector(w)).collect();
        writeln!(text, "walls: {}", w.join(" "))?;
    }
    for (i, c) in sys.cones.iter().enumerate() {
        let v: Vec<String> = c.vertices.iter().map(|v| vector(v)).collect();
        let d: Vec<String> = c.gt.iter().map(|d| vector(d)).collect();
        writeln!(
            text,
            "cone {} at {}: <xi, d> > 0 for d in {}",
            i + 1,
            v.join(" + "),
            d.join(" ")
        )?;
    }
    if let Some(xi) = xi {
        let xi = parse_xi(Some(xi), sys.dim)?;
        let (inside, cone) = sys.membership(&xi)?;
        writeln!(text, "xi = {xi}: {}", if inside { "acyclic" } else { "not acyclic" })?;
        json["membership"] = json!({"xi": xi.to_string(), "inside": inside, "cone": cone});
    }
    if let Some(n) = sweep {
        let rows = angle_sweep(sys, n)?;
        for r in &rows {
            let cone = r.cone.map_or(String::new(), |c| format!("  cone {}", c + 1));
            writeln!(
                text,
                "{:>7.2} deg  xi = ({}, {})  {}{cone}",
                r.degrees,
                r.xi[0],
                r.xi[1],
                if r.inside { "inside" } else { "outside" }
            )?;
        }
        json["sweep"] = serde_json::to_value(&rows)?;
    }
    Ok(Outcome::new(g, json, text, sys.tag == ConeTag::Empty))
}
