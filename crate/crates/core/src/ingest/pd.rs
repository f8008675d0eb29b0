use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// One crossing `X(i, j, k, l)`: the four edge labels read counterclockwise,
/// starting from the incoming under-strand. `k` is the outgoing under-strand
/// and `j`, `l` belong to the over-strand.
///
/// ```text
///        l   k
///         \ /
///          /        under-strand i -> k
///         / \       over-strand l -> j (positive) or j -> l (negative)
///        i   j
/// ```
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing(pub [u32; 4]);

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i, j, k, l] = self.0;
        write!(f, "X({i},{j},{k},{l})")
    }
}

/// A planar diagram code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PDCode {
    crossings: Vec<Crossing>,
}

impl PDCode {
    /// Checks that every label occurs exactly twice.
    pub fn new(crossings: Vec<Crossing>) -> Result<Self> {
        if crossings.is_empty() {
            return Err(Error::Invalid("a PD code needs at least one crossing".into()));
        }
        let mut seen: BTreeMap<u32, usize> = BTreeMap::new();
        for c in &crossings {
            for &e in &c.0 {
                *seen.entry(e).or_default() += 1;
            }
        }
        if let Some((e, n)) = seen.iter().find(|(_, &n)| n != 2) {
            return Err(Error::Invalid(format!("edge {e} occurs {n} times, expected 2")));
        }
        Ok(PDCode { crossings })
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn num_edges(&self) -> usize {
        self.crossings.len() * 2
    }

    /// Reads `pd:` and `braid:` lines. Several `pd:` lines are concatenated;
    /// a braid line may be preceded by `strands: n`. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut crossings = Vec::new();
        let mut braid: Option<(Vec<i64>, usize)> = None;
        let mut strands: Option<usize> = None;
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let Some((key, rest)) = line.split_once(':') else {
                return Err(Error::parse(line_no, 1, "expected `pd:`, `braid:` or `strands:`"));
            };
            let col = key.len() + 2;
            match key.trim() {
                "pd" => crossings.extend(parse_crossings(rest, line_no, col)?),
                "braid" => {
                    if braid.is_some() {
                        return Err(Error::parse(line_no, 1, "duplicate `braid:` line"));
                    }
                    braid = Some((parse_braid_word(rest, line_no, col)?, line_no));
                }
                "strands" => {
                    let s = rest
                        .trim()
                        .parse::<usize>()
                        .map_err(|_| Error::parse(line_no, col, "expected a strand count"))?;
                    strands = Some(s);
                }
                other => return Err(Error::parse(line_no, 1, format!("unknown key `{other}`"))),
            }
        }
        match braid {
            Some((_, line)) if !crossings.is_empty() => {
                Err(Error::parse(line, 1, "give either `pd:` or `braid:`, not both"))
            }
            Some((word, _)) => braid_to_pd(&word, strands),
            None if crossings.is_empty() => Err(Error::parse(1, 1, "no `pd:` or `braid:` line")),
            None => PDCode::new(crossings),
        }
    }
}

impl fmt::Display for PDCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.crossings.iter().map(Crossing::to_string).collect();
        write!(f, "pd: {}", parts.join(" "))
    }
}

fn parse_crossings(text: &str, line: usize, col0: usize) -> Result<Vec<Crossing>> {
    let mut out = Vec::new();
    let mut rest = text;
    let mut col = col0;
    loop {
        let trimmed = rest.trim_start();
        col += rest.len() - trimmed.len();
        rest = trimmed;
        if rest.is_empty() {
            return Ok(out);
        }
        let Some(body) = rest.strip_prefix("X(") else {
            return Err(Error::parse(line, col, "expected `X(`"));
        };
        let Some(close) = body.find(')') else {
            return Err(Error::parse(line, col, "unclosed crossing"));
        };
        let labels: Vec<u32> = body[..close]
            .split(',')
            .map(|s| s.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::parse(line, col, "crossing labels must be non-negative integers"))?;
        let Ok(labels) = <[u32; 4]>::try_from(labels) else {
            return Err(Error::parse(line, col, "a crossing has exactly four labels"));
        };
        out.push(Crossing(labels));
        let used = 2 + close + 1;
        col += used;
        rest = &rest[used..];
    }
}

/// Braid generators as signed, 1-based indices: `s2` is `2`, `S2` or
/// `s2^-1` is `-2`, and `s1^3` repeats.
fn parse_braid_word(text: &str, line: usize, col0: usize) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    let mut col = col0;
    for tok in text.split(' ') {
        if tok.is_empty() {
            col += 1;
            continue;
        }
        let bad = || Error::parse(line, col, format!("bad braid generator `{tok}`"));
        let (base, power) = match tok.split_once('^') {
            Some((b, p)) => (b, p.parse::<i64>().map_err(|_| bad())?),
            None => (tok, 1),
        };
        let sign = match base.chars().next() {
            Some('s') => 1,
            Some('S') => -1,
            _ => return Err(bad()),
        };
        let index: i64 = base[1..].parse().map_err(|_| bad())?;
        if index < 1 {
            return Err(bad());
        }
        let g = if sign * power < 0 { -index } else { index };
        for _ in 0..power.unsigned_abs() {
            out.push(g);
        }
        col += tok.len() + 1;
    }
    Ok(out)
}

/// The PD code of a braid closure. Strands run upward; `σ_i` passes strand
/// `i` over strand `i + 1`, giving a positive crossing.
pub fn braid_to_pd(word: &[i64], strands: Option<usize>) -> Result<PDCode> {
    if word.is_empty() {
        return Err(Error::Invalid("empty braid word".into()));
    }
    let needed = word.iter().map(|g| g.unsigned_abs() as usize + 1).max().unwrap_or(1);
    let n = strands.unwrap_or(needed);
    if n < needed {
        return Err(Error::Invalid(format!(
            "braid uses {needed} strands but only {n} declared"
        )));
    }
    let mut used = vec![false; n];
    for g in word {
        let i = g.unsigned_abs() as usize - 1;
        used[i] = true;
        used[i + 1] = true;
    }
    if let Some(s) = used.iter().position(|u| !u) {
        return Err(Error::Invalid(format!(
            "strand {} has no crossings; its closure is a split unknot",
            s + 1
        )));
    }
    // Edges are numbered as created; closure glues the top edge of each
    // strand position to the bottom one.
    let mut current: Vec<u32> = (0..n as u32).collect();
    let bottom = current.clone();
    let mut next = n as u32;
    let mut raw = Vec::with_capacity(word.len());
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        let (a, b) = (current[i], current[i + 1]);
        let (a2, b2) = (next, next + 1);
        next += 2;
        raw.push(if g > 0 {
            // left strand a over, ends at position i + 1 as a2
            Crossing([b, a2, b2, a])
        } else {
            Crossing([a, b, a2, b2])
        });
        current[i] = b2;
        current[i + 1] = a2;
    }
    let mut glue: BTreeMap<u32, u32> = BTreeMap::new();
    for (top, bot) in current.iter().zip(&bottom) {
        glue.insert(*top, *bot);
    }
    // renumber to 1.. in order of first appearance
    let mut names: BTreeMap<u32, u32> = BTreeMap::new();
    let crossings = raw
        .into_iter()
        .map(|c| {
            Crossing(c.0.map(|e| {
                let e = glue.get(&e).copied().unwrap_or(e);
                let fresh = names.len() as u32 + 1;
                *names.entry(e).or_insert(fresh)
            }))
        })
        .collect();
    PDCode::new(crossings)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_pd_lines() {
        let c = PDCode::parse("# trefoil\npd: X(1,4,2,5) X(3,6,4,1)\npd: X(5,2,6,3)\n").unwrap();
        assert_eq!(c.crossings().len(), 3);
        assert_eq!(c.to_string(), "pd: X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
        assert!(PDCode::parse("pd: X(1,4,2,5) X(3,6,4,1)").is_err());
        assert!(matches!(PDCode::parse("pd: X(1,2,3)"), Err(Error::Parse { .. })));
        assert!(matches!(PDCode::parse("pd: Y(1,2,3,4)"), Err(Error::Parse { .. })));
        assert!(matches!(PDCode::parse("foo: 1"), Err(Error::Parse { .. })));
        assert!(PDCode::parse("").is_err());
    }

    #[test]
    fn braids() {
        let c = PDCode::parse("braid: s1 s1 s1").unwrap();
        assert_eq!(c.crossings().len(), 3);
        assert_eq!(PDCode::parse("braid: s1^3").unwrap(), c);
        let inv = PDCode::parse("braid: S1 s1^-1").unwrap();
        assert_eq!(inv.crossings().len(), 2);
        assert!(PDCode::parse("strands: 3\nbraid: s1 s1").is_err());
        assert!(PDCode::parse("braid: s0").is_err());
        assert!(PDCode::parse("braid: t1").is_err());
        assert!(PDCode::parse("pd: X(1,2,2,1)\nbraid: s1").is_err());
    }
}
