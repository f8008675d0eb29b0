use std::fmt;

use super::fox::fox_derivative;
use super::group_ring::GroupRingElement;
use super::word::{FreeWord, Letter};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// A finite presentation `<g_1, ..., g_s | h_1, ..., h_l>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<FreeWord>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_lowercase()) && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<FreeWord>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Invalid("a presentation needs at least one generator".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if !valid_name(g) {
                return Err(Error::Invalid(format!("bad generator name `{g}`")));
            }
            if generators[..i].contains(g) {
                return Err(Error::Invalid(format!("duplicate generator `{g}`")));
            }
        }
        for r in &relators {
            if r.max_generator().is_some_and(|g| g >= generators.len()) {
                return Err(Error::Invalid("relator references an unknown generator".into()));
            }
        }
        Ok(Presentation { generators, relators })
    }

    /// Generators named `x1 .. xs` (or `x`, `y`, `z`, `w` when `s <= 4`).
    pub fn with_default_names(ngens: usize, relators: Vec<FreeWord>) -> Result<Self> {
        let names = if ngens <= 4 {
            ["x", "y", "z", "w"][..ngens].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=ngens).map(|i| format!("x{i}")).collect()
        };
        Self::new(names, relators)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn num_relators(&self) -> usize {
        self.relators.len()
    }

    /// `s - l`.
    pub fn deficiency(&self) -> i64 {
        self.generators.len() as i64 - self.relators.len() as i64
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// The same group with the given relators removed.
    pub fn without_relator(&self, index: usize) -> Self {
        let mut relators = self.relators.clone();
        relators.remove(index);
        Presentation {
            generators: self.generators.clone(),
            relators,
        }
    }

    /// The `l x s` matrix of Fox derivatives `∂h_i/∂g_j`.
    pub fn alexander_matrix(&self) -> Matrix<GroupRingElement> {
        let s = self.generators.len();
        let data = self
            .relators
            .iter()
            .flat_map(|r| (0..s).map(move |j| fox_derivative(r, j)))
            .collect();
        Matrix::with_shape(self.relators.len(), s, data)
    }

    /// The column `(1 - g_1, ..., 1 - g_s)^T`.
    pub fn fundamental_column(&self) -> Matrix<GroupRingElement> {
        let s = self.generators.len();
        Matrix::with_shape(
            s,
            1,
            (0..s)
                .map(|j| GroupRingElement::one_minus(FreeWord::generator(j)))
                .collect(),
        )
    }

    /// The `l x s` matrix of relator exponent sums.
    pub fn exponent_matrix(&self) -> Matrix<i64> {
        let s = self.generators.len();
        Matrix::with_shape(
            self.relators.len(),
            s,
            self.relators.iter().flat_map(|r| r.exponent_sums(s)).collect(),
        )
    }

    /// Parses the text format:
    ///
    /// ```text
    /// # trefoil
    /// gens: x y
    /// rel: x y x Y X Y
    /// ```
    ///
    /// Lowercase tokens are generators, uppercase their inverses, and a
    /// token may carry a power `^n`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut generators: Option<Vec<String>> = None;
        let mut relators = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let Some((key, rest)) = line.split_once(':') else {
                return Err(Error::parse(line_no, 1, "expected `gens:` or `rel:`"));
            };
            let body_col = key.len() + 2;
            match key.trim() {
                "gens" => {
                    if generators.is_some() {
                        return Err(Error::parse(line_no, 1, "duplicate `gens:` line"));
                    }
                    let mut names = Vec::new();
                    for (col, tok) in tokens(rest, body_col) {
                        if !valid_name(tok) {
                            return Err(Error::parse(line_no, col, format!("bad generator name `{tok}`")));
                        }
                        if names.iter().any(|n| n == tok) {
                            return Err(Error::parse(line_no, col, format!("duplicate generator `{tok}`")));
                        }
                        names.push(tok.to_string());
                    }
                    if names.is_empty() {
                        return Err(Error::parse(line_no, body_col, "no generators listed"));
                    }
                    generators = Some(names);
                }
                "rel" => {
                    let Some(names) = &generators else {
                        return Err(Error::parse(line_no, 1, "`rel:` before `gens:`"));
                    };
                    relators.push(parse_word(rest, names, line_no, body_col)?);
                }
                other => {
                    return Err(Error::parse(line_no, 1, format!("unknown key `{other}`")));
                }
            }
        }
        let generators = generators.ok_or_else(|| Error::parse(1, 1, "missing `gens:` line"))?;
        Presentation::new(generators, relators)
    }

    pub fn parse_word(&self, text: &str) -> Result<FreeWord> {
        parse_word(text, &self.generators, 1, 1)
    }
}

fn tokens(s: &str, offset: usize) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        if c.is_whitespace() {
            if let Some(st) = start.take() {
                out.push((offset + st, &s[st..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push((offset + st, &s[st..]));
    }
    out.into_iter()
}

fn parse_word(text: &str, names: &[String], line: usize, offset: usize) -> Result<FreeWord> {
    let mut letters = Vec::new();
    for (col, tok) in tokens(text, offset) {
        let (base, power) = match tok.split_once('^') {
            Some((b, p)) => {
                let p: i64 = p
                    .parse()
                    .map_err(|_| Error::parse(line, col, format!("bad power in `{tok}`")))?;
                (b, p)
            }
            None => (tok, 1),
        };
        if base == "1" {
            continue;
        }
        let lower = base.to_lowercase();
        let inverse = if base == lower {
            false
        } else if base == base.to_uppercase() {
            true
        } else {
            return Err(Error::parse(line, col, format!("mixed case token `{tok}`")));
        };
        let Some(g) = names.iter().position(|n| *n == lower) else {
            return Err(Error::parse(line, col, format!("unknown generator `{lower}`")));
        };
        let inverse = inverse ^ (power < 0);
        for _ in 0..power.unsigned_abs() {
            letters.push(Letter::new(g, inverse));
        }
    }
    Ok(FreeWord::from_letters(letters))
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.generators.join(" "))?;
        for r in &self.relators {
            writeln!(f, "rel: {}", r.render(&self.generators))?;
        }
        Ok(())
    }
}
