//! Text form of Laurent polynomials: `t^2 - t + 1`, `2*t1*t2^-1 + 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::poly::LaurentPoly;
use super::ring::{CoefficientRing, Scalar};
use crate::error::{Error, Result};

fn var_name(nvars: usize, i: usize) -> String {
    if nvars == 1 {
        "t".to_string()
    } else {
        format!("t{}", i + 1)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let nvars = m.nvars();
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(&var_name(nvars, i))?;
        if e != 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let ring = self.ring();
        for (i, (m, c)) in self.terms().rev().enumerate() {
            let negative = ring.is_negative(c);
            let mag = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(1, self.pos + 1, msg)
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn signed_int(&mut self) -> Result<i64> {
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        let n: i64 = self.digits()?.try_into().map_err(|_| self.err("exponent too large"))?;
        if paren && !self.eat(b')') {
            return Err(self.err("expected `)`"));
        }
        Ok(if neg { -n } else { n })
    }
}

/// A coefficient with its factors, each a variable index (`None` for a bare
/// `t`) and an exponent.
type RawTerm = (Scalar, Vec<(Option<usize>, i64)>);

/// Parses a Laurent polynomial in the rendering grammar.
///
/// Variables are `t` (one variable) or `t1 .. tk`. When `nvars` is `None`
/// the arity is the largest variable index that occurs (at least 1).
pub fn parse_poly(text: &str, ring: CoefficientRing, nvars: Option<usize>) -> Result<LaurentPoly> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut raw: Vec<RawTerm> = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        match lx.peek() {
            None if !first => break,
            None => return Err(lx.err("empty polynomial")),
            Some(b'+') => {
                lx.pos += 1;
            }
            Some(b'-') => {
                lx.pos += 1;
                negative = true;
            }
            Some(_) if first => {}
            Some(c) => return Err(lx.err(format!("unexpected `{}`", c as char))),
        }
        first = false;
        let mut coeff = Scalar::one();
        let mut vars = Vec::new();
        loop {
            match lx.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = lx.digits()?;
                    let mut value = Scalar::from_integer(num);
                    if lx.eat(b'/') {
                        let den = lx.digits()?;
                        if den.is_zero() {
                            return Err(lx.err("zero denominator"));
                        }
                        value = Scalar::new(value.to_integer(), den);
                    }
                    coeff *= value;
                }
                Some(b't') => {
                    lx.pos += 1;
                    let start = lx.pos;
                    while lx.pos < lx.src.len() && lx.src[lx.pos].is_ascii_digit() {
                        lx.pos += 1;
                    }
                    let index = if start == lx.pos {
                        None
                    } else {
                        let s = std::str::from_utf8(&lx.src[start..lx.pos]).unwrap();
                        let i: usize = s.parse().map_err(|_| lx.err("bad variable index"))?;
                        if i == 0 {
                            return Err(lx.err("variables are numbered from t1"));
                        }
                        Some(i - 1)
                    };
                    let exp = if lx.eat(b'^') { lx.signed_int()? } else { 1 };
                    vars.push((index, exp));
                }
                Some(c) => return Err(lx.err(format!("unexpected `{}`", c as char))),
                None => return Err(lx.err("unexpected end of input")),
            }
            if !lx.eat(b'*') {
                break;
            }
        }
        if negative {
            coeff = -coeff;
        }
        raw.push((coeff, vars));
    }

    let uses_bare_t = raw.iter().flat_map(|(_, v)| v).any(|(i, _)| i.is_none());
    let max_index = raw
        .iter()
        .flat_map(|(_, v)| v)
        .filter_map(|(i, _)| *i)
        .max()
        .map_or(0, |i| i + 1);
    let k = nvars.unwrap_or_else(|| max_index.max(1));
    if max_index > k {
        return Err(Error::parse(1, 1, format!("variable t{max_index} exceeds arity {k}")));
    }
    if uses_bare_t && k != 1 {
        return Err(Error::parse(1, 1, "bare `t` is only allowed with one variable"));
    }
    let mut out = LaurentPoly::zero(ring, k);
    for (c, vars) in raw {
        let mut e = vec![0i64; k];
        for (i, x) in vars {
            e[i.unwrap_or(0)] += x;
        }
        let c = ring.element(c).map_err(|err| Error::parse(1, 1, err.to_string()))?;
        out.add_term(Monomial::new(e), &c);
    }
    Ok(out)
}

/// Renders an exact rational as `a` or `a/b`.
pub fn format_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else if c.is_negative() {
        format!("-{}/{}", c.numer().abs(), c.denom())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Parses `a` or `a/b` (optionally signed).
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let t = text.trim();
    let bad = || Error::Invalid(format!("`{text}` is not a rational number"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(n, d))
        }
        None => Ok(Scalar::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: CoefficientRing = CoefficientRing::Integers;

    #[test]
    fn render() {
        let p = parse_poly("1 - t + t^2", Z, None).unwrap();
        assert_eq!(p.to_string(), "t^2 - t + 1");
        let q = parse_poly("1 + 2*t1*t2^-1", Z, None).unwrap();
        assert_eq!(q.to_string(), "2*t1*t2^-1 + 1");
        assert_eq!(parse_poly("-t^-1", Z, None).unwrap().to_string(), "-t^-1");
        assert_eq!(LaurentPoly::zero(Z, 2).to_string(), "0");
        let r = parse_poly("1/2*t - 3/4", CoefficientRing::Rationals, None).unwrap();
        assert_eq!(r.to_string(), "1/2*t - 3/4");
        let f = parse_poly("-t", CoefficientRing::prime_field(5).unwrap(), None).unwrap();
        assert_eq!(f.to_string(), "4*t");
    }

    #[test]
    fn parse_variants() {
        let a = parse_poly("t^(-2) * 3 + t1", Z, Some(1)).unwrap();
        assert_eq!(a.to_string(), "t + 3*t^-2");
        let b = parse_poly("t2", Z, None).unwrap();
        assert_eq!(b.nvars(), 2);
        assert!(parse_poly("t1 + t", Z, Some(2)).is_err());
        assert!(parse_poly("t3", Z, Some(2)).is_err());
        assert!(parse_poly("1/2*t", Z, None).is_err());
        assert!(parse_poly("", Z, None).is_err());
        assert!(parse_poly("t +", Z, None).is_err());
        assert!(parse_poly("x", Z, None).is_err());
    }

    #[test]
    fn roundtrip_render_parse() {
        for s in ["t^2 - 3*t + 1", "2*t1*t2^-1 + 1", "-t1^3 + t2 - 7", "0"] {
            let k = if s.contains("t1") { 2 } else { 1 };
            let p = parse_poly(s, Z, Some(k)).unwrap();
            assert_eq!(p.to_string(), s);
        }
    }

    #[test]
    fn scalars() {
        assert_eq!(format_scalar(&parse_scalar("-6/4").unwrap()), "-3/2");
        assert_eq!(format_scalar(&parse_scalar("5").unwrap()), "5");
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }
}
