use std::cmp::Ordering as CmpOrdering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A monomial as a dense exponent vector with trailing zeros trimmed, so
/// equal monomials have equal representations. `Ord` is graded
/// lexicographic with x1 > x2 > ...
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u16>);

/// Term orders. All are graded or lexicographic with x1 > x2 > ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    Grlex,
    Grevlex,
    Lex,
}

impl FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grlex" => Ok(MonomialOrder::Grlex),
            "grevlex" => Ok(MonomialOrder::Grevlex),
            "lex" => Ok(MonomialOrder::Lex),
            _ => Err(Error::Parse(format!("unknown term order `{s}`"))),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonomialOrder::Grlex => "grlex",
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Lex => "lex",
        })
    }
}

fn lex_cmp(a: &[u16], b: &[u16]) -> CmpOrdering {
    let n = a.len().max(b.len());
    for i in 0..n {
        let (x, y) = (a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0));
        if x != y {
            return x.cmp(&y);
        }
    }
    CmpOrdering::Equal
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> CmpOrdering {
        match self {
            MonomialOrder::Lex => lex_cmp(&a.0, &b.0),
            MonomialOrder::Grlex => a.degree().cmp(&b.degree()).then_with(|| lex_cmp(&a.0, &b.0)),
            MonomialOrder::Grevlex => a.degree().cmp(&b.degree()).then_with(|| {
                let n = a.0.len().max(b.0.len());
                for i in (0..n).rev() {
                    let (x, y) = (a.exponent(i), b.exponent(i));
                    if x != y {
                        return y.cmp(&x);
                    }
                }
                CmpOrdering::Equal
            }),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> CmpOrdering {
        MonomialOrder::Grlex.cmp(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<CmpOrdering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    /// `x_{i+1}` (variables are 0-based internally).
    pub fn var(i: usize) -> Monomial {
        Monomial::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u16) -> Monomial {
        let mut v = vec![0; i + 1];
        v[i] = e;
        Monomial::from_exponents(v)
    }

    pub fn from_exponents(mut v: Vec<u16>) -> Monomial {
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// One more than the highest variable index that occurs.
    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let n = self.0.len().max(o.0.len());
        Monomial((0..n).map(|i| self.exponent(i) + o.exponent(i)).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.len() <= o.0.len() && self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self` when `self` divides `o`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        if !self.divides(o) {
            return None;
        }
        Some(Monomial::from_exponents(
            (0..o.0.len()).map(|i| o.exponent(i) - self.exponent(i)).collect(),
        ))
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let n = self.0.len().max(o.0.len());
        Monomial((0..n).map(|i| self.exponent(i).max(o.exponent(i))).collect())
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `Some(i)` if this is a pure power `x_i^e` with `e ≥ 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let nz: Vec<usize> = (0..self.0.len()).filter(|&i| self.0[i] > 0).collect();
        (nz.len() == 1).then(|| nz[0])
    }

    /// All monomials of degree `d` in `nvars` variables, ascending in grlex.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial::one());
            }
            return out;
        }
        let mut cur = vec![0u16; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left as u16;
                out.push(Monomial::from_exponents(cur.clone()));
                cur[i] = 0;
                return;
            }
            for e in 0..=left {
                cur[i] = e as u16;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, d, &mut cur, &mut out);
        out.sort();
        out
    }

    /// Number of monomials of degree `d` in `nvars` variables.
    pub fn count_of_degree(nvars: usize, d: u32) -> u128 {
        if nvars == 0 {
            return (d == 0) as u128;
        }
        let (n, k) = (d as u128 + nvars as u128 - 1, nvars as u128 - 1);
        (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// Parses one factor like `x3` or `x3^2`.
pub(crate) fn parse_factor(tok: &str) -> Result<Monomial> {
    let bad = || Error::Parse(format!("bad monomial factor `{tok}`"));
    let rest = tok.strip_prefix('x').ok_or_else(bad)?;
    let (v, e) = match rest.split_once('^') {
        Some((v, e)) => (v, e.parse::<u16>().map_err(|_| bad())?),
        None => (rest, 1),
    };
    let v: usize = v.parse().map_err(|_| bad())?;
    if v == 0 {
        return Err(bad());
    }
    Ok(Monomial::var_pow(v - 1, e))
}

impl FromStr for Monomial {
    type Err = Error;

    /// `1`, or factors like `x1^2 x3` separated by spaces or `*`.
    fn from_str(s: &str) -> Result<Monomial> {
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::one());
        }
        let mut m = Monomial::one();
        let mut any = false;
        for tok in s.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            m = m.mul(&parse_factor(tok)?);
            any = true;
        }
        if !any {
            return Err(Error::Parse("empty monomial".into()));
        }
        Ok(m)
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn grlex_order() {
        assert!(m("x1") > m("x2"));
        assert!(m("x2^2") > m("x1"));
        assert!(m("x1 x3") > m("x2^2"));
        assert!(m("x1") > m("1"));
        let d2 = Monomial::all_of_degree(3, 2);
        assert_eq!(d2.len(), 6);
        assert_eq!(d2.first().unwrap(), &m("x3^2"));
        assert_eq!(d2.last().unwrap(), &m("x1^2"));
        assert_eq!(Monomial::count_of_degree(3, 2), 6);
        assert_eq!(Monomial::count_of_degree(0, 0), 1);
    }

    #[test]
    fn orders_differ() {
        // x1 x3 vs x2^2: grlex says x1 x3 > x2^2, grevlex says x2^2 > x1 x3.
        assert_eq!(MonomialOrder::Grlex.cmp(&m("x1 x3"), &m("x2^2")), CmpOrdering::Greater);
        assert_eq!(MonomialOrder::Grevlex.cmp(&m("x1 x3"), &m("x2^2")), CmpOrdering::Less);
        assert_eq!(MonomialOrder::Lex.cmp(&m("x1"), &m("x2^5")), CmpOrdering::Greater);
    }

    #[test]
    fn arithmetic_and_text() {
        let a = m("x1^2 x3");
        let b = m("x1 x2");
        assert_eq!(a.lcm(&b), m("x1^2 x2 x3"));
        assert!(m("x1").divides(&a));
        assert!(!b.divides(&a));
        assert_eq!(m("x1").div(&a).unwrap(), m("x1 x3"));
        assert_eq!(a.to_string(), "x1^2 x3");
        assert_eq!(Monomial::one().to_string(), "1");
        assert_eq!(m("x2*x2"), m("x2^2"));
        assert_eq!(m("x4^3").pure_power_var(), Some(3));
        assert!("x0".parse::<Monomial>().is_err());
        assert!("y1".parse::<Monomial>().is_err());
    }
}
