use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{parse_rational, Field};

use super::monomial::{parse_factor, Monomial, MonomialOrder};

/// A polynomial with nonzero coefficients in `F`, terms keyed by monomial
/// (ascending grlex).
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    field: F,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> Polynomial<F> {
    pub fn zero(field: F) -> Self {
        Polynomial {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Polynomial::term(field, Monomial::one(), c)
    }

    pub fn monomial(field: F, m: Monomial) -> Self {
        let one = field.one();
        Polynomial::term(field, m, one)
    }

    pub fn term(field: F, m: Monomial, c: F::Elem) -> Self {
        let mut p = Polynomial::zero(field);
        p.add_term(m, c);
        p
    }

    pub fn var(field: F, i: usize) -> Self {
        Polynomial::monomial(field, Monomial::var(i))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending grlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, m: Monomial, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = self.field.add(v, &c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.neg(&self.field.one()))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut p = Polynomial::zero(self.field.clone());
        if self.field.is_zero(c) {
            return p;
        }
        for (m, v) in &self.terms {
            p.terms.insert(m.clone(), self.field.mul(v, c));
        }
        p
    }

    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let mut p = Polynomial::zero(self.field.clone());
        if self.field.is_zero(c) {
            return p;
        }
        for (t, v) in &self.terms {
            p.terms.insert(t.mul(m), self.field.mul(v, c));
        }
        p
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Polynomial::zero(self.field.clone());
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                p.add_term(a.mul(b), self.field.mul(x, y));
            }
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut p = Polynomial::constant(self.field.clone(), self.field.one());
        for _ in 0..e {
            p = p.mul(self);
        }
        p
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Leading monomial and coefficient under `order`.
    pub fn leading(&self, order: MonomialOrder) -> Option<(&Monomial, &F::Elem)> {
        match order {
            MonomialOrder::Grlex => self.terms.iter().next_back(),
            _ => self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0)),
        }
    }

    /// Scales so the leading coefficient under `order` is one.
    pub fn monic(&self, order: MonomialOrder) -> Self {
        match self.leading(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Number of variable slots used (one more than the highest index).
    pub fn nvars_used(&self) -> usize {
        self.terms.keys().map(Monomial::support_len).max().unwrap_or(0)
    }

    /// Replaces each variable `i` with `subs[i]` when given.
    pub fn substitute(&self, subs: &[Option<Polynomial<F>>]) -> Self {
        let mut out = Polynomial::zero(self.field.clone());
        for (m, c) in &self.terms {
            let mut kept = Vec::with_capacity(m.support_len());
            let mut factor = Polynomial::constant(self.field.clone(), c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                match subs.get(i).and_then(Option::as_ref) {
                    Some(s) if e > 0 => {
                        kept.push(0);
                        factor = factor.mul(&s.pow(e as u32));
                    }
                    _ => kept.push(e),
                }
            }
            let rest = Monomial::from_exponents(kept);
            out = out.add(&factor.mul_term(&rest, &self.field.one()));
        }
        out
    }

    /// Parses terms like `x1^2 - 3 x2 x3 + 1/2`, joined by `+` and `-`.
    pub fn parse(field: F, s: &str) -> Result<Self> {
        let mut p = Polynomial::zero(field.clone());
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        // Sign seen since the last term, if any.
        let mut pending: Option<bool> = None;
        for ch in s.chars() {
            if ch == '+' || ch == '-' || ch == '\u{2212}' {
                if !cur.trim().is_empty() {
                    terms.push((pending.unwrap_or(false), std::mem::take(&mut cur)));
                } else if pending.is_some() {
                    return Err(Error::Parse(format!("double sign in `{s}`")));
                }
                cur.clear();
                pending = Some(ch != '+');
            } else {
                cur.push(ch);
            }
        }
        if !cur.trim().is_empty() {
            terms.push((pending.unwrap_or(false), cur));
        } else if pending.is_some() || terms.is_empty() {
            return Err(Error::Parse(format!("dangling sign or empty polynomial `{s}`")));
        }
        for (neg, t) in terms {
            let mut c = field.one();
            let mut m = Monomial::one();
            for tok in t.split(|c: char| c.is_whitespace() || c == '*').filter(|x| !x.is_empty()) {
                if tok.starts_with('x') {
                    m = m.mul(&parse_factor(tok)?);
                } else {
                    let q = parse_rational(tok)?;
                    let v = field
                        .from_rational(&q)
                        .ok_or_else(|| Error::Parse(format!("`{tok}` has no image in {}", field.tag())))?;
                    c = field.mul(&c, &v);
                }
            }
            if neg {
                c = field.neg(&c);
            }
            p.add_term(m, c);
        }
        Ok(p)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    /// Descending grlex; coefficient 1 is omitted on non-constant terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let s = self.field.format(c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(r) => (true, r.to_string()),
                None => (false, s),
            };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&mag)?;
            } else if mag == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag} {m}")?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Gf2, PrimeField, Rationals};

    #[test]
    fn parse_display_round_trip() {
        for s in ["x1^2 - 3 x2 x3 + 1/2", "-x1 + x2", "0", "x1 x2^3", "-7/3"] {
            let p = Polynomial::parse(Rationals, s).unwrap();
            assert_eq!(p.to_string(), s);
            assert_eq!(Polynomial::parse(Rationals, &p.to_string()).unwrap(), p);
        }
        let p = Polynomial::parse(Rationals, "x2 + x1 - x2").unwrap();
        assert_eq!(p.to_string(), "x1");
        assert!(Polynomial::parse(Rationals, "x1 +").is_err());
        assert!(Polynomial::parse(Rationals, "y2").is_err());
        let g = Polynomial::parse(Gf2, "x1 + x1 + x2").unwrap();
        assert_eq!(g.to_string(), "x2");
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(Polynomial::parse(f5, "-x1").unwrap().to_string(), "4 x1");
    }

    #[test]
    fn arithmetic() {
        let p = Polynomial::parse(Rationals, "x1 + x2").unwrap();
        let q = Polynomial::parse(Rationals, "x1 - x2").unwrap();
        assert_eq!(p.mul(&q).to_string(), "x1^2 - x2^2");
        assert_eq!(p.pow(2).to_string(), "x1^2 + 2 x1 x2 + x2^2");
        assert!(p.is_homogeneous());
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.leading(MonomialOrder::Grlex).unwrap().0.to_string(), "x1");
        let g = Polynomial::parse(Gf2, "x1 + x2").unwrap();
        assert_eq!(g.pow(2).to_string(), "x1^2 + x2^2");
    }

    #[test]
    fn substitution() {
        // x2 x3 with x2 = x1, x3 = -x1 gives -x1^2.
        let p = Polynomial::parse(Rationals, "x2 x3").unwrap();
        let subs = vec![
            None,
            Some(Polynomial::parse(Rationals, "x1").unwrap()),
            Some(Polynomial::parse(Rationals, "-x1").unwrap()),
        ];
        assert_eq!(p.substitute(&subs).to_string(), "-x1^2");
        let z = Polynomial::zero(Rationals);
        assert!(z.substitute(&subs).is_zero());
    }
}
