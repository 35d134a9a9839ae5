use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

use super::monomial::Monomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderIdealKind {
    Lower,
    Upper,
}

/// A lower order ideal stored explicitly, or an upper order ideal stored by
/// its minimal generators (membership is divisibility).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderIdealSet {
    pub kind: OrderIdealKind,
    pub nvars: usize,
    pub monomials: BTreeSet<Monomial>,
}

impl OrderIdealSet {
    /// Upper ideal generated by `gens`, kept as minimal generators.
    pub fn upper(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> OrderIdealSet {
        let all: BTreeSet<Monomial> = gens.into_iter().collect();
        let monomials = all
            .iter()
            .filter(|m| !all.iter().any(|o| o != *m && o.divides(m)))
            .cloned()
            .collect();
        OrderIdealSet {
            kind: OrderIdealKind::Upper,
            nvars,
            monomials,
        }
    }

    pub fn lower(nvars: usize, monomials: impl IntoIterator<Item = Monomial>) -> OrderIdealSet {
        OrderIdealSet {
            kind: OrderIdealKind::Lower,
            nvars,
            monomials: monomials.into_iter().collect(),
        }
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        match self.kind {
            OrderIdealKind::Lower => self.monomials.contains(m),
            OrderIdealKind::Upper => self.monomials.iter().any(|g| g.divides(m)),
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Ascending grlex.
    pub fn to_vec(&self) -> Vec<Monomial> {
        self.monomials.iter().cloned().collect()
    }

    /// One-step closure: lower ideals are closed under dividing by a
    /// variable; upper ideals under multiplying by one (checked on the
    /// generators, which suffices for divisibility membership).
    pub fn is_closed(&self) -> bool {
        match self.kind {
            OrderIdealKind::Lower => self.monomials.iter().all(|m| {
                (0..m.support_len()).all(|v| {
                    m.exponent(v) == 0
                        || self
                            .monomials
                            .contains(&Monomial::var(v).div(m).expect("divides"))
                })
            }),
            OrderIdealKind::Upper => self
                .monomials
                .iter()
                .all(|m| (0..self.nvars).all(|v| self.contains(&m.mul(&Monomial::var(v))))),
        }
    }

    /// The complement `Mon(nvars) \ U` of an upper ideal. Errors with
    /// `InfiniteLowerIdeal` when some variable has no pure power in `U`.
    pub fn complement(&self) -> Result<OrderIdealSet> {
        assert_eq!(self.kind, OrderIdealKind::Upper, "complement of a lower ideal is infinite");
        if self.monomials.iter().any(Monomial::is_one) {
            return Ok(OrderIdealSet::lower(self.nvars, []));
        }
        for v in 0..self.nvars {
            if !self.monomials.iter().any(|m| m.pure_power_var() == Some(v)) {
                return Err(Error::InfiniteLowerIdeal(v + 1));
            }
        }
        let mut out = Vec::new();
        for d in 0.. {
            let layer: Vec<Monomial> = Monomial::all_of_degree(self.nvars, d)
                .into_iter()
                .filter(|m| !self.contains(m))
                .collect();
            if layer.is_empty() {
                break;
            }
            out.extend(layer);
        }
        Ok(OrderIdealSet::lower(self.nvars, out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn complement_of_power() {
        let u = OrderIdealSet::upper(1, [m("x1^3")]);
        let l = u.complement().unwrap();
        assert_eq!(l.to_vec(), vec![m("1"), m("x1"), m("x1^2")]);
        assert!(l.is_closed() && u.is_closed());
        let none = OrderIdealSet::upper(0, []);
        assert_eq!(none.complement().unwrap().to_vec(), vec![m("1")]);
        let u2 = OrderIdealSet::upper(2, [m("x1^2")]);
        assert_eq!(u2.complement(), Err(Error::InfiniteLowerIdeal(2)));
    }

    #[test]
    fn minimal_generators_and_closure() {
        let u = OrderIdealSet::upper(2, [m("x1^2"), m("x1^3"), m("x2^2"), m("x1 x2")]);
        assert_eq!(u.len(), 3);
        let l = u.complement().unwrap();
        assert_eq!(l.to_vec(), vec![m("1"), m("x2"), m("x1")]);
        let not_closed = OrderIdealSet::lower(2, [m("1"), m("x1 x2")]);
        assert!(!not_closed.is_closed());
    }
}
