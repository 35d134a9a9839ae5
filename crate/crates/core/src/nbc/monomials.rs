use serde::Serialize;

use crate::error::Result;
use crate::linalg::Field;
use crate::matroid::{ElementSet, Matroid};
use crate::ordering::StandardOrdering;
use crate::poly::{squarefree, Ideal, Monomial, OrderIdealSet, Polynomial};

use super::theta::ThetaSystem;

/// A circuit with its broken circuit and the monomial `m_C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitMonomial {
    /// Element indices.
    pub circuit: ElementSet,
    /// `C̄` as ordering positions.
    pub broken: ElementSet,
    /// Position `i` when `C = ci(B, e_i)`.
    pub fundamental: Option<usize>,
    pub m: Monomial,
}

/// `d_j` per position (0-based values) and `m_C` per circuit.
#[derive(Debug, Clone)]
pub struct DjMc {
    pub d: Vec<usize>,
    pub circuits: Vec<CircuitMonomial>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CircuitMonomialRow {
    pub circuit: String,
    pub broken: String,
    pub fundamental: bool,
    pub m: Monomial,
}

impl DjMc {
    pub fn rows(&self, m: &Matroid, so: &StandardOrdering) -> Vec<CircuitMonomialRow> {
        self.circuits
            .iter()
            .map(|c| CircuitMonomialRow {
                circuit: m.display_set(c.circuit),
                broken: m.display_set(so.ordering().to_elements(c.broken)),
                fundamental: c.fundamental.is_some(),
                m: c.m.clone(),
            })
            .collect()
    }
}

pub fn dj_and_mc(m: &Matroid, so: &StandardOrdering) -> Result<DjMc> {
    let (n, r) = (m.n(), m.rank());
    let k = n - r;
    let ord = so.ordering();
    let b = so.basis();
    let mut d: Vec<usize> = (0..k).collect();
    for p in k..n {
        let coc = ord.to_positions(m.fundamental_cocircuit(b, ord.element(p))?);
        d.push(coc.first().expect("cocircuit contains its element"));
    }
    let fundamentals: Vec<ElementSet> = (0..k)
        .map(|p| m.fundamental_circuit(b, ord.element(p)))
        .collect::<Result<_>>()?;
    let mut circuits = Vec::new();
    for &c in m.circuits()? {
        let pos = ord.to_positions(c);
        let min = pos.first().expect("circuits are nonempty");
        let broken = pos.without(min);
        let fundamental = fundamentals.iter().position(|f| *f == c);
        let mon = match fundamental {
            Some(i) => Monomial::var_pow(i, broken.len() as u16),
            None => broken
                .iter()
                .fold(Monomial::one(), |acc, j| acc.mul(&Monomial::var(d[j]))),
        };
        circuits.push(CircuitMonomial {
            circuit: c,
            broken,
            fundamental,
            m: mon,
        });
    }
    Ok(DjMc { d, circuits })
}

/// `U(M)` generated by the `m_C` and its complement `L(M)` in `Mon(n−r)`.
pub fn order_ideals(m: &Matroid, so: &StandardOrdering) -> Result<(OrderIdealSet, OrderIdealSet)> {
    let dm = dj_and_mc(m, so)?;
    order_ideals_from(m.n() - m.rank(), &dm)
}

pub(crate) fn order_ideals_from(k: usize, dm: &DjMc) -> Result<(OrderIdealSet, OrderIdealSet)> {
    let u = OrderIdealSet::upper(k, dm.circuits.iter().map(|c| c.m.clone()));
    let l = u.complement()?;
    Ok((u, l))
}

/// The generators `p_C` of `J`, one per circuit (same order as
/// `dm.circuits`), obtained by substituting the solved θ-forms into
/// `∏_{j ∈ C̄} x_j`.
pub(crate) fn circuit_polynomials<F: Field>(f: &F, k: usize, theta: &ThetaSystem, dm: &DjMc) -> Vec<Polynomial<F>> {
    let mut subs: Vec<Option<Polynomial<F>>> = vec![None; k + theta.forms.len()];
    for (j, form) in theta.polynomials(f) {
        let xj = Monomial::var(j);
        let a = form.coefficient(&xj);
        let inv = f.inv(&a).expect("diagonal coefficient is a unit");
        let mut rest = form.clone();
        rest.add_term(xj, f.neg(&a));
        subs[j] = Some(rest.scale(&f.neg(&inv)));
    }
    dm.circuits
        .iter()
        .map(|c| Polynomial::monomial(f.clone(), squarefree(c.broken)).substitute(&subs))
        .collect()
}

/// `J` from its generators, duplicates and zeros removed.
pub(crate) fn j_ideal<F: Field>(f: &F, k: usize, p: &[Polynomial<F>]) -> Result<Ideal<F>> {
    let mut gens: Vec<Polynomial<F>> = Vec::new();
    for g in p {
        if !g.is_zero() && !gens.contains(g) {
            gens.push(g.clone());
        }
    }
    Ideal::new(f.clone(), k, gens)
}

/// Whether every `m_C` occurs with nonzero coefficient in `p_C`.
pub(crate) fn term_lemma_holds<F: Field>(f: &F, dm: &DjMc, p: &[Polynomial<F>]) -> bool {
    dm.circuits
        .iter()
        .zip(p)
        .all(|(c, pc)| !f.is_zero(&pc.coefficient(&c.m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{FieldTag, Gf2, Rationals};
    use crate::nbc::theta::lsop;
    use crate::ordering::{Ordering, StandardOrderings};

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn triangle() {
        let u = Matroid::uniform(2, 3).unwrap();
        let so = StandardOrdering::new(&u, Ordering::identity(3)).unwrap();
        let dm = dj_and_mc(&u, &so).unwrap();
        assert_eq!(dm.d, vec![0, 0, 0]);
        assert_eq!(dm.circuits.len(), 1);
        assert_eq!(dm.circuits[0].m, m("x1^2"));
        let (_, l) = order_ideals(&u, &so).unwrap();
        assert_eq!(l.to_vec(), vec![m("1"), m("x1")]);
        let t = lsop(&u, &so, FieldTag::Rational).unwrap();
        let p = circuit_polynomials(&Rationals, 1, &t, &dm);
        assert_eq!(p[0].to_string(), "-x1^2");
        assert!(term_lemma_holds(&Rationals, &dm, &p));
    }

    #[test]
    fn circuit_family() {
        for n in 2..=8 {
            let c = Matroid::uniform(n - 1, n).unwrap();
            let so = StandardOrdering::new(&c, Ordering::identity(n)).unwrap();
            let dm = dj_and_mc(&c, &so).unwrap();
            assert_eq!(dm.circuits[0].m, Monomial::var_pow(0, n as u16 - 1));
            let (u, l) = order_ideals(&c, &so).unwrap();
            let expect: Vec<Monomial> = (0..n as u16 - 1).map(|e| Monomial::var_pow(0, e)).collect();
            assert_eq!(l.to_vec(), expect);
            assert!(u.is_closed() && l.is_closed());
            let t = lsop(&c, &so, FieldTag::Gf2).unwrap();
            let p = circuit_polynomials(&Gf2, 1, &t, &dm);
            assert_eq!(p[0], Polynomial::monomial(Gf2, Monomial::var_pow(0, n as u16 - 1)));
        }
        let free = Matroid::uniform(4, 4).unwrap();
        let so = StandardOrdering::new(&free, Ordering::identity(4)).unwrap();
        assert_eq!(order_ideals(&free, &so).unwrap().1.to_vec(), vec![Monomial::one()]);
    }

    #[test]
    fn k4_monomials_use_cobasis_variables_and_lemma_holds() -> crate::Result<()> {
        let edges = [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")];
        let k4 = Matroid::from_graph(edges.iter().map(|(x, y)| (x.to_string(), y.to_string())).collect()).unwrap();
        let all = StandardOrderings::new(&k4).unwrap();
        for idx in (0..all.count()).step_by(97) {
            let so = all.decode(idx).unwrap();
            let dm = dj_and_mc(&k4, &so).unwrap();
            assert_eq!(dm.circuits.len(), 7);
            assert_eq!(dm.circuits.iter().filter(|c| c.fundamental.is_some()).count(), 3);
            for c in &dm.circuits {
                assert!(c.m.support_len() <= 3, "{:?}", c.m);
            }
            for field in [FieldTag::Gf2, FieldTag::Rational] {
                let t = lsop(&k4, &so, field).unwrap();
                crate::with_field!(field, |f| {
                    let p = circuit_polynomials(&f, 3, &t, &dm);
                    assert!(term_lemma_holds(&f, &dm, &p));
                });
            }
        }
        Ok(())
    }
}
