//! The split `L(M) = L(M\e_n) ⊍ x_{n−r}·L(M/e_n)` for a standard ordering
//! whose last element and first cobasis-adjacent element form a cocircuit.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{FieldTag, Gf2};
use crate::matroid::{ElementSet, Matroid};
use crate::ordering::StandardOrdering;
use crate::poly::{Monomial, Polynomial};

use super::monomials::{circuit_polynomials, dj_and_mc, order_ideals_from, DjMc};
use super::theta::theta_unchecked;

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub e_n: String,
    pub e_n_minus_r: String,
    pub l_size: usize,
    pub l_delete_size: usize,
    pub l_contract_size: usize,
    /// `L(M)` is the disjoint union of `L(M\e_n)` and `x_{n−r}·L(M/e_n)`.
    pub split_holds: bool,
    /// `coc(B₂, e_j) = coc(B, e_j)` in `M/e_n` for `e_j ∈ B₂`.
    pub contraction_cocircuits_hold: bool,
    /// `coc(B₁, e_j) = coc(B, e_j) \ {e_{n−r}}` in `M\e_n`.
    pub deletion_cocircuits_hold: bool,
    pub type_one: usize,
    pub type_two: usize,
    /// Type I: `p_C = x_{n−r}·p̃_{C\e_n}` and `m_C = x_{n−r}·m̃`; type II:
    /// `p_C = p̃_C` and `m_C = m̃_C` (over GF(2)).
    pub generators_hold: bool,
    /// `J(M\e_n)` generators are those of `J(M)` not involving `e_n`, with `x_{n−r} = 0`.
    pub deletion_generators_hold: bool,
    pub holds: bool,
}

fn set_without(s: ElementSet, e: usize) -> ElementSet {
    // Index shift for a minor that dropped element `e`.
    s.iter().filter(|&x| x != e).map(|x| if x > e { x - 1 } else { x }).collect()
}

fn find(dm: &DjMc, c: ElementSet) -> Option<usize> {
    dm.circuits.iter().position(|x| x.circuit == c)
}

/// Verifies the split and the cocircuit and generator identities behind it,
/// over GF(2), with minors carrying the induced standard orderings.
pub fn decomposition_check(m: &Matroid, so: &StandardOrdering) -> Result<DecompositionReport> {
    let (n, r) = (m.n(), m.rank());
    let ord = so.ordering();
    if r == 0 || r == n {
        let last = ord.elements().last().map_or(String::new(), |&e| m.labels()[e].clone());
        return Err(Error::NoCocircuitPair(last, "(no cobasis element)".into()));
    }
    let k = n - r;
    let en = ord.element(n - 1);
    let enr = ord.element(k - 1);
    let labels = m.labels();
    let pair = ElementSet::singleton(en).with(enr);
    if !m.cocircuits()?.contains(&pair) {
        return Err(Error::NoCocircuitPair(labels[en].clone(), labels[enr].clone()));
    }
    let b = so.basis();
    let sub = ord.without(en);
    let del = m.delete(en)?;
    let con = m.contract(en)?;
    let so_del = StandardOrdering::new(&del, sub.clone())?;
    let so_con = StandardOrdering::new(&con, sub.clone())?;

    let dm = dj_and_mc(m, so)?;
    let dm_del = dj_and_mc(&del, &so_del)?;
    let dm_con = dj_and_mc(&con, &so_con)?;
    let (_, l) = order_ideals_from(k, &dm)?;
    let (_, l_del) = order_ideals_from(k - 1, &dm_del)?;
    let (_, l_con) = order_ideals_from(k, &dm_con)?;

    let xk = Monomial::var(k - 1);
    let mut union: Vec<Monomial> = l_del.to_vec();
    union.extend(l_con.to_vec().iter().map(|x| x.mul(&xk)));
    let disjoint = l_del.to_vec().iter().all(|x| x.exponent(k - 1) == 0);
    let mut sorted = union.clone();
    sorted.sort();
    sorted.dedup();
    let split_holds = disjoint && sorted.len() == union.len() && sorted == l.to_vec();

    // Fundamental cocircuits of the minors against those of M.
    let mut contraction_cocircuits_hold = true;
    let mut deletion_cocircuits_hold = true;
    let b2 = set_without(b, en);
    let b1 = set_without(b.with(enr), en);
    for p in k..n - 1 {
        let e = ord.element(p);
        let e_minor = sub.element(p);
        let coc = m.fundamental_cocircuit(b, e)?;
        contraction_cocircuits_hold &= con.fundamental_cocircuit(b2, e_minor)? == set_without(coc, en);
        deletion_cocircuits_hold &= del.fundamental_cocircuit(b1, e_minor)? == set_without(coc.without(enr), en);
    }

    let theta = theta_unchecked(m, so, FieldTag::Gf2)?;
    let theta_del = theta_unchecked(&del, &so_del, FieldTag::Gf2)?;
    let theta_con = theta_unchecked(&con, &so_con, FieldTag::Gf2)?;
    let p = circuit_polynomials(&Gf2, k, &theta, &dm);
    let p_del = circuit_polynomials(&Gf2, k - 1, &theta_del, &dm_del);
    let p_con = circuit_polynomials(&Gf2, k, &theta_con, &dm_con);
    let xk_poly = Polynomial::monomial(Gf2, xk.clone());
    let zero_xk: Vec<Option<Polynomial<Gf2>>> = (0..k)
        .map(|i| (i == k - 1).then(|| Polynomial::zero(Gf2)))
        .collect();

    let (mut type_one, mut type_two) = (0, 0);
    let mut generators_hold = true;
    let mut deletion_generators_hold = true;
    for (i, c) in dm.circuits.iter().enumerate() {
        let reduced = set_without(c.circuit, en);
        let Some(j) = find(&dm_con, reduced) else {
            generators_hold = false;
            continue;
        };
        if c.circuit.contains(en) {
            type_one += 1;
            generators_hold &= c.circuit.contains(enr)
                && p[i] == xk_poly.mul(&p_con[j])
                && c.m == dm_con.circuits[j].m.mul(&xk);
        } else {
            type_two += 1;
            generators_hold &= p[i] == p_con[j] && c.m == dm_con.circuits[j].m;
            match find(&dm_del, reduced) {
                Some(d) => deletion_generators_hold &= p[i].substitute(&zero_xk) == p_del[d],
                None => deletion_generators_hold = false,
            }
        }
    }
    // Every circuit of each minor must have been matched.
    generators_hold &= type_one + type_two == dm_con.circuits.len();
    deletion_generators_hold &= type_two == dm_del.circuits.len();

    let holds = split_holds
        && contraction_cocircuits_hold
        && deletion_cocircuits_hold
        && generators_hold
        && deletion_generators_hold;
    Ok(DecompositionReport {
        e_n: labels[en].clone(),
        e_n_minus_r: labels[enr].clone(),
        l_size: l.len(),
        l_delete_size: l_del.len(),
        l_contract_size: l_con.len(),
        split_holds,
        contraction_cocircuits_hold,
        deletion_cocircuits_hold,
        type_one,
        type_two,
        generators_hold,
        deletion_generators_hold,
        holds,
    })
}

/// Whether the hypothesis `{e_n, e_{n−r}}` is a cocircuit holds.
pub fn has_cocircuit_pair(m: &Matroid, so: &StandardOrdering) -> Result<bool> {
    let (n, r) = (m.n(), m.rank());
    if r == 0 || r == n {
        return Ok(false);
    }
    let ord = so.ordering();
    let pair = ElementSet::singleton(ord.element(n - 1)).with(ord.element(n - r - 1));
    Ok(m.cocircuits()?.contains(&pair))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordering::{Ordering, StandardOrderings};

    #[test]
    fn triangle_splits() {
        let u = Matroid::uniform(2, 3).unwrap();
        let so = StandardOrdering::new(&u, Ordering::identity(3)).unwrap();
        let rep = decomposition_check(&u, &so).unwrap();
        assert!(rep.holds, "{rep:?}");
        assert_eq!((rep.l_size, rep.l_delete_size, rep.l_contract_size), (2, 1, 1));
        assert_eq!((rep.type_one, rep.type_two), (1, 0));
    }

    #[test]
    fn every_hypothesis_ordering_of_small_matroids_splits() {
        let edges = [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d"), ("d", "e"), ("e", "a")];
        let g = Matroid::from_graph(edges.iter().map(|(x, y)| (x.to_string(), y.to_string())).collect()).unwrap();
        for m in [Matroid::uniform(3, 4).unwrap(), g] {
            let all = StandardOrderings::new(&m).unwrap();
            let mut hits = 0;
            for so in all.range(0..all.count()).step_by(7) {
                if has_cocircuit_pair(&m, &so).unwrap() {
                    let rep = decomposition_check(&m, &so).unwrap();
                    assert!(rep.holds, "{rep:?}");
                    hits += 1;
                } else {
                    assert!(matches!(decomposition_check(&m, &so), Err(Error::NoCocircuitPair(..))));
                }
            }
            assert!(hits > 0);
        }
    }

    #[test]
    fn no_pair_in_a_three_connected_matroid() {
        let edges = [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")];
        let k4 = Matroid::from_graph(edges.iter().map(|(x, y)| (x.to_string(), y.to_string())).collect()).unwrap();
        assert!(k4.cocircuits().unwrap().iter().all(|c| c.len() >= 3));
        let so = StandardOrderings::new(&k4).unwrap().decode(0).unwrap();
        assert!(matches!(decomposition_check(&k4, &so), Err(Error::NoCocircuitPair(..))));
    }
}
