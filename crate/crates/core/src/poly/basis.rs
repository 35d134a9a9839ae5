//! Deciding whether a finite set of monomials is a vector-space basis of
//! `R/J`, once via a Gröbner basis and once via Macaulay matrices.

use std::fmt;

use num_rational::BigRational;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Field};

use super::groebner::{groebner_basis, GroebnerBasis};
use super::ideal::Ideal;
use super::macaulay::{macaulay_quotient, MacaulayQuotient};
use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Basis,
    /// The smallest monomial (grlex) outside `span(S) + J`.
    NotSpanning { witness: Monomial },
    /// The first element of `S` (ascending grlex) dependent on earlier ones modulo `J`.
    NotIndependent { witness: Monomial },
    WrongCardinality { expected: usize, actual: usize },
}

impl Verdict {
    pub fn is_basis(&self) -> bool {
        matches!(self, Verdict::Basis)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Basis => f.write_str("basis"),
            Verdict::NotSpanning { witness } => write!(f, "not spanning (missing {witness})"),
            Verdict::NotIndependent { witness } => write!(f, "not independent ({witness} is dependent)"),
            Verdict::WrongCardinality { expected, actual } => {
                write!(f, "wrong cardinality ({actual} monomials, quotient has dimension {expected})")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BasisPath {
    Groebner,
    Macaulay,
    /// Run both and require identical verdicts.
    #[default]
    Both,
}

impl std::str::FromStr for BasisPath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "groebner" => Ok(BasisPath::Groebner),
            "macaulay" => Ok(BasisPath::Macaulay),
            "both" => Ok(BasisPath::Both),
            _ => Err(Error::Parse(format!("unknown path `{s}` (groebner, macaulay, both)"))),
        }
    }
}

fn sorted(set: &[Monomial]) -> Vec<Monomial> {
    let mut v = set.to_vec();
    v.sort();
    v.dedup();
    v
}

/// Dimension of `R/J` and its graded pieces (the latter only for
/// homogeneous ideals; otherwise it is the count of standard monomials by degree).
pub fn quotient_dimension<F: Field>(ideal: &Ideal<F>) -> Result<(usize, Vec<usize>)> {
    if ideal.is_homogeneous() {
        let q = macaulay_quotient(ideal)?;
        return Ok((q.total(), q.by_degree()));
    }
    let g = groebner_basis(ideal, MonomialOrder::Grlex);
    let std = g
        .standard_monomials()
        .ok_or_else(|| Error::NotArtinian("some variable has no pure power among the leading terms".into()))?;
    let mut by = Vec::new();
    for m in &std {
        let d = m.degree() as usize;
        if by.len() <= d {
            by.resize(d + 1, 0);
        }
        by[d] += 1;
    }
    Ok((std.len(), by))
}

pub(crate) fn groebner_verdict<F: Field>(field: &F, g: &GroebnerBasis<F>, set: &[Monomial]) -> Result<Verdict> {
    let std = g
        .standard_monomials()
        .ok_or_else(|| Error::NotArtinian("some variable has no pure power among the leading terms".into()))?;
    let col: std::collections::HashMap<&Monomial, usize> = std.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let row = |p: &Polynomial<F>| {
        let mut r = vec![field.zero(); std.len()];
        for (m, c) in p.terms() {
            r[col[m]] = c.clone();
        }
        r
    };
    let mut ech = field.new_echelon(std.len());
    for m in sorted(set) {
        let nf = g.normal_form(&Polynomial::monomial(field.clone(), m.clone()));
        if !ech.insert(&row(&nf)) {
            return Ok(Verdict::NotIndependent { witness: m });
        }
    }
    if ech.rank() == std.len() {
        return Ok(Verdict::Basis);
    }
    let top = std.iter().map(Monomial::degree).max().unwrap_or(0);
    for d in 0..=top {
        for m in Monomial::all_of_degree(g.nvars, d) {
            let nf = g.normal_form(&Polynomial::monomial(field.clone(), m.clone()));
            if !ech.contains(&row(&nf)) {
                return Ok(Verdict::NotSpanning { witness: m });
            }
        }
    }
    unreachable!("rank deficit without a missing monomial")
}

pub(crate) fn macaulay_verdict<F: Field>(q: &MacaulayQuotient<F>, set: &[Monomial]) -> Verdict {
    let set = sorted(set);
    let mut spans: Vec<Box<dyn Echelon<F>>> = q.pieces.iter().map(|p| p.ideal_part.clone()).collect();
    for m in &set {
        let d = m.degree() as usize;
        if d >= spans.len() || m.support_len() > q.nvars {
            // Everything of this degree already lies in J.
            return Verdict::NotIndependent { witness: m.clone() };
        }
        if !spans[d].insert(&q.pieces[d].unit_row(&q.field, m)) {
            return Verdict::NotIndependent { witness: m.clone() };
        }
    }
    for (d, piece) in q.pieces.iter().enumerate() {
        if spans[d].rank() < piece.monomials.len() {
            for m in &piece.monomials {
                if !spans[d].contains(&piece.unit_row(&q.field, m)) {
                    return Verdict::NotSpanning { witness: m.clone() };
                }
            }
        }
    }
    Verdict::Basis
}

/// Decides whether `set` is a basis of `R/J`.
///
/// With [`BasisPath::Both`] the two computations must agree, including the
/// witness; a mismatch is reported as [`Error::PathDisagreement`].
pub fn monomial_set_is_basis<F: Field>(ideal: &Ideal<F>, set: &[Monomial], path: BasisPath) -> Result<Verdict> {
    monomial_set_is_basis_in(ideal, set, path, MonomialOrder::Grlex)
}

/// As [`monomial_set_is_basis`], with the Gröbner path run under `order`.
/// The verdict and witness do not depend on the order.
pub fn monomial_set_is_basis_in<F: Field>(
    ideal: &Ideal<F>,
    set: &[Monomial],
    path: BasisPath,
    order: MonomialOrder,
) -> Result<Verdict> {
    if let Some(m) = set.iter().find(|m| m.support_len() > ideal.nvars()) {
        return Err(Error::Dimension(format!("{m} uses more than {} variables", ideal.nvars())));
    }
    let groebner = || groebner_verdict(ideal.field(), &groebner_basis(ideal, order), set);
    let macaulay = || macaulay_quotient(ideal).map(|q| macaulay_verdict(&q, set));
    match path {
        BasisPath::Groebner => groebner(),
        BasisPath::Macaulay => macaulay(),
        BasisPath::Both => {
            let a = groebner()?;
            if !ideal.is_homogeneous() {
                return Ok(a);
            }
            let b = macaulay()?;
            agree(a, b)
        }
    }
}

pub(crate) fn agree(a: Verdict, b: Verdict) -> Result<Verdict> {
    if a != b {
        return Err(Error::PathDisagreement(format!("groebner says {a}, macaulay says {b}")));
    }
    Ok(a)
}

fn random_form<F: Field, R: Rng>(f: &F, rng: &mut R, nvars: usize, d: u32) -> Polynomial<F> {
    let mut p = Polynomial::zero(f.clone());
    for m in Monomial::all_of_degree(nvars, d) {
        if rng.gen_bool(0.5) {
            if let Some(c) = f.from_rational(&BigRational::from_integer(rng.gen_range(-3i64..=3).into())) {
                p.add_term(m, c);
            }
        }
    }
    p
}

/// One randomized comparison of the two basis tests on a small homogeneous
/// ideal: pure powers mixed with random forms, a few random monomial sets,
/// and the standard monomials. Non-Artinian draws count as agreement when
/// both sides see them that way.
pub(crate) fn path_agreement_trial<F: Field, R: Rng>(f: F, rng: &mut R) -> Result<bool> {
    let nvars = rng.gen_range(1..=3);
    let mut gens: Vec<Polynomial<F>> = (0..nvars)
        .map(|v| Polynomial::monomial(f.clone(), Monomial::var_pow(v, rng.gen_range(1..=3))))
        .collect();
    for _ in 0..rng.gen_range(0..3) {
        let d = rng.gen_range(1..=3);
        gens.push(random_form(&f, rng, nvars, d));
    }
    // Mix the pure powers with other forms of the same degree.
    for k in 0..nvars {
        let d = gens[k].degree().expect("nonzero");
        gens[k] = gens[k].add(&random_form(&f, rng, nvars, d));
        if gens[k].is_zero() {
            gens[k] = Polynomial::monomial(f.clone(), Monomial::var_pow(k, d as u16));
        }
    }
    let i = Ideal::new(f.clone(), nvars, gens)?;
    let g = groebner_basis(&i, MonomialOrder::Grlex);
    let q = match macaulay_quotient(&i) {
        Ok(q) => q,
        Err(Error::NotArtinian(_)) => return Ok(!g.is_zero_dimensional()),
        Err(e) => return Err(e),
    };
    let Some(std) = g.standard_monomials() else {
        return Ok(false);
    };
    let dim = std.len();
    if q.total() != dim {
        return Ok(false);
    }
    let top = q.pieces.len() as u32;
    let pool: Vec<Monomial> = (0..=top).flat_map(|d| Monomial::all_of_degree(nvars, d)).collect();
    for _ in 0..4 {
        let size = rng.gen_range(0..=dim + 1);
        let set: Vec<Monomial> = (0..size).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
        let a = monomial_set_is_basis(&i, &set, BasisPath::Groebner)?;
        let b = monomial_set_is_basis(&i, &set, BasisPath::Macaulay)?;
        if a != b {
            return Ok(false);
        }
    }
    Ok(monomial_set_is_basis(&i, &std, BasisPath::Both)? == Verdict::Basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Gf2, PrimeField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ideal<F: Field>(f: F, nvars: usize, gens: &[&str]) -> Ideal<F> {
        Ideal::new(f.clone(), nvars, gens.iter().map(|g| Polynomial::parse(f.clone(), g).unwrap()).collect()).unwrap()
    }

    fn ms(s: &[&str]) -> Vec<Monomial> {
        s.iter().map(|x| x.parse().unwrap()).collect()
    }

    #[test]
    fn power_of_one_variable() {
        let i = ideal(Gf2, 1, &["x1^3"]);
        assert_eq!(quotient_dimension(&i).unwrap(), (3, vec![1, 1, 1]));
        let v = monomial_set_is_basis(&i, &ms(&["1", "x1", "x1^2"]), BasisPath::Both).unwrap();
        assert_eq!(v, Verdict::Basis);
        let v = monomial_set_is_basis(&i, &ms(&["1", "x1"]), BasisPath::Both).unwrap();
        assert_eq!(v, Verdict::NotSpanning { witness: "x1^2".parse().unwrap() });
        let v = monomial_set_is_basis(&i, &ms(&["1", "x1^3"]), BasisPath::Both).unwrap();
        assert_eq!(v, Verdict::NotIndependent { witness: "x1^3".parse().unwrap() });
    }

    #[test]
    fn non_monomial_ideal() {
        // <x1^2 - x2^2, x1 x2>: {1, x1, x2, x1^2} is a basis, {1, x1, x2, x1 x2} is not.
        let i = ideal(Rationals, 2, &["x1^2 - x2^2", "x1 x2"]);
        let good = monomial_set_is_basis(&i, &ms(&["1", "x1", "x2", "x1^2"]), BasisPath::Both).unwrap();
        assert_eq!(good, Verdict::Basis);
        let good2 = monomial_set_is_basis(&i, &ms(&["1", "x1", "x2", "x2^2"]), BasisPath::Both).unwrap();
        assert_eq!(good2, Verdict::Basis);
        let bad = monomial_set_is_basis(&i, &ms(&["1", "x1", "x2", "x1 x2"]), BasisPath::Both).unwrap();
        assert_eq!(bad, Verdict::NotIndependent { witness: "x1 x2".parse().unwrap() });
        let bad = monomial_set_is_basis(&i, &ms(&["1", "x1", "x2^2", "x1^2"]), BasisPath::Both).unwrap();
        assert_eq!(bad, Verdict::NotIndependent { witness: "x1^2".parse().unwrap() });
    }

    #[test]
    fn verdict_ignores_term_order() {
        let i = ideal(Rationals, 3, &["x1^2 - x2 x3", "x2^2 - x1 x3", "x3^2", "x1 x2"]);
        let sets = [ms(&["1", "x1", "x2", "x3", "x1 x3", "x2 x3"]), ms(&["1", "x1", "x2"]), ms(&["1", "x1", "x3", "x1^2"])];
        for set in &sets {
            let base = monomial_set_is_basis(&i, set, BasisPath::Both).unwrap();
            for order in [MonomialOrder::Lex, MonomialOrder::Grevlex] {
                assert_eq!(monomial_set_is_basis_in(&i, set, BasisPath::Groebner, order).unwrap(), base);
            }
        }
    }

    #[test]
    fn not_artinian_and_inhomogeneous() {
        let i = ideal(Rationals, 2, &["x1^2"]);
        assert!(matches!(monomial_set_is_basis(&i, &ms(&["1"]), BasisPath::Groebner), Err(Error::NotArtinian(_))));
        assert!(matches!(monomial_set_is_basis(&i, &ms(&["1"]), BasisPath::Macaulay), Err(Error::NotArtinian(_))));
        let j = ideal(Rationals, 1, &["x1^2 - x1"]);
        assert_eq!(quotient_dimension(&j).unwrap().0, 2);
        assert_eq!(monomial_set_is_basis(&j, &ms(&["1", "x1"]), BasisPath::Both).unwrap(), Verdict::Basis);
        assert!(matches!(monomial_set_is_basis(&j, &ms(&["1"]), BasisPath::Macaulay), Err(Error::BadParams(_))));
    }

    #[test]
    fn empty_ring_cases() {
        let z = Ideal::zero(Rationals, 0);
        assert_eq!(monomial_set_is_basis(&z, &ms(&["1"]), BasisPath::Both).unwrap(), Verdict::Basis);
        assert_eq!(
            monomial_set_is_basis(&z, &[], BasisPath::Both).unwrap(),
            Verdict::NotSpanning { witness: Monomial::one() }
        );
    }

    #[test]
    fn paths_agree_on_random_homogeneous_ideals() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for t in 0..100 {
            match t % 3 {
                0 => assert!(path_agreement_trial(Gf2, &mut rng).unwrap()),
                1 => assert!(path_agreement_trial(PrimeField::new(5).unwrap(), &mut rng).unwrap()),
                _ => assert!(path_agreement_trial(Rationals, &mut rng).unwrap()),
            }
        }
    }
}
