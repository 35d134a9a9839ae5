use std::time::Instant;

use serde::Serialize;

use crate::complex::{f_h_vectors, h_sum};
use crate::error::{Error, Result};
use crate::linalg::{Field, FieldTag};
use crate::matroid::Matroid;
use crate::ordering::{Ordering, StandardOrdering};
use crate::poly::basis::{agree, groebner_verdict, macaulay_verdict};
use crate::poly::{groebner_basis, macaulay_quotient, BasisPath, Monomial, MonomialOrder, OrderIdealSet, Verdict};
use crate::with_field;

use super::monomials::{circuit_polynomials, dj_and_mc, j_ideal, order_ideals_from, term_lemma_holds};
use super::theta::{lsop, theta_unchecked};

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub path: BasisPath,
    /// Term order of the Gröbner path.
    pub order: MonomialOrder,
    /// Validate the l.s.o.p. (facet ranks, representation sweep).
    pub validate_theta: bool,
    /// Record wall time in the report.
    pub timing: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            path: BasisPath::Both,
            order: MonomialOrder::Grlex,
            validate_theta: true,
            timing: false,
        }
    }
}

impl CheckOptions {
    /// Single Macaulay path, no l.s.o.p. validation: the search setting.
    pub fn fast() -> Self {
        CheckOptions {
            path: BasisPath::Macaulay,
            validate_theta: false,
            ..CheckOptions::default()
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentReport {
    pub elements: Vec<String>,
    pub l_size: usize,
    pub h_sum: i64,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct NbcReport {
    pub ordering: Vec<String>,
    pub basis: Vec<String>,
    pub field: FieldTag,
    pub h: Vec<i64>,
    pub h_sum: i64,
    pub l_size: usize,
    pub quotient_dimension: usize,
    pub quotient_by_degree: Vec<usize>,
    /// `|L(M)| = Σ hᵢ`.
    pub cardinality_matches: bool,
    /// `L(M)` is linearly independent modulo `J`.
    pub independent: bool,
    /// Every `m_C` occurs as a term of `p_C`.
    pub term_lemma: bool,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub lower_ideal: Vec<Monomial>,
    /// Whether `L(M)` equals the standard monomials of `J` under the Gröbner
    /// path's term order (only when that path ran).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_is_standard: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ComponentReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl NbcReport {
    pub fn is_basis(&self) -> bool {
        self.verdict.is_basis()
    }
}

/// Everything computed for one (connected or not) matroid and ordering.
struct Evaluation {
    l: OrderIdealSet,
    h: Vec<i64>,
    qdim: usize,
    qby: Vec<usize>,
    verdict: Verdict,
    term_lemma: bool,
    l_is_standard: Option<bool>,
}

fn final_verdict(raw: Verdict, l_size: usize, hs: i64) -> Verdict {
    match raw {
        Verdict::NotIndependent { .. } => raw,
        _ if l_size as i64 != hs => Verdict::WrongCardinality {
            expected: hs.max(0) as usize,
            actual: l_size,
        },
        _ => raw,
    }
}

fn evaluate<F: Field>(f: &F, m: &Matroid, so: &StandardOrdering, opts: &CheckOptions) -> Result<Evaluation> {
    let k = m.n() - m.rank();
    let theta = if opts.validate_theta {
        lsop(m, so, f.tag())?
    } else {
        theta_unchecked(m, so, f.tag())?
    };
    let dm = dj_and_mc(m, so)?;
    let p = circuit_polynomials(f, k, &theta, &dm);
    let term_lemma = term_lemma_holds(f, &dm, &p);
    let j = j_ideal(f, k, &p)?;
    let (_, l) = order_ideals_from(k, &dm)?;
    let set = l.to_vec();
    let h = f_h_vectors(m, so.ordering())?.h;

    let q = macaulay_quotient(&j)?;
    let (qdim, qby) = (q.total(), q.by_degree());
    let mut l_is_standard = None;
    let raw = match opts.path {
        BasisPath::Macaulay => macaulay_verdict(&q, &set),
        BasisPath::Groebner | BasisPath::Both => {
            let g = groebner_basis(&j, opts.order);
            let std = g
                .standard_monomials()
                .ok_or_else(|| Error::NotArtinian("J has no pure power of some variable".into()))?;
            l_is_standard = Some(std == set);
            let a = groebner_verdict(f, &g, &set)?;
            if opts.path == BasisPath::Both {
                agree(a, macaulay_verdict(&q, &set))?
            } else {
                a
            }
        }
    };
    let verdict = final_verdict(raw, set.len(), h_sum(&h));
    Ok(Evaluation {
        l,
        h,
        qdim,
        qby,
        verdict,
        term_lemma,
        l_is_standard,
    })
}

fn lift(mon: &Monomial, map: &[usize]) -> Monomial {
    let mut e = vec![0u16; map.iter().max().map_or(0, |x| x + 1)];
    for (i, &x) in mon.exponents().iter().enumerate() {
        e[map[i]] += x;
    }
    Monomial::from_exponents(e)
}

/// Decides whether `L(M)` is a basis of `k[x₁..x_{n−r}]/J` for the given
/// standard ordering. Disconnected matroids are handled component by
/// component, `L` being the product of the components' lower ideals.
pub fn nbc_check(m: &Matroid, so: &StandardOrdering, field: FieldTag, opts: &CheckOptions) -> Result<NbcReport> {
    let start = Instant::now();
    let field = field.checked()?;
    let ord = so.ordering();
    let k = m.n() - m.rank();
    let comps = m.connected_components()?;
    let mut report = if comps.len() <= 1 {
        let ev = with_field!(field, |f| evaluate(&f, m, so, opts))?;
        NbcReport {
            ordering: ord.labels(m).into_iter().map(String::from).collect(),
            basis: so.basis().iter().map(|e| m.labels()[e].clone()).collect(),
            field,
            h_sum: h_sum(&ev.h),
            h: ev.h,
            l_size: ev.l.len(),
            quotient_dimension: ev.qdim,
            quotient_by_degree: ev.qby,
            cardinality_matches: false,
            independent: false,
            term_lemma: ev.term_lemma,
            verdict: ev.verdict,
            lower_ideal: ev.l.to_vec(),
            l_is_standard: ev.l_is_standard,
            components: Vec::new(),
            elapsed_ms: None,
        }
    } else {
        let mut lower = vec![Monomial::one()];
        let mut qdim = 1usize;
        let mut term_lemma = true;
        let mut l_is_standard = Some(true);
        let mut verdicts = Vec::new();
        let mut components = Vec::new();
        for &c in &comps {
            let sub = m.restrict(c)?;
            let sub_ord: Ordering = ord.induced(c);
            let sub_so = StandardOrdering::new(&sub, sub_ord.clone())?;
            let ev = with_field!(field, |f| evaluate(&f, &sub, &sub_so, opts))?;
            // Component variable i is the element at component position i.
            let elems = c.to_vec();
            let map: Vec<usize> = (0..sub.n() - sub.rank())
                .map(|i| ord.position(elems[sub_ord.element(i)]))
                .collect();
            let lifted: Vec<Monomial> = ev.l.to_vec().iter().map(|x| lift(x, &map)).collect();
            lower = lower
                .iter()
                .flat_map(|a| lifted.iter().map(move |b| a.mul(b)))
                .collect();
            qdim *= ev.qdim;
            term_lemma &= ev.term_lemma;
            l_is_standard = match (l_is_standard, ev.l_is_standard) {
                (Some(a), Some(b)) => Some(a && b),
                _ => None,
            };
            let lift_verdict = |v: &Verdict| match v {
                Verdict::NotIndependent { witness } => Verdict::NotIndependent {
                    witness: lift(witness, &map),
                },
                Verdict::NotSpanning { witness } => Verdict::NotSpanning {
                    witness: lift(witness, &map),
                },
                other => other.clone(),
            };
            verdicts.push(lift_verdict(&ev.verdict));
            components.push(ComponentReport {
                elements: elems.iter().map(|&e| m.labels()[e].clone()).collect(),
                l_size: ev.l.len(),
                h_sum: h_sum(&ev.h),
                verdict: ev.verdict,
            });
        }
        let l = OrderIdealSet::lower(k, lower);
        let h = f_h_vectors(m, ord)?.h;
        let hs = h_sum(&h);
        let raw = if let Some(v) = verdicts.iter().find(|v| matches!(v, Verdict::NotIndependent { .. })) {
            v.clone()
        } else if let Some(v) = verdicts.iter().find(|v| !v.is_basis() && !matches!(v, Verdict::WrongCardinality { .. })) {
            v.clone()
        } else {
            Verdict::Basis
        };
        NbcReport {
            ordering: ord.labels(m).into_iter().map(String::from).collect(),
            basis: so.basis().iter().map(|e| m.labels()[e].clone()).collect(),
            field,
            h_sum: hs,
            h,
            l_size: l.len(),
            quotient_dimension: qdim,
            quotient_by_degree: Vec::new(),
            cardinality_matches: false,
            independent: false,
            term_lemma,
            verdict: final_verdict(raw, l.len(), hs),
            lower_ideal: l.to_vec(),
            l_is_standard,
            components,
            elapsed_ms: None,
        }
    };
    report.cardinality_matches = report.l_size as i64 == report.h_sum;
    report.independent = !matches!(report.verdict, Verdict::NotIndependent { .. });
    if opts.timing {
        report.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(report)
}
