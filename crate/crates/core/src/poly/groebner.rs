use std::collections::HashSet;

use crate::linalg::Field;

use super::ideal::Ideal;
use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::Polynomial;

/// A reduced Gröbner basis together with its term order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    pub order: MonomialOrder,
    pub nvars: usize,
    /// Monic, sorted by leading monomial ascending.
    pub polys: Vec<Polynomial<F>>,
}

fn lm<F: Field>(p: &Polynomial<F>, order: MonomialOrder) -> Monomial {
    p.leading(order).expect("nonzero").0.clone()
}

/// Full reduction of `f` by `g` (every term, not just the leading one).
pub fn normal_form<F: Field>(f: &Polynomial<F>, g: &[Polynomial<F>], order: MonomialOrder) -> Polynomial<F> {
    let field = f.field().clone();
    let leads: Vec<(Monomial, F::Elem)> = g
        .iter()
        .map(|p| {
            let (m, c) = p.leading(order).expect("nonzero");
            (m.clone(), c.clone())
        })
        .collect();
    let mut p = f.clone();
    let mut r = Polynomial::zero(field.clone());
    while let Some((m, c)) = p.leading(order).map(|(m, c)| (m.clone(), c.clone())) {
        match leads.iter().position(|(l, _)| l.divides(&m)) {
            Some(i) => {
                let q = leads[i].0.div(&m).expect("divides");
                let coef = field.mul(&c, &field.inv(&leads[i].1).expect("nonzero"));
                p = p.sub(&g[i].mul_term(&q, &coef));
            }
            None => {
                r.add_term(m.clone(), c.clone());
                p.add_term(m, field.neg(&c));
            }
        }
    }
    r
}

fn s_poly<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>, order: MonomialOrder) -> Polynomial<F> {
    let field = a.field();
    let (ma, ca) = a.leading(order).expect("nonzero");
    let (mb, cb) = b.leading(order).expect("nonzero");
    let l = ma.lcm(mb);
    let ia = field.inv(ca).expect("nonzero");
    let ib = field.inv(cb).expect("nonzero");
    a.mul_term(&ma.div(&l).expect("lcm"), &ia)
        .sub(&b.mul_term(&mb.div(&l).expect("lcm"), &ib))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Buchberger's algorithm with sugar pair selection, the product criterion
/// and the chain criterion; the result is reduced.
pub fn groebner_basis<F: Field>(ideal: &Ideal<F>, order: MonomialOrder) -> GroebnerBasis<F> {
    let mut g: Vec<Polynomial<F>> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut done: HashSet<(usize, usize)> = HashSet::new();

    let add = |p: Polynomial<F>, s: u32, g: &mut Vec<Polynomial<F>>, sugar: &mut Vec<u32>, pairs: &mut Vec<Pair>| {
        let p = p.monic(order);
        let lp = lm(&p, order);
        let k = g.len();
        for (i, q) in g.iter().enumerate() {
            let lq = lm(q, order);
            let l = lq.lcm(&lp);
            let si = sugar[i] + l.degree() - lq.degree();
            let sk = s + l.degree() - lp.degree();
            pairs.push(Pair {
                i,
                j: k,
                lcm: l,
                sugar: si.max(sk),
            });
        }
        g.push(p);
        sugar.push(s);
    };

    for p in ideal.generators() {
        let r = normal_form(p, &g, order);
        if !r.is_zero() {
            let s = p.degree().unwrap_or(0);
            add(r, s, &mut g, &mut sugar, &mut pairs);
        }
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (x, y) = (&pairs[a], &pairs[b]);
                x.sugar
                    .cmp(&y.sugar)
                    .then_with(|| order.cmp(&x.lcm, &y.lcm))
                    .then_with(|| (x.i, x.j).cmp(&(y.i, y.j)))
            })
            .expect("nonempty");
        let Pair { i, j, lcm, sugar: s } = pairs.swap_remove(best);
        done.insert((i, j));
        let (li, lj) = (lm(&g[i], order), lm(&g[j], order));
        if li.is_coprime(&lj) {
            continue;
        }
        // Chain criterion: some k with lm_k | lcm and both pairs handled.
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && lm(&g[k], order).divides(&lcm)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let r = normal_form(&s_poly(&g[i], &g[j], order), &g, order);
        if !r.is_zero() {
            add(r, s, &mut g, &mut sugar, &mut pairs);
        }
    }

    GroebnerBasis {
        order,
        nvars: ideal.nvars(),
        polys: reduce(g, order),
    }
}

fn reduce<F: Field>(g: Vec<Polynomial<F>>, order: MonomialOrder) -> Vec<Polynomial<F>> {
    let leads: Vec<Monomial> = g.iter().map(|p| lm(p, order)).collect();
    let mut minimal: Vec<Polynomial<F>> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let redundant = leads.iter().enumerate().any(|(k, l)| {
            k != i && l.divides(&leads[i]) && (l != &leads[i] || k < i)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out: Vec<Polynomial<F>> = (0..minimal.len())
        .map(|i| {
            let others: Vec<Polynomial<F>> = minimal
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, p)| p.clone())
                .collect();
            let (m, c) = minimal[i].leading(order).map(|(m, c)| (m.clone(), c.clone())).expect("nonzero");
            let mut tail = minimal[i].clone();
            tail.add_term(m.clone(), minimal[i].field().neg(&c));
            let mut p = normal_form(&tail, &others, order);
            p.add_term(m, c);
            p.monic(order)
        })
        .collect();
    out.sort_by(|a, b| order.cmp(&lm(a, order), &lm(b, order)));
    out
}

impl<F: Field> GroebnerBasis<F> {
    pub fn normal_form(&self, f: &Polynomial<F>) -> Polynomial<F> {
        normal_form(f, &self.polys, self.order)
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| lm(p, self.order)).collect()
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Whether every variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        let leads = self.leading_monomials();
        if leads.iter().any(Monomial::is_one) {
            return true;
        }
        (0..self.nvars).all(|v| leads.iter().any(|m| m.pure_power_var() == Some(v)))
    }

    /// Standard monomials in ascending grlex, or `None` if infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        if !self.is_zero_dimensional() {
            return None;
        }
        let leads = self.leading_monomials();
        let mut out = Vec::new();
        for d in 0.. {
            let layer: Vec<Monomial> = Monomial::all_of_degree(self.nvars, d)
                .into_iter()
                .filter(|m| !leads.iter().any(|l| l.divides(m)))
                .collect();
            if layer.is_empty() {
                break;
            }
            out.extend(layer);
        }
        Some(out)
    }
}
