use std::fmt;

use crate::complex::broken_circuits;
use crate::error::{Error, Result};
use crate::linalg::Field;
use crate::matroid::{ElementSet, Matroid};
use crate::ordering::Ordering;

use super::monomial::Monomial;
use super::polynomial::Polynomial;

/// Generators of an ideal of `F[x1..x_nvars]`; zero generators are dropped.
#[derive(Clone, PartialEq, Eq)]
pub struct Ideal<F: Field> {
    field: F,
    nvars: usize,
    gens: Vec<Polynomial<F>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(field: F, nvars: usize, gens: Vec<Polynomial<F>>) -> Result<Self> {
        let gens: Vec<Polynomial<F>> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        if let Some(g) = gens.iter().find(|g| g.nvars_used() > nvars) {
            return Err(Error::Dimension(format!("generator `{g}` uses more than {nvars} variables")));
        }
        Ok(Ideal { field, nvars, gens })
    }

    pub fn zero(field: F, nvars: usize) -> Self {
        Ideal {
            field,
            nvars,
            gens: Vec::new(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }
}

impl<F: Field> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Squarefree monomial of a position set: position `p` is `x_{p+1}`.
pub fn squarefree(positions: ElementSet) -> Monomial {
    let top = positions.iter().max().map_or(0, |p| p + 1);
    Monomial::from_exponents((0..top).map(|p| positions.contains(p) as u16).collect())
}

/// One squarefree generator per distinct broken circuit, with variables
/// indexed by ordering position.
pub fn stanley_reisner_ideal<F: Field>(field: F, m: &Matroid, ord: &Ordering) -> Result<Ideal<F>> {
    let gens = broken_circuits(m, ord)?
        .into_iter()
        .map(|bc| Polynomial::monomial(field.clone(), squarefree(ord.to_positions(bc))))
        .collect();
    Ideal::new(field, m.n(), gens)
}

/// Eliminates the variables of `forms` (pairs `(j, θ_j)` with θ_j linear)
/// by solving `θ_j = 0` for `x_j`. The right-hand sides must only involve
/// the first `keep` variables; the result lives in `F[x1..x_keep]`.
pub fn substitute_basis_variables<F: Field>(
    ideal: &Ideal<F>,
    forms: &[(usize, Polynomial<F>)],
    keep: usize,
) -> Result<Ideal<F>> {
    let f = ideal.field().clone();
    let mut subs: Vec<Option<Polynomial<F>>> = vec![None; ideal.nvars().max(keep)];
    for (j, theta) in forms {
        let xj = Monomial::var(*j);
        let a = theta.coefficient(&xj);
        let inv = f.inv(&a).ok_or(Error::UnsolvableTheta(j + 1))?;
        let mut rest = theta.clone();
        rest.add_term(xj, f.neg(&a));
        let rhs = rest.scale(&f.neg(&inv));
        if rhs.nvars_used() > keep {
            return Err(Error::Dimension(format!(
                "linear form for x{} involves variables beyond x{keep}",
                j + 1
            )));
        }
        if *j >= subs.len() {
            subs.resize(j + 1, None);
        }
        subs[*j] = Some(rhs);
    }
    let gens: Vec<Polynomial<F>> = ideal.generators().iter().map(|g| g.substitute(&subs)).collect();
    if let Some(g) = gens.iter().find(|g| g.nvars_used() > keep) {
        return Err(Error::Dimension(format!("`{g}` still involves eliminated variables")));
    }
    let mut unique: Vec<Polynomial<F>> = Vec::new();
    for g in gens {
        if !g.is_zero() && !unique.contains(&g) {
            unique.push(g);
        }
    }
    Ideal::new(f, keep, unique)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Gf2, Rationals};

    fn p<F: Field>(f: F, s: &str) -> Polynomial<F> {
        Polynomial::parse(f, s).unwrap()
    }

    #[test]
    fn stanley_reisner_examples() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        let i = stanley_reisner_ideal(Rationals, &u23, &Ordering::identity(3)).unwrap();
        assert_eq!(i.to_string(), "<x2 x3>");
        for n in 2..7 {
            let c = Matroid::uniform(n - 1, n).unwrap();
            let i = stanley_reisner_ideal(Gf2, &c, &Ordering::identity(n)).unwrap();
            let expect: Monomial = Monomial::from_exponents((0..n).map(|k| (k > 0) as u16).collect());
            assert_eq!(i.generators(), &[Polynomial::monomial(Gf2, expect)]);
            let free = Matroid::uniform(n, n).unwrap();
            assert!(stanley_reisner_ideal(Gf2, &free, &Ordering::identity(n))
                .unwrap()
                .generators()
                .is_empty());
        }
    }

    #[test]
    fn substitution_u23() {
        let i = Ideal::new(Rationals, 3, vec![p(Rationals, "x2 x3")]).unwrap();
        let forms = vec![(1, p(Rationals, "-x1 + x2")), (2, p(Rationals, "x1 + x3"))];
        let j = substitute_basis_variables(&i, &forms, 1).unwrap();
        assert_eq!(j.to_string(), "<-x1^2>");
        let z = Ideal::zero(Rationals, 3);
        assert!(substitute_basis_variables(&z, &forms, 1).unwrap().generators().is_empty());
        let bad = vec![(1, p(Rationals, "x1"))];
        assert_eq!(substitute_basis_variables(&i, &bad, 1), Err(Error::UnsolvableTheta(2)));
    }

    #[test]
    fn substitution_circuit_gf2() {
        for n in 2..8 {
            let c = Matroid::uniform(n - 1, n).unwrap();
            let i = stanley_reisner_ideal(Gf2, &c, &Ordering::identity(n)).unwrap();
            let forms: Vec<(usize, Polynomial<Gf2>)> = (1..n)
                .map(|j| (j, p(Gf2, &format!("x1 + x{}", j + 1))))
                .collect();
            let j = substitute_basis_variables(&i, &forms, 1).unwrap();
            assert_eq!(j.generators(), &[Polynomial::monomial(Gf2, Monomial::var_pow(0, n as u16 - 1))]);
        }
    }
}
