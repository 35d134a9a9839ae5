use serde::Serialize;

use crate::complex::bc_faces;
use crate::error::{Error, Result};
use crate::linalg::{Field, FieldTag, Matrix};
use crate::matroid::{k_subsets, Matroid};
use crate::ordering::StandardOrdering;
use crate::poly::{Monomial, Polynomial};
use crate::signing::fundamental_signs;
use crate::with_field;

/// Largest number of r-subsets swept when checking that the cocircuit
/// matrix represents the matroid.
pub const REPRESENTATION_SWEEP_CAP: u128 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Signing {
    /// Characteristic 2: plain incidence, no signs needed.
    Unsigned,
    /// Read off the standard form of a totally unimodular representation.
    TotallyUnimodular,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThetaForm {
    pub element: String,
    /// 1-based position `j` of the basis element.
    pub position: usize,
    /// Coefficient of `x_{i+1}` at index `i`.
    pub coefficients: Vec<i8>,
    pub form: String,
}

/// The linear forms `θ_{e_j}`, one per basis element of a standard ordering.
#[derive(Debug, Clone, Serialize)]
pub struct ThetaSystem {
    pub field: FieldTag,
    pub signing: Signing,
    pub ordering: Vec<String>,
    pub basis: Vec<String>,
    pub forms: Vec<ThetaForm>,
    /// Facets of the broken circuit complex whose columns were checked to have full rank.
    pub facets_checked: usize,
    /// Whether nonsingular r-column sets are exactly the bases; `None` when
    /// the sweep would exceed [`REPRESENTATION_SWEEP_CAP`].
    pub represents_matroid: Option<bool>,
}

impl ThetaSystem {
    /// The forms as polynomials over `f`, paired with the 0-based position
    /// of their basis element.
    pub fn polynomials<F: Field>(&self, f: &F) -> Vec<(usize, Polynomial<F>)> {
        self.forms
            .iter()
            .map(|t| (t.position - 1, form_polynomial(f, &t.coefficients)))
            .collect()
    }
}

pub(crate) fn form_polynomial<F: Field>(f: &F, coefficients: &[i8]) -> Polynomial<F> {
    let mut p = Polynomial::zero(f.clone());
    for (i, &c) in coefficients.iter().enumerate() {
        if c != 0 {
            p.add_term(Monomial::var(i), f.from_i64(c as i64));
        }
    }
    p
}

/// Builds the forms without any validation beyond the signing itself.
pub(crate) fn theta_unchecked(m: &Matroid, so: &StandardOrdering, field: FieldTag) -> Result<ThetaSystem> {
    let field = field.checked()?;
    let (n, r) = (m.n(), m.rank());
    let (coc, _) = fundamental_signs(m, so, field.characteristic())?;
    let ord = so.ordering();
    let forms = with_field!(field, |f| {
        Ok::<_, Error>(
            coc.into_iter()
                .enumerate()
                .map(|(i, row)| {
                    let p = n - r + i;
                    ThetaForm {
                        element: m.labels()[ord.element(p)].clone(),
                        position: p + 1,
                        form: form_polynomial(&f, &row).to_string(),
                        coefficients: row,
                    }
                })
                .collect::<Vec<_>>(),
        )
    })?;
    Ok(ThetaSystem {
        field,
        signing: if field.characteristic() == 2 {
            Signing::Unsigned
        } else {
            Signing::TotallyUnimodular
        },
        ordering: ord.labels(m).into_iter().map(String::from).collect(),
        basis: so.basis().iter().map(|e| m.labels()[e].clone()).collect(),
        forms,
        facets_checked: 0,
        represents_matroid: None,
    })
}

/// The l.s.o.p. `Θ^B` of a standard ordering, validated in three ways:
/// each form is supported exactly on its fundamental cocircuit with a
/// nonzero diagonal coefficient, the columns of every facet of the broken
/// circuit complex have full rank, and (when the sweep is affordable) the
/// nonsingular r-column sets are exactly the bases.
pub fn lsop(m: &Matroid, so: &StandardOrdering, field: FieldTag) -> Result<ThetaSystem> {
    let mut t = theta_unchecked(m, so, field)?;
    let (n, r) = (m.n(), m.rank());
    let ord = so.ordering();
    let b = so.basis();
    for form in &t.forms {
        let p = form.position - 1;
        let support = ord.to_positions(m.fundamental_cocircuit(b, ord.element(p))?);
        let nonzero = form.coefficients.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, _)| i);
        if !nonzero.eq(support.iter()) || form.coefficients[p] == 0 {
            return Err(Error::NotRegular(format!(
                "form for {} is not supported on its fundamental cocircuit",
                form.element
            )));
        }
    }
    let rows: Vec<Vec<i64>> = t
        .forms
        .iter()
        .map(|f| f.coefficients.iter().map(|&c| c as i64).collect())
        .collect();
    let (facets, represents) = with_field!(t.field, |f| {
        let a = if rows.is_empty() {
            Matrix::zeros(f, 0, n)
        } else {
            Matrix::from_i64(f, &rows)?
        };
        let full_rank = |cols: &[usize]| a.column_rank(cols) == r;
        let mut facets = 0;
        for face in bc_faces(m, ord)?.into_iter().filter(|s| s.len() == r) {
            let cols: Vec<usize> = face.iter().map(|e| ord.position(e)).collect();
            if !full_rank(&cols) {
                return Err(Error::NotRegular(format!(
                    "facet {} has singular columns",
                    m.display_set(face)
                )));
            }
            facets += 1;
        }
        let represents = if binomial(n, r) <= REPRESENTATION_SWEEP_CAP {
            let mut ok = true;
            for s in k_subsets(n, r) {
                let cols: Vec<usize> = s.iter().map(|e| ord.position(e)).collect();
                if full_rank(&cols) != m.is_basis(s) {
                    ok = false;
                    break;
                }
            }
            Some(ok)
        } else {
            None
        };
        Ok::<_, Error>((facets, represents))
    })?;
    if represents == Some(false) {
        return Err(Error::NotRegular("cocircuit matrix does not represent the matroid".into()));
    }
    t.facets_checked = facets;
    t.represents_matroid = represents;
    Ok(t)
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordering::Ordering;

    fn forms(t: &ThetaSystem) -> Vec<String> {
        t.forms.iter().map(|f| f.form.clone()).collect()
    }

    #[test]
    fn free_matroid_gives_the_variables() {
        for n in 1..=6 {
            let m = Matroid::uniform(n, n).unwrap();
            let so = StandardOrdering::new(&m, Ordering::identity(n)).unwrap();
            let t = lsop(&m, &so, FieldTag::Rational).unwrap();
            let expect: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
            assert_eq!(forms(&t), expect);
            assert_eq!(t.represents_matroid, Some(true));
            assert_eq!(t.facets_checked, 1);
        }
    }

    #[test]
    fn circuit_over_gf2() {
        for n in 2..=7 {
            let m = Matroid::uniform(n - 1, n).unwrap();
            let so = StandardOrdering::new(&m, Ordering::identity(n)).unwrap();
            let t = lsop(&m, &so, FieldTag::Gf2).unwrap();
            let expect: Vec<String> = (2..=n).map(|j| format!("x1 + x{j}")).collect();
            assert_eq!(forms(&t), expect);
            assert_eq!(t.signing, Signing::Unsigned);
        }
    }

    #[test]
    fn triangle_over_q() {
        let m = Matroid::uniform(2, 3).unwrap();
        let so = StandardOrdering::new(&m, Ordering::identity(3)).unwrap();
        let t = lsop(&m, &so, FieldTag::Rational).unwrap();
        assert_eq!(forms(&t), vec!["-x1 + x2", "x1 + x3"]);
        let p = t.polynomials(&crate::linalg::Rationals);
        assert_eq!(p[0].0, 1);
        assert_eq!(p[1].1.to_string(), "x1 + x3");
    }

    #[test]
    fn non_regular_is_rejected_off_characteristic_two() {
        let m = Matroid::uniform(2, 4).unwrap();
        let so = StandardOrdering::new(&m, Ordering::identity(4)).unwrap();
        assert!(matches!(lsop(&m, &so, FieldTag::Rational), Err(Error::NotRegular(_))));
    }
}
