//! Degree-by-degree linear algebra on the Macaulay matrix of a homogeneous
//! ideal: `J_d = span(x_i · J_{d−1}) + span(generators of degree d)`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Field};

use super::ideal::Ideal;
use super::monomial::Monomial;
use super::polynomial::Polynomial;

pub struct DegreePiece<F: Field> {
    /// Monomials of this degree, ascending grlex; the column order.
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Row echelon form of `J_d`.
    pub ideal_part: Box<dyn Echelon<F>>,
}

impl<F: Field> DegreePiece<F> {
    pub fn quotient_dim(&self) -> usize {
        self.monomials.len() - self.ideal_part.rank()
    }

    fn row_of(&self, field: &F, p: &Polynomial<F>) -> Vec<F::Elem> {
        let mut row = vec![field.zero(); self.monomials.len()];
        for (m, c) in p.terms() {
            row[self.index[m]] = c.clone();
        }
        row
    }

    pub fn unit_row(&self, field: &F, m: &Monomial) -> Vec<F::Elem> {
        let mut row = vec![field.zero(); self.monomials.len()];
        row[self.index[m]] = field.one();
        row
    }
}

/// The graded pieces of `R/J` up to the first degree where it vanishes.
pub struct MacaulayQuotient<F: Field> {
    pub field: F,
    pub nvars: usize,
    /// `pieces[d]` for every degree with nonzero quotient, plus the first
    /// vanishing degree.
    pub pieces: Vec<DegreePiece<F>>,
}

impl<F: Field> MacaulayQuotient<F> {
    pub fn by_degree(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.pieces.iter().map(DegreePiece::quotient_dim).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn total(&self) -> usize {
        self.by_degree().iter().sum()
    }

    pub fn piece(&self, d: u32) -> Option<&DegreePiece<F>> {
        self.pieces.get(d as usize)
    }
}

/// Builds the graded pieces. Errors with `NotArtinian` past degree
/// `nvars·(D−1)+1` (D the largest generator degree), beyond which an
/// Artinian homogeneous quotient must vanish.
pub fn macaulay_quotient<F: Field>(ideal: &Ideal<F>) -> Result<MacaulayQuotient<F>> {
    if !ideal.is_homogeneous() {
        return Err(Error::BadParams("the Macaulay path needs homogeneous generators".into()));
    }
    let field = ideal.field().clone();
    let k = ideal.nvars();
    let dmax = ideal.max_degree();
    let cap = k as u32 * dmax.saturating_sub(1) + 1;
    let mut pieces: Vec<DegreePiece<F>> = Vec::new();
    for d in 0u32.. {
        if d > cap && k > 0 {
            return Err(Error::NotArtinian(format!(
                "quotient still nonzero in degree {d} (bound {cap})"
            )));
        }
        let monomials = Monomial::all_of_degree(k, d);
        let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut piece = DegreePiece {
            ideal_part: field.new_echelon(monomials.len()),
            monomials,
            index,
        };
        if let Some(prev) = pieces.last() {
            for row in prev.ideal_part.rows() {
                let mut p = Polynomial::zero(field.clone());
                for (j, c) in row.iter().enumerate() {
                    p.add_term(prev.monomials[j].clone(), c.clone());
                }
                for v in 0..k {
                    let q = p.mul_term(&Monomial::var(v), &field.one());
                    let r = piece.row_of(&field, &q);
                    piece.ideal_part.insert(&r);
                }
            }
        }
        for g in ideal.generators() {
            if g.degree() == Some(d) {
                let r = piece.row_of(&field, g);
                piece.ideal_part.insert(&r);
            }
        }
        let vanished = piece.quotient_dim() == 0;
        pieces.push(piece);
        if vanished {
            break;
        }
    }
    Ok(MacaulayQuotient {
        field,
        nvars: k,
        pieces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Gf2, Rationals};

    fn ideal<F: Field>(f: F, nvars: usize, gens: &[&str]) -> Ideal<F> {
        Ideal::new(f.clone(), nvars, gens.iter().map(|g| Polynomial::parse(f.clone(), g).unwrap()).collect()).unwrap()
    }

    #[test]
    fn single_power() {
        for n in 2..8 {
            let q = macaulay_quotient(&ideal(Gf2, 1, &[&format!("x1^{}", n - 1)])).unwrap();
            assert_eq!(q.by_degree(), vec![1; n - 1]);
            assert_eq!(q.total(), n - 1);
        }
    }

    #[test]
    fn empty_ring() {
        let q = macaulay_quotient(&Ideal::zero(Rationals, 0)).unwrap();
        assert_eq!(q.total(), 1);
        assert!(matches!(macaulay_quotient(&Ideal::zero(Rationals, 1)), Err(Error::NotArtinian(_))));
        assert!(matches!(
            macaulay_quotient(&ideal(Rationals, 2, &["x1^2"])),
            Err(Error::NotArtinian(_))
        ));
        assert!(matches!(
            macaulay_quotient(&ideal(Rationals, 1, &["x1^2 + x1"])),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn complete_intersection() {
        // Two quadrics in two variables: dimension 4, Hilbert function 1,2,1.
        let q = macaulay_quotient(&ideal(Rationals, 2, &["x1^2 - x2^2", "x1 x2"])).unwrap();
        assert_eq!(q.by_degree(), vec![1, 2, 1]);
    }
}
