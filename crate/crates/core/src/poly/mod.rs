//! Polynomials over the crate's fields, ideals, Gröbner bases, Macaulay
//! matrices and monomial order ideals.

pub mod basis;
pub mod groebner;
pub mod ideal;
pub mod macaulay;
pub mod monomial;
pub mod order_ideal;
pub mod polynomial;

pub use basis::{monomial_set_is_basis, monomial_set_is_basis_in, quotient_dimension, BasisPath, Verdict};
pub use groebner::{groebner_basis, GroebnerBasis};
pub use ideal::{squarefree, stanley_reisner_ideal, substitute_basis_variables, Ideal};
pub use macaulay::{macaulay_quotient, MacaulayQuotient};
pub use monomial::{Monomial, MonomialOrder};
pub use order_ideal::{OrderIdealKind, OrderIdealSet};
pub use polynomial::Polynomial;
