//! Exact linear algebra over GF(2), GF(p) and the rationals.

mod echelon;
mod field;
mod matrix;
mod text;
pub mod unimodular;

pub use echelon::{Echelon, Gf2Echelon, GenericEchelon};
pub use field::{format_rational, parse_rational, Field, FieldTag, Gf2, PrimeField, Rationals};
pub(crate) use field::small_integer;
pub use matrix::Matrix;
pub use text::{write_matrix, AnyMatrix};
pub use unimodular::{is_totally_unimodular, DEFAULT_TU_CAP};
