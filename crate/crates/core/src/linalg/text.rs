//! Plain-text matrix format.
//!
//! ```text
//! 2 3 q
//! cols: a b c
//! 1 0 1/2
//! 0 1 -1
//! ```
//!
//! The `cols:` line is optional. A row may start with `label |` to carry a
//! row label. GF entries are printed as residues.

use std::fmt;
use std::str::FromStr;

use super::field::{Field, FieldTag, Gf2, PrimeField, Rationals};
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// A matrix over one of the supported fields, chosen at runtime.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMatrix {
    Gf2(Matrix<Gf2>),
    Gfp(Matrix<PrimeField>),
    Rational(Matrix<Rationals>),
}

/// Dispatches on the concrete matrix inside an [`AnyMatrix`].
#[macro_export]
macro_rules! with_matrix {
    ($m:expr, |$x:ident| $body:expr) => {
        match $m {
            $crate::linalg::AnyMatrix::Gf2($x) => $body,
            $crate::linalg::AnyMatrix::Gfp($x) => $body,
            $crate::linalg::AnyMatrix::Rational($x) => $body,
        }
    };
}

impl AnyMatrix {
    pub fn tag(&self) -> FieldTag {
        with_matrix!(self, |m| m.field().tag())
    }
    pub fn nrows(&self) -> usize {
        with_matrix!(self, |m| m.nrows())
    }
    pub fn ncols(&self) -> usize {
        with_matrix!(self, |m| m.ncols())
    }
    pub fn rank(&self) -> usize {
        with_matrix!(self, |m| m.rank())
    }
    pub fn col_labels(&self) -> Option<&[String]> {
        with_matrix!(self, |m| m.col_labels())
    }

    /// Builds a matrix over `tag` from rational entries given as text.
    pub fn from_strings(tag: FieldTag, rows: &[Vec<String>]) -> Result<AnyMatrix> {
        fn build<F: Field>(f: F, rows: &[Vec<String>]) -> Result<Matrix<F>> {
            let conv = rows
                .iter()
                .map(|r| r.iter().map(|s| f.parse_elem(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Matrix::from_rows(f, conv)
        }
        Ok(match tag.checked()? {
            FieldTag::Gf2 => AnyMatrix::Gf2(build(Gf2, rows)?),
            FieldTag::Gfp(p) => AnyMatrix::Gfp(build(PrimeField::new(p)?, rows)?),
            FieldTag::Rational => AnyMatrix::Rational(build(Rationals, rows)?),
        })
    }

    /// Entries as text, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        with_matrix!(self, |m| (0..m.nrows())
            .map(|i| m.row(i).iter().map(|x| m.field().format(x)).collect())
            .collect())
    }

    pub fn with_col_labels(self, labels: Vec<String>) -> Result<AnyMatrix> {
        Ok(match self {
            AnyMatrix::Gf2(m) => AnyMatrix::Gf2(m.with_col_labels(labels)?),
            AnyMatrix::Gfp(m) => AnyMatrix::Gfp(m.with_col_labels(labels)?),
            AnyMatrix::Rational(m) => AnyMatrix::Rational(m.with_col_labels(labels)?),
        })
    }

    pub fn with_row_labels(self, labels: Vec<String>) -> Result<AnyMatrix> {
        Ok(match self {
            AnyMatrix::Gf2(m) => AnyMatrix::Gf2(m.with_row_labels(labels)?),
            AnyMatrix::Gfp(m) => AnyMatrix::Gfp(m.with_row_labels(labels)?),
            AnyMatrix::Rational(m) => AnyMatrix::Rational(m.with_row_labels(labels)?),
        })
    }
}

impl From<Matrix<Gf2>> for AnyMatrix {
    fn from(m: Matrix<Gf2>) -> Self {
        AnyMatrix::Gf2(m)
    }
}
impl From<Matrix<PrimeField>> for AnyMatrix {
    fn from(m: Matrix<PrimeField>) -> Self {
        AnyMatrix::Gfp(m)
    }
}
impl From<Matrix<Rationals>> for AnyMatrix {
    fn from(m: Matrix<Rationals>) -> Self {
        AnyMatrix::Rational(m)
    }
}

/// Formats a single matrix in the text format.
pub fn write_matrix<F: Field>(m: &Matrix<F>, out: &mut impl fmt::Write) -> fmt::Result {
    writeln!(out, "{} {} {}", m.nrows(), m.ncols(), m.field().tag())?;
    if let Some(cl) = m.col_labels() {
        writeln!(out, "cols: {}", cl.join(" "))?;
    }
    for i in 0..m.nrows() {
        if let Some(rl) = m.row_labels() {
            write!(out, "{} | ", rl[i])?;
        }
        let row: Vec<String> = m.row(i).iter().map(|x| m.field().format(x)).collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    Ok(())
}

impl fmt::Display for AnyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        with_matrix!(self, |m| write_matrix(m, f))
    }
}

impl FromStr for AnyMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 3 {
            return Err(Error::Parse(format!("bad header `{header}`")));
        }
        let bad = |x: &str| Error::Parse(format!("bad dimension `{x}`"));
        let rows: usize = h[0].parse().map_err(|_| bad(h[0]))?;
        let cols: usize = h[1].parse().map_err(|_| bad(h[1]))?;
        let tag: FieldTag = h[2].parse()?;

        let mut col_labels = None;
        let mut row_labels = Vec::new();
        let mut entries = Vec::new();
        for line in lines {
            if let Some(rest) = line.strip_prefix("cols:") {
                col_labels = Some(rest.split_whitespace().map(String::from).collect::<Vec<_>>());
                continue;
            }
            let body = match line.rsplit_once('|') {
                Some((label, body)) => {
                    row_labels.push(label.trim().to_string());
                    body
                }
                None => line,
            };
            let row: Vec<String> = body.split_whitespace().map(String::from).collect();
            if row.len() != cols {
                return Err(Error::Parse(format!(
                    "row `{line}` has {} entries, expected {cols}",
                    row.len()
                )));
            }
            entries.push(row);
        }
        if entries.len() != rows {
            return Err(Error::Parse(format!(
                "found {} rows, expected {rows}",
                entries.len()
            )));
        }
        let mut m = if rows == 0 {
            with_zero_rows(tag, cols)?
        } else {
            AnyMatrix::from_strings(tag, &entries)?
        };
        if let Some(cl) = col_labels {
            m = m.with_col_labels(cl)?;
        }
        if !row_labels.is_empty() {
            if row_labels.len() != rows {
                return Err(Error::Parse("row labels on only some rows".into()));
            }
            m = m.with_row_labels(row_labels)?;
        }
        Ok(m)
    }
}

fn with_zero_rows(tag: FieldTag, cols: usize) -> Result<AnyMatrix> {
    Ok(match tag.checked()? {
        FieldTag::Gf2 => AnyMatrix::Gf2(Matrix::zeros(Gf2, 0, cols)),
        FieldTag::Gfp(p) => AnyMatrix::Gfp(Matrix::zeros(PrimeField::new(p)?, 0, cols)),
        FieldTag::Rational => AnyMatrix::Rational(Matrix::zeros(Rationals, 0, cols)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_rational_with_labels() {
        let text = "2 3 q\ncols: a b c\nr1 | 1 0 1/2\nr2 | 0 -3 -1\n";
        let m: AnyMatrix = text.parse().unwrap();
        assert_eq!(m.to_string(), text);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn gf_entries_are_reduced() {
        let m: AnyMatrix = "1 3 gf3\n4 -1 3\n".parse().unwrap();
        assert_eq!(m.to_string(), "1 3 gf3\n1 2 0\n");
        let again: AnyMatrix = m.to_string().parse().unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn zero_row_matrix() {
        let m: AnyMatrix = "0 4 gf2\n".parse().unwrap();
        assert_eq!((m.nrows(), m.ncols()), (0, 4));
        assert_eq!(m.to_string(), "0 4 gf2\n");
    }

    #[test]
    fn malformed_input_is_rejected() {
        assert!("2 2 q\n1 0\n".parse::<AnyMatrix>().is_err());
        assert!("1 2 q\n1 x\n".parse::<AnyMatrix>().is_err());
        assert!("1 2 gf4\n1 0\n".parse::<AnyMatrix>().is_err());
        assert!("1 1 gf2\n1/2\n".parse::<AnyMatrix>().is_err());
    }
}
