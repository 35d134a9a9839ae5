use std::collections::HashSet;

use super::field::Field;
use crate::error::{Error, Result};

/// Dense matrix over an exact field, with optional row and column labels.
#[derive(Clone, Debug)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
    row_labels: Option<Vec<String>>,
    col_labels: Option<Vec<String>>,
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && self.row_labels == other.row_labels
            && self.col_labels == other.col_labels
    }
}

fn check_unique(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabels(l.clone()));
        }
    }
    Ok(())
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
            row_labels: None,
            col_labels: None,
        })
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix::new(field, rows, cols, data).expect("sized")
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Matrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix from small integers, mapped into the field.
    pub fn from_i64(field: F, rows: &[Vec<i64>]) -> Result<Self> {
        let conv = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(field, conv)
    }

    pub fn with_col_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.cols {
            return Err(Error::Dimension(format!(
                "{} column labels for {} columns",
                labels.len(),
                self.cols
            )));
        }
        check_unique(&labels)?;
        self.col_labels = Some(labels);
        Ok(self)
    }

    pub fn with_row_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.rows {
            return Err(Error::Dimension(format!(
                "{} row labels for {} rows",
                labels.len(),
                self.rows
            )));
        }
        check_unique(&labels)?;
        self.row_labels = Some(labels);
        Ok(self)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn nrows(&self) -> usize {
        self.rows
    }
    pub fn ncols(&self) -> usize {
        self.cols
    }
    pub fn col_labels(&self) -> Option<&[String]> {
        self.col_labels.as_deref()
    }
    pub fn row_labels(&self) -> Option<&[String]> {
        self.row_labels.as_deref()
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            data,
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
        }
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !f.is_zero(b) {
                        let cur = out.get(i, j).clone();
                        out.set(i, j, f.add(&cur, &f.mul(a, b)));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    /// Sub-matrix on the given columns, in the given order (labels follow).
    pub fn select_cols(&self, cols: &[usize]) -> Matrix<F> {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: cols.len(),
            data,
            row_labels: self.row_labels.clone(),
            col_labels: self
                .col_labels
                .as_ref()
                .map(|l| cols.iter().map(|&j| l[j].clone()).collect()),
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix<F> {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            field: self.field.clone(),
            rows: rows.len(),
            cols: self.cols,
            data,
            row_labels: self
                .row_labels
                .as_ref()
                .map(|l| rows.iter().map(|&i| l[i].clone()).collect()),
            col_labels: self.col_labels.clone(),
        }
    }

    /// Rows of `self` followed by rows of `other`; labels are dropped.
    pub fn vstack(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != other.cols {
            return Err(Error::Dimension("column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix::new(self.field.clone(), self.rows + other.rows, self.cols, data)
    }

    pub fn rank(&self) -> usize {
        let mut e = self.field.new_echelon(self.cols);
        let mut rank = 0;
        for i in 0..self.rows {
            if rank == self.cols {
                break;
            }
            if e.insert(self.row(i)) {
                rank += 1;
            }
        }
        rank
    }

    /// Rank of the sub-matrix formed by the given columns.
    pub fn column_rank(&self, cols: &[usize]) -> usize {
        if cols.is_empty() {
            return 0;
        }
        let mut e = self.field.new_echelon(self.rows);
        cols.iter().filter(|&&j| e.insert(&self.column(j))).count()
    }

    /// Reduced row echelon form (zero rows dropped) and its pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        m.row_labels = None;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            m.scale_row(r, &f.inv(m.get(r, c)).expect("nonzero"));
            m.eliminate_column(r, c);
            pivots.push(c);
            r += 1;
        }
        let keep: Vec<usize> = (0..r).collect();
        (m.select_rows(&keep), pivots)
    }

    /// Row-equivalent matrix whose restriction to `basis_cols` is the
    /// identity: row `i` carries the one in column `basis_cols[i]`. Zero rows
    /// of the input are dropped. Pivots are taken in the order given, always
    /// from the topmost available row with a nonzero entry.
    pub fn standard_form(&self, basis_cols: &[usize]) -> Result<Matrix<F>> {
        let f = &self.field;
        let mut m = self.clone();
        m.row_labels = None;
        for (k, &c) in basis_cols.iter().enumerate() {
            if c >= m.cols {
                return Err(Error::Dimension(format!("column {c} out of range")));
            }
            let Some(p) = (k..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                return Err(Error::SingularBasis(format!(
                    "column {c} depends on the earlier basis columns"
                )));
            };
            m.swap_rows(k, p);
            m.scale_row(k, &f.inv(m.get(k, c)).expect("nonzero"));
            m.eliminate_column(k, c);
        }
        let k = basis_cols.len();
        if (k..m.rows).any(|i| m.row(i).iter().any(|x| !f.is_zero(x))) {
            return Err(Error::SingularBasis(format!(
                "{k} columns do not span the row space"
            )));
        }
        let keep: Vec<usize> = (0..k).collect();
        Ok(m.select_rows(&keep))
    }

    /// Rows form a basis of `{v : self * v^T = 0}`.
    pub fn null_space_basis(&self) -> Matrix<F> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(f.clone(), free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, f.one());
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, f.neg(r.get(i, fc)));
            }
        }
        out.col_labels = self.col_labels.clone();
        out
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Result<F::Elem> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let f = &self.field;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                return Ok(f.zero());
            };
            if p != c {
                m.swap_rows(c, p);
                det = f.neg(&det);
            }
            let pv = m.get(c, c).clone();
            det = f.mul(&det, &pv);
            let inv = f.inv(&pv).expect("nonzero");
            for i in c + 1..m.rows {
                if f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = f.mul(m.get(i, c), &inv);
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Re-expresses the matrix over another field through rational representatives.
    pub fn to_field<G: Field>(&self, g: G) -> Result<Matrix<G>> {
        let mut data = Vec::with_capacity(self.data.len());
        for x in &self.data {
            let q = self.field.to_rational(x);
            data.push(
                g.from_rational(&q)
                    .ok_or_else(|| Error::Parse(format!("entry {q} has no image in {}", g.tag())))?,
            );
        }
        Ok(Matrix {
            field: g,
            rows: self.rows,
            cols: self.cols,
            data,
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, s: &F::Elem) {
        for j in 0..self.cols {
            let v = self.field.mul(self.get(i, j), s);
            self.set(i, j, v);
        }
    }

    /// Clears column `c` in every row except the pivot row `r`.
    fn eliminate_column(&mut self, r: usize, c: usize) {
        let f = self.field.clone();
        let pivot_row = self.row(r).to_vec();
        for i in 0..self.rows {
            if i == r || f.is_zero(self.get(i, c)) {
                continue;
            }
            let factor = self.get(i, c).clone();
            for (j, pv) in pivot_row.iter().enumerate() {
                if !f.is_zero(pv) {
                    let v = f.sub(self.get(i, j), &f.mul(&factor, pv));
                    self.set(i, j, v);
                }
            }
        }
    }
}
