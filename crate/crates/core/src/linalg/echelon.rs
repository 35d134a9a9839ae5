//! Incremental row-echelon forms, used for rank computations and for
//! span-membership tests in the quotient-ring linear algebra.

use super::field::{Field, Gf2};

/// A growing set of linearly independent rows kept in echelon form.
pub trait Echelon<F: Field>: Send {
    /// Adds `row` if it is independent of the stored rows; returns whether it was added.
    fn insert(&mut self, row: &[F::Elem]) -> bool;
    /// Whether `row` lies in the span of the stored rows.
    fn contains(&self, row: &[F::Elem]) -> bool;
    fn rank(&self) -> usize;
    fn ncols(&self) -> usize;
    /// The stored rows (a basis of the span), expanded to field elements.
    fn rows(&self) -> Vec<Vec<F::Elem>>;
    fn box_clone(&self) -> Box<dyn Echelon<F>>;
}

impl<F: Field> Clone for Box<dyn Echelon<F>> {
    fn clone(&self) -> Self {
        self.box_clone()
    }
}

/// Dense echelon form over an arbitrary field.
#[derive(Clone)]
pub struct GenericEchelon<F: Field> {
    field: F,
    ncols: usize,
    // (pivot column, row with a one at the pivot and zeros at earlier pivots)
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> GenericEchelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        GenericEchelon {
            field,
            ncols,
            rows: Vec::new(),
        }
    }

    fn reduce(&self, row: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(row.len(), self.ncols, "row length mismatch");
        let f = &self.field;
        let mut v = row.to_vec();
        for (pivot, r) in &self.rows {
            if f.is_zero(&v[*pivot]) {
                continue;
            }
            let c = v[*pivot].clone();
            for (x, y) in v.iter_mut().zip(r).skip(*pivot) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        v
    }
}

impl<F: Field> Echelon<F> for GenericEchelon<F> {
    fn insert(&mut self, row: &[F::Elem]) -> bool {
        let mut v = self.reduce(row);
        let f = &self.field;
        let Some(pivot) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[pivot]).expect("nonzero pivot");
        for x in v.iter_mut().skip(pivot) {
            *x = f.mul(x, &inv);
        }
        self.rows.push((pivot, v));
        true
    }

    fn contains(&self, row: &[F::Elem]) -> bool {
        let f = &self.field;
        self.reduce(row).iter().all(|x| f.is_zero(x))
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn ncols(&self) -> usize {
        self.ncols
    }

    fn rows(&self) -> Vec<Vec<F::Elem>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    fn box_clone(&self) -> Box<dyn Echelon<F>> {
        Box::new(self.clone())
    }
}

/// Echelon form over GF(2) with rows packed into 64-bit words.
#[derive(Clone)]
pub struct Gf2Echelon {
    ncols: usize,
    words: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Gf2Echelon {
    pub fn new(ncols: usize) -> Self {
        Gf2Echelon {
            ncols,
            words: ncols.div_ceil(64).max(1),
            rows: Vec::new(),
        }
    }

    fn pack(&self, row: &[bool]) -> Vec<u64> {
        assert_eq!(row.len(), self.ncols, "row length mismatch");
        let mut w = vec![0u64; self.words];
        for (i, &b) in row.iter().enumerate() {
            if b {
                w[i / 64] |= 1 << (i % 64);
            }
        }
        w
    }

    fn reduce_packed(&self, mut w: Vec<u64>) -> Vec<u64> {
        for (pivot, r) in &self.rows {
            if w[pivot / 64] >> (pivot % 64) & 1 == 1 {
                for (a, b) in w.iter_mut().zip(r) {
                    *a ^= b;
                }
            }
        }
        w
    }

    /// Inserts an already packed row.
    pub fn insert_packed(&mut self, w: Vec<u64>) -> bool {
        let w = self.reduce_packed(w);
        match first_bit(&w) {
            Some(pivot) => {
                self.rows.push((pivot, w));
                true
            }
            None => false,
        }
    }

    pub fn contains_packed(&self, w: Vec<u64>) -> bool {
        first_bit(&self.reduce_packed(w)).is_none()
    }
}

fn first_bit(w: &[u64]) -> Option<usize> {
    w.iter()
        .enumerate()
        .find(|(_, x)| **x != 0)
        .map(|(i, x)| i * 64 + x.trailing_zeros() as usize)
}

impl Echelon<Gf2> for Gf2Echelon {
    fn insert(&mut self, row: &[bool]) -> bool {
        let w = self.pack(row);
        self.insert_packed(w)
    }

    fn contains(&self, row: &[bool]) -> bool {
        self.contains_packed(self.pack(row))
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn ncols(&self) -> usize {
        self.ncols
    }

    fn rows(&self) -> Vec<Vec<bool>> {
        self.rows
            .iter()
            .map(|(_, w)| {
                (0..self.ncols)
                    .map(|i| w[i / 64] >> (i % 64) & 1 == 1)
                    .collect()
            })
            .collect()
    }

    fn box_clone(&self) -> Box<dyn Echelon<Gf2>> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::{Field, PrimeField};

    #[test]
    fn gf2_packed_matches_generic() {
        let rows = [
            [true, false, true, true],
            [false, true, true, false],
            [true, true, false, true],
            [true, true, true, true],
        ];
        let mut packed = Gf2.new_echelon(4);
        let mut generic = GenericEchelon::new(PrimeField::new(2).unwrap(), 4);
        for r in &rows {
            let as_u32: Vec<u32> = r.iter().map(|&b| b as u32).collect();
            assert_eq!(packed.insert(r), generic.insert(&as_u32));
        }
        assert_eq!(packed.rank(), 3);
        assert!(packed.contains(&[false, true, false, false]));
        assert!(!packed.contains(&[false, false, false, true]));
    }

    #[test]
    fn wide_rows_cross_word_boundary() {
        let mut e = Gf2Echelon::new(130);
        let mut a = vec![false; 130];
        a[129] = true;
        a[3] = true;
        let mut b = vec![false; 130];
        b[129] = true;
        assert!(e.insert(&a));
        assert!(e.insert(&b));
        let mut c = vec![false; 130];
        c[3] = true;
        assert!(e.contains(&c));
        assert!(!e.insert(&c));
    }
}
