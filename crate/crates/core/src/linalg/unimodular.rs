use num_traits::ToPrimitive;

use super::field::{Field, Rationals};
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Default cap on the number of square submatrices examined.
pub const DEFAULT_TU_CAP: u64 = 50_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of square submatrices of order `1..=max_order`.
pub fn minor_count(rows: usize, cols: usize, max_order: usize) -> u128 {
    (1..=max_order.min(rows).min(cols))
        .map(|k| binomial(rows, k) * binomial(cols, k))
        .sum()
}

/// Exact determinant of a small integer matrix by fraction-free elimination.
pub fn bareiss_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return false;
        }
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return true;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Whether every square submatrix of order at most `max_order` (default:
/// the smaller dimension) has determinant -1, 0 or 1.
pub fn is_totally_unimodular(m: &Matrix<Rationals>, max_order: Option<usize>, cap: u64) -> Result<bool> {
    let (r, c) = (m.nrows(), m.ncols());
    let max_order = max_order.unwrap_or(r.min(c)).min(r).min(c);
    let count = minor_count(r, c, max_order);
    if count > cap as u128 {
        return Err(Error::Overbudget(format!(
            "{count} square submatrices exceed the cap of {cap}"
        )));
    }
    let mut ints = vec![vec![0i128; c]; r];
    for (i, row) in ints.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let q = m.get(i, j);
            if !q.is_integer() {
                return Ok(false);
            }
            match q.numer().to_i64() {
                Some(x) if (-1..=1).contains(&x) => *v = x as i128,
                _ => return Ok(false),
            }
        }
    }
    for k in 2..=max_order {
        let ok = for_each_subset(r, k, |rs| {
            for_each_subset(c, k, |cs| {
                let sub: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| ints[i][j]).collect())
                    .collect();
                bareiss_det(&sub).abs() <= 1
            })
        });
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Convenience: TU check of any matrix whose entries lift to integers.
pub fn is_totally_unimodular_any<F: Field>(m: &Matrix<F>, max_order: Option<usize>, cap: u64) -> Result<bool> {
    is_totally_unimodular(&m.to_field(Rationals)?, max_order, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[Vec<i64>]) -> Matrix<Rationals> {
        Matrix::from_i64(Rationals, rows).unwrap()
    }

    #[test]
    fn identity_is_tu() {
        assert!(is_totally_unimodular(&Matrix::identity(Rationals, 4), None, DEFAULT_TU_CAP).unwrap());
    }

    #[test]
    fn determinant_two_is_rejected() {
        assert!(!is_totally_unimodular(&q(&[vec![1, 1], vec![-1, 1]]), None, DEFAULT_TU_CAP).unwrap());
        assert!(!is_totally_unimodular(&q(&[vec![2]]), None, DEFAULT_TU_CAP).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let m = Matrix::identity(Rationals, 6);
        assert!(matches!(is_totally_unimodular(&m, None, 10), Err(Error::Overbudget(_))));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = vec![vec![2, -1, 0], vec![1, 3, 2], vec![0, 1, 4]];
        // 2(12-2) + 1(4-0) = 24
        assert_eq!(bareiss_det(&m), 24);
        assert_eq!(bareiss_det(&[vec![0, 1], vec![1, 0]]), -1);
    }

    #[test]
    fn subset_enumeration_counts() {
        let mut n = 0;
        for_each_subset(6, 3, |_| {
            n += 1;
            true
        });
        assert_eq!(n, 20);
        assert_eq!(minor_count(5, 10, 5), 3002);
    }
}
