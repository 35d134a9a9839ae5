//! Linear orderings of a ground set and standard orderings (last r
//! elements form a basis), including the mixed-radix enumeration index.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::matroid::{ElementSet, Matroid};

/// A bijection from positions `0..n` to element indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ordering {
    order: Vec<usize>,
    pos: Vec<usize>,
}

impl fmt::Debug for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordering{:?}", self.order)
    }
}

impl Ordering {
    /// `order[k]` is the element at position `k` (0-based).
    pub fn new(order: Vec<usize>) -> Result<Ordering> {
        let n = order.len();
        let mut pos = vec![usize::MAX; n];
        for (k, &e) in order.iter().enumerate() {
            if e >= n || pos[e] != usize::MAX {
                return Err(Error::Parse(format!("{order:?} is not a permutation")));
            }
            pos[e] = k;
        }
        Ok(Ordering { order, pos })
    }

    pub fn identity(n: usize) -> Ordering {
        Ordering::new((0..n).collect()).expect("identity")
    }

    pub fn from_labels<S: AsRef<str>>(m: &Matroid, labels: &[S]) -> Result<Ordering> {
        if labels.len() != m.n() {
            return Err(Error::BadSize {
                expected: m.n(),
                actual: labels.len(),
            });
        }
        let order = labels
            .iter()
            .map(|l| m.index_of(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ordering::new(order)
    }

    /// Parses a comma-separated label list.
    pub fn parse(m: &Matroid, text: &str) -> Result<Ordering> {
        let labels: Vec<&str> = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        Ordering::from_labels(m, &labels)
    }

    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Ordering {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        Ordering::new(order).expect("permutation")
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Element at position `k`.
    pub fn element(&self, k: usize) -> usize {
        self.order[k]
    }

    /// Position of element `e`.
    pub fn position(&self, e: usize) -> usize {
        self.pos[e]
    }

    pub fn elements(&self) -> &[usize] {
        &self.order
    }

    /// Element set to position set.
    pub fn to_positions(&self, s: ElementSet) -> ElementSet {
        s.iter().map(|e| self.pos[e]).collect()
    }

    /// Position set to element set.
    pub fn to_elements(&self, s: ElementSet) -> ElementSet {
        s.iter().map(|k| self.order[k]).collect()
    }

    pub fn labels<'a>(&self, m: &'a Matroid) -> Vec<&'a str> {
        self.order.iter().map(|&e| m.labels()[e].as_str()).collect()
    }

    pub fn to_label_string(&self, m: &Matroid) -> String {
        self.labels(m).join(",")
    }

    /// The induced ordering after removing element `e` from the ground set
    /// (element indices above `e` shift down by one).
    pub fn without(&self, e: usize) -> Ordering {
        let order = self
            .order
            .iter()
            .filter(|&&x| x != e)
            .map(|&x| if x > e { x - 1 } else { x })
            .collect();
        Ordering::new(order).expect("permutation")
    }

    /// The induced ordering on a restriction to `keep`, whose elements are
    /// renumbered `0..|keep|` in increasing index order.
    pub fn induced(&self, keep: ElementSet) -> Ordering {
        let rank_of = |x: usize| keep.intersection(ElementSet::full(x)).len();
        let order = self
            .order
            .iter()
            .filter(|&&x| keep.contains(x))
            .map(|&x| rank_of(x))
            .collect();
        Ordering::new(order).expect("permutation")
    }
}

/// An ordering whose last `r` positions hold a basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardOrdering {
    ordering: Ordering,
    basis: ElementSet,
}

impl StandardOrdering {
    pub fn new(m: &Matroid, ordering: Ordering) -> Result<StandardOrdering> {
        if ordering.len() != m.n() {
            return Err(Error::BadSize {
                expected: m.n(),
                actual: ordering.len(),
            });
        }
        let r = m.rank();
        let basis: ElementSet = (m.n() - r..m.n()).map(|k| ordering.element(k)).collect();
        if !m.is_basis(basis) {
            return Err(Error::NotStandard(format!(
                "last {r} elements {} are not a basis",
                m.display_set(basis)
            )));
        }
        Ok(StandardOrdering { ordering, basis })
    }

    pub fn from_labels<S: AsRef<str>>(m: &Matroid, labels: &[S]) -> Result<StandardOrdering> {
        StandardOrdering::new(m, Ordering::from_labels(m, labels)?)
    }

    pub fn ordering(&self) -> &Ordering {
        &self.ordering
    }

    pub fn basis(&self) -> ElementSet {
        self.basis
    }

    pub fn len(&self) -> usize {
        self.ordering.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordering.is_empty()
    }
}

fn factorial(k: usize) -> Option<u64> {
    (1..=k as u64).try_fold(1u64, |a, b| a.checked_mul(b))
}

/// Decodes the `idx`-th permutation (Lehmer code) of `items`.
fn nth_permutation(items: &[usize], mut idx: u64) -> Vec<usize> {
    let mut pool = items.to_vec();
    let mut out = Vec::with_capacity(items.len());
    for k in (0..items.len()).rev() {
        let f = factorial(k).expect("small");
        let q = (idx / f) as usize;
        idx %= f;
        out.push(pool.remove(q));
    }
    out
}

/// Index space of all standard orderings of a matroid:
/// `index = (basis·r! + basis_perm)·(n−r)! + cobasis_perm`, with bases in
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct StandardOrderings {
    matroid: Matroid,
    bases: Vec<ElementSet>,
    r_fact: u64,
    c_fact: u64,
    total: u64,
}

impl StandardOrderings {
    pub fn new(m: &Matroid) -> Result<StandardOrderings> {
        let bases = m.bases()?.to_vec();
        let over = || Error::Overbudget("ordering count does not fit in 64 bits".into());
        let r_fact = factorial(m.rank()).ok_or_else(over)?;
        let c_fact = factorial(m.n() - m.rank()).ok_or_else(over)?;
        let total = (bases.len() as u64)
            .checked_mul(r_fact)
            .and_then(|x| x.checked_mul(c_fact))
            .ok_or_else(over)?;
        Ok(StandardOrderings {
            matroid: m.clone(),
            bases,
            r_fact,
            c_fact,
            total,
        })
    }

    pub fn count(&self) -> u64 {
        self.total
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn decode(&self, idx: u64) -> Result<StandardOrdering> {
        if idx >= self.total {
            return Err(Error::BadParams(format!(
                "ordering index {idx} out of range (count {})",
                self.total
            )));
        }
        let cperm = idx % self.c_fact;
        let rest = idx / self.c_fact;
        let bperm = rest % self.r_fact;
        let b = self.bases[(rest / self.r_fact) as usize];
        let co: Vec<usize> = self.matroid.ground().difference(b).to_vec();
        let mut order = nth_permutation(&co, cperm);
        order.extend(nth_permutation(&b.to_vec(), bperm));
        Ok(StandardOrdering {
            ordering: Ordering::new(order).expect("permutation"),
            basis: b,
        })
    }

    /// Orderings with indices in `range`, decoded lazily.
    pub fn range(&self, range: std::ops::Range<u64>) -> impl Iterator<Item = StandardOrdering> + '_ {
        range
            .take_while(move |&i| i < self.total)
            .map(move |i| self.decode(i).expect("in range"))
    }

    /// All orderings in index order; an error past `limit` elements.
    pub fn materialize(&self, limit: u64) -> Result<Vec<StandardOrdering>> {
        if self.total > limit {
            return Err(Error::Overbudget(format!(
                "{} standard orderings exceed the limit {limit}",
                self.total
            )));
        }
        Ok(self.range(0..self.total).collect())
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    #[test]
    fn counts() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        let so = StandardOrderings::new(&u23).unwrap();
        assert_eq!(so.count(), 6);
        let all = so.materialize(100).unwrap();
        let distinct: HashSet<_> = all.iter().map(|s| s.ordering().clone()).collect();
        assert_eq!(distinct.len(), 6);
        for n in 1..6 {
            let u = Matroid::uniform(n, n).unwrap();
            assert_eq!(StandardOrderings::new(&u).unwrap().count(), (1..=n as u64).product::<u64>());
        }
    }

    #[test]
    fn decoded_orderings_are_standard() {
        let u = Matroid::uniform(2, 4).unwrap();
        let so = StandardOrderings::new(&u).unwrap();
        for s in so.range(0..so.count()) {
            assert!(StandardOrdering::new(&u, s.ordering().clone()).is_ok());
        }
        assert!(so.decode(so.count()).is_err());
        assert!(matches!(so.materialize(3), Err(Error::Overbudget(_))));
    }

    #[test]
    fn lehmer_decoding() {
        let items = [4, 7, 9];
        let perms: Vec<Vec<usize>> = (0..6).map(|i| nth_permutation(&items, i)).collect();
        assert_eq!(perms[0], vec![4, 7, 9]);
        assert_eq!(perms[1], vec![4, 9, 7]);
        assert_eq!(perms[5], vec![9, 7, 4]);
    }

    #[test]
    fn non_standard_rejected() {
        let m = Matroid::from_matrix(crate::matroid::q_matrix(&[vec![1, 1, 0]]).unwrap()).unwrap();
        let bad = Ordering::new(vec![0, 1, 2]).unwrap();
        assert!(matches!(StandardOrdering::new(&m, bad), Err(Error::NotStandard(_))));
        assert!(Ordering::new(vec![0, 0]).is_err());
    }

    #[test]
    fn without_compresses_positions() {
        let o = Ordering::new(vec![2, 0, 3, 1]).unwrap();
        assert_eq!(o.without(0).elements(), &[1, 2, 0]);
        assert_eq!(o.without(3).elements(), &[2, 0, 1]);
    }
}
