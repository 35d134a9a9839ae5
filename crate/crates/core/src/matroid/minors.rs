use std::collections::HashSet;

use super::{sort_sets, Backend, ElementSet, Matroid};
use crate::error::{Error, Result};
use crate::linalg::{AnyMatrix, Field, Matrix};

/// Removes index `i` from a set, shifting higher indices down by one.
pub(crate) fn drop_index(s: ElementSet, i: usize) -> ElementSet {
    let low = s.0 & ((1u64 << i) - 1);
    let high = if i >= 63 { 0 } else { (s.0 >> (i + 1)) << i };
    ElementSet(low | high)
}

fn minimal_nonempty(sets: impl IntoIterator<Item = ElementSet>) -> Vec<ElementSet> {
    let mut v: Vec<ElementSet> = sets
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    sort_sets(&mut v);
    let mut out: Vec<ElementSet> = Vec::new();
    for s in v {
        if !out.iter().any(|t| t.is_subset(s)) {
            out.push(s);
        }
    }
    out
}

/// Eliminates column `j` using a row with a nonzero entry there, then drops
/// that row and the column. Represents the contraction of a non-loop.
fn contract_column<F: Field>(m: &Matrix<F>, j: usize) -> Matrix<F> {
    let f = m.field().clone();
    let p = (0..m.nrows())
        .find(|&i| !f.is_zero(m.get(i, j)))
        .expect("non-loop column");
    let inv = f.inv(m.get(p, j)).expect("nonzero");
    let mut rows = Vec::new();
    for i in 0..m.nrows() {
        if i == p {
            continue;
        }
        let factor = f.mul(m.get(i, j), &inv);
        let row: Vec<F::Elem> = (0..m.ncols())
            .filter(|&c| c != j)
            .map(|c| f.sub(m.get(i, c), &f.mul(&factor, m.get(p, c))))
            .collect();
        rows.push(row);
    }
    let cols = m.ncols() - 1;
    let data = rows.into_iter().flatten().collect();
    Matrix::new(f, m.nrows() - 1, cols, data).expect("sized")
}

/// Representation of the dual: for each non-basis element e a row with a
/// one at e and minus the standard-form column of e at the basis positions.
fn dual_matrix<F: Field>(m: &Matrix<F>, basis: &[usize]) -> Result<Matrix<F>> {
    let f = m.field().clone();
    let s = m.standard_form(basis)?;
    let n = m.ncols();
    let mut out = Matrix::zeros(f.clone(), n - basis.len(), n);
    let cobasis: Vec<usize> = (0..n).filter(|j| !basis.contains(j)).collect();
    for (k, &e) in cobasis.iter().enumerate() {
        out.set(k, e, f.one());
        for (i, &b) in basis.iter().enumerate() {
            out.set(k, b, f.neg(s.get(i, e)));
        }
    }
    Ok(out)
}

impl Matroid {
    /// The dual matroid on the same labels.
    pub fn dual(&self) -> Result<Matroid> {
        let labels = self.labels().to_vec();
        match self.backend() {
            Backend::Uniform { rank } => Matroid::uniform_with_labels(self.n() - rank, labels),
            Backend::Column(m) => {
                let basis = self.first_basis().to_vec();
                let d: AnyMatrix = match m {
                    AnyMatrix::Gf2(x) => dual_matrix(x, &basis)?.into(),
                    AnyMatrix::Gfp(x) => dual_matrix(x, &basis)?.into(),
                    AnyMatrix::Rational(x) => dual_matrix(x, &basis)?.into(),
                };
                Matroid::from_matrix_with_labels(d, labels)
            }
            Backend::Graphic(_) | Backend::CircuitList(_) => {
                Matroid::from_circuits(labels, self.cocircuits()?.to_vec())
            }
        }
    }

    /// M \ e.
    pub fn delete(&self, e: usize) -> Result<Matroid> {
        let mut labels = self.labels().to_vec();
        labels.remove(e);
        match self.backend() {
            Backend::Uniform { rank } => {
                Matroid::uniform_with_labels((*rank).min(self.n() - 1), labels)
            }
            Backend::Column(m) => {
                let keep: Vec<usize> = (0..self.n()).filter(|&j| j != e).collect();
                let d: AnyMatrix = match m {
                    AnyMatrix::Gf2(x) => x.select_cols(&keep).into(),
                    AnyMatrix::Gfp(x) => x.select_cols(&keep).into(),
                    AnyMatrix::Rational(x) => x.select_cols(&keep).into(),
                };
                Matroid::from_matrix_with_labels(d, labels)
            }
            Backend::Graphic(edges) => {
                let mut edges = edges.clone();
                edges.remove(e);
                Matroid::from_graph_with_labels(edges, labels)
            }
            Backend::CircuitList(cs) => {
                let cs = cs
                    .iter()
                    .filter(|c| !c.contains(e))
                    .map(|c| drop_index(*c, e))
                    .collect();
                Matroid::from_circuits(labels, cs)
            }
        }
    }

    /// M / e; contracting a loop is the same as deleting it.
    pub fn contract(&self, e: usize) -> Result<Matroid> {
        if self.is_loop(e) {
            return self.delete(e);
        }
        let mut labels = self.labels().to_vec();
        labels.remove(e);
        match self.backend() {
            Backend::Uniform { rank } => Matroid::uniform_with_labels(rank - 1, labels),
            Backend::Column(m) => {
                let d: AnyMatrix = match m {
                    AnyMatrix::Gf2(x) => contract_column(x, e).into(),
                    AnyMatrix::Gfp(x) => contract_column(x, e).into(),
                    AnyMatrix::Rational(x) => contract_column(x, e).into(),
                };
                Matroid::from_matrix_with_labels(d, labels)
            }
            Backend::Graphic(edges) => {
                let (u, v) = edges[e].clone();
                let edges = edges
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != e)
                    .map(|(_, (a, b))| {
                        let a = if *a == v { u.clone() } else { a.clone() };
                        let b = if *b == v { u.clone() } else { b.clone() };
                        (a, b)
                    })
                    .collect();
                Matroid::from_graph_with_labels(edges, labels)
            }
            Backend::CircuitList(cs) => {
                let cs = minimal_nonempty(cs.iter().map(|c| drop_index(c.without(e), e)));
                Matroid::from_circuits(labels, cs)
            }
        }
    }

    pub fn delete_label(&self, label: &str) -> Result<Matroid> {
        self.delete(self.index_of(label)?)
    }

    pub fn contract_label(&self, label: &str) -> Result<Matroid> {
        self.contract(self.index_of(label)?)
    }

    /// Direct sum; labels must be disjoint.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let mut labels = self.labels().to_vec();
        labels.extend(other.labels().iter().cloned());
        let shift = self.n();
        let mut cs = self.circuits()?.to_vec();
        cs.extend(other.circuits()?.iter().map(|c| ElementSet(c.0 << shift)));
        Matroid::from_circuits(labels, cs)
    }
}

/// Parallel connection P(M, N; p) defined through its circuits. The result
/// lists the elements of `m` first, then those of `n` other than `p`.
pub fn parallel_connection(m: &Matroid, n: &Matroid, p: &str) -> Result<Matroid> {
    let pm = m
        .index_of(p)
        .map_err(|_| Error::BadOverlap(format!("basepoint `{p}` missing from the first operand")))?;
    let pn = n
        .index_of(p)
        .map_err(|_| Error::BadOverlap(format!("basepoint `{p}` missing from the second operand")))?;
    for l in n.labels() {
        if l != p && m.index_of(l).is_ok() {
            return Err(Error::BadOverlap(format!("`{l}` lies in both operands")));
        }
    }
    if m.is_loop(pm) || n.is_loop(pn) {
        return Err(Error::BadOverlap(format!("basepoint `{p}` is a loop")));
    }
    let mut labels = m.labels().to_vec();
    let shift = m.n();
    // index in the result of each element of n
    let map: Vec<usize> = (0..n.n())
        .map(|j| match j.cmp(&pn) {
            std::cmp::Ordering::Less => shift + j,
            std::cmp::Ordering::Equal => pm,
            std::cmp::Ordering::Greater => shift + j - 1,
        })
        .collect();
    labels.extend(n.labels().iter().filter(|l| *l != p).cloned());
    let lift = |c: ElementSet| -> ElementSet { c.iter().map(|j| map[j]).collect() };

    let cm = m.circuits()?;
    let cn = n.circuits()?;
    let mut out: Vec<ElementSet> = cm.to_vec();
    out.extend(cn.iter().map(|c| lift(*c)));
    for c1 in cm.iter().filter(|c| c.contains(pm)) {
        for c2 in cn.iter().filter(|c| c.contains(pn)) {
            out.push(c1.union(lift(*c2)).without(pm));
        }
    }
    Matroid::from_circuits(labels, out)
}

/// Iterated parallel connection: P_1 = M_1, P_i = P(P_{i-1}, M_i; p_i) with
/// `basepoints[i-1]` joining `ms[i]`. A single repeated basepoint gives the
/// one-point construction; distinct ones give a chain.
pub fn parallel_connection_all<S: AsRef<str>>(ms: &[Matroid], basepoints: &[S]) -> Result<Matroid> {
    let Some(first) = ms.first() else {
        return Err(Error::BadParams("no operands".into()));
    };
    if basepoints.len() + 1 != ms.len() {
        return Err(Error::BadParams(format!(
            "{} operands need {} basepoints, got {}",
            ms.len(),
            ms.len() - 1,
            basepoints.len()
        )));
    }
    let mut acc = first.clone();
    for (m, p) in ms[1..].iter().zip(basepoints) {
        acc = parallel_connection(&acc, m, p.as_ref())?;
    }
    Ok(acc)
}

/// Brings the column `p` of a matrix to the first unit vector by row
/// operations, dropping dependent rows.
fn pin_column<F: Field>(a: &Matrix<F>, p: usize) -> Result<Matrix<F>> {
    let (r, pivots) = a.rref();
    let _ = pivots;
    let f = r.field().clone();
    let Some(k) = (0..r.nrows()).find(|&i| !f.is_zero(r.get(i, p))) else {
        return Err(Error::BadOverlap("basepoint column is zero".into()));
    };
    let mut order: Vec<usize> = vec![k];
    order.extend((0..r.nrows()).filter(|&i| i != k));
    let mut m = r.select_rows(&order);
    let inv = f.inv(m.get(0, p)).expect("nonzero");
    for j in 0..m.ncols() {
        let v = f.mul(m.get(0, j), &inv);
        m.set(0, j, v);
    }
    for i in 1..m.nrows() {
        let factor = m.get(i, p).clone();
        if f.is_zero(&factor) {
            continue;
        }
        for j in 0..m.ncols() {
            let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(0, j)));
            m.set(i, j, v);
        }
    }
    Ok(m)
}

/// Glues representations of M and N along the basepoint columns `pa`, `pb`
/// into a representation of P(M, N; p). Both basepoint columns are first
/// brought to the unit vector e1, which becomes a shared first row. Columns
/// of `a` come first, then those of `b` without `pb`.
pub fn glue_representations<F: Field>(a: &Matrix<F>, pa: usize, b: &Matrix<F>, pb: usize) -> Result<Matrix<F>> {
    let a = pin_column(a, pa)?;
    let b = pin_column(b, pb)?;
    let f = a.field().clone();
    let (ra, rb) = (a.nrows(), b.nrows());
    let na = a.ncols();
    let bcols: Vec<usize> = (0..b.ncols()).filter(|&j| j != pb).collect();
    let mut out = Matrix::zeros(f, ra + rb - 1, na + bcols.len());
    for j in 0..na {
        for i in 0..ra {
            out.set(i, j, a.get(i, j).clone());
        }
    }
    for (k, &j) in bcols.iter().enumerate() {
        out.set(0, na + k, b.get(0, j).clone());
        for i in 1..rb {
            out.set(ra + i - 1, na + k, b.get(i, j).clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drop_index_shifts() {
        let s: ElementSet = [0, 2, 5].into_iter().collect();
        assert_eq!(drop_index(s, 2).to_vec(), vec![0, 4]);
        assert_eq!(drop_index(s, 1).to_vec(), vec![0, 1, 4]);
        assert_eq!(drop_index(s, 5).to_vec(), vec![0, 2]);
    }

    #[test]
    fn minimal_sets_only() {
        let v = minimal_nonempty([
            ElementSet(0b110),
            ElementSet(0b010),
            ElementSet(0),
            ElementSet(0b1001),
        ]);
        assert_eq!(v, vec![ElementSet(0b010), ElementSet(0b1001)]);
    }
}
