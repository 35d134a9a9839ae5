//! Signed circuit and cocircuit incidence matrices.
//!
//! Over characteristic 2 the matrices are plain incidence matrices built
//! from fundamental (co)circuits. Otherwise signs are read off a totally
//! unimodular representation in standard form: cocircuit rows are the rows
//! of `[A₁ | E_r]`, circuit rows are `[E_{n−r} | −A₁ᵀ]`.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{is_totally_unimodular, small_integer, AnyMatrix, FieldTag, Matrix, Rationals, DEFAULT_TU_CAP};
use crate::matroid::{ElementSet, Matroid};
use crate::ordering::{Ordering, StandardOrdering};
use crate::with_field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IncidenceKind {
    Circuit,
    Cocircuit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Fundamental(ElementSet),
    Full,
}

/// Rows are (co)circuits, columns are ordering positions.
#[derive(Debug, Clone)]
pub struct SignedIncidenceMatrix {
    pub kind: IncidenceKind,
    pub scope: Scope,
    pub ordering: Ordering,
    /// Support of each row, as element indices.
    pub sets: Vec<ElementSet>,
    /// Entries in {−1, 0, 1}.
    pub signs: Vec<Vec<i8>>,
    pub field: FieldTag,
}

impl SignedIncidenceMatrix {
    pub fn nrows(&self) -> usize {
        self.signs.len()
    }

    pub fn ncols(&self) -> usize {
        self.ordering.len()
    }

    /// The matrix over its field, with "C:{..}" / "C*:{..}" row labels and
    /// columns labelled in ordering order.
    pub fn to_matrix(&self, m: &Matroid) -> Result<AnyMatrix> {
        let rows: Vec<Vec<i64>> = self
            .signs
            .iter()
            .map(|r| r.iter().map(|&x| x as i64).collect())
            .collect();
        let prefix = match self.kind {
            IncidenceKind::Circuit => "C",
            IncidenceKind::Cocircuit => "C*",
        };
        let row_labels = self
            .sets
            .iter()
            .map(|s| format!("{prefix}:{}", m.display_set(*s)))
            .collect();
        let col_labels = self.ordering.labels(m).into_iter().map(String::from).collect();
        let any = integer_matrix(self.field, self.ncols(), &rows)?;
        any.with_row_labels(row_labels)?.with_col_labels(col_labels)
    }

    pub fn rank(&self) -> Result<usize> {
        let rows: Vec<Vec<i64>> = self
            .signs
            .iter()
            .map(|r| r.iter().map(|&x| x as i64).collect())
            .collect();
        Ok(integer_matrix(self.field, self.ncols(), &rows)?.rank())
    }
}

fn integer_matrix(field: FieldTag, ncols: usize, rows: &[Vec<i64>]) -> Result<AnyMatrix> {
    if rows.is_empty() {
        return format!("0 {ncols} {field}").parse();
    }
    with_field!(field, |f| Ok(AnyMatrix::from(Matrix::from_i64(f, rows)?)))
}

/// Standard form over the integers of a matrix with unit pivots. Pivots on
/// `basis` columns in order; `None` if a pivot is missing or an entry leaves
/// {−1, 0, 1}.
pub(crate) fn integer_standard_form(rows: &[Vec<i64>], basis: &[usize]) -> Option<Vec<Vec<i64>>> {
    let mut a: Vec<Vec<i64>> = rows.to_vec();
    let nrows = a.len();
    let mut done = vec![false; nrows];
    let mut order = Vec::with_capacity(basis.len());
    for &c in basis {
        let p = (0..nrows).find(|&i| !done[i] && a[i][c] != 0)?;
        let pv = a[p][c];
        if pv.abs() != 1 {
            return None;
        }
        for x in a[p].iter_mut() {
            *x *= pv;
        }
        let prow = a[p].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != p && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= f * y;
                }
            }
        }
        done[p] = true;
        order.push(p);
    }
    let out: Vec<Vec<i64>> = order.into_iter().map(|i| a[i].clone()).collect();
    if out.iter().flatten().any(|x| x.abs() > 1) {
        return None;
    }
    Some(out)
}

fn to_integers(m: &Matrix<Rationals>) -> Option<Vec<Vec<i64>>> {
    (0..m.nrows())
        .map(|i| m.row(i).iter().map(small_integer).collect())
        .collect()
}

/// A totally unimodular r×n representation of `m` over ℚ with an identity
/// on the first greedy basis. Cached on the matroid.
pub fn regular_representation(m: &Matroid) -> Result<Matrix<Rationals>> {
    m.regular_cache().get_or_init(|| compute_regular(m)).clone()
}

fn compute_regular(m: &Matroid) -> Result<Matrix<Rationals>> {
    let (n, r) = (m.n(), m.rank());
    if r == 0 {
        return Ok(Matrix::zeros(Rationals, 0, n));
    }
    let basis = m.first_basis().to_vec();
    if let Some(rows) = m.matrix().and_then(lift_signed) {
        if let Some(sf) = integer_standard_form(&rows, &basis) {
            if let Some(rep) = validate(m, sf, &basis)? {
                return Ok(rep);
            }
        }
    }
    let sf = camion_signing(m, &basis)?;
    validate(m, sf, &basis)?.ok_or_else(|| {
        Error::NotRegular(format!(
            "no totally unimodular signing represents this matroid ({} elements, rank {r})",
            n
        ))
    })
}

/// Reads a matrix as a {0,±1} integer matrix (p−1 becomes −1 over GF(p)).
fn lift_signed(a: &AnyMatrix) -> Option<Vec<Vec<i64>>> {
    let p = a.tag().characteristic() as i64;
    let rows = a.to_strings();
    rows.iter()
        .map(|row| {
            row.iter()
                .map(|s| {
                    let v: i64 = s.parse().ok()?;
                    match v {
                        -1..=1 => Some(v),
                        _ if p > 0 && v == p - 1 => Some(-1),
                        _ => None,
                    }
                })
                .collect()
        })
        .collect()
}

/// Checks total unimodularity of the non-basis block and that the column
/// matroid equals `m`.
fn validate(m: &Matroid, sf: Vec<Vec<i64>>, basis: &[usize]) -> Result<Option<Matrix<Rationals>>> {
    let co: Vec<usize> = (0..m.n()).filter(|e| !basis.contains(e)).collect();
    let rep = Matrix::from_i64(Rationals, &sf)?;
    if !co.is_empty() && !is_totally_unimodular(&rep.select_cols(&co), None, DEFAULT_TU_CAP)? {
        return Ok(None);
    }
    let candidate = Matroid::from_matrix_with_labels(rep.clone(), m.labels().to_vec())?.with_enum_cap(m.enum_cap());
    if candidate.rank() != m.rank() || !candidate.same_bases(m)? {
        return Ok(None);
    }
    Ok(Some(rep))
}

/// Camion's signing of the fundamental-circuit support: sign a spanning
/// forest +1, then repeatedly add the unsigned edge whose endpoints are
/// closest in the signed subgraph, choosing its sign so that the closed
/// cycle sums to 0 mod 4. Each such cycle is chordless in the full graph.
fn camion_signing(m: &Matroid, basis: &[usize]) -> Result<Vec<Vec<i64>>> {
    let (n, r) = (m.n(), basis.len());
    let bset: ElementSet = basis.iter().copied().collect();
    m.bases()?;
    let co: Vec<usize> = (0..n).filter(|e| !bset.contains(*e)).collect();
    // Nodes 0..r are rows, r.. are cobasis columns.
    let nodes = r + co.len();
    let mut support: Vec<(usize, usize)> = Vec::new();
    for (j, &e) in co.iter().enumerate() {
        let c = m.fundamental_circuit_unchecked(bset, e);
        for (i, &b) in basis.iter().enumerate() {
            if c.contains(b) {
                support.push((i, r + j));
            }
        }
    }
    let mut sign: HashMap<(usize, usize), i64> = HashMap::new();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes];

    // Spanning forest of the support graph.
    let mut full_adj: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for &(u, v) in &support {
        full_adj[u].push(v);
        full_adj[v].push(u);
    }
    let mut seen = vec![false; nodes];
    for s in 0..nodes {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &v in &full_adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    sign.insert(key(u, v), 1);
                    adj[u].push(v);
                    adj[v].push(u);
                    q.push_back(v);
                }
            }
        }
    }

    loop {
        let mut best: Option<(usize, (usize, usize), Vec<usize>)> = None;
        for &(u, v) in &support {
            if sign.contains_key(&key(u, v)) {
                continue;
            }
            let path = shortest_path(&adj, u, v).expect("forest spans each component");
            if best.as_ref().is_none_or(|b| path.len() < b.0) {
                best = Some((path.len(), (u, v), path));
            }
        }
        let Some((_, (u, v), path)) = best else { break };
        let sum: i64 = path.windows(2).map(|w| sign[&key(w[0], w[1])]).sum();
        let s = if (sum + 1).rem_euclid(4) == 0 { 1 } else { -1 };
        debug_assert_eq!((sum + s).rem_euclid(4), 0);
        sign.insert(key(u, v), s);
        adj[u].push(v);
        adj[v].push(u);
    }

    let mut rows = vec![vec![0i64; n]; r];
    for (i, &b) in basis.iter().enumerate() {
        rows[i][b] = 1;
    }
    for (&(u, v), &s) in &sign {
        let (i, j) = if u < r { (u, v - r) } else { (v, u - r) };
        rows[i][co[j]] = s;
    }
    Ok(rows)
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

fn shortest_path(adj: &[Vec<usize>], s: usize, t: usize) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; adj.len()];
    prev[s] = s;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        if u == t {
            let mut path = vec![t];
            let mut x = t;
            while x != s {
                x = prev[x];
                path.push(x);
            }
            return Some(path);
        }
        for &v in &adj[u] {
            if prev[v] == usize::MAX {
                prev[v] = u;
                q.push_back(v);
            }
        }
    }
    None
}

/// Signed fundamental cocircuit rows (r × n) and circuit rows ((n−r) × n),
/// columns in ordering positions. Cocircuit row `i` belongs to the element
/// at position `n−r+i`; circuit row `i` to the element at position `i`.
pub(crate) fn fundamental_signs(
    m: &Matroid,
    so: &StandardOrdering,
    characteristic: u64,
) -> Result<(Vec<Vec<i8>>, Vec<Vec<i8>>)> {
    let (n, r) = (m.n(), m.rank());
    let k = n - r;
    let ord = so.ordering();
    let b = so.basis();
    let coc: Vec<Vec<i8>> = if characteristic == 2 {
        (k..n)
            .map(|p| {
                let set = ord.to_positions(m.fundamental_cocircuit_unchecked(b, ord.element(p)));
                (0..n).map(|q| set.contains(q) as i8).collect()
            })
            .collect()
    } else {
        let rep = regular_representation(m)?;
        let ints = to_integers(&rep).ok_or_else(|| Error::NotRegular("non-integral representation".into()))?;
        let permuted: Vec<Vec<i64>> = ints
            .iter()
            .map(|row| (0..n).map(|p| row[ord.element(p)]).collect())
            .collect();
        let basis_pos: Vec<usize> = (k..n).collect();
        let sf = integer_standard_form(&permuted, &basis_pos)
            .ok_or_else(|| Error::NotRegular("representation is not unimodular".into()))?;
        sf.into_iter()
            .map(|row| row.into_iter().map(|x| x as i8).collect())
            .collect()
    };
    let circ: Vec<Vec<i8>> = (0..k)
        .map(|i| {
            let mut row = vec![0i8; n];
            row[i] = 1;
            for (j, crow) in coc.iter().enumerate() {
                let v = -crow[i];
                row[k + j] = if characteristic == 2 { v.abs() } else { v };
            }
            row
        })
        .collect();
    Ok((coc, circ))
}

/// Fundamental circuit and cocircuit incidence matrices for a standard
/// ordering. Returns `(circuit, cocircuit)`.
pub fn fundamental_matrices(
    m: &Matroid,
    so: &StandardOrdering,
    field: FieldTag,
) -> Result<(SignedIncidenceMatrix, SignedIncidenceMatrix)> {
    let field = field.checked()?;
    let (n, r) = (m.n(), m.rank());
    let (coc, circ) = fundamental_signs(m, so, field.characteristic())?;
    let ord = so.ordering();
    let b = so.basis();
    let circ_sets = (0..n - r)
        .map(|p| m.fundamental_circuit_unchecked(b, ord.element(p)))
        .collect();
    let coc_sets = (n - r..n)
        .map(|p| m.fundamental_cocircuit_unchecked(b, ord.element(p)))
        .collect();
    Ok((
        SignedIncidenceMatrix {
            kind: IncidenceKind::Circuit,
            scope: Scope::Fundamental(b),
            ordering: ord.clone(),
            sets: circ_sets,
            signs: circ,
            field,
        },
        SignedIncidenceMatrix {
            kind: IncidenceKind::Cocircuit,
            scope: Scope::Fundamental(b),
            ordering: ord.clone(),
            sets: coc_sets,
            signs: coc,
            field,
        },
    ))
}

/// One signed row per (co)circuit, in the matroid's (co)circuit order.
fn full_matrix(m: &Matroid, ord: &Ordering, field: FieldTag, kind: IncidenceKind) -> Result<SignedIncidenceMatrix> {
    let field = field.checked()?;
    let n = m.n();
    let targets: Vec<ElementSet> = match kind {
        IncidenceKind::Circuit => m.circuits()?.to_vec(),
        IncidenceKind::Cocircuit => m.cocircuits()?.to_vec(),
    };
    let index: HashMap<ElementSet, usize> = targets.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut rows: Vec<Option<Vec<i8>>> = vec![None; targets.len()];
    let mut missing = targets.len();
    let signed = field.characteristic() != 2;
    let ints = if signed {
        Some(to_integers(&regular_representation(m)?).ok_or_else(|| Error::NotRegular("non-integral representation".into()))?)
    } else {
        None
    };
    for &b in m.bases()? {
        if missing == 0 {
            break;
        }
        let bv = b.to_vec();
        let sf = match &ints {
            Some(rows) => Some(
                integer_standard_form(rows, &bv)
                    .ok_or_else(|| Error::NotRegular("representation is not unimodular".into()))?,
            ),
            None => None,
        };
        let mut fill = |set: ElementSet, row: &dyn Fn() -> Vec<i64>| {
            if let Some(&i) = index.get(&set) {
                if rows[i].is_none() {
                    let v = row();
                    rows[i] = Some((0..n).map(|p| v[ord.element(p)] as i8).collect());
                    missing -= 1;
                }
            }
        };
        match kind {
            IncidenceKind::Cocircuit => {
                for (i, &x) in bv.iter().enumerate() {
                    let set = m.fundamental_cocircuit_unchecked(b, x);
                    fill(set, &|| match &sf {
                        Some(s) => s[i].clone(),
                        None => (0..n).map(|e| set.contains(e) as i64).collect(),
                    });
                }
            }
            IncidenceKind::Circuit => {
                for e in (0..n).filter(|e| !b.contains(*e)) {
                    let set = m.fundamental_circuit_unchecked(b, e);
                    fill(set, &|| {
                        let mut v = vec![0i64; n];
                        v[e] = 1;
                        for (i, &x) in bv.iter().enumerate() {
                            v[x] = match &sf {
                                Some(s) => -s[i][e],
                                None => set.contains(x) as i64,
                            };
                        }
                        v
                    });
                }
            }
        }
    }
    if missing > 0 {
        return Err(Error::Dimension(format!("{missing} (co)circuits were not reached from any basis")));
    }
    Ok(SignedIncidenceMatrix {
        kind,
        scope: Scope::Full,
        ordering: ord.clone(),
        sets: targets,
        signs: rows.into_iter().map(Option::unwrap).collect(),
        field,
    })
}

pub fn full_cocircuit_matrix(m: &Matroid, ord: &Ordering, field: FieldTag) -> Result<SignedIncidenceMatrix> {
    full_matrix(m, ord, field, IncidenceKind::Cocircuit)
}

pub fn full_circuit_matrix(m: &Matroid, ord: &Ordering, field: FieldTag) -> Result<SignedIncidenceMatrix> {
    full_matrix(m, ord, field, IncidenceKind::Circuit)
}

/// Whether every row of `a` is orthogonal to every row of `b` over the
/// field of `a`.
pub fn orthogonal(a: &SignedIncidenceMatrix, b: &SignedIncidenceMatrix) -> bool {
    let p = a.field.characteristic() as i64;
    a.signs.iter().all(|x| {
        b.signs.iter().all(|y| {
            let dot: i64 = x.iter().zip(y).map(|(&u, &v)| u as i64 * v as i64).sum();
            if p == 0 {
                dot == 0
            } else {
                dot.rem_euclid(p) == 0
            }
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub circuit_fundamental: usize,
    pub circuit_full: usize,
    pub cocircuit_fundamental: usize,
    pub cocircuit_full: usize,
    pub n_minus_r: usize,
    pub r: usize,
    pub orthogonal: bool,
    pub pass: bool,
}

/// Ranks of the fundamental and full circuit/cocircuit matrices, which
/// should be (n−r, n−r, r, r), plus orthogonality of the full matrices.
pub fn check_rank_identities(m: &Matroid, so: &StandardOrdering, field: FieldTag) -> Result<RankReport> {
    let (fc, fcc) = fundamental_matrices(m, so, field)?;
    let c = full_circuit_matrix(m, so.ordering(), field)?;
    let cc = full_cocircuit_matrix(m, so.ordering(), field)?;
    let (n, r) = (m.n(), m.rank());
    let ranks = (fc.rank()?, c.rank()?, fcc.rank()?, cc.rank()?);
    let orth = orthogonal(&c, &cc) && orthogonal(&fc, &fcc);
    Ok(RankReport {
        circuit_fundamental: ranks.0,
        circuit_full: ranks.1,
        cocircuit_fundamental: ranks.2,
        cocircuit_full: ranks.3,
        n_minus_r: n - r,
        r,
        orthogonal: orth,
        pass: orth && ranks == (n - r, n - r, r, r),
    })
}

/// Whether the r×r column submatrix on `s` of a rank-r cocircuit matrix is
/// nonsingular. Rows are first thinned greedily to r independent ones.
pub fn check_basis_nonsingular(m: &Matroid, coc: &SignedIncidenceMatrix, s: ElementSet) -> Result<bool> {
    let r = m.rank();
    if s.len() != r {
        return Err(Error::BadSize {
            expected: r,
            actual: s.len(),
        });
    }
    let rows: Vec<Vec<i64>> = coc
        .signs
        .iter()
        .map(|row| row.iter().map(|&x| x as i64).collect())
        .collect();
    let all = integer_matrix(coc.field, coc.ncols(), &rows)?;
    let chosen = crate::with_matrix!(&all, |x| {
        let mut chosen: Vec<usize> = Vec::new();
        for i in 0..x.nrows() {
            let mut t = chosen.clone();
            t.push(i);
            if x.select_rows(&t).rank() == t.len() {
                chosen = t;
            }
        }
        chosen
    });
    if chosen.len() != r {
        return Err(Error::Dimension(format!(
            "cocircuit matrix has rank {} instead of {r}",
            chosen.len()
        )));
    }
    let cols: Vec<usize> = s.iter().map(|e| coc.ordering.position(e)).collect();
    Ok(crate::with_matrix!(&all, |x| x.select_rows(&chosen).column_rank(&cols) == r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Gf2;
    use crate::matroid::{gf2_matrix, k_subsets, q_matrix};
    use crate::ordering::StandardOrderings;

    fn u23_so() -> (Matroid, StandardOrdering) {
        let m = Matroid::uniform(2, 3).unwrap();
        let so = StandardOrdering::new(&m, Ordering::identity(3)).unwrap();
        (m, so)
    }

    #[test]
    fn u23_signed_fundamental_matrices() {
        let (m, so) = u23_so();
        let (c, cc) = fundamental_matrices(&m, &so, FieldTag::Rational).unwrap();
        // Up to a global sign per row (signings are unique up to scaling).
        let canon = |rows: &[Vec<i8>]| -> Vec<Vec<i8>> {
            rows.iter()
                .map(|r| {
                    let s = r.iter().copied().find(|&x| x != 0).unwrap_or(1);
                    r.iter().map(|&x| x * s).collect()
                })
                .collect()
        };
        assert_eq!(cc.signs.len(), 2);
        assert_eq!(c.signs.len(), 1);
        // Identity block on the basis columns.
        assert_eq!(cc.signs[0][1], 1);
        assert_eq!(cc.signs[1][2], 1);
        assert_eq!(cc.signs[0][2], 0);
        assert_eq!(cc.signs[1][1], 0);
        // First column entries have opposite signs relative to the identity.
        assert_eq!(cc.signs[0][0] * cc.signs[1][0], -1);
        assert!(orthogonal(&c, &cc));
        let cr = canon(&c.signs);
        assert_eq!(cr[0][0], 1);
        assert_eq!(cr[0][1].abs(), 1);
    }

    #[test]
    fn gf2_matrices_are_unsigned() {
        let m = Matroid::from_matrix(
            gf2_matrix(&[vec![1, 0, 0, 1, 1], vec![0, 1, 0, 1, 0], vec![0, 0, 1, 0, 1]]).unwrap(),
        )
        .unwrap();
        let so = StandardOrderings::new(&m).unwrap().decode(0).unwrap();
        let (c, cc) = fundamental_matrices(&m, &so, FieldTag::Gf2).unwrap();
        assert!(c.signs.iter().chain(&cc.signs).flatten().all(|&x| x == 0 || x == 1));
        for (row, set) in cc.signs.iter().zip(&cc.sets) {
            let supp: ElementSet = (0..5).filter(|&p| row[p] != 0).map(|p| so.ordering().element(p)).collect();
            assert_eq!(supp, *set);
        }
        assert!(orthogonal(&c, &cc));
    }

    #[test]
    fn free_matroid_matrices() {
        let m = Matroid::uniform(3, 3).unwrap();
        let so = StandardOrdering::new(&m, Ordering::identity(3)).unwrap();
        let (c, cc) = fundamental_matrices(&m, &so, FieldTag::Rational).unwrap();
        assert_eq!(c.nrows(), 0);
        assert_eq!(cc.signs, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let rep = check_rank_identities(&m, &so, FieldTag::Rational).unwrap();
        assert_eq!(rep.circuit_full, 0);
        assert!(rep.pass);
    }

    #[test]
    fn full_cocircuit_matrix_u23_and_u12() {
        let (m, so) = u23_so();
        let cc = full_cocircuit_matrix(&m, so.ordering(), FieldTag::Rational).unwrap();
        assert_eq!(cc.nrows(), 3);
        assert_eq!(cc.rank().unwrap(), 2);
        let rep = check_rank_identities(&m, &so, FieldTag::Rational).unwrap();
        assert_eq!(
            (rep.circuit_fundamental, rep.circuit_full, rep.cocircuit_fundamental, rep.cocircuit_full),
            (1, 1, 2, 2)
        );
        assert!(rep.pass);
        let u12 = Matroid::uniform(1, 2).unwrap();
        let cc = full_cocircuit_matrix(&u12, &Ordering::identity(2), FieldTag::Rational).unwrap();
        assert_eq!(cc.nrows(), 1);
        assert_eq!(cc.signs[0].iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1, 1]);
        assert_eq!(cc.rank().unwrap(), 1);
    }

    #[test]
    fn nonsingular_iff_basis() {
        let (m, so) = u23_so();
        let (_, cc) = fundamental_matrices(&m, &so, FieldTag::Rational).unwrap();
        assert!(check_basis_nonsingular(&m, &cc, ElementSet(0b110)).unwrap());
        assert!(matches!(
            check_basis_nonsingular(&m, &cc, ElementSet(0b1)),
            Err(Error::BadSize { .. })
        ));
        let with_loop = Matroid::from_matrix(q_matrix(&[vec![1, 0, 1], vec![0, 0, 1]]).unwrap()).unwrap();
        let so = StandardOrderings::new(&with_loop).unwrap().decode(0).unwrap();
        let (_, cc) = fundamental_matrices(&with_loop, &so, FieldTag::Rational).unwrap();
        for s in k_subsets(3, 2) {
            assert_eq!(check_basis_nonsingular(&with_loop, &cc, s).unwrap(), with_loop.is_basis(s));
        }
        assert!(!check_basis_nonsingular(&with_loop, &cc, ElementSet(0b011)).unwrap());
    }

    #[test]
    fn non_regular_rejected_over_odd_characteristic() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert!(matches!(regular_representation(&u24), Err(Error::NotRegular(_))));
        let so = StandardOrderings::new(&u24).unwrap().decode(0).unwrap();
        assert!(fundamental_matrices(&u24, &so, FieldTag::Gf2).is_ok());
        assert!(fundamental_matrices(&u24, &so, FieldTag::Rational).is_err());
        // The Fano plane is binary but not regular.
        let fano = Matroid::from_matrix(
            gf2_matrix(&[
                vec![1, 0, 0, 1, 1, 0, 1],
                vec![0, 1, 0, 1, 0, 1, 1],
                vec![0, 0, 1, 0, 1, 1, 1],
            ])
            .unwrap(),
        )
        .unwrap();
        assert!(matches!(regular_representation(&fano), Err(Error::NotRegular(_))));
    }

    #[test]
    fn camion_signs_non_tu_binary_support() {
        // The 0/1 lift of M(K4) is not TU; Camion's signing repairs it.
        let k4 = Matroid::from_matrix(
            Matrix::from_i64(
                Gf2,
                &[
                    vec![1, 0, 0, 1, 1, 0],
                    vec![0, 1, 0, 1, 0, 1],
                    vec![0, 0, 1, 0, 1, 1],
                ],
            )
            .unwrap(),
        )
        .unwrap();
        let rep = regular_representation(&k4).unwrap();
        assert!(is_totally_unimodular(&rep, None, DEFAULT_TU_CAP).unwrap());
        assert!(Matroid::from_matrix(rep).unwrap().same_bases(&k4).unwrap());
    }

    #[test]
    fn custom_labels_do_not_block_signing() {
        let labels: Vec<String> = ["a1", "a2", "a3"].iter().map(|s| s.to_string()).collect();
        let tri = Matroid::uniform_with_labels(2, labels).unwrap();
        let rep = regular_representation(&tri).unwrap();
        assert_eq!(rep.nrows(), 2);
    }
}
