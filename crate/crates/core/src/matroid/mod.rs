//! Matroids over a labelled ground set with column, graphic, uniform and
//! circuit-list backends.

mod elements;
pub mod io;
mod minors;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

pub use elements::{k_subsets, ElementSet, Elements};
pub use minors::{glue_representations, parallel_connection, parallel_connection_all};

use crate::error::{Error, Result};
use crate::linalg::{AnyMatrix, FieldTag, Gf2, Gf2Echelon, Matrix, Rationals};
use crate::with_matrix;

/// Ground sets above this size are refused by the enumeration routines.
pub const DEFAULT_ENUM_CAP: usize = 20;
/// Hard limit imposed by the bitmask representation of element sets.
pub const MAX_ELEMENTS: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub enum Backend {
    /// Columns of a matrix, one per element.
    Column(AnyMatrix),
    /// One edge per element; endpoints are vertex names.
    Graphic(Vec<(String, String)>),
    Uniform { rank: usize },
    /// Explicit list of circuits (an inclusion-free family).
    CircuitList(Vec<ElementSet>),
}

impl Backend {
    pub fn kind(&self) -> &'static str {
        match self {
            Backend::Column(_) => "column",
            Backend::Graphic(_) => "graphic",
            Backend::Uniform { .. } => "uniform",
            Backend::CircuitList(_) => "circuits",
        }
    }
}

enum Oracle {
    Gf2Packed(Vec<Vec<u64>>, usize),
    Matrix,
    Graph(usize, Vec<(usize, usize)>),
    Uniform,
    Circuits,
}

struct Inner {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    backend: Backend,
    oracle: Oracle,
    rank: usize,
    cap: usize,
    bases: OnceLock<Vec<ElementSet>>,
    basis_set: OnceLock<HashSet<ElementSet>>,
    circuits: OnceLock<Vec<ElementSet>>,
    cocircuits: OnceLock<Vec<ElementSet>>,
    regular: OnceLock<Result<Matrix<Rationals>>>,
}

/// An immutable matroid. Cloning is cheap; lazily computed data (bases,
/// circuits, cocircuits, a regular representation) is cached and shared.
#[derive(Clone)]
pub struct Matroid(Arc<Inner>);

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("kind", &self.0.backend.kind())
            .field("n", &self.n())
            .field("rank", &self.rank())
            .field("labels", &self.0.labels)
            .finish()
    }
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

fn union_find_rank(nv: usize, edges: &[(usize, usize)], set: ElementSet) -> usize {
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut rank = 0;
    for e in set {
        let (u, v) = edges[e];
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            rank += 1;
        }
    }
    rank
}

fn sort_sets(v: &mut [ElementSet]) {
    v.sort_by_key(|s| (s.len(), s.to_vec()));
}

impl Matroid {
    fn build(labels: Vec<String>, backend: Backend) -> Result<Matroid> {
        let n = labels.len();
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge(n));
        }
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabels(l.clone()));
            }
        }
        let oracle = match &backend {
            Backend::Column(m) => {
                if m.ncols() != n {
                    return Err(Error::Dimension(format!(
                        "{} columns for {n} labels",
                        m.ncols()
                    )));
                }
                match m {
                    AnyMatrix::Gf2(g) => {
                        let cols = (0..n)
                            .map(|j| {
                                let mut w = vec![0u64; g.nrows().div_ceil(64).max(1)];
                                for i in 0..g.nrows() {
                                    if *g.get(i, j) {
                                        w[i / 64] |= 1 << (i % 64);
                                    }
                                }
                                w
                            })
                            .collect();
                        Oracle::Gf2Packed(cols, g.nrows())
                    }
                    _ => Oracle::Matrix,
                }
            }
            Backend::Graphic(edges) => {
                if edges.len() != n {
                    return Err(Error::Dimension(format!(
                        "{} edges for {n} labels",
                        edges.len()
                    )));
                }
                let mut vid: HashMap<&str, usize> = HashMap::new();
                let mut es = Vec::with_capacity(n);
                for (u, v) in edges {
                    let k = vid.len();
                    let a = *vid.entry(u.as_str()).or_insert(k);
                    let k = vid.len();
                    let b = *vid.entry(v.as_str()).or_insert(k);
                    es.push((a, b));
                }
                Oracle::Graph(vid.len(), es)
            }
            Backend::Uniform { rank } => {
                if *rank > n {
                    return Err(Error::BadRank { rank: *rank, n });
                }
                Oracle::Uniform
            }
            Backend::CircuitList(cs) => {
                let full = ElementSet::full(n);
                for c in cs {
                    if c.is_empty() || !c.is_subset(full) {
                        return Err(Error::Parse(format!("bad circuit {c:?}")));
                    }
                }
                for (i, a) in cs.iter().enumerate() {
                    for (j, b) in cs.iter().enumerate() {
                        if i != j && a.is_subset(*b) {
                            return Err(Error::Parse(format!(
                                "circuit {a:?} is contained in {b:?}"
                            )));
                        }
                    }
                }
                Oracle::Circuits
            }
        };
        let mut inner = Inner {
            labels,
            index,
            backend,
            oracle,
            rank: 0,
            cap: DEFAULT_ENUM_CAP,
            bases: OnceLock::new(),
            basis_set: OnceLock::new(),
            circuits: OnceLock::new(),
            cocircuits: OnceLock::new(),
            regular: OnceLock::new(),
        };
        inner.rank = rank_in(&inner, ElementSet::full(n));
        Ok(Matroid(Arc::new(inner)))
    }

    /// Column matroid of a matrix; column labels default to `e1..en`.
    pub fn from_matrix(m: impl Into<AnyMatrix>) -> Result<Matroid> {
        let m = m.into();
        let labels = m
            .col_labels()
            .map(<[String]>::to_vec)
            .unwrap_or_else(|| default_labels(m.ncols()));
        Matroid::from_matrix_with_labels(m, labels)
    }

    pub fn from_matrix_with_labels(m: impl Into<AnyMatrix>, labels: Vec<String>) -> Result<Matroid> {
        let m = m.into();
        let m = m.with_col_labels(labels.clone())?;
        Matroid::build(labels, Backend::Column(m))
    }

    /// U(r, n) on labels `e1..en`.
    pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
        Matroid::uniform_with_labels(r, default_labels(n))
    }

    pub fn uniform_with_labels(r: usize, labels: Vec<String>) -> Result<Matroid> {
        Matroid::build(labels, Backend::Uniform { rank: r })
    }

    /// Cycle matroid of a multigraph; edges are labelled `e1..em`.
    pub fn from_graph(edges: Vec<(String, String)>) -> Result<Matroid> {
        let labels = default_labels(edges.len());
        Matroid::build(labels, Backend::Graphic(edges))
    }

    pub fn from_graph_with_labels(edges: Vec<(String, String)>, labels: Vec<String>) -> Result<Matroid> {
        Matroid::build(labels, Backend::Graphic(edges))
    }

    /// Matroid given by its circuits.
    pub fn from_circuits(labels: Vec<String>, circuits: Vec<ElementSet>) -> Result<Matroid> {
        let mut cs = circuits;
        sort_sets(&mut cs);
        cs.dedup();
        Matroid::build(labels, Backend::CircuitList(cs))
    }

    /// The same matroid with a different enumeration cap.
    pub fn with_enum_cap(&self, cap: usize) -> Matroid {
        let mut m = Matroid::build(self.0.labels.clone(), self.0.backend.clone())
            .expect("already validated");
        Arc::get_mut(&mut m.0).expect("fresh").cap = cap;
        m
    }

    /// The same matroid with new labels (positions unchanged).
    pub fn relabel(&self, labels: Vec<String>) -> Result<Matroid> {
        if labels.len() != self.n() {
            return Err(Error::BadSize {
                expected: self.n(),
                actual: labels.len(),
            });
        }
        let backend = match &self.0.backend {
            Backend::Column(m) => Backend::Column(m.clone().with_col_labels(labels.clone())?),
            b => b.clone(),
        };
        Matroid::build(labels, backend)
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }
    pub fn n(&self) -> usize {
        self.0.labels.len()
    }
    pub fn rank(&self) -> usize {
        self.0.rank
    }
    pub fn backend(&self) -> &Backend {
        &self.0.backend
    }
    pub fn enum_cap(&self) -> usize {
        self.0.cap
    }
    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.n())
    }

    /// Representation matrix, if the backend is a column matroid.
    pub fn matrix(&self) -> Option<&AnyMatrix> {
        match &self.0.backend {
            Backend::Column(m) => Some(m),
            _ => None,
        }
    }

    pub fn field_tag(&self) -> Option<FieldTag> {
        self.matrix().map(AnyMatrix::tag)
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.0
            .index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElementSet> {
        labels.iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    pub fn display_set(&self, s: ElementSet) -> String {
        s.display(&self.0.labels)
    }

    pub fn rank_of(&self, s: ElementSet) -> usize {
        rank_in(&self.0, s)
    }

    pub fn is_independent(&self, s: ElementSet) -> bool {
        self.rank_of(s) == s.len()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rank_of(ElementSet::singleton(e)) == 0
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.rank_of(self.ground().without(e)) < self.rank()
    }

    /// Whether `s` is a basis. Uses the cached basis set when the ground set
    /// is within the enumeration cap, the rank oracle otherwise.
    pub fn is_basis(&self, s: ElementSet) -> bool {
        if s.len() != self.rank() || !s.is_subset(self.ground()) {
            return false;
        }
        match self.basis_set() {
            Ok(set) => set.contains(&s),
            Err(_) => self.is_independent(s),
        }
    }

    /// Greedy basis, scanning elements in index order.
    pub fn first_basis(&self) -> ElementSet {
        let mut b = ElementSet::EMPTY;
        for e in 0..self.n() {
            if self.is_independent(b.with(e)) {
                b.insert(e);
            }
        }
        b
    }

    fn check_cap(&self) -> Result<()> {
        if self.n() > self.0.cap {
            return Err(Error::Overbudget(format!(
                "ground set of size {} exceeds the enumeration cap {}",
                self.n(),
                self.0.cap
            )));
        }
        Ok(())
    }

    /// All bases, in lexicographic order of their sorted element indices.
    pub fn bases(&self) -> Result<&[ElementSet]> {
        self.check_cap()?;
        Ok(self.0.bases.get_or_init(|| {
            let mut v: Vec<ElementSet> = match self.0.backend {
                Backend::Uniform { .. } => k_subsets(self.n(), self.rank()).collect(),
                _ => k_subsets(self.n(), self.rank())
                    .filter(|s| self.is_independent(*s))
                    .collect(),
            };
            v.sort_by_key(|s| s.to_vec());
            v
        }))
    }

    pub fn basis_set(&self) -> Result<&HashSet<ElementSet>> {
        let bases = self.bases()?;
        Ok(self.0.basis_set.get_or_init(|| bases.iter().copied().collect()))
    }

    pub fn basis_count(&self) -> Result<usize> {
        Ok(self.bases()?.len())
    }

    fn require_basis(&self, b: ElementSet) -> Result<()> {
        if self.is_basis(b) {
            Ok(())
        } else {
            Err(Error::NotABasis(self.display_set(b)))
        }
    }

    /// ci(B, e): the unique circuit inside B ∪ {e}.
    pub fn fundamental_circuit(&self, b: ElementSet, e: usize) -> Result<ElementSet> {
        self.require_basis(b)?;
        if b.contains(e) {
            return Err(Error::NotCobasisElement(self.0.labels[e].clone()));
        }
        Ok(self.fundamental_circuit_unchecked(b, e))
    }

    pub(crate) fn fundamental_circuit_unchecked(&self, b: ElementSet, e: usize) -> ElementSet {
        let mut c = ElementSet::singleton(e);
        for x in b {
            if self.is_basis(b.without(x).with(e)) {
                c.insert(x);
            }
        }
        c
    }

    /// coc(B, b): the unique cocircuit inside (E \ B) ∪ {b}.
    pub fn fundamental_cocircuit(&self, b: ElementSet, x: usize) -> Result<ElementSet> {
        self.require_basis(b)?;
        if !b.contains(x) {
            return Err(Error::NotBasisElement(self.0.labels[x].clone()));
        }
        Ok(self.fundamental_cocircuit_unchecked(b, x))
    }

    pub(crate) fn fundamental_cocircuit_unchecked(&self, b: ElementSet, x: usize) -> ElementSet {
        let mut c = ElementSet::singleton(x);
        for e in self.ground().difference(b) {
            if self.is_basis(b.without(x).with(e)) {
                c.insert(e);
            }
        }
        c
    }

    /// All circuits, sorted by size then lexicographically.
    pub fn circuits(&self) -> Result<&[ElementSet]> {
        self.check_cap()?;
        if let Backend::CircuitList(cs) = &self.0.backend {
            return Ok(cs);
        }
        let bases = self.bases()?;
        Ok(self.0.circuits.get_or_init(|| {
            let mut v: Vec<ElementSet> = match self.0.backend {
                Backend::Uniform { rank } if rank < self.n() => {
                    k_subsets(self.n(), rank + 1).collect()
                }
                Backend::Uniform { .. } => Vec::new(),
                _ => {
                    let mut set = HashSet::new();
                    for &b in bases {
                        for e in self.ground().difference(b) {
                            set.insert(self.fundamental_circuit_unchecked(b, e));
                        }
                    }
                    set.into_iter().collect()
                }
            };
            sort_sets(&mut v);
            v
        }))
    }

    /// All cocircuits, collected as fundamental cocircuits over all bases
    /// (that is, as circuits of the dual).
    pub fn cocircuits(&self) -> Result<&[ElementSet]> {
        let bases = self.bases()?;
        Ok(self.0.cocircuits.get_or_init(|| {
            let mut set = HashSet::new();
            for &b in bases {
                for x in b {
                    set.insert(self.fundamental_cocircuit_unchecked(b, x));
                }
            }
            let mut v: Vec<ElementSet> = set.into_iter().collect();
            sort_sets(&mut v);
            v
        }))
    }

    /// Cocircuits as the inclusion-minimal sets meeting every basis, found
    /// through the rank oracle alone: S meets every basis iff r(E \ S) < r.
    pub fn cocircuits_by_transversals(&self) -> Result<Vec<ElementSet>> {
        self.check_cap()?;
        let e = self.ground();
        let r = self.rank();
        let meets_all = |s: ElementSet| self.rank_of(e.difference(s)) < r;
        let mut out = Vec::new();
        for k in 1..=self.n() {
            for s in k_subsets(self.n(), k) {
                if meets_all(s) && s.iter().all(|x| !meets_all(s.without(x))) {
                    out.push(s);
                }
            }
        }
        sort_sets(&mut out);
        Ok(out)
    }

    /// Whether both matroids have the same labels (as sets) and the same bases.
    pub fn same_bases(&self, other: &Matroid) -> Result<bool> {
        if self.n() != other.n() || self.rank() != other.rank() {
            return Ok(false);
        }
        let map: Vec<usize> = match self
            .labels()
            .iter()
            .map(|l| other.index_of(l))
            .collect::<Result<Vec<_>>>()
        {
            Ok(m) => m,
            Err(_) => return Ok(false),
        };
        let theirs = other.basis_set()?;
        let mine = self.bases()?;
        Ok(mine.len() == theirs.len()
            && mine
                .iter()
                .all(|b| theirs.contains(&b.iter().map(|i| map[i]).collect())))
    }

    /// Equivalence classes of "some circuit contains both"; loops and
    /// coloops form singleton classes.
    pub fn connected_components(&self) -> Result<Vec<ElementSet>> {
        let n = self.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for c in self.circuits()? {
            let first = c.first().expect("nonempty circuit");
            for x in c.iter().skip(1) {
                let (a, b) = (find(&mut parent, first), find(&mut parent, x));
                parent[a] = b;
            }
        }
        let mut blocks: HashMap<usize, ElementSet> = HashMap::new();
        for x in 0..n {
            let r = find(&mut parent, x);
            blocks.entry(r).or_default().insert(x);
        }
        let mut v: Vec<ElementSet> = blocks.into_values().collect();
        v.sort_by_key(|s| s.first());
        Ok(v)
    }

    pub fn is_connected(&self) -> Result<bool> {
        Ok(self.connected_components()?.len() <= 1)
    }

    /// Restriction to a subset of elements, keeping their relative order.
    pub fn restrict(&self, s: ElementSet) -> Result<Matroid> {
        let mut m = self.clone();
        for (removed, x) in self.ground().difference(s).iter().enumerate() {
            m = m.delete(x - removed)?;
        }
        Ok(m)
    }

    pub(crate) fn regular_cache(&self) -> &OnceLock<Result<Matrix<Rationals>>> {
        &self.0.regular
    }
}

fn rank_in(inner: &Inner, s: ElementSet) -> usize {
    match &inner.oracle {
        Oracle::Gf2Packed(cols, nrows) => {
            let mut e = Gf2Echelon::new(*nrows);
            let mut r = 0;
            for j in s {
                if r == *nrows {
                    break;
                }
                if e.insert_packed(cols[j].clone()) {
                    r += 1;
                }
            }
            r
        }
        Oracle::Matrix => {
            let Backend::Column(m) = &inner.backend else {
                unreachable!()
            };
            let idx = s.to_vec();
            with_matrix!(m, |x| x.column_rank(&idx))
        }
        Oracle::Graph(nv, edges) => union_find_rank(*nv, edges, s),
        Oracle::Uniform => {
            let Backend::Uniform { rank } = inner.backend else {
                unreachable!()
            };
            s.len().min(rank)
        }
        Oracle::Circuits => {
            let Backend::CircuitList(cs) = &inner.backend else {
                unreachable!()
            };
            let mut indep = ElementSet::EMPTY;
            for x in s {
                let t = indep.with(x);
                if !cs.iter().any(|c| c.is_subset(t)) {
                    indep = t;
                }
            }
            indep.len()
        }
    }
}

/// GF(2) helper used by tests and fixtures.
pub fn gf2_matrix(rows: &[Vec<i64>]) -> Result<Matrix<Gf2>> {
    Matrix::from_i64(Gf2, rows)
}

/// Rational helper used by tests and fixtures.
pub fn q_matrix(rows: &[Vec<i64>]) -> Result<Matrix<Rationals>> {
    Matrix::from_i64(Rationals, rows)
}

#[allow(dead_code)]
fn assert_send_sync() {
    fn is<T: Send + Sync>() {}
    is::<Matroid>();
}
