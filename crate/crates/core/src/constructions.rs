//! Theta and phi matroids with their labellings, and named fixtures.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{is_totally_unimodular, Matrix, Rationals, DEFAULT_TU_CAP};
use crate::matroid::{gf2_matrix, glue_representations, parallel_connection_all, Matroid};
use crate::ordering::{Ordering, StandardOrdering};

/// `[I | 1]`, a totally unimodular representation of `U(n−1, n)`.
fn circuit_rep(n: usize) -> Result<Matrix<Rationals>> {
    let rows: Vec<Vec<i64>> = (0..n - 1)
        .map(|i| (0..n).map(|j| i64::from(j == i || j == n - 1)).collect())
        .collect();
    Matrix::from_i64(Rationals, &rows)
}

fn check_sizes(sizes: &[usize]) -> Result<()> {
    if sizes.is_empty() {
        return Err(Error::BadParams("at least one component is needed".into()));
    }
    if let Some(n) = sizes.iter().find(|&&n| n < 2) {
        return Err(Error::BadParams(format!("component size {n} < 2")));
    }
    Ok(())
}

fn smallest(labels: &[String]) -> String {
    labels.iter().min().expect("nonempty").clone()
}

fn sorted(mut v: Vec<String>) -> Vec<String> {
    v.sort();
    v
}

/// Component `i` as a labelled circuit, its matrix, and its labels.
struct Part {
    labels: Vec<String>,
    rep: Matrix<Rationals>,
}

impl Part {
    fn new(labels: Vec<String>) -> Result<Part> {
        let rep = circuit_rep(labels.len())?;
        Ok(Part { labels, rep })
    }

    fn matroid(&self) -> Result<Matroid> {
        Matroid::uniform_with_labels(self.labels.len() - 1, self.labels.clone())
    }
}

/// Glues the parts along the given basepoints and cross-checks the result
/// against the circuit-level parallel connection.
fn assemble(parts: &[Part], basepoints: &[String]) -> Result<Matroid> {
    let mut rep = parts[0].rep.clone();
    let mut labels = parts[0].labels.clone();
    for (part, p) in parts[1..].iter().zip(basepoints) {
        let pa = labels.iter().position(|l| l == p).expect("basepoint present");
        let pb = part.labels.iter().position(|l| l == p).expect("basepoint present");
        rep = glue_representations(&rep, pa, &part.rep, pb)?;
        labels.extend(part.labels.iter().filter(|l| *l != p).cloned());
    }
    if !is_totally_unimodular(&rep, None, DEFAULT_TU_CAP)? {
        return Err(Error::NotRegular("glued representation is not totally unimodular".into()));
    }
    let m = Matroid::from_matrix_with_labels(rep, labels)?;
    let ms: Vec<Matroid> = parts.iter().map(Part::matroid).collect::<Result<_>>()?;
    let reference = parallel_connection_all(&ms, basepoints)?;
    if !m.same_bases(&reference)? {
        return Err(Error::BadParams("glued representation disagrees with the parallel connection".into()));
    }
    Ok(m)
}

/// `P(M_1, …, M_t; p)` for `M_i = U(n_i − 1, n_i)` sharing the single
/// basepoint `p`, with a theta labelling. The sizes are sorted first.
/// Elements are `p` and `c{i}_{j}` (component `i`, 1-based).
pub fn theta_matroid(sizes: &[usize]) -> Result<(Matroid, StandardOrdering)> {
    check_sizes(sizes)?;
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable();
    let t = sizes.len();
    let p = "p".to_string();
    let parts: Vec<Part> = sizes
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let mut labels = vec![p.clone()];
            labels.extend((1..n).map(|j| format!("c{}_{j}", i + 1)));
            Part::new(labels)
        })
        .collect::<Result<_>>()?;
    let m = assemble(&parts, &vec![p.clone(); t - 1])?;

    // e_1 = p, e_{i+1} from M_i; the rest fill e_n downward, M_1 first.
    let mut order = vec![p.clone()];
    let mut rest = Vec::new();
    for part in &parts {
        let others: Vec<String> = part.labels.iter().filter(|l| **l != p).cloned().collect();
        let e = smallest(&others);
        rest.extend(sorted(others.into_iter().filter(|l| *l != e).collect()));
        order.push(e);
    }
    if t == 1 {
        // No connection: U(n−1, n) in its natural labelling.
        let order: Vec<String> = parts[0].labels.clone();
        let so = StandardOrdering::new(&m, Ordering::from_labels(&m, &order)?)?;
        return Ok((m, so));
    }
    order.extend(rest.into_iter().rev());
    let so = StandardOrdering::from_labels(&m, &order)?;
    Ok((m, so))
}

/// The chain `P(M_1, …, M_t; p_2, …, p_t)` with `M_i ∩ M_{i+1} = {p_{i+1}}`,
/// with a phi labelling. Components keep the given order. Elements are
/// `p2..pt` and `c{i}_{j}`.
pub fn phi_matroid(sizes: &[usize]) -> Result<(Matroid, StandardOrdering)> {
    check_sizes(sizes)?;
    let t = sizes.len();
    let basepoints: Vec<String> = (2..=t).map(|i| format!("p{i}")).collect();
    let mut parts = Vec::with_capacity(t);
    let mut own: Vec<Vec<String>> = Vec::with_capacity(t);
    for (i, &n) in sizes.iter().enumerate() {
        let idx = i + 1;
        let mut labels = Vec::new();
        if idx > 1 {
            labels.push(format!("p{idx}"));
        }
        let shared = usize::from(idx > 1) + usize::from(idx < t);
        if n < shared {
            return Err(Error::BadParams(format!("component {idx} of size {n} cannot hold {shared} basepoints")));
        }
        let others: Vec<String> = (1..=n - shared).map(|j| format!("c{idx}_{j}")).collect();
        labels.extend(others.iter().cloned());
        if idx < t {
            labels.push(format!("p{}", idx + 1));
        }
        own.push(others);
        parts.push(Part::new(labels)?);
    }
    let m = assemble(&parts, &basepoints)?;

    // e_i = p_{t+1−i} for i < t, e_t from M_1, then M_t, …, M_1.
    let mut order: Vec<String> = (1..t).map(|i| format!("p{}", t + 1 - i)).collect();
    let et = smallest(&own[0]);
    order.push(et.clone());
    for i in (0..t).rev() {
        order.extend(sorted(own[i].iter().filter(|l| **l != et).cloned().collect()));
    }
    let so = StandardOrdering::from_labels(&m, &order)?;
    Ok((m, so))
}

/// Parses `3,3,4`.
pub fn parse_sizes(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad component size `{x}`")))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Named {
    R10,
    DualK33,
    K33,
    K4,
}

impl Named {
    pub const ALL: [Named; 4] = [Named::R10, Named::DualK33, Named::K33, Named::K4];
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Named::R10 => "R10",
            Named::DualK33 => "DualK33",
            Named::K33 => "K33",
            Named::K4 => "K4",
        })
    }
}

impl FromStr for Named {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Named::ALL
            .into_iter()
            .find(|n| n.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

pub const R10_MATRIX: [[i64; 10]; 5] = [
    [1, 0, 0, 0, 0, 1, 1, 0, 0, 1],
    [0, 1, 0, 0, 0, 1, 1, 1, 0, 0],
    [0, 0, 1, 0, 0, 0, 1, 1, 1, 0],
    [0, 0, 0, 1, 0, 0, 0, 1, 1, 1],
    [0, 0, 0, 0, 1, 1, 0, 0, 1, 1],
];

/// Column-reordered representation of `M*(K_{3,3})`; the column order is a
/// standard ordering.
pub const DUAL_K33_MATRIX: [[i64; 9]; 4] = [
    [0, 0, 1, 0, 1, 0, 0, 1, 1],
    [0, 0, 0, 0, 1, 1, 1, 0, 1],
    [1, 1, 1, 0, 0, 0, 0, 0, 1],
    [0, 1, 0, 1, 0, 0, 1, 0, 1],
];

/// Vertex-edge incidence matrix of `K_{3,3}`.
pub const K33_MATRIX: [[i64; 9]; 6] = [
    [1, 1, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 1, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 1, 1],
    [0, 0, 1, 0, 0, 1, 0, 0, 1],
    [0, 1, 0, 0, 1, 0, 0, 1, 0],
    [1, 0, 0, 1, 0, 0, 1, 0, 0],
];

/// The `L(M)` listed for `M*(K_{3,3})` under its column ordering.
pub const DUAL_K33_LOWER_IDEAL: [&str; 20] = [
    "1", "x1", "x2", "x3", "x4", "x5", "x1^2", "x1*x2", "x1*x4", "x2^2", "x2*x3", "x2*x5", "x3*x4", "x3*x5",
    "x4*x5", "x1^2*x2", "x1^2*x4", "x2^2*x3", "x2^2*x5", "x3*x4*x5",
];

fn rows<const C: usize>(m: &[[i64; C]]) -> Vec<Vec<i64>> {
    m.iter().map(|r| r.to_vec()).collect()
}

/// A named fixture, with its distinguished ordering when it has one.
pub fn named(name: Named) -> Result<(Matroid, Option<StandardOrdering>)> {
    Ok(match name {
        Named::R10 => (Matroid::from_matrix(gf2_matrix(&rows(&R10_MATRIX))?)?, None),
        Named::DualK33 => {
            let m = Matroid::from_matrix(gf2_matrix(&rows(&DUAL_K33_MATRIX))?)?;
            let so = StandardOrdering::new(&m, Ordering::identity(m.n()))?;
            (m, Some(so))
        }
        // The incidence matrix has rank 5 over GF(2) (each column has two ones).
        Named::K33 => (Matroid::from_matrix(gf2_matrix(&rows(&K33_MATRIX))?)?, None),
        Named::K4 => {
            let edges = [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")];
            let m = Matroid::from_graph(edges.iter().map(|(x, y)| (x.to_string(), y.to_string())).collect())?;
            (m, None)
        }
    })
}

pub fn named_by_str(name: &str) -> Result<(Matroid, Option<StandardOrdering>)> {
    named(name.parse()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nbc::{has_cocircuit_pair, nbc_check, CheckOptions};
    use crate::linalg::FieldTag;
    use crate::matroid::ElementSet;

    fn label_set(m: &Matroid, labels: &[&str]) -> ElementSet {
        labels.iter().map(|l| m.index_of(l).unwrap()).collect()
    }

    #[test]
    fn single_component_is_the_circuit() {
        for n in 2..=6 {
            let (m, so) = theta_matroid(&[n]).unwrap();
            assert!(m.same_bases(&Matroid::uniform_with_labels(n - 1, m.labels().to_vec()).unwrap()).unwrap());
            assert_eq!(so.ordering().elements()[0], m.index_of("p").unwrap());
            let (phi, _) = phi_matroid(&[n]).unwrap();
            assert_eq!((phi.n(), phi.rank()), (n, n - 1));
        }
    }

    #[test]
    fn parallel_pairs_collapse_to_a_parallel_class() {
        let (m, _) = theta_matroid(&[2, 2, 2]).unwrap();
        assert_eq!((m.n(), m.rank()), (4, 1));
        // Every pair is a circuit: U(1,4).
        assert_eq!(m.circuits().unwrap().len(), 6);
        assert!(m.circuits().unwrap().iter().all(|c| c.len() == 2));
    }

    #[test]
    fn two_triangles_follow_the_labelling() {
        let (m, so) = theta_matroid(&[3, 3]).unwrap();
        assert_eq!((m.n(), m.rank()), (5, 3));
        assert_eq!(so.ordering().labels(&m), vec!["p", "c1_1", "c2_1", "c2_2", "c1_2"]);
        let n = m.n();
        // e_n lies in M_1 and pairs with e_2 into a cocircuit.
        let en = m.labels()[so.ordering().element(n - 1)].as_str();
        let pair = label_set(&m, &[en, "c1_1"]);
        assert!(m.cocircuits().unwrap().contains(&pair));
        assert!(has_cocircuit_pair(&m, &so).unwrap());
    }

    #[test]
    fn sizes_are_sorted_for_theta_only() {
        let (a, _) = theta_matroid(&[4, 2, 3]).unwrap();
        let (b, _) = theta_matroid(&[2, 3, 4]).unwrap();
        assert!(a.same_bases(&b).unwrap());
        let (_, so) = phi_matroid(&[3, 2]).unwrap();
        assert_eq!(so.len(), 4);
    }

    #[test]
    fn phi_chain_of_triangles() {
        let (m, so) = phi_matroid(&[3, 3, 3]).unwrap();
        assert_eq!((m.n(), m.rank()), (7, 4));
        assert_eq!(so.ordering().labels(&m), vec!["p3", "p2", "c1_1", "c3_1", "c3_2", "c2_1", "c1_2"]);
        // Each triangle is a circuit, and so are the unions around a basepoint.
        let circuits = m.circuits().unwrap();
        assert_eq!(circuits.len(), 6);
        assert!(circuits.contains(&label_set(&m, &["c1_1", "c1_2", "p2"])));
        assert!(circuits.contains(&label_set(&m, &["c1_1", "c1_2", "c2_1", "p3"])));
        assert!(circuits.contains(&label_set(&m, &["c1_1", "c1_2", "c2_1", "c3_1", "c3_2"])));
    }

    #[test]
    fn phi_with_two_components_matches_theta() {
        for (a, b) in [(2, 3), (3, 3), (3, 4), (4, 2), (5, 3)] {
            let (phi, _) = phi_matroid(&[a, b]).unwrap();
            let (theta, _) = theta_matroid(&[a, b]).unwrap();
            // Theta sorts its components; undo that and rename the basepoint.
            let swap = a > b;
            let map: Vec<String> = phi
                .labels()
                .iter()
                .map(|l| match l.as_str() {
                    "p2" => "p".to_string(),
                    _ if swap && l.starts_with("c1_") => l.replacen("c1_", "c2_", 1),
                    _ if swap && l.starts_with("c2_") => l.replacen("c2_", "c1_", 1),
                    _ => l.clone(),
                })
                .collect();
            assert!(phi.relabel(map).unwrap().same_bases(&theta).unwrap(), "{a},{b}");
        }
    }

    #[test]
    fn small_fixtures_have_nbc_bases() {
        for sizes in [vec![2, 3], vec![3, 3], vec![2, 2, 3], vec![3, 4]] {
            for (m, so) in [theta_matroid(&sizes).unwrap(), phi_matroid(&sizes).unwrap()] {
                let r = nbc_check(&m, &so, FieldTag::Rational, &CheckOptions::default()).unwrap();
                assert!(r.is_basis(), "{sizes:?} {r:?}");
            }
        }
    }

    #[test]
    fn rejects_short_components() {
        assert!(matches!(theta_matroid(&[3, 1]), Err(Error::BadParams(_))));
        assert!(matches!(phi_matroid(&[]), Err(Error::BadParams(_))));
        assert_eq!(parse_sizes("3, 3,4").unwrap(), vec![3, 3, 4]);
    }

    #[test]
    fn named_fixtures() {
        let (r10, _) = named(Named::R10).unwrap();
        assert_eq!((r10.n(), r10.rank(), r10.bases().unwrap().len()), (10, 5, 162));
        let (d, so) = named_by_str("DualK33").unwrap();
        assert_eq!((d.n(), d.rank()), (9, 4));
        assert!(so.is_some());
        let (k33, _) = named(Named::K33).unwrap();
        assert_eq!(k33.rank(), 5);
        assert_eq!(k33.bases().unwrap().len(), 81);
        // The unpermuted dual representation is the dual of K33 column for
        // column, and the fixture permutes its (distinct) columns.
        let oxley = [
            [1, 1, 0, 1, 1, 0, 0, 0, 0],
            [1, 0, 1, 1, 0, 1, 0, 0, 0],
            [1, 1, 0, 0, 0, 0, 1, 1, 0],
            [1, 0, 1, 0, 0, 0, 1, 0, 1],
        ];
        let unpermuted = Matroid::from_matrix(gf2_matrix(&rows(&oxley)).unwrap()).unwrap();
        assert!(unpermuted.same_bases(&k33.dual().unwrap()).unwrap());
        let cols = |m: &[[i64; 9]]| {
            let mut c: Vec<Vec<i64>> = (0..9).map(|j| m.iter().map(|r| r[j]).collect()).collect();
            c.sort();
            c
        };
        let (a, b) = (cols(&oxley), cols(&DUAL_K33_MATRIX));
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0] != w[1]));
        assert_eq!(d.bases().unwrap().len(), 81);
        assert!(matches!(named_by_str("Fano"), Err(Error::UnknownName(_))));
    }
}
