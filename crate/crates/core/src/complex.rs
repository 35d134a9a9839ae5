//! Broken circuits, the broken circuit complex, f- and h-vectors.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matroid::{ElementSet, Matroid};
use crate::ordering::Ordering;

/// `C \ {min C}` for every circuit, minimum taken in the ordering;
/// duplicates collapsed. Element-index sets, sorted by size then bits.
pub fn broken_circuits(m: &Matroid, ord: &Ordering) -> Result<Vec<ElementSet>> {
    let mut out: Vec<ElementSet> = m
        .circuits()?
        .iter()
        .map(|&c| {
            let min = c.iter().min_by_key(|&e| ord.position(e)).expect("nonempty circuit");
            c.without(min)
        })
        .collect();
    out.sort_by_key(|s| (s.len(), s.bits()));
    out.dedup();
    Ok(out)
}

/// All faces of the complex of subsets of `0..n` that contain none of
/// `minimal_nonfaces`, by depth-first search adding elements in increasing
/// index order. Faces are sorted by size, then by bits.
fn faces_avoiding(n: usize, minimal_nonfaces: &[ElementSet]) -> Vec<ElementSet> {
    if minimal_nonfaces.iter().any(|s| s.is_empty()) {
        return Vec::new();
    }
    let mut by_max: Vec<Vec<ElementSet>> = vec![Vec::new(); n];
    for &s in minimal_nonfaces {
        let top = 63 - s.bits().leading_zeros() as usize;
        by_max[top].push(s);
    }
    let mut out = vec![ElementSet::EMPTY];
    let mut stack = vec![(ElementSet::EMPTY, 0usize)];
    while let Some((face, next)) = stack.pop() {
        for e in next..n {
            let t = face.with(e);
            // A new non-face through t must have e as its largest element.
            if by_max[e].iter().any(|s| s.is_subset(t)) {
                continue;
            }
            out.push(t);
            stack.push((t, e + 1));
        }
    }
    out.sort_by_key(|s| (s.len(), s.bits()));
    out
}

/// Faces of the broken circuit complex.
pub fn bc_faces(m: &Matroid, ord: &Ordering) -> Result<Vec<ElementSet>> {
    let bc = broken_circuits(m, ord)?;
    Ok(faces_avoiding(m.n(), &bc))
}

/// Faces of the independence complex.
pub fn independence_faces(m: &Matroid) -> Result<Vec<ElementSet>> {
    Ok(faces_avoiding(m.n(), m.circuits()?))
}

/// `f[i]` counts faces with `i` elements (so `f[0]` is the empty face);
/// length `d + 1`.
pub fn f_vector(faces: &[ElementSet], d: usize) -> Vec<u64> {
    let mut f = vec![0u64; d + 1];
    for s in faces {
        if s.len() <= d {
            f[s.len()] += 1;
        }
    }
    f
}

fn binomial(n: i128, k: i128) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) / (i + 1))
}

/// h-vector of a (d−1)-dimensional complex from its f-vector, via
/// `Σ hᵢ tⁱ = Σ f_{i−1} tⁱ (1−t)^{d−i}`.
pub fn h_from_f(f: &[u64]) -> Vec<i64> {
    let d = f.len() as i128 - 1;
    (0..=d)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * binomial(d - i, k - i) * f[i as usize] as i128
                })
                .sum::<i128>() as i64
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FhVectors {
    pub f: Vec<u64>,
    pub h: Vec<i64>,
    pub facets: u64,
}

pub fn f_h_vectors(m: &Matroid, ord: &Ordering) -> Result<FhVectors> {
    let faces = bc_faces(m, ord)?;
    let f = f_vector(&faces, m.rank());
    let h = h_from_f(&f);
    let facets = f[m.rank()];
    Ok(FhVectors { f, h, facets })
}

/// Sum of h entries, the dimension of the quotient by an l.s.o.p.
pub fn h_sum(h: &[i64]) -> i64 {
    h.iter().sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HRecursionReport {
    pub element: String,
    pub h: Vec<i64>,
    pub h_delete: Vec<i64>,
    pub h_contract: Vec<i64>,
    pub holds: bool,
}

/// Checks `hᵢ(M) = hᵢ(M\e) + h_{i−1}(M/e)` with all three h-vectors
/// computed independently under induced orderings.
pub fn h_recursion_check(m: &Matroid, e: usize, ord: &Ordering) -> Result<HRecursionReport> {
    if m.is_loop(e) || m.is_coloop(e) {
        return Err(Error::DegenerateElement(m.labels()[e].clone()));
    }
    let h = f_h_vectors(m, ord)?.h;
    let sub = ord.without(e);
    let hd = f_h_vectors(&m.delete(e)?, &sub)?.h;
    let hc = f_h_vectors(&m.contract(e)?, &sub)?.h;
    let at = |v: &[i64], i: isize| if i < 0 { 0 } else { v.get(i as usize).copied().unwrap_or(0) };
    let holds = (0..h.len() as isize).all(|i| at(&h, i) == at(&hd, i) + at(&hc, i - 1))
        && hd.len() <= h.len()
        && hc.len() < h.len();
    Ok(HRecursionReport {
        element: m.labels()[e].clone(),
        h,
        h_delete: hd,
        h_contract: hc,
        holds,
    })
}

fn poly_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JoinReport {
    pub components: usize,
    pub f: Vec<u64>,
    pub f_join: Vec<u64>,
    pub holds: bool,
}

/// The broken circuit complex of a direct sum is the join of those of its
/// components, so its face polynomial `Σ fᵢ tⁱ` is the product of theirs.
pub fn join_decomposition_check(m: &Matroid, ord: &Ordering) -> Result<JoinReport> {
    let comps = m.connected_components()?;
    let f = f_h_vectors(m, ord)?.f;
    let mut f_join = vec![1u64];
    for &c in &comps {
        let sub = m.restrict(c)?;
        f_join = poly_mul(&f_join, &f_h_vectors(&sub, &ord.induced(c))?.f);
    }
    let trimmed = |v: &[u64]| {
        let mut v = v.to_vec();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let holds = trimmed(&f) == trimmed(&f_join);
    Ok(JoinReport {
        components: comps.len(),
        f,
        f_join,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::matroid::k_subsets;

    fn graph_from_k4() -> Matroid {
        let e = |a: &str, b: &str| (a.to_string(), b.to_string());
        Matroid::from_graph(vec![e("1", "2"), e("1", "3"), e("1", "4"), e("2", "3"), e("2", "4"), e("3", "4")]).unwrap()
    }

    fn id(n: usize) -> Ordering {
        Ordering::identity(n)
    }

    #[test]
    fn uniform_examples() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(broken_circuits(&u23, &id(3)).unwrap(), vec![ElementSet(0b110)]);
        let fh = f_h_vectors(&u23, &id(3)).unwrap();
        assert_eq!(fh.f, vec![1, 3, 2]);
        assert_eq!(fh.h, vec![1, 1, 0]);
        for n in 1..7 {
            let free = Matroid::uniform(n, n).unwrap();
            assert!(broken_circuits(&free, &id(n)).unwrap().is_empty());
            let mut h = vec![0; n + 1];
            h[0] = 1;
            assert_eq!(f_h_vectors(&free, &id(n)).unwrap().h, h);
            if n >= 2 {
                let c = Matroid::uniform(n - 1, n).unwrap();
                let mut h = vec![1; n];
                h[n - 1] = 0;
                assert_eq!(f_h_vectors(&c, &id(n)).unwrap().h, h);
            }
        }
    }

    #[test]
    fn k4_broken_circuits() {
        let k4 = graph_from_k4();
        assert_eq!(k4.circuits().unwrap().len(), 7);
        // Brute force: C minus its minimum over all dependent minimal sets.
        let bc = broken_circuits(&k4, &id(6)).unwrap();
        let mut brute = Vec::new();
        for k in 1..=6 {
            for s in k_subsets(6, k) {
                let minimal = !k4.is_independent(s) && s.iter().all(|x| k4.is_independent(s.without(x)));
                if minimal {
                    brute.push(s.without(s.first().unwrap()));
                }
            }
        }
        brute.sort_by_key(|s| (s.len(), s.bits()));
        brute.dedup();
        assert_eq!(bc, brute);
        // K4 is simple, so distinct circuits never share a broken circuit.
        assert_eq!(bc.len(), 7);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            assert_eq!(broken_circuits(&k4, &Ordering::random(6, &mut rng)).unwrap().len(), 7);
        }
    }

    #[test]
    fn faces_match_brute_force_and_facets() {
        let k4 = graph_from_k4();
        let faces = bc_faces(&k4, &id(6)).unwrap();
        let bc = broken_circuits(&k4, &id(6)).unwrap();
        let brute: Vec<ElementSet> = (0..64u64)
            .map(ElementSet)
            .filter(|s| !bc.iter().any(|b| b.is_subset(*s)))
            .collect();
        assert_eq!(faces.len(), brute.len());
        let fh = f_h_vectors(&k4, &id(6)).unwrap();
        assert_eq!(h_sum(&fh.h) as u64, fh.facets);
        assert!(faces.iter().all(|f| k4.is_independent(*f)));
        assert_eq!(fh.h, vec![1, 3, 2, 0]);
    }

    #[test]
    fn h_recursion() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        let r = h_recursion_check(&u23, 2, &id(3)).unwrap();
        assert_eq!(r.h_delete, vec![1, 0, 0]);
        assert_eq!(r.h_contract, vec![1, 0]);
        assert!(r.holds);
        let k4 = graph_from_k4();
        for e in 0..6 {
            assert!(h_recursion_check(&k4, e, &id(6)).unwrap().holds);
        }
        let free = Matroid::uniform(2, 2).unwrap();
        assert!(matches!(h_recursion_check(&free, 0, &id(2)), Err(Error::DegenerateElement(_))));
    }

    #[test]
    fn order_invariance() {
        let k4 = graph_from_k4();
        let base = f_h_vectors(&k4, &id(6)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let o = Ordering::random(6, &mut rng);
            assert_eq!(f_h_vectors(&k4, &o).unwrap(), base);
        }
    }

    #[test]
    fn joins() {
        let tri = Matroid::uniform(2, 3).unwrap();
        let other = tri.relabel(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let two = tri.direct_sum(&other).unwrap();
        let r = join_decomposition_check(&two, &id(6)).unwrap();
        assert_eq!(r.components, 2);
        assert!(r.holds);
        let h = f_h_vectors(&two, &id(6)).unwrap().h;
        assert_eq!(h, vec![1, 2, 1, 0, 0]);
        let single = Matroid::uniform_with_labels(1, vec!["z".into()]).unwrap();
        let coloop = tri.direct_sum(&single).unwrap();
        let hc = f_h_vectors(&coloop, &id(4)).unwrap().h;
        assert_eq!(hc, vec![1, 1, 0, 0]);
        assert!(join_decomposition_check(&coloop, &id(4)).unwrap().holds);
        assert!(join_decomposition_check(&tri, &id(3)).unwrap().holds);
    }

    #[test]
    fn loops_give_void_complex() {
        let m = Matroid::from_matrix(crate::matroid::q_matrix(&[vec![1, 0]]).unwrap()).unwrap();
        let fh = f_h_vectors(&m, &id(2)).unwrap();
        assert_eq!(fh.facets, 0);
        assert!(fh.f.iter().all(|&x| x == 0));
    }
}
