//! Randomized properties across the pipeline.

use matroidlab::complex::{bc_faces, f_h_vectors, h_recursion_check, h_sum, independence_faces};
use matroidlab::linalg::{Field, FieldTag, Gf2, Matrix, PrimeField, Rationals};
use matroidlab::matroid::{k_subsets, Matroid};
use matroidlab::nbc::{decomposition_check, has_cocircuit_pair, lsop, nbc_check, order_ideals, CheckOptions};
use matroidlab::ordering::{Ordering, StandardOrdering, StandardOrderings};
use matroidlab::poly::{groebner_basis, Ideal, Monomial, MonomialOrder, Polynomial};
use matroidlab::signing::{check_basis_nonsingular, full_circuit_matrix, full_cocircuit_matrix, fundamental_matrices};
use proptest::prelude::*;

fn int_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r))
}

fn graph() -> impl Strategy<Value = Matroid> {
    proptest::collection::vec((0u8..5, 0u8..5), 1..8).prop_map(|es| {
        Matroid::from_graph(es.into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()).unwrap()
    })
}

/// A graphic matroid with one of its standard orderings.
fn graph_with_ordering() -> impl Strategy<Value = (Matroid, StandardOrdering)> {
    (graph(), any::<u64>()).prop_map(|(m, seed)| {
        let all = StandardOrderings::new(&m).unwrap();
        let so = all.decode(seed % all.count()).unwrap();
        (m, so)
    })
}

fn rank_props<F: Field>(f: F, rows: &[Vec<i64>]) -> Result<(), TestCaseError> {
    let m = Matrix::from_i64(f, rows).unwrap();
    let r = m.rank();
    prop_assert_eq!(r, m.transpose().rank());
    let ns = m.null_space_basis();
    prop_assert_eq!(ns.nrows(), m.ncols() - r);
    if ns.nrows() > 0 {
        prop_assert!(m.mul(&ns.transpose()).unwrap().is_zero());
    }
    let (_, pivots) = m.rref();
    if !pivots.is_empty() {
        let sf = m.standard_form(&pivots).unwrap();
        prop_assert_eq!(m.vstack(&sf).unwrap().rank(), r);
        prop_assert_eq!(sf.rank(), r);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn linear_algebra_invariants(rows in int_matrix(5, 6)) {
        rank_props(Gf2, &rows)?;
        rank_props(PrimeField::new(5).unwrap(), &rows)?;
        rank_props(Rationals, &rows)?;
    }

    #[test]
    fn gf2_agrees_with_rationals_mod_two(bits in (1usize..=5).prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(0i64..=1, n), n))) {
        let q = Matrix::from_i64(Rationals, &bits).unwrap().determinant().unwrap();
        let g = Matrix::from_i64(Gf2, &bits).unwrap().determinant().unwrap();
        let reduced = Gf2.from_rational(&q).unwrap();
        prop_assert_eq!(reduced, g);
    }

    #[test]
    fn normal_form_is_idempotent_linear_multiplicative(
        a in proptest::collection::vec((0u16..3, 0u16..3, -2i64..=2), 1..5),
        b in proptest::collection::vec((0u16..3, 0u16..3, -2i64..=2), 1..5),
    ) {
        let f = Rationals;
        let poly = |t: &[(u16, u16, i64)]| {
            let mut p = Polynomial::zero(f);
            for &(x, y, c) in t {
                p.add_term(Monomial::from_exponents(vec![x, y]), f.from_i64(c));
            }
            p
        };
        let ideal = Ideal::new(f, 2, vec![
            Polynomial::parse(f, "x1^2 - x2^2").unwrap(),
            Polynomial::parse(f, "x1 x2").unwrap(),
        ]).unwrap();
        let g = groebner_basis(&ideal, MonomialOrder::Grlex);
        let (p, q) = (poly(&a), poly(&b));
        let np = g.normal_form(&p);
        prop_assert_eq!(g.normal_form(&np), np.clone());
        prop_assert_eq!(g.normal_form(&p.add(&q)), np.add(&g.normal_form(&q)));
        prop_assert_eq!(g.normal_form(&p.mul(&q)), g.normal_form(&np.mul(&g.normal_form(&q))));
        prop_assert_eq!(Polynomial::parse(f, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn signed_matrices_are_orthogonal_with_even_supports((m, so) in graph_with_ordering()) {
        let ord = so.ordering();
        let c = full_circuit_matrix(&m, ord, FieldTag::Rational).unwrap();
        let cc = full_cocircuit_matrix(&m, ord, FieldTag::Rational).unwrap();
        for x in &c.signs {
            for y in &cc.signs {
                let dot: i64 = x.iter().zip(y).map(|(a, b)| (*a as i64) * (*b as i64)).sum();
                let meet = x.iter().zip(y).filter(|(a, b)| **a != 0 && **b != 0).count();
                prop_assert_eq!(dot, 0);
                prop_assert_eq!(meet % 2, 0);
            }
        }
        let (_, coc) = fundamental_matrices(&m, &so, FieldTag::Rational).unwrap();
        for s in k_subsets(m.n(), m.rank()) {
            prop_assert_eq!(check_basis_nonsingular(&m, &coc, s).unwrap(), m.is_basis(s));
        }
    }

    #[test]
    fn broken_circuit_complex_invariants(m in graph(), seed in any::<u64>()) {
        let n = m.n();
        let ord = Ordering::random(n, &mut <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed));
        let faces = bc_faces(&m, &ord).unwrap();
        let indep = independence_faces(&m).unwrap();
        prop_assert!(faces.iter().all(|f| indep.contains(f)));
        let fh = f_h_vectors(&m, &ord).unwrap();
        prop_assert_eq!(h_sum(&fh.h), fh.facets as i64);
        prop_assert!(fh.h.iter().all(|&x| x >= 0));
        prop_assert_eq!(&fh, &f_h_vectors(&m, &Ordering::identity(n)).unwrap());
        for e in 0..n {
            if !m.is_loop(e) && !m.is_coloop(e) {
                prop_assert!(h_recursion_check(&m, e, &ord).unwrap().holds);
            }
        }
    }

    #[test]
    fn nbc_report_invariants((m, so) in graph_with_ordering()) {
        for field in [FieldTag::Gf2, FieldTag::Rational] {
            let r = nbc_check(&m, &so, field, &CheckOptions::default()).unwrap();
            prop_assert_eq!(r.quotient_dimension as i64, r.h_sum);
            prop_assert_eq!(r.is_basis(), r.cardinality_matches && r.independent);
            prop_assert!(r.term_lemma);
        }
        if m.connected_components().unwrap().len() == 1 {
            let (u, l) = order_ideals(&m, &so).unwrap();
            prop_assert!(u.is_closed() && l.is_closed());
            let t = lsop(&m, &so, FieldTag::Rational).unwrap();
            prop_assert_ne!(t.represents_matroid, Some(false));
        }
        if has_cocircuit_pair(&m, &so).unwrap() {
            prop_assert!(decomposition_check(&m, &so).unwrap().holds);
        }
    }
}
