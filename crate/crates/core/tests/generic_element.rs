use chevalley_core::generic::{GenericSetup, PointCase};
use chevalley_core::roots::RootSystem;
use chevalley_core::CartanType;
use rand::SeedableRng;

#[test]
fn all_cells_and_simple_roots() {
    let rs = RootSystem::build(CartanType::A(2)).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for w in rs.weyl_group() {
        for alpha in 0..2 {
            let t0 = std::time::Instant::now();
            let setup = GenericSetup::new(2, &w.word, alpha, &[alpha]).unwrap();
            let rep = setup.run(20, &mut rng).unwrap();
            eprintln!("w={:?} α={alpha} k={} case={:?} {:?} fails={:?}", w.word, rep.k, rep.case, t0.elapsed(), rep.failures());
            assert!(rep.passed(), "{:?}", rep.failures());
            if w.word.is_empty() {
                assert_eq!(rep.case, PointCase::FixedRoot);
            }
        }
    }
}

use chevalley_core::generic::{cell_factor_concrete, good_element, trailing_minors, CellFactorization, SlRealization};
use chevalley_core::matrix::Matrix;
use chevalley_core::poly::{identity_test, Poly, PolyRing};
use chevalley_core::ring::{CommRing, Integers, Zmod};
use std::collections::HashSet;

/// All of SL_3(GF(q)) by closure under the elementary generators.
fn sl3(q: u32) -> Vec<Matrix<u32>> {
    let f = Zmod::prime_field(q).unwrap();
    let sl = SlRealization::new(2).unwrap();
    let gens: Vec<Matrix<u32>> = (0..6).map(|r| sl.x(&f, r, &1)).collect();
    let mut seen: HashSet<Matrix<u32>> = HashSet::new();
    let id = Matrix::identity(&f, 3);
    seen.insert(id.clone());
    let mut stack = vec![id];
    while let Some(m) = stack.pop() {
        for g in &gens {
            let y = m.mul(&f, g);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

#[test]
fn cell_denominator_detects_cells() {
    let sl = SlRealization::new(2).unwrap();
    for q in [2u32, 3] {
        let f = Zmod::prime_field(q).unwrap();
        let group = sl3(q);
        assert_eq!(group.len(), if q == 2 { 168 } else { 5616 });
        // U and lower-triangular B⁻ by brute force
        let upper: Vec<Matrix<u32>> = group.iter().filter(|m| (0..3).all(|i| *m.get(i, i) == 1 && (0..i).all(|j| *m.get(i, j) == 0))).cloned().collect();
        let lower: Vec<Matrix<u32>> = group.iter().filter(|m| (0..3).all(|i| (i + 1..3).all(|j| *m.get(i, j) == 0))).cloned().collect();
        for w in sl.table.rs.weyl_group() {
            let setup = GenericSetup::new(2, &w.word, 0, &[0]).unwrap();
            let fact = setup.factorization(1).unwrap();
            let wd = setup.wdot.map(|v| f.reduce(*v));
            let mut cell: HashSet<Matrix<u32>> = HashSet::new();
            for u in &upper {
                for b in &lower {
                    cell.insert(u.mul(&f, b).mul(&f, &wd));
                }
            }
            for h in &group {
                let s = setup.alg.eval_mod(&fact.s, h, q as u64) as u32;
                assert_eq!(f.is_unit(&s), cell.contains(h), "w={:?}", w.word);
                assert_eq!(f.is_unit(&s), cell_factor_concrete(&f, h, &setup.wdot).is_some());
            }
        }
    }
}

#[test]
fn special_points_have_unit_denominator() {
    let sl = SlRealization::new(2).unwrap();
    let z = Integers;
    let w0 = sl.table.rs.longest().clone();
    let setup = GenericSetup::new(2, &w0.word, 0, &[0]).unwrap();
    let f = setup.factorization(1).unwrap();
    assert_eq!(setup.alg.eval_int(&f.s, &setup.wdot).abs(), 1);
    for w in sl.table.rs.weyl_group() {
        let setup = GenericSetup::new(2, &w.word, 1, &[1]).unwrap();
        let f = setup.factorization(1).unwrap();
        let h = sl.x(&z, sl.table.rs.negate(1), &1).mul(&z, &setup.wdot);
        assert_eq!(setup.alg.eval_int(&f.s, &h).abs(), 1);
    }
}

#[test]
fn identity_point_kills_c() {
    let setup = GenericSetup::new(2, &[], 0, &[0]).unwrap();
    let f = setup.factorization(setup.normalizing_sign().unwrap()).unwrap();
    let good = good_element(&setup.sl, &f, 0).unwrap();
    let ce = chevalley_core::generic::c_element(&setup.sl, &f, 0, &good);
    let id = Matrix::identity(&Integers, 3);
    assert!(setup.alg.eval_matrix_int(&ce.c, &id).is_identity(&Integers));
    // the good element specializes to x_α(1) at the special point
    let (h, _) = setup.special_point();
    assert_eq!(setup.alg.eval_matrix_int(&good.a, &h), setup.sl.x(&Integers, 0, &1));
}

#[test]
fn borel_locus_needs_no_clearing() {
    let setup = GenericSetup::new(2, &[], 0, &[0]).unwrap();
    let g = Matrix::from_vec(3, (0..9).map(|k| if k % 3 > k / 3 { Poly::zero() } else { Poly::var(k) }).collect());
    let f = CellFactorization::new(&setup.sl, &g, &setup.w, &setup.wdot, 1).unwrap();
    assert!(trailing_minors(&PolyRing, &f.m).iter().all(|d| !d.is_zero()));
    let good = good_element(&setup.sl, &f, 0).unwrap();
    assert_eq!(good.k, 0);
    assert_eq!(good.a, setup.sl.x(&PolyRing, 0, &Poly::constant(1)));
}

#[test]
fn functoriality_over_gf5() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    let sl = SlRealization::new(2).unwrap();
    for w in sl.table.rs.weyl_group() {
        let setup = GenericSetup::new(2, &w.word, 0, &[0]).unwrap();
        let (checked, bad) = setup.functoriality(5, 100, &mut rng).unwrap();
        assert_eq!((checked, bad), (100, 0), "w={:?}", w.word);
    }
}

#[test]
fn identity_testing_rejects_false_identities() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    // x11 x22 − x12 x21 ≠ 1 on SL_3
    let lhs = Poly::var(0).mul(&Poly::var(4)).sub(&Poly::var(1).mul(&Poly::var(3)));
    let rep = identity_test(3, 20, 2, &mut rng, |pt, q| {
        let v: Vec<u64> = pt.entries().iter().map(|x| *x as u64).collect();
        Some(lhs.eval_mod(&v, q) == 1)
    });
    assert!(!rep.passed());
    assert_eq!(rep.points, 20);
    // det = 1 holds at every point
    let alg = chevalley_core::generic::AffineAlgebra::new(3).unwrap();
    let det = chevalley_core::matrix::determinant(&PolyRing, &alg.generic_matrix());
    let rep = identity_test(3, 20, 3, &mut rng, |pt, q| Some(alg.eval_mod(&det, pt, q) == 1));
    assert!(rep.passed());
    assert!(rep.failure_bound < 1e-100);
    assert!(alg.equal(&det, &Poly::constant(1)));
}
