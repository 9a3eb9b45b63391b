use chevalley_core::normal::{e_generators, enumerate_closure, ENUMERATION_CAP};
use chevalley_core::ring::is_prime;
use chevalley_core::{CartanType, Certificate, Chevalley, CommRing, GroupWord, Orientation, Zmod};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn group(t: &str, n: u32) -> Chevalley<Zmod> {
    let r = if is_prime(n) { Zmod::prime_field(n) } else { Zmod::new(n) };
    Chevalley::for_type(CartanType::parse(t).unwrap(), r.unwrap()).unwrap()
}

fn types() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just("A2"), Just("B2"), Just("G2"), Just("A3"), Just("C3")]
}

fn small_rings() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3), Just(4), Just(5), Just(7), Just(9)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn root_elements_are_additive(ty in types(), n in small_rings(), r in any::<usize>(), t in any::<u32>(), u in any::<u32>()) {
        let g = group(ty, n);
        let a = r % g.rs().num_roots();
        let (t, u) = (t % n, u % n);
        let lhs = g.mul(&g.x_elem(a, &t), &g.x_elem(a, &u));
        prop_assert_eq!(lhs, g.x_elem(a, &g.ring.add(&t, &u)));
    }

    #[test]
    fn commutator_formula(ty in types(), n in small_rings(), r in any::<(usize, usize)>(), t in any::<u32>(), u in any::<u32>()) {
        let g = group(ty, n);
        let m = g.rs().num_roots();
        let (a, b) = (r.0 % m, r.1 % m);
        prop_assume!(g.rs().negate(a) != b);
        let (t, u) = (t % n, u % n);
        let direct = g.comm(&g.x_elem(a, &t), &g.x_elem(b, &u));
        let word = g.commutator_expand(a, b, &t, &u).unwrap();
        prop_assert!(word.is_elementary());
        prop_assert_eq!(g.eval(&word).unwrap(), direct);
    }

    #[test]
    fn weyl_action_signs(ty in types(), n in small_rings(), wi in any::<usize>(), r in any::<usize>(), t in any::<u32>()) {
        let g = group(ty, n);
        let rs = g.rs();
        let w = rs.weyl_group()[wi % rs.weyl_group().len()].clone();
        let a = r % rs.num_roots();
        let t = t % n;
        let (b, sign) = g.conj_root(&w, a);
        prop_assert_eq!(b, w.act(a));
        prop_assert!(sign == 1 || sign == -1);
        let lhs = g.conj(&g.x_elem(a, &t), g.weyl_rep(&w));
        let st = g.ring.mul(&g.ring.from_i64(sign), &t);
        prop_assert_eq!(lhs, g.x_elem(b, &st));
    }

    #[test]
    fn xyzz_identity(ty in prop_oneof![Just("A2"), Just("B2"), Just("G2")], seed in any::<u64>()) {
        let g = group(ty, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [x, y, z] = [0, 1, 2].map(|_| {
            let len = 1 + (seed as usize % 5);
            g.eval(&g.random_word(&mut rng, len)).unwrap()
        });
        let zi = g.inv(&z);
        let lhs = g.conj(&g.comm(&x, &g.mul(&y, &z)), &zi);
        let rhs = g.mul(&g.comm(&zi, &x), &g.comm(&x, &y));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn decomposition_round_trip(ty in types(), p in prop_oneof![Just(2u32), Just(3), Just(5), Just(7)], seed in any::<u64>(), len in 1usize..12) {
        let g = group(ty, p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = g.eval(&g.random_word(&mut rng, len)).unwrap();
        for o in [Orientation::UBw, Orientation::UminusBw] {
            let f = g.gauss_decompose(&x, o).unwrap();
            let back = g.product([&f.u, &f.b, &f.wrep]);
            prop_assert_eq!(&back, &x);
            prop_assert_eq!(g.eval(&f.u_word()).unwrap(), f.u.clone());
            prop_assert_eq!(&f.wrep, g.weyl_rep(&f.w));
        }
        let w = g.bruhat_cell(&x).unwrap();
        prop_assert!(g.cell_factor(&x, &w, Orientation::UBw).is_some());
    }

    #[test]
    fn word_inverse_evaluates_to_inverse(ty in types(), n in small_rings(), seed in any::<u64>()) {
        let g = group(ty, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = g.random_word(&mut rng, 6);
        let x = g.eval(&w).unwrap();
        prop_assert!(g.mul(&x, &g.eval(&w.inverse()).unwrap()).is_identity(&g.ring));
    }

    #[test]
    fn reflections_and_lengths(ty in prop_oneof![Just("A2"), Just("B2"), Just("G2"), Just("A3"), Just("B3"), Just("C3")], r in any::<usize>(), wi in any::<usize>()) {
        let rs = chevalley_core::RootSystem::build(CartanType::parse(ty).unwrap()).unwrap();
        let a = r % rs.num_roots();
        let s = rs.reflection(a);
        prop_assert!(rs.weyl_compose(s, s).is_identity());
        let w = &rs.weyl_group()[wi % rs.weyl_group().len()];
        let w0 = rs.longest();
        prop_assert_eq!(w.length() + rs.weyl_compose(w0, w).length(), w0.length());
        prop_assert_eq!(w.length(), rs.inversion_count(w));
    }
}

/// Small random certificate trees over the seed, the way the extraction
/// engine builds them.
fn random_certificate(g: &Chevalley<Zmod>, rng: &mut ChaCha8Rng, depth: usize) -> Certificate<u32> {
    use rand::Rng;
    let elem = |rng: &mut ChaCha8Rng| {
        let a = rng.gen_range(0..g.rs().num_roots());
        let t = rng.gen_range(0..g.ring.modulus());
        Certificate::elem(GroupWord::x(a, t))
    };
    if depth == 0 {
        return Certificate::Seed;
    }
    let inner = random_certificate(g, rng, depth - 1);
    match rng.gen_range(0..5) {
        0 => inner.inverse(),
        1 => inner.conj(elem(rng)),
        2 => Certificate::comm(elem(rng), inner),
        3 => Certificate::comm(inner, elem(rng)),
        _ => {
            let other = random_certificate(g, rng, depth - 1);
            Certificate::product(vec![inner, other])
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn certificate_values_lie_in_normal_closure(n in prop_oneof![Just(2u32), Just(4)], seed in any::<u64>()) {
        let g = group("A2", n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = g.eval(&g.random_word(&mut rng, 4)).unwrap();
        let (closure, _) =
            enumerate_closure(&g, &[h.clone()], &e_generators(&g), ENUMERATION_CAP).unwrap();
        for _ in 0..8 {
            let cert = random_certificate(&g, &mut rng, 4);
            prop_assert!(cert.syntactic_normal_closure());
            let v = g.evaluate(&cert, Some(&h)).unwrap();
            prop_assert!(closure.contains(&v));
        }
    }
}

/// Over GF(2) the values of depth-≤4 certificates already exhaust the
/// normal closure of any seed.
#[test]
fn certificates_reach_whole_normal_closure() {
    use std::collections::HashSet;
    let g = group("A2", 2);
    let (all, _) = enumerate_closure(&g, &e_generators(&g), &[], ENUMERATION_CAP).unwrap();
    let elementary: Vec<_> = e_generators(&g);
    for h in all.iter().take(24) {
        let (closure, _) =
            enumerate_closure(&g, &[h.clone()], &elementary, ENUMERATION_CAP).unwrap();
        // level-by-level values: depth d adds inverses, conjugates by x_α(1)
        // and products with the seed's layer
        let mut reached: HashSet<_> = [h.clone()].into_iter().collect();
        let mut layer = reached.clone();
        for _ in 0..4 {
            let mut next = HashSet::new();
            for v in &layer {
                next.insert(g.inv(v));
                for e in &elementary {
                    next.insert(g.conj(v, e));
                    next.insert(g.comm(e, v));
                }
                for u in &reached {
                    next.insert(g.mul(v, u));
                }
            }
            next.retain(|v| !reached.contains(v));
            reached.extend(next.iter().cloned());
            layer = next;
        }
        assert!(reached.iter().all(|v| closure.contains(v)));
        assert_eq!(reached.len(), closure.len(), "seed {:?}", h);
    }
}

#[test]
fn bruhat_cells_over_gf2() {
    let g = group("A2", 2);
    let (all, _) = enumerate_closure(&g, &e_generators(&g), &[], ENUMERATION_CAP).unwrap();
    let rs = g.rs();
    let mut sizes = vec![0usize; rs.weyl_group().len()];
    for x in all.iter() {
        let w = g.bruhat_cell(x).unwrap();
        let i = rs.weyl_group().iter().position(|v| *v == w).unwrap();
        sizes[i] += 1;
        // BwB sits inside the Gauss cell of the same w
        assert!(g.cell_factor(x, &w, Orientation::UBw).is_some());
    }
    for (w, &n) in rs.weyl_group().iter().zip(&sizes) {
        assert_eq!(n, (1 << w.length()) * 8);
    }
    assert_eq!(sizes.iter().sum::<usize>(), 168);
}
