use chevalley_core::normal::{e_generators, enumerate_closure, ENUMERATION_CAP};
use chevalley_core::ring::is_prime;
use chevalley_core::{CartanType, Chevalley, Error, Zmod};

fn group(t: &str, n: u32) -> Chevalley<Zmod> {
    let r = if is_prime(n) { Zmod::prime_field(n) } else { Zmod::new(n) };
    Chevalley::for_type(CartanType::parse(t).unwrap(), r.unwrap()).unwrap()
}

fn run_field(t: &str, p: u32, expect: usize) {
    let g = group(t, p);
    let (all, _) = enumerate_closure(&g, &e_generators(&g), &[], ENUMERATION_CAP).unwrap();
    assert_eq!(all.len(), expect);
    let mut fails = Vec::new();
    let mut max_depth = 0;
    for h in all.iter() {
        if g.is_central(h).unwrap() {
            assert!(h.is_identity(&g.ring));
            assert_eq!(g.extract_over_field(h).unwrap_err(), Error::CentralInput);
            continue;
        }
        match g.extract_over_field(h) {
            Ok(res) => {
                let x = g.x_elem(res.root, &res.t);
                assert!(!x.is_identity(&g.ring));
                assert!(g.check_certificate(&res.certificate, h, &x).unwrap());
                max_depth = max_depth.max(res.descent_depth);
            }
            Err(e) => fails.push(e),
        }
    }
    assert!(fails.is_empty(), "{} failures, first {:?}", fails.len(), fails.first());
    assert!(max_depth <= 2);
}

#[test]
fn every_noncentral_element_over_gf2() {
    run_field("A2", 2, 168);
}

#[test]
fn every_noncentral_element_over_gf3() {
    run_field("A2", 3, 5616);
}

#[test]
fn congruence_kernel_over_z4() {
    use chevalley_core::normal::NormalStructure;
    use chevalley_core::ring::{BasicRing, Ideal};
    let g = group("A2", 4);
    let ns = NormalStructure::new(&g);
    let two = Ideal::from_generators(BasicRing::Mod(g.ring), &[2]);
    let (kernel, _) = ns.congruence(&two).unwrap();
    let elems = kernel.elements().unwrap();
    assert_eq!(elems.len(), 256);
    let mut noncentral = 0;
    for h in elems.iter() {
        assert!(g.in_big_cell(h));
        if g.is_central(h).unwrap() {
            assert_eq!(g.extract_under_radical(h).unwrap_err(), Error::CentralInput);
            continue;
        }
        noncentral += 1;
        let res = g.extract_under_radical(h).unwrap();
        let x = g.x_elem(res.root, &res.t);
        assert!(!x.is_identity(&g.ring));
        assert!(g.check_certificate(&res.certificate, h, &x).unwrap());
    }
    assert_eq!(noncentral, 255);
}

fn random_sample(t: &str, p: u32, count: usize, seed: u64) {
    use rand::{Rng, SeedableRng};
    let g = group(t, p);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let roots = g.rs().num_roots();
    let mut done = 0;
    while done < count {
        let mut h = g.identity();
        for _ in 0..12 {
            let x = g.x_elem(rng.gen_range(0..roots), &rng.gen_range(1..p));
            h = g.mul(&h, &x);
        }
        if g.is_central(&h).unwrap() {
            continue;
        }
        let res = g.extract_over_field(&h).unwrap_or_else(|e| panic!("{e} on {h:?}"));
        let x = g.x_elem(res.root, &res.t);
        assert!(!x.is_identity(&g.ring));
        assert!(g.check_certificate(&res.certificate, &h, &x).unwrap());
        done += 1;
    }
}

#[test]
fn random_b2_over_gf3() {
    random_sample("B2", 3, 500, 7);
}

#[test]
fn random_g2_over_gf5() {
    random_sample("G2", 5, 100, 11);
}

#[test]
fn cell_case_split_is_exercised_both_ways() {
    let g = group("A2", 3);
    let neg0 = g.rs().negate(0);
    let branch = |h: &chevalley_core::GroupElement<Zmod>| {
        let res = g.extract_over_field(h).unwrap();
        assert!(g.check_certificate(&res.certificate, h, &g.x_elem(res.root, &res.t)).unwrap());
        let escaped = res.trace.iter().any(|s| s.starts_with("cell: a^b centralizes"));
        let commuted = res.trace.iter().any(|s| s.contains("is noncentral"));
        assert!(escaped != commuted, "{:?}", res.trace);
        escaped
    };
    // x_α(1) commutes with every x_α(r): the centralizer branch
    assert!(branch(&g.x_elem(0, &1)));
    // x_{-α}(1) does not
    assert!(!branch(&g.x_elem(neg0, &1)));
    let (all, _) = enumerate_closure(&g, &e_generators(&g), &[], ENUMERATION_CAP).unwrap();
    let (mut esc, mut com) = (0, 0);
    for h in all.iter().filter(|h| !g.is_central(h).unwrap()) {
        if branch(h) {
            esc += 1;
        } else {
            com += 1;
        }
    }
    assert!(esc > 0 && com > 0);
}
