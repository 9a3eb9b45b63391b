use chevalley_core::normal::{NormalStructure, SubgroupHandle};
use chevalley_core::ring::{is_prime, BasicRing, Ideal};
use chevalley_core::{CartanType, Chevalley, Zmod};
use rand::{Rng, SeedableRng};

fn group(t: &str, n: u32) -> Chevalley<Zmod> {
    let r = if is_prime(n) { Zmod::prime_field(n) } else { Zmod::new(n) };
    Chevalley::for_type(CartanType::parse(t).unwrap(), r.unwrap()).unwrap()
}

fn ideal(g: &Chevalley<Zmod>, a: i128) -> Ideal {
    Ideal::from_generators(BasicRing::Mod(g.ring), &[a])
}

fn random_element(g: &Chevalley<Zmod>, rng: &mut impl Rng, len: usize, params: &[u32]) -> chevalley_core::GroupElement<Zmod> {
    let mut h = g.identity();
    for _ in 0..len {
        let a = rng.gen_range(0..g.rs().num_roots());
        let t = params[rng.gen_range(0..params.len())];
        h = g.mul(&h, &g.x_elem(a, &t));
    }
    h
}

#[test]
fn relative_elementary_level_over_z4() {
    let g = group("A2", 4);
    let ns = NormalStructure::new(&g);
    let h = ns.relative_elementary(&ideal(&g, 2));
    assert_eq!(ns.level(&h).unwrap().ideal, ideal(&g, 2));
    let (principal, full) = ns.congruence(&ideal(&g, 2)).unwrap();
    assert_eq!(principal.order().unwrap(), 256);
    assert!(h.is_subset_of(&principal).unwrap());
    assert!(principal.is_subset_of(&full).unwrap());
    let seeded = ns.normal_closure(vec![g.x_elem(0, &2)]);
    let rep = ns.sandwich_check(&seeded).unwrap();
    assert_eq!(rep.ideal, ideal(&g, 2));
}

#[test]
fn sampled_sandwich() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    for (t, n, count) in [("A2", 4u32, 100usize), ("A2", 3, 60), ("B2", 3, 40)] {
        let g = group(t, n);
        let ns = NormalStructure::new(&g);
        let t0 = std::time::Instant::now();
        let params: Vec<u32> = if n == 4 { vec![1, 2, 2, 2, 3] } else { (1..n).collect() };
        for _ in 0..count {
            let len = rng.gen_range(1..6);
            let h = random_element(&g, &mut rng, len, &params);
            let hh = ns.normal_closure(vec![h]);
            let rep = ns.sandwich_check(&hh).unwrap();
            assert!(rep.holds());
        }
        eprintln!("{t}/{n}: {:?}", t0.elapsed());
    }
}

#[test]
fn perfect_and_hall_witt() {
    let g = group("A2", 3);
    let ns = NormalStructure::new(&g);
    let samples: Vec<SubgroupHandle> = vec![ns.normal_closure(vec![g.x_elem(0, &1)]), ns.center().unwrap()];
    let rep = ns.perfectness_and_hallwitt(&samples).unwrap();
    assert_eq!(rep.order_e, 5616);
    assert!(rep.holds());
    assert_eq!(rep.hall_witt[1].0, 1);
}

#[test]
fn commutation_formula() {
    let g = group("A2", 4);
    let ns = NormalStructure::new(&g);
    let t0 = std::time::Instant::now();
    assert!(ns.commutation_formula_check(&ideal(&g, 2)).unwrap());
    assert!(ns.commutation_formula_check(&ideal(&g, 0)).unwrap());
    eprintln!("{:?}", t0.elapsed());
}
