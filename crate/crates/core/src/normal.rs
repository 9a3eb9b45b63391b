//! Levels, relative elementary and congruence subgroups, and the sandwich
//! check for subgroups normalized by `E(R)`, by explicit enumeration over
//! residue rings `ℤ/n`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use hashbrown::{HashMap, HashSet};

use crate::chevalley::{Chevalley, GroupElement};
use crate::error::{Error, Result};
use crate::ring::{check_condition, BasicRing, CommRing, Ideal, Zmod};
use crate::roots::CartanType;

/// Closures larger than this abort.
pub const ENUMERATION_CAP: usize = 1 << 20;

pub type Element = GroupElement<Zmod>;
pub type ElementSet = HashSet<Element>;

/// Subgroup generated by `gens` and closed under conjugation by each of
/// `conjugators`. Returns the elements and the (possibly enlarged)
/// generating set.
pub fn enumerate_closure(
    g: &Chevalley<Zmod>,
    gens: &[Element],
    conjugators: &[Element],
    cap: usize,
) -> Result<(ElementSet, Vec<Element>)> {
    let id = g.identity();
    let mut elements: ElementSet = HashSet::new();
    elements.insert(id.clone());
    let mut list = vec![id];
    let mut generators: Vec<Element> = Vec::new();
    let mut pending: Vec<Element> = gens.iter().rev().cloned().collect();
    let mut checked = 0;
    loop {
        while let Some(newg) = pending.pop() {
            if elements.contains(&newg) {
                continue;
            }
            generators.push(newg.clone());
            let mut frontier = Vec::new();
            for x in list.clone() {
                let y = g.mul(&x, &newg);
                if elements.insert(y.clone()) {
                    list.push(y.clone());
                    frontier.push(y);
                }
            }
            while let Some(y) = frontier.pop() {
                for gg in &generators {
                    let z = g.mul(&y, gg);
                    if elements.insert(z.clone()) {
                        list.push(z.clone());
                        frontier.push(z);
                    }
                }
                if elements.len() > cap {
                    return Err(Error::EnumerationCap(cap));
                }
            }
        }
        // conjugation closure of the generators found so far
        while checked < generators.len() {
            let gg = generators[checked].clone();
            checked += 1;
            for c in conjugators {
                let x = g.conj(&gg, c);
                if !elements.contains(&x) {
                    pending.push(x);
                }
            }
        }
        if pending.is_empty() {
            break;
        }
    }
    Ok((elements, generators))
}

/// Subgroup handle with a lazily enumerated closure.
#[derive(Debug)]
pub struct SubgroupHandle<'g> {
    pub group: &'g Chevalley<Zmod>,
    pub generators: Vec<Element>,
    pub normalized_by_e: bool,
    extra_conjugators: Vec<Element>,
    closure: RefCell<Option<Rc<ElementSet>>>,
}

impl<'g> SubgroupHandle<'g> {
    pub fn new(group: &'g Chevalley<Zmod>, generators: Vec<Element>, normalized_by_e: bool) -> Self {
        SubgroupHandle {
            group,
            generators,
            normalized_by_e,
            extra_conjugators: Vec::new(),
            closure: RefCell::new(None),
        }
    }

    /// Handle for an already known element set.
    pub fn from_elements(group: &'g Chevalley<Zmod>, elements: ElementSet, normalized_by_e: bool) -> Self {
        let h = SubgroupHandle::new(group, Vec::new(), normalized_by_e);
        *h.closure.borrow_mut() = Some(Rc::new(elements));
        h
    }

    /// Also close under conjugation by these elements.
    pub fn with_conjugators(mut self, extra: Vec<Element>) -> Self {
        self.extra_conjugators = extra;
        self
    }

    pub fn elements(&self) -> Result<Rc<ElementSet>> {
        if let Some(c) = self.closure.borrow().as_ref() {
            return Ok(c.clone());
        }
        let mut conj = self.extra_conjugators.clone();
        if self.normalized_by_e {
            conj.extend(e_generators(self.group));
        }
        let (set, gens) = enumerate_closure(self.group, &self.generators, &conj, ENUMERATION_CAP)?;
        let rc = Rc::new(set);
        *self.closure.borrow_mut() = Some(rc.clone());
        if self.generators.is_empty() {
            let _ = gens;
        }
        Ok(rc)
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.elements()?.len())
    }

    pub fn contains(&self, x: &Element) -> Result<bool> {
        Ok(self.elements()?.contains(x))
    }

    pub fn is_subset_of(&self, other: &SubgroupHandle<'_>) -> Result<bool> {
        let mine = self.elements()?;
        let theirs = other.elements()?;
        Ok(mine.iter().all(|x| theirs.contains(x)))
    }

    /// A small generating set read from the enumerated elements.
    pub fn generating_set(&self) -> Result<Vec<Element>> {
        if !self.generators.is_empty() {
            return Ok(self.generators.clone());
        }
        let all = self.elements()?;
        let mut sorted: Vec<&Element> = all.iter().collect();
        sorted.sort();
        let mut gens: Vec<Element> = Vec::new();
        let mut span: ElementSet = HashSet::new();
        span.insert(self.group.identity());
        for x in sorted {
            if span.contains(x) {
                continue;
            }
            gens.push(x.clone());
            span = enumerate_closure(self.group, &gens, &[], ENUMERATION_CAP)?.0;
            if span.len() == all.len() {
                break;
            }
        }
        Ok(gens)
    }
}

/// `x_α(1)` for every root; generates `E(ℤ/n)`.
pub fn e_generators(g: &Chevalley<Zmod>) -> Vec<Element> {
    (0..g.rs().num_roots()).map(|a| g.x_elem(a, &1)).collect()
}

/// Torus elements whose values on one simple root run over the units.
pub fn torus_generators(g: &Chevalley<Zmod>) -> Vec<Element> {
    let r = g.ring;
    let units: Vec<u32> = (1..r.modulus()).filter(|u| r.is_unit(u) && *u != 1).collect();
    let mut out = Vec::new();
    for i in 0..g.rs().rank() {
        for u in &units {
            let mut chars = vec![1u32; g.rs().rank()];
            chars[i] = *u;
            out.push(g.torus_elem(&chars).expect("units"));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelData {
    /// `q_α(H)` for each root.
    pub per_root: Vec<BTreeSet<u32>>,
    pub ideal: Ideal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SandwichReport {
    pub ideal: Ideal,
    pub order_h: usize,
    pub order_relative_elementary: usize,
    pub lower_inclusion: bool,
    pub upper_inclusion: bool,
    /// Other ideals that also sandwich `H` (should be empty).
    pub competing: Vec<Ideal>,
}

impl SandwichReport {
    pub fn holds(&self) -> bool {
        self.lower_inclusion && self.upper_inclusion && self.competing.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectnessReport {
    pub order_e: usize,
    pub order_commutator: usize,
    pub perfect: bool,
    /// `(|[H,E]|, |[[H,E],E]|, equal)` per sampled subgroup.
    pub hall_witt: Vec<(usize, usize, bool)>,
}

impl PerfectnessReport {
    pub fn holds(&self) -> bool {
        self.perfect && self.hall_witt.iter().all(|c| c.2)
    }
}

/// Normal-structure computations for `G(Φ, ℤ/n)` with cached subgroups.
pub struct NormalStructure<'g> {
    pub group: &'g Chevalley<Zmod>,
    relative: RefCell<HashMap<u128, Rc<ElementSet>>>,
    full: RefCell<Option<Rc<ElementSet>>>,
}

impl<'g> NormalStructure<'g> {
    pub fn new(group: &'g Chevalley<Zmod>) -> Self {
        NormalStructure { group, relative: RefCell::new(HashMap::new()), full: RefCell::new(None) }
    }

    fn cartan_type(&self) -> CartanType {
        self.group.rs().cartan_type
    }

    fn basic(&self) -> BasicRing {
        BasicRing::Mod(self.group.ring)
    }

    pub fn ideals(&self) -> Vec<Ideal> {
        Ideal::all_ideals(self.group.ring)
    }

    pub fn check_condition(&self) -> Result<()> {
        let v = check_condition(self.cartan_type(), &self.group.ring.descriptor())?;
        if v.holds {
            Ok(())
        } else {
            Err(Error::ConditionViolated(v.reason))
        }
    }

    /// `H = ⟨gens⟩^{E(R)}`.
    pub fn normal_closure(&self, gens: Vec<Element>) -> SubgroupHandle<'g> {
        SubgroupHandle::new(self.group, gens, true)
    }

    pub fn elementary(&self) -> SubgroupHandle<'g> {
        self.relative_elementary(&Ideal::whole(self.basic()))
    }

    /// `E(R, 𝔞)`: normal closure in `E(R)` of `x_α(a)`, `a ∈ 𝔞`.
    pub fn relative_elementary(&self, a: &Ideal) -> SubgroupHandle<'g> {
        let key = a.generator();
        if let Some(set) = self.relative.borrow().get(&key) {
            return SubgroupHandle::from_elements(self.group, (**set).clone(), true);
        }
        let gens: Vec<Element> = if a.is_zero() {
            Vec::new()
        } else {
            let t = a.generator() as u32;
            (0..self.group.rs().num_roots()).map(|r| self.group.x_elem(r, &t)).collect()
        };
        let h = SubgroupHandle::new(self.group, gens, true);
        if let Ok(set) = h.elements() {
            self.relative.borrow_mut().insert(key, set);
        }
        h
    }

    fn relative_set(&self, a: &Ideal) -> Result<Rc<ElementSet>> {
        self.relative_elementary(a).elements()
    }

    /// `G(R) = E(R)·T(R)`.
    pub fn full_group(&self) -> Result<Rc<ElementSet>> {
        if let Some(s) = self.full.borrow().as_ref() {
            return Ok(s.clone());
        }
        let mut gens = e_generators(self.group);
        gens.extend(torus_generators(self.group));
        let (set, _) = enumerate_closure(self.group, &gens, &[], ENUMERATION_CAP)?;
        let rc = Rc::new(set);
        *self.full.borrow_mut() = Some(rc.clone());
        Ok(rc)
    }

    /// Reduction of `x` modulo `𝔞` lies in the center of `G(R/𝔞)`.
    ///
    /// Products over `ℤ/n` reduce to products over `ℤ/m` for `m | n`, so the
    /// commutation test runs in `R` and compares entries modulo `m`.
    pub fn in_full_congruence(&self, x: &Element, a: &Ideal) -> bool {
        let m = a.generator() as u32;
        if m == 1 {
            return true;
        }
        let g = self.group;
        g.central_test_elements().expect("finite ring").iter().all(|y| {
            let xy = g.mul(x, y);
            let yx = g.mul(y, x);
            xy.entries().iter().zip(yx.entries()).all(|(p, q)| p % m == q % m)
        })
    }

    pub fn in_principal_congruence(&self, x: &Element, a: &Ideal) -> bool {
        let m = a.generator() as u32;
        let n = self.group.dim();
        (0..n).all(|i| (0..n).all(|j| {
            let v = *x.get(i, j) % m;
            if i == j { v == 1 % m } else { v == 0 }
        }))
    }

    /// `(G(R,𝔞), C(R,𝔞))` by filtering `G(R)`.
    pub fn congruence(&self, a: &Ideal) -> Result<(SubgroupHandle<'g>, SubgroupHandle<'g>)> {
        let all = self.full_group()?;
        let principal: ElementSet = all.iter().filter(|x| self.in_principal_congruence(x, a)).cloned().collect();
        let full: ElementSet = all.iter().filter(|x| self.in_full_congruence(x, a)).cloned().collect();
        Ok((
            SubgroupHandle::from_elements(self.group, principal, true),
            SubgroupHandle::from_elements(self.group, full, true),
        ))
    }

    /// Operational center `C(R)`: elements commuting with every `x_α(1)`.
    pub fn center(&self) -> Result<SubgroupHandle<'g>> {
        Ok(self.congruence(&Ideal::zero(self.basic()))?.1)
    }

    /// `q_α(H)` for every root; checks they agree and form an ideal.
    pub fn level(&self, h: &SubgroupHandle<'_>) -> Result<LevelData> {
        self.check_condition()?;
        let elems = h.elements()?;
        let g = self.group;
        let n = g.ring.modulus();
        let per_root: Vec<BTreeSet<u32>> = (0..g.rs().num_roots())
            .map(|r| (0..n).filter(|t| elems.contains(&g.x_elem(r, t))).collect())
            .collect();
        let first = per_root[0].clone();
        if let Some(bad) = per_root.iter().position(|q| *q != first) {
            return Err(Error::LevelInconsistent(format!(
                "q differs between roots 0 and {bad}: {first:?} vs {:?}",
                per_root[bad]
            )));
        }
        let gens: Vec<i128> = first.iter().map(|t| *t as i128).collect();
        let ideal = Ideal::from_generators(self.basic(), &gens);
        let as_set: BTreeSet<u32> = ideal.elements().expect("finite").into_iter().collect();
        if as_set != first {
            return Err(Error::LevelInconsistent(format!("{first:?} is not an ideal")));
        }
        Ok(LevelData { per_root, ideal })
    }

    fn sandwiches(&self, h: &ElementSet, h_gens: &[Element], b: &Ideal) -> bool {
        let g = self.group;
        let lower = if b.is_zero() {
            true
        } else {
            let t = b.generator() as u32;
            (0..g.rs().num_roots()).all(|r| h.contains(&g.x_elem(r, &t)))
        };
        lower && h_gens.iter().all(|x| self.in_full_congruence(x, b))
    }

    /// `E(R,𝔞) ≤ H ≤ C(R,𝔞)` for `𝔞 = q(H)`, and no other ideal works.
    pub fn sandwich_check(&self, h: &SubgroupHandle<'_>) -> Result<SandwichReport> {
        let level = self.level(h)?;
        let a = level.ideal;
        let elems = h.elements()?;
        let rel = self.relative_set(&a)?;
        let lower_inclusion = rel.iter().all(|x| elems.contains(x));
        let upper_inclusion = elems.iter().all(|x| self.in_full_congruence(x, &a));
        let gens = h.generating_set()?;
        let competing = self
            .ideals()
            .into_iter()
            .filter(|b| *b != a && self.sandwiches(&elems, &gens, b))
            .collect();
        let report = SandwichReport {
            ideal: a,
            order_h: elems.len(),
            order_relative_elementary: rel.len(),
            lower_inclusion,
            upper_inclusion,
            competing,
        };
        if !report.holds() {
            return Err(Error::SandwichFails(format!("{report:?}")));
        }
        Ok(report)
    }

    /// `[A, E(R)]`, closed under conjugation by `E(R)` and by `A`.
    pub fn commutator_with_e(&self, a_gens: &[Element]) -> SubgroupHandle<'g> {
        let g = self.group;
        let mut comms = Vec::new();
        for x in a_gens {
            for y in e_generators(g) {
                let c = g.comm(x, &y);
                if !c.is_identity(&g.ring) {
                    comms.push(c);
                }
            }
        }
        SubgroupHandle::new(g, comms, true).with_conjugators(a_gens.to_vec())
    }

    /// Perfectness of `E(R)` and `[[H,E],E] = [H,E]` for the samples.
    pub fn perfectness_and_hallwitt(&self, samples: &[SubgroupHandle<'_>]) -> Result<PerfectnessReport> {
        let ty = self.cartan_type();
        if matches!(ty, CartanType::B(2) | CartanType::C(2))
            && self.group.ring.descriptor().has_residue_field_f2()?
        {
            return Err(Error::HypothesisViolated(format!(
                "{ty} over {} has a residue field with two elements",
                self.group.ring.descriptor()
            )));
        }
        let e = self.elementary();
        let order_e = e.order()?;
        let comm = self.commutator_with_e(&e_generators(self.group));
        let order_commutator = comm.order()?;
        let mut hall_witt = Vec::new();
        for h in samples {
            let hg = h.generating_set()?;
            let he = self.commutator_with_e(&hg);
            let he_set = he.elements()?;
            let he_gens = he.generating_set()?;
            let hee = self.commutator_with_e(&he_gens);
            let hee_set = hee.elements()?;
            let equal = he_set.len() == hee_set.len() && hee_set.iter().all(|x| he_set.contains(x));
            hall_witt.push((he_set.len(), hee_set.len(), equal));
        }
        Ok(PerfectnessReport {
            order_e,
            order_commutator,
            perfect: order_e == order_commutator,
            hall_witt,
        })
    }

    /// `[E(R), G(R,𝔮)] = E(R,𝔮)`.
    pub fn commutation_formula_check(&self, q: &Ideal) -> Result<bool> {
        let (principal, _) = self.congruence(q)?;
        let gens = principal.generating_set()?;
        let lhs = self.commutator_with_e(&gens).elements()?;
        let rhs = self.relative_set(q)?;
        Ok(lhs.len() == rhs.len() && lhs.iter().all(|x| rhs.contains(x)))
    }
}

/// Short human-readable summary of an ideal lattice position.
pub fn describe_ideal(a: &Ideal) -> String {
    format!("{a}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(t: &str, n: u32) -> Chevalley<Zmod> {
        let r = if crate::ring::is_prime(n) { Zmod::prime_field(n) } else { Zmod::new(n) };
        Chevalley::for_type(CartanType::parse(t).unwrap(), r.unwrap()).unwrap()
    }

    #[test]
    fn small_orders() {
        let g = group("A2", 2);
        let ns = NormalStructure::new(&g);
        assert_eq!(ns.elementary().order().unwrap(), 168);
        assert_eq!(ns.full_group().unwrap().len(), 168);
        assert_eq!(ns.center().unwrap().order().unwrap(), 1);
    }

    #[test]
    fn trivial_levels() {
        let g = group("A2", 2);
        let ns = NormalStructure::new(&g);
        let e = ns.elementary();
        assert!(ns.level(&e).unwrap().ideal.is_whole());
        let triv = ns.normal_closure(Vec::new());
        assert!(ns.level(&triv).unwrap().ideal.is_zero());
        assert!(ns.sandwich_check(&triv).unwrap().holds());
        assert!(ns.sandwich_check(&e).unwrap().holds());
    }

    #[test]
    fn condition_enforced() {
        let g = group("B2", 2);
        let ns = NormalStructure::new(&g);
        assert!(matches!(ns.level(&ns.normal_closure(Vec::new())), Err(Error::ConditionViolated(_))));
        assert!(matches!(ns.perfectness_and_hallwitt(&[]), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn closure_respects_cap() {
        let g = group("A2", 3);
        let r = enumerate_closure(&g, &e_generators(&g), &[], 100);
        assert_eq!(r.unwrap_err(), Error::EnumerationCap(100));
    }
}
