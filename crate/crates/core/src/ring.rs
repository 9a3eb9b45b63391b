//! Commutative rings used by the group layer.
//!
//! Matrices and group elements are generic over [`CommRing`]. Two concrete
//! rings carry almost all of the work: [`Integers`] (exact `i128`
//! arithmetic, overflow panics) and [`Zmod`] (residues modulo `n`, with a
//! flag for prime fields). The polynomial quotient ring used for the
//! generic element lives in [`crate::poly`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::hash::Hash;

use crate::error::{Error, Result};
use crate::roots::CartanType;

/// Exact commutative ring with unit.
pub trait CommRing: Clone + fmt::Debug + PartialEq {
    type Elem: Clone + Eq + Hash + Ord + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_unit(&self, a: &Self::Elem) -> bool;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// All elements, when the ring is finite and enumerable.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    fn is_field(&self) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Division with remainder on a Euclidean measure, if the ring has one.
    ///
    /// Used by matrix inversion: repeated steps on a column yield a unit
    /// pivot whenever the matrix is invertible.
    fn div_rem(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<(Self::Elem, Self::Elem)> {
        None
    }

    /// Euclidean size; zero exactly for the zero element.
    fn norm(&self, _a: &Self::Elem) -> u128 {
        0
    }

    /// Additive generators used when a statement quantifies over all of `R`
    /// but the ring is infinite (`{1}` for the integers).
    fn parameter_set(&self) -> Vec<Self::Elem> {
        self.elements()
            .map(|els| els.into_iter().filter(|x| !self.is_zero(x)).collect())
            .unwrap_or_else(|| alloc::vec![self.one()])
    }
}

/// The ring of integers with `i128` values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Integers;

impl CommRing for Integers {
    type Elem = i128;

    fn zero(&self) -> i128 {
        0
    }
    fn one(&self) -> i128 {
        1
    }
    fn from_i64(&self, v: i64) -> i128 {
        v as i128
    }
    fn add(&self, a: &i128, b: &i128) -> i128 {
        a.checked_add(*b).expect("integer overflow")
    }
    fn neg(&self, a: &i128) -> i128 {
        -a
    }
    fn mul(&self, a: &i128, b: &i128) -> i128 {
        a.checked_mul(*b).expect("integer overflow")
    }
    fn is_unit(&self, a: &i128) -> bool {
        *a == 1 || *a == -1
    }
    fn inv(&self, a: &i128) -> Option<i128> {
        self.is_unit(a).then_some(*a)
    }
    fn elements(&self) -> Option<Vec<i128>> {
        None
    }
    fn is_field(&self) -> bool {
        false
    }
    fn div_rem(&self, a: &i128, b: &i128) -> Option<(i128, i128)> {
        if *b == 0 {
            return None;
        }
        Some((a.div_euclid(*b), a.rem_euclid(*b)))
    }
    fn norm(&self, a: &i128) -> u128 {
        a.unsigned_abs()
    }
}

/// Residues modulo `n`; `field` is set only for prime moduli built through
/// [`Zmod::prime_field`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Zmod {
    n: u32,
    field: bool,
}

impl Zmod {
    /// `ℤ/nℤ` for `n ≥ 2`.
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRing(format!("modulus {n} must be at least 2")));
        }
        Ok(Zmod { n, field: false })
    }

    /// `GF(p)`; rejects composite `p`.
    pub fn prime_field(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(Zmod { n: p, field: true })
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    /// Canonical residue of an integer.
    pub fn reduce(&self, v: i128) -> u32 {
        v.rem_euclid(self.n as i128) as u32
    }

    pub fn descriptor(&self) -> RingDescriptor {
        if self.field {
            RingDescriptor::PrimeField(self.n)
        } else {
            RingDescriptor::IntegersMod(self.n)
        }
    }
}

impl CommRing for Zmod {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.reduce(v as i128)
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.n as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.n - a
        }
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + self.n as u64 - *b as u64) % self.n as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.n as u64) as u32
    }
    fn is_unit(&self, a: &u32) -> bool {
        gcd(*a as u64, self.n as u64) == 1
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        let (g, x, _) = ext_gcd(*a as i128, self.n as i128);
        (g == 1).then(|| self.reduce(x))
    }
    fn elements(&self) -> Option<Vec<u32>> {
        Some((0..self.n).collect())
    }
    fn is_field(&self) -> bool {
        self.field
    }
    fn div_rem(&self, a: &u32, b: &u32) -> Option<(u32, u32)> {
        if *b == 0 {
            return None;
        }
        Some((a / b, a % b))
    }
    fn norm(&self, a: &u32) -> u128 {
        *a as u128
    }
    fn parameter_set(&self) -> Vec<u32> {
        if self.field {
            (1..self.n).collect()
        } else {
            alloc::vec![1]
        }
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended Euclid: `(g, x, y)` with `a·x + b·y = g ≥ 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Serializable description of a ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingDescriptor {
    Integers,
    IntegersMod(u32),
    PrimeField(u32),
    PolyQuot {
        vars: Vec<String>,
        relations: Vec<String>,
    },
}

impl RingDescriptor {
    /// Parses the short forms `int`, `mod:N`, `gf:P`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "int" || s == "Z" {
            return Ok(RingDescriptor::Integers);
        }
        let (kind, num) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidRing(format!("cannot parse ring `{s}`")))?;
        let n: u32 = num
            .trim()
            .parse()
            .map_err(|_| Error::InvalidRing(format!("bad modulus in `{s}`")))?;
        match kind.trim() {
            "mod" => Zmod::new(n).map(|_| RingDescriptor::IntegersMod(n)),
            "gf" => Zmod::prime_field(n).map(|_| RingDescriptor::PrimeField(n)),
            other => Err(Error::InvalidRing(format!("unknown ring kind `{other}`"))),
        }
    }

    /// The finite residue ring, if this descriptor denotes one.
    pub fn zmod(&self) -> Result<Zmod> {
        match self {
            RingDescriptor::IntegersMod(n) => Zmod::new(*n),
            RingDescriptor::PrimeField(p) => Zmod::prime_field(*p),
            other => Err(Error::Unsupported(format!("{other} is not a residue ring"))),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, RingDescriptor::IntegersMod(_) | RingDescriptor::PrimeField(_))
    }

    fn two_three_unit(&self, k: u64) -> Result<bool> {
        match self {
            RingDescriptor::Integers => Ok(false),
            RingDescriptor::IntegersMod(n) | RingDescriptor::PrimeField(n) => {
                Ok(gcd(k, *n as u64) == 1)
            }
            RingDescriptor::PolyQuot { .. } => {
                Err(Error::Unsupported("unit test in a polynomial quotient".into()))
            }
        }
    }

    /// Whether some residue field of the ring has two elements.
    pub fn has_residue_field_f2(&self) -> Result<bool> {
        match self {
            RingDescriptor::Integers => Ok(true),
            RingDescriptor::IntegersMod(n) | RingDescriptor::PrimeField(n) => Ok(n % 2 == 0),
            RingDescriptor::PolyQuot { .. } => {
                Err(Error::Unsupported("residue fields of a polynomial quotient".into()))
            }
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Integers => write!(f, "int"),
            RingDescriptor::IntegersMod(n) => write!(f, "mod:{n}"),
            RingDescriptor::PrimeField(p) => write!(f, "gf:{p}"),
            RingDescriptor::PolyQuot { vars, relations } => {
                write!(f, "Z[{}]/({})", vars.join(","), relations.join(","))
            }
        }
    }
}

/// Integer-backed rings addressable through dynamic [`RingElement`]s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasicRing {
    Integers,
    Mod(Zmod),
}

impl BasicRing {
    pub fn from_descriptor(d: &RingDescriptor) -> Result<Self> {
        match d {
            RingDescriptor::Integers => Ok(BasicRing::Integers),
            RingDescriptor::PolyQuot { .. } => {
                Err(Error::Unsupported("dynamic elements of a polynomial quotient".into()))
            }
            _ => d.zmod().map(BasicRing::Mod),
        }
    }

    pub fn descriptor(&self) -> RingDescriptor {
        match self {
            BasicRing::Integers => RingDescriptor::Integers,
            BasicRing::Mod(z) => z.descriptor(),
        }
    }

    pub fn element(&self, v: i128) -> RingElement {
        let value = match self {
            BasicRing::Integers => v,
            BasicRing::Mod(z) => z.reduce(v) as i128,
        };
        RingElement { ring: *self, value }
    }
}

/// An element together with the ring it lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RingElement {
    pub ring: BasicRing,
    pub value: i128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
    IsUnit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithValue {
    Elem(RingElement),
    Bool(bool),
}

/// Checked arithmetic on dynamic elements.
pub fn arith(op: ArithOp, x: &RingElement, y: Option<&RingElement>) -> Result<ArithValue> {
    let binary = |y: Option<&RingElement>| -> Result<RingElement> {
        let y = y.ok_or_else(|| Error::Unsupported("binary operation needs two operands".into()))?;
        if y.ring != x.ring {
            return Err(Error::MixedRings);
        }
        Ok(*y)
    };
    let r = x.ring;
    let out = match op {
        ArithOp::Add => {
            let y = binary(y)?;
            ArithValue::Elem(match r {
                BasicRing::Integers => r.element(Integers.add(&x.value, &y.value)),
                BasicRing::Mod(z) => r.element(z.add(&(x.value as u32), &(y.value as u32)) as i128),
            })
        }
        ArithOp::Mul => {
            let y = binary(y)?;
            ArithValue::Elem(match r {
                BasicRing::Integers => r.element(Integers.mul(&x.value, &y.value)),
                BasicRing::Mod(z) => r.element(z.mul(&(x.value as u32), &(y.value as u32)) as i128),
            })
        }
        ArithOp::Neg => ArithValue::Elem(r.element(-x.value)),
        ArithOp::IsUnit => ArithValue::Bool(match r {
            BasicRing::Integers => Integers.is_unit(&x.value),
            BasicRing::Mod(z) => z.is_unit(&(x.value as u32)),
        }),
        ArithOp::Inv => {
            let inv = match r {
                BasicRing::Integers => Integers.inv(&x.value),
                BasicRing::Mod(z) => z.inv(&(x.value as u32)).map(|v| v as i128),
            };
            let v = inv.ok_or_else(|| Error::NotAUnit(format!("{}", x.value)))?;
            ArithValue::Elem(r.element(v))
        }
    };
    Ok(out)
}

/// Principal ideal of `ℤ` or `ℤ/n`, stored by its canonical generator
/// (the non-negative gcd; for `ℤ/n` a divisor of `n`, with `n` meaning `(0)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ideal {
    pub ring: BasicRing,
    generator: u128,
}

impl Ideal {
    pub fn from_generators(ring: BasicRing, gens: &[i128]) -> Self {
        let mut g = match ring {
            BasicRing::Integers => 0u64,
            BasicRing::Mod(z) => z.modulus() as u64,
        };
        for x in gens {
            g = gcd(g, x.unsigned_abs() as u64);
        }
        Ideal { ring, generator: g as u128 }
    }

    pub fn zero(ring: BasicRing) -> Self {
        Self::from_generators(ring, &[])
    }

    pub fn whole(ring: BasicRing) -> Self {
        Self::from_generators(ring, &[1])
    }

    /// Canonical generator (`n` for the zero ideal of `ℤ/n`).
    pub fn generator(&self) -> u128 {
        self.generator
    }

    pub fn is_zero(&self) -> bool {
        match self.ring {
            BasicRing::Integers => self.generator == 0,
            BasicRing::Mod(z) => self.generator == z.modulus() as u128,
        }
    }

    pub fn is_whole(&self) -> bool {
        self.generator == 1
    }

    pub fn contains(&self, x: i128) -> bool {
        match self.ring {
            BasicRing::Integers => {
                if self.generator == 0 {
                    x == 0
                } else {
                    x.unsigned_abs() % self.generator == 0
                }
            }
            BasicRing::Mod(z) => (z.reduce(x) as u128) % self.generator == 0,
        }
    }

    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        other.contains(self.generator as i128)
    }

    /// Elements of the ideal, for finite rings.
    pub fn elements(&self) -> Option<Vec<u32>> {
        match self.ring {
            BasicRing::Integers => None,
            BasicRing::Mod(z) => Some(
                (0..z.modulus())
                    .filter(|x| (*x as u128) % self.generator == 0)
                    .collect(),
            ),
        }
    }

    /// All ideals of a residue ring, ordered by generator.
    pub fn all_ideals(z: Zmod) -> Vec<Ideal> {
        let n = z.modulus();
        (1..=n)
            .filter(|d| n % d == 0)
            .map(|d| Ideal { ring: BasicRing::Mod(z), generator: d as u128 })
            .collect()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "(0)")
        } else {
            write!(f, "({})", self.generator)
        }
    }
}

/// Jacobson radical of `ℤ`, `ℤ/n` or `GF(p)`.
pub fn jacobson_radical(ring: &RingDescriptor) -> Result<Ideal> {
    let basic = BasicRing::from_descriptor(ring)?;
    match basic {
        BasicRing::Integers => Ok(Ideal::zero(basic)),
        BasicRing::Mod(z) => {
            let rad: u64 = prime_divisors(z.modulus() as u64).into_iter().product();
            Ok(Ideal::from_generators(basic, &[rad as i128]))
        }
    }
}

/// Outcome of the structure-constant invertibility check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionVerdict {
    pub holds: bool,
    pub reason: String,
}

/// Doubly laced types need `2 ∈ R*`; `G2` needs `3 ∈ R*` and no residue
/// field with two elements; simply laced types always pass.
pub fn check_condition(ty: CartanType, ring: &RingDescriptor) -> Result<ConditionVerdict> {
    let verdict = |holds: bool, reason: String| Ok(ConditionVerdict { holds, reason });
    if ty.is_simply_laced() {
        return verdict(true, format!("{ty} is simply laced"));
    }
    if ty == CartanType::G2 {
        if !ring.two_three_unit(3)? {
            return verdict(false, format!("3 is not a unit in {ring}"));
        }
        if ring.has_residue_field_f2()? {
            return verdict(false, format!("{ring} has a residue field with two elements"));
        }
        return verdict(true, format!("3 is a unit and {ring} has no residue field F2"));
    }
    if ring.two_three_unit(2)? {
        verdict(true, format!("2 is a unit in {ring}"))
    } else {
        verdict(false, format!("{ty} is doubly laced and 2 is not a unit in {ring}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn m(n: u32) -> BasicRing {
        BasicRing::Mod(Zmod::new(n).unwrap())
    }

    #[test]
    fn units_and_inverses() {
        let r = m(9);
        let two = r.element(2);
        assert_eq!(arith(ArithOp::IsUnit, &two, None).unwrap(), ArithValue::Bool(true));
        assert_eq!(arith(ArithOp::Inv, &two, None).unwrap(), ArithValue::Elem(r.element(5)));
        let r4 = m(4);
        assert_eq!(
            arith(ArithOp::IsUnit, &r4.element(2), None).unwrap(),
            ArithValue::Bool(false)
        );
        assert!(matches!(arith(ArithOp::Inv, &r4.element(2), None), Err(Error::NotAUnit(_))));
        let gf7 = BasicRing::Mod(Zmod::prime_field(7).unwrap());
        assert_eq!(
            arith(ArithOp::Inv, &gf7.element(3), None).unwrap(),
            ArithValue::Elem(gf7.element(5))
        );
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = m(4).element(1);
        let b = m(9).element(1);
        assert_eq!(arith(ArithOp::Add, &a, Some(&b)), Err(Error::MixedRings));
    }

    #[test]
    fn invalid_moduli() {
        assert!(Zmod::new(1).is_err());
        assert!(Zmod::prime_field(9).is_err());
        assert!(RingDescriptor::parse("gf:4").is_err());
        assert_eq!(RingDescriptor::parse("mod:4").unwrap(), RingDescriptor::IntegersMod(4));
    }

    #[test]
    fn radicals() {
        let j = jacobson_radical(&RingDescriptor::IntegersMod(4)).unwrap();
        assert_eq!(j.generator(), 2);
        let j = jacobson_radical(&RingDescriptor::PrimeField(5)).unwrap();
        assert!(j.is_zero());
        let j = jacobson_radical(&RingDescriptor::Integers).unwrap();
        assert!(j.is_zero());
        assert!(jacobson_radical(&RingDescriptor::PolyQuot { vars: vec![], relations: vec![] })
            .is_err());
    }

    #[test]
    fn radical_of_z12_is_intersection_of_maximal_ideals() {
        // maximal ideals of Z/12 are (2) and (3); intersect by brute force
        let r = m(12);
        let maximal: Vec<Ideal> = Ideal::all_ideals(Zmod::new(12).unwrap())
            .into_iter()
            .filter(|i| is_prime(i.generator() as u32))
            .collect();
        let inter: Vec<i128> =
            (0..12).filter(|x| maximal.iter().all(|i| i.contains(*x))).collect();
        let j = jacobson_radical(&RingDescriptor::IntegersMod(12)).unwrap();
        assert_eq!(j.generator(), 6);
        for x in 0..12 {
            assert_eq!(j.contains(x), inter.contains(&x));
        }
        assert_eq!(j.ring, r);
    }

    #[test]
    fn conditions() {
        let c = |t, r| check_condition(t, &r).unwrap().holds;
        assert!(c(CartanType::B(2), RingDescriptor::IntegersMod(9)));
        assert!(!c(CartanType::G2, RingDescriptor::IntegersMod(6)));
        assert!(c(CartanType::A(2), RingDescriptor::IntegersMod(4)));
        assert!(!c(CartanType::B(2), RingDescriptor::IntegersMod(4)));
        assert!(c(CartanType::G2, RingDescriptor::IntegersMod(25)));
        assert!(!c(CartanType::F4, RingDescriptor::Integers));
        assert!(c(CartanType::C(3), RingDescriptor::PrimeField(3)));
    }

    #[test]
    fn unit_partition_by_enumeration() {
        for n in 2..40u32 {
            let z = Zmod::new(n).unwrap();
            let els = z.elements().unwrap();
            let units = els.iter().filter(|x| z.is_unit(x)).count();
            // units are exactly the elements with a multiplicative inverse
            let brute =
                els.iter().filter(|x| els.iter().any(|y| z.mul(x, y) == 1)).count();
            assert_eq!(units, brute);
            for x in &els {
                if let Some(y) = z.inv(x) {
                    assert_eq!(z.mul(x, &y), 1);
                }
            }
        }
    }

    #[test]
    fn ideal_membership_matches_closure() {
        for n in [4u32, 6, 9, 12] {
            let z = Zmod::new(n).unwrap();
            for g in 0..n {
                let ideal = Ideal::from_generators(BasicRing::Mod(z), &[g as i128]);
                // closure of {g} under addition and multiplication by ring elements
                let mut set = vec![0u32];
                loop {
                    let mut grew = false;
                    for a in set.clone() {
                        for r in 0..n {
                            for cand in [z.add(&a, &z.mul(&r, &g))] {
                                if !set.contains(&cand) {
                                    set.push(cand);
                                    grew = true;
                                }
                            }
                        }
                    }
                    if !grew {
                        break;
                    }
                }
                for x in 0..n {
                    assert_eq!(ideal.contains(x as i128), set.contains(&x), "n={n} g={g} x={x}");
                }
            }
        }
    }
}
