//! Sparse multivariate polynomials over `ℤ` and the quotient by a single
//! relation.
//!
//! Monomials are ordered graded-lexicographically with `x_0 > x_1 > …`.
//! A single polynomial whose leading coefficient is `±1` is a Gröbner basis
//! of the ideal it generates, so reduction modulo it yields a canonical
//! normal form — this is how equality in `ℤ[x_ij]/(det − 1)` is decided.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{is_prime, CommRing, RingDescriptor, Zmod};

/// Exponent vector with trailing zeros trimmed; ordered by total degree,
/// then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    deg: u32,
    exps: Vec<u16>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(i: usize) -> Self {
        let mut exps = vec![0; i + 1];
        exps[i] = 1;
        Monomial { deg: 1, exps }
    }

    fn from_exps(mut exps: Vec<u16>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        let deg = exps.iter().map(|e| *e as u32).sum();
        Monomial { deg, exps }
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.exps.get(i).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.exps.len().max(other.exps.len());
        let exps = (0..n).map(|i| self.exponent(i) + other.exponent(i)).collect();
        Monomial { deg: self.deg + other.deg, exps }
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() <= other.exps.len()
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    fn div(&self, by: &Monomial) -> Monomial {
        let exps = (0..self.exps.len()).map(|i| self.exponent(i) - by.exponent(i)).collect();
        Monomial::from_exps(exps)
    }
}

/// Polynomial with `i128` coefficients; overflow panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, i128>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: i128) -> Self {
        let mut p = Poly::zero();
        if c != 0 {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn var(i: usize) -> Self {
        let mut p = Poly::zero();
        p.terms.insert(Monomial::var(i), 1);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &i128)> {
        self.terms.iter()
    }

    pub fn as_constant(&self) -> Option<i128> {
        match self.terms.len() {
            0 => Some(0),
            1 => self.terms.get(&Monomial::one()).copied(),
            _ => None,
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, |m| m.deg)
    }

    /// Number of variables actually occurring (highest index + 1).
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|m| m.exps.len()).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Monomial, &i128)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: i128) {
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                let v = o.get().checked_add(c).expect("coefficient overflow");
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i128) -> Poly {
        if k == 0 {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.checked_mul(k).expect("coefficient overflow")))
                .collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: i128) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m2, c2)| (m.mul(m2), c.checked_mul(*c2).expect("coefficient overflow")))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let (small, big) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut acc: BTreeMap<Monomial, i128> = BTreeMap::new();
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                let e = acc.entry(m1.mul(m2)).or_insert(0);
                *e = e
                    .checked_add(c1.checked_mul(*c2).expect("coefficient overflow"))
                    .expect("coefficient overflow");
            }
        }
        acc.retain(|_, c| *c != 0);
        Poly { terms: acc }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::constant(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Value at an integer point.
    pub fn eval_int(&self, point: &[i128]) -> i128 {
        let mut total = 0i128;
        for (m, c) in &self.terms {
            let mut v = *c;
            for (i, e) in m.exps.iter().enumerate() {
                for _ in 0..*e {
                    v = v.checked_mul(point[i]).expect("evaluation overflow");
                }
            }
            total = total.checked_add(v).expect("evaluation overflow");
        }
        total
    }

    /// Value modulo `p` at a point with entries in `[0, p)`; `p < 2^32`.
    pub fn eval_mod(&self, point: &[u64], p: u64) -> u64 {
        let mut total = 0u64;
        for (m, c) in &self.terms {
            let mut v = c.rem_euclid(p as i128) as u64;
            for (i, e) in m.exps.iter().enumerate() {
                for _ in 0..*e {
                    v = v * point[i] % p;
                }
            }
            total = (total + v) % p;
        }
        total
    }

    /// Substitutes `x_i ↦ images[i]`.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(*c);
            for (i, e) in m.exps.iter().enumerate() {
                if *e > 0 {
                    t = t.mul(&images[i].pow(*e as u32));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// `self / d` when the division is exact in `ℤ[x]`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (ld, lc) = d.leading()?;
        let (ld, lc) = (ld.clone(), *lc);
        let mut rest = self.clone();
        let mut q = Poly::zero();
        while let Some((lm, c)) = rest.leading() {
            if !ld.divides(lm) || c % lc != 0 {
                return None;
            }
            let m = lm.div(&ld);
            let k = c / lc;
            rest = rest.sub(&d.mul_term(&m, k));
            q.add_term(m, k);
        }
        Some(q)
    }

    /// Normal form modulo `rel`, whose leading coefficient must be `±1`.
    pub fn reduce_by(&self, rel: &Poly) -> Poly {
        let (lm, lc) = rel.leading().expect("nonzero relation");
        debug_assert!(lc.abs() == 1);
        let (lm, lc) = (lm.clone(), *lc);
        let tail = {
            let mut t = rel.clone();
            t.terms.remove(&lm);
            t
        };
        // lm ≡ -tail / lc
        let mut rest = self.clone();
        let mut out = Poly::zero();
        while let Some((m, c)) = rest.terms.iter().next_back().map(|(m, c)| (m.clone(), *c)) {
            rest.terms.remove(&m);
            if lm.divides(&m) {
                let q = m.div(&lm);
                rest = rest.add(&tail.mul_term(&q, -c * lc));
            } else {
                out.add_term(m, c);
            }
        }
        out
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .exps
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| {
                    let name = names.get(i).cloned().unwrap_or_else(|| format!("x{i}"));
                    if *e == 1 { name } else { format!("{name}^{e}") }
                })
                .collect();
            let mag = c.unsigned_abs();
            let sign = if *c < 0 { "-" } else if k > 0 { "+" } else { "" };
            if k > 0 {
                s.push(' ');
            }
            s.push_str(sign);
            if k > 0 {
                s.push(' ');
            }
            if mono.is_empty() {
                s.push_str(&format!("{mag}"));
            } else if mag == 1 {
                s.push_str(&mono.join("*"));
            } else {
                s.push_str(&format!("{mag}*{}", mono.join("*")));
            }
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

/// `ℤ[x_0, x_1, …]` without relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PolyRing;

impl CommRing for PolyRing {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        Poly::constant(1)
    }
    fn from_i64(&self, v: i64) -> Poly {
        Poly::constant(v as i128)
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.neg()
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b)
    }
    fn is_unit(&self, a: &Poly) -> bool {
        matches!(a.as_constant(), Some(1) | Some(-1))
    }
    fn inv(&self, a: &Poly) -> Option<Poly> {
        self.is_unit(a).then(|| a.clone())
    }
    fn elements(&self) -> Option<Vec<Poly>> {
        None
    }
    fn is_field(&self) -> bool {
        false
    }
}

/// `ℤ[vars]/(relation)`; elements are kept in normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyQuot {
    pub vars: Vec<String>,
    pub relation: Poly,
}

impl PolyQuot {
    pub fn new(vars: Vec<String>, relation: Poly) -> Result<Self> {
        match relation.leading() {
            Some((_, c)) if c.abs() == 1 => Ok(PolyQuot { vars, relation }),
            _ => Err(Error::InvalidRing("relation needs leading coefficient ±1".into())),
        }
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        p.reduce_by(&self.relation)
    }

    /// Exact equality in the quotient.
    pub fn equal(&self, a: &Poly, b: &Poly) -> bool {
        self.normal_form(&a.sub(b)).is_zero()
    }

    pub fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::PolyQuot {
            vars: self.vars.clone(),
            relations: vec![self.relation.display_with(&self.vars)],
        }
    }

    pub fn show(&self, p: &Poly) -> String {
        p.display_with(&self.vars)
    }
}

impl CommRing for PolyQuot {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        Poly::constant(1)
    }
    fn from_i64(&self, v: i64) -> Poly {
        Poly::constant(v as i128)
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.neg()
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.normal_form(&a.mul(b))
    }
    fn is_unit(&self, a: &Poly) -> bool {
        matches!(self.normal_form(a).as_constant(), Some(1) | Some(-1))
    }
    fn inv(&self, a: &Poly) -> Option<Poly> {
        self.is_unit(a).then(|| self.normal_form(a))
    }
    fn elements(&self) -> Option<Vec<Poly>> {
        None
    }
    fn is_field(&self) -> bool {
        false
    }
}

/// How an identity was established.
#[derive(Debug, Clone, PartialEq)]
pub enum EqualityPath {
    /// Exact comparison of normal forms.
    NormalForm,
    /// Random evaluation; `failure_bound` bounds the chance that a false
    /// identity survives every point.
    IdentityTesting(PitReport),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PitReport {
    pub points: usize,
    /// Points discarded because a denominator vanished there.
    pub skipped: usize,
    pub primes: Vec<u64>,
    pub mismatches: usize,
    pub degree_bound: u32,
    pub failure_bound: f64,
}

impl PitReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0 && self.points > 0
    }
}

/// Random prime in `[2^30, 2^31)`.
pub fn random_prime(rng: &mut impl RngCore) -> u64 {
    loop {
        let c = (1u64 << 30) | (rng.next_u64() & ((1 << 30) - 1)) | 1;
        if is_prime(c as u32) {
            return c;
        }
    }
}

/// Uniform-ish random point of `SL_n(GF(p))`.
pub fn random_sl_point(n: usize, p: u64, rng: &mut impl RngCore) -> Matrix<u32> {
    let field = Zmod::prime_field(p as u32).expect("prime");
    loop {
        let data: Vec<u32> = (0..n * n).map(|_| (rng.next_u64() % p) as u32).collect();
        let mut m = Matrix::from_vec(n, data);
        let det = crate::matrix::determinant(&field, &m);
        if let Some(inv) = field.inv(&det) {
            for j in 0..n {
                let v = field.mul(m.get(0, j), &inv);
                m.set(0, j, v);
            }
            return m;
        }
    }
}

/// Checks a polynomial identity (given as a closure that evaluates both
/// sides at a point of `SL_n(GF(p))`, or `None` when undefined there) at
/// `points` random points over random primes near `2^31`.
///
/// The bound uses `deg·n/p` per point: a nonzero function of degree `D` on
/// the degree-`n` hypersurface `det = 1` vanishes on at most a `D·n/p`
/// fraction of points.
pub fn identity_test(
    n: usize,
    points: usize,
    degree_bound: u32,
    rng: &mut impl RngCore,
    mut holds_at: impl FnMut(&Matrix<u32>, u64) -> Option<bool>,
) -> PitReport {
    let mut report = PitReport {
        points: 0,
        skipped: 0,
        primes: Vec::new(),
        mismatches: 0,
        degree_bound,
        failure_bound: 1.0,
    };
    let mut attempts = 0;
    while report.points < points && attempts < points * 10 {
        attempts += 1;
        let p = random_prime(rng);
        let pt = random_sl_point(n, p, rng);
        match holds_at(&pt, p) {
            None => report.skipped += 1,
            Some(ok) => {
                report.points += 1;
                report.primes.push(p);
                if !ok {
                    report.mismatches += 1;
                }
                let per_point = (degree_bound as f64 * n as f64 / p as f64).min(1.0);
                report.failure_bound *= per_point;
            }
        }
    }
    report
}
