//! Membership certificates for normal closures `⟨h⟩^{E(R)}`.
//!
//! A certificate is an expression tree over the seed `h` and elementary
//! words. Its *shape* alone proves that its value lies in the normal
//! closure of the seed; evaluating it proves which element that is.

use alloc::boxed::Box;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::chevalley::{Chevalley, Generator, GroupElement, GroupWord};
use crate::error::{Error, Result};
use crate::ring::{CommRing, Zmod};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Certificate<E> {
    Seed,
    Elementary(GroupWord<E>),
    Product(Vec<Certificate<E>>),
    Inverse(Box<Certificate<E>>),
    /// `body^by = by⁻¹ · body · by`.
    Conjugate { body: Box<Certificate<E>>, by: Box<Certificate<E>> },
    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    Commutator(Box<Certificate<E>>, Box<Certificate<E>>),
}

/// What a subtree is known to lie in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    /// Seed-free and built from elementary words only: lies in `E(R)`.
    Elementary,
    /// Lies in the normal closure of the seed.
    Closure,
    /// Neither.
    Unknown,
}

impl<E: Clone> Certificate<E> {
    pub fn elem(word: GroupWord<E>) -> Self {
        Certificate::Elementary(word)
    }

    pub fn inverse(self) -> Self {
        match self {
            Certificate::Inverse(inner) => *inner,
            c => Certificate::Inverse(Box::new(c)),
        }
    }

    pub fn conj(self, by: Certificate<E>) -> Self {
        Certificate::Conjugate { body: Box::new(self), by: Box::new(by) }
    }

    pub fn comm(a: Certificate<E>, b: Certificate<E>) -> Self {
        Certificate::Commutator(Box::new(a), Box::new(b))
    }

    pub fn product(items: Vec<Certificate<E>>) -> Self {
        Certificate::Product(items)
    }

    pub fn has_seed(&self) -> bool {
        match self {
            Certificate::Seed => true,
            Certificate::Elementary(_) => false,
            Certificate::Product(v) => v.iter().any(|c| c.has_seed()),
            Certificate::Inverse(c) => c.has_seed(),
            Certificate::Conjugate { body, by } => body.has_seed() || by.has_seed(),
            Certificate::Commutator(a, b) => a.has_seed() || b.has_seed(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Certificate::Seed | Certificate::Elementary(_) => 1,
            Certificate::Product(v) => 1 + v.iter().map(|c| c.depth()).max().unwrap_or(0),
            Certificate::Inverse(c) => 1 + c.depth(),
            Certificate::Conjugate { body, by } => 1 + body.depth().max(by.depth()),
            Certificate::Commutator(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    fn kind(&self) -> Kind {
        use Kind::*;
        let in_e_or_h = |k: Kind| k == Elementary || k == Closure;
        match self {
            Certificate::Seed => Closure,
            Certificate::Elementary(w) => {
                if w.is_elementary() {
                    Elementary
                } else {
                    Unknown
                }
            }
            Certificate::Product(v) => {
                let kinds: Vec<Kind> = v.iter().map(|c| c.kind()).collect();
                if kinds.iter().all(|k| *k == Elementary) {
                    Elementary
                } else if kinds.iter().all(|k| *k == Closure) {
                    Closure
                } else {
                    Unknown
                }
            }
            Certificate::Inverse(c) => c.kind(),
            Certificate::Conjugate { body, by } => match (body.kind(), by.kind()) {
                (Elementary, Elementary) => Elementary,
                (Closure, k) if in_e_or_h(k) => Closure,
                _ => Unknown,
            },
            Certificate::Commutator(a, b) => match (a.kind(), b.kind()) {
                (Elementary, Elementary) => Elementary,
                (ka, kb) if in_e_or_h(ka) && in_e_or_h(kb) => Closure,
                _ => Unknown,
            },
        }
    }

    /// True iff the tree's shape guarantees a value in `⟨seed⟩^{E(R)}`.
    pub fn syntactic_normal_closure(&self) -> bool {
        self.kind() == Kind::Closure
    }
}

impl<R: CommRing> Chevalley<R> {
    /// Homomorphic evaluation of a certificate.
    pub fn evaluate(
        &self,
        cert: &Certificate<R::Elem>,
        seed: Option<&GroupElement<R>>,
    ) -> Result<GroupElement<R>> {
        Ok(match cert {
            Certificate::Seed => seed
                .ok_or_else(|| Error::NotInGroup("certificate needs a seed".into()))?
                .clone(),
            Certificate::Elementary(w) => self.eval(w)?,
            Certificate::Product(v) => {
                let mut acc = self.identity();
                for c in v {
                    acc = self.mul(&acc, &self.evaluate(c, seed)?);
                }
                acc
            }
            Certificate::Inverse(c) => self.inv(&self.evaluate(c, seed)?),
            Certificate::Conjugate { body, by } => {
                self.conj(&self.evaluate(body, seed)?, &self.evaluate(by, seed)?)
            }
            Certificate::Commutator(a, b) => {
                self.comm(&self.evaluate(a, seed)?, &self.evaluate(b, seed)?)
            }
        })
    }

    /// Success proves `claimed ∈ ⟨seed⟩^{E(R)}`.
    pub fn check_certificate(
        &self,
        cert: &Certificate<R::Elem>,
        seed: &GroupElement<R>,
        claimed: &GroupElement<R>,
    ) -> Result<bool> {
        if !cert.syntactic_normal_closure() {
            return Err(Error::NotNormalClosureShape);
        }
        Ok(self.evaluate(cert, Some(seed))? == *claimed)
    }
}

/// An element of `H` together with the certificate proving it.
#[derive(Debug, Clone)]
pub struct Witness<R: CommRing> {
    pub value: GroupElement<R>,
    pub cert: Certificate<R::Elem>,
}

impl<R: CommRing> Witness<R> {
    pub fn seed(value: GroupElement<R>) -> Self {
        Witness { value, cert: Certificate::Seed }
    }
}

impl<R: CommRing> Chevalley<R> {
    pub fn w_inverse(&self, a: &Witness<R>) -> Witness<R> {
        Witness { value: self.inv(&a.value), cert: a.cert.clone().inverse() }
    }

    /// `a^e` for an elementary word `e`.
    pub fn w_conj(&self, a: &Witness<R>, e: &GroupWord<R::Elem>) -> Result<Witness<R>> {
        let m = self.eval(e)?;
        Ok(Witness {
            value: self.conj(&a.value, &m),
            cert: a.cert.clone().conj(Certificate::Elementary(e.clone())),
        })
    }

    /// `[e, a]` for an elementary word `e`.
    pub fn w_comm_left(&self, e: &GroupWord<R::Elem>, a: &Witness<R>) -> Result<Witness<R>> {
        let m = self.eval(e)?;
        Ok(Witness {
            value: self.comm(&m, &a.value),
            cert: Certificate::comm(Certificate::Elementary(e.clone()), a.cert.clone()),
        })
    }

    /// `[a, e]` for an elementary word `e`.
    pub fn w_comm_right(&self, a: &Witness<R>, e: &GroupWord<R::Elem>) -> Result<Witness<R>> {
        let m = self.eval(e)?;
        Ok(Witness {
            value: self.comm(&a.value, &m),
            cert: Certificate::comm(a.cert.clone(), Certificate::Elementary(e.clone())),
        })
    }

    pub fn w_product(&self, items: &[&Witness<R>]) -> Witness<R> {
        Witness {
            value: self.product(items.iter().map(|w| &w.value)),
            cert: Certificate::Product(items.iter().map(|w| w.cert.clone()).collect()),
        }
    }
}

impl Chevalley<Zmod> {
    /// Random word of `len` generators, mixing `x_α(t)`, `w_α(ε)` and
    /// `h_α(ε)` (ε a unit) about 3:1:1.
    pub fn random_word(&self, rng: &mut impl RngCore, len: usize) -> GroupWord<u32> {
        let n = self.ring.modulus() as u64;
        let nroots = self.rs().num_roots() as u64;
        let units: Vec<u32> = (1..n as u32).filter(|x| self.ring.is_unit(x)).collect();
        let mut word = GroupWord::new();
        for _ in 0..len {
            let root = (rng.next_u64() % nroots) as usize;
            let eps = units[(rng.next_u64() % units.len() as u64) as usize];
            word.push(match rng.next_u32() % 5 {
                0 => Generator::W { root, eps },
                1 => Generator::H { root, eps },
                _ => Generator::X { root, t: (rng.next_u64() % n) as u32 },
            });
        }
        word
    }
}
