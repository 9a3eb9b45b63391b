//! Chevalley basis, adjoint representation and the Steinberg generators.
//!
//! Structure constants `N(α, β)` are fixed by the extraspecial-pair method:
//! for each positive non-simple root the pair `(α, β)` with `α` of least
//! index is given `N = +(p + 1)`, `N(-α, -β) = -N(α, β)` and the cyclic
//! relations determine the mixed pairs, and the remaining signs of special
//! pairs are chosen as the first assignment (in binary order, `+` first)
//! for which the bracket satisfies the Jacobi identity.
//!
//! The adjoint basis is `e_β` for positive roots by decreasing height, then
//! `h_1, …, h_l`, then `e_β` for negative roots by decreasing height. Every
//! `x_α(t)` with `α > 0` is upper unitriangular in this basis.
//!
//! Weyl representatives: for a reduced word `w = s_{i_1} ⋯ s_{i_k}` the
//! representative is `ẇ = w_{i_k}(1) ⋯ w_{i_1}(1)`, so that
//! `x_α(r)^ẇ = ẇ⁻¹ x_α(r) ẇ = x_{w(α)}(±r)`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{CommRing, Integers};
use crate::roots::{CartanType, RootSystem, WeylElement};

/// A vector of the adjoint basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisVector {
    Root(usize),
    Cartan(usize),
}

/// One term `x_{iα+jβ}(C_ij t^i u^j)` of the commutator formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CommutatorTerm {
    pub i: u32,
    pub j: u32,
    pub root: usize,
    pub coeff: i64,
}

#[derive(Debug, Clone)]
pub struct StructureTable {
    pub rs: RootSystem,
    /// `n[a][b] = N(a, b)`, zero when `a + b` is not a root.
    n: Vec<Vec<i64>>,
    basis: Vec<BasisVector>,
    pos_root: Vec<usize>,
    pos_cartan: Vec<usize>,
    /// `divided[a][k] = (ad e_a)^k / k!` over the integers.
    divided: Vec<Vec<Matrix<i128>>>,
    /// For each root `γ` a root `δ` with `γ + δ ∈ Φ` and `N(γ, δ) = ±1`.
    unit_witness: Vec<usize>,
    commutators: Vec<Vec<Vec<CommutatorTerm>>>,
}

impl StructureTable {
    pub fn for_type(ty: CartanType) -> Result<Self> {
        Self::build(RootSystem::build(ty)?)
    }

    pub fn build(rs: RootSystem) -> Result<Self> {
        let nroots = rs.num_roots();
        let npos = rs.num_positive();
        let mut base = vec![vec![0i64; nroots]; nroots];
        let mut free = Vec::new();
        for xi in rs.rank()..npos {
            let mut first = true;
            for a in 0..npos {
                for b in (a + 1)..npos {
                    if rs.root_sum(a, b) != Some(xi) {
                        continue;
                    }
                    let (p, _) = rs.alpha_string(a, b);
                    base[a][b] = (p + 1) as i64;
                    if first {
                        first = false;
                    } else {
                        free.push((a, b));
                    }
                }
            }
        }
        let mut chosen = None;
        for mask in 0u64..(1u64 << free.len()) {
            let mut n = base.clone();
            for (k, &(a, b)) in free.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    n[a][b] = -n[a][b];
                }
            }
            complete_constants(&rs, &mut n);
            if jacobi_holds(&rs, &n) {
                chosen = Some(n);
                break;
            }
        }
        let n = chosen.ok_or_else(|| {
            Error::UnsupportedType(format!("no consistent signs for {}", rs.cartan_type))
        })?;

        let mut basis = Vec::new();
        let mut pos: Vec<usize> = (0..npos).collect();
        pos.sort_by_key(|&r| (-rs.height(r), r));
        basis.extend(pos.iter().map(|&r| BasisVector::Root(r)));
        basis.extend((0..rs.rank()).map(BasisVector::Cartan));
        let mut neg: Vec<usize> = (npos..nroots).collect();
        neg.sort_by_key(|&r| (-rs.height(r), r));
        basis.extend(neg.iter().map(|&r| BasisVector::Root(r)));
        let mut pos_root = vec![0; nroots];
        let mut pos_cartan = vec![0; rs.rank()];
        for (k, b) in basis.iter().enumerate() {
            match *b {
                BasisVector::Root(r) => pos_root[r] = k,
                BasisVector::Cartan(i) => pos_cartan[i] = k,
            }
        }

        let mut table = StructureTable {
            rs,
            n,
            basis,
            pos_root,
            pos_cartan,
            divided: Vec::new(),
            unit_witness: Vec::new(),
            commutators: Vec::new(),
        };
        table.divided = (0..nroots).map(|a| table.divided_powers(a)).collect();
        table.unit_witness = (0..nroots)
            .map(|g| {
                (0..nroots)
                    .find(|&d| table.rs.root_sum(g, d).is_some() && table.n[g][d].abs() == 1)
                    .expect("irreducible rank >= 2 has unit structure constants")
            })
            .collect();
        table.commutators = (0..nroots)
            .map(|a| (0..nroots).map(|b| table.commutator_terms(a, b)).collect())
            .collect();
        Ok(table)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn pos_root(&self, r: usize) -> usize {
        self.pos_root[r]
    }

    pub fn pos_cartan(&self, i: usize) -> usize {
        self.pos_cartan[i]
    }

    /// `N(α, β)`; zero unless `α + β` is a root.
    pub fn n(&self, a: usize, b: usize) -> i64 {
        self.n[a][b]
    }

    pub fn unit_witness(&self, g: usize) -> usize {
        self.unit_witness[g]
    }

    /// Terms of `[x_α(t), x_β(u)] = Π x_{iα+jβ}(C_ij t^i u^j)` in product
    /// order (increasing `i + j`, then increasing `i`).
    pub fn commutator_coeffs(&self, a: usize, b: usize) -> &[CommutatorTerm] {
        &self.commutators[a][b]
    }

    /// Coefficients of `h_α` in terms of `h_1, …, h_l`.
    pub fn coroot_coeffs(&self, a: usize) -> Vec<i64> {
        let na = self.rs.norm2(a);
        (0..self.rs.rank())
            .map(|k| self.rs.coords(a)[k] as i64 * self.rs.norm2(k) / na)
            .collect()
    }

    /// `ad(e_a)` as an integer matrix in the adjoint basis.
    pub fn ad_matrix(&self, a: usize) -> Matrix<i128> {
        let dim = self.dim();
        let mut m = Matrix::zero(&Integers, dim);
        for (col, bv) in self.basis.iter().enumerate() {
            for (out, c) in bracket_basis(&self.rs, &self.n, BasisVector::Root(a), *bv) {
                let row = match out {
                    BasisVector::Root(r) => self.pos_root[r],
                    BasisVector::Cartan(i) => self.pos_cartan[i],
                };
                m.set(row, col, c as i128);
            }
        }
        m
    }

    fn divided_powers(&self, a: usize) -> Vec<Matrix<i128>> {
        let dim = self.dim();
        let ad = self.ad_matrix(a);
        let mut out = vec![Matrix::identity(&Integers, dim)];
        let mut k = 1i128;
        loop {
            let prev = out.last().expect("nonempty");
            let next = prev.mul(&Integers, &ad);
            if next.is_identity(&Integers) || next.entries().iter().all(|x| *x == 0) {
                break;
            }
            assert!(
                next.entries().iter().all(|x| x % k == 0),
                "divided power of ad e_a is not integral"
            );
            out.push(next.map(|x| x / k));
            k += 1;
        }
        out
    }

    /// Degree of nilpotency bound: `(ad e_α)^k ≠ 0` for `k < len`.
    pub fn exp_terms(&self, a: usize) -> usize {
        self.divided[a].len()
    }

    fn commutator_terms(&self, a: usize, b: usize) -> Vec<CommutatorTerm> {
        let rs = &self.rs;
        if a == b || rs.negate(a) == b {
            return Vec::new();
        }
        let mut combos = Vec::new();
        for s in 2..=5u32 {
            for i in 1..s {
                let j = s - i;
                if let Some(root) = rs.combination(i as i32, a, j as i32, b) {
                    combos.push((i, j, root));
                }
            }
        }
        if combos.is_empty() {
            return Vec::new();
        }
        // read C_ij off the integer commutator at t = u = 1
        let z = Integers;
        let xa = self.x_matrix(&z, a, &1);
        let xb = self.x_matrix(&z, b, &1);
        let xai = self.x_matrix(&z, a, &-1);
        let xbi = self.x_matrix(&z, b, &-1);
        let mut m = xai.mul(&z, &xbi).mul(&z, &xa).mul(&z, &xb);
        let mut terms = Vec::new();
        for &(i, j, root) in &combos {
            let c = self.read_parameter(&z, &m, root);
            let strip = self.x_matrix(&z, root, &-c);
            m = strip.mul(&z, &m);
            terms.push(CommutatorTerm { i, j, root, coeff: c as i64 });
        }
        debug_assert!(m.is_identity(&z), "commutator not in the span of iα+jβ");
        terms.retain(|t| t.coeff != 0);
        terms
    }

    /// Parameter of the `x_γ` factor via the unit-witness entry.
    pub(crate) fn read_parameter<R: CommRing>(
        &self,
        ring: &R,
        m: &Matrix<R::Elem>,
        gamma: usize,
    ) -> R::Elem {
        let d = self.unit_witness[gamma];
        let up = self.rs.root_sum(gamma, d).expect("witness sum is a root");
        let entry = m.get(self.pos_root[up], self.pos_root[d]);
        ring.mul(entry, &ring.from_i64(self.n[gamma][d]))
    }

    /// `exp(t ad e_a)` over any ring.
    pub fn x_matrix<R: CommRing>(&self, ring: &R, a: usize, t: &R::Elem) -> Matrix<R::Elem> {
        let dim = self.dim();
        let mut out = Matrix::identity(ring, dim);
        let mut tk = ring.one();
        for dk in self.divided[a].iter().skip(1) {
            tk = ring.mul(&tk, t);
            for i in 0..dim {
                for j in 0..dim {
                    let c = *dk.get(i, j);
                    if c != 0 {
                        let v = ring.add(out.get(i, j), &ring.mul(&ring.from_i64(c as i64), &tk));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }
}

/// Fills antisymmetric, negative and mixed pairs from the positive pairs
/// `a < b` already present in `n`.
fn complete_constants(rs: &RootSystem, n: &mut [Vec<i64>]) {
    let npos = rs.num_positive();
    let nroots = rs.num_roots();
    for a in 0..npos {
        for b in (a + 1)..npos {
            n[b][a] = -n[a][b];
        }
    }
    for a in 0..npos {
        for b in 0..npos {
            if a != b {
                n[rs.negate(a)][rs.negate(b)] = -n[a][b];
            }
        }
    }
    for a in 0..npos {
        for b in npos..nroots {
            let Some(c) = rs.root_sum(a, b) else {
                n[a][b] = 0;
                n[b][a] = 0;
                continue;
            };
            let v = if rs.is_positive(c) {
                // N(a,b) = -(c,c)/(a,a) N(-b, c)
                -rs.norm2(c) * n[rs.negate(b)][c] / rs.norm2(a)
            } else {
                // N(a,b) = (c,c)/(b,b) N(-c, a)
                rs.norm2(c) * n[rs.negate(c)][a] / rs.norm2(b)
            };
            n[a][b] = v;
            n[b][a] = -v;
        }
    }
}

fn bracket_basis(
    rs: &RootSystem,
    n: &[Vec<i64>],
    x: BasisVector,
    y: BasisVector,
) -> Vec<(BasisVector, i64)> {
    match (x, y) {
        (BasisVector::Cartan(_), BasisVector::Cartan(_)) => Vec::new(),
        (BasisVector::Cartan(k), BasisVector::Root(b)) => {
            vec![(BasisVector::Root(b), rs.pairing(b, k))]
        }
        (BasisVector::Root(a), BasisVector::Cartan(k)) => {
            vec![(BasisVector::Root(a), -rs.pairing(a, k))]
        }
        (BasisVector::Root(a), BasisVector::Root(b)) => {
            if rs.negate(a) == b {
                let na = rs.norm2(a);
                (0..rs.rank())
                    .map(|k| (BasisVector::Cartan(k), rs.coords(a)[k] as i64 * rs.norm2(k) / na))
                    .filter(|(_, c)| *c != 0)
                    .collect()
            } else if let Some(s) = rs.root_sum(a, b) {
                vec![(BasisVector::Root(s), n[a][b])]
            } else {
                Vec::new()
            }
        }
    }
}

fn jacobi_holds(rs: &RootSystem, n: &[Vec<i64>]) -> bool {
    let nroots = rs.num_roots();
    let dim = nroots + rs.rank();
    let idx = |v: BasisVector| match v {
        BasisVector::Root(r) => r,
        BasisVector::Cartan(k) => nroots + k,
    };
    let vec_of = |i: usize| {
        if i < nroots {
            BasisVector::Root(i)
        } else {
            BasisVector::Cartan(i - nroots)
        }
    };
    let nested = |x: usize, y: usize, z: usize, acc: &mut [i64]| {
        for (v, c) in bracket_basis(rs, n, vec_of(y), vec_of(z)) {
            for (w, d) in bracket_basis(rs, n, vec_of(x), v) {
                acc[idx(w)] += c * d;
            }
        }
    };
    let mut acc = vec![0i64; dim];
    for x in 0..dim {
        for y in 0..dim {
            for z in 0..dim {
                acc.iter_mut().for_each(|v| *v = 0);
                nested(x, y, z, &mut acc);
                nested(y, z, x, &mut acc);
                nested(z, x, y, &mut acc);
                if acc.iter().any(|v| *v != 0) {
                    return false;
                }
            }
        }
    }
    true
}

/// Verifies the Jacobi identity for the table's bracket.
pub fn verify_jacobi(table: &StructureTable) -> bool {
    jacobi_holds(&table.rs, &table.n)
}

/// A Steinberg-type generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Generator<E> {
    /// `x_α(t)`.
    X { root: usize, t: E },
    /// `h_α(ε) = w_α(ε) w_α(1)⁻¹`.
    H { root: usize, eps: E },
    /// `w_α(ε) = x_α(ε) x_{-α}(-ε⁻¹) x_α(ε)`.
    W { root: usize, eps: E },
    /// Adjoint torus element with the given values on the simple roots.
    /// Not elementary in general.
    Torus { chars: Vec<E> },
}

impl<E> Generator<E> {
    pub fn is_elementary(&self) -> bool {
        !matches!(self, Generator::Torus { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter<E> {
    pub gen: Generator<E>,
    pub inverse: bool,
}

/// Formal product of generators, evaluated left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord<E> {
    pub letters: Vec<Letter<E>>,
}

impl<E: Clone> GroupWord<E> {
    pub fn new() -> Self {
        GroupWord { letters: Vec::new() }
    }

    pub fn from_gens(gens: impl IntoIterator<Item = Generator<E>>) -> Self {
        GroupWord {
            letters: gens.into_iter().map(|gen| Letter { gen, inverse: false }).collect(),
        }
    }

    pub fn x(root: usize, t: E) -> Self {
        Self::from_gens([Generator::X { root, t }])
    }

    pub fn push(&mut self, gen: Generator<E>) {
        self.letters.push(Letter { gen, inverse: false });
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        GroupWord { letters }
    }

    pub fn inverse(&self) -> Self {
        GroupWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter { gen: l.gen.clone(), inverse: !l.inverse })
                .collect(),
        }
    }

    pub fn is_elementary(&self) -> bool {
        self.letters.iter().all(|l| l.gen.is_elementary())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn map<F: Clone>(&self, f: &impl Fn(&E) -> F) -> GroupWord<F> {
        let g = |gen: &Generator<E>| match gen {
            Generator::X { root, t } => Generator::X { root: *root, t: f(t) },
            Generator::H { root, eps } => Generator::H { root: *root, eps: f(eps) },
            Generator::W { root, eps } => Generator::W { root: *root, eps: f(eps) },
            Generator::Torus { chars } => Generator::Torus { chars: chars.iter().map(f).collect() },
        };
        GroupWord {
            letters: self
                .letters
                .iter()
                .map(|l| Letter { gen: g(&l.gen), inverse: l.inverse })
                .collect(),
        }
    }
}

pub type GroupElement<R> = Matrix<<R as CommRing>::Elem>;

/// The adjoint Chevalley group `G(Φ, R)` with its generators.
#[derive(Debug, Clone)]
pub struct Chevalley<R: CommRing> {
    pub ring: R,
    pub table: Arc<StructureTable>,
    unit_x: Vec<Matrix<R::Elem>>,
    weyl_reps: Vec<Matrix<R::Elem>>,
}

impl<R: CommRing> Chevalley<R> {
    pub fn new(table: Arc<StructureTable>, ring: R) -> Self {
        let unit_x = (0..table.rs.num_roots())
            .map(|a| table.x_matrix(&ring, a, &ring.one()))
            .collect();
        let mut g = Chevalley { ring, table, unit_x, weyl_reps: Vec::new() };
        g.weyl_reps = g
            .table
            .rs
            .weyl_group()
            .iter()
            .map(|w| {
                let mut m = g.identity();
                for &i in w.word.iter().rev() {
                    let wi = g.w_elem(i, &g.ring.one()).expect("1 is a unit");
                    m = g.mul(&m, &wi);
                }
                m
            })
            .collect();
        g
    }

    pub fn for_type(ty: CartanType, ring: R) -> Result<Self> {
        Ok(Self::new(Arc::new(StructureTable::for_type(ty)?), ring))
    }

    pub fn rs(&self) -> &RootSystem {
        &self.table.rs
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn identity(&self) -> GroupElement<R> {
        Matrix::identity(&self.ring, self.dim())
    }

    pub fn mul(&self, a: &GroupElement<R>, b: &GroupElement<R>) -> GroupElement<R> {
        a.mul(&self.ring, b)
    }

    pub fn product<'a>(&self, items: impl IntoIterator<Item = &'a GroupElement<R>>) -> GroupElement<R>
    where
        R::Elem: 'a,
    {
        items.into_iter().fold(self.identity(), |acc, m| self.mul(&acc, m))
    }

    pub fn inv(&self, a: &GroupElement<R>) -> GroupElement<R> {
        a.inverse(&self.ring).expect("group elements are invertible")
    }

    /// `a^b = b⁻¹ a b`.
    pub fn conj(&self, a: &GroupElement<R>, b: &GroupElement<R>) -> GroupElement<R> {
        self.product([&self.inv(b), a, b])
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn comm(&self, a: &GroupElement<R>, b: &GroupElement<R>) -> GroupElement<R> {
        self.product([&self.inv(a), &self.inv(b), a, b])
    }

    pub fn x_elem(&self, a: usize, t: &R::Elem) -> GroupElement<R> {
        if self.ring.is_one(t) {
            return self.unit_x[a].clone();
        }
        self.table.x_matrix(&self.ring, a, t)
    }

    pub fn w_elem(&self, a: usize, eps: &R::Elem) -> Result<GroupElement<R>> {
        let inv = self
            .ring
            .inv(eps)
            .ok_or_else(|| Error::NotAUnit(format!("{eps:?}")))?;
        let na = self.rs().negate(a);
        let xa = self.x_elem(a, eps);
        Ok(self.product([&xa, &self.x_elem(na, &self.ring.neg(&inv)), &xa]))
    }

    pub fn h_elem(&self, a: usize, eps: &R::Elem) -> Result<GroupElement<R>> {
        let w = self.w_elem(a, eps)?;
        let w1inv = self.w_elem(a, &self.ring.neg(&self.ring.one()))?;
        Ok(self.mul(&w, &w1inv))
    }

    /// Adjoint torus element acting by `χ(β) = Π chars[i]^{b_i}` on `e_β`.
    pub fn torus_elem(&self, chars: &[R::Elem]) -> Result<GroupElement<R>> {
        let rs = self.rs();
        if chars.len() != rs.rank() {
            return Err(Error::NotInGroup(format!("torus needs {} values", rs.rank())));
        }
        let invs: Vec<R::Elem> = chars
            .iter()
            .map(|c| self.ring.inv(c).ok_or_else(|| Error::NotAUnit(format!("{c:?}"))))
            .collect::<Result<_>>()?;
        let mut m = self.identity();
        for r in 0..rs.num_roots() {
            let v = self.character(chars, &invs, r);
            let p = self.table.pos_root(r);
            m.set(p, p, v);
        }
        Ok(m)
    }

    fn character(&self, chars: &[R::Elem], invs: &[R::Elem], r: usize) -> R::Elem {
        let mut v = self.ring.one();
        for (i, &b) in self.rs().coords(r).iter().enumerate() {
            let base = if b >= 0 { &chars[i] } else { &invs[i] };
            v = self.ring.mul(&v, &self.ring.pow(base, b.unsigned_abs()));
        }
        v
    }

    pub fn weyl_rep(&self, w: &WeylElement) -> &GroupElement<R> {
        let idx = self
            .rs()
            .weyl_group()
            .iter()
            .position(|v| v == w)
            .expect("element of this Weyl group");
        &self.weyl_reps[idx]
    }

    pub fn weyl_reps(&self) -> &[GroupElement<R>] {
        &self.weyl_reps
    }

    /// Word for `weyl_rep(w)`.
    pub fn weyl_word(&self, w: &WeylElement) -> GroupWord<R::Elem> {
        GroupWord::from_gens(
            w.word.iter().rev().map(|&i| Generator::W { root: i, eps: self.ring.one() }),
        )
    }

    /// `(w(α), sign)` with `x_α(r)^ẇ = x_{w(α)}(sign·r)`; the sign is read
    /// from the adjoint matrices.
    pub fn conj_root(&self, w: &WeylElement, a: usize) -> (usize, i64) {
        let target = w.act(a);
        let wr = self.weyl_rep(w);
        let c = self.conj(&self.unit_x[a], wr);
        let one = self.ring.one();
        if c == self.unit_x[target] {
            (target, 1)
        } else {
            debug_assert_eq!(c, self.x_elem(target, &self.ring.neg(&one)));
            (target, -1)
        }
    }

    pub fn eval_generator(&self, g: &Generator<R::Elem>) -> Result<GroupElement<R>> {
        match g {
            Generator::X { root, t } => Ok(self.x_elem(*root, t)),
            Generator::H { root, eps } => self.h_elem(*root, eps),
            Generator::W { root, eps } => self.w_elem(*root, eps),
            Generator::Torus { chars } => self.torus_elem(chars),
        }
    }

    pub fn eval_letter(&self, l: &Letter<R::Elem>) -> Result<GroupElement<R>> {
        if l.inverse {
            if let Generator::X { root, t } = &l.gen {
                return Ok(self.x_elem(*root, &self.ring.neg(t)));
            }
            return Ok(self.inv(&self.eval_generator(&l.gen)?));
        }
        self.eval_generator(&l.gen)
    }

    pub fn eval(&self, word: &GroupWord<R::Elem>) -> Result<GroupElement<R>> {
        let mut m = self.identity();
        for l in &word.letters {
            m = self.mul(&m, &self.eval_letter(l)?);
        }
        Ok(m)
    }

    /// `Π x_{iα+jβ}(C_ij t^i u^j)` equal to `[x_α(t), x_β(u)]`.
    pub fn commutator_expand(
        &self,
        a: usize,
        b: usize,
        t: &R::Elem,
        u: &R::Elem,
    ) -> Result<GroupWord<R::Elem>> {
        if self.rs().negate(a) == b {
            return Err(Error::OppositeRoots);
        }
        let r = &self.ring;
        let mut word = GroupWord::new();
        for term in self.table.commutator_coeffs(a, b) {
            let v = r.mul(
                &r.from_i64(term.coeff),
                &r.mul(&r.pow(t, term.i), &r.pow(u, term.j)),
            );
            word.push(Generator::X { root: term.root, t: v });
        }
        Ok(word)
    }

    /// Test elements `x_α(1)`: `x` is central iff it commutes with each.
    pub fn central_test_elements(&self) -> Result<&[GroupElement<R>]> {
        Ok(&self.unit_x)
    }

    /// Commutes with every `x_α(t)`. Checking `t = 1` suffices whenever
    /// `1` generates the additive group, which holds for `ℤ`, `ℤ/n` and
    /// prime fields; other rings are rejected.
    pub fn is_central(&self, x: &GroupElement<R>) -> Result<bool> {
        if self.ring.elements().is_none() && self.ring.from_i64(2) == self.ring.one() {
            return Err(Error::Unsupported("centrality over this ring".into()));
        }
        Ok(self.unit_x.iter().all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Parameter of `x_γ` in a product of root elements along an ordering
    /// compatible with an additive positive grading. Returns the peeled
    /// factors and the remainder.
    pub fn peel_ordered(
        &self,
        m: &GroupElement<R>,
        order: &[usize],
    ) -> (Vec<(usize, R::Elem)>, GroupElement<R>) {
        let mut rest = m.clone();
        let mut out = Vec::new();
        for &g in order {
            let c = self.table.read_parameter(&self.ring, &rest, g);
            if !self.ring.is_zero(&c) {
                let strip = self.x_elem(g, &self.ring.neg(&c));
                rest = self.mul(&strip, &rest);
            }
            out.push((g, c));
        }
        (out, rest)
    }

    /// Matrix reduction into another ring along a map on entries.
    pub fn map_element<S: CommRing>(
        &self,
        target: &Chevalley<S>,
        m: &GroupElement<R>,
        f: impl Fn(&R::Elem) -> S::Elem,
    ) -> GroupElement<S> {
        debug_assert_eq!(self.dim(), target.dim());
        m.map(f)
    }

    /// Whether `m` is a single root element; returns `(γ, t)` with `t ≠ 0`.
    pub fn as_root_element(&self, m: &GroupElement<R>) -> Option<(usize, R::Elem)> {
        if m.is_identity(&self.ring) || (0..self.dim()).any(|i| !self.ring.is_one(m.get(i, i))) {
            return None;
        }
        for g in 0..self.rs().num_roots() {
            let t = self.table.read_parameter(&self.ring, m, g);
            if !self.ring.is_zero(&t) && self.x_elem(g, &t) == *m {
                return Some((g, t));
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Zmod;

    fn table(s: &str) -> Arc<StructureTable> {
        Arc::new(StructureTable::for_type(CartanType::parse(s).unwrap()).unwrap())
    }

    #[test]
    fn constants_are_chevalley() {
        for t in ["A2", "A3", "B2", "C2", "B3", "C3", "G2"] {
            let tb = table(t);
            let rs = &tb.rs;
            assert!(verify_jacobi(&tb), "{t}");
            for a in 0..rs.num_roots() {
                for b in 0..rs.num_roots() {
                    assert_eq!(tb.n(a, b), -tb.n(b, a));
                    if rs.root_sum(a, b).is_some() {
                        let (p, _) = rs.alpha_string(a, b);
                        assert_eq!(tb.n(a, b).abs(), (p + 1) as i64, "{t} {a} {b}");
                    } else {
                        assert_eq!(tb.n(a, b), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn structure_constant_examples() {
        let a2 = table("A2");
        assert_eq!(a2.n(0, 1).abs(), 1);
        let g2 = table("G2");
        let rs = &g2.rs;
        let has3 = (0..rs.num_roots())
            .any(|a| (0..rs.num_roots()).any(|b| g2.n(a, b).abs() == 3));
        assert!(has3);
    }

    #[test]
    fn g2_exponential_terminates_at_degree_three() {
        let g2 = table("G2");
        let max = (0..g2.rs.num_roots()).map(|a| g2.exp_terms(a)).max().unwrap();
        // terms 1, ad, ad²/2, ad³/6
        assert_eq!(max, 4);
        let ad = g2.ad_matrix(0);
        let p4 = ad.mul(&Integers, &ad).mul(&Integers, &ad).mul(&Integers, &ad);
        assert!(p4.entries().iter().all(|x| *x == 0));
    }

    #[test]
    fn x_elements_basic() {
        let z = Zmod::new(4).unwrap();
        let g = Chevalley::new(table("A2"), z);
        for a in 0..6 {
            assert!(g.x_elem(a, &0).is_identity(&z));
            assert_eq!(g.mul(&g.x_elem(a, &1), &g.x_elem(a, &1)), g.x_elem(a, &2));
        }
        // positive roots are upper unitriangular
        for a in 0..3 {
            let m = g.x_elem(a, &3);
            for i in 0..g.dim() {
                assert_eq!(*m.get(i, i), 1);
                for j in 0..i {
                    assert_eq!(*m.get(i, j), 0);
                }
            }
        }
    }

    #[test]
    fn w_and_h_elements() {
        let g = Chevalley::new(table("A2"), Integers);
        for a in 0..6 {
            let w = g.w_elem(a, &1).unwrap();
            // root-space entries lie in {-1, 0, 1}
            for r in 0..6 {
                for s in 0..6 {
                    let v = *w.get(g.table.pos_root(r), g.table.pos_root(s));
                    assert!((-1..=1).contains(&v));
                }
            }
            assert!(g.h_elem(a, &1).unwrap().is_identity(&Integers));
            let w2 = g.mul(&w, &w);
            assert_eq!(w2, g.h_elem(a, &-1).unwrap());
        }
        assert!(matches!(g.w_elem(0, &2), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn weyl_reps() {
        let g = Chevalley::new(table("A2"), Integers);
        let rs = g.rs().clone();
        assert!(g.weyl_rep(rs.weyl_identity()).is_identity(&Integers));
        let s0 = rs.reflection(0);
        assert_eq!(*g.weyl_rep(s0), g.w_elem(0, &1).unwrap());
        let w0 = rs.longest();
        assert_eq!(w0.length(), 3);
        let prod = g.product(
            w0.word.iter().rev().map(|&i| g.w_elem(i, &1).unwrap()).collect::<Vec<_>>().iter(),
        );
        assert_eq!(*g.weyl_rep(w0), prod);
    }

    #[test]
    fn conj_root_examples() {
        let g = Chevalley::new(table("A2"), Integers);
        let rs = g.rs().clone();
        assert_eq!(g.conj_root(rs.weyl_identity(), 0), (0, 1));
        let s0 = rs.reflection(0);
        assert_eq!(g.conj_root(s0, 0), (rs.negate(0), -1));
        for w in rs.weyl_group() {
            for a in 0..rs.num_roots() {
                let (b, sign) = g.conj_root(w, a);
                assert!(sign == 1 || sign == -1);
                for r in [-2i128, 3] {
                    let lhs = g.conj(&g.x_elem(a, &r), g.weyl_rep(w));
                    assert_eq!(lhs, g.x_elem(b, &(sign as i128 * r)));
                }
            }
        }
    }

    #[test]
    fn commutator_examples() {
        let g = Chevalley::new(table("A2"), Integers);
        let word = g.commutator_expand(0, 1, &1, &1).unwrap();
        assert_eq!(word.len(), 1);
        let lhs = g.comm(&g.x_elem(0, &1), &g.x_elem(1, &1));
        assert_eq!(g.eval(&word).unwrap(), lhs);
        assert_eq!(g.commutator_expand(0, 3, &1, &1), Err(Error::OppositeRoots));
        // α1 and α1 + α2 commute in A2
        let s = g.rs().root_sum(0, 1).unwrap();
        assert!(g.commutator_expand(0, s, &1, &1).unwrap().is_empty());

        let b2 = Chevalley::new(table("B2"), Integers);
        // short simple α2 (index 1), long simple α1 (index 0)
        let word = b2.commutator_expand(1, 0, &1, &1).unwrap();
        assert_eq!(word.len(), 2);
        let lhs = b2.comm(&b2.x_elem(1, &1), &b2.x_elem(0, &1));
        assert_eq!(b2.eval(&word).unwrap(), lhs);
    }

    #[test]
    fn commutator_formula_closed_forms() {
        // C_11 = N(α, β); C_i1 = (-1)^(i+1) M_{α,β,i}; C_1j = (-1)^j M_{β,α,j}
        // with M_{α,β,i} = (1/i!) Π_{k<i} N(α, kα + β)
        for t in ["B2", "G2", "B3", "C3"] {
            let tb = table(t);
            let rs = &tb.rs;
            for a in 0..rs.num_roots() {
                for b in 0..rs.num_roots() {
                    for term in tb.commutator_coeffs(a, b) {
                        let m = |x: usize, y: usize, i: u32| {
                            let mut prod = 1i64;
                            let mut cur = y;
                            for _ in 0..i {
                                prod *= tb.n(x, cur);
                                cur = match rs.root_sum(x, cur) {
                                    Some(c) => c,
                                    None => return 0,
                                };
                            }
                            prod / (1..=i as i64).product::<i64>()
                        };
                        if term.j == 1 {
                            let sign = if term.i % 2 == 1 { 1 } else { -1 };
                            assert_eq!(term.coeff, sign * m(a, b, term.i), "{t} {a} {b} {term:?}");
                        } else if term.i == 1 {
                            let sign = if term.j % 2 == 0 { 1 } else { -1 };
                            assert_eq!(term.coeff, sign * m(b, a, term.j), "{t} {a} {b} {term:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn centrality() {
        let f = Zmod::prime_field(3).unwrap();
        let g = Chevalley::new(table("A2"), f);
        assert!(g.is_central(&g.identity()).unwrap());
        assert!(!g.is_central(&g.x_elem(0, &1)).unwrap());
        // torus elements trivial on every root are the identity in the adjoint group
        let t = g.torus_elem(&[1, 1]).unwrap();
        assert!(g.is_central(&t).unwrap());
        assert!(!g.is_central(&g.torus_elem(&[2, 1]).unwrap()).unwrap());
    }

    #[test]
    fn h_elements_are_torus_elements() {
        let f = Zmod::prime_field(5).unwrap();
        for ty in ["A2", "B2", "G2"] {
            let g = Chevalley::new(table(ty), f);
            let rs = g.rs().clone();
            for a in 0..rs.num_roots() {
                for eps in 1..5u32 {
                    let h = g.h_elem(a, &eps).unwrap();
                    for b in 0..rs.num_roots() {
                        let p = g.table.pos_root(b);
                        let e = rs.pairing(b, a);
                        let expect = if e >= 0 {
                            f.pow(&eps, e as u32)
                        } else {
                            f.pow(&f.inv(&eps).unwrap(), (-e) as u32)
                        };
                        assert_eq!(*h.get(p, p), expect);
                    }
                }
            }
        }
    }
}
