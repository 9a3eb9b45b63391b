//! Big cell, Gauss cells, unipotent peeling and Bruhat cells.
//!
//! Everything rests on block LU factorization in the adjoint basis with
//! respect to a grading of the roots: for a grading `λ` the parabolic
//! `P_λ` (roots with `λ ≥ 0`) acts by block upper triangular matrices when
//! basis vectors are ordered by decreasing grade, and `U_{P_λ^-}` (roots
//! with `λ < 0`) by block lower unitriangular ones. An element lies in
//! `U_{P^-}·P` iff the factorization exists with invertible pivot blocks.

use alloc::vec;
use alloc::vec::Vec;

use crate::chevalley::{Chevalley, Generator, GroupElement, GroupWord};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::CommRing;
use crate::roots::{RootSystem, WeylElement};

/// An integer linear functional on the root lattice, stored per root.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Grading(pub Vec<i32>);

impl Grading {
    /// Linear extension of values on the simple roots.
    pub fn from_simple(rs: &RootSystem, simple: &[i32]) -> Self {
        Grading(
            (0..rs.num_roots())
                .map(|r| rs.coords(r).iter().zip(simple).map(|(c, s)| c * s).sum())
                .collect(),
        )
    }

    pub fn height(rs: &RootSystem) -> Self {
        Grading((0..rs.num_roots()).map(|r| rs.height(r)).collect())
    }

    pub fn neg(&self) -> Self {
        Grading(self.0.iter().map(|g| -g).collect())
    }

    /// `γ ↦ self(w⁻¹ γ)`, the grading moved by `w`.
    pub fn moved(&self, rs: &RootSystem, w: &WeylElement) -> Self {
        let winv = rs.weyl_inverse(w);
        Grading((0..rs.num_roots()).map(|r| self.0[winv.act(r)]).collect())
    }

    /// `k·self + other`.
    pub fn refine(&self, k: i32, other: &Grading) -> Self {
        Grading(self.0.iter().zip(&other.0).map(|(a, b)| k * a + b).collect())
    }

    pub fn of(&self, root: usize) -> i32 {
        self.0[root]
    }

    /// Roots with positive grade, ordered by grade then index.
    pub fn positive_roots(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.0.len()).filter(|&r| self.0[r] > 0).collect();
        v.sort_by_key(|&r| (self.0[r], r));
        v
    }

    pub fn zero_roots(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&r| self.0[r] == 0).collect()
    }
}

/// Which Gauss cell shape is used: `x = u·b·ẇ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `u ∈ U`, `b ∈ B⁻`.
    UBw,
    /// `u ∈ U⁻`, `b ∈ B`.
    UminusBw,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussFactorization<E> {
    pub orientation: Orientation,
    pub w: WeylElement,
    pub u: Matrix<E>,
    /// Root parameters of `u`, in grade order.
    pub u_params: Vec<(usize, E)>,
    /// `b = t·v` with `t` in the torus and `v` unipotent.
    pub b: Matrix<E>,
    /// Values of `t` on the simple roots.
    pub torus: Vec<E>,
    pub v_params: Vec<(usize, E)>,
    pub wrep: Matrix<E>,
}

impl<E: Clone> GaussFactorization<E> {
    pub fn u_word(&self) -> GroupWord<E> {
        params_word(&self.u_params)
    }

    pub fn v_word(&self) -> GroupWord<E> {
        params_word(&self.v_params)
    }
}

pub fn params_word<E: Clone>(params: &[(usize, E)]) -> GroupWord<E> {
    GroupWord::from_gens(params.iter().map(|(r, t)| Generator::X { root: *r, t: t.clone() }))
}

impl<R: CommRing> Chevalley<R> {
    pub fn basis_grades(&self, g: &Grading) -> Vec<i32> {
        use crate::chevalley::BasisVector;
        self.table
            .basis()
            .iter()
            .map(|b| match *b {
                BasisVector::Root(r) => g.0[r],
                BasisVector::Cartan(_) => 0,
            })
            .collect()
    }

    /// Whether `x` preserves the filtration by grade, i.e. lies in `P_λ`.
    pub fn in_graded_parabolic(&self, x: &GroupElement<R>, g: &Grading) -> bool {
        let gr = self.basis_grades(g);
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| gr[i] >= gr[j] || self.ring.is_zero(x.get(i, j))))
    }

    /// `x = L·M` with `L ∈ U_{P_λ^-}` block lower unitriangular and `M`
    /// block upper triangular; `None` when a pivot block is not invertible.
    pub fn block_lu(
        &self,
        x: &GroupElement<R>,
        g: &Grading,
    ) -> Option<(GroupElement<R>, GroupElement<R>)> {
        let r = &self.ring;
        let gr = self.basis_grades(g);
        let mut levels: Vec<i32> = gr.clone();
        levels.sort_unstable_by(|a, b| b.cmp(a));
        levels.dedup();
        let blocks: Vec<Vec<usize>> = levels
            .iter()
            .map(|lv| (0..gr.len()).filter(|&i| gr[i] == *lv).collect())
            .collect();
        let mut m = x.clone();
        let mut l = Matrix::identity(r, self.dim());
        for (k, bk) in blocks.iter().enumerate() {
            let pivot = Matrix::from_rows(
                bk.iter().map(|&i| bk.iter().map(|&j| m.get(i, j).clone()).collect()).collect(),
            );
            let pinv = pivot.inverse(r)?;
            for bi in blocks.iter().skip(k + 1) {
                // F = m[bi, bk] · pinv
                let f: Vec<Vec<R::Elem>> = bi
                    .iter()
                    .map(|&i| {
                        (0..bk.len())
                            .map(|c| {
                                let mut acc = r.zero();
                                for (t, &j) in bk.iter().enumerate() {
                                    let a = m.get(i, j);
                                    if !r.is_zero(a) {
                                        acc = r.add(&acc, &r.mul(a, pinv.get(t, c)));
                                    }
                                }
                                acc
                            })
                            .collect()
                    })
                    .collect();
                for (a, &i) in bi.iter().enumerate() {
                    for (c, &kk) in bk.iter().enumerate() {
                        l.set(i, kk, f[a][c].clone());
                    }
                    for col in 0..self.dim() {
                        let mut acc = m.get(i, col).clone();
                        for (c, &kk) in bk.iter().enumerate() {
                            if !r.is_zero(&f[a][c]) && !r.is_zero(m.get(kk, col)) {
                                acc = r.sub(&acc, &r.mul(&f[a][c], m.get(kk, col)));
                            }
                        }
                        m.set(i, col, acc);
                    }
                }
            }
        }
        Some((l, m))
    }

    /// Root parameters of a product of root elements over roots of positive
    /// grade; `None` when `m` is not such a product.
    pub fn peel_graded(&self, m: &GroupElement<R>, g: &Grading) -> Option<Vec<(usize, R::Elem)>> {
        let order = g.positive_roots();
        let (params, rest) = self.peel_ordered(m, &order);
        if !rest.is_identity(&self.ring) {
            return None;
        }
        Some(params.into_iter().filter(|(_, t)| !self.ring.is_zero(t)).collect())
    }

    /// Parameters of `m ∈ U(R)` in height order.
    pub fn peel_unipotent(&self, m: &GroupElement<R>) -> Result<Vec<(usize, R::Elem)>> {
        let r = &self.ring;
        let n = self.dim();
        for i in 0..n {
            if !r.is_one(m.get(i, i)) {
                return Err(Error::NotUnipotent);
            }
            for j in 0..i {
                if !r.is_zero(m.get(i, j)) {
                    return Err(Error::NotUnipotent);
                }
            }
        }
        self.peel_graded(m, &Grading::height(self.rs())).ok_or(Error::NotUnipotent)
    }

    /// `x ∈ U·T·U⁻`.
    pub fn in_big_cell(&self, x: &GroupElement<R>) -> bool {
        self.block_lu(x, &Grading::height(self.rs()).neg()).is_some()
    }

    /// Factorization of `x` in the Gauss cell of `w`, over any ring.
    pub fn cell_factor(
        &self,
        x: &GroupElement<R>,
        w: &WeylElement,
        orientation: Orientation,
    ) -> Option<GaussFactorization<R::Elem>> {
        let r = &self.ring;
        let rs = self.rs();
        let wrep = self.weyl_rep(w).clone();
        let y = self.mul(x, &self.inv(&wrep));
        let grading = match orientation {
            Orientation::UBw => Grading::height(rs).neg(),
            Orientation::UminusBw => Grading::height(rs),
        };
        let (l, m) = self.block_lu(&y, &grading)?;
        let u_params = self.peel_graded(&l, &grading.neg())?;
        let torus: Vec<R::Elem> = (0..rs.rank())
            .map(|i| {
                let p = self.table.pos_root(i);
                m.get(p, p).clone()
            })
            .collect();
        let t = self.torus_elem(&torus).ok()?;
        let v = self.mul(&self.inv(&t), &m);
        let v_params = self.peel_graded(&v, &grading)?;
        let _ = r;
        Some(GaussFactorization {
            orientation,
            w: w.clone(),
            u: l,
            u_params,
            b: m,
            torus,
            v_params,
            wrep,
        })
    }

    /// First Gauss cell (in Weyl group order) containing `x`, any ring.
    pub fn find_cell(
        &self,
        x: &GroupElement<R>,
        orientation: Orientation,
    ) -> Option<GaussFactorization<R::Elem>> {
        self.rs()
            .weyl_group()
            .iter()
            .find_map(|w| self.cell_factor(x, w, orientation))
    }

    pub fn gauss_decompose(
        &self,
        x: &GroupElement<R>,
        orientation: Orientation,
    ) -> Result<GaussFactorization<R::Elem>> {
        if !self.ring.is_field() {
            return Err(Error::NotAField);
        }
        self.find_cell(x, orientation)
            .ok_or_else(|| Error::NotInGroup("no Gauss cell contains the element".into()))
    }

    /// `x = t·e` with `t` a torus element (values on simple roots) and `e`
    /// an elementary word; available whenever `x` lies in a Gauss cell.
    pub fn torus_left_split(&self, x: &GroupElement<R>) -> Option<(Vec<R::Elem>, GroupWord<R::Elem>)> {
        let f = self.find_cell(x, Orientation::UBw)?;
        let t = self.torus_elem(&f.torus).ok()?;
        // x = u t v ẇ = t (t⁻¹ u t) v ẇ
        let ut = self.conj(&f.u, &t);
        let ut_params = self.peel_graded(&ut, &Grading::height(self.rs()))?;
        let word = params_word(&ut_params)
            .concat(&f.v_word())
            .concat(&self.weyl_word(&f.w));
        debug_assert_eq!(self.mul(&t, &self.eval(&word).ok()?), *x);
        Some((f.torus, word))
    }

    /// Ranks of all lower-left corners `rows i.., cols ..=j`.
    fn rank_profile(&self, x: &GroupElement<R>) -> Vec<usize> {
        let r = &self.ring;
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            let mut rows: Vec<Vec<R::Elem>> = (i..n).map(|k| (0..n).map(|j| x.get(k, j).clone()).collect()).collect();
            // incremental elimination column by column
            let mut rank = 0;
            for c in 0..n {
                if let Some(p) = (rank..rows.len()).find(|&k| !r.is_zero(&rows[k][c])) {
                    rows.swap(rank, p);
                    let inv = r.inv(&rows[rank][c]).expect("field");
                    for k in (rank + 1)..rows.len() {
                        if r.is_zero(&rows[k][c]) {
                            continue;
                        }
                        let f = r.mul(&rows[k][c], &inv);
                        for cc in c..n {
                            let t = r.mul(&f, &rows[rank][cc]);
                            rows[k][cc] = r.sub(&rows[k][cc], &t);
                        }
                    }
                    rank += 1;
                }
                out.push(rank);
            }
        }
        out
    }

    /// The `w` with `x ∈ B ẇ B`, read off from lower-left corner ranks
    /// (invariant under multiplication by upper triangular matrices on both
    /// sides; `B` is upper triangular in the adjoint basis).
    pub fn bruhat_cell(&self, x: &GroupElement<R>) -> Result<WeylElement> {
        if !self.ring.is_field() {
            return Err(Error::NotAField);
        }
        let px = self.rank_profile(x);
        for (w, rep) in self.rs().weyl_group().iter().zip(self.weyl_reps()) {
            if self.rank_profile(rep) == px {
                return Ok(w.clone());
            }
        }
        Err(Error::NotInGroup("no Bruhat cell matches".into()))
    }

    /// Rank profiles of the Weyl representatives are pairwise distinct.
    pub fn bruhat_profiles_distinct(&self) -> bool {
        let ps: Vec<Vec<usize>> = self.weyl_reps().iter().map(|m| self.rank_profile(m)).collect();
        (0..ps.len()).all(|i| (i + 1..ps.len()).all(|j| ps[i] != ps[j]))
    }
}

/// Simple roots, written as an `l`-vector with a single 1.
pub fn unit_vector(rank: usize, i: usize) -> Vec<i32> {
    let mut v = vec![0; rank];
    v[i] = 1;
    v
}
