//! Dense square matrices over a [`CommRing`].

use alloc::vec;
use alloc::vec::Vec;

use crate::ring::CommRing;

/// Row-major square matrix. The ring is passed to every arithmetic call so
/// matrices of residues stay plain data and hash cheaply.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<E> {
    n: usize,
    data: Vec<E>,
}

impl<E: Clone + Eq> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix { n, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_vec(n: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), n * n);
        Matrix { n, data }
    }

    pub fn zero<R: CommRing<Elem = E>>(ring: &R, n: usize) -> Self {
        Matrix { n, data: vec![ring.zero(); n * n] }
    }

    pub fn identity<R: CommRing<Elem = E>>(ring: &R, n: usize) -> Self {
        let mut m = Self::zero(ring, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<E>> {
        self.data.chunks(self.n).map(|c| c.to_vec()).collect()
    }

    pub fn map<F: Clone + Eq>(&self, f: impl Fn(&E) -> F) -> Matrix<F> {
        Matrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = self.data.clone();
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j].clone();
            }
        }
        Matrix { n, data }
    }

    pub fn is_identity<R: CommRing<Elem = E>>(&self, ring: &R) -> bool {
        let (zero, one) = (ring.zero(), ring.one());
        self.data.iter().enumerate().all(|(k, x)| {
            if k / self.n == k % self.n {
                *x == one
            } else {
                *x == zero
            }
        })
    }

    pub fn mul<R: CommRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let n = self.n;
        debug_assert_eq!(n, other.n);
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            for j in 0..n {
                let mut acc = ring.zero();
                for (k, a) in row.iter().enumerate() {
                    if ring.is_zero(a) {
                        continue;
                    }
                    let b = &other.data[k * n + j];
                    if ring.is_zero(b) {
                        continue;
                    }
                    acc = ring.add(&acc, &ring.mul(a, b));
                }
                out.push(acc);
            }
        }
        Matrix { n, data: out }
    }

    pub fn add<R: CommRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| ring.add(a, b)).collect(),
        }
    }

    pub fn scale<R: CommRing<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        Matrix { n: self.n, data: self.data.iter().map(|a| ring.mul(a, c)).collect() }
    }

    /// Inverse by Euclidean row reduction; `None` if the matrix is singular
    /// over the ring (or the ring has no Euclidean steps and no unit pivot
    /// is available).
    pub fn inverse<R: CommRing<Elem = E>>(&self, ring: &R) -> Option<Self> {
        let n = self.n;
        let mut a = self.rows();
        let mut b = Self::identity(ring, n).rows();
        for c in 0..n {
            // shrink column c below the diagonal to a single nonzero entry
            loop {
                let nonzero: Vec<usize> = (c..n).filter(|&r| !ring.is_zero(&a[r][c])).collect();
                if nonzero.is_empty() {
                    return None;
                }
                if let Some(&u) = nonzero.iter().find(|&&r| ring.is_unit(&a[r][c])) {
                    a.swap(c, u);
                    b.swap(c, u);
                    break;
                }
                if nonzero.len() == 1 {
                    return None;
                }
                let p = *nonzero.iter().min_by_key(|&&r| ring.norm(&a[r][c]))?;
                for &r in &nonzero {
                    if r == p {
                        continue;
                    }
                    let (q, _) = ring.div_rem(&a[r][c], &a[p][c])?;
                    for k in 0..n {
                        let t = ring.mul(&q, &a[p][k]);
                        a[r][k] = ring.sub(&a[r][k], &t);
                        let t = ring.mul(&q, &b[p][k]);
                        b[r][k] = ring.sub(&b[r][k], &t);
                    }
                }
            }
            let inv = ring.inv(&a[c][c])?;
            for k in 0..n {
                a[c][k] = ring.mul(&a[c][k], &inv);
                b[c][k] = ring.mul(&b[c][k], &inv);
            }
            for r in 0..n {
                if r == c || ring.is_zero(&a[r][c]) {
                    continue;
                }
                let f = a[r][c].clone();
                for k in 0..n {
                    let t = ring.mul(&f, &a[c][k]);
                    a[r][k] = ring.sub(&a[r][k], &t);
                    let t = ring.mul(&f, &b[c][k]);
                    b[r][k] = ring.sub(&b[r][k], &t);
                }
            }
        }
        Some(Self::from_rows(b))
    }

    /// Rank of a rectangular block `rows × cols` over a field.
    pub fn block_rank<R: CommRing<Elem = E>>(
        &self,
        ring: &R,
        rows: core::ops::Range<usize>,
        cols: core::ops::Range<usize>,
    ) -> usize {
        let mut m: Vec<Vec<E>> = rows
            .map(|i| cols.clone().map(|j| self.get(i, j).clone()).collect())
            .collect();
        rank_of(ring, &mut m)
    }
}

/// Determinant of the minor on the given rows and columns, by cofactor
/// expansion along the first row. Meant for small sizes.
pub fn minor<R: CommRing>(ring: &R, m: &Matrix<R::Elem>, rows: &[usize], cols: &[usize]) -> R::Elem {
    debug_assert_eq!(rows.len(), cols.len());
    match rows.len() {
        0 => ring.one(),
        1 => m.get(rows[0], cols[0]).clone(),
        _ => {
            let mut acc = ring.zero();
            let rest: Vec<usize> = rows[1..].to_vec();
            for (k, &c) in cols.iter().enumerate() {
                let e = m.get(rows[0], c);
                if ring.is_zero(e) {
                    continue;
                }
                let sub: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let t = ring.mul(e, &minor(ring, m, &rest, &sub));
                acc = if k % 2 == 0 { ring.add(&acc, &t) } else { ring.sub(&acc, &t) };
            }
            acc
        }
    }
}

pub fn determinant<R: CommRing>(ring: &R, m: &Matrix<R::Elem>) -> R::Elem {
    let all: Vec<usize> = (0..m.dim()).collect();
    minor(ring, m, &all, &all)
}

/// Classical adjoint: `m · adj(m) = det(m) · 1`.
pub fn adjugate<R: CommRing>(ring: &R, m: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let n = m.dim();
    let mut out = Matrix::zero(ring, n);
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let d = minor(ring, m, &rows, &cols);
            out.set(i, j, if (i + j) % 2 == 0 { d } else { ring.neg(&d) });
        }
    }
    out
}

/// Rank over a field by Gaussian elimination (destroys `m`).
pub fn rank_of<R: CommRing>(ring: &R, m: &mut [Vec<R::Elem>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !ring.is_zero(&m[r][c])) else {
            continue;
        };
        m.swap(rank, p);
        let inv = ring.inv(&m[rank][c]).expect("rank requires a field");
        for r in 0..rows {
            if r == rank || ring.is_zero(&m[r][c]) {
                continue;
            }
            let f = ring.mul(&m[r][c], &inv);
            for k in c..cols {
                let t = ring.mul(&f, &m[rank][k]);
                m[r][k] = ring.sub(&m[r][k], &t);
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, Zmod};

    #[test]
    fn inverse_over_z4_needs_euclid() {
        let z = Zmod::new(4).unwrap();
        // no unit in first column until rows are combined: [[2,1],[3,2]] has det 1
        let m = Matrix::from_rows(vec![vec![2u32, 1], vec![3, 2]]);
        let inv = m.inverse(&z).unwrap();
        assert!(m.mul(&z, &inv).is_identity(&z));
        let sing = Matrix::from_rows(vec![vec![2u32, 0], vec![0, 1]]);
        assert!(sing.inverse(&z).is_none());
    }

    #[test]
    fn inverse_over_integers() {
        let m = Matrix::from_rows(vec![vec![2i128, 3], vec![3, 5]]);
        let inv = m.inverse(&Integers).unwrap();
        assert!(m.mul(&Integers, &inv).is_identity(&Integers));
        let m = Matrix::from_rows(vec![vec![2i128, 0], vec![0, 1]]);
        assert!(m.inverse(&Integers).is_none());
    }

    #[test]
    fn adjugate_identity() {
        let m = Matrix::from_rows(vec![vec![2i128, 3, 1], vec![0, 5, 4], vec![1, 1, 7]]);
        let d = determinant(&Integers, &m);
        assert_eq!(d, 2 * 31 - 3 * (-4) + (-5));
        let prod = m.mul(&Integers, &adjugate(&Integers, &m));
        assert_eq!(prod, Matrix::identity(&Integers, 3).scale(&Integers, &d));
    }

    #[test]
    fn rank_over_gf5() {
        let f = Zmod::prime_field(5).unwrap();
        let m = Matrix::from_rows(vec![vec![1u32, 2, 3], vec![0, 1, 1], vec![1, 3, 4]]);
        assert_eq!(m.block_rank(&f, 0..3, 0..3), 2);
        assert_eq!(m.block_rank(&f, 0..1, 0..3), 1);
    }
}
