//! Root systems of small rank and their Weyl groups.
//!
//! Roots are integer vectors in simple-root coordinates and are addressed by
//! index. Positive roots come first, sorted by height and then by
//! decreasing coordinates, so that indices `0..rank` are the simple roots
//! `α_1, …, α_l`; the negative root `-β` of positive root `β = roots[i]`
//! sits at index `i + N` where `N` is the number of positive roots.
//!
//! Simple roots follow the Bourbaki numbering:
//!
//! * `A_l`: chain, all roots of squared length 2.
//! * `B_l`: `α_1, …, α_{l-1}` long (length² 4), `α_l` short (length² 2).
//! * `C_l`: `α_1, …, α_{l-1}` short (length² 2), `α_l` long (length² 4).
//! * `G2`: `α_1` short (length² 2), `α_2` long (length² 6).
//!
//! The Cartan matrix is `A_ij = 2(α_i, α_j)/(α_j, α_j)`; for `B2` this is
//! `[[2, -2], [-1, 2]]`.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

use crate::error::{Error, Result};

/// Cartan–Killing type label. Only some labels can be built; every label is
/// understood by the structure-constant condition check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A(u8),
    B(u8),
    C(u8),
    D(u8),
    E(u8),
    F4,
    G2,
}

impl CartanType {
    pub fn rank(&self) -> usize {
        match self {
            CartanType::A(n)
            | CartanType::B(n)
            | CartanType::C(n)
            | CartanType::D(n)
            | CartanType::E(n) => *n as usize,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self, CartanType::A(_) | CartanType::D(_) | CartanType::E(_))
    }

    pub fn is_doubly_laced(&self) -> bool {
        matches!(self, CartanType::B(_) | CartanType::C(_) | CartanType::F4)
    }

    /// Parses labels like `A2`, `b3`, `G2`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::UnsupportedType(s.into()))?
            .to_ascii_uppercase();
        let n: u8 = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnsupportedType(s.into()))?;
        match (letter, n) {
            ('A', n) if n >= 1 => Ok(CartanType::A(n)),
            ('B', n) if n >= 2 => Ok(CartanType::B(n)),
            ('C', n) if n >= 2 => Ok(CartanType::C(n)),
            ('D', n) if n >= 4 => Ok(CartanType::D(n)),
            ('E', n) if (6..=8).contains(&n) => Ok(CartanType::E(n)),
            ('F', 4) => Ok(CartanType::F4),
            ('G', 2) => Ok(CartanType::G2),
            _ => Err(Error::UnsupportedType(s.into())),
        }
    }

    /// Gram matrix of the simple roots, for the buildable types.
    fn gram(&self) -> Result<Vec<Vec<i64>>> {
        let chain = |n: usize, lens: &dyn Fn(usize) -> i64| {
            let mut g = vec![vec![0i64; n]; n];
            for i in 0..n {
                g[i][i] = lens(i);
            }
            for i in 0..n - 1 {
                // adjacent nodes: (α_i, α_{i+1}) = -min(len)/2·… fixed per type below
                let v = -core::cmp::min(g[i][i], g[i + 1][i + 1]) / 2;
                g[i][i + 1] = v;
                g[i + 1][i] = v;
            }
            g
        };
        match *self {
            CartanType::A(n) if (2..=3).contains(&n) => Ok(chain(n as usize, &|_| 2)),
            CartanType::B(n) if (2..=3).contains(&n) => {
                let n = n as usize;
                let mut g = chain(n, &|i| if i + 1 == n { 2 } else { 4 });
                // long-short bond: (α_{n-1}, α_n) = -2
                g[n - 2][n - 1] = -2;
                g[n - 1][n - 2] = -2;
                Ok(g)
            }
            CartanType::C(n) if (2..=3).contains(&n) => {
                let n = n as usize;
                let mut g = chain(n, &|i| if i + 1 == n { 4 } else { 2 });
                g[n - 2][n - 1] = -2;
                g[n - 1][n - 2] = -2;
                Ok(g)
            }
            CartanType::G2 => Ok(vec![vec![2, -3], vec![-3, 6]]),
            other => Err(Error::UnsupportedType(format!("{other}"))),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::E(n) => write!(f, "E{n}"),
            CartanType::F4 => write!(f, "F4"),
            CartanType::G2 => write!(f, "G2"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootLength {
    Short,
    Long,
}

/// Element of the Weyl group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    /// `perm[i]` is the index of `w(root i)`.
    pub perm: Vec<usize>,
    /// Reduced word `s_{i_1} ⋯ s_{i_k}` (indices of simple roots).
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn act(&self, root: usize) -> usize {
        self.perm[root]
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub cartan_type: CartanType,
    rank: usize,
    gram: Vec<Vec<i64>>,
    roots: Vec<Vec<i32>>,
    index: HashMap<Vec<i32>, usize>,
    n_pos: usize,
    /// `simple_perm[i][β]`: index of `s_i(β)`.
    simple_perm: Vec<Vec<usize>>,
    weyl: Vec<WeylElement>,
    weyl_index: HashMap<Vec<usize>, usize>,
}

impl RootSystem {
    pub fn build(ty: CartanType) -> Result<Self> {
        let gram = ty.gram()?;
        let rank = ty.rank();
        // orbit of the simple roots under simple reflections
        let reflect = |beta: &[i32], i: usize| -> Vec<i32> {
            let ip: i64 = (0..rank).map(|j| beta[j] as i64 * gram[j][i]).sum();
            let c = 2 * ip / gram[i][i];
            let mut out = beta.to_vec();
            out[i] -= c as i32;
            out
        };
        let mut all: Vec<Vec<i32>> = Vec::new();
        let mut queue: VecDeque<Vec<i32>> = VecDeque::new();
        for i in 0..rank {
            let mut e = vec![0i32; rank];
            e[i] = 1;
            queue.push_back(e);
        }
        while let Some(b) = queue.pop_front() {
            if all.contains(&b) {
                continue;
            }
            for i in 0..rank {
                let r = reflect(&b, i);
                if !all.contains(&r) {
                    queue.push_back(r);
                }
            }
            all.push(b);
        }
        let mut pos: Vec<Vec<i32>> = all.into_iter().filter(|r| r.iter().all(|c| *c >= 0)).collect();
        pos.sort_by(|a, b| {
            let ha: i32 = a.iter().sum();
            let hb: i32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let n_pos = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()));
        let index: HashMap<Vec<i32>, usize> =
            roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let simple_perm: Vec<Vec<usize>> = (0..rank)
            .map(|i| roots.iter().map(|b| index[&reflect(b, i)]).collect())
            .collect();

        let mut rs = RootSystem {
            cartan_type: ty,
            rank,
            gram,
            roots,
            index,
            n_pos,
            simple_perm,
            weyl: Vec::new(),
            weyl_index: HashMap::new(),
        };
        rs.enumerate_weyl();
        Ok(rs)
    }

    /// Breadth-first closure of the simple reflections; BFS depth equals the
    /// length, so recorded words are reduced.
    fn enumerate_weyl(&mut self) {
        let n = self.roots.len();
        let id = WeylElement { perm: (0..n).collect(), word: Vec::new() };
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id.perm.clone(), 0usize);
        let mut head = 0;
        while head < elements.len() {
            let w = elements[head].clone();
            head += 1;
            for i in 0..self.rank {
                let perm: Vec<usize> = (0..n).map(|b| w.perm[self.simple_perm[i][b]]).collect();
                if index.contains_key(&perm) {
                    continue;
                }
                let mut word = w.word.clone();
                word.push(i);
                index.insert(perm.clone(), elements.len());
                elements.push(WeylElement { perm, word });
            }
        }
        self.weyl = elements;
        self.weyl_index = index;
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    pub fn coords(&self, root: usize) -> &[i32] {
        &self.roots[root]
    }

    pub fn roots(&self) -> &[Vec<i32>] {
        &self.roots
    }

    pub fn index_of(&self, coords: &[i32]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn root(&self, coords: &[i32]) -> Result<usize> {
        self.index_of(coords)
            .ok_or_else(|| Error::UnknownRoot(format!("{coords:?}")))
    }

    pub fn is_positive(&self, root: usize) -> bool {
        root < self.n_pos
    }

    pub fn is_simple(&self, root: usize) -> bool {
        root < self.rank
    }

    pub fn negate(&self, root: usize) -> usize {
        if root < self.n_pos {
            root + self.n_pos
        } else {
            root - self.n_pos
        }
    }

    pub fn height(&self, root: usize) -> i32 {
        self.roots[root].iter().sum()
    }

    /// Height of the highest root, which is the nilpotency class of `U`.
    pub fn max_height(&self) -> i32 {
        (0..self.n_pos).map(|r| self.height(r)).max().unwrap_or(0)
    }

    pub fn inner_coords(&self, a: &[i32], b: &[i32]) -> i64 {
        let mut s = 0i64;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += a[i] as i64 * b[j] as i64 * self.gram[i][j];
            }
        }
        s
    }

    pub fn inner(&self, a: usize, b: usize) -> i64 {
        self.inner_coords(&self.roots[a], &self.roots[b])
    }

    pub fn norm2(&self, a: usize) -> i64 {
        self.inner(a, a)
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn length(&self, root: usize) -> RootLength {
        let min = (0..self.roots.len()).map(|r| self.norm2(r)).min().unwrap_or(0);
        if self.norm2(root) == min {
            RootLength::Short
        } else {
            RootLength::Long
        }
    }

    /// `⟨β, α^∨⟩ = 2(β, α)/(α, α)`.
    pub fn pairing(&self, beta: usize, alpha: usize) -> i64 {
        2 * self.inner(beta, alpha) / self.norm2(alpha)
    }

    /// `A_ij = 2(α_i, α_j)/(α_j, α_j)`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| 2 * self.gram[i][j] / self.gram[j][j]).collect())
            .collect()
    }

    /// Index of `α + β` if it is a root.
    pub fn root_sum(&self, a: usize, b: usize) -> Option<usize> {
        let s: Vec<i32> = self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| x + y).collect();
        self.index_of(&s)
    }

    /// `iα + jβ` if it is a root.
    pub fn combination(&self, i: i32, a: usize, j: i32, b: usize) -> Option<usize> {
        let s: Vec<i32> = self.roots[a]
            .iter()
            .zip(&self.roots[b])
            .map(|(x, y)| i * x + j * y)
            .collect();
        self.index_of(&s)
    }

    /// `(p, q)`: maximal extents with `β - pα, …, β + qα` all roots.
    pub fn alpha_string(&self, alpha: usize, beta: usize) -> (i32, i32) {
        let step = |k: i32| self.combination(1, beta, k, alpha).is_some();
        let mut p = 0;
        while step(-(p + 1)) {
            p += 1;
        }
        let mut q = 0;
        while step(q + 1) {
            q += 1;
        }
        (p, q)
    }

    /// `s_α(β)` for arbitrary roots.
    pub fn reflect(&self, alpha: usize, beta: usize) -> usize {
        let c = self.pairing(beta, alpha) as i32;
        self.combination(1, beta, -c, alpha).expect("reflection of a root is a root")
    }

    pub fn simple_reflection_perm(&self, i: usize) -> &[usize] {
        &self.simple_perm[i]
    }

    pub fn weyl_group(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn weyl_identity(&self) -> &WeylElement {
        &self.weyl[0]
    }

    pub fn longest(&self) -> &WeylElement {
        self.weyl.iter().max_by_key(|w| w.length()).expect("nonempty Weyl group")
    }

    pub fn weyl_from_perm(&self, perm: &[usize]) -> Option<&WeylElement> {
        self.weyl_index.get(perm).map(|&i| &self.weyl[i])
    }

    /// The element with the given (not necessarily reduced) word.
    pub fn weyl_from_word(&self, word: &[usize]) -> Result<&WeylElement> {
        let mut perm: Vec<usize> = (0..self.roots.len()).collect();
        for &i in word {
            if i >= self.rank {
                return Err(Error::NotFound(format!("simple reflection {i}")));
            }
            perm = (0..perm.len()).map(|b| perm[self.simple_perm[i][b]]).collect();
        }
        Ok(self.weyl_from_perm(&perm).expect("closure contains every word"))
    }

    pub fn weyl_compose(&self, a: &WeylElement, b: &WeylElement) -> &WeylElement {
        let perm: Vec<usize> = (0..a.perm.len()).map(|r| a.perm[b.perm[r]]).collect();
        self.weyl_from_perm(&perm).expect("closed under composition")
    }

    pub fn weyl_inverse(&self, w: &WeylElement) -> &WeylElement {
        let mut perm = vec![0; w.perm.len()];
        for (r, &img) in w.perm.iter().enumerate() {
            perm[img] = r;
        }
        self.weyl_from_perm(&perm).expect("closed under inverses")
    }

    /// `#{α > 0 : w(α) < 0}`.
    pub fn inversion_count(&self, w: &WeylElement) -> usize {
        (0..self.n_pos).filter(|&a| !self.is_positive(w.perm[a])).count()
    }

    /// The Weyl element of the reflection in an arbitrary root.
    pub fn reflection(&self, alpha: usize) -> &WeylElement {
        let perm: Vec<usize> = (0..self.roots.len()).map(|b| self.reflect(alpha, b)).collect();
        self.weyl_from_perm(&perm).expect("reflections lie in W")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> RootSystem {
        RootSystem::build(CartanType::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn root_counts_and_weyl_orders() {
        for (t, roots, w) in [
            ("A2", 6, 6),
            ("A3", 12, 24),
            ("B2", 8, 8),
            ("C2", 8, 8),
            ("B3", 18, 48),
            ("C3", 18, 48),
            ("G2", 12, 12),
        ] {
            let rs = build(t);
            assert_eq!(rs.num_roots(), roots, "{t}");
            assert_eq!(rs.weyl_group().len(), w, "{t}");
            for r in 0..rs.num_roots() {
                assert_eq!(rs.negate(rs.negate(r)), r);
                let c = rs.coords(r);
                assert!(c.iter().all(|x| *x >= 0) || c.iter().all(|x| *x <= 0));
            }
        }
    }

    #[test]
    fn lengths() {
        let a2 = build("A2");
        assert!((0..6).all(|r| a2.length(r) == RootLength::Short));
        let g2 = build("G2");
        let short = (0..12).filter(|&r| g2.length(r) == RootLength::Short).count();
        assert_eq!(short, 6);
        assert_eq!(g2.length(0), RootLength::Short);
        assert_eq!(g2.length(1), RootLength::Long);
    }

    #[test]
    fn cartan_b2() {
        assert_eq!(build("B2").cartan_matrix(), vec![vec![2, -2], vec![-1, 2]]);
        assert_eq!(build("G2").cartan_matrix(), vec![vec![2, -1], vec![-3, 2]]);
        assert_eq!(build("A3").cartan_matrix()[1], vec![-1, 2, -1]);
    }

    #[test]
    fn sums_and_strings() {
        let a2 = build("A2");
        assert!(a2.root_sum(0, 1).is_some());
        assert!(a2.root_sum(0, 0).is_none());
        let g2 = build("G2");
        // simple α short (index 0), β long (index 1)
        assert_eq!(g2.alpha_string(0, 1), (0, 3));
        assert_eq!(g2.max_height(), 5);
        assert_eq!(build("B2").max_height(), 3);
        assert_eq!(a2.max_height(), 2);
    }

    #[test]
    fn weyl_properties() {
        for t in ["A2", "A3", "B2", "B3", "C3", "G2"] {
            let rs = build(t);
            let w0 = rs.longest().clone();
            let l0 = w0.length();
            assert_eq!(rs.weyl_compose(&w0, &w0), rs.weyl_identity());
            for a in 0..rs.num_positive() {
                assert!(!rs.is_positive(w0.act(a)));
            }
            for w in rs.weyl_group() {
                assert_eq!(rs.inversion_count(w), w.length(), "{t}");
                let w0w = rs.weyl_compose(&w0, w);
                assert_eq!(w.length() + w0w.length(), l0);
                assert_eq!(rs.weyl_from_word(&w.word).unwrap(), w);
            }
            for a in 0..rs.num_roots() {
                let s = rs.reflection(a);
                assert_eq!(rs.weyl_compose(s, s), rs.weyl_identity());
                assert_eq!(s.act(a), rs.negate(a));
            }
        }
    }

    #[test]
    fn unsupported_types() {
        assert!(RootSystem::build(CartanType::F4).is_err());
        assert!(RootSystem::build(CartanType::D(4)).is_err());
        assert!(CartanType::parse("X9").is_err());
    }
}
