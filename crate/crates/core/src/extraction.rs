//! Extraction of root unipotents from noncentral elements.
//!
//! Every routine works on [`Witness`]es: an element together with a
//! certificate proving it lies in the normal closure of the seed. The final
//! root element is re-checked against its certificate before it is
//! returned, so the heuristic parts can fail but never lie.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::chevalley::{Chevalley, Generator, GroupElement, GroupWord};
use crate::decomposition::{GaussFactorization, Grading, Orientation};
use crate::error::{Error, Result};
use crate::ring::{jacobson_radical, CommRing, Zmod};
use crate::roots::{RootSystem, WeylElement};
use crate::word::{Certificate, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParabolicSign {
    Plus,
    Minus,
}

/// `P_S^w` or `(P_S^-)^w`: the standard parabolic with Levi simple roots
/// `S`, possibly opposed, moved by `w` (roots `w(Ψ)`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Parabolic {
    pub simple_subset: Vec<usize>,
    pub conjugator: WeylElement,
    pub sign: ParabolicSign,
}

impl Parabolic {
    pub fn standard(rs: &RootSystem, subset: &[usize]) -> Self {
        let mut s = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        Parabolic {
            simple_subset: s,
            conjugator: rs.weyl_identity().clone(),
            sign: ParabolicSign::Plus,
        }
    }

    pub fn borel(rs: &RootSystem) -> Self {
        Self::standard(rs, &[])
    }

    /// The maximal parabolic `P_α` whose unipotent radical contains `X_α`.
    pub fn maximal(rs: &RootSystem, alpha: usize) -> Self {
        let s: Vec<usize> = (0..rs.rank()).filter(|&i| i != alpha).collect();
        Self::standard(rs, &s)
    }

    pub fn opposite(&self) -> Self {
        let sign = match self.sign {
            ParabolicSign::Plus => ParabolicSign::Minus,
            ParabolicSign::Minus => ParabolicSign::Plus,
        };
        Parabolic { sign, ..self.clone() }
    }

    pub fn moved(&self, rs: &RootSystem, w: &WeylElement) -> Self {
        Parabolic { conjugator: rs.weyl_compose(w, &self.conjugator).clone(), ..self.clone() }
    }

    pub fn is_proper(&self, rs: &RootSystem) -> bool {
        self.simple_subset.len() < rs.rank()
    }

    /// A maximal parabolic containing this one.
    pub fn enlarge_to_maximal(&self, rs: &RootSystem) -> Self {
        if self.simple_subset.len() + 1 >= rs.rank() {
            return self.clone();
        }
        let drop = (0..rs.rank()).find(|i| !self.simple_subset.contains(i)).expect("proper");
        let s: Vec<usize> = (0..rs.rank()).filter(|&i| i != drop).collect();
        Parabolic { simple_subset: s, ..self.clone() }
    }

    /// `λ` with roots of `P` at `λ ≥ 0`, `U_P` at `λ > 0`, `L_P` at `λ = 0`.
    pub fn grading(&self, rs: &RootSystem) -> Grading {
        let simple: Vec<i32> = (0..rs.rank())
            .map(|i| if self.simple_subset.contains(&i) { 0 } else { 1 })
            .collect();
        let g = Grading::from_simple(rs, &simple);
        let g = if self.sign == ParabolicSign::Minus { g.neg() } else { g };
        g.moved(rs, &self.conjugator)
    }

    /// Height grading of a Borel subgroup contained in `P`.
    pub fn borel_grading(&self, rs: &RootSystem) -> Grading {
        let g = Grading::height(rs);
        let g = if self.sign == ParabolicSign::Minus { g.neg() } else { g };
        g.moved(rs, &self.conjugator)
    }

    pub fn contains<R: CommRing>(&self, g: &Chevalley<R>, x: &GroupElement<R>) -> bool {
        g.in_graded_parabolic(x, &self.grading(g.rs()))
    }

    pub fn in_unipotent_radical<R: CommRing>(&self, g: &Chevalley<R>, x: &GroupElement<R>) -> bool {
        g.peel_graded(x, &self.grading(g.rs())).is_some()
    }

    pub fn in_levi<R: CommRing>(&self, g: &Chevalley<R>, x: &GroupElement<R>) -> bool {
        self.contains(g, x) && self.opposite().contains(g, x)
    }

    /// `x = u·l` with `u ∈ U_P`, `l ∈ L_P`.
    pub fn levi_split<R: CommRing>(
        &self,
        g: &Chevalley<R>,
        x: &GroupElement<R>,
    ) -> Option<(GroupElement<R>, GroupElement<R>)> {
        if !self.contains(g, x) {
            return None;
        }
        g.block_lu(x, &self.grading(g.rs()).neg())
    }
}

/// Proper parabolics containing the torus: standard ones first, then Weyl
/// conjugates, each group ordered by `(|S|, S)` and `(length, word)`.
pub fn parabolic_scan(rs: &RootSystem) -> Vec<Parabolic> {
    let l = rs.rank();
    let mut subsets: Vec<Vec<usize>> = (0u32..(1 << l))
        .map(|m| (0..l).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|s| s.len() < l)
        .collect();
    subsets.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let mut ws: Vec<&WeylElement> = rs.weyl_group().iter().collect();
    ws.sort_by(|a, b| (a.length(), &a.word).cmp(&(b.length(), &b.word)));
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for w in ws {
        for s in &subsets {
            let p = Parabolic::standard(rs, s).moved(rs, w);
            // distinct conjugators may give the same subgroup
            if seen.insert(p.grading(rs).0.iter().map(|v| v.signum()).collect::<Vec<_>>()) {
                out.push(p);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionResult<E> {
    pub root: usize,
    pub t: E,
    pub certificate: Certificate<E>,
    pub trace: Vec<String>,
    /// Descent steps taken through the lower central series.
    pub descent_depth: usize,
}

struct Run {
    trace: Vec<String>,
    depth: usize,
}

impl<R: CommRing> Chevalley<R> {
    fn loop_params(&self) -> Vec<R::Elem> {
        self.ring.parameter_set()
    }

    fn nonzero_elements(&self) -> Vec<R::Elem> {
        match self.ring.elements() {
            Some(v) => v.into_iter().filter(|x| !self.ring.is_zero(x)).collect(),
            None => self.ring.parameter_set(),
        }
    }

    fn units_other_than_one(&self) -> Vec<R::Elem> {
        match self.ring.elements() {
            Some(v) => v
                .into_iter()
                .filter(|x| self.ring.is_unit(x) && !self.ring.is_one(x))
                .collect(),
            None => vec![self.ring.neg(&self.ring.one())],
        }
    }

    fn central(&self, x: &GroupElement<R>) -> bool {
        self.is_central(x).unwrap_or(false)
    }

    fn xw(&self, root: usize, t: &R::Elem) -> GroupWord<R::Elem> {
        GroupWord::x(root, t.clone())
    }

    /// A proper parabolic containing `a`, given that `a` commutes with
    /// `X_α` modulo the center.
    pub fn escape_centralizer(&self, a: &GroupElement<R>, alpha: usize) -> Result<Parabolic> {
        for t in self.nonzero_elements() {
            let c = self.comm(a, &self.x_elem(alpha, &t));
            if !self.central(&c) {
                return Err(Error::HypothesisFails(format!(
                    "[a, x_{alpha}({t:?})] is not central"
                )));
            }
        }
        parabolic_scan(self.rs())
            .into_iter()
            .find(|p| p.contains(self, a))
            .ok_or_else(|| Error::NotFound("no proper parabolic contains the element".into()))
    }

    fn finish(&self, seed: &GroupElement<R>, w: Witness<R>, run: Run) -> Result<ExtractionResult<R::Elem>> {
        let (root, t) = self
            .as_root_element(&w.value)
            .ok_or_else(|| Error::SearchExhausted("final element is not a root element".into()))?;
        if !self.check_certificate(&w.cert, seed, &w.value)? {
            return Err(Error::SearchExhausted("certificate does not evaluate to the result".into()));
        }
        Ok(ExtractionResult { root, t, certificate: w.cert, trace: run.trace, descent_depth: run.depth })
    }

    pub fn extract_from_parabolic(
        &self,
        h: &GroupElement<R>,
        p: &Parabolic,
    ) -> Result<ExtractionResult<R::Elem>> {
        let mut run = Run { trace: Vec::new(), depth: 0 };
        let w = self.inp(Witness::seed(h.clone()), p, &mut run)?;
        self.finish(h, w, run)
    }

    fn inp(&self, y: Witness<R>, p: &Parabolic, run: &mut Run) -> Result<Witness<R>> {
        if self.central(&y.value) {
            return Err(Error::CentralInput);
        }
        if !p.contains(self, &y.value) {
            return Err(Error::HypothesisFails("element is not in the parabolic".into()));
        }
        if self.as_root_element(&y.value).is_some() {
            run.trace.push("parabolic: already a root element".into());
            return Ok(y);
        }
        let rs = self.rs();
        let lam = p.grading(rs);
        let u = if self.peel_graded(&y.value, &lam).is_some() {
            run.trace.push("parabolic: element lies in U_P".into());
            y
        } else {
            let mut found = None;
            'outer: for g in lam.positive_roots() {
                for t in self.loop_params() {
                    let c = self.w_comm_right(&y, &self.xw(g, &t))?;
                    if !c.value.is_identity(&self.ring) {
                        run.trace.push(format!("parabolic: commutator with x_{g}({t:?}) enters U_P"));
                        found = Some(c);
                        break 'outer;
                    }
                }
            }
            match found {
                Some(c) => c,
                None => {
                    run.trace.push("parabolic: centralizes U_P, searching".into());
                    return self.search(y, run);
                }
            }
        };
        self.push_up(u, &p.borel_grading(rs), run)
    }

    /// From `u ∈ U_μ` nontrivial, commutate upward until a root element.
    fn push_up(&self, mut u: Witness<R>, mu: &Grading, run: &mut Run) -> Result<Witness<R>> {
        let roots = mu.positive_roots();
        for _ in 0..4 * roots.len() + 4 {
            if self.as_root_element(&u.value).is_some() {
                return Ok(u);
            }
            let mut next = None;
            'outer: for &b in &roots {
                for t in self.loop_params() {
                    let c = self.w_comm_right(&u, &self.xw(b, &t))?;
                    if !c.value.is_identity(&self.ring) {
                        run.trace.push(format!("push up: commutator with x_{b}({t:?})"));
                        next = Some(c);
                        break 'outer;
                    }
                }
            }
            if let Some(c) = next {
                u = c;
                continue;
            }
            // u is central in U_μ; isolate one root space with the torus
            let Some(supp) = self.peel_graded(&u.value, mu) else { break };
            let mut next = None;
            'iso: for b in 0..self.rs().num_roots() {
                for eps in self.units_other_than_one() {
                    let hw = GroupWord::from_gens([Generator::H { root: b, eps: eps.clone() }]);
                    let v = self.w_product(&[&self.w_conj(&u, &hw)?, &self.w_inverse(&u)]);
                    if v.value.is_identity(&self.ring) {
                        continue;
                    }
                    if let Some(s2) = self.peel_graded(&v.value, mu) {
                        if s2.len() < supp.len() {
                            run.trace.push(format!("push up: torus h_{b}({eps:?}) isolates"));
                            next = Some(v);
                            break 'iso;
                        }
                    }
                }
            }
            match next {
                Some(v) => u = v,
                None => break,
            }
        }
        run.trace.push("push up stalled, searching".into());
        self.search(u, run)
    }

    /// Bounded breadth-first search over commutators with `x_β(±1)` and
    /// conjugates by `w_β(1)`.
    fn search(&self, start: Witness<R>, run: &mut Run) -> Result<Witness<R>> {
        const DEPTH: usize = 4;
        const CAP: usize = 20_000;
        if self.as_root_element(&start.value).is_some() {
            return Ok(start);
        }
        let one = self.ring.one();
        let minus = self.ring.neg(&one);
        let mut seen = hashbrown::HashSet::new();
        seen.insert(start.value.clone());
        let mut frontier = vec![start];
        for d in 0..DEPTH {
            let mut next = Vec::new();
            for s in &frontier {
                for b in 0..self.rs().num_roots() {
                    let mut moves = Vec::new();
                    for t in [&one, &minus] {
                        moves.push(self.w_comm_right(s, &self.xw(b, t))?);
                    }
                    let ww = GroupWord::from_gens([Generator::W { root: b, eps: one.clone() }]);
                    moves.push(self.w_conj(s, &ww)?);
                    for m in moves {
                        if self.central(&m.value) || !seen.insert(m.value.clone()) {
                            continue;
                        }
                        if self.as_root_element(&m.value).is_some() {
                            run.trace.push(format!("search: found at depth {}", d + 1));
                            return Ok(m);
                        }
                        next.push(m);
                    }
                }
                if seen.len() > CAP {
                    break;
                }
            }
            frontier = next;
            if frontier.is_empty() || seen.len() > CAP {
                break;
            }
        }
        Err(Error::SearchExhausted(format!("no root element within depth {DEPTH}; trace: {:?}", run.trace)))
    }

    pub fn extract_from_puq(
        &self,
        h: &GroupElement<R>,
        q: &Parabolic,
        p: &Parabolic,
    ) -> Result<ExtractionResult<R::Elem>> {
        let mut run = Run { trace: Vec::new(), depth: 0 };
        let w = self.puq(Witness::seed(h.clone()), q, p, &mut run)?;
        self.finish(h, w, run)
    }

    /// `y ∈ U_Q·P`; descends along the lower central series of `U`.
    fn puq(&self, y: Witness<R>, q: &Parabolic, p: &Parabolic, run: &mut Run) -> Result<Witness<R>> {
        if self.central(&y.value) {
            return Err(Error::CentralInput);
        }
        let rs = self.rs();
        let p = p.enlarge_to_maximal(rs);
        let lam = p.grading(rs);
        let mu = q.borel_grading(rs);
        let alpha = (0..rs.num_roots())
            .filter(|&r| mu.of(r) > 0 && lam.of(r) == 0)
            .min_by_key(|&r| (mu.of(r), r))
            .ok_or(Error::NoCommonRoot)?;
        run.trace.push(format!("PUQ: using root {alpha} in U ∩ L_P"));
        let mut cur = y;
        for step in 0..=rs.max_height() as usize {
            let (a, b) = self
                .block_lu(&cur.value, &lam)
                .ok_or_else(|| Error::HypothesisFails("element is not in U_Q·P".into()))?;
            let params = self
                .peel_graded(&a, &lam.neg())
                .ok_or_else(|| Error::HypothesisFails("U part is not unipotent".into()))?;
            if params.iter().any(|(r, _)| mu.of(*r) <= 0) {
                return Err(Error::HypothesisFails("element is not in U_Q·P".into()));
            }
            if params.is_empty() {
                run.trace.push(format!("PUQ: step {step}: element lies in P"));
                return self.inp(cur, &p, run);
            }
            let (_, e) = self
                .torus_left_split(&b)
                .ok_or_else(|| Error::HypothesisFails("P part lies in no Gauss cell".into()))?;
            let einv = e.inverse();
            let mut next = None;
            for r in self.loop_params() {
                let c = self.w_comm_left(&self.xw(alpha, &r), &cur)?;
                let z = self.w_conj(&c, &einv)?;
                if !self.central(&z.value) {
                    run.trace.push(format!("PUQ: step {step}: descend with x_{alpha}({r:?})"));
                    next = Some(z);
                    break;
                }
            }
            match next {
                Some(z) => {
                    cur = self.w_inverse(&z);
                    run.depth += 1;
                }
                None => {
                    let pp = self.escape_centralizer(&cur.value, alpha)?;
                    run.trace.push(format!("PUQ: step {step}: centralizes X_{alpha}, parabolic {pp:?}"));
                    return self.inp(cur, &pp, run);
                }
            }
        }
        Err(Error::SearchExhausted("descent exceeded the nilpotency class".into()))
    }

    /// `h = b·c·ẇ` with `b ∈ U⁻`, `c ∈ B`.
    pub fn extract_from_cell(
        &self,
        h: &GroupElement<R>,
        f: &GaussFactorization<R::Elem>,
    ) -> Result<ExtractionResult<R::Elem>> {
        if f.orientation != Orientation::UminusBw {
            return Err(Error::HypothesisFails("cell must be U⁻·B·w".into()));
        }
        if self.central(h) {
            return Err(Error::CentralInput);
        }
        let rs = self.rs();
        let l = rs.rank();
        let b_word = f.u_word();
        let mut last_err = Error::NotFound("no simple root pair".into());
        for alpha in 0..l {
            for beta in (0..l).filter(|&b| b != alpha) {
                let mut run = Run { trace: Vec::new(), depth: 0 };
                run.trace.push(format!("cell: w = {:?}, α = {alpha}, β = {beta}", f.w.word));
                match self.cell_case(h, f, &b_word, alpha, beta, &mut run) {
                    Ok(w) => return self.finish(h, w, run),
                    Err(e) => last_err = e,
                }
            }
        }
        Err(last_err)
    }

    fn cell_case(
        &self,
        h: &GroupElement<R>,
        f: &GaussFactorization<R::Elem>,
        b_word: &GroupWord<R::Elem>,
        alpha: usize,
        beta: usize,
        run: &mut Run,
    ) -> Result<Witness<R>> {
        let rs = self.rs();
        let p = Parabolic::maximal(rs, alpha).moved(rs, &f.w);
        let q = Parabolic::maximal(rs, beta).opposite();
        let a = Witness::seed(h.clone());
        for r in self.loop_params() {
            // x_α(r)^{b⁻¹} = b x_α(r) b⁻¹
            let xr = b_word.concat(&self.xw(alpha, &r)).concat(&b_word.inverse());
            let y = self.w_comm_left(&xr, &a)?;
            if !self.central(&y.value) {
                run.trace.push(format!("cell: [x_{alpha}({r:?})^(b^-1), a] is noncentral"));
                return self.puq(self.w_inverse(&y), &p, &q, run);
            }
        }
        let ab = self.w_conj(&a, b_word)?;
        let pp = self.escape_centralizer(&ab.value, alpha)?;
        run.trace.push(format!("cell: a^b centralizes X_{alpha}; parabolic {pp:?}"));
        self.inp(ab, &pp, run)
    }

    pub fn extract_over_field(&self, h: &GroupElement<R>) -> Result<ExtractionResult<R::Elem>> {
        if self.central(h) {
            return Err(Error::CentralInput);
        }
        let f = self.gauss_decompose(h, Orientation::UminusBw)?;
        self.extract_from_cell(h, &f)
    }
}

impl Chevalley<Zmod> {
    /// For `h ≡ central` modulo the Jacobson radical.
    pub fn extract_under_radical(&self, h: &GroupElement<Zmod>) -> Result<ExtractionResult<u32>> {
        if self.central(h) {
            return Err(Error::CentralInput);
        }
        let rad = jacobson_radical(&self.ring.descriptor())?;
        let m = rad.generator() as u32;
        if m == 0 || m == self.ring.modulus() {
            return Err(Error::NotUnderRadical);
        }
        let quot = Chevalley::new(self.table.clone(), Zmod::new(m)?);
        let hq = h.map(|v| v % m);
        if !quot.central(&hq) {
            return Err(Error::NotUnderRadical);
        }
        if !self.in_big_cell(h) {
            return Err(Error::HypothesisFails("element under the radical is outside the big cell".into()));
        }
        if let Some((root, t)) = self.as_root_element(h) {
            return Ok(ExtractionResult {
                root,
                t,
                certificate: Certificate::Seed,
                trace: vec![format!("radical: ({m}), already a root element")],
                descent_depth: 0,
            });
        }
        let rs = self.rs();
        let mut run = Run { trace: vec![format!("radical: ({m}), big cell")], depth: 0 };
        let q = Parabolic::borel(rs);
        let p = Parabolic::maximal(rs, 0).opposite();
        let w = self.puq(Witness::seed(h.clone()), &q, &p, &mut run)?;
        self.finish(h, w, run)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::CartanType;

    fn group(t: &str, p: u32) -> Chevalley<Zmod> {
        Chevalley::for_type(CartanType::parse(t).unwrap(), Zmod::prime_field(p).unwrap()).unwrap()
    }

    #[test]
    fn parabolic_membership() {
        let g = group("A2", 3);
        let rs = g.rs().clone();
        let b = Parabolic::borel(&rs);
        assert!(b.contains(&g, &g.x_elem(0, &1)));
        assert!(!b.contains(&g, &g.x_elem(3, &1)));
        let p = Parabolic::maximal(&rs, 0); // Levi contains α2
        assert!(p.contains(&g, &g.x_elem(rs.negate(1), &1)));
        assert!(!p.contains(&g, &g.x_elem(rs.negate(0), &1)));
        assert!(p.in_unipotent_radical(&g, &g.x_elem(0, &2)));
        assert!(!p.in_unipotent_radical(&g, &g.x_elem(1, &2)));
        assert!(p.in_levi(&g, &g.x_elem(1, &2)));
        let x = g.product([g.x_elem(0, &1), g.x_elem(rs.negate(1), &2), g.torus_elem(&[2, 1]).unwrap()].iter());
        let (u, l) = p.levi_split(&g, &x).unwrap();
        assert!(p.in_unipotent_radical(&g, &u) && p.in_levi(&g, &l));
        assert_eq!(g.mul(&u, &l), x);
        // conjugate parabolic contains the conjugated elements
        let w = rs.longest().clone();
        let pw = p.moved(&rs, &w);
        let xw = g.conj(&x, g.weyl_rep(&w));
        assert!(pw.contains(&g, &xw));
    }

    #[test]
    fn scan_is_proper_and_standard_first() {
        let g = group("A2", 2);
        let scan = parabolic_scan(g.rs());
        assert!(scan.iter().all(|p| p.is_proper(g.rs())));
        assert!(scan[0].simple_subset.is_empty() && scan[0].conjugator.is_identity());
        // A2: 6 Borels and 6 maximal parabolics containing T
        assert_eq!(scan.len(), 12);
    }

    #[test]
    fn escape_examples() {
        let g = group("A2", 3);
        let rs = g.rs().clone();
        assert_eq!(g.escape_centralizer(&g.identity(), 0).unwrap(), Parabolic::borel(&rs));
        let t = g.torus_elem(&[2, 2]).unwrap();
        let p = g.escape_centralizer(&t, 2).unwrap();
        assert!(p.contains(&g, &t));
        assert!(matches!(
            g.escape_centralizer(&g.x_elem(0, &1), rs.negate(0)),
            Err(Error::HypothesisFails(_))
        ));
    }

    #[test]
    fn parabolic_extraction_examples() {
        let z9 = Zmod::new(9).unwrap();
        let g = Chevalley::for_type(CartanType::A(2), z9).unwrap();
        let rs = g.rs().clone();
        let r = g.extract_from_parabolic(&g.x_elem(0, &2), &Parabolic::borel(&rs)).unwrap();
        assert_eq!((r.root, r.t), (0, 2));

        let f = group("A2", 5);
        let t = f.torus_elem(&[2, 1]).unwrap();
        let r = f.extract_from_parabolic(&t, &Parabolic::borel(&rs)).unwrap();
        let x = f.x_elem(r.root, &r.t);
        assert!(f.check_certificate(&r.certificate, &t, &x).unwrap());
        assert_eq!(
            f.extract_from_parabolic(&f.identity(), &Parabolic::borel(&rs)),
            Err(Error::CentralInput)
        );
    }

    #[test]
    fn cell_and_field_extraction() {
        let g = group("A2", 3);
        let h = g.x_elem(0, &1);
        let r = g.extract_over_field(&h).unwrap();
        assert!(g.check_certificate(&r.certificate, &h, &g.x_elem(r.root, &r.t)).unwrap());
        let w0 = g.rs().longest().clone();
        let h = g.mul(g.weyl_rep(&w0), &g.torus_elem(&[2, 1]).unwrap());
        let r = g.extract_over_field(&h).unwrap();
        assert!(g.check_certificate(&r.certificate, &h, &g.x_elem(r.root, &r.t)).unwrap());
        assert_eq!(g.extract_over_field(&g.identity()), Err(Error::CentralInput));
    }

    #[test]
    fn radical_examples() {
        let z9 = Zmod::new(9).unwrap();
        let g = Chevalley::for_type(CartanType::A(2), z9).unwrap();
        let r = g.extract_under_radical(&g.x_elem(1, &3)).unwrap();
        assert_eq!((r.root, r.t), (1, 3));
        assert_eq!(g.extract_under_radical(&g.identity()), Err(Error::CentralInput));
        assert_eq!(g.extract_under_radical(&g.x_elem(1, &1)), Err(Error::NotUnderRadical));
        let z4 = Zmod::new(4).unwrap();
        let g = Chevalley::for_type(CartanType::A(2), z4).unwrap();
        let h = g.product([g.x_elem(3, &2), g.x_elem(0, &2), g.torus_elem(&[3, 1]).unwrap()].iter());
        let r = g.extract_under_radical(&h).unwrap();
        assert!(g.check_certificate(&r.certificate, &h, &g.x_elem(r.root, &r.t)).unwrap());
    }
}
