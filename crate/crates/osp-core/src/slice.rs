//! Finite slices of the graded modules and exact subspace computations on them.
//!
//! A slice is the set of monomials with a fixed `k` and total degree at most
//! `D`, listed in ascending canonical order. Because the order is graded, the
//! monomials of degree at most `d` form a prefix, and the degree filtration of
//! any subspace can be read from the pivots of its echelon basis.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use num::BigRational;

use crate::error::{OspError, Result};
use crate::linalg::{integerize, integerize_scaled, kernel, Echelon, Interner, Reducer, SparseVec};
use crate::rep::{delta_eta, k_degree, Part, Rep, RepConfig};
use crate::superpoly::{Monomial, Polynomial, SuperOperator, VariableSignature};

/// `(cfg, k, D)`: monomials with `k_degree = k` and total degree at most `D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SliceKey {
    pub cfg: RepConfig,
    pub k: i64,
    pub max_degree: u32,
}

impl SliceKey {
    pub fn new(cfg: &RepConfig, k: i64, max_degree: u32) -> Self {
        Self { cfg: cfg.clone(), k, max_degree }
    }
}

/// An enumerated slice with its monomial index.
#[derive(Debug)]
pub struct Slice {
    pub key: SliceKey,
    pub sig: VariableSignature,
    pub monomials: Vec<Monomial>,
    pub degrees: Vec<u32>,
    index: HashMap<Monomial, usize>,
}

impl Slice {
    pub fn new(key: SliceKey) -> Arc<Self> {
        let sig = key.cfg.signature();
        let mut monomials = Vec::new();
        let nf = sig.num_fermionic;
        for mask in 0u64..(1u64 << nf) {
            let t = mask.count_ones();
            if t > key.max_degree {
                continue;
            }
            let budget = key.max_degree - t;
            let mut exps = vec![0u32; sig.num_bosonic];
            enumerate_exps(&mut exps, 0, budget, &mut |e| {
                let m = Monomial::new(e.to_vec(), mask);
                if k_degree(&key.cfg, &m) == key.k {
                    monomials.push(m);
                }
            });
        }
        monomials.sort();
        let degrees = monomials.iter().map(Monomial::total_degree).collect();
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Arc::new(Self { key, sig, monomials, degrees, index })
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Number of monomials of degree at most `d`.
    pub fn count_upto(&self, d: u32) -> usize {
        self.degrees.partition_point(|&x| x <= d)
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Exact coordinates of `p`, or `None` when `p` leaves the slice.
    pub fn rcoords(&self, p: &Polynomial) -> Option<Vec<(usize, BigRational)>> {
        let mut entries = Vec::with_capacity(p.len());
        for (m, c) in &p.terms {
            entries.push((self.index_of(m)?, c.clone()));
        }
        entries.sort_by_key(|(i, _)| *i);
        Some(entries)
    }

    /// Primitive integer coordinates of a nonzero multiple of `p`.
    pub fn coords(&self, p: &Polynomial) -> Option<SparseVec> {
        self.rcoords(p).map(integerize)
    }

    pub fn to_poly(&self, v: &[(usize, BigRational)]) -> Polynomial {
        let mut p = Polynomial::zero(self.sig);
        for (i, c) in v {
            p.add_term(self.monomials[*i].clone(), c.clone());
        }
        p
    }

    pub fn int_to_poly(&self, v: &SparseVec) -> Polynomial {
        let mut p = Polynomial::zero(self.sig);
        for (i, c) in v {
            p.add_term(self.monomials[*i].clone(), BigRational::from_integer(c.clone()));
        }
        p
    }
}

fn enumerate_exps(exps: &mut Vec<u32>, pos: usize, budget: u32, f: &mut impl FnMut(&[u32])) {
    if pos == exps.len() {
        f(exps);
        return;
    }
    for e in 0..=budget {
        exps[pos] = e;
        enumerate_exps(exps, pos + 1, budget - e, f);
    }
    exps[pos] = 0;
}

/// A subspace of a slice, kept in echelon form.
#[derive(Clone, Debug)]
pub struct Space {
    pub slice: Arc<Slice>,
    pub ech: Echelon,
}

impl Space {
    pub fn empty(slice: &Arc<Slice>) -> Self {
        Self { slice: slice.clone(), ech: Echelon::new() }
    }

    /// The whole slice up to degree `d`.
    pub fn full(slice: &Arc<Slice>, d: u32) -> Self {
        let mut s = Self::empty(slice);
        for i in 0..slice.count_upto(d) {
            s.ech.insert(vec![(i, 1.into())]);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.ech.dim()
    }

    /// Dimension of the intersection with total degree at most `d`.
    pub fn dim_upto(&self, d: u32) -> usize {
        let degs = &self.slice.degrees;
        self.ech.count_pivots(|p| degs[p] <= d)
    }

    /// Inserts a polynomial; errors when it leaves the slice.
    pub fn insert(&mut self, p: &Polynomial) -> Result<bool> {
        let v = self
            .slice
            .coords(p)
            .ok_or_else(|| OspError::Invalid(format!("{p} is outside the slice")))?;
        Ok(self.ech.insert(v))
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        match self.slice.coords(p) {
            Some(v) => self.ech.contains(&v),
            None => false,
        }
    }

    /// Echelon rows with pivot degree at most `d`: a basis of the intersection
    /// with that degree filtration.
    pub fn rows_upto(&self, d: u32) -> Vec<SparseVec> {
        let degs = &self.slice.degrees;
        self.ech.rows().filter(|r| degs[r.last().unwrap().0] <= d).cloned().collect()
    }

    /// The intersection with total degree at most `d`.
    pub fn truncated(&self, d: u32) -> Space {
        let mut s = Space::empty(&self.slice);
        for r in self.rows_upto(d) {
            s.ech.insert(r);
        }
        s
    }

    /// Reduced echelon basis as monic polynomials, ascending by leading monomial.
    pub fn basis(&self) -> Vec<Polynomial> {
        self.ech.reduced_basis().iter().map(|v| self.slice.to_poly(v)).collect()
    }

    /// True when `other` (same slice) is contained in `self` up to degree `d`.
    pub fn contains_upto(&self, other: &Space, d: u32) -> bool {
        other.rows_upto(d).into_iter().all(|r| self.ech.contains(&r))
    }

    /// Dimension of `(self + other) ∩ F_d`, where `F_d` is total degree at
    /// most `d`. Elements of low degree may arise only as differences of
    /// elements of higher degree, so the sum is reduced before truncating.
    pub fn sum_dim_upto(&self, other: &Space, d: u32) -> usize {
        self.union(other).dim_upto(d)
    }

    pub fn union(&self, other: &Space) -> Space {
        let mut s = self.clone();
        for r in other.ech.rows() {
            s.ech.insert(r.clone());
        }
        s
    }
}

/// A finite subspace: the slice it lives in and its reduced echelon basis.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    pub slice: SliceKey,
    pub vectors: Vec<Polynomial>,
    pub monomial_index: Vec<Monomial>,
}

impl SubspaceBasis {
    pub fn from_space(space: &Space) -> Self {
        Self {
            slice: space.slice.key.clone(),
            vectors: space.basis(),
            monomial_index: space.slice.monomials.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// Analysis engine for one configuration.
#[derive(Clone, Debug)]
pub struct Analyzer {
    pub rep: Rep,
    pub delta: Option<SuperOperator>,
    pub eta: Option<SuperOperator>,
}

/// Where singular vectors are sought.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Within {
    A,
    H,
}

impl Analyzer {
    pub fn new(cfg: &RepConfig) -> Result<Self> {
        let rep = Rep::new(cfg)?;
        let (delta, eta) = match delta_eta(cfg) {
            Ok((d, e)) => (Some(d), Some(e)),
            Err(_) => (None, None),
        };
        Ok(Self { rep, delta, eta })
    }

    pub fn cfg(&self) -> &RepConfig {
        &self.rep.cfg
    }

    pub fn delta(&self) -> Result<&SuperOperator> {
        self.delta
            .as_ref()
            .ok_or_else(|| OspError::Invalid(format!("no Δ for {}", self.rep.cfg.id())))
    }

    pub fn eta(&self) -> Result<&SuperOperator> {
        self.eta
            .as_ref()
            .ok_or_else(|| OspError::Invalid(format!("no η for {}", self.rep.cfg.id())))
    }

    pub fn slice(&self, k: i64, max_degree: u32) -> Arc<Slice> {
        Slice::new(SliceKey::new(&self.rep.cfg, k, max_degree))
    }

    /// Slice indices up to degree `d`, grouped by weight.
    pub fn weight_groups(&self, slice: &Slice, d: u32) -> BTreeMap<Vec<i64>, Vec<usize>> {
        let mut groups: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for i in 0..slice.count_upto(d) {
            groups.entry(self.rep.monomial_weight(&slice.monomials[i])).or_default().push(i);
        }
        groups
    }

    /// Kernel of the stacked maps `ops` on the slice prefix of degree at most `d`.
    pub fn joint_kernel(&self, slice: &Arc<Slice>, d: u32, ops: &[&SuperOperator]) -> Space {
        let mut space = Space::empty(slice);
        for idx in self.weight_groups(slice, d).into_values() {
            for v in kernel_on(slice, &idx, ops) {
                space.ech.insert(v);
            }
        }
        space
    }

    /// `H_k` up to degree `d` inside the given slice.
    pub fn harmonic_in(&self, slice: &Arc<Slice>, d: u32) -> Result<Space> {
        let delta = self.delta()?;
        Ok(self.joint_kernel(slice, d, &[delta]))
    }

    /// Span of `op` applied to the slice prefix of degree at most `d` of
    /// `source`, expressed in `target`. Images leaving `target` are an error.
    pub fn image_in(
        &self,
        op: &SuperOperator,
        source: &Slice,
        d: u32,
        target: &Arc<Slice>,
    ) -> Result<Space> {
        let mut space = Space::empty(target);
        for m in &source.monomials[..source.count_upto(d)] {
            let img = op.apply_monomial(source.sig, m);
            if img.is_zero() {
                continue;
            }
            space.insert(&img)?;
        }
        Ok(space)
    }

    /// Image of a space under `op`, inside `target`.
    pub fn map_space(&self, op: &SuperOperator, space: &Space, target: &Arc<Slice>) -> Result<Space> {
        let mut out = Space::empty(target);
        for row in space.ech.rows() {
            let p = space.slice.int_to_poly(row);
            let img = op.apply(&p);
            if !img.is_zero() {
                out.insert(&img)?;
            }
        }
        Ok(out)
    }

    /// Vectors annihilated by the chosen positive elements (and by `Δ` when
    /// `within = H`), one echelon basis per weight space, up to degree `d`.
    pub fn singular_in(&self, slice: &Arc<Slice>, d: u32, part: Part, within: Within) -> Result<Space> {
        let mut ops: Vec<&SuperOperator> = self.rep.part_ops(part);
        if within == Within::H {
            ops.push(self.delta()?);
        }
        Ok(self.joint_kernel(slice, d, &ops))
    }

    /// Vectors `f` of `space` with `ρ(e) f ∈ sub` for every chosen positive `e`:
    /// singular vectors of the quotient `space / sub`, returned as a basis of
    /// a complement of `sub` inside them.
    pub fn quotient_singular(&self, space: &Space, sub: &Space, part: Part) -> Result<Vec<Polynomial>> {
        let ops = self.rep.part_ops(part);
        let slice = &space.slice;
        // Coordinates in terms of the echelon rows of `space`, grouped by weight.
        let rows: Vec<SparseVec> = space.ech.rows().cloned().collect();
        let mut groups: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (ri, r) in rows.iter().enumerate() {
            let m = &slice.monomials[r.last().unwrap().0];
            groups.entry(self.rep.monomial_weight(m)).or_default().push(ri);
        }
        let reducer = Reducer::new(&sub.ech);
        let mut out = Vec::new();
        let mut seen = sub.clone();
        for idx in groups.into_values() {
            let mut target: Interner<(usize, usize)> = Interner::new();
            let mut images = Vec::with_capacity(idx.len());
            let mut scales = Vec::with_capacity(idx.len());
            for &ri in &idx {
                let p = slice.int_to_poly(&rows[ri]);
                let mut entries = Vec::new();
                for (o, op) in ops.iter().enumerate() {
                    let img = op.apply(&p);
                    if img.is_zero() {
                        continue;
                    }
                    let v = slice
                        .rcoords(&img)
                        .ok_or_else(|| OspError::Invalid("image leaves the slice".into()))?;
                    for (j, c) in reducer.reduce(&v) {
                        entries.push((target.id(&(o, j)), c));
                    }
                }
                let (v, c) = integerize_scaled(entries);
                images.push(v);
                scales.push(c);
            }
            for combo in kernel(&images) {
                let mut p = Polynomial::zero(slice.sig);
                for (j, c) in &combo {
                    let coef = BigRational::from_integer(c.clone()) * &scales[*j];
                    p.add_assign_scaled(&slice.int_to_poly(&rows[idx[*j]]), &coef);
                }
                if seen.insert(&p)? {
                    out.push(p.monic());
                }
            }
        }
        Ok(out)
    }

    /// Breadth-first closure of `gens` under every non-Cartan basis operator,
    /// skipping any image with a term above degree `D` of `slice`.
    pub fn generate_in(&self, slice: &Arc<Slice>, gens: &[Polynomial]) -> Result<Space> {
        self.generate_from(Space::empty(slice), gens)
    }

    /// Closure of `base + span(gens)`, where `base` is already stable: only
    /// new vectors are expanded.
    pub fn generate_from(&self, base: Space, gens: &[Polynomial]) -> Result<Space> {
        let dmax = base.slice.key.max_degree;
        let ops: Vec<&SuperOperator> = self
            .rep
            .elements
            .iter()
            .zip(&self.rep.ops)
            .filter(|(b, _)| !b.cartan)
            .map(|(_, o)| o)
            .collect();
        let mut space = base;
        let mut queue: VecDeque<Polynomial> = VecDeque::new();
        for g in gens {
            for comp in self.weight_components(g) {
                if comp.max_degree().unwrap_or(0) > dmax {
                    continue;
                }
                if space.insert(&comp)? {
                    queue.push_back(comp);
                }
            }
        }
        while let Some(v) = queue.pop_front() {
            for op in &ops {
                let w = op.apply(&v);
                if w.is_zero() || w.max_degree().unwrap_or(0) > dmax {
                    continue;
                }
                if space.insert(&w)? {
                    queue.push_back(w);
                }
            }
        }
        Ok(space)
    }

    /// Splits a polynomial into weight components.
    pub fn weight_components(&self, p: &Polynomial) -> Vec<Polynomial> {
        let mut comps: BTreeMap<Vec<i64>, Polynomial> = BTreeMap::new();
        for (m, c) in &p.terms {
            comps
                .entry(self.rep.monomial_weight(m))
                .or_insert_with(|| Polynomial::zero(p.sig))
                .add_term(m.clone(), c.clone());
        }
        comps.into_values().collect()
    }

    /// Stability of `space` under every basis operator, tested on the echelon
    /// rows of degree at most `d`; images must stay in `space`.
    pub fn is_stable_upto(&self, space: &Space, d: u32) -> Result<bool> {
        for row in space.rows_upto(d) {
            let p = space.slice.int_to_poly(&row);
            for op in &self.rep.ops {
                let img = op.apply(&p);
                if img.is_zero() {
                    continue;
                }
                if !space.contains(&img) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Kernel of the stacked maps `ops` on the span of the slice monomials `idx`,
/// as primitive vectors in slice coordinates.
pub fn kernel_on(slice: &Slice, idx: &[usize], ops: &[&SuperOperator]) -> Vec<SparseVec> {
    let mut target: Interner<(usize, Monomial)> = Interner::new();
    let mut scales = Vec::with_capacity(idx.len());
    let images: Vec<SparseVec> = idx
        .iter()
        .map(|&i| {
            let m = &slice.monomials[i];
            let mut entries = Vec::new();
            for (o, op) in ops.iter().enumerate() {
                for (mm, c) in op.apply_monomial(slice.sig, m).terms {
                    entries.push((target.id(&(o, mm)), c));
                }
            }
            let (v, c) = integerize_scaled(entries);
            scales.push(c);
            v
        })
        .collect();
    kernel(&images)
        .into_iter()
        .map(|combo| {
            integerize(
                combo
                    .iter()
                    .map(|(j, c)| (idx[*j], BigRational::from_integer(c.clone()) * &scales[*j])),
            )
        })
        .collect()
}

/// All monomials of the slice in canonical order.
pub fn slice_basis(key: &SliceKey) -> SubspaceBasis {
    let slice = Slice::new(key.clone());
    let space = Space::full(&slice, key.max_degree);
    SubspaceBasis::from_space(&space)
}

/// Exact kernel of `Δ` on the slice.
pub fn harmonic_space(key: &SliceKey) -> Result<SubspaceBasis> {
    let an = Analyzer::new(&key.cfg)?;
    let slice = Slice::new(key.clone());
    Ok(SubspaceBasis::from_space(&an.harmonic_in(&slice, key.max_degree)?))
}

/// Singular vectors on the slice, one echelon basis per weight space.
pub fn singular_vectors(key: &SliceKey, part: Part, within: Within) -> Result<Vec<Polynomial>> {
    let an = Analyzer::new(&key.cfg)?;
    let slice = Slice::new(key.clone());
    Ok(an.singular_in(&slice, key.max_degree, part, within)?.basis())
}

/// Windowed closure of `gens`; only degrees up to `D − verify_margin` are
/// returned, where the closure is trusted as a lower bound.
pub fn generate_submodule(key: &SliceKey, gens: &[Polynomial], verify_margin: u32) -> Result<SubspaceBasis> {
    if gens.is_empty() {
        return Err(OspError::Invalid("empty generator list".into()));
    }
    let an = Analyzer::new(&key.cfg)?;
    let slice = Slice::new(key.clone());
    let space = an.generate_in(&slice, gens)?;
    let d = key.max_degree.saturating_sub(verify_margin);
    Ok(SubspaceBasis::from_space(&space.truncated(d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(r: usize) -> RepConfig {
        RepConfig::a(false, 1, 1, r).unwrap()
    }

    #[test]
    fn slice_enumeration_counts() {
        let b = slice_basis(&SliceKey::new(&cfg(0), 1, 3));
        assert_eq!(b.dim(), 4);
        let b = slice_basis(&SliceKey::new(&cfg(0), 2, 4));
        assert_eq!(b.dim(), 8);
        let b = slice_basis(&SliceKey::new(&cfg(0), 5, 2));
        assert_eq!(b.dim(), 0);
    }

    #[test]
    fn harmonic_examples() {
        let h = harmonic_space(&SliceKey::new(&cfg(0), 2, 2)).unwrap();
        assert_eq!(h.dim(), 7);
        for d in 0..=8 {
            let h = harmonic_space(&SliceKey::new(&cfg(1), 2, d)).unwrap();
            assert_eq!(h.dim(), 0);
        }
        let h = harmonic_space(&SliceKey::new(&cfg(0), 0, 0)).unwrap();
        assert_eq!(h.vectors, vec![Polynomial::one(cfg(0).signature())]);
    }

    #[test]
    fn harmonic_vectors_are_harmonic() {
        for c in [cfg(0), cfg(1), RepConfig::a(true, 1, 1, 0).unwrap(), RepConfig::a(false, 2, 1, 1).unwrap()] {
            let an = Analyzer::new(&c).unwrap();
            let slice = an.slice(1, 5);
            let h = an.harmonic_in(&slice, 5).unwrap();
            assert!(h.dim() > 0);
            for v in h.basis() {
                assert!(an.delta().unwrap().apply(&v).is_zero(), "{v}");
            }
        }
        let c = RepConfig::a(true, 1, 1, 0).unwrap();
        let an = Analyzer::new(&c).unwrap();
        let slice = an.slice(2, 2);
        let h = an.harmonic_in(&slice, 2).unwrap();
        assert!(h.contains(&Polynomial::parse(c.signature(), "x1 x2 - x3^2").unwrap()));
    }

    #[test]
    fn quotient_singular_vectors() {
        // Modulo the line spanned by eta, H_2 has two singular vectors at m1 = 1:
        // the tops of <x1^2> and <x2^2>, which meet only in that line.
        let c = cfg(0);
        let an = Analyzer::new(&c).unwrap();
        let slice = an.slice(2, 2);
        let h = an.harmonic_in(&slice, 2).unwrap();
        let mut line = Space::empty(&slice);
        line.insert(&Polynomial::parse(c.signature(), "x1 x2 + t1 t2").unwrap()).unwrap();
        let sing = an.quotient_singular(&h, &line, Part::Positive).unwrap();
        let expect: Vec<Polynomial> =
            ["x2 t1", "x1^2"].iter().map(|s| Polynomial::parse(c.signature(), s).unwrap()).collect();
        assert_eq!(sing, expect);
        let a = an.generate_in(&slice, &expect[..1]).unwrap();
        let b = an.generate_in(&slice, &expect[1..]).unwrap();
        assert_eq!((a.dim(), b.dim(), a.sum_dim_upto(&b, 2)), (4, 4, 7));
    }

    #[test]
    fn eta_generates_a_line() {
        let c = cfg(0);
        let eta = Polynomial::parse(c.signature(), "x1 x2 + t1 t2").unwrap();
        let g = generate_submodule(&SliceKey::new(&c, 2, 8), &[eta], 4).unwrap();
        assert_eq!(g.dim(), 1);
    }

    #[test]
    fn closure_of_one_reaches_quadratics() {
        let c = cfg(0);
        let one = Polynomial::one(c.signature());
        let g = generate_submodule(&SliceKey::new(&c, 0, 2), &[one], 0).unwrap();
        assert_eq!(g.dim(), 1);
        let c = RepConfig::a(false, 1, 1, 1).unwrap();
        let one = Polynomial::one(c.signature());
        let g = generate_submodule(&SliceKey::new(&c, 0, 6), &[one], 2).unwrap();
        assert!(g.vectors.iter().any(|v| v.terms.keys().any(|m| m.exps == vec![1, 1])));
    }
}
