//! Exact analysis on weight spaces of the first family.
//!
//! Every weight space of `A^r_k` is finite dimensional: a pair `(x_i, x_{m1+i})`
//! with `i ≤ r` has `α_i + α_{m1+i} = −μ_i − 1`, and the remaining exponents
//! are bounded through `k`. Submodules built from `Δ`, `η` and highest weight
//! generation can therefore be computed exactly one weight at a time.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use num::BigRational;

use crate::error::{OspError, Result};
use crate::linalg::{integerize_scaled, kernel, poly_to_sparse, Echelon, Interner, Reducer};
use crate::rep::{element_weight, DominanceOrder, Family, Part, RepConfig};
use crate::slice::Analyzer;
use crate::superpoly::{Monomial, Polynomial, SuperOperator};

pub type WeightKey = Vec<i64>;

/// A finite span of polynomials with an echelon form over a private index.
#[derive(Clone, Debug, Default)]
pub struct PolySpan {
    index: Interner<Monomial>,
    ech: Echelon,
    basis: Vec<Polynomial>,
}

impl PolySpan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_polys<'a>(ps: impl IntoIterator<Item = &'a Polynomial>) -> Self {
        let mut s = Self::new();
        for p in ps {
            s.insert(p);
        }
        s
    }

    /// Adds `p`; false when it was already in the span.
    pub fn insert(&mut self, p: &Polynomial) -> bool {
        if p.is_zero() {
            return false;
        }
        let v = poly_to_sparse(p, &mut self.index);
        if self.ech.insert(v) {
            self.basis.push(p.clone());
            true
        } else {
            false
        }
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        if p.is_zero() {
            return true;
        }
        let mut entries = Vec::with_capacity(p.len());
        for (m, c) in &p.terms {
            match self.index.get(m) {
                Some(i) => entries.push((i, c.clone())),
                None => return false,
            }
        }
        self.ech.contains(&crate::linalg::integerize(entries))
    }

    pub fn contains_span(&self, other: &PolySpan) -> bool {
        other.basis.iter().all(|p| self.contains(p))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn sum(&self, other: &PolySpan) -> PolySpan {
        let mut s = self.clone();
        for p in &other.basis {
            s.insert(p);
        }
        s
    }

    /// Exact rational coordinates, interning unseen monomials.
    fn coords(&mut self, p: &Polynomial) -> Vec<(usize, BigRational)> {
        p.terms.iter().map(|(m, c)| (self.index.id(m), c.clone())).collect()
    }
}

/// Kernel of a linear map given by the images of a basis. Images are
/// rational coordinate lists in any common index space.
fn kernel_of(basis: &[Polynomial], images: Vec<Vec<(usize, BigRational)>>) -> Vec<Polynomial> {
    let mut scales = Vec::with_capacity(images.len());
    let ints: Vec<_> = images
        .into_iter()
        .map(|e| {
            let (v, c) = integerize_scaled(e);
            scales.push(c);
            v
        })
        .collect();
    kernel(&ints)
        .into_iter()
        .map(|combo| {
            let mut p = Polynomial::zero(basis[0].sig);
            for (j, c) in combo {
                p.add_assign_scaled(&basis[j], &(BigRational::from_integer(c) * &scales[j]));
            }
            p
        })
        .collect()
}

/// A root vector: its weight and operator.
#[derive(Clone, Debug)]
pub struct RootOp {
    pub weight: WeightKey,
    pub op: SuperOperator,
    pub label: String,
}

/// A submodule that can be evaluated exactly at any weight.
#[derive(Clone, Debug)]
pub enum Term {
    /// `H_k`.
    Harmonic { k: i64 },
    /// `η^j H_{k'}`.
    EtaPowerHarmonic { j: u32, kp: i64 },
    /// `⟨v⟩ + lower`, with `v` singular modulo `lower`.
    Generated(Rc<Generated>),
    Zero,
}

/// `U(n⁻)v + lower`, memoized per weight.
#[derive(Debug)]
pub struct Generated {
    pub v: Polynomial,
    pub weight: WeightKey,
    pub lower: Term,
    memo: RefCell<HashMap<WeightKey, PolySpan>>,
}

/// Exact weight-space model of one first-family configuration.
#[derive(Debug)]
pub struct WeightModel {
    pub an: Analyzer,
    pub positive: Vec<RootOp>,
    pub negative: Vec<RootOp>,
    order: DominanceOrder,
    harmonic_memo: RefCell<HashMap<(i64, WeightKey), PolySpan>>,
    eta_memo: RefCell<HashMap<(u32, i64, WeightKey), (PolySpan, usize)>>,
}

impl WeightModel {
    pub fn new(cfg: &RepConfig) -> Result<Self> {
        if !matches!(cfg.family, Family::A { .. }) {
            return Err(OspError::Invalid("weight-space analysis covers the first family".into()));
        }
        let an = Analyzer::new(cfg)?;
        let order = DominanceOrder::new(cfg)
            .ok_or_else(|| OspError::Invalid("simple roots do not form a basis".into()))?;
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        for (b, op) in an.rep.elements.iter().zip(&an.rep.ops) {
            if b.cartan {
                continue;
            }
            let r = RootOp { weight: element_weight(cfg, &b.elem), op: op.clone(), label: b.elem.to_string() };
            if b.positive {
                positive.push(r);
            } else {
                negative.push(r);
            }
        }
        Ok(Self { an, positive, negative, order, harmonic_memo: RefCell::default(), eta_memo: RefCell::default() })
    }

    pub fn cfg(&self) -> &RepConfig {
        &self.an.rep.cfg
    }

    pub fn weight(&self, m: &Monomial) -> WeightKey {
        self.an.rep.monomial_weight(m)
    }

    pub fn leq(&self, mu: &[i64], lambda: &[i64]) -> bool {
        self.order.leq(mu, lambda)
    }

    /// All monomials of `A_k` with weight `mu`.
    pub fn monomials(&self, k: i64, mu: &[i64]) -> Vec<Monomial> {
        let cfg = self.cfg();
        let Family::A { r } = cfg.family else { unreachable!() };
        let (m1, n) = (cfg.m1, cfg.n);
        let sig = cfg.signature();
        let mut out = Vec::new();
        // Swapped pairs have a fixed exponent sum.
        let mut sums = Vec::with_capacity(r);
        for &h in &mu[..r] {
            let c = -h - 1;
            if c < 0 {
                return out;
            }
            sums.push(c as u32);
        }
        for mask in 0u64..(1u64 << (2 * n)) {
            let sp_ok = (0..n).all(|j| {
                let a = ((mask >> j) & 1) as i64;
                let b = ((mask >> (n + j)) & 1) as i64;
                a - b == mu[m1 + j]
            });
            if !sp_ok {
                continue;
            }
            let t = mask.count_ones() as i64;
            let mut exps = vec![0u32; sig.num_bosonic];
            self.swapped_splits(&sums, 0, &mut exps, k - t, mu, mask, &mut out);
        }
        out.sort();
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn swapped_splits(
        &self,
        sums: &[u32],
        i: usize,
        exps: &mut Vec<u32>,
        rest: i64,
        mu: &[i64],
        mask: u64,
        out: &mut Vec<Monomial>,
    ) {
        let m1 = self.cfg().m1;
        if i == sums.len() {
            self.unswapped_fill(exps, rest, mu, mask, out);
            return;
        }
        let c = sums[i];
        for a in 0..=c {
            exps[i] = a;
            exps[m1 + i] = c - a;
            // k counts −α_i + α_{m1+i}.
            let contrib = c as i64 - 2 * a as i64;
            self.swapped_splits(sums, i + 1, exps, rest - contrib, mu, mask, out);
        }
        exps[i] = 0;
        exps[m1 + i] = 0;
    }

    fn unswapped_fill(&self, exps: &mut [u32], rest: i64, mu: &[i64], mask: u64, out: &mut Vec<Monomial>) {
        let cfg = self.cfg();
        let Family::A { r } = cfg.family else { unreachable!() };
        let m1 = cfg.m1;
        // Pair i > r: α_i − α_{m1+i} = μ_i, k counts μ_i + 2 s with s = α_{m1+i}.
        let mut base = rest;
        let mut mins = Vec::new();
        for i in r..m1 {
            let smin = (-mu[i]).max(0);
            base -= mu[i] + 2 * smin;
            mins.push(smin);
        }
        if base < 0 {
            return;
        }
        let pairs = m1 - r;
        let mut extra = vec![0i64; pairs];
        let mut emit = |extra: &[i64], odd_exp: i64, exps: &mut [u32]| {
            for (p, i) in (r..m1).enumerate() {
                let s = mins[p] + extra[p];
                exps[m1 + i] = s as u32;
                exps[i] = (mu[i] + s) as u32;
            }
            if cfg.odd {
                exps[2 * m1] = odd_exp as u32;
            }
            out.push(Monomial::new(exps.to_vec(), mask));
        };
        if cfg.odd {
            for half in 0..=base / 2 {
                compositions(half, &mut extra, 0, &mut |e| emit(e, base - 2 * half, exps));
            }
        } else if base % 2 == 0 {
            compositions(base / 2, &mut extra, 0, &mut |e| emit(e, 0, exps));
        }
    }

    /// Weights of the monomials of `A_k` with total degree at most `d`.
    pub fn window_weights(&self, k: i64, d: u32) -> Vec<WeightKey> {
        let slice = self.an.slice(k, d);
        let set: BTreeSet<WeightKey> = slice.monomials.iter().map(|m| self.weight(m)).collect();
        set.into_iter().collect()
    }

    pub fn full(&self, k: i64, mu: &[i64]) -> PolySpan {
        let sig = self.cfg().signature();
        let ps: Vec<Polynomial> = self
            .monomials(k, mu)
            .into_iter()
            .map(|m| Polynomial::monomial(sig, m, BigRational::from_integer(1.into())))
            .collect();
        PolySpan::from_polys(&ps)
    }

    /// `H_k` at weight `mu`.
    pub fn harmonic(&self, k: i64, mu: &[i64]) -> Result<PolySpan> {
        let key = (k, mu.to_vec());
        if let Some(s) = self.harmonic_memo.borrow().get(&key) {
            return Ok(s.clone());
        }
        let h = self.harmonic_uncached(k, mu)?;
        self.harmonic_memo.borrow_mut().insert(key, h.clone());
        Ok(h)
    }

    fn harmonic_uncached(&self, k: i64, mu: &[i64]) -> Result<PolySpan> {
        let delta = self.an.delta()?;
        let full = self.full(k, mu);
        if full.dim() == 0 {
            return Ok(full);
        }
        let mut index: Interner<Monomial> = Interner::new();
        let images = full
            .basis()
            .iter()
            .map(|p| delta.apply(p).terms.into_iter().map(|(m, c)| (index.id(&m), c)).collect())
            .collect();
        Ok(PolySpan::from_polys(&kernel_of(full.basis(), images)))
    }

    /// `η A_{k−2}` at weight `mu`, with the dimension of the preimage.
    pub fn eta_image(&self, k: i64, mu: &[i64]) -> Result<(PolySpan, usize)> {
        let eta = self.an.eta()?;
        let pre = self.full(k - 2, mu);
        let imgs: Vec<Polynomial> = pre.basis().iter().map(|p| eta.apply(p)).collect();
        Ok((PolySpan::from_polys(&imgs), pre.dim()))
    }

    /// `η^j H_{k'}` at weight `mu`, with the dimension of the preimage.
    pub fn eta_power_harmonic(&self, j: u32, kp: i64, mu: &[i64]) -> Result<(PolySpan, usize)> {
        let key = (j, kp, mu.to_vec());
        if let Some(s) = self.eta_memo.borrow().get(&key) {
            return Ok(s.clone());
        }
        let out = self.eta_power_uncached(j, kp, mu)?;
        self.eta_memo.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    fn eta_power_uncached(&self, j: u32, kp: i64, mu: &[i64]) -> Result<(PolySpan, usize)> {
        let eta = self.an.eta()?;
        let h = self.harmonic(kp, mu)?;
        let imgs: Vec<Polynomial> = h
            .basis()
            .iter()
            .map(|p| (0..j).fold(p.clone(), |acc, _| eta.apply(&acc)))
            .collect();
        Ok((PolySpan::from_polys(&imgs), h.dim()))
    }

    /// A term evaluated at weight `mu`.
    pub fn at(&self, term: &Term, mu: &[i64]) -> Result<PolySpan> {
        match term {
            Term::Harmonic { k } => self.harmonic(*k, mu),
            Term::EtaPowerHarmonic { j, kp } => Ok(self.eta_power_harmonic(*j, *kp, mu)?.0),
            Term::Generated(g) => self.generated_at(g, mu),
            Term::Zero => Ok(PolySpan::new()),
        }
    }

    /// `⟨v⟩ + lower` at weight `mu`.
    pub fn generated_at(&self, g: &Generated, mu: &[i64]) -> Result<PolySpan> {
        let mut span = self.lowering_span(g, mu)?;
        for p in self.at(&g.lower, mu)?.basis() {
            span.insert(p);
        }
        Ok(span)
    }

    /// `U(n⁻)v` at weight `mu`, by `V(ν) = Σ_β f_β V(ν + β)`.
    fn lowering_span(&self, g: &Generated, mu: &[i64]) -> Result<PolySpan> {
        if let Some(s) = g.memo.borrow().get(mu) {
            return Ok(s.clone());
        }
        let mut span = PolySpan::new();
        if mu == g.weight.as_slice() {
            span.insert(&g.v);
        } else if self.leq(mu, &g.weight) {
            for f in &self.negative {
                let parent: WeightKey = mu.iter().zip(&f.weight).map(|(a, b)| a - b).collect();
                if !self.leq(&parent, &g.weight) {
                    continue;
                }
                for p in self.lowering_span(g, &parent)?.basis() {
                    span.insert(&f.op.apply(p));
                }
            }
        }
        g.memo.borrow_mut().insert(mu.to_vec(), span.clone());
        Ok(span)
    }

    /// Builds `⟨v⟩ + lower`; `v` must be a weight vector singular modulo
    /// `lower`.
    pub fn generated(&self, v: &Polynomial, lower: Term) -> Result<Term> {
        let Some((lead, _)) = v.leading() else {
            return Err(OspError::Invalid("cannot generate from zero".into()));
        };
        let weight = self.weight(lead);
        if self.an.rep.weight_of(v).is_err() {
            return Err(OspError::NotAWeightVector);
        }
        for e in &self.positive {
            let up: WeightKey = weight.iter().zip(&e.weight).map(|(a, b)| a + b).collect();
            let img = e.op.apply(v);
            if !img.is_zero() && !self.at(&lower, &up)?.contains(&img) {
                return Err(OspError::Invalid(format!("{v} is not singular: {} maps it to {img}", e.label)));
            }
        }
        Ok(Term::Generated(Rc::new(Generated { v: v.clone(), weight, lower, memo: RefCell::default() })))
    }

    /// Vectors of `upper[mu]` sent into `lower` by every positive root vector,
    /// independent modulo `lower[mu]`.
    pub fn quotient_singular(&self, upper: &PolySpan, lower: &Term, mu: &[i64]) -> Result<Vec<Polynomial>> {
        if upper.dim() == 0 {
            return Ok(Vec::new());
        }
        let mut target: Interner<(usize, usize)> = Interner::new();
        let mut images: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); upper.dim()];
        for (ei, e) in self.positive.iter().enumerate() {
            let up: WeightKey = mu.iter().zip(&e.weight).map(|(a, b)| a + b).collect();
            let mut low = self.at(lower, &up)?;
            let reducer = Reducer::new(&low.ech);
            for (i, p) in upper.basis().iter().enumerate() {
                let img = e.op.apply(p);
                if img.is_zero() {
                    continue;
                }
                let v = low.coords(&img);
                for (col, c) in reducer.reduce(&sorted(v)) {
                    images[i].push((target.id(&(ei, col)), c));
                }
            }
        }
        let mut seen = self.at(lower, mu)?;
        let mut out = Vec::new();
        for v in kernel_of(upper.basis(), images) {
            if seen.insert(&v) {
                out.push(v.monic());
            }
        }
        Ok(out)
    }

    /// Whether `op(term[mu]) ⊆ term[mu + wt(op)]` for every root vector.
    pub fn stable_at(&self, term: &Term, mu: &[i64]) -> Result<Option<String>> {
        let here = self.at(term, mu)?;
        for e in self.positive.iter().chain(&self.negative) {
            let to: WeightKey = mu.iter().zip(&e.weight).map(|(a, b)| a + b).collect();
            let there = self.at(term, &to)?;
            for p in here.basis() {
                let img = e.op.apply(p);
                if !there.contains(&img) {
                    return Ok(Some(format!("{} maps {p} outside", e.label)));
                }
            }
        }
        Ok(None)
    }

    /// Plain singular vectors of `term` at weight `mu` (positive part).
    pub fn singular(&self, term: &Term, mu: &[i64]) -> Result<Vec<Polynomial>> {
        let upper = self.at(term, mu)?;
        self.quotient_singular(&upper, &Term::Zero, mu)
    }

    pub fn positive_ops(&self) -> Vec<&SuperOperator> {
        self.an.rep.part_ops(Part::Positive)
    }
}

fn sorted(mut v: Vec<(usize, BigRational)>) -> Vec<(usize, BigRational)> {
    v.sort_by_key(|(i, _)| *i);
    v
}

/// Calls `f` on every way to write `total` as an ordered sum of
/// `parts.len()` nonnegative integers.
fn compositions(total: i64, parts: &mut [i64], pos: usize, f: &mut impl FnMut(&[i64])) {
    if parts.is_empty() {
        if total == 0 {
            f(parts);
        }
        return;
    }
    if pos == parts.len() - 1 {
        parts[pos] = total;
        f(parts);
        return;
    }
    for a in 0..=total {
        parts[pos] = a;
        compositions(total - a, parts, pos + 1, f);
    }
}
