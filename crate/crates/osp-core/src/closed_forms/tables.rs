//! Highest weight vectors of the odd first family and the two bases of the
//! primed family with `T = 1..n`.

use std::collections::BTreeSet;

use serde::Serialize;

use super::*;
use crate::rep::{delta_eta, k_degree, lambda, nu, Part, Rep, Weight};
use crate::superpoly::Monomial;
use crate::weights::PolySpan;

/// Row of the odd-`m` highest weight table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OddHwRow {
    /// `r = 0`, `k > 0`: `x_1^k`.
    FirstPositive,
    /// `r < m1`, `k > 0`: `x_{r+1}^k`.
    Positive,
    /// `0 < r < m1`, `k ≤ 0`: `x_r^{−k}`.
    Negative,
    /// `r = m1`, `k ≤ 0`: `x_{m1}^{−k}`.
    LastNegative,
    /// `r = m1`, `0 < k ≤ n`: `θ_1⋯θ_k`.
    Fermionic,
    /// `r = m1`, `n < k ≤ 2n`.
    Middle,
    /// `r = m1`, `k > 2n`.
    High,
}

impl OddHwRow {
    pub fn name(self) -> &'static str {
        match self {
            OddHwRow::FirstPositive => "r=0,k>0",
            OddHwRow::Positive => "r<m1,k>0",
            OddHwRow::Negative => "0<r<m1,k<=0",
            OddHwRow::LastNegative => "r=m1,k<=0",
            OddHwRow::Fermionic => "r=m1,0<k<=n",
            OddHwRow::Middle => "r=m1,n<k<=2n",
            OddHwRow::High => "r=m1,k>2n",
        }
    }
}

/// A table entry: the vector and the weight the table assigns to it.
#[derive(Clone, Debug)]
pub struct OddHwVector {
    pub row: OddHwRow,
    pub reading: Reading,
    pub vector: Polynomial,
    pub weight: Weight,
}

/// Table row matching `(r, k)`.
pub fn odd_hw_row(cfg: &RepConfig, k: i64) -> Result<OddHwRow> {
    let Family::A { r } = cfg.family else { return Err(OspError::Invalid("first family only".into())) };
    if !cfg.odd {
        return Err(OspError::Invalid("the table is for odd m".into()));
    }
    let (m1, n) = (cfg.m1, cfg.n as i64);
    let row = if r == 0 && k > 0 {
        OddHwRow::FirstPositive
    } else if r < m1 && k > 0 {
        OddHwRow::Positive
    } else if r > 0 && r < m1 {
        OddHwRow::Negative
    } else if r == m1 && k <= 0 {
        OddHwRow::LastNegative
    } else if r == m1 && k <= n {
        OddHwRow::Fermionic
    } else if r == m1 && k <= 2 * n {
        OddHwRow::Middle
    } else if r == m1 {
        OddHwRow::High
    } else {
        return Err(out_of_range(format!("no table row for r={r}, k={k}")));
    };
    Ok(row)
}

/// `g_{p,q} = Σ_s x_{2m1+1}^{p+q−2s} x_{m1}^{q−s} x_{2m1}^s / (s!(q−s)!(p+q−2s)!!)`
/// for `p > q ≥ 0`.
pub fn g_pq(cfg: &RepConfig, p: i64, q_: i64) -> Result<Polynomial> {
    if !cfg.odd || !(p > q_ && q_ >= 0) {
        return Err(out_of_range(format!("g_(p,q) needs odd m and p > q ≥ 0, got ({p}, {q_})")));
    }
    let sig = cfg.signature();
    let m1 = cfg.m1;
    let mut out = Polynomial::zero(sig);
    for s in 0..=q_ {
        let c = BigRational::one() / rat(factorial(s) * factorial(q_ - s) * double_factorial(p + q_ - 2 * s));
        let t = product(
            sig,
            &[
                xv(sig, 2 * m1 + 1).pow((p + q_ - 2 * s) as u32)?,
                xv(sig, m1).pow((q_ - s) as u32)?,
                xv(sig, 2 * m1).pow(s as u32)?,
            ],
        )?;
        out.add_assign_scaled(&t, &c);
    }
    Ok(out)
}

fn eta_theta(cfg: &RepConfig) -> Result<Polynomial> {
    Ok(eta_parts(cfg)?.1)
}

/// The table's vector and weight for `(r, k)`. The literal reading of the
/// `n < k ≤ 2n` row has the wrong k-degree unless `k = 2n`; the repaired
/// reading keeps its coefficients and takes `θ_1⋯θ_{2n−k+1}`.
pub fn odd_hw_vector(cfg: &RepConfig, k: i64, reading: Reading) -> Result<OddHwVector> {
    let row = odd_hw_row(cfg, k)?;
    let Family::A { r } = cfg.family else { unreachable!() };
    let sig = cfg.signature();
    let (m1, n) = (cfg.m1, cfg.n);
    let ni = n as i64;
    let lam = |i: usize| lambda(true, m1, n, i);
    let (vector, weight) = match row {
        OddHwRow::FirstPositive => (xv(sig, 1).pow(k as u32)?, lam(1).scale(&q(k))),
        OddHwRow::Positive => (xv(sig, r + 1).pow(k as u32)?, lam(r).scale(&q(-(k + 1))).add(&lam(r + 1).scale(&q(k)))),
        OddHwRow::Negative => (xv(sig, r).pow((-k) as u32)?, lam(r - 1).scale(&q(k)).add(&lam(r).scale(&q(-(k + 1))))),
        OddHwRow::LastNegative => {
            (xv(sig, m1).pow((-k) as u32)?, lam(m1 - 1).scale(&q(k)).add(&lam(m1).scale(&q(-(k - 1)))))
        }
        OddHwRow::Fermionic => {
            let w = if k < ni { nu(m1, n, k as usize) } else { nu(m1, n, n).scale(&q(2)) };
            (theta_run(sig, 1, k as usize)?, w)
        }
        OddHwRow::Middle => {
            let w = if k == ni + 1 { nu(m1, n, n).scale(&q(2)) } else { nu(m1, n, (k - ni - 1) as usize) };
            let et = eta_theta(cfg)?;
            let l = k - ni - 1;
            let mut v = Polynomial::zero(sig);
            for i in 0..=l {
                let c = rat(factorial(l - i))
                    / rat(BigInt::from(2).pow(i as u32) * factorial(i) * factorial(2 * l + 1 - 2 * i));
                let t = match reading {
                    Reading::Literal => theta_run(sig, 1, l as usize)?,
                    Reading::Repaired => theta_run(sig, 1, (2 * ni - k + 1) as usize)?,
                };
                let term = product(sig, &[xv(sig, 2 * m1 + 1).pow((2 * l + 1 - 2 * i) as u32)?, et.pow(i as u32)?, t])?;
                v.add_assign_scaled(&term, &c);
            }
            (v, w)
        }
        OddHwRow::High => {
            let et = eta_theta(cfg)?;
            let kk = k - 2 * ni - 1;
            let mut v = Polynomial::zero(sig);
            for j in 0..=ni {
                for i in 0..=kk {
                    let e = 2 * k - 2 * ni - 1 - 2 * i - 2 * j;
                    if e < 0 {
                        continue;
                    }
                    let c = BigRational::one()
                        / rat(factorial(i) * factorial(kk - i) * double_factorial(e) * factorial(j));
                    let term = product(
                        sig,
                        &[
                            xv(sig, m1).pow((kk - i) as u32)?,
                            xv(sig, 2 * m1).pow(i as u32)?,
                            xv(sig, 2 * m1 + 1).pow(e as u32)?,
                            et.pow(j as u32)?,
                        ],
                    )?;
                    v.add_assign_scaled(&term, &c);
                }
            }
            (v, lam(m1 - 1).scale(&q(2 * ni - k + 1)).add(&lam(m1).scale(&q(k - 2 * ni - 2))))
        }
    };
    Ok(OddHwVector { row, reading, vector, weight })
}

/// Outcome of checking one table entry.
#[derive(Clone, Debug, Serialize)]
pub struct OddHwCheck {
    pub cfg: String,
    pub k: i64,
    pub row: &'static str,
    pub reading: &'static str,
    pub nonzero: bool,
    pub in_a_k: bool,
    pub annihilated: bool,
    pub harmonic: bool,
    pub weight: Option<String>,
    pub table_weight: String,
    pub weight_matches: bool,
}

impl OddHwCheck {
    pub fn passed(&self) -> bool {
        self.nonzero && self.in_a_k && self.annihilated && self.harmonic && self.weight_matches
    }
}

/// Checks a table entry exactly: nonzero, of k-degree `k`, killed by the
/// positive part and by `Δ`, with weight equal to the table's under
/// `λ_i = ε_1+⋯+ε_i` (`i < m1`), `λ_{m1} = ½(ε_1+⋯+ε_{m1})`, `ν_j = δ_1+⋯+δ_j`.
pub fn check_odd_hw(cfg: &RepConfig, k: i64, reading: Reading) -> Result<OddHwCheck> {
    let hv = odd_hw_vector(cfg, k, reading)?;
    let rep = Rep::new(cfg)?;
    let (delta, _) = delta_eta(cfg)?;
    let v = &hv.vector;
    let annihilated = rep.part_ops(Part::Positive).iter().all(|op| op.apply(v).is_zero());
    let actual = rep.weight_of(v).ok();
    Ok(OddHwCheck {
        cfg: cfg.id(),
        k,
        row: hv.row.name(),
        reading: match reading {
            Reading::Literal => "literal",
            Reading::Repaired => "repaired",
        },
        nonzero: !v.is_zero(),
        in_a_k: v.terms.keys().all(|m| k_degree(cfg, m) == k),
        annihilated,
        harmonic: delta.apply(v).is_zero(),
        weight: actual.as_ref().map(|w| w.to_string()),
        table_weight: hv.weight.to_string(),
        weight_matches: actual.as_ref() == Some(&hv.weight),
    })
}

/// Which of the two primed-family summands a stream spans.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Stream {
    /// `⟨θ_1⋯θ_{m1}⟩`, from `m1 − q` even.
    Top,
    /// `⟨(x_{n−1}x_{2n} − x_n x_{2n−1})θ_1⋯θ_{m1}⟩`, from `m1 − q` odd.
    Plucker,
}

/// One element `η^t h` of the primed-family bases.
#[derive(Clone, Debug)]
pub struct StreamElement {
    pub t: i64,
    pub q: i64,
    pub stream: Stream,
    pub index: IndexTupleI,
    pub vector: Polynomial,
}

/// The primed normal-form configuration `T = 1..n` with even `m`.
pub fn aprime_normal(m1: usize, n: usize) -> Result<RepConfig> {
    RepConfig::aprime(false, m1, n, &(1..=n).collect::<Vec<_>>())
}

/// Bigrade `(s, t)` of a primed-family monomial: `s = #θ_{m1+j} − Σ_{i≤n} α_i`,
/// `t = #θ_{j≤m1} + Σ α_{n+i}`.
pub fn bigrade(cfg: &RepConfig, m: &Monomial) -> (i64, i64) {
    let (m1, n) = (cfg.m1, cfg.n);
    let lower = (0..m1).filter(|&j| m.mask >> j & 1 == 1).count() as i64;
    let upper = (m1..2 * m1).filter(|&j| m.mask >> j & 1 == 1).count() as i64;
    let a_low: i64 = m.exps[..n].iter().map(|&e| e as i64).sum();
    let a_high: i64 = m.exps[n..].iter().map(|&e| e as i64).sum();
    (upper - a_low, lower + a_high)
}

/// Monomials of the finite piece `A_{s,t}`.
pub fn bigraded_monomials(cfg: &RepConfig, s: i64, t: i64) -> Vec<Monomial> {
    let (m1, n) = (cfg.m1, cfg.n);
    let mut out = BTreeSet::new();
    for mask in 0u64..(1 << (2 * m1)) {
        let lower = (mask & ((1 << m1) - 1)).count_ones() as i64;
        let upper = (mask >> m1).count_ones() as i64;
        let (a_low, a_high) = (upper - s, t - lower);
        if a_low < 0 || a_high < 0 {
            continue;
        }
        for lo in compositions(a_low as u32, n) {
            for hi in compositions(a_high as u32, n) {
                let mut exps = lo.clone();
                exps.extend(hi);
                out.insert(Monomial::new(exps, mask));
            }
        }
    }
    out.into_iter().collect()
}

/// `η^t B_{t,q}` for all `t + q = level`, in increasing `q`.
pub fn two_stream_level(m1: usize, n: usize, level: i64) -> Result<Vec<StreamElement>> {
    let cfg = aprime_normal(m1, n)?;
    let sig = cfg.signature();
    let (_, eta) = delta_eta(&cfg)?;
    let mut out = Vec::new();
    for q_ in 0..=level {
        let t = level - q_;
        let stream = if (m1 as i64 - q_) % 2 == 0 { Stream::Top } else { Stream::Plucker };
        for idx in b_tq(m1, n, t, q_) {
            let mut v = h_kls(sig, &idx)?;
            for _ in 0..t {
                v = eta.apply(&v);
            }
            out.push(StreamElement { t, q: q_, stream, index: idx, vector: v });
        }
    }
    Ok(out)
}

/// Outcome of checking the two streams on the piece `A_{m1−level, level}`.
#[derive(Clone, Debug, Serialize)]
pub struct LevelCheck {
    pub level: i64,
    pub piece_dim: usize,
    pub top: usize,
    pub plucker: usize,
    pub rank: usize,
    pub in_piece: bool,
    pub seeds_harmonic: bool,
}

impl LevelCheck {
    pub fn passed(&self) -> bool {
        self.in_piece && self.seeds_harmonic && self.rank == self.top + self.plucker && self.rank == self.piece_dim
    }
}

/// Checks that the streams at `level` are independent, lie in the piece and
/// fill it, and that each `h ∈ B_{t,q}` is harmonic.
pub fn check_two_stream_level(m1: usize, n: usize, level: i64) -> Result<LevelCheck> {
    let cfg = aprime_normal(m1, n)?;
    let (delta, _) = delta_eta(&cfg)?;
    let target = (m1 as i64 - level, level);
    let elems = two_stream_level(m1, n, level)?;
    let piece = bigraded_monomials(&cfg, target.0, target.1);
    let span = PolySpan::from_polys(elems.iter().map(|e| &e.vector));
    let mut seeds_harmonic = true;
    for e in &elems {
        if !delta.apply(&h_kls(cfg.signature(), &e.index)?).is_zero() {
            seeds_harmonic = false;
        }
    }
    Ok(LevelCheck {
        level,
        piece_dim: piece.len(),
        top: elems.iter().filter(|e| e.stream == Stream::Top).count(),
        plucker: elems.iter().filter(|e| e.stream == Stream::Plucker).count(),
        rank: span.dim(),
        in_piece: elems.iter().all(|e| e.vector.terms.keys().all(|m| bigrade(&cfg, m) == target)),
        seeds_harmonic,
    })
}
