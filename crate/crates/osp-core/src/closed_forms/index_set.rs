//! Index tuples of the Plücker-type harmonic bases and their polynomials.
//!
//! The same construction serves the first family with `r = m1` (bosonic pairs
//! `(x_p, x_{m1+p})`, fermionic pairs `(θ_q, θ_{n+q})`) and the primed family
//! in normal form, where the roles of `m1` and `n` are exchanged.

use super::*;

/// Index tuple `(k, l, s)` over `pairs` bosonic and `fpairs` fermionic pairs.
///
/// `kt[t]` is `k_{t+1}`, `kij` lists `k_{i,j}` for `i < j` in lexicographic
/// order, `lt` holds `l_1..l_{2·fpairs}`, `lij` lists `l_{i,j}` like `kij` and
/// `s[(p−1)·fpairs + q−1]` is `s_{p,q}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexTupleI {
    pub pairs: usize,
    pub fpairs: usize,
    pub kt: Vec<u32>,
    pub kij: Vec<u32>,
    pub lt: Vec<u32>,
    pub lij: Vec<u32>,
    pub s: Vec<u32>,
}

/// Position of `(i, j)`, `1 ≤ i < j ≤ size`, in lexicographic order.
pub fn pair_slot(size: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= size);
    (i - 1) * size - (i - 1) * i / 2 + (j - i - 1)
}

fn pairs_of(size: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=size {
        for j in i + 1..=size {
            out.push((i, j));
        }
    }
    out
}

impl IndexTupleI {
    pub fn zero(pairs: usize, fpairs: usize) -> Self {
        Self {
            pairs,
            fpairs,
            kt: vec![0; pairs],
            kij: vec![0; pairs * pairs.saturating_sub(1) / 2],
            lt: vec![0; 2 * fpairs],
            lij: vec![0; fpairs * fpairs.saturating_sub(1) / 2],
            s: vec![0; pairs * fpairs],
        }
    }

    pub fn k(&self, i: usize, j: usize) -> u32 {
        self.kij[pair_slot(self.pairs, i, j)]
    }

    pub fn l(&self, i: usize, j: usize) -> u32 {
        self.lij[pair_slot(self.fpairs, i, j)]
    }

    pub fn s_at(&self, p: usize, q: usize) -> u32 {
        self.s[(p - 1) * self.fpairs + q - 1]
    }

    pub fn set_k(&mut self, i: usize, j: usize, v: u32) {
        let at = pair_slot(self.pairs, i, j);
        self.kij[at] = v;
    }

    pub fn set_l(&mut self, i: usize, j: usize, v: u32) {
        let at = pair_slot(self.fpairs, i, j);
        self.lij[at] = v;
    }

    pub fn set_s(&mut self, p: usize, q: usize, v: u32) {
        self.s[(p - 1) * self.fpairs + q - 1] = v;
    }

    /// Occupancy of fermionic pair `t`.
    fn occupancy(&self, t: usize) -> u32 {
        let f = self.fpairs;
        let mut o = self.lt[t - 1] + self.lt[f + t - 1];
        for i in 1..t {
            o += self.l(i, t);
        }
        for j in t + 1..=f {
            o += self.l(t, j);
        }
        for p in 1..=self.pairs {
            o += self.s_at(p, t);
        }
        o
    }

    /// Checks every clause of the index set, naming the first one violated.
    pub fn validate(&self) -> Result<()> {
        let (pm, f) = (self.pairs, self.fpairs);
        let clause = |name: &str| Err(OspError::Clause(name.to_string()));
        if self.lt.iter().chain(&self.lij).chain(&self.s).any(|&b| b > 1) {
            return clause("l and s are bits");
        }
        for t in 1..=f {
            if self.occupancy(t) > 1 {
                return clause("occupancy of each fermionic pair is at most 1");
            }
        }
        let kp = pairs_of(pm);
        let lp = pairs_of(f);
        for &(i, j) in &kp {
            if self.k(i, j) == 0 {
                continue;
            }
            if (j + 1..=pm).any(|t| self.kt[t - 1] > 0) {
                return clause("k_{i,j}k_t=0 for i<j<t");
            }
            if kp.iter().any(|&(a, b)| i > a && j < b && self.k(a, b) > 0) {
                return clause("k_{i,j}k_{i',j'}=0 for i>i' and j<j'");
            }
            for p in j + 1..=pm {
                if (1..=f).any(|q| self.s_at(p, q) > 0) {
                    return clause("k_{i,j}s_{p,q}=0 for i<j<p");
                }
            }
        }
        for t in 1..=pm {
            if self.kt[t - 1] == 0 {
                continue;
            }
            if self.lij.iter().any(|&b| b > 0) {
                return clause("k_t l_{i,j}=0");
            }
            for p in t + 1..=pm {
                if (1..=f).any(|q| self.s_at(p, q) > 0) {
                    return clause("k_t s_{p,q}=0 for t<p");
                }
            }
        }
        for p in 1..=pm {
            for q in 1..=f {
                if self.s_at(p, q) == 0 {
                    continue;
                }
                for p2 in 1..p {
                    if (q + 1..=f).any(|q2| self.s_at(p2, q2) > 0) {
                        return clause("s_{p,q}s_{p',q'}=0 for p>p' and q<q'");
                    }
                }
            }
        }
        for &(i, j) in &lp {
            if self.l(i, j) == 0 {
                continue;
            }
            if (i + 1..j).any(|t| self.occupancy(t) == 0) {
                return clause("l_{i,j}=0 if a pair strictly between i and j is empty");
            }
            if lp.iter().any(|&(a, b)| i < a && a < j && j < b && self.l(a, b) > 0) {
                return clause("l_{i,j}l_{i',j'}=0 if i<i'<j<j'");
            }
            for q in j + 1..=f {
                if (1..=pm).any(|p| self.s_at(p, q) > 0) {
                    return clause("l_{i,j}s_{p,q}=0 if i<j<q");
                }
            }
        }
        Ok(())
    }

    /// Bosonic degree of `h`; every factor is homogeneous in it.
    pub fn bosonic_degree(&self) -> u32 {
        self.kt.iter().sum::<u32>() + 2 * self.kij.iter().sum::<u32>() + self.s.iter().sum::<u32>()
    }

    /// `Σ singles + 2 Σ l_{i,j} + Σ s − Σ k_t`, the k-degree in the first
    /// family with `r = m1`.
    pub fn k_constraint(&self) -> i64 {
        let singles: u32 = self.lt.iter().sum();
        let pairs: u32 = self.lij.iter().sum();
        let s: u32 = self.s.iter().sum();
        let kt: u32 = self.kt.iter().sum();
        (singles + 2 * pairs + s) as i64 - kt as i64
    }

    /// The primed-family bigrade `(s, t)` of `h`.
    pub fn bigrade(&self) -> (i64, i64) {
        let f = self.fpairs;
        let upper: u32 = self.lt[f..].iter().sum();
        let lower: u32 = self.lt[..f].iter().sum();
        let lp: u32 = self.lij.iter().sum();
        let kp: u32 = self.kij.iter().sum();
        let kt: u32 = self.kt.iter().sum();
        let s: u32 = self.s.iter().sum();
        (upper as i64 + lp as i64 - kt as i64 - kp as i64, lower as i64 + lp as i64 + s as i64 + kp as i64)
    }
}

/// `h(k, l, s)` in a signature with `2·pairs` bosonic and `2·fpairs`
/// fermionic variables.
pub fn h_kls(sig: VariableSignature, idx: &IndexTupleI) -> Result<Polynomial> {
    idx.validate()?;
    let (pm, f) = (idx.pairs, idx.fpairs);
    if sig.num_bosonic != 2 * pm || sig.num_fermionic != 2 * f {
        return Err(OspError::SignatureMismatch);
    }
    let mut factors = Vec::new();
    for t in 1..=pm {
        factors.push(xv(sig, t).pow(idx.kt[t - 1])?);
    }
    for (i, j) in pairs_of(pm) {
        let pl = xv(sig, i).mul(&xv(sig, pm + j))?.sub(&xv(sig, j).mul(&xv(sig, pm + i))?);
        factors.push(pl.pow(idx.k(i, j))?);
    }
    for j in 1..=f {
        if idx.lt[j - 1] == 1 {
            factors.push(tv(sig, j));
        }
        if idx.lt[f + j - 1] == 1 {
            factors.push(tv(sig, f + j));
        }
    }
    let pair = |j: usize| tv(sig, j).mul(&tv(sig, f + j));
    for (i, j) in pairs_of(f) {
        if idx.l(i, j) == 1 {
            factors.push(pair(i)?.sub(&pair(j)?));
        }
    }
    for p in 1..=pm {
        for q in 1..=f {
            if idx.s_at(p, q) == 1 {
                factors.push(xv(sig, pm + p).sub(&xv(sig, p).mul(&pair(q)?)?));
            }
        }
    }
    product(sig, &factors)
}

/// Every tuple of the index set with bosonic degree at most `max_bosonic`,
/// in graded-lexicographic order.
pub fn enumerate_tuples(pairs: usize, fpairs: usize, max_bosonic: u32) -> Vec<IndexTupleI> {
    let zero = IndexTupleI::zero(pairs, fpairs);
    let nk = zero.kt.len() + zero.kij.len();
    let nbits = zero.lt.len() + zero.lij.len() + zero.s.len();
    let mut out = Vec::new();
    for deg in 0..=max_bosonic {
        for bits in bit_vectors(nbits) {
            let s_sum: u32 = bits[zero.lt.len() + zero.lij.len()..].iter().sum();
            if s_sum > deg {
                continue;
            }
            // Weighted compositions of deg − s_sum over k_t (weight 1) and k_{i,j} (weight 2).
            for kv in weighted(deg - s_sum, pairs, nk - pairs) {
                let mut t = zero.clone();
                t.kt.copy_from_slice(&kv[..pairs]);
                t.kij.copy_from_slice(&kv[pairs..]);
                let (a, b) = (t.lt.len(), t.lij.len());
                t.lt.copy_from_slice(&bits[..a]);
                t.lij.copy_from_slice(&bits[a..a + b]);
                t.s.copy_from_slice(&bits[a + b..]);
                if t.validate().is_ok() {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// Vectors `(u, v)` with `Σu + 2Σv = total`.
fn weighted(total: u32, ones: usize, twos: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for v_sum in 0..=total / 2 {
        for v in compositions(v_sum, twos) {
            for u in compositions(total - 2 * v_sum, ones) {
                let mut w = u.clone();
                w.extend(v.iter().copied());
                out.push(w);
            }
        }
    }
    out
}

/// Tuples of the `H^{m1}_k` basis with bosonic degree at most `max_bosonic`.
pub fn enumerate_i(m1: usize, n: usize, k: i64, max_bosonic: u32) -> Vec<IndexTupleI> {
    enumerate_tuples(m1, n, max_bosonic).into_iter().filter(|t| t.k_constraint() == k).collect()
}

/// The `H^{m1}_k` basis elements of bosonic degree at most `max_bosonic`.
pub fn basis_fully_swapped(cfg: &RepConfig, k: i64, max_bosonic: u32) -> Result<Vec<(IndexTupleI, Polynomial)>> {
    match cfg.family {
        Family::A { r } if r == cfg.m1 && !cfg.odd => {}
        _ => return Err(OspError::Invalid(format!("H^(m1)_k basis needs even m and r = m1, got {}", cfg.id()))),
    }
    let sig = cfg.signature();
    enumerate_i(cfg.m1, cfg.n, k, max_bosonic)
        .into_iter()
        .map(|t| {
            let p = h_kls(sig, &t)?;
            Ok((t, p))
        })
        .collect()
}

/// `B_{t,q}`: tuples over `n` bosonic and `m1` fermionic pairs with bigrade
/// `(m1 − 2t − q, q)`. Finite for each `(t, q)`.
pub fn b_tq(m1: usize, n: usize, t: i64, q: i64) -> Vec<IndexTupleI> {
    let s_target = m1 as i64 - 2 * t - q;
    if q < 0 || t < 0 {
        return Vec::new();
    }
    // Σk_{i,j} ≤ q, Σs ≤ q and Σk_t ≤ 2·m1 − s_target bound the bosonic degree.
    let bound = (2 * m1 as i64 - s_target).max(0) + 3 * q;
    enumerate_tuples(n, m1, bound as u32).into_iter().filter(|x| x.bigrade() == (s_target, q)).collect()
}
