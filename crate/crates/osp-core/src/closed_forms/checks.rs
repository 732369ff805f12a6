//! Comparison of emitted bases against kernels computed by linear algebra.

use serde::Serialize;

use super::*;
use crate::weights::{PolySpan, WeightKey, WeightModel};

/// One weight space of a basis comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisRow {
    pub weight: WeightKey,
    pub emitted: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub contained: bool,
}

impl BasisRow {
    pub fn passed(&self) -> bool {
        self.contained && self.emitted == self.rank && self.rank == self.kernel_dim
    }
}

/// Outcome of checking a family of polynomials as a basis of `H_k`.
#[derive(Clone, Debug, Serialize)]
pub struct BasisCheck {
    pub family: String,
    pub cfg: String,
    pub k: i64,
    pub emitted: usize,
    pub not_harmonic: usize,
    pub not_weight_vectors: usize,
    pub rows: Vec<BasisRow>,
}

impl BasisCheck {
    pub fn passed(&self) -> bool {
        self.not_harmonic == 0 && self.not_weight_vectors == 0 && self.rows.iter().all(BasisRow::passed)
    }

    pub fn failing_rows(&self) -> impl Iterator<Item = &BasisRow> {
        self.rows.iter().filter(|r| !r.passed())
    }
}

/// Weight of `p` when all its monomials share one.
pub fn poly_weight(wm: &WeightModel, p: &Polynomial) -> Option<WeightKey> {
    let mut it = p.terms.keys().map(|m| wm.weight(m));
    let first = it.next()?;
    it.all(|w| w == first).then_some(first)
}

/// Largest total degree of a monomial of `A_k` in any of `weights`; every
/// element of those weight spaces is captured by emitting up to this degree.
pub fn degree_cover(wm: &WeightModel, k: i64, weights: &[WeightKey]) -> u32 {
    weights
        .iter()
        .flat_map(|mu| wm.monomials(k, mu))
        .map(|m| m.total_degree())
        .max()
        .unwrap_or(0)
}

/// Largest bosonic degree of a monomial of `A_k` in any of `weights`.
pub fn bosonic_cover(wm: &WeightModel, k: i64, weights: &[WeightKey]) -> u32 {
    weights
        .iter()
        .flat_map(|mu| wm.monomials(k, mu))
        .map(|m| m.bosonic_degree())
        .max()
        .unwrap_or(0)
}

/// Checks `elems` against `H_k` on each weight of `weights`: every element is
/// harmonic and a weight vector, and per weight the elements are independent
/// and as many as `dim H_k`.
pub fn check_basis(
    wm: &WeightModel,
    family: &str,
    k: i64,
    weights: &[WeightKey],
    elems: &[Polynomial],
) -> Result<BasisCheck> {
    let delta = wm.an.delta()?;
    let mut not_harmonic = 0;
    let mut not_weight_vectors = 0;
    let mut groups: std::collections::BTreeMap<WeightKey, Vec<&Polynomial>> = Default::default();
    for p in elems {
        if !delta.apply(p).is_zero() {
            not_harmonic += 1;
        }
        match poly_weight(wm, p) {
            Some(w) => groups.entry(w).or_default().push(p),
            None => not_weight_vectors += 1,
        }
    }
    let mut rows = Vec::new();
    for mu in weights {
        let group = groups.get(mu).map(Vec::as_slice).unwrap_or(&[]);
        let span = PolySpan::from_polys(group.iter().copied());
        let h = wm.harmonic(k, mu)?;
        rows.push(BasisRow {
            weight: mu.clone(),
            emitted: group.len(),
            rank: span.dim(),
            kernel_dim: h.dim(),
            contained: h.contains_span(&span),
        });
    }
    Ok(BasisCheck {
        family: family.to_string(),
        cfg: wm.cfg().id(),
        k,
        emitted: elems.len(),
        not_harmonic,
        not_weight_vectors,
        rows,
    })
}

/// Checks the `H^0_k` basis on the weights of slice `(k, d)`.
pub fn check_basis_unswapped(cfg: &RepConfig, k: i64, d: u32, reading: Reading) -> Result<BasisCheck> {
    let wm = WeightModel::new(cfg)?;
    let weights = wm.window_weights(k, d);
    let elems: Vec<Polynomial> = basis_unswapped(cfg, k, reading)?.into_iter().map(|(_, p)| p).collect();
    let name = match reading {
        Reading::Literal => "basis_thm22:literal",
        Reading::Repaired => "basis_thm22",
    };
    check_basis(&wm, name, k, &weights, &elems)
}

/// Checks the `H^r_k` stream on the weights of slice `(k, d)`.
pub fn check_basis_partly_swapped(cfg: &RepConfig, k: i64, d: u32) -> Result<BasisCheck> {
    let wm = WeightModel::new(cfg)?;
    let weights = wm.window_weights(k, d);
    let cover = degree_cover(&wm, k, &weights);
    let elems: Vec<Polynomial> = basis_partly_swapped(cfg, k, cover)?.into_iter().map(|(_, p)| p).collect();
    check_basis(&wm, "basis_thm24", k, &weights, &elems)
}

/// Checks the `H^{m1}_k` basis on the weights of slice `(k, d)`.
pub fn check_basis_fully_swapped(cfg: &RepConfig, k: i64, d: u32) -> Result<BasisCheck> {
    let wm = WeightModel::new(cfg)?;
    let weights = wm.window_weights(k, d);
    let cover = bosonic_cover(&wm, k, &weights);
    let elems: Vec<Polynomial> = basis_fully_swapped(cfg, k, cover)?.into_iter().map(|(_, p)| p).collect();
    check_basis(&wm, "basis_thm23", k, &weights, &elems)
}
