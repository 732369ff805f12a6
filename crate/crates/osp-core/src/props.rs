//! Exact checks of the structural properties every representation must have:
//! the homomorphism identity, preservation of the grading, and `Δ`-kernel
//! invariance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::rep::{delta_eta, k_degree, rep_element, superbracket, Part, Rep, RepConfig};
use crate::superpoly::{Monomial, Polynomial, VariableSignature};

/// Outcome of a property check: number of identities tested and the first
/// counterexample, if any.
#[derive(Clone, Debug, Default)]
pub struct PropertyOutcome {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 8 {
            self.failures.push(msg);
        }
    }
}

/// Seeded random monomials with exponents up to `max_exp`.
pub fn random_monomials(sig: VariableSignature, count: usize, max_exp: u32, seed: u64) -> Vec<Monomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let exps = (0..sig.num_bosonic).map(|_| rng.gen_range(0..=max_exp)).collect();
            let mask = if sig.num_fermionic == 0 {
                0
            } else {
                rng.gen::<u64>() & (u64::MAX >> (64 - sig.num_fermionic))
            };
            Monomial::new(exps, mask)
        })
        .collect()
}

/// `ρ(u)ρ(v) − (−1)^{|u||v|}ρ(v)ρ(u) = ρ([u,v])` on random monomials, for
/// every ordered pair of basis elements.
pub fn check_rep_property(cfg: &RepConfig, samples: usize, seed: u64) -> Result<PropertyOutcome> {
    let rep = Rep::new(cfg)?;
    let monos = random_monomials(rep.sig, samples, 3, seed);
    let mut out = PropertyOutcome::default();
    let n = rep.elements.len();
    for mono in &monos {
        let p = Polynomial::monomial(rep.sig, mono.clone(), num::BigRational::from_integer(1.into()));
        let images: Vec<Polynomial> = rep.ops.iter().map(|op| op.apply(&p)).collect();
        for a in 0..n {
            for b in 0..n {
                let (u, v) = (&rep.elements[a], &rep.elements[b]);
                let uv = rep.ops[a].apply(&images[b]);
                let vu = rep.ops[b].apply(&images[a]);
                let lhs = if u.odd && v.odd { uv.add(&vu) } else { uv.sub(&vu) };
                let br = superbracket(&u.elem, &v.elem)?;
                let rhs = rep_element(cfg, &br)?.apply(&p);
                out.checked += 1;
                if lhs != rhs {
                    out.fail(format!("[{}, {}] on {}: {} vs {}", u.elem, v.elem, p, lhs, rhs));
                }
            }
        }
    }
    Ok(out)
}

/// Every term of `ρ(E)(m)` has the `k` of `m`.
pub fn check_grading(cfg: &RepConfig, samples: usize, seed: u64) -> Result<PropertyOutcome> {
    let rep = Rep::new(cfg)?;
    let monos = random_monomials(rep.sig, samples, 3, seed);
    let mut out = PropertyOutcome::default();
    for mono in &monos {
        let k = k_degree(cfg, mono);
        for (e, op) in rep.elements.iter().zip(&rep.ops) {
            let img = op.apply_monomial(rep.sig, mono);
            out.checked += 1;
            if let Some(bad) = img.terms.keys().find(|m| k_degree(cfg, m) != k) {
                out.fail(format!("{} maps k={k} monomial {mono} to {bad}", e.elem));
            }
        }
    }
    Ok(out)
}

/// `Δ` lowers and `η` raises `k` by exactly two, termwise.
pub fn check_delta_eta_shift(cfg: &RepConfig, samples: usize, seed: u64) -> Result<PropertyOutcome> {
    let (delta, eta) = delta_eta(cfg)?;
    let sig = cfg.signature();
    let mut out = PropertyOutcome::default();
    for mono in random_monomials(sig, samples, 3, seed) {
        let k = k_degree(cfg, &mono);
        for (op, shift) in [(&delta, -2), (&eta, 2)] {
            out.checked += 1;
            let img = op.apply_monomial(sig, &mono);
            if let Some(bad) = img.terms.keys().find(|m| k_degree(cfg, m) != k + shift) {
                out.fail(format!("shift {shift} fails on {mono}: {bad}"));
            }
        }
    }
    Ok(out)
}

/// `Δ∘ρ(g)` vanishes on each harmonic vector supplied, for `g` in
/// [`invariance_indices`].
pub fn check_kernel_invariance(cfg: &RepConfig, harmonic: &[Polynomial]) -> Result<PropertyOutcome> {
    let rep = Rep::new(cfg)?;
    let (delta, _) = delta_eta(cfg)?;
    let idx = invariance_indices(&rep);
    let mut out = PropertyOutcome::default();
    for f in harmonic {
        if !delta.apply(f).is_zero() {
            out.fail(format!("input {f} is not harmonic"));
            continue;
        }
        for (e, op) in idx.iter().map(|&i| (&rep.elements[i], &rep.ops[i])) {
            out.checked += 1;
            let g = delta.apply(&op.apply(f));
            if !g.is_zero() {
                out.fail(format!("Δ({}({f})) = {g}", e.elem));
            }
        }
    }
    Ok(out)
}

/// Basis indices whose operators commute with `Δ` and `η`: all of `osp` for
/// the first family, the block subalgebra `L` for the primed one.
pub fn invariance_indices(rep: &Rep) -> Vec<usize> {
    if rep.cfg.is_aprime() {
        rep.part_indices(Part::GlBlock)
    } else {
        rep.part_indices(Part::All)
    }
}

/// `Δ` and `η` commute with the operators of [`invariance_indices`] on
/// random monomials.
pub fn check_delta_eta_commute(cfg: &RepConfig, samples: usize, seed: u64) -> Result<PropertyOutcome> {
    let rep = Rep::new(cfg)?;
    let (delta, eta) = delta_eta(cfg)?;
    let idx = invariance_indices(&rep);
    let mut out = PropertyOutcome::default();
    for mono in random_monomials(rep.sig, samples, 3, seed) {
        let p = Polynomial::monomial(rep.sig, mono, num::BigRational::from_integer(1.into()));
        for (e, op) in idx.iter().map(|&i| (&rep.elements[i], &rep.ops[i])) {
            for (name, d) in [("Δ", &delta), ("η", &eta)] {
                out.checked += 1;
                let lhs = d.apply(&op.apply(&p));
                let rhs = op.apply(&d.apply(&p));
                if lhs != rhs {
                    out.fail(format!("{name} does not commute with {} on {p}", e.elem));
                }
            }
        }
    }
    Ok(out)
}
