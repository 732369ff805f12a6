//! Verification of decomposition, composition-series and irreducibility
//! claims on finite windows of the graded modules.
//!
//! First-family checks run exactly on every weight space met by the monomials
//! of `A_k` of degree at most `D − margin`; each of those weight spaces is
//! finite, so their verdicts are pass or fail. Primed-family checks work on
//! the slice `(k, D)` and compare subspaces on degrees `d ≤ D − margin`;
//! generated submodules there are computed from below, so a shortfall is
//! reported as `inconclusive-window` unless every operator preserves degree.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{OspError, Result};
use crate::rep::{
    markers, AprimeConjugation, Family, Part, RepConfig,
};
use crate::slice::{Analyzer, Slice, Space};
use crate::superpoly::{Polynomial, SuperOperator};
use crate::weights::{Term, WeightKey, WeightModel};

/// Outcome of one check or one report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    InconclusiveWindow,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::InconclusiveWindow => "inconclusive-window",
            Status::Fail => "fail",
        }
    }

    /// `Pass` when `ok`, otherwise `Fail` for exact checks and
    /// `InconclusiveWindow` for from-below ones.
    pub fn judge(ok: bool, exact: bool) -> Status {
        match (ok, exact) {
            (true, _) => Status::Pass,
            (false, true) => Status::Fail,
            (false, false) => Status::InconclusiveWindow,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A named sub-check of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

/// One row of the per-degree dimension table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimRow {
    pub d: u32,
    #[serde(rename = "dimA")]
    pub dim_a: usize,
    #[serde(rename = "dimH", skip_serializing_if = "Option::is_none")]
    pub dim_h: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub extra: Vec<(String, usize)>,
}

/// Result of verifying one claim on one window.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub claim_id: String,
    pub cfg: RepConfig,
    pub k: i64,
    pub max_degree: u32,
    pub margin: u32,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub dims: Vec<DimRow>,
    pub witnesses: Vec<String>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(claim_id: impl Into<String>, cfg: &RepConfig, k: i64, max_degree: u32, margin: u32, seed: u64) -> Self {
        Self {
            claim_id: claim_id.into(),
            cfg: cfg.clone(),
            k,
            max_degree,
            margin,
            seed,
            checks: Vec::new(),
            dims: Vec::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Worst status among the checks; a report without checks is
    /// inconclusive.
    pub fn status(&self) -> Status {
        self.checks
            .iter()
            .map(|c| c.status)
            .max()
            .unwrap_or(Status::InconclusiveWindow)
    }

    pub fn check(&mut self, name: &str, status: Status, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), status, detail: detail.into() });
    }

    pub fn check_named(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Window parameters shared by the verifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub k: i64,
    pub max_degree: u32,
    pub margin: u32,
    pub seed: u64,
}

impl Window {
    pub fn new(k: i64, max_degree: u32, margin: u32) -> Self {
        Self { k, max_degree, margin, seed: 0 }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Highest verified degree `D − margin`. Images of verified vectors under
    /// the algebra stay inside the slice only when `margin ≥ 2`.
    pub fn verified(&self) -> Result<u32> {
        if self.margin < 2 || self.margin > self.max_degree {
            return Err(OspError::OutOfRange(format!(
                "margin {} must satisfy 2 <= margin <= D = {}",
                self.margin, self.max_degree
            )));
        }
        Ok(self.max_degree - self.margin)
    }

    fn report(&self, claim_id: &str, cfg: &RepConfig) -> VerificationReport {
        VerificationReport::new(claim_id, cfg, self.k, self.max_degree, self.margin, self.seed)
    }
}

/// True when every operator preserves total degree, so a slice of degree `D`
/// holds the whole graded piece once `D` reaches its top degree.
pub fn degree_preserving(cfg: &RepConfig) -> bool {
    match &cfg.family {
        Family::A { r } => *r == 0,
        Family::Aprime { t } => t.is_empty(),
    }
}

/// Window in which the first family's harmonic space is claimed to carry a
/// composition series instead of splitting off `η A_{k−2}`.
pub fn series_window(cfg: &RepConfig, k: i64) -> bool {
    let Family::A { r } = cfg.family else { return false };
    if cfg.odd {
        return false;
    }
    let (m1, n, r) = (cfg.m1 as i64, cfg.n as i64, r as i64);
    if r == 0 {
        n - m1 + 1 < k && k <= 2 * (n - m1 + 1)
    } else if r == m1 {
        false
    } else {
        k > n - m1 + r + 1
    }
}

fn poly_list(ps: &[Polynomial], limit: usize) -> Vec<String> {
    ps.iter().take(limit).map(|p| p.to_string()).collect()
}

/// Weights of `A_k` met by monomials of degree at most `dv`; an empty window
/// makes the report inconclusive.
fn window_weights(wm: &WeightModel, rep: &mut VerificationReport, dv: u32) -> Vec<WeightKey> {
    let weights = wm.window_weights(rep.k, dv);
    if weights.is_empty() {
        rep.check("window-nonempty", Status::InconclusiveWindow, format!("A_k has no monomial of degree <= {dv}"));
    }
    weights
}

fn show_weight(mu: &[i64]) -> String {
    format!("{mu:?}")
}

/// Per-degree table of `A_k` and `H_k` on the slice, for reports.
fn degree_table(an: &Analyzer, k: i64, max_degree: u32, dv: u32) -> Result<Vec<DimRow>> {
    let slice = an.slice(k, max_degree);
    let h = an.harmonic_in(&slice, max_degree)?;
    Ok((0..=dv)
        .map(|d| DimRow { d, dim_a: slice.count_upto(d), dim_h: Some(h.dim_upto(d)), extra: vec![] })
        .collect())
}

/// `A_k = H_k ⊕ η A_{k−2}` on every weight space met by the window.
pub fn verify_direct_sum(cfg: &RepConfig, w: Window) -> Result<VerificationReport> {
    let wm = WeightModel::new(cfg)?;
    let dv = w.verified()?;
    let mut rep = w.report("direct-sum", cfg);
    rep.dims = degree_table(&wm.an, w.k, w.max_degree, dv)?;
    let weights = window_weights(&wm, &mut rep, dv);
    let mut overlap = None;
    let mut short = None;
    let mut non_injective = None;
    for mu in &weights {
        let a = wm.full(w.k, mu).dim();
        let h = wm.harmonic(w.k, mu)?;
        let (e, pre) = wm.eta_image(w.k, mu)?;
        let s = h.sum(&e).dim();
        if h.dim() + e.dim() != s && overlap.is_none() {
            overlap = Some(mu.clone());
        }
        if s < a && short.is_none() {
            short = Some((mu.clone(), s, a));
        }
        if e.dim() != pre && non_injective.is_none() {
            non_injective = Some(mu.clone());
        }
    }
    rep.notes.push(format!("{} weight spaces checked exactly", weights.len()));
    rep.check(
        "trivial-intersection",
        Status::judge(overlap.is_none(), true),
        match &overlap {
            None => "H ∩ ηA_(k-2) = 0 on every checked weight".to_string(),
            Some(mu) => format!("nonzero intersection at weight {}", show_weight(mu)),
        },
    );
    rep.check(
        "sum-fills-slice",
        Status::judge(short.is_none(), true),
        match &short {
            None => "dim H + dim ηA_(k-2) = dim A on every checked weight".to_string(),
            Some((mu, s, a)) => format!("sum has dimension {s} of {a} at weight {}", show_weight(mu)),
        },
    );
    let detail = match &non_injective {
        None => "η is injective on A_(k-2) at every checked weight".to_string(),
        Some(mu) => format!("η has a kernel at weight {}", show_weight(mu)),
    };
    // Injectivity only follows from the splitting when every A_k is finite.
    if degree_preserving(cfg) {
        rep.check("eta-injective", Status::judge(non_injective.is_none(), true), detail);
    } else {
        rep.notes.push(detail);
    }
    Ok(rep)
}

/// `H_k = 0` on every weight space met by the window.
pub fn verify_harmonic_vanishes(cfg: &RepConfig, w: Window) -> Result<VerificationReport> {
    let wm = WeightModel::new(cfg)?;
    let mut rep = w.report("harmonic-vanishes", cfg);
    rep.dims = degree_table(&wm.an, w.k, w.max_degree, w.max_degree)?;
    let weights = window_weights(&wm, &mut rep, w.max_degree);
    let mut found = Vec::new();
    for mu in &weights {
        let h = wm.harmonic(w.k, mu)?;
        if h.dim() > 0 {
            found.push(format!("{} at weight {}", h.basis()[0], show_weight(mu)));
        }
    }
    rep.witnesses = found.iter().take(4).cloned().collect();
    rep.check(
        "harmonic-zero",
        Status::judge(found.is_empty(), true),
        format!("{} of {} weight spaces carry harmonic vectors", found.len(), weights.len()),
    );
    Ok(rep)
}

/// Irreducibility criterion for `upper / lower` on the given weights: every
/// vector singular modulo `lower` generates `upper` modulo `lower`.
fn check_layer(
    wm: &WeightModel,
    rep: &mut VerificationReport,
    name: &str,
    upper: &Term,
    lower: &Term,
    weights: &[WeightKey],
) -> Result<()> {
    let mut sing = Vec::new();
    let mut layer = 0;
    for mu in weights {
        let up = wm.at(upper, mu)?;
        layer += up.dim() - wm.at(lower, mu)?.dim().min(up.dim());
        for v in wm.quotient_singular(&up, lower, mu)? {
            sing.push(v);
        }
    }
    if layer == 0 {
        rep.check(name, Status::Fail, "layer is zero on every checked weight");
        return Ok(());
    }
    if sing.is_empty() {
        rep.check(name, Status::Fail, "no singular vector on the checked weights");
        return Ok(());
    }
    let mut failures = Vec::new();
    for v in &sing {
        let gen = wm.generated(v, lower.clone())?;
        for mu in weights {
            let up = wm.at(upper, mu)?;
            let got = wm.at(&gen, mu)?;
            if !got.contains_span(&up) {
                failures.push(format!(
                    "<{v}> has dimension {} of {} at weight {}",
                    got.dim(),
                    up.dim(),
                    show_weight(mu)
                ));
                break;
            }
        }
    }
    for v in sing.iter().take(4) {
        rep.witnesses.push(format!("{name}: singular {v}"));
    }
    let detail = if failures.is_empty() {
        format!("{} singular vector(s), each generates the layer on {} weights", sing.len(), weights.len())
    } else {
        failures.join("; ")
    };
    rep.check(name, Status::judge(failures.is_empty(), true), detail);
    Ok(())
}

/// Irreducibility criterion for `H_k` on the weights met by the window.
pub fn verify_irreducible(cfg: &RepConfig, w: Window) -> Result<VerificationReport> {
    let wm = WeightModel::new(cfg)?;
    let dv = w.verified()?;
    let mut rep = w.report("irreducible", cfg);
    rep.dims = degree_table(&wm.an, w.k, w.max_degree, dv)?;
    let weights = window_weights(&wm, &mut rep, dv);
    if weights.is_empty() {
        return Ok(rep);
    }
    rep.notes.push(format!("{} weight spaces checked exactly", weights.len()));
    check_layer(&wm, &mut rep, "singular-vectors-generate", &Term::Harmonic { k: w.k }, &Term::Zero, &weights)?;
    Ok(rep)
}

/// The claimed composition series of `H_k` for the first family with even `m`.
pub fn verify_composition_series(cfg: &RepConfig, w: Window) -> Result<VerificationReport> {
    let Family::A { r } = cfg.family else {
        return Err(OspError::Invalid("composition series are claimed for the first family".into()));
    };
    if !series_window(cfg, w.k) {
        return Err(OspError::OutOfRange(format!("k = {} is outside the series window of {}", w.k, cfg.id())));
    }
    let wm = WeightModel::new(cfg)?;
    let dv = w.verified()?;
    let (m1, n, k) = (cfg.m1 as i64, cfg.n as i64, w.k);
    let r = r as i64;
    let mut rep = w.report("composition-series", cfg);
    let weights = window_weights(&wm, &mut rep, dv);
    if weights.is_empty() {
        return Ok(rep);
    }

    let (j, kp) = if r == 0 {
        (k - (n - m1 + 1), 2 * (n - m1 + 1) - k)
    } else if r < m1 - 1 {
        (k - n + m1 - r - 1, -k + 2 * (n - m1 + r + 1))
    } else {
        (k - n, -k + 2 * n)
    };
    let bottom = Term::EtaPowerHarmonic { j: j as u32, kp };
    let mut terms: Vec<(String, Term)> = vec![("H_k".into(), Term::Harmonic { k })];
    if r == m1 - 1 && r > 0 {
        let x = Polynomial::x(cfg.signature(), cfg.m1 - 1).pow(k as u32)?;
        let label = format!("<x{}^{k}>", cfg.m1);
        match wm.generated(&x, Term::Zero) {
            Ok(t) => {
                rep.check(&format!("singular:{label}"), Status::Pass, format!("{x} is a highest weight vector"));
                terms.push((label, t));
            }
            Err(e) => {
                rep.check(&format!("singular:{label}"), Status::Fail, e.to_string());
                return Ok(rep);
            }
        }
        rep.notes.push(format!("branch with middle term <x_m1^k>; last term η^{j} H_{kp}"));
    } else {
        rep.notes.push(format!("series H_k ⊃ η^{j} H_{kp} ⊃ 0"));
    }
    terms.push((format!("eta^{j} H_{kp}"), bottom));
    rep.notes.push(format!("{} weight spaces checked exactly", weights.len()));

    let mut dims = degree_table(&wm.an, k, w.max_degree, dv)?;
    let mut totals = vec![0usize; terms.len()];
    let mut short = None;
    for mu in &weights {
        for (i, (_, t)) in terms.iter().enumerate() {
            totals[i] += wm.at(t, mu)?.dim();
        }
        let (img, pre) = wm.eta_power_harmonic(j as u32, kp, mu)?;
        if img.dim() != pre && short.is_none() {
            short = Some(mu.clone());
        }
    }
    for row in dims.iter_mut() {
        row.extra = vec![("weights".into(), weights.len())];
    }
    rep.dims = dims;
    rep.check(
        "eta-power-injective",
        Status::judge(short.is_none(), true),
        match &short {
            None => format!("η^{j} is injective on H_{kp} at every checked weight"),
            Some(mu) => format!("η^{j} has a kernel on H_{kp} at weight {}", show_weight(mu)),
        },
    );

    for i in 1..terms.len() {
        let ((ul, upper), (ll, lower)) = (&terms[i - 1], &terms[i]);
        let mut bad = None;
        let mut witness = None;
        for mu in &weights {
            let (a, b) = (wm.at(upper, mu)?, wm.at(lower, mu)?);
            if !a.contains_span(&b) && bad.is_none() {
                bad = Some(mu.clone());
            }
            if witness.is_none() {
                witness = a.basis().iter().find(|p| !b.contains(p)).cloned();
            }
        }
        rep.check(
            &format!("inclusion:{ll}<{ul}"),
            Status::judge(bad.is_none(), true),
            match &bad {
                None => format!("{ll} ⊆ {ul} on every checked weight"),
                Some(mu) => format!("{ll} leaves {ul} at weight {}", show_weight(mu)),
            },
        );
        rep.check(
            &format!("strict:{ll}<{ul}"),
            Status::judge(witness.is_some(), true),
            match &witness {
                Some(v) => format!("witness {v} lies outside {ll}"),
                None => format!("{ll} = {ul} on every checked weight"),
            },
        );
    }

    let (ll, _) = terms.last().unwrap();
    let bottom_dim = *totals.last().unwrap();
    rep.check(
        &format!("nonzero:{ll}"),
        Status::judge(bottom_dim > 0, true),
        format!("total dimension {bottom_dim} on the checked weights"),
    );

    for (label, t) in &terms {
        let mut bad = None;
        for mu in &weights {
            if let Some(why) = wm.stable_at(t, mu)? {
                bad = Some(why);
                break;
            }
        }
        rep.check(
            &format!("stable:{label}"),
            Status::judge(bad.is_none(), true),
            bad.unwrap_or_else(|| "every root vector maps it into itself".to_string()),
        );
    }

    for i in 0..terms.len() {
        let lower = terms.get(i + 1).map(|t| t.1.clone()).unwrap_or(Term::Zero);
        let name = format!(
            "layer-irreducible:{}/{}",
            terms[i].0,
            terms.get(i + 1).map(|t| t.0.as_str()).unwrap_or("0")
        );
        check_layer(&wm, &mut rep, &name, &terms[i].1, &lower, &weights)?;
    }
    Ok(rep)
}

/// Dispatches the first-family claims for one `(cfg, k)`: the composition
/// series in its window, otherwise the splitting and irreducibility of
/// `H_k`, or its vanishing.
pub fn verify_harmonic_claims(cfg: &RepConfig, w: Window) -> Result<Vec<VerificationReport>> {
    let Family::A { r } = cfg.family else {
        return Err(OspError::Invalid("harmonic claims are stated for the first family".into()));
    };
    if series_window(cfg, w.k) {
        return Ok(vec![verify_composition_series(cfg, w)?]);
    }
    let mut out = Vec::new();
    if !cfg.odd {
        out.push(verify_direct_sum(cfg, w)?);
    }
    if !cfg.odd && r == cfg.m1 && w.k > cfg.n as i64 {
        out.push(verify_harmonic_vanishes(cfg, w)?);
    } else {
        out.push(verify_irreducible(cfg, w)?);
    }
    Ok(out)
}

/// Windowed irreducibility of `upper / lower`: every singular vector of the
/// quotient found in the window generates the whole quotient window.
fn check_slice_layer(
    an: &Analyzer,
    rep: &mut VerificationReport,
    name: &str,
    upper: &Space,
    lower: &Space,
    dv: u32,
    exact: bool,
) -> Result<()> {
    let top = upper.truncated(dv);
    if top.dim() == lower.dim_upto(dv) {
        rep.check(name, Status::judge(false, exact), "layer is zero in the window");
        return Ok(());
    }
    let sing = an.quotient_singular(&top, lower, Part::Positive)?;
    if sing.is_empty() {
        rep.check(name, Status::judge(false, exact), "no singular vector in the window");
        return Ok(());
    }
    let mut failures = Vec::new();
    for v in &sing {
        let gen = an.generate_from(lower.clone(), std::slice::from_ref(v))?;
        if !gen.contains_upto(&top, dv) {
            failures.push(format!("<{v}> reaches {} of {}", gen.dim_upto(dv), top.dim()));
        }
    }
    for v in sing.iter().take(4) {
        rep.witnesses.push(format!("{name}: singular {v}"));
    }
    let detail = if failures.is_empty() {
        format!("{} singular vector(s), each generates the layer up to degree {dv}", sing.len())
    } else {
        failures.join("; ")
    };
    rep.check(name, Status::judge(failures.is_empty(), exact), detail);
    Ok(())
}

/// Deterministic sample of monomials of degree at most `d` in a slice.
fn seed_monomials(slice: &Slice, d: u32, count: usize, seed: u64) -> Vec<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<usize> = (0..slice.count_upto(d)).collect();
    pool.choose_multiple(&mut rng, count.min(pool.len()))
        .copied()
        .collect::<BTreeSet<usize>>()
        .into_iter()
        .map(|i| slice.to_poly(&[(i, num::BigRational::from_integer(1.into()))]))
        .collect()
}

/// Structure of the primed family `A′_k`: irreducibility, or the splitting of
/// `A′_{m1}` into two submodules when `S1 = T1 = ∅`.
pub fn verify_aprime_structure(cfg: &RepConfig, w: Window) -> Result<VerificationReport> {
    let Family::Aprime { t } = &cfg.family else {
        return Err(OspError::Invalid("primed-family structure needs a primed configuration".into()));
    };
    let an = Analyzer::new(cfg)?;
    let dv = w.verified()?;
    // Bosonic degrees add to k − t (no swaps) or t − k (all swapped), with t ≤ m.
    let zero = (t.is_empty() && w.k < 0) || (t.len() == 2 * cfg.n && w.k > cfg.m() as i64);
    if zero {
        let mut rep = w.report("aprime-irreducible", cfg);
        rep.check("module-zero", Status::Pass, "A'_k = 0: no monomial has this k-degree");
        return Ok(rep);
    }
    let mk = markers(cfg)?;
    let slice = an.slice(w.k, w.max_degree);
    let full = Space::full(&slice, dv);
    let exact = degree_preserving(cfg);
    let split = !cfg.odd && mk.s1.is_empty() && mk.t1.is_empty() && w.k == cfg.m1 as i64;
    if !split {
        let mut rep = w.report("aprime-irreducible", cfg);
        for d in 0..=dv {
            rep.dims.push(DimRow { d, dim_a: slice.count_upto(d), dim_h: None, extra: vec![] });
        }
        if full.dim() == 0 {
            rep.check("seeds-generate", Status::judge(false, exact), "slice is empty in the window");
            return Ok(rep);
        }
        let mut seeds = an.singular_in(&slice, dv, Part::Positive, crate::slice::Within::A)?.basis();
        seeds.truncate(8);
        seeds.extend(seed_monomials(&slice, dv, 3, w.seed));
        let mut failures = Vec::new();
        for f in &seeds {
            let gen = an.generate_in(&slice, std::slice::from_ref(f))?;
            if !gen.contains_upto(&full, dv) {
                failures.push(format!("<{f}> reaches {} of {}", gen.dim_upto(dv), full.dim()));
            }
        }
        rep.witnesses = poly_list(&seeds, 12);
        rep.check(
            "seeds-generate",
            Status::judge(failures.is_empty(), exact),
            if failures.is_empty() {
                format!("{} seeds each generate the slice up to degree {dv}", seeds.len())
            } else {
                failures.join("; ")
            },
        );
        return Ok(rep);
    }

    let mut rep = w.report("aprime-splitting", cfg);
    if cfg.n < 2 {
        rep.check(
            "two-summands",
            Status::InconclusiveWindow,
            "second generator (x_(n-1) x_(2n) - x_n x_(2n-1)) θ_1⋯θ_m1 needs n >= 2",
        );
        return Ok(rep);
    }
    let conj = AprimeConjugation::new(cfg)?;
    let (g1, g2) = aprime_split_generators(cfg)?;
    let (g1, g2) = (conj.from_normal(&g1), conj.from_normal(&g2));
    let m1 = an.generate_in(&slice, std::slice::from_ref(&g1))?;
    let m2 = an.generate_in(&slice, std::slice::from_ref(&g2))?;
    let both = m1.union(&m2).dim();
    let overlap = (both != m1.dim() + m2.dim()).then_some(m1.dim() + m2.dim() - both);
    let mut short = None;
    for d in 0..=dv {
        let (a, b) = (m1.dim_upto(d), m2.dim_upto(d));
        let s = m1.sum_dim_upto(&m2, d);
        let n = slice.count_upto(d);
        rep.dims.push(DimRow {
            d,
            dim_a: n,
            dim_h: None,
            extra: vec![("first".into(), a), ("second".into(), b)],
        });
        if s < n && short.is_none() {
            short = Some(d);
        }
    }
    rep.witnesses = vec![g1.to_string(), g2.to_string()];
    rep.check(
        "trivial-intersection",
        Status::judge(overlap.is_none(), true),
        match overlap {
            None => format!("generated summands meet trivially up to degree {}", w.max_degree),
            Some(c) => format!("summands share a {c}-dimensional subspace up to degree {}", w.max_degree),
        },
    );
    rep.check(
        "sum-fills-slice",
        Status::judge(short.is_none(), exact),
        match short {
            None => format!("summands fill the slice up to degree {dv}"),
            Some(d) => format!("sum falls short of the slice at degree {d}"),
        },
    );
    let empty = Space::empty(&slice);
    check_slice_layer(&an, &mut rep, "first-irreducible", &m1, &empty, dv, exact)?;
    check_slice_layer(&an, &mut rep, "second-irreducible", &m2, &empty, dv, exact)?;
    Ok(rep)
}

/// Generators `θ_1⋯θ_m1` and `(x_{n−1}x_{2n} − x_n x_{2n−1})θ_1⋯θ_m1` of the
/// two summands of `A′_{m1}`, in the normal form `T = 1..n`.
pub fn aprime_split_generators(cfg: &RepConfig) -> Result<(Polynomial, Polynomial)> {
    let sig = cfg.signature();
    let n = cfg.n;
    if n < 2 {
        return Err(OspError::OutOfRange("the second summand needs n >= 2".into()));
    }
    let mut theta = Polynomial::one(sig);
    for p in 0..cfg.m1 {
        theta = theta.mul(&Polynomial::theta(sig, p))?;
    }
    let x = |i: usize| Polynomial::x(sig, i - 1);
    let quad = x(n - 1).mul(&x(2 * n))?.sub(&x(n).mul(&x(2 * n - 1))?);
    Ok((theta.clone(), quad.mul(&theta)?))
}

/// Applies an operator repeatedly.
pub fn apply_power(op: &SuperOperator, p: &Polynomial, j: u32) -> Polynomial {
    let mut out = p.clone();
    for _ in 0..j {
        out = op.apply(&out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_rejects_bad_margin() {
        assert!(Window::new(1, 4, 1).verified().is_err());
        assert!(Window::new(1, 4, 5).verified().is_err());
        assert_eq!(Window::new(1, 8, 4).verified().unwrap(), 4);
    }

    #[test]
    fn direct_sum_outside_window() {
        let cfg = RepConfig::a(false, 2, 1, 0).unwrap();
        let rep = verify_direct_sum(&cfg, Window::new(3, 7, 4)).unwrap();
        assert_eq!(rep.status(), Status::Pass, "{:?}", rep.checks);
    }

    #[test]
    fn direct_sum_fails_inside_window() {
        let cfg = RepConfig::a(false, 1, 1, 0).unwrap();
        let rep = verify_direct_sum(&cfg, Window::new(2, 6, 2)).unwrap();
        assert_eq!(rep.check_named("trivial-intersection").unwrap().status, Status::Fail);
    }

    #[test]
    fn series_window_bounds() {
        let a = |m1, n, r| RepConfig::a(false, m1, n, r).unwrap();
        assert!(series_window(&a(1, 1, 0), 2));
        assert!(!series_window(&a(1, 1, 0), 1));
        assert!(!series_window(&a(2, 1, 0), 3));
        assert!(series_window(&a(2, 1, 1), 2));
        assert!(!series_window(&a(2, 1, 1), 1));
        assert!(!series_window(&a(1, 1, 1), 5));
    }

    #[test]
    fn zero_primed_modules_are_recognized() {
        let all = RepConfig::aprime(false, 1, 1, &[1, 2]).unwrap();
        let rep = verify_aprime_structure(&all, Window::new(3, 8, 4)).unwrap();
        assert_eq!(rep.check_named("module-zero").map(|c| c.status), Some(Status::Pass));
        let rep = verify_aprime_structure(&all, Window::new(2, 8, 4)).unwrap();
        assert!(rep.check_named("module-zero").is_none());
        let none = RepConfig::aprime(false, 1, 1, &[]).unwrap();
        let rep = verify_aprime_structure(&none, Window::new(-1, 8, 4)).unwrap();
        assert_eq!(rep.status(), Status::Pass);
    }

    #[test]
    fn splitting_sum_counts_cancellations() {
        let cfg = RepConfig::aprime(false, 1, 2, &[1, 2]).unwrap();
        let rep = verify_aprime_structure(&cfg, Window::new(1, 10, 4)).unwrap();
        assert_eq!(rep.check_named("sum-fills-slice").map(|c| c.status), Some(Status::Pass));
        assert_eq!(rep.check_named("trivial-intersection").map(|c| c.status), Some(Status::Pass));
    }
}
