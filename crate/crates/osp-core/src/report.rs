//! Jobs, verification suites and machine-readable reports.
//!
//! A [`JobSpec`] names one command and its parameters; [`run`] turns it into a
//! [`Report`] that renders as JSON (schema `osp-report/1`), CSV or text.
//! Reports hold no timings or host data, so the same job always renders to
//! the same bytes.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::closed_forms::{self as cf, ClosedFamilyId, Normalization, Reading, RecurrenceReading};
use crate::error::{OspError, Result};
use crate::props;
use crate::rep::{Family, Part, RepConfig};
use crate::slice::{Analyzer, Within};
use crate::superpoly::Polynomial;
use crate::verify::{self, DimRow, Status, VerificationReport, Window};

/// Report schema identifier.
pub const SCHEMA: &str = "osp-report/1";
/// Artifact version embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_ENV: &str = "OSP_REPORT_DIR";

/// Command of a job.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Dim,
    HarmonicBasis,
    Singular,
    Generate,
    Verify,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Dim => "dim",
            Command::HarmonicBasis => "harmonic-basis",
            Command::Singular => "singular",
            Command::Generate => "generate",
            Command::Verify => "verify",
        }
    }
}

/// Output format.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = OspError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(OspError::Parse(format!("--format: unknown format {s}"))),
        }
    }
}

/// Verification suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteId {
    FamilyA,
    FamilyAprime,
    OddM,
    Bases,
    RepProperty,
}

impl SuiteId {
    pub const ALL: [SuiteId; 5] = [SuiteId::FamilyA, SuiteId::FamilyAprime, SuiteId::OddM, SuiteId::Bases, SuiteId::RepProperty];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::FamilyA => "thm1",
            SuiteId::FamilyAprime => "thm2",
            SuiteId::OddM => "thm3",
            SuiteId::Bases => "bases",
            SuiteId::RepProperty => "rep-property",
        }
    }
}

impl FromStr for SuiteId {
    type Err = OspError;

    fn from_str(s: &str) -> Result<Self> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| OspError::Parse(format!("--suite: unknown suite {s}")))
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A suite with the claims it covers and its default grid.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteDescriptor {
    pub id: SuiteId,
    pub covers: &'static str,
    pub grid: &'static str,
}

/// Stable list of suites.
pub fn suites() -> Vec<SuiteDescriptor> {
    vec![
        SuiteDescriptor {
            id: SuiteId::FamilyA,
            covers: "first family, even m: splitting, irreducibility, vanishing and composition series for r = 0, r = m1 and 0 < r < m1",
            grid: "m1 in {1,2}, n in {1,2}, r in 0..=m1, k in -2..=4 (k >= 0 for r = 0), D = 10, margin 4",
        },
        SuiteDescriptor {
            id: SuiteId::FamilyAprime,
            covers: "primed family, even m: irreducibility of A'_k and the splitting of A'_m1",
            grid: "m1 in {1,2}, n in {1,2}, T in {{}, {1}, {1..n}}, k in 0..=3, D = 10, margin 4",
        },
        SuiteDescriptor {
            id: SuiteId::OddM,
            covers: "odd m: irreducibility of H_k and A'_k, highest weight table",
            grid: "m1 = 1, n in {1,2}, r in {0,1}, k in 0..=3; table rows for m1 in {1,2}; D = 10, margin 4",
        },
        SuiteDescriptor {
            id: SuiteId::Bases,
            covers: "closed-form bases, ladders, intermediate generators, highest weight table, two-stream split",
            grid: "m1 in {1,2}, n in {1,2}, k in -2..=4; recurrences at m1 in {3,4}",
        },
        SuiteDescriptor {
            id: SuiteId::RepProperty,
            covers: "superbracket homomorphism, grading, Laplacian invariance for A and A', even and odd m",
            grid: "m1 in {1,2}, n in {1,2}, every r, T in {{}, {1}, {1..n}}, 50 samples",
        },
    ]
}

/// One job.
#[derive(Clone, Debug, Serialize)]
pub struct JobSpec {
    pub command: Command,
    /// `None` runs the suite's default grid.
    pub cfg: Option<RepConfig>,
    /// Inclusive range of `k`.
    pub k_range: Option<(i64, i64)>,
    #[serde(rename = "D")]
    pub max_degree: u32,
    pub margin: u32,
    pub seed: u64,
    pub samples: usize,
    pub suite: Option<SuiteId>,
    /// Generators for `generate`, in text form.
    pub generators: Vec<String>,
    /// Closed family evaluated by `harmonic-basis`.
    pub closed: Option<String>,
    /// `singular` searches inside `H_k` instead of `A_k`.
    pub harmonic_only: bool,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            cfg: None,
            k_range: None,
            max_degree: 10,
            margin: 4,
            seed: 0,
            samples: 50,
            suite: None,
            generators: Vec::new(),
            closed: None,
            harmonic_only: false,
            output: None,
            format: Format::Json,
        }
    }

    /// Checks the flag combination; errors name the offending flag.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(OspError::Invalid(msg));
        let windowed = matches!(self.command, Command::Generate)
            || (self.command == Command::Verify && self.suite != Some(SuiteId::RepProperty));
        if windowed && self.margin >= self.max_degree {
            return bad(format!("--margin {} must be below --max-deg {}", self.margin, self.max_degree));
        }
        if let Some((lo, hi)) = self.k_range {
            if lo > hi {
                return bad(format!("--k range {lo}..{hi} is empty"));
            }
            if lo.unsigned_abs().max(hi.unsigned_abs()) > u64::from(self.max_degree) {
                return bad(format!("--max-deg {} must be at least |k|", self.max_degree));
            }
        }
        match self.command {
            Command::Verify => {
                if self.suite.is_none() {
                    return bad("--suite is required for verify".into());
                }
                if self.suite != Some(SuiteId::RepProperty) && self.margin < 2 {
                    return bad(format!("--margin {} must be at least 2", self.margin));
                }
            }
            Command::HarmonicBasis if self.closed.is_some() => {}
            _ => {
                if self.cfg.is_none() {
                    return bad(format!("--family is required for {}", self.command.as_str()));
                }
                if self.k_range.is_none() {
                    return bad(format!("--k is required for {}", self.command.as_str()));
                }
            }
        }
        if self.command == Command::Generate && self.generators.is_empty() {
            return bad("--gen is required for generate".into());
        }
        Ok(())
    }

    fn window(&self, k: i64) -> Window {
        Window::new(k, self.max_degree, self.margin).with_seed(self.seed)
    }

    fn ks(&self, default: impl IntoIterator<Item = i64>) -> Vec<i64> {
        match self.k_range {
            Some((lo, hi)) => (lo..=hi).collect(),
            None => default.into_iter().collect(),
        }
    }
}

/// Output of one job.
#[derive(Clone, Debug)]
pub struct Report {
    pub job: JobSpec,
    pub entries: Vec<VerificationReport>,
    /// Polynomials produced by `harmonic-basis`, `singular` and `generate`.
    pub polynomials: Vec<String>,
}

impl Report {
    /// `pass` when every check passes, `fail` when any fails, otherwise
    /// `inconclusive-window`.
    pub fn status(&self) -> Status {
        if self.entries.is_empty() {
            return Status::InconclusiveWindow;
        }
        self.entries.iter().map(VerificationReport::status).max().unwrap_or(Status::InconclusiveWindow)
    }

    /// 0 pass, 2 any failure, 3 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Status::Pass => 0,
            Status::Fail => 2,
            Status::InconclusiveWindow => 3,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut counts = serde_json::Map::new();
        for s in [Status::Pass, Status::Fail, Status::InconclusiveWindow] {
            let c = self.entries.iter().filter(|e| e.status() == s).count();
            counts.insert(s.as_str().into(), c.into());
        }
        let mut job = serde_json::to_value(&self.job).unwrap_or(Value::Null);
        if let Value::Object(map) = &mut job {
            map.insert("cfg".into(), self.job.cfg.as_ref().map(cfg_json).unwrap_or(Value::Null));
            map.remove("output");
            map.remove("format");
        }
        json!({
            "schema": SCHEMA,
            "version": VERSION,
            "command": self.job.command.as_str(),
            "suite": self.job.suite.map(SuiteId::as_str),
            "seed": self.job.seed,
            "job": job,
            "status": self.status().as_str(),
            "summary": counts,
            "results": self.entries.iter().map(entry_json).collect::<Vec<_>>(),
            "polynomials": self.polynomials,
            "repairs": cf::repairs(),
        })
    }

    /// Rows `claim_id, cfg, k, d, dimA, dimH, status`; reports without a
    /// dimension table give one row with empty degree columns.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| OspError::Invalid(format!("csv: {e}"));
        w.write_record(["claim_id", "cfg", "k", "d", "dimA", "dimH", "status"]).map_err(io)?;
        for e in &self.entries {
            let head = [e.claim_id.clone(), e.cfg.id(), e.k.to_string()];
            let status = e.status().as_str().to_string();
            if e.dims.is_empty() {
                w.write_record(head.iter().cloned().chain(["".into(), "".into(), "".into(), status.clone()])).map_err(io)?;
            }
            for row in &e.dims {
                let dim_h = row.dim_h.map(|h| h.to_string()).unwrap_or_default();
                w.write_record(
                    head.iter().cloned().chain([row.d.to_string(), row.dim_a.to_string(), dim_h, status.clone()]),
                )
                .map_err(io)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| OspError::Invalid(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| OspError::Invalid(format!("csv: {e}")))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out += &format!("{} {} k={}: {}\n", e.claim_id, e.cfg.id(), e.k, e.status());
            for c in &e.checks {
                out += &format!("  [{}] {}: {}\n", c.status, c.name, c.detail);
            }
            for row in &e.dims {
                out += &format!("  k={}, d={}, dimA={}", e.k, row.d, row.dim_a);
                if let Some(h) = row.dim_h {
                    out += &format!(", dimH={h}");
                }
                out += "\n";
            }
            for n in &e.notes {
                out += &format!("  note: {n}\n");
            }
        }
        for p in &self.polynomials {
            out += &format!("{p}\n");
        }
        out += &format!("status: {}\n", self.status());
        out
    }

    pub fn render(&self) -> Result<String> {
        match self.job.format {
            Format::Json => serde_json::to_string_pretty(&self.to_json())
                .map(|s| s + "\n")
                .map_err(|e| OspError::Invalid(format!("json: {e}"))),
            Format::Csv => self.to_csv(),
            Format::Text => Ok(self.to_text()),
        }
    }

    /// Default file name inside the output directory.
    pub fn file_name(&self) -> String {
        let ext = match self.job.format {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "txt",
        };
        match self.job.suite {
            Some(s) => format!("{}-{}-seed{}.{ext}", self.job.command.as_str(), s, self.job.seed),
            None => format!("{}-seed{}.{ext}", self.job.command.as_str(), self.job.seed),
        }
    }
}

fn cfg_json(cfg: &RepConfig) -> Value {
    let mut v = cfg.to_json();
    if let Value::Object(map) = &mut v {
        map.insert("id".into(), cfg.id().into());
    }
    v
}

fn dim_json(row: &DimRow) -> Value {
    let mut v = serde_json::to_value(row).unwrap_or(Value::Null);
    if let Value::Object(map) = &mut v {
        if let Some(Value::Array(extra)) = map.remove("extra") {
            for pair in extra {
                if let Value::Array(kv) = pair {
                    if let (Some(Value::String(k)), Some(val)) = (kv.first(), kv.get(1)) {
                        map.insert(k.clone(), val.clone());
                    }
                }
            }
        }
    }
    v
}

fn entry_json(e: &VerificationReport) -> Value {
    json!({
        "claim_id": e.claim_id,
        "cfg": cfg_json(&e.cfg),
        "k": e.k,
        "D": e.max_degree,
        "margin": e.margin,
        "seed": e.seed,
        "status": e.status().as_str(),
        "checks": e.checks,
        "dims": e.dims.iter().map(dim_json).collect::<Vec<_>>(),
        "witnesses": e.witnesses,
        "notes": e.notes,
    })
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so readers never see a partial report.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let io = |e: std::io::Error| OspError::Invalid(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir).map_err(io)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Output path of a job: `--output`, else the default directory from
/// [`OUTPUT_DIR_ENV`], else none.
pub fn output_path(report: &Report) -> Option<PathBuf> {
    report.job.output.clone().or_else(|| {
        std::env::var_os(OUTPUT_DIR_ENV)
            .filter(|d| !d.is_empty())
            .map(|d| PathBuf::from(d).join(report.file_name()))
    })
}

/// Runs a job.
pub fn run(job: &JobSpec) -> Result<Report> {
    job.validate()?;
    let mut report = Report { job: job.clone(), entries: Vec::new(), polynomials: Vec::new() };
    match job.command {
        Command::Dim => run_dim(job, &mut report)?,
        Command::HarmonicBasis => run_harmonic_basis(job, &mut report)?,
        Command::Singular => run_singular(job, &mut report)?,
        Command::Generate => run_generate(job, &mut report)?,
        Command::Verify => {
            let suite = job.suite.ok_or_else(|| OspError::Invalid("--suite is required for verify".into()))?;
            report.entries = run_suite(suite, job)?;
        }
    }
    Ok(report)
}

fn job_cfg(job: &JobSpec) -> Result<&RepConfig> {
    job.cfg.as_ref().ok_or_else(|| OspError::Invalid("--family is required".into()))
}

fn job_entry(job: &JobSpec, claim: &str, cfg: &RepConfig, k: i64) -> VerificationReport {
    VerificationReport::new(claim, cfg, k, job.max_degree, job.margin, job.seed)
}

fn run_dim(job: &JobSpec, report: &mut Report) -> Result<()> {
    let cfg = job_cfg(job)?;
    let an = Analyzer::new(cfg)?;
    for k in job.ks([]) {
        let slice = an.slice(k, job.max_degree);
        let h = if an.delta().is_ok() { Some(an.harmonic_in(&slice, job.max_degree)?) } else { None };
        let mut e = job_entry(job, "dim", cfg, k);
        e.dims = (0..=job.max_degree)
            .map(|d| DimRow {
                d,
                dim_a: slice.count_upto(d),
                dim_h: h.as_ref().map(|h| h.dim_upto(d)),
                extra: vec![],
            })
            .collect();
        e.check("enumerated", Status::Pass, format!("slice of {} monomials", slice.len()));
        report.entries.push(e);
    }
    Ok(())
}

fn run_harmonic_basis(job: &JobSpec, report: &mut Report) -> Result<()> {
    if let Some(id) = &job.closed {
        let id: ClosedFamilyId = id.parse()?;
        let cfg = id.config()?;
        let polys = id.evaluate()?;
        let an = Analyzer::new(&cfg)?;
        let delta = an.delta()?;
        let bad = polys.iter().filter(|p| !delta.apply(p).is_zero()).count();
        let mut e = job_entry(job, &format!("closed:{id}"), &cfg, 0);
        e.check(
            "harmonic",
            Status::judge(bad == 0, true),
            format!("{} of {} polynomials are harmonic", polys.len() - bad, polys.len()),
        );
        report.polynomials = polys.iter().map(Polynomial::to_string).collect();
        report.entries.push(e);
        return Ok(());
    }
    let cfg = job_cfg(job)?;
    let an = Analyzer::new(cfg)?;
    for k in job.ks([]) {
        let slice = an.slice(k, job.max_degree);
        let h = an.harmonic_in(&slice, job.max_degree)?;
        let mut e = job_entry(job, "harmonic-basis", cfg, k);
        e.dims = (0..=job.max_degree)
            .map(|d| DimRow { d, dim_a: slice.count_upto(d), dim_h: Some(h.dim_upto(d)), extra: vec![] })
            .collect();
        e.check("kernel", Status::Pass, format!("dim H = {}", h.dim()));
        report.polynomials.extend(h.basis().iter().map(|p| format!("k={k}: {p}")));
        report.entries.push(e);
    }
    Ok(())
}

fn run_singular(job: &JobSpec, report: &mut Report) -> Result<()> {
    let cfg = job_cfg(job)?;
    let an = Analyzer::new(cfg)?;
    let within = if job.harmonic_only { Within::H } else { Within::A };
    for k in job.ks([]) {
        let slice = an.slice(k, job.max_degree);
        let s = an.singular_in(&slice, job.max_degree, Part::Positive, within)?;
        let mut e = job_entry(job, "singular", cfg, k);
        e.check("singular", Status::Pass, format!("{} singular vectors up to degree {}", s.dim(), job.max_degree));
        report.polynomials.extend(s.basis().iter().map(|p| format!("k={k}: {p}")));
        report.entries.push(e);
    }
    Ok(())
}

fn run_generate(job: &JobSpec, report: &mut Report) -> Result<()> {
    let cfg = job_cfg(job)?;
    let sig = cfg.signature();
    let gens = job
        .generators
        .iter()
        .map(|g| Polynomial::parse(sig, g))
        .collect::<Result<Vec<_>>>()?;
    let an = Analyzer::new(cfg)?;
    let dv = job.max_degree - job.margin;
    for k in job.ks([]) {
        let slice = an.slice(k, job.max_degree);
        let here: Vec<Polynomial> = gens
            .iter()
            .filter(|g| !g.is_zero() && slice.coords(g).is_some())
            .cloned()
            .collect();
        let mut e = job_entry(job, "generate", cfg, k);
        if here.is_empty() {
            e.check("generators-in-slice", Status::InconclusiveWindow, "no generator lies in this slice");
            report.entries.push(e);
            continue;
        }
        let space = an.generate_in(&slice, &here)?.truncated(dv);
        e.dims = (0..=dv)
            .map(|d| DimRow { d, dim_a: slice.count_upto(d), dim_h: None, extra: vec![("generated".into(), space.dim_upto(d))] })
            .collect();
        e.check("closure", Status::Pass, format!("generated dimension {} up to degree {dv}", space.dim()));
        report.polynomials.extend(space.basis().iter().map(|p| format!("k={k}: {p}")));
        report.entries.push(e);
    }
    Ok(())
}

/// Runs a suite on the job's configuration, or on the default grid.
pub fn run_suite(suite: SuiteId, job: &JobSpec) -> Result<Vec<VerificationReport>> {
    match suite {
        SuiteId::FamilyA => suite_thm1(job),
        SuiteId::FamilyAprime => suite_thm2(job),
        SuiteId::OddM => suite_thm3(job),
        SuiteId::Bases => suite_bases(job),
        SuiteId::RepProperty => suite_rep_property(job),
    }
}

fn pick(job: &JobSpec, grid: Vec<RepConfig>) -> Vec<RepConfig> {
    match &job.cfg {
        Some(c) => vec![c.clone()],
        None => grid,
    }
}

fn first_grid(odd: bool, m1s: &[usize], ns: &[usize]) -> Vec<RepConfig> {
    let mut out = Vec::new();
    for &m1 in m1s {
        for &n in ns {
            for r in 0..=m1 {
                out.extend(RepConfig::a(odd, m1, n, r));
            }
        }
    }
    out
}

fn primed_grid(odd: bool, m1s: &[usize], ns: &[usize]) -> Vec<RepConfig> {
    let mut out = Vec::new();
    for &m1 in m1s {
        for &n in ns {
            let mut ts: Vec<Vec<usize>> = vec![vec![], vec![1], (1..=n).collect()];
            ts.dedup();
            for t in ts {
                out.extend(RepConfig::aprime(odd, m1, n, &t));
            }
        }
    }
    out
}

fn first_ks(job: &JobSpec, cfg: &RepConfig) -> Vec<i64> {
    match cfg.family {
        Family::A { r: 0 } => job.ks(0..=4),
        _ => job.ks(-2..=4),
    }
}

fn suite_thm1(job: &JobSpec) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for cfg in pick(job, first_grid(false, &[1, 2], &[1, 2])) {
        for k in first_ks(job, &cfg) {
            out.extend(verify::verify_harmonic_claims(&cfg, job.window(k))?);
        }
    }
    Ok(out)
}

fn suite_thm2(job: &JobSpec) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for cfg in pick(job, primed_grid(false, &[1, 2], &[1, 2])) {
        for k in job.ks(0..=3) {
            out.push(verify::verify_aprime_structure(&cfg, job.window(k))?);
        }
    }
    Ok(out)
}

fn suite_thm3(job: &JobSpec) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let grid: Vec<RepConfig> = first_grid(true, &[1], &[1, 2])
        .into_iter()
        .filter(|c| matches!(c.family, Family::A { r } if r <= 1))
        .chain(primed_grid(true, &[1], &[1, 2]))
        .collect();
    for cfg in pick(job, grid) {
        for k in job.ks(0..=3) {
            if cfg.is_aprime() {
                out.push(verify::verify_aprime_structure(&cfg, job.window(k))?);
            } else {
                out.extend(verify::verify_harmonic_claims(&cfg, job.window(k))?);
            }
        }
    }
    let table = match &job.cfg {
        Some(c) if c.odd && !c.is_aprime() => vec![c.clone()],
        Some(_) => vec![],
        None => first_grid(true, &[1, 2], &[1, 2]),
    };
    for cfg in table {
        for k in job.ks(-2..=2 * cfg.n as i64 + 2) {
            if let Ok(c) = cf::check_odd_hw(&cfg, k, Reading::Repaired) {
                out.push(odd_hw_entry(job, &cfg, &c));
            }
        }
    }
    Ok(out)
}

/// Report entry for one table row; the weight comparison is its own check.
pub fn odd_hw_entry(job: &JobSpec, cfg: &RepConfig, c: &cf::OddHwCheck) -> VerificationReport {
    let mut e = job_entry(job, &format!("odd-hw-table:{}", c.row), cfg, c.k);
    let ok = c.nonzero && c.in_a_k && c.annihilated && c.harmonic;
    e.check(
        "singular-harmonic",
        Status::judge(ok, true),
        format!("nonzero={} in_A_k={} annihilated={} harmonic={}", c.nonzero, c.in_a_k, c.annihilated, c.harmonic),
    );
    e.check(
        "weight-matches-table",
        Status::judge(c.weight_matches, true),
        format!("eigenvalues {} against table {}", c.weight.as_deref().unwrap_or("none"), c.table_weight),
    );
    e
}

fn basis_entry(job: &JobSpec, cfg: &RepConfig, c: &cf::BasisCheck, d: u32) -> VerificationReport {
    let mut e = VerificationReport::new(c.family.clone(), cfg, c.k, d, 0, job.seed);
    e.check(
        "harmonic",
        Status::judge(c.not_harmonic == 0, true),
        format!("{} of {} elements are harmonic", c.emitted - c.not_harmonic, c.emitted),
    );
    e.check(
        "weight-vectors",
        Status::judge(c.not_weight_vectors == 0, true),
        format!("{} elements are not weight vectors", c.not_weight_vectors),
    );
    let bad: Vec<String> = c
        .failing_rows()
        .take(4)
        .map(|r| format!("weight {:?}: emitted {} rank {} kernel {}", r.weight, r.emitted, r.rank, r.kernel_dim))
        .collect();
    let kernel: usize = c.rows.iter().map(|r| r.kernel_dim).sum();
    e.check(
        "count-rank-kernel",
        Status::judge(bad.is_empty(), true),
        if bad.is_empty() {
            format!("{} weights, total kernel dimension {kernel}, matched with independent elements", c.rows.len())
        } else {
            bad.join("; ")
        },
    );
    e
}

fn identity_entry(job: &JobSpec, claim: &str, cfg: &RepConfig, k: i64, held: usize, failed: &[String]) -> VerificationReport {
    let mut e = VerificationReport::new(claim, cfg, k, 0, 0, job.seed);
    let detail = if failed.is_empty() {
        format!("{held} instances hold exactly")
    } else {
        format!("{} of {} fail: {}", failed.len(), held + failed.len(), failed.join("; "))
    };
    e.check("identity", Status::judge(failed.is_empty() && held > 0, true), detail);
    e
}

/// Ladder identities of the `r = 0` family on `k`.
pub fn ladder_entries(job: &JobSpec, cfg: &RepConfig, k: i64) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let (mut down_ok, mut down_bad) = (0, Vec::new());
    for t in 1..=cfg.n as i64 {
        if let Ok(id) = cf::ladder_down(cfg, k, t) {
            if id.holds() {
                down_ok += 1;
            } else {
                down_bad.push(format!("t={t}"));
            }
        }
    }
    let (mut up_ok, mut up_bad) = (0, Vec::new());
    for (l, t) in cf::f_lt_params(cfg, k) {
        if let Ok(id) = cf::ladder_up(cfg, k, l, t, Normalization::Integral, false) {
            if id.holds() {
                up_ok += 1;
            } else {
                up_bad.push(format!("l={l} t={t}"));
            }
        }
    }
    if down_ok + down_bad.len() > 0 {
        out.push(identity_entry(job, "ladder-down", cfg, k, down_ok, &down_bad));
    }
    if up_ok + up_bad.len() > 0 {
        out.push(identity_entry(job, "ladder-up", cfg, k, up_ok, &up_bad));
    }
    Ok(out)
}

/// Raising forms of `f`, `g` and the lowering and recurrence of `h` on `k`.
pub fn case3_entries(job: &JobSpec, cfg: &RepConfig, k: i64) -> Result<Vec<VerificationReport>> {
    let Family::A { r } = cfg.family else { return Ok(vec![]) };
    let mut out = Vec::new();
    let params = cf::case3_params(cfg, k, 3);
    if r + 1 == cfg.m1 {
        let (mut ok, mut bad) = (0, Vec::new());
        for &(l, p, s) in &params {
            for fam in [cf::Case3Family::F, cf::Case3Family::G] {
                let v = cf::case3(cfg, fam, l, p, s)?;
                if cf::case3_raising(cfg, fam, l, p, s)?.holds() && Analyzer::new(cfg)?.delta()?.apply(&v).is_zero() {
                    ok += 1;
                } else {
                    bad.push(format!("{fam:?} l={l} p={p} s={s}"));
                }
            }
        }
        if ok + bad.len() > 0 {
            out.push(identity_entry(job, "case3-raising", cfg, k, ok, &bad));
        }
    } else {
        let (mut ok, mut bad) = (0, Vec::new());
        for &(l, p, s) in params.iter().filter(|t| t.0 > 0) {
            let low = cf::h_lowering(cfg, l, p, s)?.holds();
            let rec = cf::h_recurrence(cfg, l, p, s, RecurrenceReading::Repaired)?.holds();
            if low && rec {
                ok += 1;
            } else {
                bad.push(format!("l={l} p={p} s={s} lowering={low} recurrence={rec}"));
            }
        }
        if ok + bad.len() > 0 {
            out.push(identity_entry(job, "h-recurrence", cfg, k, ok, &bad));
        }
    }
    Ok(out)
}

fn suite_bases(job: &JobSpec) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let wanted = |c: &RepConfig| job.cfg.as_ref().map_or(true, |j| j == c);
    for (m1, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let cfg = RepConfig::a(false, m1, n, 0)?;
        if !wanted(&cfg) {
            continue;
        }
        for k in job.ks(1..=4) {
            if (m1, n) == (2, 2) && k > 3 {
                continue;
            }
            let d = k.max(0) as u32;
            out.push(basis_entry(job, &cfg, &cf::check_basis_unswapped(&cfg, k, d, Reading::Repaired)?, d));
            out.extend(ladder_entries(job, &cfg, k)?);
        }
    }
    for (m1, n) in [(1, 1), (1, 2), (2, 1)] {
        let cfg = RepConfig::a(false, m1, n, m1)?;
        if !wanted(&cfg) {
            continue;
        }
        for k in job.ks(-2..=n as i64 + 1) {
            out.push(basis_entry(job, &cfg, &cf::check_basis_fully_swapped(&cfg, k, 6)?, 6));
        }
    }
    for n in [1, 2] {
        let cfg = RepConfig::a(false, 2, n, 1)?;
        if !wanted(&cfg) {
            continue;
        }
        for k in job.ks(-1..=2) {
            if n == 1 {
                out.push(basis_entry(job, &cfg, &cf::check_basis_partly_swapped(&cfg, k, 5)?, 5));
            }
            out.extend(case3_entries(job, &cfg, k)?);
        }
    }
    for (m1, r) in [(3, 1), (4, 1), (4, 2)] {
        let cfg = RepConfig::a(false, m1, 1, r)?;
        if !wanted(&cfg) {
            continue;
        }
        for k in job.ks(0..=2) {
            out.extend(case3_entries(job, &cfg, k)?);
        }
    }
    for (m1, n) in [(1, 2), (2, 1), (2, 2)] {
        let cfg = cf::aprime_normal(m1, n)?;
        if !wanted(&cfg) {
            continue;
        }
        for level in 0..4 {
            let c = cf::check_two_stream_level(m1, n, level)?;
            let mut e = VerificationReport::new("two-stream-split", &cfg, level, 0, 0, job.seed);
            e.check(
                "streams-split-piece",
                Status::judge(c.passed(), true),
                format!(
                    "piece {} top {} plucker {} rank {} in_piece={} seeds_harmonic={}",
                    c.piece_dim, c.top, c.plucker, c.rank, c.in_piece, c.seeds_harmonic
                ),
            );
            out.push(e);
        }
    }
    if job.cfg.is_none() {
        for (m1, n) in [(1, 1), (1, 2), (2, 1)] {
            for r in 0..=m1 {
                let cfg = RepConfig::a(true, m1, n, r)?;
                for k in -2..=2 * n as i64 + 2 {
                    if let Ok(c) = cf::check_odd_hw(&cfg, k, Reading::Repaired) {
                        out.push(odd_hw_entry(job, &cfg, &c));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn property_entry(job: &JobSpec, claim: &str, cfg: &RepConfig, o: &props::PropertyOutcome) -> VerificationReport {
    let mut e = VerificationReport::new(claim, cfg, 0, 0, 0, job.seed);
    let detail = if o.passed() {
        format!("{} identities hold exactly", o.checked)
    } else {
        o.failures.join("; ")
    };
    e.check(claim, Status::judge(o.passed() && o.checked > 0, true), detail);
    e
}

fn suite_rep_property(job: &JobSpec) -> Result<Vec<VerificationReport>> {
    let mut grid = Vec::new();
    for odd in [false, true] {
        grid.extend(first_grid(odd, &[1, 2], &[1, 2]));
        grid.extend(primed_grid(odd, &[1, 2], &[1, 2]));
    }
    let mut out = Vec::new();
    for cfg in pick(job, grid) {
        let o = props::check_rep_property(&cfg, job.samples, job.seed)?;
        out.push(property_entry(job, "homomorphism", &cfg, &o));
        let o = props::check_grading(&cfg, job.samples, job.seed)?;
        out.push(property_entry(job, "grading", &cfg, &o));
        if crate::rep::delta_eta(&cfg).is_ok() {
            let o = props::check_delta_eta_commute(&cfg, job.samples, job.seed)?;
            out.push(property_entry(job, "laplacian-commutes", &cfg, &o));
            let o = props::check_delta_eta_shift(&cfg, job.samples, job.seed)?;
            out.push(property_entry(job, "laplacian-shift", &cfg, &o));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_ids_round_trip() {
        for d in suites() {
            assert_eq!(d.id.as_str().parse::<SuiteId>().unwrap(), d.id);
        }
        assert!("thm9".parse::<SuiteId>().is_err());
    }

    #[test]
    fn validation_names_the_flag() {
        let mut job = JobSpec::new(Command::Generate);
        job.cfg = Some(RepConfig::a(false, 1, 1, 0).unwrap());
        job.generators = vec!["x1".into()];
        job.k_range = Some((1, 1));
        job.max_degree = 4;
        job.margin = 4;
        assert!(job.validate().unwrap_err().to_string().contains("--margin"));
        job.margin = 2;
        job.k_range = Some((5, 5));
        assert!(job.validate().unwrap_err().to_string().contains("--max-deg"));
    }

    #[test]
    fn dim_row_of_smallest_case() {
        let mut job = JobSpec::new(Command::Dim);
        job.cfg = Some(RepConfig::a(false, 1, 1, 0).unwrap());
        job.k_range = Some((1, 1));
        job.max_degree = 4;
        job.format = Format::Text;
        let report = run(&job).unwrap();
        assert!(report.to_text().contains("k=1, d=1, dimA=4, dimH=4"));
        assert_eq!(report.exit_code(), 0);
        let csv = report.to_csv().unwrap();
        assert!(csv.starts_with("claim_id,cfg,k,d,dimA,dimH,status\n"));
        assert!(csv.contains("dim,\"A:even:m1=1,n=1,r=0\",1,1,4,4,pass"));
    }

    #[test]
    fn json_keys_are_sorted_and_versioned() {
        let mut job = JobSpec::new(Command::HarmonicBasis);
        job.closed = Some("f_lt:even:k=2,l=0,t=0".into());
        let text = run(&job).unwrap().render().unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["status"], "pass");
        assert!(!v["repairs"].as_array().unwrap().is_empty());
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(text.find("\"command\"").unwrap() < text.find("\"version\"").unwrap());
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.json");
        write_atomic(&path, "one").unwrap();
        write_atomic(&path, "two").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
