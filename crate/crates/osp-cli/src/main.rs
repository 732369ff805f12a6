use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use osp_core::report::{self, Command, Format, JobSpec, SuiteId};
use osp_core::rep::RepConfig;

#[derive(Parser)]
#[command(name = "osp", version, about = "Exact slice analysis of polynomial osp(m|2n) representations")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dimensions of A_k and H_k per degree.
    Dim(Common),
    /// Basis of H_k on a slice, or a closed family with --closed.
    HarmonicBasis {
        #[command(flatten)]
        common: Common,
        /// Closed family such as f_lt:even:k=3,l=1,t=0.
        #[arg(long)]
        closed: Option<String>,
    },
    /// Vectors annihilated by the positive part.
    Singular {
        #[command(flatten)]
        common: Common,
        /// Search inside H_k only.
        #[arg(long)]
        harmonic: bool,
    },
    /// Submodule generated by polynomials, up to degree D - margin.
    Generate {
        #[command(flatten)]
        common: Common,
        /// Generator such as "x2 - x1 t1 t2"; repeatable.
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
    },
    /// Runs a verification suite.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        suite: String,
    },
    /// Lists the verification suites.
    Suites,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "A")]
    A,
    #[value(name = "Aprime")]
    Aprime,
}

#[derive(Args)]
struct Common {
    /// Representation family; omitted with verify to run the default grid.
    #[arg(long)]
    family: Option<FamilyArg>,
    /// Odd m = 2 m1 + 1.
    #[arg(long)]
    odd: bool,
    #[arg(long)]
    m1: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Number of swapped bosonic variables of family A.
    #[arg(long)]
    r: Option<usize>,
    /// Swapped variables of family Aprime, comma separated.
    #[arg(long = "T", value_delimiter = ',')]
    t: Vec<usize>,
    /// Degree k, or an inclusive range lo..hi.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<String>,
    /// Slice degree bound D.
    #[arg(long = "max-deg", default_value_t = 10)]
    max_deg: u32,
    #[arg(long, default_value_t = 4)]
    margin: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random monomials per identity in rep-property.
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value = "json")]
    format: String,
    /// Report path; defaults to $OSP_REPORT_DIR/<name> when that is set.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_k(s: &str) -> Result<(i64, i64)> {
    let num = |t: &str| t.trim().parse::<i64>().with_context(|| format!("--k: cannot parse {s}"));
    match s.split_once("..") {
        Some((lo, hi)) => Ok((num(lo)?, num(hi)?)),
        None => {
            let k = num(s)?;
            Ok((k, k))
        }
    }
}

impl Common {
    fn config(&self) -> Result<Option<RepConfig>> {
        let Some(family) = self.family else {
            if self.m1.is_some() || self.n.is_some() || self.r.is_some() || !self.t.is_empty() {
                bail!("--family is required with --m1, --n, --r or --T");
            }
            return Ok(None);
        };
        let m1 = self.m1.ok_or_else(|| anyhow!("--m1 is required with --family"))?;
        let n = self.n.ok_or_else(|| anyhow!("--n is required with --family"))?;
        let cfg = match family {
            FamilyArg::A => {
                if !self.t.is_empty() {
                    bail!("--T applies to --family Aprime");
                }
                RepConfig::a(self.odd, m1, n, self.r.unwrap_or(0))
            }
            FamilyArg::Aprime => {
                if self.r.is_some() {
                    bail!("--r applies to --family A");
                }
                RepConfig::aprime(self.odd, m1, n, &self.t)
            }
        };
        Ok(Some(cfg.map_err(|e| anyhow!("--family: {e}"))?))
    }

    fn job(&self, command: Command) -> Result<JobSpec> {
        let mut job = JobSpec::new(command);
        job.cfg = self.config()?;
        job.k_range = self.k.as_deref().map(parse_k).transpose()?;
        job.max_degree = self.max_deg;
        job.margin = self.margin;
        job.seed = self.seed;
        job.samples = self.samples;
        job.format = self.format.parse::<Format>()?;
        job.output = self.output.clone();
        Ok(job)
    }
}

fn build(cmd: Cmd) -> Result<Option<JobSpec>> {
    let job = match cmd {
        Cmd::Dim(c) => c.job(Command::Dim)?,
        Cmd::HarmonicBasis { common, closed } => {
            let mut job = common.job(Command::HarmonicBasis)?;
            job.closed = closed;
            job
        }
        Cmd::Singular { common, harmonic } => {
            let mut job = common.job(Command::Singular)?;
            job.harmonic_only = harmonic;
            job
        }
        Cmd::Generate { common, gens } => {
            let mut job = common.job(Command::Generate)?;
            job.generators = gens;
            job
        }
        Cmd::Verify { common, suite } => {
            let mut job = common.job(Command::Verify)?;
            job.suite = Some(suite.parse::<SuiteId>()?);
            job
        }
        Cmd::Suites => {
            for s in report::suites() {
                println!("{}\n  covers: {}\n  grid: {}", s.id, s.covers, s.grid);
            }
            return Ok(None);
        }
    };
    job.validate()?;
    Ok(Some(job))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let job = match build(cli.command) {
        Ok(Some(job)) => job,
        Ok(None) => return ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let result = report::run(&job).and_then(|r| Ok((r.render()?, r)));
    let (text, rep) = match result {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match report::output_path(&rep) {
        Some(path) => {
            if let Err(e) = report::write_atomic(&path, &text) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            eprintln!("{}: {}", rep.status(), path.display());
        }
        None => print!("{text}"),
    }
    ExitCode::from(rep.exit_code() as u8)
}
