//! Text identifiers of closed families, such as `f_lt:even:m1=1,n=2,k=3,l=1,t=0`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::*;

/// A closed family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClosedFamily {
    FLtEven,
    FLtOdd,
    BasisUnswapped,
    HKls,
    BasisFullySwapped,
    BasisPartlySwapped,
    FLps,
    GLps,
    HLps,
    GPq,
    OddHwRow,
    EtaBTq,
}

impl ClosedFamily {
    pub const ALL: [ClosedFamily; 12] = [
        ClosedFamily::FLtEven,
        ClosedFamily::FLtOdd,
        ClosedFamily::BasisUnswapped,
        ClosedFamily::HKls,
        ClosedFamily::BasisFullySwapped,
        ClosedFamily::BasisPartlySwapped,
        ClosedFamily::FLps,
        ClosedFamily::GLps,
        ClosedFamily::HLps,
        ClosedFamily::GPq,
        ClosedFamily::OddHwRow,
        ClosedFamily::EtaBTq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosedFamily::FLtEven => "f_lt:even",
            ClosedFamily::FLtOdd => "f_lt:odd",
            ClosedFamily::BasisUnswapped => "basis_thm22",
            ClosedFamily::HKls => "h_kls",
            ClosedFamily::BasisFullySwapped => "basis_thm23",
            ClosedFamily::BasisPartlySwapped => "basis_thm24",
            ClosedFamily::FLps => "f_lps",
            ClosedFamily::GLps => "g_lps",
            ClosedFamily::HLps => "h_lps",
            ClosedFamily::GPq => "g_pq",
            ClosedFamily::OddHwRow => "hw41_row",
            ClosedFamily::EtaBTq => "eta_B_tq",
        }
    }

    /// Parameters the family reads, with defaults where one exists.
    fn params(self) -> &'static [(&'static str, Option<i64>)] {
        match self {
            ClosedFamily::FLtEven | ClosedFamily::FLtOdd => {
                &[("m1", Some(1)), ("n", Some(1)), ("k", None), ("l", None), ("t", None)]
            }
            ClosedFamily::BasisUnswapped => &[("m1", Some(1)), ("n", Some(1)), ("k", None)],
            ClosedFamily::HKls => &[("m1", Some(1)), ("n", Some(1))],
            ClosedFamily::BasisFullySwapped => &[("m1", Some(1)), ("n", Some(1)), ("k", None), ("d", Some(4))],
            ClosedFamily::BasisPartlySwapped => &[("m1", Some(2)), ("n", Some(1)), ("r", Some(1)), ("k", None), ("d", Some(4))],
            ClosedFamily::FLps | ClosedFamily::GLps => {
                &[("m1", Some(2)), ("n", Some(1)), ("l", None), ("p", None), ("s", None)]
            }
            ClosedFamily::HLps => &[("m1", Some(3)), ("n", Some(1)), ("r", Some(1)), ("l", None), ("p", None), ("s", None)],
            ClosedFamily::GPq => &[("m1", Some(1)), ("n", Some(1)), ("p", None), ("q", None)],
            ClosedFamily::OddHwRow => &[("m1", Some(1)), ("n", Some(1)), ("r", Some(0)), ("k", None)],
            ClosedFamily::EtaBTq => &[("m1", Some(1)), ("n", Some(2)), ("t", None), ("q", None)],
        }
    }
}

/// A family with its parameters. Scalars are integers; the index tuple of
/// `h_kls` takes `/`-separated lists `kt`, `kij`, `lt`, `lij` and `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFamilyId {
    pub family: ClosedFamily,
    pub params: BTreeMap<String, Vec<i64>>,
}

impl FromStr for ClosedFamilyId {
    type Err = OspError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| OspError::Parse(format!("{s}: {msg}"));
        let (family, rest) = ClosedFamily::ALL
            .iter()
            .filter_map(|f| s.strip_prefix(f.name()).map(|rest| (*f, rest)))
            .find(|(_, rest)| rest.is_empty() || rest.starts_with(':'))
            .ok_or_else(|| bad("unknown family".into()))?;
        let mut params = BTreeMap::new();
        let body = rest.strip_prefix(':').unwrap_or(rest);
        for item in body.split(',').filter(|x| !x.is_empty()) {
            let (key, val) = item.split_once('=').ok_or_else(|| bad(format!("expected key=value, got {item}")))?;
            let vals = val
                .split('/')
                .map(|v| v.trim().parse::<i64>().map_err(|_| bad(format!("bad value for {key}"))))
                .collect::<Result<Vec<_>>>()?;
            let known = family.params().iter().any(|(p, _)| *p == key)
                || (family == ClosedFamily::HKls && ["kt", "kij", "lt", "lij", "s"].contains(&key));
            if !known {
                return Err(bad(format!("{} takes no parameter {key}", family.name())));
            }
            params.insert(key.trim().to_string(), vals);
        }
        for (p, default) in family.params() {
            if !params.contains_key(*p) {
                match default {
                    Some(d) => {
                        params.insert(p.to_string(), vec![*d]);
                    }
                    None => return Err(bad(format!("missing parameter {p}"))),
                }
            }
        }
        Ok(Self { family, params })
    }
}

impl fmt::Display for ClosedFamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={}", v.iter().map(i64::to_string).collect::<Vec<_>>().join("/")))
            .collect();
        write!(f, "{}:{}", self.family.name(), ps.join(","))
    }
}

impl ClosedFamilyId {
    fn get(&self, key: &str) -> i64 {
        self.params.get(key).and_then(|v| v.first().copied()).unwrap_or(0)
    }

    fn size(&self, key: &str) -> Result<usize> {
        usize::try_from(self.get(key)).map_err(|_| out_of_range(format!("{key} must be nonnegative")))
    }

    fn bits(&self, key: &str, len: usize) -> Result<Vec<u32>> {
        let v = self.params.get(key).cloned().unwrap_or_else(|| vec![0; len]);
        if v.len() != len || v.iter().any(|&x| x < 0) {
            return Err(out_of_range(format!("{key} needs {len} nonnegative entries")));
        }
        Ok(v.into_iter().map(|x| x as u32).collect())
    }

    /// The configuration the family lives on.
    pub fn config(&self) -> Result<RepConfig> {
        let (m1, n) = (self.size("m1")?, self.size("n")?);
        match self.family {
            ClosedFamily::FLtEven | ClosedFamily::BasisUnswapped => RepConfig::a(false, m1, n, 0),
            ClosedFamily::FLtOdd => RepConfig::a(true, m1, n, 0),
            ClosedFamily::HKls | ClosedFamily::BasisFullySwapped => RepConfig::a(false, m1, n, m1),
            ClosedFamily::BasisPartlySwapped | ClosedFamily::HLps => RepConfig::a(false, m1, n, self.size("r")?),
            ClosedFamily::FLps | ClosedFamily::GLps => RepConfig::a(false, m1, n, m1.saturating_sub(1)),
            ClosedFamily::GPq => RepConfig::a(true, m1, n, m1),
            ClosedFamily::OddHwRow => RepConfig::a(true, m1, n, self.size("r")?),
            ClosedFamily::EtaBTq => aprime_normal(m1, n),
        }
    }

    /// Evaluates the family; bases give one polynomial per member.
    pub fn evaluate(&self) -> Result<Vec<Polynomial>> {
        let cfg = self.config()?;
        let g = |k: &str| self.get(k);
        let one = |p: Polynomial| Ok(vec![p]);
        match self.family {
            ClosedFamily::FLtEven | ClosedFamily::FLtOdd => {
                one(f_lt(&cfg, g("k"), g("l"), g("t"), Normalization::Integral)?)
            }
            ClosedFamily::BasisUnswapped => {
                Ok(basis_unswapped(&cfg, g("k"), Reading::Repaired)?.into_iter().map(|(_, p)| p).collect())
            }
            ClosedFamily::HKls => {
                let (m1, n) = (cfg.m1, cfg.n);
                let mut idx = IndexTupleI::zero(m1, n);
                idx.kt = self.bits("kt", idx.kt.len())?;
                idx.kij = self.bits("kij", idx.kij.len())?;
                idx.lt = self.bits("lt", idx.lt.len())?;
                idx.lij = self.bits("lij", idx.lij.len())?;
                idx.s = self.bits("s", idx.s.len())?;
                one(h_kls(cfg.signature(), &idx)?)
            }
            ClosedFamily::BasisFullySwapped => {
                Ok(basis_fully_swapped(&cfg, g("k"), self.size("d")? as u32)?.into_iter().map(|(_, p)| p).collect())
            }
            ClosedFamily::BasisPartlySwapped => {
                Ok(basis_partly_swapped(&cfg, g("k"), self.size("d")? as u32)?.into_iter().map(|(_, p)| p).collect())
            }
            ClosedFamily::FLps => one(case3(&cfg, Case3Family::F, g("l"), g("p"), g("s"))?),
            ClosedFamily::GLps => one(case3(&cfg, Case3Family::G, g("l"), g("p"), g("s"))?),
            ClosedFamily::HLps => one(case3(&cfg, Case3Family::H, g("l"), g("p"), g("s"))?),
            ClosedFamily::GPq => one(g_pq(&cfg, g("p"), g("q"))?),
            ClosedFamily::OddHwRow => one(odd_hw_vector(&cfg, g("k"), Reading::Repaired)?.vector),
            ClosedFamily::EtaBTq => {
                let (t, q_) = (g("t"), g("q"));
                Ok(two_stream_level(cfg.m1, cfg.n, t + q_)?
                    .into_iter()
                    .filter(|e| e.t == t && e.q == q_)
                    .map(|e| e.vector)
                    .collect())
            }
        }
    }
}
