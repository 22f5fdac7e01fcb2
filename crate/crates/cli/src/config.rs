use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use vbol_core::matrix::Matrix;
use vbol_core::scalar::ExactScalar;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("invalid config JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid index matrix: {0}")]
    Index(String),
    #[error("index matrix is singular: det M = 0")]
    SingularIndex,
    #[error("index matrix is not symmetric")]
    AsymmetricIndex,
    #[error("{name} = {value} exceeds the cap {cap}")]
    Range { name: &'static str, value: u64, cap: u64 },
    #[error("{0} must be at least 1")]
    Zero(&'static str),
    #[error("VB_DEGREE_CAP must be a positive integer, got {0:?}")]
    DegreeCap(String),
    #[error("no suite selected")]
    NoSuite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    SiegelRecovery,
    DeltaEigen,
    Cofactor,
    CenterProjection,
    JacobiMaps,
    JacobiRecovery,
    BolExtension,
    AlgebraSanity,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::SiegelRecovery,
        Suite::DeltaEigen,
        Suite::Cofactor,
        Suite::CenterProjection,
        Suite::JacobiMaps,
        Suite::JacobiRecovery,
        Suite::BolExtension,
        Suite::AlgebraSanity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SiegelRecovery => "siegel-recovery",
            Suite::DeltaEigen => "delta-eigen",
            Suite::Cofactor => "cofactor",
            Suite::CenterProjection => "center-projection",
            Suite::JacobiMaps => "jacobi-maps",
            Suite::JacobiRecovery => "jacobi-recovery",
            Suite::BolExtension => "bol-extension",
            Suite::AlgebraSanity => "algebra-sanity",
        }
    }

    pub fn uses_index(self) -> bool {
        matches!(self, Suite::JacobiMaps | Suite::JacobiRecovery | Suite::BolExtension)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

/// Config file contents; every field can be overridden by a flag.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub suite: Option<OneOrMany<Suite>>,
    pub n: Option<usize>,
    pub j: Option<usize>,
    pub r_max: Option<u32>,
    pub m_max: Option<u32>,
    pub l: Option<u32>,
    /// Row-major rational entries.
    pub index: Option<Vec<Vec<Entry>>>,
    pub symbolic_k: Option<bool>,
    pub derive: Option<bool>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(path.to_owned(), e))?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Fields set in `o` win.
    pub fn overlay(self, o: FileConfig) -> FileConfig {
        FileConfig {
            suite: o.suite.or(self.suite),
            n: o.n.or(self.n),
            j: o.j.or(self.j),
            r_max: o.r_max.or(self.r_max),
            m_max: o.m_max.or(self.m_max),
            l: o.l.or(self.l),
            index: o.index.or(self.index),
            symbolic_k: o.symbolic_k.or(self.symbolic_k),
            derive: o.derive.or(self.derive),
            threads: o.threads.or(self.threads),
            out: o.out.or(self.out),
        }
    }
}

pub const N_CAP: usize = 4;
pub const J_CAP: usize = 3;
pub const R_CAP: u32 = 4;
pub const M_CAP: u32 = 8;
pub const L_CAP: u32 = 3;

/// Validated configuration. Unset ranges fall back to per-suite defaults.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub suites: Vec<Suite>,
    pub n: Option<usize>,
    pub j: Option<usize>,
    pub r_max: Option<u32>,
    pub m_max: Option<u32>,
    pub l: Option<u32>,
    pub index: Option<Matrix>,
    pub symbolic_k: bool,
    pub derive: bool,
    pub threads: Option<usize>,
    pub out: PathBuf,
    pub degree_cap: Option<usize>,
}

fn check_range<T: Into<u64> + Copy>(name: &'static str, v: Option<T>, cap: T) -> Result<(), ConfigError> {
    if let Some(v) = v {
        let (v, cap) = (v.into(), cap.into());
        if v > cap {
            return Err(ConfigError::Range { name, value: v, cap });
        }
    }
    Ok(())
}

impl SuiteConfig {
    pub fn resolve(fc: FileConfig, degree_cap_env: Option<String>) -> Result<Self, ConfigError> {
        let mut suites = match fc.suite {
            None => return Err(ConfigError::NoSuite),
            Some(OneOrMany::One(s)) => vec![s],
            Some(OneOrMany::Many(v)) => v,
        };
        suites.sort();
        suites.dedup();
        if suites.is_empty() {
            return Err(ConfigError::NoSuite);
        }
        check_range("n", fc.n.map(|x| x as u64), N_CAP as u64)?;
        check_range("j", fc.j.map(|x| x as u64), J_CAP as u64)?;
        check_range("r-max", fc.r_max, R_CAP)?;
        check_range("m-max", fc.m_max, M_CAP)?;
        check_range("l", fc.l, L_CAP)?;
        for (name, v) in [("n", fc.n), ("j", fc.j)] {
            if v == Some(0) {
                return Err(ConfigError::Zero(name));
            }
        }
        if fc.l == Some(0) {
            return Err(ConfigError::Zero("l"));
        }
        let index = fc.index.as_ref().map(|rows| index_from_entries(rows)).transpose()?;
        if let Some(m) = &index {
            check_range("index size", Some(m.rows() as u64), J_CAP as u64)?;
            if suites.iter().any(|s| s.uses_index()) {
                if !m.is_symmetric() {
                    return Err(ConfigError::AsymmetricIndex);
                }
                if m.det().is_zero() {
                    return Err(ConfigError::SingularIndex);
                }
            }
        }
        let degree_cap = match degree_cap_env {
            None => None,
            Some(s) => match s.trim().parse::<usize>() {
                Ok(c) if c > 0 => Some(c),
                _ => return Err(ConfigError::DegreeCap(s)),
            },
        };
        Ok(SuiteConfig {
            suites,
            n: fc.n,
            j: fc.j,
            r_max: fc.r_max,
            m_max: fc.m_max,
            l: fc.l,
            index,
            symbolic_k: fc.symbolic_k.unwrap_or(false),
            derive: fc.derive.unwrap_or(false),
            threads: fc.threads,
            out: fc.out.unwrap_or_else(|| PathBuf::from("vbol-report")),
            degree_cap,
        })
    }

    /// The parameters that shape the report body.
    pub fn params(&self) -> serde_json::Value {
        serde_json::json!({
            "suites": self.suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
            "n": self.n,
            "j": self.j,
            "r_max": self.r_max,
            "m_max": self.m_max,
            "l": self.l,
            "index": self.index.as_ref().map(render_index),
            "symbolic_k": self.symbolic_k,
            "derive": self.derive,
            "degree_cap": self.degree_cap,
        })
    }
}

/// Parses "a,b;b,c" into entry rows.
pub fn parse_index_flag(s: &str) -> Result<Vec<Vec<Entry>>, ConfigError> {
    let rows: Vec<Vec<Entry>> = s
        .split(';')
        .map(|row| row.split(',').map(|e| Entry::Text(e.trim().to_string())).collect())
        .collect();
    if rows.iter().any(|r| r.iter().any(|e| matches!(e, Entry::Text(t) if t.is_empty()))) {
        return Err(ConfigError::Index(format!("empty entry in {s:?}")));
    }
    Ok(rows)
}

fn index_from_entries(rows: &[Vec<Entry>]) -> Result<Matrix, ConfigError> {
    let size = rows.len();
    if size == 0 || rows.iter().any(|r| r.len() != size) {
        return Err(ConfigError::Index("matrix must be square and nonempty".into()));
    }
    let mut out = Vec::with_capacity(size);
    for row in rows {
        let mut r = Vec::with_capacity(size);
        for e in row {
            let v = match e {
                Entry::Int(i) => ExactScalar::int(*i),
                Entry::Text(t) => ExactScalar::parse(t).map_err(|err| ConfigError::Index(format!("{t:?}: {err}")))?,
            };
            if v.as_rational().is_none() {
                return Err(ConfigError::Index(format!("entry {v} is not rational")));
            }
            r.push(v);
        }
        out.push(r);
    }
    Ok(Matrix::from_rows(&out))
}

pub fn render_index(m: &Matrix) -> String {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}
