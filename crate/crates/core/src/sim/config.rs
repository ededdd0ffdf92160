//! Experiment configuration (TOML, versioned).
//!
//! ```toml
//! schema_version = 1
//! scenarios = ["dris", "sris"]
//! snr_grid_db = [0.0, 10.0, 20.0, 30.0]   # `inf` selects noiseless data
//! trials = 500
//! output_path = "nmse.csv"
//!
//! [dims]
//! m_t = 2
//! m_r = 8
//! n = 40
//! splits = [[10, 30], [30, 10]]
//! # k_pilots = 2          (defaults to m_t)
//! # n1_sweep = [2, 38]    (overhead table only: every N1 in the range, N2 = n - N1)
//!
//! [training]
//! mode = "fixed"           # or "minimum"
//! i_frames = 40
//! j_frames = 40
//!
//! [als]
//! t_max = 100
//! rel_tol = 1e-8
//!
//! [seed]
//! master = 1
//! stream = 0
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::als::AlsConfig;
use crate::error::{Error, Result};
use crate::metrics::Scenario;
use crate::rng::RngSeed;

pub const SCHEMA_VERSION: u32 = 1;

/// Upper bound on any single size field, to keep hostile configs from
/// requesting absurd allocations.
const MAX_DIM: usize = 4096;
const MAX_TRIALS: usize = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum OverheadMode {
    /// `I = I_min` per split and `J = J_min`.
    Minimum,
    Fixed {
        i_frames: usize,
        j_frames: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    pub scenarios: Vec<Scenario>,
    pub m_t: usize,
    pub m_r: usize,
    pub n: usize,
    pub k_pilots: usize,
    pub splits: Vec<(usize, usize)>,
    pub n1_sweep: Option<(usize, usize)>,
    pub snr_grid_db: Vec<f64>,
    pub trials: usize,
    pub als: AlsConfig,
    pub overhead_mode: OverheadMode,
    pub output_path: Option<PathBuf>,
    pub master_seed: RngSeed,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    schema_version: u32,
    scenarios: Option<Vec<Scenario>>,
    snr_grid_db: Option<Vec<f64>>,
    trials: Option<usize>,
    output_path: Option<PathBuf>,
    dims: RawDims,
    training: Option<OverheadMode>,
    als: Option<RawAls>,
    seed: Option<RawSeed>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDims {
    m_t: usize,
    m_r: usize,
    n: usize,
    k_pilots: Option<usize>,
    splits: Option<Vec<(usize, usize)>>,
    n1_sweep: Option<(usize, usize)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAls {
    t_max: Option<usize>,
    rel_tol: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeed {
    master: u64,
    stream: Option<u64>,
}

fn default_snr_grid() -> Vec<f64> {
    (-1..=6).map(|k| 5.0 * k as f64).collect()
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        if raw.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                raw.schema_version
            )));
        }
        let d = raw.dims;
        let als_default = AlsConfig::default();
        let als = raw.als.map_or(als_default, |a| AlsConfig {
            t_max: a.t_max.unwrap_or(als_default.t_max),
            rel_tol: a.rel_tol.unwrap_or(als_default.rel_tol),
            init_seed: als_default.init_seed,
        });
        let splits = match (d.splits, d.n1_sweep) {
            (Some(s), _) => s,
            (None, Some(_)) => Vec::new(),
            (None, None) => return Err(Error::Config("dims needs `splits` or `n1_sweep`".into())),
        };
        let cfg = Self {
            schema_version: raw.schema_version,
            scenarios: raw.scenarios.unwrap_or_else(|| vec![Scenario::Dris, Scenario::Sris]),
            m_t: d.m_t,
            m_r: d.m_r,
            n: d.n,
            k_pilots: d.k_pilots.unwrap_or(d.m_t),
            splits,
            n1_sweep: d.n1_sweep,
            snr_grid_db: raw.snr_grid_db.unwrap_or_else(default_snr_grid),
            trials: raw.trials.unwrap_or(500),
            als,
            overhead_mode: raw.training.unwrap_or(OverheadMode::Minimum),
            output_path: raw.output_path,
            master_seed: raw
                .seed
                .map_or(RngSeed::new(0, 0), |s| RngSeed::new(s.master, s.stream.unwrap_or(0))),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Format {
                path: path.to_owned(),
                message: msg,
            },
            other => other,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.scenarios.is_empty() {
            return bad("scenarios must not be empty".into());
        }
        for (name, v) in [
            ("m_t", self.m_t),
            ("m_r", self.m_r),
            ("n", self.n),
            ("k_pilots", self.k_pilots),
        ] {
            if v == 0 || v > MAX_DIM {
                return bad(format!("{name} = {v} must lie in 1..={MAX_DIM}"));
            }
        }
        if self.k_pilots < self.m_t {
            return bad(format!("k_pilots = {} is below m_t = {}", self.k_pilots, self.m_t));
        }
        if self.trials == 0 || self.trials > MAX_TRIALS {
            return bad(format!("trials = {} must lie in 1..={MAX_TRIALS}", self.trials));
        }
        if self.snr_grid_db.is_empty() {
            return bad("snr_grid_db must not be empty".into());
        }
        if self.snr_grid_db.iter().any(|s| s.is_nan() || *s == f64::NEG_INFINITY) {
            return bad("snr_grid_db entries must be numbers or +inf".into());
        }
        self.als.validate().map_err(|e| Error::Config(e.to_string()))?;
        if self.als.t_max > 1_000_000 {
            return bad("als.t_max is unreasonably large".into());
        }
        let compare = self.scenarios.contains(&Scenario::Sris);
        for &(n1, n2) in &self.splits {
            if n1 == 0 || n2 == 0 || n1 > MAX_DIM || n2 > MAX_DIM {
                return bad(format!("split [{n1}, {n2}] needs both sizes in 1..={MAX_DIM}"));
            }
            if compare && n1 + n2 != self.n {
                return bad(format!("split [{n1}, {n2}] does not add up to n = {}", self.n));
            }
        }
        if let Some((lo, hi)) = self.n1_sweep {
            if lo == 0 || lo > hi || hi >= self.n {
                return bad(format!(
                    "n1_sweep [{lo}, {hi}] must satisfy 1 <= lo <= hi < n = {}",
                    self.n
                ));
            }
        }
        if let OverheadMode::Fixed { i_frames, j_frames } = self.overhead_mode {
            if i_frames == 0 || j_frames == 0 || i_frames > MAX_DIM * 4 || j_frames > MAX_DIM * 4 {
                return bad("fixed training needs positive, bounded i_frames and j_frames".into());
            }
        }
        Ok(())
    }

    /// `(N₁, N₂)` pairs used by the overhead table: the sweep range when
    /// given, otherwise the configured splits.
    pub fn overhead_splits(&self) -> Vec<(usize, usize)> {
        match self.n1_sweep {
            Some((lo, hi)) => (lo..=hi).map(|n1| (n1, self.n - n1)).collect(),
            None => self.splits.clone(),
        }
    }
}
