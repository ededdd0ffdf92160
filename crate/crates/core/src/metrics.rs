//! Error metrics, SNR measurement, complexity figures and Monte-Carlo
//! aggregation.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::channel::SystemDims;
use crate::error::{ensure_dims, Error, Result};
use crate::rng::RngSeed;
use crate::tensor::{ComplexMatrix, ComplexTensor3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Dris,
    Sris,
}

impl Scenario {
    pub fn as_str(self) -> &'static str {
        match self {
            Scenario::Dris => "dris",
            Scenario::Sris => "sris",
        }
    }
}

impl std::str::FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dris" => Ok(Scenario::Dris),
            "sris" => Ok(Scenario::Sris),
            _ => Err(Error::Config(format!("unknown scenario {s:?}"))),
        }
    }
}

/// Squared error and reference energy of one estimate; their ratio is the
/// per-trial NMSE.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorEnergy {
    pub err: f64,
    pub reference: f64,
}

impl ErrorEnergy {
    pub fn ratio(&self) -> f64 {
        self.err / self.reference
    }
}

pub fn error_energy(true_eff: &ComplexMatrix, est_eff: &ComplexMatrix) -> Result<ErrorEnergy> {
    ensure_dims!(
        true_eff.shape() == est_eff.shape(),
        "effective channels {:?} vs {:?}",
        true_eff.shape(),
        est_eff.shape()
    );
    let reference = true_eff.frobenius_norm_sqr();
    if !(reference > 0.0) {
        return Err(Error::Undefined("NMSE against a zero channel".into()));
    }
    let err = true_eff
        .as_slice()
        .iter()
        .zip(est_eff.as_slice())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum();
    Ok(ErrorEnergy { err, reference })
}

/// `‖H − Ĥ‖²_F / ‖H‖²_F` for one trial.
pub fn nmse(true_eff: &ComplexMatrix, est_eff: &ComplexMatrix) -> Result<f64> {
    Ok(error_energy(true_eff, est_eff)?.ratio())
}

/// `10·log10(‖signal‖²/‖noise‖²)`; a zero noise tensor gives `+∞`.
pub fn empirical_snr(signal: &ComplexTensor3, noise: &ComplexTensor3) -> Result<f64> {
    ensure_dims!(
        signal.dims() == noise.dims(),
        "signal {:?} vs noise {:?}",
        signal.dims(),
        noise.dims()
    );
    let pn = noise.frobenius_norm_sqr();
    if pn == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (signal.frobenius_norm_sqr() / pn).log10())
}

/// Leading-order operation count: `t_max·(N₂³ + N₁³ + (N₁N₂)³)` for D-RIS and
/// `t_max·2N³` for S-RIS.
pub fn flop_estimate(scenario: Scenario, dims: &SystemDims, t_max: usize) -> f64 {
    let t = t_max as f64;
    match scenario {
        Scenario::Dris => {
            let (n1, n2) = (dims.n1 as f64, dims.n2 as f64);
            t * (n2.powi(3) + n1.powi(3) + (n1 * n2).powi(3))
        }
        Scenario::Sris => t * 2.0 * (dims.n as f64).powi(3),
    }
}

/// Outcome of one Monte-Carlo trial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub scenario: Scenario,
    pub dims: SystemDims,
    pub snr_db: f64,
    pub trial_index: usize,
    pub nmse: f64,
    /// `‖H_e − Ĥ_e‖²_F`
    pub err_energy: f64,
    /// `‖H_e‖²_F`
    pub ref_energy: f64,
    pub iterations: usize,
    pub wall_time: f64,
    pub seed: RngSeed,
}

/// Summary of a group of trials.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Aggregate {
    pub trials: usize,
    /// Mean error energy over mean reference energy.
    pub nmse_paper: f64,
    /// Mean of per-trial ratios.
    pub nmse_mean: f64,
    /// Sample standard deviation of per-trial ratios.
    pub nmse_std: f64,
    pub iters_mean: f64,
    pub wall_ms: f64,
}

pub fn aggregate(records: &[TrialRecord]) -> Result<Aggregate> {
    if records.is_empty() {
        return Err(Error::Precondition("cannot aggregate zero trials".into()));
    }
    let n = records.len() as f64;
    let err: f64 = records.iter().map(|r| r.err_energy).sum();
    let reference: f64 = records.iter().map(|r| r.ref_energy).sum();
    let mean = records.iter().map(|r| r.nmse).sum::<f64>() / n;
    let var = if records.len() > 1 {
        records.iter().map(|r| (r.nmse - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    Ok(Aggregate {
        trials: records.len(),
        nmse_paper: err / reference,
        nmse_mean: mean,
        nmse_std: var.sqrt(),
        iters_mean: records.iter().map(|r| r.iterations as f64).sum::<f64>() / n,
        wall_ms: records.iter().map(|r| r.wall_time).sum::<f64>() * 1e3,
    })
}

/// Percentile bootstrap interval for `10·log10(NMSE_a / NMSE_b)`, with the
/// aggregate NMSE (mean error over mean reference) as the statistic and the
/// two groups resampled independently.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BootstrapInterval {
    pub point_db: f64,
    pub low_db: f64,
    pub high_db: f64,
}

impl BootstrapInterval {
    /// Group `a` is below group `b` with the requested confidence.
    pub fn a_below_b(&self) -> bool {
        self.high_db < 0.0
    }
}

pub fn bootstrap_ratio_db(
    a: &[ErrorEnergy],
    b: &[ErrorEnergy],
    confidence: f64,
    resamples: usize,
    seed: RngSeed,
) -> Result<BootstrapInterval> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Precondition("bootstrap needs two nonempty groups".into()));
    }
    if !(confidence > 0.0 && confidence < 1.0) || resamples == 0 {
        return Err(Error::Precondition("bootstrap confidence must lie in (0, 1)".into()));
    }
    fn stat(x: &[ErrorEnergy]) -> f64 {
        let (e, r) = x.iter().fold((0.0, 0.0), |(e, r), v| (e + v.err, r + v.reference));
        e / r
    }
    fn resample<R: Rng>(x: &[ErrorEnergy], rng: &mut R) -> f64 {
        let (mut e, mut r) = (0.0, 0.0);
        for _ in 0..x.len() {
            let v = x[rng.random_range(0..x.len())];
            e += v.err;
            r += v.reference;
        }
        e / r
    }
    let mut rng = seed.rng();
    let mut draws: Vec<f64> = (0..resamples)
        .map(|_| 10.0 * (resample(a, &mut rng) / resample(b, &mut rng)).log10())
        .collect();
    draws.sort_by(f64::total_cmp);
    let tail = (1.0 - confidence) / 2.0;
    let pick = |q: f64| draws[((q * (resamples - 1) as f64).round() as usize).min(resamples - 1)];
    Ok(BootstrapInterval {
        point_db: 10.0 * (stat(a) / stat(b)).log10(),
        low_db: pick(tail),
        high_db: pick(1.0 - tail),
    })
}
