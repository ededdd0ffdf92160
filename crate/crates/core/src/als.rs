//! Pieces shared by the two ALS estimators.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngSeed;
use crate::tensor::{ls_solve_right, solve_gram, ComplexMatrix, ComplexTensor3};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlsConfig {
    pub t_max: usize,
    /// Stop once `|cost_{t−1} − cost_t| ≤ rel_tol · cost_{t−1}`; 0 runs all
    /// `t_max` sweeps unless the cost stalls exactly.
    pub rel_tol: f64,
    pub init_seed: RngSeed,
}

impl Default for AlsConfig {
    fn default() -> Self {
        Self {
            t_max: 100,
            rel_tol: 1e-8,
            init_seed: RngSeed::new(0, 0),
        }
    }
}

impl AlsConfig {
    pub fn validate(&self) -> Result<()> {
        if self.t_max == 0 {
            return Err(Error::Precondition("t_max must be at least 1".into()));
        }
        if !(self.rel_tol >= 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::Precondition(format!(
                "rel_tol = {} must be finite and >= 0",
                self.rel_tol
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    MaxIters,
    TolReached,
}

#[derive(Clone, Debug)]
pub struct AlsResult<C> {
    pub estimates: C,
    /// Squared Frobenius residual after each full sweep.
    pub cost_history: Vec<f64>,
    pub iterations: usize,
    pub terminated_by: Termination,
    /// Set when the frame count is below the identifiability bound; the
    /// estimates are then minimum-norm solutions and need not be unique.
    pub underdetermined: bool,
}

/// Residual energy, relative to the data, below which a fit counts as exact.
/// Without it noiseless runs would never stop, because the cost keeps
/// jittering at rounding level.
const EXACT_FIT: f64 = 1e-26;

/// Tracks the cost sequence and decides when to stop.
pub(crate) struct Stopper {
    rel_tol: f64,
    floor: f64,
    pub history: Vec<f64>,
}

impl Stopper {
    /// `data_energy` is `‖𝒴‖²_F`, used only for the exact-fit test.
    pub fn new(cfg: &AlsConfig, data_energy: f64) -> Self {
        Self {
            rel_tol: cfg.rel_tol,
            floor: if cfg.rel_tol > 0.0 {
                EXACT_FIT * data_energy
            } else {
                -1.0
            },
            history: Vec::with_capacity(cfg.t_max),
        }
    }

    /// Records a cost and reports whether the tolerance test fired.
    pub fn push(&mut self, cost: f64) -> bool {
        let done = cost <= self.floor
            || match self.history.last() {
                Some(&prev) => (prev - cost).abs() <= self.rel_tol * prev,
                None => false,
            };
        self.history.push(cost);
        done
    }
}

/// `b·a⁺` through the normal equations `(a·aᴴ)·xᴴ = a·bᴴ`, falling back to
/// the SVD route when `a·aᴴ` is not safely positive definite.
pub(crate) fn right_ls(b: &ComplexMatrix, a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let gram = a.matmul_adjoint(a)?;
    let rhs = a.matmul_adjoint(b)?;
    match solve_gram(&gram, &rhs)? {
        Some(xh) => Ok(xh.adjoint()),
        None => ls_solve_right(b, a),
    }
}

pub(crate) fn check_measurements(t: &ComplexTensor3) -> Result<()> {
    if t.is_finite() {
        Ok(())
    } else {
        Err(Error::Contract("measurement tensor contains non-finite entries".into()))
    }
}

/// `‖y − a·b‖²_F`.
pub(crate) fn residual(y: &ComplexMatrix, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let fit = a.matmul(b)?;
    Ok(y.as_slice()
        .iter()
        .zip(fit.as_slice())
        .map(|(p, q)| (p - q).norm_sqr())
        .sum())
}
