//! DFT-based training design, identifiability bounds and coefficient counts.

use std::f64::consts::PI;

use crate::channel::SystemDims;
use crate::error::{Error, Result};
use crate::tensor::{khatri_rao, ComplexMatrix};
use crate::C64;

/// Reflection patterns and pilots for one D-RIS (and optionally S-RIS) run.
#[derive(Clone, Debug, PartialEq)]
pub struct TrainingSet {
    /// RIS-1 patterns, `N₁ × I`.
    pub psi: ComplexMatrix,
    /// RIS-2 patterns, `N₂ × I`.
    pub phi: ComplexMatrix,
    /// Pilot matrix, `M_T × K`, orthonormal rows.
    pub f: ComplexMatrix,
    /// S-RIS patterns, `N × J`.
    pub omega: Option<ComplexMatrix>,
}

impl TrainingSet {
    pub fn frames(&self) -> usize {
        self.psi.cols()
    }

    /// `Υ = Ψ ⋄ Φ`, the `N₁N₂ × I` matrix whose column `i` is `ψ_i ⊗ φ_i`.
    pub fn upsilon(&self) -> Result<ComplexMatrix> {
        khatri_rao(&self.psi, &self.phi)
    }
}

/// Normalised `k × k` DFT matrix, entry `(m, n) = exp(−2πi·mn/k)/√k`.
pub fn dft_matrix(k: usize) -> ComplexMatrix {
    let s = 1.0 / (k as f64).sqrt();
    ComplexMatrix::from_fn(k, k, |m, n| {
        // reduce the exponent first so large k keep full accuracy
        let e = ((m as u64 * n as u64) % k as u64) as f64;
        C64::from_polar(s, -2.0 * PI * e / k as f64)
    })
}

/// Builds `Ψ`, `Φ` and `F` for `dims.i_frames` frames.
///
/// `Ψ` cycles through the columns of `W_{N₁}` while `Φ` holds each column of
/// `W_{N₂}` for `⌈I/N₂⌉` consecutive frames, so every frame sees a distinct
/// pair and `Υ` has orthonormal columns.
pub fn build_dris_training(dims: &SystemDims) -> Result<TrainingSet> {
    dims.validate()?;
    let (n1, n2, i) = (dims.n1, dims.n2, dims.i_frames);
    if i as u64 > n1 as u64 * n2 as u64 {
        return Err(Error::Unsupported(format!(
            "I = {i} exceeds N1*N2 = {}; the DFT design needs I <= N1*N2",
            n1 * n2
        )));
    }
    let w1 = dft_matrix(n1);
    let w2 = dft_matrix(n2);
    let hold = i.div_ceil(n2);
    let psi = ComplexMatrix::from_fn(n1, i, |r, c| w1[(r, c % n1)]);
    let phi = ComplexMatrix::from_fn(n2, i, |r, c| w2[(r, c / hold)]);
    Ok(TrainingSet {
        psi,
        phi,
        f: pilot_matrix(dims.m_t, dims.k_pilots)?,
        omega: None,
    })
}

/// `Ω`: the first `J` columns of `W_N`.
pub fn build_sris_training(dims: &SystemDims) -> Result<ComplexMatrix> {
    dims.validate()?;
    if dims.j_frames > dims.n {
        return Err(Error::Unsupported(format!(
            "J = {} exceeds N = {}; the DFT design needs J <= N",
            dims.j_frames, dims.n
        )));
    }
    Ok(dft_matrix(dims.n).leading_cols(dims.j_frames))
}

/// First `m_t` rows of `W_K`, rescaled so that `F·Fᴴ = I`.
pub fn pilot_matrix(m_t: usize, k: usize) -> Result<ComplexMatrix> {
    if k < m_t {
        return Err(Error::Precondition(format!(
            "K = {k} pilots cannot be row-orthonormal for M_T = {m_t}"
        )));
    }
    // rows of W_K have norm 1 already, so no rescaling is needed
    Ok(dft_matrix(k).leading_rows(m_t))
}

/// Smallest `I` for which the three D-RIS least-squares problems are
/// well posed: `max(⌈N₂/r_T⌉, ⌈N₁/r_R⌉, ⌈N₁N₂/(r_T·r_R)⌉)` with
/// `r_T = min(M_T, N₁)` and `r_R = min(M_R, N₂)`.
///
/// `r_T` and `r_R` are the ranks of `H_T` and `H_R`. Each frame adds at most
/// `r_T` independent columns to `Z_R`, `r_R` to `Z_T` and `r_T·r_R` rows to
/// `Z_S`, so counting `M_T` and `M_R` instead would undershoot whenever an
/// array is larger than the surface it faces. With `M_T ≤ N₁` and `M_R ≤ N₂`
/// this is the familiar `max(⌈N₂/M_T⌉, ⌈N₁/M_R⌉, ⌈N₁N₂/(M_R·M_T)⌉)`.
pub fn min_training_dris(dims: &SystemDims) -> u64 {
    dris_bound(dims.m_t, dims.m_r, dims.n1, dims.n2)
}

pub(crate) fn dris_bound(m_t: usize, m_r: usize, n1: usize, n2: usize) -> u64 {
    let (n1, n2) = (n1 as u64, n2 as u64);
    let r_t = (m_t as u64).min(n1);
    let r_r = (m_r as u64).min(n2);
    n2.div_ceil(r_t)
        .max(n1.div_ceil(r_r))
        .max((n1 * n2).div_ceil(r_t * r_r))
}

/// Smallest `J` for the S-RIS problems: `max(⌈N/M_T⌉, ⌈N/M_R⌉)`.
pub fn min_training_sris(dims: &SystemDims) -> u64 {
    sris_bound(dims.m_t, dims.m_r, dims.n)
}

pub(crate) fn sris_bound(m_t: usize, m_r: usize, n: usize) -> u64 {
    let n = n as u64;
    n.div_ceil(m_t as u64).max(n.div_ceil(m_r as u64))
}

/// `M_T·N₁ + N₁·N₂ + M_R·N₂`.
pub fn coeff_count_dris(dims: &SystemDims) -> u64 {
    let (mt, mr) = (dims.m_t as u64, dims.m_r as u64);
    let (n1, n2) = (dims.n1 as u64, dims.n2 as u64);
    mt * n1 + n1 * n2 + mr * n2
}

/// `(M_T + M_R)·N`.
pub fn coeff_count_sris(dims: &SystemDims) -> u64 {
    (dims.m_t as u64 + dims.m_r as u64) * dims.n as u64
}
