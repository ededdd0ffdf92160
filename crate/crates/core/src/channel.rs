//! Ground-truth channels and synthetic measurements.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_dims, Error, Result};
use crate::rng::{complex_gaussian, draw_rayleigh};
use crate::tensor::{ComplexMatrix, ComplexTensor3};
use crate::training::TrainingSet;

/// Antenna, element and frame counts shared by both scenarios.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDims {
    pub m_t: usize,
    pub m_r: usize,
    pub n1: usize,
    pub n2: usize,
    pub n: usize,
    pub i_frames: usize,
    pub j_frames: usize,
    pub k_pilots: usize,
}

impl SystemDims {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("m_t", self.m_t),
            ("m_r", self.m_r),
            ("n1", self.n1),
            ("n2", self.n2),
            ("n", self.n),
            ("i_frames", self.i_frames),
            ("j_frames", self.j_frames),
            ("k_pilots", self.k_pilots),
        ];
        if let Some((name, _)) = fields.iter().find(|(_, v)| *v == 0) {
            return Err(Error::Precondition(format!("{name} must be positive")));
        }
        if self.k_pilots < self.m_t {
            return Err(Error::Precondition(format!(
                "k_pilots = {} is below m_t = {}",
                self.k_pilots, self.m_t
            )));
        }
        Ok(())
    }
}

/// `H_T` (N₁×M_T), `H_S` (N₂×N₁), `H_R` (M_R×N₂).
#[derive(Clone, Debug, PartialEq)]
pub struct DrisChannels {
    pub h_t: ComplexMatrix,
    pub h_s: ComplexMatrix,
    pub h_r: ComplexMatrix,
}

/// `G_T` (N×M_T), `G_R` (M_R×N).
#[derive(Clone, Debug, PartialEq)]
pub struct SrisChannels {
    pub g_t: ComplexMatrix,
    pub g_r: ComplexMatrix,
}

impl DrisChannels {
    pub fn draw<R: Rng + ?Sized>(dims: &SystemDims, rng: &mut R) -> Self {
        let h_t = draw_rayleigh(dims.n1, dims.m_t, rng);
        let h_s = draw_rayleigh(dims.n2, dims.n1, rng);
        let h_r = draw_rayleigh(dims.m_r, dims.n2, rng);
        Self { h_t, h_s, h_r }
    }

    fn check(&self) -> Result<()> {
        ensure_dims!(
            self.h_s.cols() == self.h_t.rows() && self.h_r.cols() == self.h_s.rows(),
            "channel shapes H_R {:?}, H_S {:?}, H_T {:?} do not chain",
            self.h_r.shape(),
            self.h_s.shape(),
            self.h_t.shape()
        );
        Ok(())
    }
}

impl SrisChannels {
    pub fn draw<R: Rng + ?Sized>(dims: &SystemDims, rng: &mut R) -> Self {
        let g_t = draw_rayleigh(dims.n, dims.m_t, rng);
        let g_r = draw_rayleigh(dims.m_r, dims.n, rng);
        Self { g_t, g_r }
    }
}

/// `H_R·H_S·H_T`.
pub fn effective_channel_dris(ch: &DrisChannels) -> Result<ComplexMatrix> {
    ch.check()?;
    ch.h_r.matmul(&ch.h_s)?.matmul(&ch.h_t)
}

/// `G_R·G_T`.
pub fn effective_channel_sris(ch: &SrisChannels) -> Result<ComplexMatrix> {
    ch.g_r.matmul(&ch.g_t)
}

/// Frontal slices `H_R·diag(φ_i)·H_S·diag(ψ_i)·H_T`.
pub fn noiseless_tensor_dris(ch: &DrisChannels, tr: &TrainingSet) -> Result<ComplexTensor3> {
    ch.check()?;
    ensure_dims!(
        tr.psi.rows() == ch.h_t.rows() && tr.phi.rows() == ch.h_s.rows() && tr.psi.cols() == tr.phi.cols(),
        "training Ψ {:?} / Φ {:?} does not fit H_S {:?}",
        tr.psi.shape(),
        tr.phi.shape(),
        ch.h_s.shape()
    );
    let slices = (0..tr.frames())
        .map(|i| {
            let core = ch.h_s.scale_rows(tr.phi.col(i))?.scale_cols(tr.psi.col(i))?;
            ch.h_r.matmul(&core)?.matmul(&ch.h_t)
        })
        .collect::<Result<Vec<_>>>()?;
    ComplexTensor3::fold_from_slices(&slices)
}

/// Frontal slices `G_R·diag(ω_j)·G_T`.
pub fn noiseless_tensor_sris(ch: &SrisChannels, omega: &ComplexMatrix) -> Result<ComplexTensor3> {
    ensure_dims!(
        ch.g_r.cols() == ch.g_t.rows() && omega.rows() == ch.g_t.rows(),
        "Ω {:?} does not fit G_R {:?}, G_T {:?}",
        omega.shape(),
        ch.g_r.shape(),
        ch.g_t.shape()
    );
    let slices = (0..omega.cols())
        .map(|j| ch.g_r.scale_cols(omega.col(j))?.matmul(&ch.g_t))
        .collect::<Result<Vec<_>>>()?;
    ComplexTensor3::fold_from_slices(&slices)
}

fn check_pilots(f: &ComplexMatrix) -> Result<()> {
    let ff = f.matmul_adjoint(f)?;
    let err = ff.max_abs_diff(&ComplexMatrix::identity(f.rows()));
    if err > 1e-12 {
        return Err(Error::Precondition(format!(
            "pilot matrix rows are not orthonormal (max |FFᴴ − I| = {err:.3e})"
        )));
    }
    Ok(())
}

fn draw_noise_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, sigma2: f64, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng, sigma2))
}

/// Received pilots before filtering: `Ȳ_i = Y_i·F + N̄_i` with `N̄_i`
/// i.i.d. CN(0, σ²), each `M_R × K`.
pub fn raw_measurements<R: Rng + ?Sized>(
    ch: &DrisChannels,
    tr: &TrainingSet,
    sigma2: f64,
    rng: &mut R,
) -> Result<Vec<ComplexMatrix>> {
    let y = noiseless_tensor_dris(ch, tr)?;
    ensure_dims!(
        tr.f.rows() == ch.h_t.cols(),
        "F has {} rows, M_T = {}",
        tr.f.rows(),
        ch.h_t.cols()
    );
    let k = tr.f.cols();
    y.frontal_slices()
        .into_iter()
        .map(|s| {
            let n = draw_noise_matrix(s.rows(), k, sigma2, rng);
            Ok(&s.matmul(&tr.f)? + &n)
        })
        .collect()
}

/// Right-filters raw pilots with `Fᴴ` and stacks the results.
pub fn filter_raw(raw: &[ComplexMatrix], f: &ComplexMatrix) -> Result<ComplexTensor3> {
    check_pilots(f)?;
    let slices = raw.iter().map(|r| r.matmul_adjoint(f)).collect::<Result<Vec<_>>>()?;
    ComplexTensor3::fold_from_slices(&slices)
}

/// Simulates the pilot stage and returns the filtered tensor
/// `Y_i = Ȳ_i·Fᴴ`.
///
/// Since `F·Fᴴ = I` is checked up front, the signal part is taken directly
/// from the noiseless tensor and only the noise is filtered,
/// `Y_i = S_i + N̄_i·Fᴴ`. The noise draws are the ones [`raw_measurements`]
/// makes for the same generator state.
pub fn simulate_raw_and_filter<R: Rng + ?Sized>(
    ch: &DrisChannels,
    tr: &TrainingSet,
    sigma2: f64,
    rng: &mut R,
) -> Result<ComplexTensor3> {
    check_pilots(&tr.f)?;
    ensure_dims!(
        tr.f.rows() == ch.h_t.cols(),
        "F has {} rows, M_T = {}",
        tr.f.rows(),
        ch.h_t.cols()
    );
    if !(sigma2 >= 0.0 && sigma2.is_finite()) {
        return Err(Error::Precondition(format!("noise variance {sigma2} is invalid")));
    }
    let mut y = noiseless_tensor_dris(ch, tr)?;
    if sigma2 == 0.0 {
        return Ok(y);
    }
    let [m_r, m_t, frames] = y.dims();
    let k = tr.f.cols();
    let block = m_r * m_t;
    for i in 0..frames {
        let n = draw_noise_matrix(m_r, k, sigma2, rng).matmul_adjoint(&tr.f)?;
        for (dst, z) in y.as_mut_slice()[i * block..(i + 1) * block]
            .iter_mut()
            .zip(n.as_slice())
        {
            *dst += z;
        }
    }
    Ok(y)
}

/// Per-entry noise variance that puts `signal` at `snr_db`.
pub fn noise_variance_for_snr(signal: &ComplexTensor3, snr_db: f64) -> Result<f64> {
    if snr_db.is_nan() {
        return Err(Error::Precondition("SNR is NaN".into()));
    }
    if snr_db == f64::INFINITY {
        return Ok(0.0);
    }
    let p = signal.frobenius_norm_sqr();
    if !(p > 0.0) {
        return Err(Error::Undefined("SNR of a zero signal".into()));
    }
    Ok(p / (10f64.powf(snr_db / 10.0) * signal.len() as f64))
}

/// White CN(0, σ²) tensor of the given shape.
pub fn draw_noise<R: Rng + ?Sized>(dims: [usize; 3], sigma2: f64, rng: &mut R) -> ComplexTensor3 {
    let n = dims.iter().product();
    let data = (0..n).map(|_| complex_gaussian(rng, sigma2)).collect();
    ComplexTensor3::from_raw(dims, data).expect("length matches dims")
}

/// Adds white noise calibrated on the realised signal energy. `+∞` returns
/// the signal untouched with `σ² = 0`.
pub fn add_noise_at_snr<R: Rng + ?Sized>(
    signal: &ComplexTensor3,
    snr_db: f64,
    rng: &mut R,
) -> Result<(ComplexTensor3, f64)> {
    let sigma2 = noise_variance_for_snr(signal, snr_db)?;
    if sigma2 == 0.0 {
        return Ok((signal.clone(), 0.0));
    }
    let noise = draw_noise(signal.dims(), sigma2, rng);
    Ok((signal.add(&noise)?, sigma2))
}
