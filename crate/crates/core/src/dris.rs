//! Tucker2 ALS estimation of the three D-RIS channels.
//!
//! With `𝒴 ∈ ℂ^{M_R×M_T×I}` the filtered measurements, each sweep solves, in
//! this order,
//!
//! * `H_R = [𝒴]_(1) · Z_R⁺`
//! * `H_Tᵀ = [𝒴]_(2) · Z_T⁺`
//! * `vec(H_S) = Z_S⁺ · vec([𝒴]_(3))`
//!
//! The `H_S` step works on the Gram matrix
//! `Z_Sᴴ·Z_S = (conj(H_T)·H_Tᵀ ⊗ H_Rᴴ·H_R) ⊙ conj(Υ)·Υᵀ`, which avoids forming
//! the `I·M_R·M_T × N₁N₂` matrix unless the Cholesky route is refused.

use crate::als::{check_measurements, residual, right_ls, AlsResult, Stopper, Termination};
use crate::channel::DrisChannels;
use crate::error::{ensure_dims, Result};
use crate::rng::draw_rayleigh;
use crate::tensor::{khatri_rao, kron, ls_solve, solve_gram, unvec, vec, ComplexMatrix, ComplexTensor3, Mode};
use crate::training::{dris_bound, TrainingSet};
use crate::C64;

pub use crate::als::AlsConfig;

fn check_training(tr: &TrainingSet) -> Result<()> {
    ensure_dims!(
        tr.psi.cols() == tr.phi.cols(),
        "Ψ has {} frames, Φ has {}",
        tr.psi.cols(),
        tr.phi.cols()
    );
    Ok(())
}

/// Core slices `diag(φ_i)·H_S·diag(ψ_i)`, an `N₂ × N₁ × I` tensor.
pub fn build_core_tensor(h_s: &ComplexMatrix, tr: &TrainingSet) -> Result<ComplexTensor3> {
    check_training(tr)?;
    ensure_dims!(
        h_s.shape() == (tr.phi.rows(), tr.psi.rows()),
        "H_S is {:?}, training expects {}x{}",
        h_s.shape(),
        tr.phi.rows(),
        tr.psi.rows()
    );
    let slices = (0..tr.frames())
        .map(|i| h_s.scale_rows(tr.phi.col(i))?.scale_cols(tr.psi.col(i)))
        .collect::<Result<Vec<_>>>()?;
    ComplexTensor3::fold_from_slices(&slices)
}

/// `Z_R`, `N₂ × I·M_T`; block `i` is `diag(φ_i)·H_S·diag(ψ_i)·H_T`.
pub fn build_z_r(h_t: &ComplexMatrix, h_s: &ComplexMatrix, tr: &TrainingSet) -> Result<ComplexMatrix> {
    ensure_dims!(
        h_t.rows() == h_s.cols(),
        "H_T is {:?}, H_S is {:?}",
        h_t.shape(),
        h_s.shape()
    );
    let core = build_core_tensor(h_s, tr)?;
    let blocks = core
        .frontal_slices()
        .iter()
        .map(|s| s.matmul(h_t))
        .collect::<Result<Vec<_>>>()?;
    ComplexMatrix::hcat(&blocks)
}

/// `Z_T`, `N₁ × I·M_R`; block `i` is `(H_R·diag(φ_i)·H_S·diag(ψ_i))ᵀ`.
pub fn build_z_t(h_r: &ComplexMatrix, h_s: &ComplexMatrix, tr: &TrainingSet) -> Result<ComplexMatrix> {
    ensure_dims!(
        h_r.cols() == h_s.rows(),
        "H_R is {:?}, H_S is {:?}",
        h_r.shape(),
        h_s.shape()
    );
    let core = build_core_tensor(h_s, tr)?;
    let blocks = core
        .frontal_slices()
        .iter()
        .map(|s| Ok(h_r.matmul(s)?.transpose()))
        .collect::<Result<Vec<_>>>()?;
    ComplexMatrix::hcat(&blocks)
}

/// `Z_S = (H_Tᵀ ⊗ H_R) ⋄ (Ψ ⋄ Φ)ᵀ`, `I·M_R·M_T × N₁N₂`, so that
/// `vec([𝒴]_(3)) = Z_S·vec(H_S)` for noiseless data.
pub fn build_z_s(h_t: &ComplexMatrix, h_r: &ComplexMatrix, tr: &TrainingSet) -> Result<ComplexMatrix> {
    check_training(tr)?;
    ensure_dims!(
        h_t.rows() == tr.psi.rows() && h_r.cols() == tr.phi.rows(),
        "H_T {:?} / H_R {:?} do not fit Ψ {:?} / Φ {:?}",
        h_t.shape(),
        h_r.shape(),
        tr.psi.shape(),
        tr.phi.shape()
    );
    khatri_rao(&kron(&h_t.transpose(), h_r), &tr.upsilon()?.transpose())
}

/// Per-run constants of the `H_S` subproblem.
struct HsSystem {
    /// `conj(Υ)·Υᵀ`
    c: ComplexMatrix,
    /// `conj(Υ)`
    upsilon_conj: ComplexMatrix,
    y3: ComplexMatrix,
}

impl HsSystem {
    fn new(y: &ComplexTensor3, tr: &TrainingSet) -> Result<Self> {
        let upsilon = tr.upsilon()?;
        let c = upsilon.matmul_adjoint(&upsilon)?.conj();
        Ok(Self {
            c,
            upsilon_conj: upsilon.conj(),
            y3: vec(&y.unfold(Mode::Three)),
        })
    }

    fn solve(
        &self,
        y1: &ComplexMatrix,
        h_t: &ComplexMatrix,
        h_r: &ComplexMatrix,
        tr: &TrainingSet,
    ) -> Result<ComplexMatrix> {
        let (n1, m_t) = h_t.shape();
        let n2 = h_r.cols();
        let frames = tr.frames();
        let p = h_t.matmul_adjoint(h_t)?.conj();
        let q = h_r.adjoint_matmul(h_r)?;
        let gram = kron(&p, &q).hadamard(&self.c)?;

        // right-hand side Z_Sᴴ·y: Σ_i conj(φ_i ⊗ ψ_i) ⊙ vec(H_Rᴴ·Y_i·H_Tᴴ)
        let a = h_r.adjoint_matmul(y1)?;
        let mut rhs = vec![C64::new(0.0, 0.0); n1 * n2];
        for i in 0..frames {
            let m = a.col_block(i * m_t, m_t).matmul_adjoint(h_t)?;
            let u = self.upsilon_conj.col(i);
            for (k, r) in rhs.iter_mut().enumerate() {
                *r += u[k] * m.as_slice()[k];
            }
        }
        let rhs = ComplexMatrix::column(rhs);
        let x = match solve_gram(&gram, &rhs)? {
            Some(x) => x,
            None => ls_solve(&build_z_s(h_t, h_r, tr)?, &self.y3)?,
        };
        unvec(&x, n2, n1)
    }
}

/// Algorithm entry point with a seeded random start: `H_T` and `H_S` are
/// drawn i.i.d. CN(0, 1) from `cfg.init_seed`.
pub fn als_dris(y: &ComplexTensor3, tr: &TrainingSet, cfg: &AlsConfig) -> Result<AlsResult<DrisChannels>> {
    let [m_r, m_t, _] = y.dims();
    let (n1, n2) = (tr.psi.rows(), tr.phi.rows());
    let mut rng = cfg.init_seed.rng();
    let h_t = draw_rayleigh(n1, m_t, &mut rng);
    let h_s = draw_rayleigh(n2, n1, &mut rng);
    let init = DrisChannels {
        h_t,
        h_s,
        h_r: ComplexMatrix::zeros(m_r, n2),
    };
    als_dris_with_init(y, tr, cfg, init)
}

/// Same as [`als_dris`] from a caller-supplied start. Only `h_t` and `h_s`
/// are used, since the first update overwrites `h_r`.
pub fn als_dris_with_init(
    y: &ComplexTensor3,
    tr: &TrainingSet,
    cfg: &AlsConfig,
    init: DrisChannels,
) -> Result<AlsResult<DrisChannels>> {
    cfg.validate()?;
    check_training(tr)?;
    let [m_r, m_t, frames] = y.dims();
    let (n1, n2) = (tr.psi.rows(), tr.phi.rows());
    ensure_dims!(
        frames == tr.frames(),
        "tensor has {frames} frames, training has {}",
        tr.frames()
    );
    ensure_dims!(
        init.h_t.shape() == (n1, m_t) && init.h_s.shape() == (n2, n1),
        "initial H_T {:?} / H_S {:?} do not fit N1 = {n1}, N2 = {n2}, M_T = {m_t}",
        init.h_t.shape(),
        init.h_s.shape()
    );
    check_measurements(y)?;

    let underdetermined = (frames as u64) < dris_bound(m_t, m_r, n1, n2);
    let y1 = y.unfold(Mode::One);
    let y2 = y.unfold(Mode::Two);
    let hs_sys = HsSystem::new(y, tr)?;

    let DrisChannels { mut h_t, mut h_s, .. } = init;
    let mut h_r;
    let mut z_r = build_z_r(&h_t, &h_s, tr)?;
    let mut stop = Stopper::new(cfg, y.frobenius_norm_sqr());
    let mut terminated_by = Termination::MaxIters;
    loop {
        h_r = right_ls(&y1, &z_r)?;
        h_t = right_ls(&y2, &build_z_t(&h_r, &h_s, tr)?)?.transpose();
        h_s = hs_sys.solve(&y1, &h_t, &h_r, tr)?;
        z_r = build_z_r(&h_t, &h_s, tr)?;
        let cost = residual(&y1, &h_r, &z_r)?;
        if stop.push(cost) {
            terminated_by = Termination::TolReached;
            break;
        }
        if stop.history.len() >= cfg.t_max {
            break;
        }
    }
    let cost_history = stop.history;
    Ok(AlsResult {
        estimates: DrisChannels { h_t, h_s, h_r },
        iterations: cost_history.len(),
        cost_history,
        terminated_by,
        underdetermined,
    })
}
