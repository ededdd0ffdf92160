//! CP ALS estimation of the two S-RIS channels.
//!
//! Each sweep solves `G_R = [𝒳]_(1)·V_R⁺` and then `G_Tᵀ = [𝒳]_(2)·V_T⁺`.

use crate::als::{check_measurements, residual, right_ls, AlsConfig, AlsResult, Stopper, Termination};
use crate::channel::SrisChannels;
use crate::error::{ensure_dims, Result};
use crate::rng::draw_rayleigh;
use crate::tensor::{ComplexMatrix, ComplexTensor3, Mode};
use crate::training::sris_bound;

/// `V_R`, `N × J·M_T`; block `j` is `diag(ω_j)·G_T`.
pub fn build_v_r(g_t: &ComplexMatrix, omega: &ComplexMatrix) -> Result<ComplexMatrix> {
    ensure_dims!(
        g_t.rows() == omega.rows(),
        "G_T is {:?}, Ω is {:?}",
        g_t.shape(),
        omega.shape()
    );
    let blocks = (0..omega.cols())
        .map(|j| g_t.scale_rows(omega.col(j)))
        .collect::<Result<Vec<_>>>()?;
    ComplexMatrix::hcat(&blocks)
}

/// `V_T`, `N × J·M_R`; block `j` is `diag(ω_j)·G_Rᵀ`.
pub fn build_v_t(g_r: &ComplexMatrix, omega: &ComplexMatrix) -> Result<ComplexMatrix> {
    ensure_dims!(
        g_r.cols() == omega.rows(),
        "G_R is {:?}, Ω is {:?}",
        g_r.shape(),
        omega.shape()
    );
    let g_rt = g_r.transpose();
    let blocks = (0..omega.cols())
        .map(|j| g_rt.scale_rows(omega.col(j)))
        .collect::<Result<Vec<_>>>()?;
    ComplexMatrix::hcat(&blocks)
}

/// Algorithm entry point; `G_T` starts i.i.d. CN(0, 1) from `cfg.init_seed`.
pub fn als_sris(x: &ComplexTensor3, omega: &ComplexMatrix, cfg: &AlsConfig) -> Result<AlsResult<SrisChannels>> {
    let [m_r, m_t, _] = x.dims();
    let g_t = draw_rayleigh(omega.rows(), m_t, &mut cfg.init_seed.rng());
    let init = SrisChannels {
        g_t,
        g_r: ComplexMatrix::zeros(m_r, omega.rows()),
    };
    als_sris_with_init(x, omega, cfg, init)
}

/// Same as [`als_sris`] from a caller-supplied start; only `g_t` is used.
pub fn als_sris_with_init(
    x: &ComplexTensor3,
    omega: &ComplexMatrix,
    cfg: &AlsConfig,
    init: SrisChannels,
) -> Result<AlsResult<SrisChannels>> {
    cfg.validate()?;
    let [m_r, m_t, frames] = x.dims();
    let n = omega.rows();
    ensure_dims!(
        frames == omega.cols(),
        "tensor has {frames} frames, Ω has {} columns",
        omega.cols()
    );
    ensure_dims!(
        init.g_t.shape() == (n, m_t),
        "initial G_T is {:?}, expected {n}x{m_t}",
        init.g_t.shape()
    );
    check_measurements(x)?;

    let underdetermined = (frames as u64) < sris_bound(m_t, m_r, n);
    let x1 = x.unfold(Mode::One);
    let x2 = x.unfold(Mode::Two);

    let mut g_t = init.g_t;
    let mut g_r;
    let mut v_r = build_v_r(&g_t, omega)?;
    let mut stop = Stopper::new(cfg, x.frobenius_norm_sqr());
    let mut terminated_by = Termination::MaxIters;
    loop {
        g_r = right_ls(&x1, &v_r)?;
        g_t = right_ls(&x2, &build_v_t(&g_r, omega)?)?.transpose();
        v_r = build_v_r(&g_t, omega)?;
        let cost = residual(&x1, &g_r, &v_r)?;
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
        estimates: SrisChannels { g_t, g_r },
        iterations: cost_history.len(),
        cost_history,
        terminated_by,
        underdetermined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{effective_channel_sris, noiseless_tensor_sris, SystemDims};
    use crate::rng::RngSeed;
    use crate::training::{build_sris_training, min_training_sris};
    use crate::C64;

    fn dims(j: usize) -> SystemDims {
        SystemDims {
            m_t: 2,
            m_r: 4,
            n1: 1,
            n2: 1,
            n: 10,
            i_frames: 1,
            j_frames: j,
            k_pilots: 2,
        }
    }

    fn nmse(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
        (a - b).frobenius_norm_sqr() / a.frobenius_norm_sqr()
    }

    #[test]
    fn trivial_builders() {
        let ones = ComplexMatrix::from_fn(3, 2, |_, _| C64::new(1.0, 0.0));
        let g_t = ComplexMatrix::from_fn(3, 2, |i, j| C64::new(i as f64, j as f64));
        let v = build_v_r(&g_t, &ones).unwrap();
        assert_eq!(v, ComplexMatrix::hcat(&[g_t.clone(), g_t.clone()]).unwrap());
        let g_r = ComplexMatrix::from_fn(4, 3, |i, j| C64::new(j as f64, i as f64));
        let v = build_v_t(&g_r, &ones).unwrap();
        assert_eq!(v.col_block(4, 4), g_r.transpose());
        assert_eq!(
            build_v_r(&ComplexMatrix::zeros(3, 2), &ones)
                .unwrap()
                .frobenius_norm_sqr(),
            0.0
        );
        let row = build_v_t(
            &ComplexMatrix::from_fn(2, 1, |i, _| C64::new(i as f64 + 1.0, 0.0)),
            &ones.leading_rows(1),
        )
        .unwrap();
        assert_eq!(row.shape(), (1, 4));
    }

    #[test]
    fn noiseless_recovery_at_minimum_training() {
        let j = min_training_sris(&dims(1)) as usize;
        assert_eq!(j, 5);
        let d = dims(j);
        let omega = build_sris_training(&d).unwrap();
        let ch = SrisChannels::draw(&d, &mut RngSeed::new(21, 0).rng());
        let x = noiseless_tensor_sris(&ch, &omega).unwrap();
        let cfg = AlsConfig {
            t_max: 50,
            rel_tol: 1e-12,
            init_seed: RngSeed::new(21, 1),
        };
        let res = als_sris(&x, &omega, &cfg).unwrap();
        let ge = effective_channel_sris(&ch).unwrap();
        let est = effective_channel_sris(&res.estimates).unwrap();
        assert!(nmse(&ge, &est) <= 1e-8, "{}", nmse(&ge, &est));
    }

    #[test]
    fn true_start_and_zero_input() {
        let d = dims(5);
        let omega = build_sris_training(&d).unwrap();
        let ch = SrisChannels::draw(&d, &mut RngSeed::new(22, 0).rng());
        let x = noiseless_tensor_sris(&ch, &omega).unwrap();
        let res = als_sris_with_init(&x, &omega, &AlsConfig::default(), ch.clone()).unwrap();
        assert!(res.cost_history[0] < 1e-20 * x.frobenius_norm_sqr());
        let ge = effective_channel_sris(&ch).unwrap();
        assert!(nmse(&ge, &effective_channel_sris(&res.estimates).unwrap()) <= 1e-12);

        let zero = ComplexTensor3::zeros(4, 2, 5);
        let res = als_sris(&zero, &omega, &AlsConfig::default()).unwrap();
        assert!(res.cost_history.iter().all(|&c| c == 0.0));
        assert_eq!(
            effective_channel_sris(&res.estimates).unwrap().frobenius_norm_sqr(),
            0.0
        );
    }

    #[test]
    fn shape_errors() {
        let omega = build_sris_training(&dims(5)).unwrap();
        let x = ComplexTensor3::zeros(4, 2, 4);
        assert!(als_sris(&x, &omega, &AlsConfig::default()).is_err());
    }
}
