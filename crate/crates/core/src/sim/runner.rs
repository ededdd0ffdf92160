//! Monte-Carlo sweeps.

use std::time::Instant;

use rayon::prelude::*;

use crate::als::AlsConfig;
use crate::channel::{
    add_noise_at_snr, effective_channel_dris, effective_channel_sris, noiseless_tensor_dris, noiseless_tensor_sris,
    DrisChannels, SrisChannels, SystemDims,
};
use crate::dris::als_dris;
use crate::error::{Error, Result};
use crate::metrics::{aggregate, error_energy, Scenario, TrialRecord};
use crate::rng::RngSeed;
use crate::sim::config::{ExperimentConfig, OverheadMode};
use crate::sim::output::{NmseRow, OverheadRow};
use crate::sris::als_sris;
use crate::tensor::ComplexMatrix;
use crate::training::{
    build_dris_training, build_sris_training, coeff_count_dris, coeff_count_sris, min_training_dris, min_training_sris,
    TrainingSet,
};

/// Coefficient counts and minimum training for every split of the sweep.
pub fn run_overhead_table(cfg: &ExperimentConfig) -> Result<Vec<OverheadRow>> {
    cfg.overhead_splits()
        .into_iter()
        .map(|(n1, n2)| {
            if n1 == 0 || n2 == 0 {
                return Err(Error::Config(format!("invalid split [{n1}, {n2}]")));
            }
            let dims = SystemDims {
                m_t: cfg.m_t,
                m_r: cfg.m_r,
                n1,
                n2,
                n: n1 + n2,
                i_frames: 1,
                j_frames: 1,
                k_pilots: cfg.k_pilots,
            };
            Ok(OverheadRow {
                n1,
                n2,
                m_t: cfg.m_t,
                m_r: cfg.m_r,
                ell_dris: coeff_count_dris(&dims),
                ell_sris: coeff_count_sris(&dims),
                i_min: min_training_dris(&dims),
                j_min: min_training_sris(&dims),
            })
        })
        .collect()
}

/// Training shared by every trial of one (scenario, split) group.
enum Design {
    Dris(TrainingSet),
    Sris(ComplexMatrix),
}

struct Group {
    scenario: Scenario,
    split_index: usize,
    dims: SystemDims,
    design: Design,
}

/// Result of [`run_nmse_sweep`]: aggregate rows, the per-trial records in
/// (scenario, split, snr, trial) order, and non-fatal warnings.
#[derive(Clone, Debug)]
pub struct NmseSweep {
    pub rows: Vec<NmseRow>,
    pub records: Vec<TrialRecord>,
    pub warnings: Vec<String>,
}

fn groups(cfg: &ExperimentConfig, warnings: &mut Vec<String>) -> Result<Vec<Group>> {
    let mut out = Vec::new();
    let base = |n1: usize, n2: usize| SystemDims {
        m_t: cfg.m_t,
        m_r: cfg.m_r,
        n1,
        n2,
        n: cfg.n,
        i_frames: 1,
        j_frames: 1,
        k_pilots: cfg.k_pilots,
    };
    for &scenario in &cfg.scenarios {
        match scenario {
            Scenario::Dris => {
                if cfg.splits.is_empty() {
                    return Err(Error::Config("the dris scenario needs at least one split".into()));
                }
                for (split_index, &(n1, n2)) in cfg.splits.iter().enumerate() {
                    let mut dims = base(n1, n2);
                    let i_min = min_training_dris(&dims);
                    dims.i_frames = match cfg.overhead_mode {
                        OverheadMode::Minimum => i_min as usize,
                        OverheadMode::Fixed { i_frames, .. } => i_frames,
                    };
                    if (dims.i_frames as u64) < i_min {
                        warnings.push(format!(
                            "dris [{n1}, {n2}]: I = {} is below the identifiability bound {i_min}",
                            dims.i_frames
                        ));
                    }
                    let design = build_dris_training(&dims)
                        .map_err(|e| Error::Config(format!("dris split [{n1}, {n2}]: {e}")))?;
                    out.push(Group {
                        scenario,
                        split_index,
                        dims,
                        design: Design::Dris(design),
                    });
                }
            }
            Scenario::Sris => {
                let mut dims = base(1, 1);
                let j_min = min_training_sris(&dims);
                dims.j_frames = match cfg.overhead_mode {
                    OverheadMode::Minimum => j_min as usize,
                    OverheadMode::Fixed { j_frames, .. } => j_frames,
                };
                if (dims.j_frames as u64) < j_min {
                    warnings.push(format!(
                        "sris: J = {} is below the identifiability bound {j_min}",
                        dims.j_frames
                    ));
                }
                let omega = build_sris_training(&dims).map_err(|e| Error::Config(format!("sris: {e}")))?;
                out.push(Group {
                    scenario,
                    split_index: 0,
                    dims,
                    design: Design::Sris(omega),
                });
            }
        }
    }
    Ok(out)
}

/// Seed of one trial: a pure function of the master seed and the trial's
/// coordinates, so results do not depend on execution order.
pub fn trial_seed(master: RngSeed, scenario: Scenario, split_index: usize, snr_index: usize, trial: usize) -> RngSeed {
    let tag = match scenario {
        Scenario::Dris => 0,
        Scenario::Sris => 1,
    };
    master.derive(&[tag, split_index as u64, snr_index as u64, trial as u64])
}

fn run_trial(group: &Group, snr_db: f64, trial_index: usize, seed: RngSeed, als: &AlsConfig) -> Result<TrialRecord> {
    let start = Instant::now();
    let mut rng = seed.rng();
    let als = AlsConfig {
        init_seed: seed.derive(&[u64::MAX]),
        ..*als
    };
    let (energy, iterations) = match &group.design {
        Design::Dris(tr) => {
            let ch = DrisChannels::draw(&group.dims, &mut rng);
            let clean = noiseless_tensor_dris(&ch, tr)?;
            let (y, _) = add_noise_at_snr(&clean, snr_db, &mut rng)?;
            let res = als_dris(&y, tr, &als)?;
            let e = error_energy(&effective_channel_dris(&ch)?, &effective_channel_dris(&res.estimates)?)?;
            (e, res.iterations)
        }
        Design::Sris(omega) => {
            let ch = SrisChannels::draw(&group.dims, &mut rng);
            let clean = noiseless_tensor_sris(&ch, omega)?;
            let (x, _) = add_noise_at_snr(&clean, snr_db, &mut rng)?;
            let res = als_sris(&x, omega, &als)?;
            let e = error_energy(&effective_channel_sris(&ch)?, &effective_channel_sris(&res.estimates)?)?;
            (e, res.iterations)
        }
    };
    Ok(TrialRecord {
        scenario: group.scenario,
        dims: group.dims,
        snr_db,
        trial_index,
        nmse: energy.ratio(),
        err_energy: energy.err,
        ref_energy: energy.reference,
        iterations,
        wall_time: start.elapsed().as_secs_f64(),
        seed,
    })
}

/// Runs every (scenario, split, SNR, trial) combination of `cfg` on a pool
/// of `threads` workers. Output is independent of `threads`; `wall_ms` is
/// reported only when `timing` is set, so that untimed tables are
/// reproducible byte for byte.
pub fn run_nmse_sweep(cfg: &ExperimentConfig, threads: usize, timing: bool) -> Result<NmseSweep> {
    cfg.validate()?;
    let mut warnings = Vec::new();
    let groups = groups(cfg, &mut warnings)?;

    let mut items = Vec::new();
    for g in 0..groups.len() {
        for (s, &snr) in cfg.snr_grid_db.iter().enumerate() {
            for t in 0..cfg.trials {
                items.push((g, s, snr, t));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let records: Vec<TrialRecord> = pool.install(|| {
        items
            .par_iter()
            .map(|&(g, s, snr, t)| {
                let group = &groups[g];
                let seed = trial_seed(cfg.master_seed, group.scenario, group.split_index, s, t);
                run_trial(group, snr, t, seed, &cfg.als)
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let mut rows = Vec::new();
    for chunk in records.chunks(cfg.trials) {
        let head = &chunk[0];
        let agg = aggregate(chunk)?;
        let d = head.dims;
        let (n1, n2, i_frames, j_frames) = match head.scenario {
            Scenario::Dris => (d.n1, d.n2, d.i_frames, 0),
            Scenario::Sris => (0, 0, 0, d.j_frames),
        };
        rows.push(NmseRow {
            scenario: head.scenario,
            n1,
            n2,
            n: d.n,
            m_t: d.m_t,
            m_r: d.m_r,
            i_frames,
            j_frames,
            snr_db: head.snr_db,
            trials: agg.trials,
            nmse_paper: agg.nmse_paper,
            nmse_mean: agg.nmse_mean,
            nmse_std: agg.nmse_std,
            iters_mean: agg.iters_mean,
            wall_ms: if timing { agg.wall_ms } else { 0.0 },
        });
    }
    Ok(NmseSweep {
        rows,
        records,
        warnings,
    })
}
