//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! `RISCE_ACCEPTANCE=3,7` restricts the run to the listed criteria. Line
//! `2r` checks the split advice derived from the minimum-training curves.

mod common;

use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use common::{rand_mat, rel_err};
use risce::channel::{
    add_noise_at_snr, effective_channel_dris, effective_channel_sris, noiseless_tensor_dris, noiseless_tensor_sris,
    DrisChannels, SrisChannels, SystemDims,
};
use risce::cli::{run, Cli};
use risce::dris::{als_dris, build_z_r, build_z_s, build_z_t};
use risce::metrics::{bootstrap_ratio_db, nmse, ErrorEnergy, Scenario, TrialRecord};
use risce::rng::RngSeed;
use risce::sim::output::parse_overhead_csv;
use risce::sim::{run_nmse_sweep, ExperimentConfig};
use risce::sris::{als_sris, build_v_r, build_v_t};
use risce::tensor::{khatri_rao, kron, rank, rank_from_gram, vec, ComplexMatrix, ComplexTensor3, Mode};
use risce::training::{build_dris_training, build_sris_training, min_training_dris, min_training_sris};
use risce::AlsConfig;

type Outcome = Result<String, String>;

fn dims(m_t: usize, m_r: usize, n1: usize, n2: usize, n: usize, i: usize, j: usize) -> SystemDims {
    SystemDims {
        m_t,
        m_r,
        n1,
        n2,
        n,
        i_frames: i,
        j_frames: j,
        k_pilots: m_t,
    }
}

fn threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Runs the command-line entry point in-process and returns the CSV it wrote.
fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("out.csv");
    let out = out.to_str().ok_or("temp path is not UTF-8")?;
    let argv = ["risce"]
        .iter()
        .chain(args)
        .chain(&["--out", out])
        .copied()
        .collect::<Vec<_>>();
    let cli = Cli::try_parse_from(argv).map_err(|e| e.to_string())?;
    run(cli).map_err(|e| e.to_string())?;
    std::fs::read(out).map_err(|e| e.to_string())
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn coefficient_counts() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = write_config(
        dir.path(),
        "c1.toml",
        "schema_version = 1\n[dims]\nm_t = 2\nm_r = 8\nn = 40\nsplits = [[10, 30]]\n",
    );
    let csv = run_cli(&["overhead", "--config", &cfg])?;
    let rows = parse_overhead_csv(csv.as_slice(), Path::new("out.csv")).map_err(|e| e.to_string())?;
    let row = rows.first().ok_or("no rows")?;
    let msg = format!("ell_dris = {}, ell_sris = {}", row.ell_dris, row.ell_sris);
    if rows.len() == 1 && row.ell_dris == 560 && row.ell_sris == 400 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

/// Ranks of the explicit D-RIS system matrices against their targets.
fn dris_ranks_full(d: &SystemDims, seed: u64) -> Result<bool, String> {
    let tr = build_dris_training(d).map_err(|e| e.to_string())?;
    let ch = DrisChannels::draw(d, &mut RngSeed::new(seed, 0).rng());
    let e = |x: risce::Error| x.to_string();
    let z_r = build_z_r(&ch.h_t, &ch.h_s, &tr).map_err(e)?;
    if rank(&z_r).map_err(e)? < d.n2 {
        return Ok(false);
    }
    let z_t = build_z_t(&ch.h_r, &ch.h_s, &tr).map_err(e)?;
    if rank(&z_t).map_err(e)? < d.n1 {
        return Ok(false);
    }
    let z_s = build_z_s(&ch.h_t, &ch.h_r, &tr).map_err(e)?;
    // Z_S is usually much taller than wide; its Gram matrix is the cheaper
    // route to the rank
    let r = if z_s.rows() > 2 * z_s.cols() {
        rank_from_gram(&z_s.adjoint_matmul(&z_s).map_err(e)?, z_s.rows()).map_err(e)?
    } else {
        rank(&z_s).map_err(e)?
    };
    Ok(r == d.n1 * d.n2)
}

fn sris_ranks_full(d: &SystemDims, seed: u64) -> Result<bool, String> {
    let omega = build_sris_training(d).map_err(|e| e.to_string())?;
    let ch = SrisChannels::draw(d, &mut RngSeed::new(seed, 0).rng());
    let e = |x: risce::Error| x.to_string();
    let v_r = build_v_r(&ch.g_t, &omega).map_err(e)?;
    let v_t = build_v_t(&ch.g_r, &omega).map_err(e)?;
    Ok(rank(&v_r).map_err(e)? == d.n && rank(&v_t).map_err(e)? == d.n)
}

fn overhead_oracle() -> Outcome {
    const N: usize = 40;
    const INSTANCES: u64 = 20;
    let mut checked = 0;
    for m_t in [2, 8] {
        for m_r in [8, 32] {
            for n1 in 2..=38 {
                let n2 = N - n1;
                let base = dims(m_t, m_r, n1, n2, N, 1, 1);
                let i_min = min_training_dris(&base) as usize;
                for inst in 0..INSTANCES {
                    let seed = 1000 * n1 as u64 + inst;
                    let at = dims(m_t, m_r, n1, n2, N, i_min, 1);
                    if !dris_ranks_full(&at, seed)? {
                        return Err(format!(
                            "D-RIS M_T={m_t} M_R={m_r} [{n1},{n2}]: ranks deficient at I_min={i_min}"
                        ));
                    }
                    if i_min > 1 && dris_ranks_full(&dims(m_t, m_r, n1, n2, N, i_min - 1, 1), seed)? {
                        return Err(format!(
                            "D-RIS M_T={m_t} M_R={m_r} [{n1},{n2}]: ranks already full at I={}",
                            i_min - 1
                        ));
                    }
                    checked += 1;
                }
            }
            let j_min = min_training_sris(&dims(m_t, m_r, 1, 1, N, 1, 1)) as usize;
            for inst in 0..INSTANCES {
                if !sris_ranks_full(&dims(m_t, m_r, 1, 1, N, 1, j_min), inst)? {
                    return Err(format!("S-RIS M_T={m_t} M_R={m_r}: ranks deficient at J_min={j_min}"));
                }
                if j_min > 1 && sris_ranks_full(&dims(m_t, m_r, 1, 1, N, 1, j_min - 1), inst)? {
                    return Err(format!(
                        "S-RIS M_T={m_t} M_R={m_r}: ranks already full at J={}",
                        j_min - 1
                    ));
                }
            }
        }
    }

    Ok(format!(
        "{checked} D-RIS instances at I_min and I_min - 1, S-RIS at J_min and J_min - 1"
    ))
}

/// Where to put the larger surface: the minimiser of `I_min` over the split
/// should lean towards RIS 1 (`N₁ > N/2`) when `M_R > M_T` and towards RIS 2
/// otherwise.
fn split_minimiser_side() -> Outcome {
    const N: usize = 40;
    let mut wrong = Vec::new();
    for (m_t, m_r) in [(2, 8), (2, 32), (8, 32), (8, 2), (32, 8)] {
        let cost: Vec<u64> = (1..N)
            .map(|n1| min_training_dris(&dims(m_t, m_r, n1, N - n1, N, 1, 1)))
            .collect();
        let best = *cost.iter().min().unwrap();
        let argmin: Vec<usize> = (1..N).filter(|&n1| cost[n1 - 1] == best).collect();
        let ok = argmin.iter().all(|&n1| if m_r > m_t { 2 * n1 > N } else { 2 * n1 < N });
        if !ok {
            wrong.push(format!("M_T={m_t} M_R={m_r}: I_min={best} at N1 in {argmin:?}"));
        }
    }
    if wrong.is_empty() {
        Ok("every minimiser on the expected side of N/2".into())
    } else {
        Err(wrong.join("; "))
    }
}

fn noiseless_recovery() -> Outcome {
    let cfg_for = |s: u64| AlsConfig {
        t_max: 100,
        rel_tol: 1e-8,
        init_seed: RngSeed::new(s, 7),
    };
    let d = dims(2, 4, 6, 5, 11, 1, 1);
    let d = SystemDims {
        i_frames: min_training_dris(&d) as usize,
        ..d
    };
    let tr = build_dris_training(&d).map_err(|e| e.to_string())?;
    let mut dris_ok = 0;
    for s in 0..100 {
        let ch = DrisChannels::draw(&d, &mut RngSeed::new(s, 0).rng());
        let y = noiseless_tensor_dris(&ch, &tr).map_err(|e| e.to_string())?;
        let res = als_dris(&y, &tr, &cfg_for(s)).map_err(|e| e.to_string())?;
        let v = nmse(
            &effective_channel_dris(&ch).unwrap(),
            &effective_channel_dris(&res.estimates).unwrap(),
        )
        .unwrap();
        dris_ok += usize::from(v <= 1e-8);
    }

    let d = dims(2, 4, 1, 1, 10, 1, 1);
    let d = SystemDims {
        j_frames: min_training_sris(&d) as usize,
        ..d
    };
    let omega = build_sris_training(&d).map_err(|e| e.to_string())?;
    let mut sris_ok = 0;
    for s in 0..100 {
        let ch = SrisChannels::draw(&d, &mut RngSeed::new(s, 1).rng());
        let x = noiseless_tensor_sris(&ch, &omega).map_err(|e| e.to_string())?;
        let res = als_sris(&x, &omega, &cfg_for(s)).map_err(|e| e.to_string())?;
        let v = nmse(
            &effective_channel_sris(&ch).unwrap(),
            &effective_channel_sris(&res.estimates).unwrap(),
        )
        .unwrap();
        sris_ok += usize::from(v <= 1e-8);
    }
    let msg = format!("D-RIS {dris_ok}/100, S-RIS {sris_ok}/100 runs at NMSE <= 1e-8");
    if dris_ok >= 95 && sris_ok >= 95 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

/// Largest step-to-step increase of a cost sequence relative to `‖𝒴‖²`.
fn worst_increase(history: &[f64], energy: f64) -> f64 {
    history
        .windows(2)
        .map(|w| (w[1] - w[0]) / energy)
        .fold(f64::NEG_INFINITY, f64::max)
}

fn monotonicity() -> Outcome {
    use rand::Rng;
    let mut rng = RngSeed::new(44, 0).rng();
    let mut worst = f64::NEG_INFINITY;
    for run in 0..1000u64 {
        let snr = if run % 4 < 2 {
            f64::INFINITY
        } else {
            rng.random_range(-5.0..30.0)
        };
        let cfg = AlsConfig {
            t_max: 30,
            rel_tol: 0.0,
            init_seed: RngSeed::new(run, 9),
        };
        let (history, energy) = if run % 2 == 0 {
            let n1 = rng.random_range(1..=5);
            let n2 = rng.random_range(1..=5);
            let d = dims(
                rng.random_range(1..=3),
                rng.random_range(1..=4),
                n1,
                n2,
                n1 + n2,
                rng.random_range(1..=n1 * n2),
                1,
            );
            let tr = build_dris_training(&d).unwrap();
            let ch = DrisChannels::draw(&d, &mut RngSeed::new(run, 1).rng());
            let clean = noiseless_tensor_dris(&ch, &tr).unwrap();
            let (y, _) = add_noise_at_snr(&clean, snr, &mut RngSeed::new(run, 2).rng()).unwrap();
            let res = als_dris(&y, &tr, &cfg).map_err(|e| format!("run {run}: {e}"))?;
            (res.cost_history, y.frobenius_norm_sqr())
        } else {
            let n = rng.random_range(1..=10);
            let d = dims(
                rng.random_range(1..=3),
                rng.random_range(1..=4),
                1,
                1,
                n,
                1,
                rng.random_range(1..=n),
            );
            let omega = build_sris_training(&d).unwrap();
            let ch = SrisChannels::draw(&d, &mut RngSeed::new(run, 1).rng());
            let clean = noiseless_tensor_sris(&ch, &omega).unwrap();
            let (x, _) = add_noise_at_snr(&clean, snr, &mut RngSeed::new(run, 2).rng()).unwrap();
            let res = als_sris(&x, &omega, &cfg).map_err(|e| format!("run {run}: {e}"))?;
            (res.cost_history, x.frobenius_norm_sqr())
        };
        let w = worst_increase(&history, energy);
        if w > 1e-12 {
            return Err(format!("run {run}: cost rose by {w:.3e} of the data energy"));
        }
        worst = worst.max(w);
    }
    Ok(format!("1000 runs, largest relative increase {worst:.2e}"))
}

fn ordering_config(m_r: usize, splits: &str) -> ExperimentConfig {
    let text = format!(
        "schema_version = 1\nsnr_grid_db = [0.0, 10.0, 20.0, 30.0]\ntrials = 500\n\
         [dims]\nm_t = 2\nm_r = {m_r}\nn = 40\nsplits = {splits}\n\
         [training]\nmode = \"fixed\"\ni_frames = 40\nj_frames = 40\n\
         [als]\nt_max = 100\nrel_tol = 1e-8\n[seed]\nmaster = 4\n"
    );
    ExperimentConfig::from_toml_str(&text).unwrap()
}

fn energies(records: &[TrialRecord], scenario: Scenario, n1: Option<usize>, snr: f64) -> Vec<ErrorEnergy> {
    records
        .iter()
        .filter(|r| r.scenario == scenario && r.snr_db == snr && n1.is_none_or(|n1| r.dims.n1 == n1))
        .map(|r| ErrorEnergy {
            err: r.err_energy,
            reference: r.ref_energy,
        })
        .collect()
}

fn nmse_orderings() -> Outcome {
    let sweep8 =
        run_nmse_sweep(&ordering_config(8, "[[10, 30], [30, 10]]"), threads(), false).map_err(|e| e.to_string())?;
    let sweep32 = run_nmse_sweep(&ordering_config(32, "[[30, 10]]"), threads(), false).map_err(|e| e.to_string())?;

    let mut lines = Vec::new();
    let mut failed = false;
    let mut check = |label: &str, a: Vec<ErrorEnergy>, b: Vec<ErrorEnergy>, snr: f64| {
        let seed = RngSeed::new(99, (snr as u64) * 16 + lines.len() as u64);
        let ci = bootstrap_ratio_db(&a, &b, 0.95, 2000, seed).unwrap();
        let ok = ci.a_below_b();
        failed |= !ok;
        lines.push(format!(
            "{label} @{snr} dB: {:+.2} dB [{:+.2}, {:+.2}] {}",
            ci.point_db,
            ci.low_db,
            ci.high_db,
            if ok { "ok" } else { "NOT separated" }
        ));
    };
    for snr in [10.0, 20.0, 30.0] {
        let r = &sweep8.records;
        check(
            "M_R=8 S < D[10,30]",
            energies(r, Scenario::Sris, None, snr),
            energies(r, Scenario::Dris, Some(10), snr),
            snr,
        );
        check(
            "M_R=8 S < D[30,10]",
            energies(r, Scenario::Sris, None, snr),
            energies(r, Scenario::Dris, Some(30), snr),
            snr,
        );
        check(
            "M_R=8 D[30,10] < D[10,30]",
            energies(r, Scenario::Dris, Some(30), snr),
            energies(r, Scenario::Dris, Some(10), snr),
            snr,
        );
        let r = &sweep32.records;
        check(
            "M_R=32 D[30,10] < S",
            energies(r, Scenario::Dris, Some(30), snr),
            energies(r, Scenario::Sris, None, snr),
            snr,
        );
    }
    for row in sweep8.rows.iter().chain(&sweep32.rows) {
        lines.push(format!(
            "  {} [{},{}] M_R={} snr={} nmse={:.3e} iters={:.1}",
            row.scenario.as_str(),
            row.n1,
            row.n2,
            row.m_r,
            row.snr_db,
            row.nmse_paper,
            row.iters_mean
        ));
    }
    let msg = lines.join("\n       ");
    if failed {
        Err(msg)
    } else {
        Ok(msg)
    }
}

fn tensor_identities() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut note = |what: &str, e: f64, inst: u64| -> Result<(), String> {
        worst = worst.max(e);
        if e <= 1e-10 {
            Ok(())
        } else {
            Err(format!("instance {inst}: {what} off by {e:.3e}"))
        }
    };
    for inst in 0..200u64 {
        let sz = |k: u64| 1 + ((inst * 7 + k * 13) % 4) as usize;
        let (p, q, r, s) = (sz(1), sz(2), sz(3), sz(4));

        // vec(A·B·C) = (Cᵀ ⊗ A)·vec(B)
        let a = rand_mat(p, q, inst, 1);
        let b = rand_mat(q, r, inst, 2);
        let c = rand_mat(r, s, inst, 3);
        let lhs = vec(&a.matmul(&b).unwrap().matmul(&c).unwrap());
        let rhs = kron(&c.transpose(), &a).matmul(&vec(&b)).unwrap();
        note("vec(ABC)", rel_err(&lhs, &rhs), inst)?;

        // vec(A·diag(d)·C) = (Cᵀ ⋄ A)·d
        let d = rand_mat(q, 1, inst, 4);
        let c2 = rand_mat(q, s, inst, 5);
        let lhs = vec(&a.scale_cols(d.as_slice()).unwrap().matmul(&c2).unwrap());
        let rhs = khatri_rao(&c2.transpose(), &a).unwrap().matmul(&d).unwrap();
        note("vec(A diag(d) C)", rel_err(&lhs, &rhs), inst)?;

        // Khatri-Rao columns are Kronecker products of columns
        let kr = khatri_rao(&a, &rand_mat(r, q, inst, 6)).unwrap();
        let b2 = rand_mat(r, q, inst, 6);
        for j in 0..q {
            let kj = kron(
                &ComplexMatrix::column(a.col(j).to_vec()),
                &ComplexMatrix::column(b2.col(j).to_vec()),
            );
            note(
                "khatri-rao column",
                rel_err(&kj, &ComplexMatrix::column(kr.col(j).to_vec())),
                inst,
            )?;
        }

        // unfolding oracle against the index formula
        let t =
            ComplexTensor3::fold_from_slices(&(0..r).map(|k| rand_mat(p, q, inst, 10 + k as u64)).collect::<Vec<_>>())
                .unwrap();
        let (u1, u2, u3) = (t.unfold(Mode::One), t.unfold(Mode::Two), t.unfold(Mode::Three));
        for i3 in 0..r {
            for i2 in 0..q {
                for i1 in 0..p {
                    let x = t.get(i1, i2, i3);
                    if u1[(i1, i2 + q * i3)] != x || u2[(i2, i1 + p * i3)] != x || u3[(i3, i1 + p * i2)] != x {
                        return Err(format!("instance {inst}: unfolding mismatch at ({i1},{i2},{i3})"));
                    }
                }
            }
        }

        // noiseless factorizations of both measurement tensors
        let n1 = sz(5) + 1;
        let n2 = sz(6);
        let dd = dims(sz(7), sz(8), n1, n2, n1 + n2, 1 + (inst as usize % (n1 * n2)), 1);
        let tr = build_dris_training(&dd).unwrap();
        let ch = DrisChannels::draw(&dd, &mut RngSeed::new(inst, 20).rng());
        let y = noiseless_tensor_dris(&ch, &tr).unwrap();
        let z_r = build_z_r(&ch.h_t, &ch.h_s, &tr).unwrap();
        note(
            "[Y]_(1) = H_R Z_R",
            rel_err(&y.unfold(Mode::One), &ch.h_r.matmul(&z_r).unwrap()),
            inst,
        )?;
        let z_t = build_z_t(&ch.h_r, &ch.h_s, &tr).unwrap();
        note(
            "[Y]_(2) = H_T^T Z_T",
            rel_err(&y.unfold(Mode::Two), &ch.h_t.transpose().matmul(&z_t).unwrap()),
            inst,
        )?;
        let z_s = build_z_s(&ch.h_t, &ch.h_r, &tr).unwrap();
        note(
            "vec([Y]_(3)) = Z_S vec(H_S)",
            rel_err(&vec(&y.unfold(Mode::Three)), &z_s.matmul(&vec(&ch.h_s)).unwrap()),
            inst,
        )?;

        let n = sz(9) + 2;
        let ds = dims(sz(10), sz(11), 1, 1, n, 1, 1 + inst as usize % n);
        let omega = build_sris_training(&ds).unwrap();
        let g = SrisChannels::draw(&ds, &mut RngSeed::new(inst, 21).rng());
        let x = noiseless_tensor_sris(&g, &omega).unwrap();
        let v_r = build_v_r(&g.g_t, &omega).unwrap();
        note(
            "[X]_(1) = G_R V_R",
            rel_err(&x.unfold(Mode::One), &g.g_r.matmul(&v_r).unwrap()),
            inst,
        )?;
        let v_t = build_v_t(&g.g_r, &omega).unwrap();
        note(
            "[X]_(2) = G_T^T V_T",
            rel_err(&x.unfold(Mode::Two), &g.g_t.transpose().matmul(&v_t).unwrap()),
            inst,
        )?;
    }
    Ok(format!("200 instances, worst relative error {worst:.2e}"))
}

fn orthonormality_error(m: &ComplexMatrix) -> f64 {
    m.adjoint_matmul(m)
        .unwrap()
        .max_abs_diff(&ComplexMatrix::identity(m.cols()))
}

fn training_orthogonality() -> Outcome {
    const N: usize = 40;
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for n1 in 1..N {
        let n2 = N - n1;
        let mut frames: Vec<usize> = [(2, 8), (2, 32), (8, 8), (8, 32)]
            .iter()
            .map(|&(m_t, m_r)| min_training_dris(&dims(m_t, m_r, n1, n2, N, 1, 1)) as usize)
            .chain([40, 80])
            .filter(|&i| i <= n1 * n2)
            .collect();
        frames.sort_unstable();
        frames.dedup();
        for i in frames {
            let tr = build_dris_training(&dims(2, 8, n1, n2, N, i, 1)).unwrap();
            let e = orthonormality_error(&tr.upsilon().unwrap());
            worst = worst.max(e);
            count += 1;
            if e > 1e-12 {
                return Err(format!("[{n1},{n2}] I={i}: Υ^H Υ off identity by {e:.3e}"));
            }
        }
    }
    for j in 1..=N {
        let e = orthonormality_error(&build_sris_training(&dims(2, 8, 1, 1, N, 1, j)).unwrap());
        worst = worst.max(e);
        count += 1;
        if e > 1e-12 {
            return Err(format!("J={j}: Ω^H Ω off identity by {e:.3e}"));
        }
    }
    Ok(format!("{count} designs, worst deviation {worst:.2e}"))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = write_config(
        dir.path(),
        "c8.toml",
        "schema_version = 1\nsnr_grid_db = [0.0, 15.0, inf]\ntrials = 8\n\
         [dims]\nm_t = 2\nm_r = 4\nn = 10\nsplits = [[6, 4], [4, 6]]\n\
         [training]\nmode = \"fixed\"\ni_frames = 8\nj_frames = 8\n[seed]\nmaster = 81\n",
    );
    let mut outputs = Vec::new();
    for t in ["1", "1", "2", "4"] {
        outputs.push(run_cli(&["nmse", "--config", &cfg, "--threads", t])?);
    }
    let other_seed = run_cli(&["nmse", "--config", &cfg, "--threads", "2", "--seed", "82"])?;
    if outputs.iter().any(|o| o != &outputs[0]) {
        return Err("CSV bytes differ between runs".into());
    }
    if other_seed == outputs[0] {
        return Err("changing the seed did not change the output".into());
    }
    Ok(format!(
        "{} runs with 1/1/2/4 threads byte-identical ({} bytes)",
        outputs.len(),
        outputs[0].len()
    ))
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1", "coefficient counts", coefficient_counts),
        ("2", "minimum-training oracle", overhead_oracle),
        ("2r", "split minimiser side", split_minimiser_side),
        ("3", "noiseless recovery", noiseless_recovery),
        ("4", "ALS monotonicity", monotonicity),
        ("5", "NMSE orderings", nmse_orderings),
        ("6", "tensor identities", tensor_identities),
        ("7", "training orthogonality", training_orthogonality),
        ("8", "determinism", determinism),
    ];
    let only: Option<Vec<String>> = std::env::var("RISCE_ACCEPTANCE")
        .ok()
        .map(|v| v.split(',').map(|s| s.trim().to_string()).collect());

    let mut failures = 0;
    for (id, name, f) in criteria {
        if only.as_ref().is_some_and(|o| !o.iter().any(|x| x == id)) {
            continue;
        }
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {id} {name} ({secs:.1} s): {msg}"),
            Err(msg) => {
                failures += 1;
                println!("FAIL {id} {name} ({secs:.1} s): {msg}");
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
