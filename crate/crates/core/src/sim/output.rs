//! CSV tables, per-trial dumps and the JSON metadata sidecar.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metrics::{Scenario, TrialRecord};

pub const NMSE_HEADER: [&str; 15] = [
    "scenario",
    "n1",
    "n2",
    "n",
    "m_t",
    "m_r",
    "i_frames",
    "j_frames",
    "snr_db",
    "trials",
    "nmse_paper",
    "nmse_mean",
    "nmse_std",
    "iters_mean",
    "wall_ms",
];

pub const OVERHEAD_HEADER: [&str; 8] = ["n1", "n2", "m_t", "m_r", "ell_dris", "ell_sris", "i_min", "j_min"];

pub const TRIALS_HEADER: [&str; 16] = [
    "scenario",
    "n1",
    "n2",
    "n",
    "m_t",
    "m_r",
    "i_frames",
    "j_frames",
    "snr_db",
    "trial",
    "seed",
    "stream",
    "nmse",
    "err_energy",
    "ref_energy",
    "iterations",
];

/// One aggregate row of an NMSE sweep. Fields that do not apply to a
/// scenario are 0 (`j_frames` for D-RIS; `n1`, `n2`, `i_frames` for S-RIS).
#[derive(Clone, Debug, PartialEq)]
pub struct NmseRow {
    pub scenario: Scenario,
    pub n1: usize,
    pub n2: usize,
    pub n: usize,
    pub m_t: usize,
    pub m_r: usize,
    pub i_frames: usize,
    pub j_frames: usize,
    pub snr_db: f64,
    pub trials: usize,
    pub nmse_paper: f64,
    pub nmse_mean: f64,
    pub nmse_std: f64,
    pub iters_mean: f64,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverheadRow {
    pub n1: usize,
    pub n2: usize,
    pub m_t: usize,
    pub m_r: usize,
    pub ell_dris: u64,
    pub ell_sris: u64,
    pub i_min: u64,
    pub j_min: u64,
}

// `Display` for f64 is the shortest string that parses back to the same
// value, and prints `inf` for the noiseless sentinel.
fn f(x: f64) -> String {
    format!("{x}")
}

impl NmseRow {
    fn record(&self) -> Vec<String> {
        vec![
            self.scenario.as_str().to_string(),
            self.n1.to_string(),
            self.n2.to_string(),
            self.n.to_string(),
            self.m_t.to_string(),
            self.m_r.to_string(),
            self.i_frames.to_string(),
            self.j_frames.to_string(),
            f(self.snr_db),
            self.trials.to_string(),
            f(self.nmse_paper),
            f(self.nmse_mean),
            f(self.nmse_std),
            f(self.iters_mean),
            f(self.wall_ms),
        ]
    }

    fn parse(rec: &csv::StringRecord) -> std::result::Result<Self, String> {
        let s = |i: usize| rec.get(i).ok_or_else(|| format!("missing column {}", NMSE_HEADER[i]));
        let u = |i: usize| -> std::result::Result<usize, String> {
            s(i)?.parse().map_err(|e| format!("{}: {e}", NMSE_HEADER[i]))
        };
        let x = |i: usize| -> std::result::Result<f64, String> {
            s(i)?.parse().map_err(|e| format!("{}: {e}", NMSE_HEADER[i]))
        };
        Ok(Self {
            scenario: s(0)?.parse().map_err(|e: Error| e.to_string())?,
            n1: u(1)?,
            n2: u(2)?,
            n: u(3)?,
            m_t: u(4)?,
            m_r: u(5)?,
            i_frames: u(6)?,
            j_frames: u(7)?,
            snr_db: x(8)?,
            trials: u(9)?,
            nmse_paper: x(10)?,
            nmse_mean: x(11)?,
            nmse_std: x(12)?,
            iters_mean: x(13)?,
            wall_ms: x(14)?,
        })
    }
}

impl OverheadRow {
    fn record(&self) -> Vec<String> {
        [
            self.n1 as u64,
            self.n2 as u64,
            self.m_t as u64,
            self.m_r as u64,
            self.ell_dris,
            self.ell_sris,
            self.i_min,
            self.j_min,
        ]
        .iter()
        .map(u64::to_string)
        .collect()
    }

    fn parse(rec: &csv::StringRecord) -> std::result::Result<Self, String> {
        let u = |i: usize| -> std::result::Result<u64, String> {
            rec.get(i)
                .ok_or_else(|| format!("missing column {}", OVERHEAD_HEADER[i]))?
                .parse()
                .map_err(|e| format!("{}: {e}", OVERHEAD_HEADER[i]))
        };
        let z = |i: usize| -> std::result::Result<usize, String> {
            usize::try_from(u(i)?).map_err(|e| format!("{}: {e}", OVERHEAD_HEADER[i]))
        };
        Ok(Self {
            n1: z(0)?,
            n2: z(1)?,
            m_t: z(2)?,
            m_r: z(3)?,
            ell_dris: u(4)?,
            ell_sris: u(5)?,
            i_min: u(6)?,
            j_min: u(7)?,
        })
    }
}

fn trial_record(r: &TrialRecord) -> Vec<String> {
    let d = &r.dims;
    let (n1, n2, i, j) = match r.scenario {
        Scenario::Dris => (d.n1, d.n2, d.i_frames, 0),
        Scenario::Sris => (0, 0, 0, d.j_frames),
    };
    vec![
        r.scenario.as_str().to_string(),
        n1.to_string(),
        n2.to_string(),
        d.n.to_string(),
        d.m_t.to_string(),
        d.m_r.to_string(),
        i.to_string(),
        j.to_string(),
        f(r.snr_db),
        r.trial_index.to_string(),
        r.seed.seed.to_string(),
        r.seed.stream_id.to_string(),
        f(r.nmse),
        f(r.err_energy),
        f(r.ref_energy),
        r.iterations.to_string(),
    ]
}

fn write_table<W: Write>(out: W, header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_to_io(e: csv::Error) -> std::io::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => io,
        other => std::io::Error::other(format!("{other:?}")),
    }
}

pub fn write_nmse_csv<W: Write>(out: W, rows: &[NmseRow]) -> std::io::Result<()> {
    write_table(out, &NMSE_HEADER, rows.iter().map(NmseRow::record)).map_err(csv_to_io)
}

pub fn write_overhead_csv<W: Write>(out: W, rows: &[OverheadRow]) -> std::io::Result<()> {
    write_table(out, &OVERHEAD_HEADER, rows.iter().map(OverheadRow::record)).map_err(csv_to_io)
}

pub fn write_trials_csv<W: Write>(out: W, records: &[TrialRecord]) -> std::io::Result<()> {
    write_table(out, &TRIALS_HEADER, records.iter().map(trial_record)).map_err(csv_to_io)
}

fn read_table<R: Read, T>(
    input: R,
    header: &[&str],
    parse: impl Fn(&csv::StringRecord) -> std::result::Result<T, String>,
) -> std::result::Result<Vec<T>, String> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let got = r.headers().map_err(|e| e.to_string())?.clone();
    if got.iter().ne(header.iter().copied()) {
        return Err(format!("unexpected header {:?}", got.iter().collect::<Vec<_>>()));
    }
    let mut rows = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| e.to_string())?;
        if rec.len() != header.len() {
            return Err(format!(
                "row {} has {} fields, expected {}",
                line + 1,
                rec.len(),
                header.len()
            ));
        }
        rows.push(parse(&rec).map_err(|e| format!("row {}: {e}", line + 1))?);
    }
    Ok(rows)
}

/// Parses an NMSE table; `origin` only labels errors.
pub fn parse_nmse_csv<R: Read>(input: R, origin: &Path) -> Result<Vec<NmseRow>> {
    read_table(input, &NMSE_HEADER, NmseRow::parse).map_err(|message| Error::Format {
        path: origin.to_owned(),
        message,
    })
}

pub fn parse_overhead_csv<R: Read>(input: R, origin: &Path) -> Result<Vec<OverheadRow>> {
    read_table(input, &OVERHEAD_HEADER, OverheadRow::parse).map_err(|message| Error::Format {
        path: origin.to_owned(),
        message,
    })
}

fn open(path: &Path) -> Result<std::fs::File> {
    std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn read_nmse_csv(path: &Path) -> Result<Vec<NmseRow>> {
    parse_nmse_csv(open(path)?, path)
}

pub fn read_overhead_csv(path: &Path) -> Result<Vec<OverheadRow>> {
    parse_overhead_csv(open(path)?, path)
}

/// Writes `bytes` to `path`, creating parent directories.
pub fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_owned(),
        source,
    };
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(io)?;
    }
    std::fs::write(path, bytes).map_err(io)
}

/// `results.csv` → `results.<suffix>`.
pub fn sidecar_path(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{stem}.{suffix}"))
}

/// Run metadata written next to every result table.
#[derive(Serialize)]
pub struct RunMeta<'a, C: Serialize> {
    pub artifact: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub config: &'a C,
    pub threads: usize,
    pub created_unix_s: u64,
    pub wall_s: f64,
    pub warnings: &'a [String],
}

pub fn write_meta<C: Serialize>(path: &Path, meta: &RunMeta<'_, C>) -> Result<()> {
    let text = serde_json::to_string_pretty(meta).map_err(|e| Error::Format {
        path: path.to_owned(),
        message: e.to_string(),
    })?;
    write_file(path, text.as_bytes())
}
