//! Batch runs of the Zsigmondy pipeline over a parameter range.

use std::io::Write;
use std::ops::RangeInclusive;
use std::time::Instant;

use edskit_core::number_theory::is_squarefree;
use edskit_core::{zsigmondy_bound, FamilyInstance, FamilyKind, ZsigmondyOptions, ZsigmondyReport};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Parses `a..b` or `a..=b` (both inclusive) or a single value.
pub fn parse_t_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let s = s.trim();
    let num = |v: &str| {
        v.trim()
            .parse::<u64>()
            .map_err(|_| format!("bad T-range bound {v:?}"))
    };
    match s.split_once("..") {
        Some((a, b)) => Ok(num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(s)?;
            Ok(v..=v)
        }
    }
}

/// Parameters from `range` the family accepts; squarefree only for congruent curves.
pub fn admissible_parameters(kind: FamilyKind, range: RangeInclusive<u64>) -> Vec<u64> {
    range
        .filter(|&t| t >= kind.min_t())
        .filter(|&t| kind != FamilyKind::Congruent || is_squarefree(t))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum SweepOutcome {
    Ok { report: Box<ZsigmondyReport> },
    Error { error: String, exit_code: i32 },
}

/// One instance of a sweep; the JSONL line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub family: FamilyKind,
    pub t: u64,
    #[serde(flatten)]
    pub outcome: SweepOutcome,
    #[serde(skip)]
    pub wall_ms: u128,
}

/// The CSV summary row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub family: String,
    #[serde(rename = "T")]
    pub t: u64,
    pub status: &'static str,
    pub point: Option<String>,
    pub point_class: Option<String>,
    pub hhat_lo: Option<f64>,
    pub hhat_hi: Option<f64>,
    pub candidate_even_max: Option<u64>,
    pub candidate_odd_max: Option<u64>,
    #[serde(rename = "Z")]
    pub z: Option<u64>,
    #[serde(rename = "Ze")]
    pub ze: Option<u64>,
    #[serde(rename = "Zo")]
    pub zo: Option<u64>,
    pub certified_even: Option<bool>,
    pub certified_odd: Option<bool>,
    pub certified: Option<bool>,
    pub error: Option<String>,
    pub wall_ms: Option<u128>,
}

impl SweepEntry {
    pub fn report(&self) -> Option<&ZsigmondyReport> {
        match &self.outcome {
            SweepOutcome::Ok { report } => Some(report),
            SweepOutcome::Error { .. } => None,
        }
    }

    pub fn row(&self, with_timing: bool) -> SweepRow {
        let r = self.report();
        SweepRow {
            family: self.family.to_string(),
            t: self.t,
            status: if r.is_some() { "ok" } else { "error" },
            point: r.map(|r| r.point.clone()),
            point_class: r.map(|r| r.point_class.to_string()),
            hhat_lo: r.and_then(|r| r.hhat).map(|h| h.lo),
            hhat_hi: r.and_then(|r| r.hhat).map(|h| h.hi),
            candidate_even_max: r.and_then(|r| r.candidate_even_max),
            candidate_odd_max: r.and_then(|r| r.candidate_odd_max),
            z: r.map(|r| r.verified_z),
            ze: r.map(|r| r.verified_ze),
            zo: r.map(|r| r.verified_zo),
            certified_even: r.map(|r| r.certified_even),
            certified_odd: r.map(|r| r.certified_odd),
            certified: r.map(|r| r.certified),
            error: match &self.outcome {
                SweepOutcome::Error { error, .. } => Some(error.clone()),
                SweepOutcome::Ok { .. } => None,
            },
            wall_ms: with_timing.then_some(self.wall_ms),
        }
    }
}

fn run_one(kind: FamilyKind, t: u64, opts: &ZsigmondyOptions) -> SweepEntry {
    let start = Instant::now();
    let result =
        FamilyInstance::instantiate(kind, Some(t)).and_then(|inst| zsigmondy_bound(&inst, opts));
    let outcome = match result {
        Ok(report) => SweepOutcome::Ok {
            report: Box::new(report),
        },
        Err(e) => SweepOutcome::Error {
            exit_code: CliError::from(e.clone()).exit_code(),
            error: e.to_string(),
        },
    };
    SweepEntry {
        family: kind,
        t,
        outcome,
        wall_ms: start.elapsed().as_millis(),
    }
}

/// Runs every admissible parameter on up to `jobs` threads; results come back in `T` order.
pub fn sweep(
    kind: FamilyKind,
    range: RangeInclusive<u64>,
    jobs: usize,
    opts: &ZsigmondyOptions,
) -> CliResult<Vec<SweepEntry>> {
    if !kind.takes_parameter() {
        return Err(CliError::Usage(format!("{kind} has no parameter to sweep")));
    }
    let ts = admissible_parameters(kind, range);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(pool.install(|| ts.par_iter().map(|&t| run_one(kind, t, opts)).collect()))
}

pub fn write_csv(out: &mut dyn Write, entries: &[SweepEntry], with_timing: bool) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    if entries.is_empty() {
        w.write_record(SWEEP_COLUMNS)?;
    }
    for e in entries {
        w.serialize(e.row(with_timing))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_jsonl(out: &mut dyn Write, entries: &[SweepEntry]) -> CliResult<()> {
    for e in entries {
        serde_json::to_writer(&mut *out, e)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub const SWEEP_COLUMNS: [&str; 17] = [
    "family",
    "T",
    "status",
    "point",
    "point_class",
    "hhat_lo",
    "hhat_hi",
    "candidate_even_max",
    "candidate_odd_max",
    "Z",
    "Ze",
    "Zo",
    "certified_even",
    "certified_odd",
    "certified",
    "error",
    "wall_ms",
];
