//! Per-term records for `gen`, in JSONL, CSV or a plain table.

use std::io::Write;

use edskit_core::primitive::{primitive_part_against_all, verdicts};
use edskit_core::somos::somos4;
use edskit_core::{EdsSequence, FamilyInstance};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::CliResult;

/// One sequence term. Big integers are decimal strings.
///
/// Somos-4 records have no numerator and no divisibility test, so `A` and
/// `fundprop_holds` are null there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub n: u64,
    #[serde(rename = "A")]
    pub a: Option<String>,
    #[serde(rename = "B")]
    pub b: String,
    pub has_primitive: bool,
    pub primitive_part: String,
    pub fundprop_holds: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
    Pretty,
}

pub fn eds_records(inst: &FamilyInstance, n: u64, digit_budget: u64) -> CliResult<Vec<TermRecord>> {
    let seq = EdsSequence::generate_with_budget(&inst.curve, &inst.p, n, digit_budget)?;
    Ok(seq
        .terms()
        .iter()
        .zip(verdicts(&seq))
        .map(|(term, v)| TermRecord {
            n: term.n,
            a: Some(term.a.to_string()),
            b: term.b.to_string(),
            has_primitive: v.has_primitive,
            primitive_part: v.primitive_part.to_string(),
            fundprop_holds: Some(v.fundprop_holds),
        })
        .collect())
}

pub fn somos_records(n: usize) -> CliResult<Vec<TermRecord>> {
    let seq = somos4(n.max(4), [1, 1, 1, 1])?;
    Ok((0..n)
        .map(|i| {
            let part = primitive_part_against_all(&seq.terms, i);
            TermRecord {
                n: i as u64 + 1,
                a: None,
                b: seq.terms[i].to_string(),
                has_primitive: part != BigUint::from(1u32),
                primitive_part: part.to_string(),
                fundprop_holds: None,
            }
        })
        .collect())
}

pub fn write_records(out: &mut dyn Write, records: &[TermRecord], format: Format) -> CliResult<()> {
    match format {
        Format::Jsonl => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                out.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in records {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Pretty => write_table(out, records)?,
    }
    Ok(())
}

fn abbreviate(s: &str) -> String {
    const KEEP: usize = 12;
    if s.len() <= 2 * KEEP + 8 {
        return s.to_string();
    }
    let digits = s.trim_start_matches('-').len();
    format!(
        "{}...{} ({digits} digits)",
        &s[..KEEP],
        &s[s.len() - KEEP..]
    )
}

fn write_table(out: &mut dyn Write, records: &[TermRecord]) -> CliResult<()> {
    let rows: Vec<[String; 6]> = records
        .iter()
        .map(|r| {
            [
                r.n.to_string(),
                r.a.as_deref().map(abbreviate).unwrap_or_else(|| "-".into()),
                abbreviate(&r.b),
                if r.has_primitive { "yes" } else { "no" }.into(),
                abbreviate(&r.primitive_part),
                r.fundprop_holds
                    .map(|b| if b { "yes" } else { "no" }.to_string())
                    .unwrap_or_else(|| "-".into()),
            ]
        })
        .collect();
    let header = ["n", "A", "B", "primitive", "primitive part", "divides"];
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[&str]| {
        cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(out, "{}", line(&header))?;
    for row in &rows {
        let cells: Vec<&str> = row.iter().map(String::as_str).collect();
        writeln!(out, "{}", line(&cells))?;
    }
    Ok(())
}

pub fn read_jsonl(input: &str) -> CliResult<Vec<TermRecord>> {
    input
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(Into::into))
        .collect()
}
