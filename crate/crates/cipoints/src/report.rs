//! CSV serialization.
//!
//! All files are UTF-8 with LF line endings and a header row; fields that
//! contain commas are double-quoted. Exact values are written in decimal,
//! irrational values in scientific notation with 12 significant digits.
//!
//! | report        | header                                        | row order                 |
//! |---------------|-----------------------------------------------|---------------------------|
//! | bounds        | `estimate,rhs,applicable,condition`           | estimate name             |
//! | verification  | `estimate,deviation,rhs,applicable,verdict`   | estimate name             |
//! | scan          | `key,value`                                   | fixed keys, then witnesses in tuple order |
//!
//! An estimate with no right-hand side for the given inputs has an empty
//! `rhs` field.

use std::io::Write;

use cipoints_core::bounds::{BoundReport, Verification};
use cipoints_core::sections::{FailWitness, ScanMode, ScanReport};
use cipoints_core::Surd;

use crate::error::Result;

pub const SIGNIFICANT_DIGITS: usize = 12;

fn writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn real(rhs: &Option<Surd>) -> String {
    rhs.as_ref()
        .map(|s| s.to_scientific(SIGNIFICANT_DIGITS))
        .unwrap_or_default()
}

pub fn write_bounds<W: Write>(out: W, report: &BoundReport) -> Result<()> {
    let mut w = writer(out);
    w.write_record(["estimate", "rhs", "applicable", "condition"])?;
    for row in &report.rows {
        w.write_record([
            row.estimate.name(),
            &real(&row.rhs),
            if row.applicable { "true" } else { "false" },
            &row.condition,
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_verification<W: Write>(out: W, verification: &Verification) -> Result<()> {
    let mut w = writer(out);
    w.write_record(["estimate", "deviation", "rhs", "applicable", "verdict"])?;
    for row in &verification.rows {
        w.write_record([
            row.estimate.name(),
            &row.deviation.to_string(),
            &real(&row.rhs),
            if row.applicable { "true" } else { "false" },
            row.verdict.label(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `gamma=(1,0,0,0) point=(0:1:0:0)`, one parenthesized covector per row of
/// the tuple, entries by their packed field index.
pub fn format_witness(witness: &FailWitness) -> String {
    let mut text = String::from("gamma=");
    for c in witness.gamma.covectors() {
        let entries: Vec<String> = c.iter().map(|x| x.index().to_string()).collect();
        text.push('(');
        text.push_str(&entries.join(","));
        text.push(')');
    }
    let coords: Vec<String> = witness
        .point
        .coords()
        .iter()
        .map(|x| x.index().to_string())
        .collect();
    text.push_str(" point=(");
    text.push_str(&coords.join(":"));
    text.push(')');
    text
}

/// The verdict a scan report carries: in affine mode the pass count must
/// reach the floor, in projective mode the failures must stay within the
/// `η` ceiling.
pub fn scan_check(report: &ScanReport) -> bool {
    match report.mode {
        ScanMode::Affine => num_bigint::BigUint::from(report.pass) >= report.floor,
        ScanMode::Projective => num_bigint::BigInt::from(report.fail) <= report.eta_ceiling,
    }
}

pub fn write_scan<W: Write>(out: W, report: &ScanReport) -> Result<()> {
    let mut w = writer(out);
    w.write_record(["key", "value"])?;
    let check = match (report.mode, scan_check(report)) {
        (ScanMode::Affine, true) => "PASS (pass >= floor)",
        (ScanMode::Affine, false) => "FAIL (pass < floor)",
        (ScanMode::Projective, true) => "PASS (fail <= eta_ceiling)",
        (ScanMode::Projective, false) => "FAIL (fail > eta_ceiling)",
    };
    let rows: [(&str, String); 13] = [
        ("mode", report.mode.label().to_string()),
        ("q", report.q.to_string()),
        ("s", report.s.to_string()),
        ("max_ext", report.max_ext.to_string()),
        ("total", report.total.to_string()),
        ("pass", report.pass.to_string()),
        ("fail", report.fail.to_string()),
        ("degenerate", report.degenerate.to_string()),
        ("bertini_degree", report.bertini_degree.to_string()),
        ("floor", report.floor.to_string()),
        ("eta_ceiling", report.eta_ceiling.to_string()),
        ("check", check.to_string()),
        ("witnesses", report.witnesses.len().to_string()),
    ];
    for (key, value) in &rows {
        w.write_record([*key, value.as_str()])?;
    }
    for (i, witness) in report.witnesses.iter().enumerate() {
        w.write_record([format!("witness_{}", i + 1), format_witness(witness)])?;
    }
    w.flush()?;
    Ok(())
}
