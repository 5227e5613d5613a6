//! The variety file format.
//!
//! ```text
//! # quadric cone X0 X1 - X2^2 over F_13
//! [field]
//! p = 13
//! k = 1            # optional, default 1
//! # mod = 1,1,1    # optional, ascending coefficients of the modulus
//!
//! [variety]
//! nvars = 4
//! dim = 2
//! singdim = 0      # optional, default -1 (nonsingular)
//! poly = 1:1,1,0,0 + 12:0,0,2,0
//! ```
//!
//! One `key = value` pair per line; `#` starts a comment. Every `poly` line
//! adds one generator in the term grammar of
//! [`SparsePolynomial::parse`](cipoints_core::SparsePolynomial::parse).

use std::fs;
use std::path::Path;

use cipoints_core::{GaloisField, SparsePolynomial, VarietyDescriptor};

use crate::error::{CliError, Result};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Field,
    Variety,
}

fn syntax(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_int<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| syntax(line, format!("`{key}` expects an integer, got `{value}`")))
}

fn set_once<T>(slot: &mut Option<T>, value: T, line: usize, key: &str) -> Result<()> {
    if slot.is_some() {
        return Err(syntax(line, format!("duplicate key `{key}`")));
    }
    *slot = Some(value);
    Ok(())
}

/// Parses a variety file held in memory.
pub fn parse_variety(text: &str) -> Result<VarietyDescriptor> {
    let mut section = Section::None;
    let (mut p, mut k, mut modulus) = (None::<u64>, None::<u32>, None::<Vec<u32>>);
    let (mut nvars, mut dim, mut singdim) = (None::<usize>, None::<i64>, None::<i64>);
    let mut polys: Vec<(usize, String)> = Vec::new();
    let mut seen_field = false;
    let mut seen_variety = false;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            section = match name.trim() {
                "field" if !seen_field => {
                    seen_field = true;
                    Section::Field
                }
                "variety" if !seen_variety => {
                    seen_variety = true;
                    Section::Variety
                }
                "field" | "variety" => {
                    return Err(syntax(line, format!("duplicate section [{name}]")))
                }
                other => return Err(syntax(line, format!("unknown section [{other}]"))),
            };
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(syntax(line, "expected `key = value`"));
        };
        let (key, value) = (key.trim(), value.trim());
        match (section, key) {
            (Section::Field, "p") => set_once(&mut p, parse_int(line, key, value)?, line, key)?,
            (Section::Field, "k") => set_once(&mut k, parse_int(line, key, value)?, line, key)?,
            (Section::Field, "mod") => {
                let coeffs = value
                    .split(',')
                    .map(|c| parse_int(line, key, c.trim()))
                    .collect::<Result<Vec<u32>>>()?;
                set_once(&mut modulus, coeffs, line, key)?
            }
            (Section::Variety, "nvars") => {
                set_once(&mut nvars, parse_int(line, key, value)?, line, key)?
            }
            (Section::Variety, "dim") => {
                set_once(&mut dim, parse_int(line, key, value)?, line, key)?
            }
            (Section::Variety, "singdim") => {
                set_once(&mut singdim, parse_int(line, key, value)?, line, key)?
            }
            (Section::Variety, "poly") => polys.push((line, value.to_string())),
            (Section::None, _) => return Err(syntax(line, "key outside of a section")),
            (_, other) => return Err(syntax(line, format!("unknown key `{other}`"))),
        }
    }

    let p = p.ok_or(CliError::MissingKey {
        section: "field",
        key: "p",
    })?;
    let nvars = nvars.ok_or(CliError::MissingKey {
        section: "variety",
        key: "nvars",
    })?;
    let dim = dim.ok_or(CliError::MissingKey {
        section: "variety",
        key: "dim",
    })?;
    let field = GaloisField::new(p, k.unwrap_or(1), modulus.as_deref())?;
    let generators = polys
        .into_iter()
        .map(|(line, text)| {
            SparsePolynomial::parse(&text, nvars, &field)
                .map_err(|e| CliError::Poly { line, source: e })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VarietyDescriptor::new(
        &field,
        nvars,
        generators,
        dim,
        singdim.unwrap_or(-1),
    )?)
}

/// Reads and parses a variety file.
pub fn load_variety(path: &Path) -> Result<VarietyDescriptor> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_variety(&text)
}
