//! Line-oriented spectrum files.
//!
//! ```text
//! # spectrum v1; n=2; volume=9.8696044010893580e0; problem=dirichlet; kind=euclidean-domain; label=box[..]
//! 2.0000000000000000e0 1
//! 5.0000000000000000e0 2
//! ```
//!
//! `kind=` is optional on read (defaults to `user-supplied`); `label=` must be
//! the last header field and runs to the end of the line. Records may be
//! separated by whitespace or a comma. Values are written with 17 significant
//! digits so that a save/load cycle is the identity.

use super::{DomainKind, DomainSpec, Level, Problem, Spectrum};
use crate::error::{Error, Result};
use std::io::Write;
use std::path::Path;

const MAGIC: &str = "# spectrum v1";

pub fn write_spectrum<W: Write>(spectrum: &Spectrum, mut out: W) -> Result<()> {
    let d = spectrum.domain();
    writeln!(
        out,
        "{MAGIC}; n={}; volume={:.16e}; problem={}; kind={}; label={}",
        d.dimension(),
        d.volume(),
        spectrum.problem().as_str(),
        d.kind().as_str(),
        d.label().replace(['\n', '\r'], " ")
    )?;
    for level in spectrum.certified_levels() {
        writeln!(out, "{:.16e} {}", level.value, level.multiplicity)?;
    }
    Ok(())
}

pub fn save_spectrum(spectrum: &Spectrum, path: impl AsRef<Path>) -> Result<()> {
    let mut buf = Vec::new();
    write_spectrum(spectrum, &mut buf)?;
    std::fs::write(path, buf)?;
    Ok(())
}

pub fn load_spectrum(path: impl AsRef<Path>) -> Result<Spectrum> {
    let text = std::fs::read_to_string(path)?;
    parse_spectrum(&text)
}

struct Header {
    n: usize,
    volume: f64,
    problem: Problem,
    kind: DomainKind,
    label: String,
}

fn parse_header(line: &str) -> Result<Header> {
    let rest = line
        .trim_end()
        .strip_prefix(MAGIC)
        .ok_or_else(|| Error::MissingHeader(format!("first line must start with '{MAGIC}'")))?;
    let mut n = None;
    let mut volume = None;
    let mut problem = None;
    let mut kind = DomainKind::UserSupplied;
    let mut label = String::new();
    let mut rest = rest.trim_start_matches(';').trim_start();
    while !rest.is_empty() {
        if let Some(l) = rest.strip_prefix("label=") {
            label = l.to_string();
            break;
        }
        let (field, tail) = match rest.find(';') {
            Some(i) => (&rest[..i], &rest[i + 1..]),
            None => (rest, ""),
        };
        rest = tail.trim_start();
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| Error::MissingHeader(format!("header field '{field}' is not key=value")))?;
        let value = value.trim();
        match key.trim() {
            "n" => {
                n = Some(
                    value
                        .parse::<usize>()
                        .map_err(|_| Error::MissingHeader(format!("bad dimension '{value}'")))?,
                )
            }
            "volume" => {
                volume = Some(
                    value
                        .parse::<f64>()
                        .map_err(|_| Error::MissingHeader(format!("bad volume '{value}'")))?,
                )
            }
            "problem" => {
                problem = Some(match value {
                    "dirichlet" => Problem::Dirichlet,
                    "closed" => Problem::Closed,
                    other => return Err(Error::MissingHeader(format!("unknown problem '{other}'"))),
                })
            }
            "kind" => {
                kind =
                    DomainKind::parse(value).ok_or_else(|| Error::MissingHeader(format!("unknown kind '{value}'")))?
            }
            other => return Err(Error::MissingHeader(format!("unknown header field '{other}'"))),
        }
    }
    Ok(Header {
        n: n.ok_or_else(|| Error::MissingHeader("missing n=".into()))?,
        volume: volume.ok_or_else(|| Error::MissingHeader("missing volume=".into()))?,
        problem: problem.ok_or_else(|| Error::MissingHeader("missing problem=".into()))?,
        kind,
        label,
    })
}

pub fn parse_spectrum(text: &str) -> Result<Spectrum> {
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((_, l)) if l.trim().is_empty() => continue,
            Some((_, l)) => break parse_header(l)?,
            None => return Err(Error::MissingHeader("empty file".into())),
        }
    };
    let domain = DomainSpec::new(header.n, header.volume, header.label, header.kind)
        .map_err(|e| Error::MissingHeader(e.to_string()))?;

    let mut levels: Vec<Level> = Vec::new();
    for (idx, raw) in lines {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        if fields.len() != 2 {
            return Err(Error::Malformed {
                line: line_no,
                reason: format!("expected '<eigenvalue> <multiplicity>', got {} fields", fields.len()),
            });
        }
        let value: f64 = fields[0].parse().map_err(|_| Error::Malformed {
            line: line_no,
            reason: format!("eigenvalue '{}' is not a number", fields[0]),
        })?;
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::Malformed {
                line: line_no,
                reason: format!("eigenvalue {value} must be finite and nonnegative"),
            });
        }
        let mult: i64 = fields[1].parse().map_err(|_| Error::Malformed {
            line: line_no,
            reason: format!("multiplicity '{}' is not an integer", fields[1]),
        })?;
        if mult <= 0 {
            return Err(Error::NonpositiveMultiplicity { line: line_no });
        }
        if let Some(prev) = levels.last() {
            if value <= prev.value {
                return Err(Error::Unsorted {
                    line: line_no,
                    value,
                    previous: prev.value,
                });
            }
        }
        levels.push(Level::new(value, mult as u64));
    }
    Spectrum::complete(domain, levels, header.problem)
}
