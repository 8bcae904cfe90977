//! Plain-text point-set files.
//!
//! ```text
//! d n
//! x_11 x_12 ... x_1d
//! ...
//! ```
//!
//! Lines starting with `#` are comments anywhere in the file. A comment of
//! the form `# label: <text>` sets the set's label. Coordinates are written
//! with 17 significant digits so that reading a written file is lossless.

use std::fmt::Write as _;
use std::fs;
use std::io::{BufRead, Write};
use std::path::Path;

use super::PointSet;
use crate::error::{Error, Result};

const LABEL_PREFIX: &str = "label:";

/// Formats a unit-interval value with 17 significant digits.
pub fn format_coord(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-5..=16).contains(&exp) {
        return format!("{v:.16e}");
    }
    let decimals = (16 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

pub fn write_points<W: Write>(points: &PointSet, mut sink: W) -> Result<()> {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", points.dim(), points.len());
    if !points.label().is_empty() {
        let _ = writeln!(out, "# {LABEL_PREFIX} {}", points.label());
    }
    for p in points.iter() {
        let line: Vec<String> = p.iter().map(|&c| format_coord(c)).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    sink.write_all(out.as_bytes())?;
    Ok(())
}

pub fn to_string(points: &PointSet) -> String {
    let mut buf = Vec::new();
    write_points(points, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("ascii output")
}

pub fn read_points<R: BufRead>(source: R) -> Result<PointSet> {
    let mut header: Option<(usize, usize)> = None;
    let mut label = String::new();
    let mut coords = Vec::new();
    for (lineno, line) in source.lines().enumerate() {
        let line = line?;
        let lineno = lineno + 1;
        let trimmed = line.trim();
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(text) = comment.trim().strip_prefix(LABEL_PREFIX) {
                if label.is_empty() {
                    label = text.trim().to_string();
                }
            }
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match header {
            None => {
                if fields.len() != 2 {
                    return Err(parse_err(lineno, "header must be `d n`"));
                }
                let d = parse_usize(fields[0], lineno)?;
                let n = parse_usize(fields[1], lineno)?;
                if d == 0 {
                    return Err(parse_err(lineno, "dimension must be >= 1"));
                }
                coords.reserve(d * n);
                header = Some((d, n));
            }
            Some((d, n)) => {
                if coords.len() == d * n {
                    return Err(parse_err(lineno, "more points than declared"));
                }
                if fields.len() != d {
                    return Err(parse_err(
                        lineno,
                        &format!("expected {d} coordinates, found {}", fields.len()),
                    ));
                }
                for f in fields {
                    let v: f64 = f
                        .parse()
                        .map_err(|_| parse_err(lineno, &format!("bad number `{f}`")))?;
                    coords.push(v);
                }
            }
        }
    }
    let (d, n) = header.ok_or_else(|| parse_err(0, "missing `d n` header"))?;
    if coords.len() != d * n {
        return Err(parse_err(
            0,
            &format!("declared {n} points, found {}", coords.len() / d),
        ));
    }
    Ok(PointSet::from_flat(d, coords)?.with_label(label))
}

pub fn read_file(path: impl AsRef<Path>) -> Result<PointSet> {
    let file = fs::File::open(path)?;
    read_points(std::io::BufReader::new(file))
}

pub fn write_file(points: &PointSet, path: impl AsRef<Path>) -> Result<()> {
    let file = fs::File::create(path)?;
    let mut w = std::io::BufWriter::new(file);
    write_points(points, &mut w)?;
    w.flush()?;
    Ok(())
}

fn parse_usize(s: &str, line: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| parse_err(line, &format!("bad integer `{s}`")))
}

fn parse_err(line: usize, msg: &str) -> Error {
    Error::Parse {
        line,
        msg: msg.to_string(),
    }
}
