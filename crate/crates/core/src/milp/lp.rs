//! CPLEX LP text format: a writer for [`MilpModel`] and a small reader
//! covering the subset of the format the writer produces.

use std::io::Write;

use crate::error::{Error, Result};
use crate::geometry::io::format_coord;

use super::{MilpModel, RowKind};

/// Longest line the writer emits before wrapping.
const LINE_WIDTH: usize = 240;

fn number(v: f64) -> String {
    if v < 0.0 {
        format!("-{}", format_coord(-v))
    } else {
        format_coord(v)
    }
}

struct Lines {
    out: String,
    line: usize,
}

impl Lines {
    fn new() -> Self {
        Lines {
            out: String::new(),
            line: 0,
        }
    }

    fn start(&mut self, head: &str) {
        self.out.push_str(head);
        self.line = head.len();
    }

    fn token(&mut self, tok: &str) {
        if self.line + 1 + tok.len() > LINE_WIDTH {
            self.out.push_str("\n   ");
            self.line = 3;
        }
        self.out.push(' ');
        self.out.push_str(tok);
        self.line += 1 + tok.len();
    }

    fn end(&mut self) {
        self.out.push('\n');
        self.line = 0;
    }
}

fn render(model: &MilpModel, relax: bool) -> String {
    let mut w = Lines::new();
    w.out.push_str("Minimize\n obj: z\nSubject To\n");
    for (k, row) in model.rows.iter().enumerate() {
        w.start(&format!(" c{}:", k + 1));
        let coef = format_coord(1.0 / model.m as f64);
        match row.kind {
            RowKind::Open | RowKind::Closed => {
                w.token("z");
                let sign = if row.kind == RowKind::Open { "+" } else { "-" };
                for &i in &row.support {
                    w.token(sign);
                    w.token(&coef);
                    w.token(&format!("x{}", i + 1));
                }
                w.token(">=");
                w.token(&number(row.rhs(model.m)));
            }
            RowKind::Cardinality => {
                for (t, &i) in row.support.iter().enumerate() {
                    if t > 0 {
                        w.token("+");
                    }
                    w.token(&format!("x{}", i + 1));
                }
                w.token("=");
                w.token(&model.m.to_string());
            }
        }
        w.end();
    }
    w.out.push_str("Bounds\n z >= 0\n");
    if relax {
        for i in 1..=model.n {
            w.out.push_str(&format!(" 0 <= x{i} <= 1\n"));
        }
    } else {
        w.out.push_str("Binaries\n");
        w.start("");
        for i in 1..=model.n {
            w.token(&format!("x{i}"));
        }
        w.end();
    }
    w.out.push_str("End\n");
    w.out
}

/// Writes the model. Coefficients carry 17 significant digits, so the
/// output is byte-stable and reads back exactly.
pub fn write_lp<W: Write>(model: &MilpModel, mut sink: W) -> Result<()> {
    sink.write_all(render(model, false).as_bytes())?;
    Ok(())
}

/// Writes the linear relaxation: binaries become `0 <= x <= 1`.
pub fn write_lp_relaxation<W: Write>(model: &MilpModel, mut sink: W) -> Result<()> {
    sink.write_all(render(model, true).as_bytes())?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpRow {
    pub name: String,
    /// `(coefficient, variable)` in file order.
    pub terms: Vec<(f64, String)>,
    /// One of `>=`, `<=`, `=`.
    pub sense: String,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LpProblem {
    pub minimize: bool,
    pub objective: Vec<(f64, String)>,
    pub rows: Vec<LpRow>,
    /// Bound lines, whitespace-normalized.
    pub bounds: Vec<String>,
    pub binaries: Vec<String>,
}

#[derive(PartialEq, Clone, Copy)]
enum Section {
    None,
    Objective,
    Constraints,
    Bounds,
    Binaries,
    End,
}

fn section_of(line: &str) -> Option<Section> {
    match line.to_ascii_lowercase().as_str() {
        "minimize" | "minimise" | "min" | "maximize" | "maximise" | "max" => {
            Some(Section::Objective)
        }
        "subject to" | "such that" | "st" | "s.t." => Some(Section::Constraints),
        "bounds" => Some(Section::Bounds),
        "binaries" | "binary" | "bin" => Some(Section::Binaries),
        "end" => Some(Section::End),
        _ => None,
    }
}

fn parse_error(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_number(tok: &str, line: usize) -> Result<f64> {
    tok.parse::<f64>()
        .map_err(|_| parse_error(line, format!("bad number `{tok}`")))
}

fn is_sense(tok: &str) -> bool {
    matches!(tok, ">=" | "<=" | "=" | "=>" | "=<" | ">" | "<")
}

/// Name, terms and optional `(sense, rhs)` of one parsed expression.
type Expression = (Option<String>, Vec<(f64, String)>, Option<(String, f64)>);

/// Parses `[name:] terms [sense rhs]` from tokens.
fn parse_expression(tokens: &[(usize, String)], want_sense: bool) -> Result<Expression> {
    let mut it = tokens.iter().peekable();
    let mut name = None;
    if let Some((_, t)) = it.peek() {
        if let Some(stripped) = t.strip_suffix(':') {
            name = Some(stripped.to_string());
            it.next();
        }
    }
    let mut terms = Vec::new();
    let mut sign = 1.0;
    let mut coef: Option<f64> = None;
    while let Some((line, t)) = it.next() {
        let line = *line;
        match t.as_str() {
            "+" => sign = 1.0,
            "-" => sign = -sign,
            s if is_sense(s) => {
                if !want_sense {
                    return Err(parse_error(line, "unexpected comparison"));
                }
                let (rl, rhs) = it
                    .next()
                    .ok_or_else(|| parse_error(line, "missing right-hand side"))?;
                let rhs = parse_number(rhs, *rl)?;
                if it.next().is_some() {
                    return Err(parse_error(line, "trailing tokens after right-hand side"));
                }
                let sense = match s {
                    "=>" | ">" => ">=",
                    "=<" | "<" => "<=",
                    other => other,
                };
                return Ok((name, terms, Some((sense.to_string(), rhs))));
            }
            s if s.starts_with(|c: char| c.is_ascii_digit() || c == '.')
                || (s.len() > 1 && s.starts_with(['-', '+'])) =>
            {
                if coef.is_some() {
                    return Err(parse_error(line, "two coefficients in a row"));
                }
                coef = Some(parse_number(s, line)?);
            }
            var => {
                terms.push((sign * coef.take().unwrap_or(1.0), var.to_string()));
                sign = 1.0;
            }
        }
    }
    if want_sense {
        let line = tokens.last().map_or(0, |t| t.0);
        return Err(parse_error(line, "constraint without comparison"));
    }
    Ok((name, terms, None))
}

/// Reads an LP file in the dialect written by [`write_lp`]. Comments start
/// with `\`.
pub fn read_lp(text: &str) -> Result<LpProblem> {
    let mut problem = LpProblem::default();
    let mut section = Section::None;
    let mut pending: Vec<(usize, String)> = Vec::new();
    let mut objective_tokens: Vec<(usize, String)> = Vec::new();

    let flush_row = |pending: &mut Vec<(usize, String)>, problem: &mut LpProblem| -> Result<()> {
        if pending.is_empty() {
            return Ok(());
        }
        let (name, terms, sense) = parse_expression(pending, true)?;
        let (sense, rhs) = sense.expect("constraints carry a comparison");
        problem.rows.push(LpRow {
            name: name.unwrap_or_else(|| format!("R{}", problem.rows.len() + 1)),
            terms,
            sense,
            rhs,
        });
        pending.clear();
        Ok(())
    };

    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('\\').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(next) = section_of(line) {
            if section == Section::Constraints {
                flush_row(&mut pending, &mut problem)?;
            }
            if next == Section::Objective {
                problem.minimize = line.to_ascii_lowercase().starts_with("min");
            }
            section = next;
            continue;
        }
        let tokens = line.split_whitespace().map(|t| (line_no, t.to_string()));
        match section {
            Section::None => return Err(parse_error(line_no, "content before any section")),
            Section::Objective => objective_tokens.extend(tokens),
            Section::Constraints => {
                // A new row starts at a `name:` token.
                for tok in tokens {
                    if tok.1.ends_with(':') && !pending.is_empty() {
                        flush_row(&mut pending, &mut problem)?;
                    }
                    let is_rhs_end = pending
                        .last()
                        .is_some_and(|(_, t): &(usize, String)| is_sense(t));
                    pending.push(tok);
                    if is_rhs_end {
                        flush_row(&mut pending, &mut problem)?;
                    }
                }
            }
            Section::Bounds => {
                let t: Vec<&str> = line.split_whitespace().collect();
                problem.bounds.push(t.join(" "));
            }
            Section::Binaries => problem.binaries.extend(tokens.map(|t| t.1)),
            Section::End => return Err(parse_error(line_no, "content after End")),
        }
    }
    if section == Section::Constraints {
        flush_row(&mut pending, &mut problem)?;
    }
    let (_, objective, _) = parse_expression(&objective_tokens, false)?;
    problem.objective = objective;
    Ok(problem)
}

#[cfg(test)]
mod tests {
    use super::super::build_model;
    use super::*;
    use crate::geometry::PointSet;

    fn model() -> MilpModel {
        let p = PointSet::from_points(2, [[0.1, 0.4], [0.2, 0.9], [0.7, 0.6], [0.8, 0.7]]).unwrap();
        build_model(&p, 2).unwrap()
    }

    fn text(model: &MilpModel) -> String {
        let mut buf = Vec::new();
        write_lp(model, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn layout() {
        let t = text(&model());
        assert!(
            t.starts_with("Minimize\n obj: z\nSubject To\n c1: z >= 0.040000000000000008\n"),
            "{t}"
        );
        assert!(t.contains(" c42: x1 + x2 + x3 + x4 = 2\n"));
        assert!(t.ends_with("Bounds\n z >= 0\nBinaries\n x1 x2 x3 x4\nEnd\n"));
        assert_eq!(t, text(&model()));
    }

    #[test]
    fn round_trip() {
        let m = model();
        let parsed = read_lp(&text(&m)).unwrap();
        assert!(parsed.minimize);
        assert_eq!(parsed.objective, vec![(1.0, "z".to_string())]);
        assert_eq!(parsed.rows.len(), m.rows.len());
        for (k, (row, lp)) in m.rows.iter().zip(&parsed.rows).enumerate() {
            assert_eq!(lp.name, format!("c{}", k + 1));
            assert_eq!(lp.rhs, row.rhs(m.m));
            let mut expected = Vec::new();
            if row.z_coefficient() != 0.0 {
                expected.push((1.0, "z".to_string()));
            }
            for &i in &row.support {
                expected.push((row.coefficient(m.m), format!("x{}", i + 1)));
            }
            assert_eq!(lp.terms, expected);
        }
        assert_eq!(parsed.binaries, vec!["x1", "x2", "x3", "x4"]);
    }

    #[test]
    fn wrapped_rows_read_back() {
        let p = PointSet::from_points(1, (1..=60).map(|i| [i as f64 / 61.0])).unwrap();
        let m = build_model(&p, 7).unwrap();
        let t = text(&m);
        assert!(t.lines().all(|l| l.len() <= LINE_WIDTH));
        let parsed = read_lp(&t).unwrap();
        let last = parsed.rows.last().unwrap();
        assert_eq!(last.terms.len(), 60);
        assert_eq!((last.sense.as_str(), last.rhs), ("=", 7.0));
    }

    #[test]
    fn relaxation_bounds() {
        let mut buf = Vec::new();
        write_lp_relaxation(&model(), &mut buf).unwrap();
        let parsed = read_lp(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert!(parsed.binaries.is_empty());
        assert_eq!(parsed.bounds[1], "0 <= x1 <= 1");
    }
}
