//! Deterministic text formats: an indented key-value tree for piecewise
//! solutions and header-rowed delimited tables for numeric data.
//!
//! Floats are written with 17 significant digits, so every `f64` survives a
//! write/parse round trip bit-exactly and repeated runs produce identical
//! bytes.

use crate::solution::{
    CaseLabel, ExitRecord, FrontCurve, FrontGeometry, PiecewiseSolution, RegionKind, State,
    StrengthLaw, TimeSlab,
};
use std::fmt::Write as _;
use thiserror::Error;

/// 17-significant-digit rendering; round-trips any finite `f64` exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{:.16e}", x)
}

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("unexpected end of document")]
    UnexpectedEnd,
}

pub fn write_solution(sol: &PiecewiseSolution) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "solution");
    let _ = writeln!(s, "  horizon {}", fmt_f64(sol.horizon));
    if let Some(c) = sol.case {
        let _ = writeln!(s, "  case {} {}", c.case, c.subcase);
    }
    for slab in &sol.slabs {
        let _ = writeln!(s, "  slab");
        let _ = writeln!(s, "    t_lo {}", fmt_f64(slab.t_lo));
        let _ = writeln!(s, "    t_hi {}", fmt_f64(slab.t_hi));
        for (i, region) in slab.regions.iter().enumerate() {
            write_region(&mut s, region);
            if i < slab.fronts.len() {
                write_front(&mut s, &slab.fronts[i]);
            }
        }
    }
    for e in &sol.exits {
        let _ = writeln!(s, "  exit");
        let _ = writeln!(s, "    time {}", fmt_f64(e.time));
        let _ = writeln!(s, "    mass {}", fmt_f64(e.mass));
    }
    s
}

fn write_region(s: &mut String, region: &RegionKind) {
    let _ = writeln!(s, "    region");
    match region {
        RegionKind::Constant(st) => {
            let _ = writeln!(s, "      kind constant");
            let _ = writeln!(s, "      u {}", fmt_f64(st.u));
            let _ = writeln!(s, "      rho {}", fmt_f64(st.rho));
        }
        RegionKind::Fan { center_x } => {
            let _ = writeln!(s, "      kind fan");
            let _ = writeln!(s, "      center_x {}", fmt_f64(*center_x));
        }
    }
}

fn write_front(s: &mut String, front: &FrontCurve) {
    let _ = writeln!(s, "    front");
    match front.geometry {
        FrontGeometry::Line { speed, intercept } => {
            let _ = writeln!(s, "      kind line");
            let _ = writeln!(s, "      speed {}", fmt_f64(speed));
            let _ = writeln!(s, "      intercept {}", fmt_f64(intercept));
        }
        FrontGeometry::SqrtCurve {
            center_x,
            u_const,
            coeff,
        } => {
            let _ = writeln!(s, "      kind sqrt");
            let _ = writeln!(s, "      center_x {}", fmt_f64(center_x));
            let _ = writeln!(s, "      u_const {}", fmt_f64(u_const));
            let _ = writeln!(s, "      coeff {}", fmt_f64(coeff));
        }
    }
    let _ = writeln!(s, "      t_start {}", fmt_f64(front.t_start));
    let _ = writeln!(s, "      t_end {}", fmt_f64(front.t_end));
    if let Some(a) = front.atom {
        let _ = writeln!(s, "      atom");
        let _ = writeln!(s, "        alpha {}", fmt_f64(a.alpha));
        let _ = writeln!(s, "        beta {}", fmt_f64(a.beta));
        let _ = writeln!(s, "        gamma {}", fmt_f64(a.gamma));
    }
}

struct Lines<'a> {
    items: Vec<(usize, usize, &'a str)>, // (indent, lineno, content)
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let mut items = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let trimmed = raw.trim_end();
            if trimmed.trim().is_empty() || trimmed.trim_start().starts_with('#') {
                continue;
            }
            let indent = trimmed.len() - trimmed.trim_start().len();
            items.push((indent, i + 1, trimmed.trim_start()));
        }
        Lines { items, pos: 0 }
    }

    fn peek(&self) -> Option<(usize, usize, &'a str)> {
        self.items.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<(usize, usize, &'a str)> {
        let it = self.items.get(self.pos).copied();
        if it.is_some() {
            self.pos += 1;
        }
        it
    }
}

fn parse_f64(tok: &str, line: usize) -> Result<f64, ParseError> {
    tok.parse::<f64>().map_err(|_| ParseError::Malformed {
        line,
        msg: format!("bad float {tok:?}"),
    })
}

fn key_fields<'a>(
    lines: &mut Lines<'a>,
    indent: usize,
) -> Result<Vec<(usize, &'a str, &'a str)>, ParseError> {
    let mut out = Vec::new();
    while let Some((ind, lineno, content)) = lines.peek() {
        if ind < indent {
            break;
        }
        if ind > indent {
            return Err(ParseError::Malformed {
                line: lineno,
                msg: "unexpected indentation".into(),
            });
        }
        lines.next();
        let (key, rest) = match content.split_once(' ') {
            Some((k, r)) => (k, r.trim()),
            None => (content, ""),
        };
        out.push((lineno, key, rest));
    }
    Ok(out)
}

pub fn parse_solution(text: &str) -> Result<PiecewiseSolution, ParseError> {
    let mut lines = Lines::new(text);
    let (_, first_line, head) = lines.next().ok_or(ParseError::UnexpectedEnd)?;
    if head != "solution" {
        return Err(ParseError::Malformed {
            line: first_line,
            msg: "expected 'solution' header".into(),
        });
    }
    let mut horizon = None;
    let mut case = None;
    let mut slabs = Vec::new();
    let mut exits = Vec::new();
    while let Some((ind, lineno, content)) = lines.next() {
        if ind != 2 {
            return Err(ParseError::Malformed {
                line: lineno,
                msg: "expected two-space indentation".into(),
            });
        }
        let (key, rest) = content.split_once(' ').unwrap_or((content, ""));
        match key {
            "horizon" => horizon = Some(parse_f64(rest.trim(), lineno)?),
            "case" => {
                let mut it = rest.split_whitespace();
                let c = it.next().and_then(|t| t.parse::<u8>().ok());
                let s = it.next().and_then(|t| t.parse::<u8>().ok());
                match (c, s) {
                    (Some(c), Some(s)) => case = Some(CaseLabel { case: c, subcase: s }),
                    _ => {
                        return Err(ParseError::Malformed {
                            line: lineno,
                            msg: "bad case label".into(),
                        })
                    }
                }
            }
            "slab" => slabs.push(parse_slab(&mut lines)?),
            "exit" => {
                let fields = key_fields(&mut lines, 4)?;
                let mut time = None;
                let mut mass = None;
                for (l, k, v) in fields {
                    match k {
                        "time" => time = Some(parse_f64(v, l)?),
                        "mass" => mass = Some(parse_f64(v, l)?),
                        _ => {
                            return Err(ParseError::Malformed {
                                line: l,
                                msg: format!("unknown exit key {k:?}"),
                            })
                        }
                    }
                }
                exits.push(ExitRecord {
                    time: time.ok_or(ParseError::UnexpectedEnd)?,
                    mass: mass.ok_or(ParseError::UnexpectedEnd)?,
                });
            }
            _ => {
                return Err(ParseError::Malformed {
                    line: lineno,
                    msg: format!("unknown solution key {key:?}"),
                })
            }
        }
    }
    Ok(PiecewiseSolution {
        horizon: horizon.ok_or(ParseError::UnexpectedEnd)?,
        slabs,
        exits,
        case,
    })
}

fn parse_slab(lines: &mut Lines<'_>) -> Result<TimeSlab, ParseError> {
    let mut t_lo = None;
    let mut t_hi = None;
    let mut regions = Vec::new();
    let mut fronts = Vec::new();
    while let Some((ind, lineno, content)) = lines.peek() {
        if ind < 4 {
            break;
        }
        lines.next();
        let (key, rest) = content.split_once(' ').unwrap_or((content, ""));
        match (ind, key) {
            (4, "t_lo") => t_lo = Some(parse_f64(rest.trim(), lineno)?),
            (4, "t_hi") => t_hi = Some(parse_f64(rest.trim(), lineno)?),
            (4, "region") => regions.push(parse_region(lines)?),
            (4, "front") => fronts.push(parse_front(lines)?),
            _ => {
                return Err(ParseError::Malformed {
                    line: lineno,
                    msg: format!("unknown slab entry {key:?}"),
                })
            }
        }
    }
    Ok(TimeSlab {
        t_lo: t_lo.ok_or(ParseError::UnexpectedEnd)?,
        t_hi: t_hi.ok_or(ParseError::UnexpectedEnd)?,
        fronts,
        regions,
    })
}

fn parse_region(lines: &mut Lines<'_>) -> Result<RegionKind, ParseError> {
    let fields = key_fields(lines, 6)?;
    let mut kind = "";
    let mut u = None;
    let mut rho = None;
    let mut center_x = None;
    for (l, k, v) in fields {
        match k {
            "kind" => kind = v,
            "u" => u = Some(parse_f64(v, l)?),
            "rho" => rho = Some(parse_f64(v, l)?),
            "center_x" => center_x = Some(parse_f64(v, l)?),
            _ => {
                return Err(ParseError::Malformed {
                    line: l,
                    msg: format!("unknown region key {k:?}"),
                })
            }
        }
    }
    match kind {
        "constant" => Ok(RegionKind::Constant(State::new(
            u.ok_or(ParseError::UnexpectedEnd)?,
            rho.ok_or(ParseError::UnexpectedEnd)?,
        ))),
        "fan" => Ok(RegionKind::Fan {
            center_x: center_x.ok_or(ParseError::UnexpectedEnd)?,
        }),
        other => Err(ParseError::Malformed {
            line: 0,
            msg: format!("unknown region kind {other:?}"),
        }),
    }
}

fn parse_front(lines: &mut Lines<'_>) -> Result<FrontCurve, ParseError> {
    let mut kind = "";
    let mut vals: Vec<(&str, f64)> = Vec::new();
    let mut atom = None;
    while let Some((ind, lineno, content)) = lines.peek() {
        if ind < 6 {
            break;
        }
        lines.next();
        let (key, rest) = content.split_once(' ').unwrap_or((content, ""));
        if ind == 6 && key == "atom" {
            let fields = key_fields(lines, 8)?;
            let mut a = [None; 3];
            for (l, k, v) in fields {
                let idx = match k {
                    "alpha" => 0,
                    "beta" => 1,
                    "gamma" => 2,
                    _ => {
                        return Err(ParseError::Malformed {
                            line: l,
                            msg: format!("unknown atom key {k:?}"),
                        })
                    }
                };
                a[idx] = Some(parse_f64(v, l)?);
            }
            atom = Some(StrengthLaw::new(
                a[0].ok_or(ParseError::UnexpectedEnd)?,
                a[1].ok_or(ParseError::UnexpectedEnd)?,
                a[2].ok_or(ParseError::UnexpectedEnd)?,
            ));
        } else if ind == 6 && key == "kind" {
            kind = rest;
        } else if ind == 6 {
            vals.push((key, parse_f64(rest.trim(), lineno)?));
        } else {
            return Err(ParseError::Malformed {
                line: lineno,
                msg: "unexpected indentation in front".into(),
            });
        }
    }
    let get = |name: &str| -> Result<f64, ParseError> {
        vals.iter()
            .find(|(k, _)| *k == name)
            .map(|(_, v)| *v)
            .ok_or(ParseError::UnexpectedEnd)
    };
    let geometry = match kind {
        "line" => FrontGeometry::Line {
            speed: get("speed")?,
            intercept: get("intercept")?,
        },
        "sqrt" => FrontGeometry::SqrtCurve {
            center_x: get("center_x")?,
            u_const: get("u_const")?,
            coeff: get("coeff")?,
        },
        other => {
            return Err(ParseError::Malformed {
                line: 0,
                msg: format!("unknown front kind {other:?}"),
            })
        }
    };
    Ok(FrontCurve {
        geometry,
        t_start: get("t_start")?,
        t_end: get("t_end")?,
        atom,
    })
}

/// Header-rowed, space-delimited numeric table.
pub fn write_table(headers: &[&str], rows: &[Vec<f64>]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", headers.join(" "));
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| fmt_f64(*v)).collect();
        let _ = writeln!(s, "{}", cells.join(" "));
    }
    s
}

/// Parse a table written by [`write_table`].
pub fn read_table(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>), ParseError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(ParseError::UnexpectedEnd)?;
    let headers: Vec<String> = header.split_whitespace().map(String::from).collect();
    let mut rows = Vec::new();
    for (i, line) in lines {
        let mut row = Vec::new();
        for tok in line.split_whitespace() {
            row.push(parse_f64(tok, i + 1)?);
        }
        if row.len() != headers.len() {
            return Err(ParseError::Malformed {
                line: i + 1,
                msg: format!("expected {} columns, got {}", headers.len(), row.len()),
            });
        }
        rows.push(row);
    }
    Ok((headers, rows))
}
