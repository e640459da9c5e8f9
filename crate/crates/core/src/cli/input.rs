//! Outline input: the JSON curve document or SVG path data restricted to
//! absolute `M`, `L`, `C` and `Z`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{ClosedCurve, CubicSegment, GeomError, Point2};
use crate::pipeline::CurveRecord;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutlineDocument {
    pub curves: Vec<CurveRecord>,
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("invalid SVG: {0}")]
    Xml(String),
    #[error("curve {index}: {source}")]
    Curve { index: usize, source: GeomError },
    #[error("path data at byte {offset}: {message}")]
    PathData { offset: usize, message: String },
    #[error("input contains no curves")]
    NoCurves,
}

impl OutlineDocument {
    pub fn from_curves(curves: &[ClosedCurve]) -> Self {
        Self { curves: curves.iter().map(CurveRecord::from_curve).collect() }
    }

    pub fn to_curves(&self) -> Result<Vec<ClosedCurve>, InputError> {
        if self.curves.is_empty() {
            return Err(InputError::NoCurves);
        }
        self.curves
            .iter()
            .enumerate()
            .map(|(index, c)| c.to_curve().map_err(|source| InputError::Curve { index, source }))
            .collect()
    }
}

pub fn read_file(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path)
        .map_err(|e| InputError::Io { path: path.display().to_string(), message: e.to_string() })
}

/// Reads curves from `path`; a `.svg` extension selects SVG, anything else JSON.
pub fn load_curves(path: &Path) -> Result<Vec<ClosedCurve>, InputError> {
    let text = read_file(path)?;
    let is_svg = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("svg"));
    if is_svg {
        parse_svg(&text)
    } else {
        parse_outline_json(&text)
    }
}

pub fn parse_outline_json(text: &str) -> Result<Vec<ClosedCurve>, InputError> {
    let doc: OutlineDocument = serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))?;
    doc.to_curves()
}

/// Accepts either a full SVG document (every `<path d=...>` is read, in document
/// order) or bare path data.
pub fn parse_svg(text: &str) -> Result<Vec<ClosedCurve>, InputError> {
    if !text.trim_start().starts_with('<') {
        return parse_path_data(text);
    }
    let doc = roxmltree::Document::parse(text).map_err(|e| InputError::Xml(e.to_string()))?;
    let mut curves = Vec::new();
    for node in doc.descendants().filter(|n| n.has_tag_name("path")) {
        if let Some(d) = node.attribute("d") {
            curves.extend(parse_path_data(d)?);
        }
    }
    if curves.is_empty() {
        return Err(InputError::NoCurves);
    }
    Ok(curves)
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_separators(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_whitespace() || self.s[self.pos] == b',') {
            self.pos += 1;
        }
    }

    fn err(&self, message: impl Into<String>) -> InputError {
        InputError::PathData { offset: self.pos, message: message.into() }
    }

    fn peek_command(&mut self) -> Option<u8> {
        self.skip_separators();
        self.s.get(self.pos).copied().filter(|c| c.is_ascii_alphabetic() && *c != b'e' && *c != b'E')
    }

    fn at_number(&mut self) -> bool {
        self.skip_separators();
        matches!(self.s.get(self.pos), Some(c) if c.is_ascii_digit() || matches!(c, b'-' | b'+' | b'.'))
    }

    fn number(&mut self) -> Result<f64, InputError> {
        self.skip_separators();
        let start = self.pos;
        let s = self.s;
        let mut i = self.pos;
        if i < s.len() && matches!(s[i], b'+' | b'-') {
            i += 1;
        }
        let mut seen_dot = false;
        while i < s.len() && (s[i].is_ascii_digit() || (s[i] == b'.' && !seen_dot)) {
            seen_dot |= s[i] == b'.';
            i += 1;
        }
        if i < s.len() && matches!(s[i], b'e' | b'E') {
            let mut j = i + 1;
            if j < s.len() && matches!(s[j], b'+' | b'-') {
                j += 1;
            }
            if j < s.len() && s[j].is_ascii_digit() {
                while j < s.len() && s[j].is_ascii_digit() {
                    j += 1;
                }
                i = j;
            }
        }
        let text = std::str::from_utf8(&s[start..i]).map_err(|_| self.err("invalid UTF-8"))?;
        let v: f64 = text.parse().map_err(|_| self.err(format!("expected a number, found {text:?}")))?;
        if !v.is_finite() {
            return Err(self.err("non-finite coordinate"));
        }
        self.pos = i;
        Ok(v)
    }

    fn point(&mut self) -> Result<Point2, InputError> {
        Ok(Point2::new(self.number()?, self.number()?))
    }
}

/// Parses path data into closed curves. `L` becomes a straight cubic; `Z`
/// appends a straight closing segment unless the subpath already ends exactly at
/// its start. Subpaths must be closed explicitly with `Z`.
pub fn parse_path_data(d: &str) -> Result<Vec<ClosedCurve>, InputError> {
    let mut lx = Lexer { s: d.as_bytes(), pos: 0 };
    let mut curves = Vec::new();
    let mut current: Option<(Point2, Point2, Vec<CubicSegment>)> = None;
    let mut command: Option<u8> = None;

    loop {
        let cmd = match lx.peek_command() {
            Some(c) => {
                lx.pos += 1;
                c
            }
            None if lx.pos >= lx.s.len() => break,
            None => match command {
                // Implicit repetition of the previous command; pairs after M are lines.
                Some(b'M') | Some(b'L') if lx.at_number() => b'L',
                Some(b'C') if lx.at_number() => b'C',
                _ => return Err(lx.err("expected a command")),
            },
        };
        match cmd {
            b'M' => {
                if current.is_some() {
                    return Err(lx.err("subpath not closed with Z before M"));
                }
                let p = lx.point()?;
                current = Some((p, p, Vec::new()));
            }
            b'L' | b'C' => {
                let (_, pen, segs) = current.as_mut().ok_or_else(|| lx.err("drawing command before M"))?;
                let seg = if cmd == b'L' {
                    CubicSegment::line(*pen, lx.point()?)
                } else {
                    CubicSegment::new(*pen, lx.point()?, lx.point()?, lx.point()?)
                };
                *pen = seg.p3;
                segs.push(seg);
            }
            b'Z' => {
                let (start, pen, mut segs) = current.take().ok_or_else(|| lx.err("Z without an open subpath"))?;
                if pen != start {
                    segs.push(CubicSegment::line(pen, start));
                }
                let index = curves.len();
                let curve = ClosedCurve::new(segs).map_err(|source| InputError::Curve { index, source })?;
                curves.push(curve);
            }
            other => {
                let c = other as char;
                let why = if other.is_ascii_lowercase() {
                    "relative commands are not supported"
                } else {
                    "only M, L, C and Z are supported"
                };
                return Err(lx.err(format!("command {c:?}: {why}")));
            }
        }
        command = Some(cmd);
    }
    if current.is_some() {
        return Err(InputError::PathData { offset: d.len(), message: "subpath not closed with Z".into() });
    }
    if curves.is_empty() {
        return Err(InputError::NoCurves);
    }
    Ok(curves)
}
