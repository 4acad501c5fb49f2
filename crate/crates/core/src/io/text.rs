//! Plain-text and TOML formats for transforms, focus maps, landmark tables and curves.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::focus::{FocusMap, SplineCurve};
use crate::imaging::AffineTransform;

/// Header tag of the focus map text format.
pub const FOCUS_MAGIC: &str = "FOCUSMAP";

/// `a11 a12 a21 a22 tx ty` on a single line.
pub fn transform_to_record(t: &AffineTransform) -> String {
    let p = t.to_params();
    format!("{} {} {} {} {} {}\n", p[0], p[1], p[2], p[3], p[4], p[5])
}

pub fn parse_transform_record(s: &str) -> Result<AffineTransform> {
    let fields: Vec<f64> = s
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .flat_map(str::split_whitespace)
        .map(|f| f.parse::<f64>().map_err(|e| Error::Parse(format!("transform field '{f}': {e}"))))
        .collect::<Result<_>>()?;
    let p: [f64; 6] = fields
        .try_into()
        .map_err(|v: Vec<f64>| Error::Parse(format!("transform record needs 6 fields, got {}", v.len())))?;
    AffineTransform::from_params(p)
}

#[derive(Serialize, Deserialize)]
struct TransformDoc {
    a11: f64,
    a12: f64,
    a21: f64,
    a22: f64,
    tx: f64,
    ty: f64,
}

/// TOML document with fields `a11 a12 a21 a22 tx ty`.
pub fn transform_to_toml(t: &AffineTransform) -> String {
    let doc = TransformDoc {
        a11: t.a11,
        a12: t.a12,
        a21: t.a21,
        a22: t.a22,
        tx: t.tx,
        ty: t.ty,
    };
    toml::to_string(&doc).expect("plain struct serializes")
}

pub fn parse_transform_toml(s: &str) -> Result<AffineTransform> {
    let d: TransformDoc = toml::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    AffineTransform::new(d.a11, d.a12, d.a21, d.a22, d.tx, d.ty)
}

/// Accepts either the single-record or the TOML form.
pub fn parse_transform(s: &str) -> Result<AffineTransform> {
    if s.contains('=') {
        parse_transform_toml(s)
    } else {
        parse_transform_record(s)
    }
}

/// `FOCUSMAP width height sum-normalized`, then one line of weights per row.
///
/// Weights are written in shortest round-trip decimal form, so reading the
/// file back reproduces them bit for bit.
pub fn focus_to_text(f: &FocusMap) -> String {
    let mut out = format!("{FOCUS_MAGIC} {} {} sum-normalized\n", f.width(), f.height());
    for row in f.weights().chunks_exact(f.width()) {
        let mut first = true;
        for w in row {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{w:?}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_focus_text(s: &str) -> Result<FocusMap> {
    let mut tokens = s.split_whitespace();
    if tokens.next() != Some(FOCUS_MAGIC) {
        return Err(Error::Parse(format!("focus map must start with {FOCUS_MAGIC}")));
    }
    let mut dim = |name: &str| -> Result<usize> {
        tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse(format!("focus map header: bad {name}")))
    };
    let width = dim("width")?;
    let height = dim("height")?;
    if tokens.next() != Some("sum-normalized") {
        return Err(Error::Parse("focus map header must declare sum-normalized".into()));
    }
    let weights: Vec<f64> = tokens
        .map(|t| t.parse::<f64>().map_err(|e| Error::Parse(format!("focus weight '{t}': {e}"))))
        .collect::<Result<_>>()?;
    FocusMap::from_normalized(width, height, weights)
}

/// `x,y` per line; blank lines and `#` comments are skipped.
pub fn parse_points(s: &str) -> Result<Vec<(f64, f64)>> {
    s.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (x, y) = l
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected 'x,y', got '{l}'")))?;
            let parse = |v: &str| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("coordinate '{v}': {e}")))
            };
            Ok((parse(x)?, parse(y)?))
        })
        .collect()
}

pub fn points_to_text(points: &[(f64, f64)]) -> String {
    points.iter().map(|(x, y)| format!("{x},{y}\n")).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedCurve {
    pub name: String,
    pub points: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct CurveDocument {
    #[serde(default, rename = "curve")]
    pub curves: Vec<NamedCurve>,
}

impl CurveDocument {
    pub fn to_splines(&self) -> Result<Vec<SplineCurve>> {
        self.curves
            .iter()
            .map(|c| SplineCurve::new(c.points.iter().map(|p| (p[0], p[1])).collect()))
            .collect()
    }
}

/// Multiple named curves as `[[curve]]` tables with `name` and `points = [[x, y], ...]`.
pub fn parse_curve_document(s: &str) -> Result<CurveDocument> {
    toml::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn curve_document_to_toml(doc: &CurveDocument) -> String {
    toml::to_string(doc).expect("plain struct serializes")
}
