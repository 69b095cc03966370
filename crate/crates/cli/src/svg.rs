//! SVG 1.1 output for tiling documents.

use std::fmt::Write;

use penrose_core::exact::{Cyclotomic5, PHI_F64};
use penrose_core::penrose::{corner_color, TileKind, VertexColor};

use crate::document::{Kind, TileRecord, TilingDocument};

#[derive(Debug, Clone, PartialEq)]
pub struct RenderStyle {
    pub stroke_width: f64,
    pub stroke: String,
    pub acute_fill: String,
    pub obtuse_fill: String,
    pub kite_fill: String,
    pub dart_fill: String,
    pub thick_fill: String,
    pub thin_fill: String,
    /// Draw the matching-rule arcs on kites and darts.
    pub decorations: bool,
    pub decoration_color: String,
    /// Output units per unit edge.
    pub scale: f64,
    pub margin: f64,
}

impl Default for RenderStyle {
    fn default() -> RenderStyle {
        RenderStyle {
            stroke_width: 1.0,
            stroke: "#222222".into(),
            acute_fill: "#f2c14e".into(),
            obtuse_fill: "#5b8e7d".into(),
            kite_fill: "#f2c14e".into(),
            dart_fill: "#5b8e7d".into(),
            thick_fill: "#e07a5f".into(),
            thin_fill: "#3d5a80".into(),
            decorations: false,
            decoration_color: "#b00020".into(),
            scale: 40.0,
            margin: 10.0,
        }
    }
}

/// Formats with six decimals and never prints `-0.000000`.
fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-').trim_matches(|c| c == '0' || c == '.').is_empty() {
        "0.000000".to_string()
    } else {
        s
    }
}

fn class_and_fill<'a>(t: &TileRecord, style: &'a RenderStyle) -> (String, &'a str) {
    match t.kind {
        Kind::Acute => (format!("acute {}", t.chirality.as_deref().unwrap_or("")), &style.acute_fill),
        Kind::Obtuse => (format!("obtuse {}", t.chirality.as_deref().unwrap_or("")), &style.obtuse_fill),
        Kind::Kite => ("kite".into(), &style.kite_fill),
        Kind::Dart => ("dart".into(), &style.dart_fill),
        Kind::Rhombus => match t.shape.as_deref() {
            Some("thin") => ("rhombus thin".into(), &style.thin_fill),
            _ => ("rhombus thick".into(), &style.thick_fill),
        },
    }
}

/// Arc around each black corner of a kite or dart, at a fifth of the unit
/// edge. Corners follow the stored vertex order.
fn decoration(kind: TileKind, pts: &[(f64, f64)], unit: f64) -> Vec<String> {
    let r = 0.2 * unit;
    let mut out = Vec::new();
    for i in 0..4 {
        if corner_color(kind, i) != VertexColor::Black {
            continue;
        }
        let c = pts[i];
        let toward = |p: (f64, f64)| {
            let (dx, dy) = (p.0 - c.0, p.1 - c.1);
            let len = dx.hypot(dy);
            (c.0 + r * dx / len, c.1 + r * dy / len)
        };
        let a = toward(pts[(i + 1) % 4]);
        let b = toward(pts[(i + 3) % 4]);
        // Black corners are all convex, so the short arc is inside the tile.
        let cross = (a.0 - c.0) * (b.1 - c.1) - (a.1 - c.1) * (b.0 - c.0);
        let sweep = u8::from(cross > 0.0);
        out.push(format!(
            "M {} {} A {} {} 0 0 {} {} {}",
            num(a.0),
            num(a.1),
            num(r),
            num(r),
            sweep,
            num(b.0),
            num(b.1)
        ));
    }
    out
}

pub fn render_svg(doc: &TilingDocument, style: &RenderStyle) -> String {
    let unit = style.scale * PHI_F64.powi(doc.scale_exponent);
    // Screen coordinates: y grows downwards.
    let tiles: Vec<Vec<(f64, f64)>> = doc
        .tiles
        .iter()
        .map(|t| {
            t.vertices
                .iter()
                .map(|&c| {
                    let (x, y) = Cyclotomic5::from_coeffs(c).embed();
                    (x * unit, -y * unit)
                })
                .collect()
        })
        .collect();

    let mut bounds = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    if let Some(&(x, y)) = tiles.iter().flatten().next() {
        bounds = (x, y, x, y);
    }
    for &(x, y) in tiles.iter().flatten() {
        bounds = (bounds.0.min(x), bounds.1.min(y), bounds.2.max(x), bounds.3.max(y));
    }
    let m = style.margin;
    let (x0, y0) = (bounds.0 - m, bounds.1 - m);
    let (w, h) = (bounds.2 - bounds.0 + 2.0 * m, bounds.3 - bounds.1 + 2.0 * m);

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        num(w),
        num(h),
        num(x0),
        num(y0),
        num(w),
        num(h)
    );
    let _ = writeln!(
        s,
        "<g stroke=\"{}\" stroke-width=\"{}\" stroke-linejoin=\"round\">",
        style.stroke,
        num(style.stroke_width)
    );
    for (t, pts) in doc.tiles.iter().zip(&tiles) {
        let (class, fill) = class_and_fill(t, style);
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            let _ = write!(d, "{}{} {} ", if i == 0 { "M " } else { "L " }, num(p.0), num(p.1));
        }
        d.push('Z');
        let _ = writeln!(s, "<path class=\"tile {}\" fill=\"{}\" d=\"{}\"/>", class.trim_end(), fill, d);
    }
    s.push_str("</g>\n");

    if style.decorations {
        let _ = writeln!(
            s,
            "<g class=\"decorations\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\">",
            style.decoration_color,
            num(style.stroke_width)
        );
        for (t, pts) in doc.tiles.iter().zip(&tiles) {
            let kind = match t.kind {
                Kind::Kite => TileKind::Kite,
                Kind::Dart => TileKind::Dart,
                _ => continue,
            };
            if pts.len() != 4 {
                continue;
            }
            for d in decoration(kind, pts, unit) {
                let _ = writeln!(s, "<path class=\"mark\" d=\"{d}\"/>");
            }
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}
