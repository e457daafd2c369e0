//! Static SVG of a persistence diagram with a barcode strip.

use std::fmt::Write as _;

use crate::formats::{BarRecord, Endpoint};

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;

/// Colour of degree `n` is `PALETTE[n % PALETTE.len()]`.
pub const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

// Diagram panel.
const DX0: f64 = 60.0;
const DX1: f64 = 380.0;
const DY0: f64 = 540.0;
const DY1: f64 = 90.0;
const RAIL: f64 = 60.0;
// Barcode strip.
const BX0: f64 = 440.0;
const BX1: f64 = 740.0;
const BY0: f64 = 90.0;
const BY1: f64 = 540.0;

pub fn color(degree: usize) -> &'static str {
    PALETTE[degree % PALETTE.len()]
}

/// One mark per unit of multiplicity. Bars that never die sit on the rail
/// above the diagram.
pub fn render_svg(bars: &[BarRecord]) -> String {
    let finite = |e: &Endpoint| match e {
        Endpoint::Finite(x) => Some(*x),
        Endpoint::Infinite => None,
    };
    let top = bars
        .iter()
        .flat_map(|b| [Some(b.birth), finite(&b.death)])
        .flatten()
        .fold(0.0f64, f64::max);
    let scale = if top > 0.0 { top } else { 1.0 };
    let sx = |v: f64| DX0 + (DX1 - DX0) * v / scale;
    let sy = |v: f64| DY0 - (DY0 - DY1) * v / scale;
    let bx = |v: f64| BX0 + (BX1 - BX0) * v / scale;

    let mut units: Vec<&BarRecord> = bars
        .iter()
        .flat_map(|b| std::iter::repeat_n(b, b.multiplicity))
        .collect();
    units.sort_by(|a, b| {
        (a.module.as_str(), a.degree)
            .cmp(&(b.module.as_str(), b.degree))
            .then(a.birth.total_cmp(&b.birth))
            .then(
                finite(&a.death)
                    .unwrap_or(f64::INFINITY)
                    .total_cmp(&finite(&b.death).unwrap_or(f64::INFINITY)),
            )
    });

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        s,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    // Axes, diagonal and the infinity rail.
    let _ = writeln!(
        s,
        r#"<g class="axes" stroke="black" stroke-width="1"><line x1="{DX0}" y1="{DY0}" x2="{DX1}" y2="{DY0}"/><line x1="{DX0}" y1="{DY0}" x2="{DX0}" y2="{DY1}"/></g>"#
    );
    let _ = writeln!(
        s,
        r#"<line class="diagonal" x1="{DX0}" y1="{DY0}" x2="{DX1}" y2="{DY1}" stroke="gray" stroke-dasharray="4 3"/>"#
    );
    let _ = writeln!(
        s,
        r#"<line class="rail" x1="{DX0}" y1="{RAIL}" x2="{DX1}" y2="{RAIL}" stroke="gray"/><text x="{}" y="{}" font-size="12" font-family="sans-serif">inf</text>"#,
        DX1 + 6.0,
        RAIL + 4.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{DX0}" y="{}" font-size="12" font-family="sans-serif">0</text><text x="{}" y="{}" font-size="12" font-family="sans-serif" text-anchor="end">{:.3}</text>"#,
        DY0 + 16.0,
        DX1,
        DY0 + 16.0,
        scale
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="14" font-family="sans-serif" text-anchor="middle">birth / death</text><text x="{}" y="{}" font-size="14" font-family="sans-serif" text-anchor="middle">barcode</text>"#,
        (DX0 + DX1) / 2.0,
        DY0 + 40.0,
        (BX0 + BX1) / 2.0,
        DY0 + 40.0
    );

    let _ = writeln!(s, r#"<g class="diagram">"#);
    for b in &units {
        let (cy, inf) = match finite(&b.death) {
            Some(d) => (sy(d), ""),
            None => (RAIL, " inf"),
        };
        let _ = writeln!(
            s,
            r#"<circle class="mark degree-{} module-{}{inf}" cx="{:.2}" cy="{:.2}" r="4" fill="{}" fill-opacity="0.7"/>"#,
            b.degree,
            b.module,
            sx(b.birth),
            cy,
            color(b.degree)
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g class="barcode">"#);
    let row = if units.is_empty() {
        0.0
    } else {
        ((BY1 - BY0) / units.len() as f64).min(12.0)
    };
    for (k, b) in units.iter().enumerate() {
        let y = BY0 + row * (k as f64 + 0.5);
        let (x2, inf) = match finite(&b.death) {
            Some(d) => (bx(d), ""),
            None => (BX1 + 20.0, " inf"),
        };
        let _ = writeln!(
            s,
            r#"<line class="bar degree-{}{inf}" x1="{:.2}" y1="{y:.2}" x2="{x2:.2}" y2="{y:.2}" stroke="{}" stroke-width="{:.2}"/>"#,
            b.degree,
            bx(b.birth),
            color(b.degree),
            (row * 0.6).max(1.0)
        );
    }
    let _ = writeln!(s, "</g>");

    let mut degrees: Vec<usize> = bars.iter().map(|b| b.degree).collect();
    degrees.sort_unstable();
    degrees.dedup();
    for (k, d) in degrees.iter().enumerate() {
        let x = DX0 + 70.0 * k as f64;
        let _ = writeln!(
            s,
            r#"<rect x="{x}" y="20" width="10" height="10" fill="{}"/><text x="{}" y="29" font-size="12" font-family="sans-serif">H{d}</text>"#,
            color(*d),
            x + 14.0
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bar(degree: usize, birth: f64, death: Endpoint, multiplicity: usize) -> BarRecord {
        BarRecord {
            module: "ambient".into(),
            degree,
            birth,
            death,
            multiplicity,
        }
    }

    #[test]
    fn k4_marks() {
        let bars = vec![
            bar(0, 0.0, Endpoint::Finite(0.5), 3),
            bar(0, 0.0, Endpoint::Infinite, 1),
            bar(1, 0.5, Endpoint::Finite(std::f64::consts::FRAC_1_SQRT_2), 1),
        ];
        let svg = render_svg(&bars);
        assert_eq!(svg.matches(r#"class="mark degree-0"#).count(), 4);
        assert_eq!(svg.matches(r#"class="mark degree-1"#).count(), 1);
        assert_eq!(svg.matches(" inf\"").count(), 2);
        assert!(svg.contains(r#"width="800" height="600""#));
        assert_eq!(svg, render_svg(&bars));
    }

    #[test]
    fn empty_diagram_is_valid() {
        let svg = render_svg(&[]);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }
}
