//! SVG drawings of planar sections. 100 user units per coordinate unit,
//! margin 10% of the drawing's extent on each side.

use std::fmt::Write;

use mvse_core::exactlin::Rational;
use mvse_core::polytope::SectionPolygon;

const UNIT: f64 = 100.0;
const MARGIN: f64 = 0.1;

pub fn render_section(s: &SectionPolygon, title: &str) -> String {
    let radius = s
        .vertices
        .iter()
        .flat_map(|v| [v[0].abs(), v[1].abs()])
        .max()
        .unwrap_or_else(Rational::one)
        .to_f64();
    let extent = 2.0 * radius * UNIT;
    let margin = MARGIN * extent;
    let size = extent + 2.0 * margin;
    let to_svg = |a: &Rational, b: &Rational| -> (f64, f64) {
        (
            margin + (a.to_f64() + radius) * UNIT,
            margin + (radius - b.to_f64()) * UNIT,
        )
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size:.3}" height="{size:.3}" viewBox="0 0 {size:.3} {size:.3}">"#
    );
    let _ = writeln!(out, "  <title>{}</title>", escape(title));
    let (ox, oy) = to_svg(&Rational::zero(), &Rational::zero());
    let _ = writeln!(
        out,
        r##"  <line x1="{:.3}" y1="{oy:.3}" x2="{:.3}" y2="{oy:.3}" stroke="#bbb" stroke-width="1"/>"##,
        margin,
        size - margin
    );
    let _ = writeln!(
        out,
        r##"  <line x1="{ox:.3}" y1="{:.3}" x2="{ox:.3}" y2="{:.3}" stroke="#bbb" stroke-width="1"/>"##,
        margin,
        size - margin
    );
    let points: Vec<String> = s
        .vertices
        .iter()
        .map(|v| {
            let (x, y) = to_svg(&v[0], &v[1]);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    let _ = writeln!(
        out,
        r##"  <polygon points="{}" fill="#dde8f4" stroke="#1f4e79" stroke-width="2"/>"##,
        points.join(" ")
    );
    for v in &s.vertices {
        let (x, y) = to_svg(&v[0], &v[1]);
        let _ = writeln!(
            out,
            r##"  <circle cx="{x:.3}" cy="{y:.3}" r="3" fill="#1f4e79"/>"##
        );
        let _ = writeln!(
            out,
            r#"  <text x="{:.3}" y="{:.3}" font-family="monospace" font-size="10">({}, {})</text>"#,
            x + 4.0,
            y - 4.0,
            v[0],
            v[1]
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use mvse_core::exactlin::RVector;

    #[test]
    fn square_layout() {
        let sq = SectionPolygon::from_points(&[
            RVector::from_ints(&[1, 1]),
            RVector::from_ints(&[1, -1]),
        ])
        .unwrap();
        let svg = render_section(&sq, "square");
        // extent 200, margin 20 on each side
        assert!(svg.contains(r#"width="240.000""#));
        assert!(
            svg.contains(r#"points="220.000,20.000 20.000,20.000 20.000,220.000 220.000,220.000""#)
        );
        assert_eq!(svg.matches("<circle").count(), 4);
        assert_eq!(svg, render_section(&sq, "square"));
    }
}
