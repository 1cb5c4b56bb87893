//! SVG rendering of Newton polygons.
//!
//! Fixed 600x600 canvas with a 40 unit margin; the lattice box spanned by the
//! support is scaled uniformly to fit. Exponent `i` runs right, `j` runs up.

use std::fmt::Write;

use super::{LatticePoint, NewtonPolygon, Slope};

const CANVAS: f64 = 600.0;
const MARGIN: f64 = 40.0;

struct Frame {
    i0: u32,
    j0: u32,
    unit: f64,
}

impl Frame {
    fn new(points: &[LatticePoint]) -> Self {
        let i0 = points.iter().map(|p| p.i).min().unwrap_or(0);
        let i1 = points.iter().map(|p| p.i).max().unwrap_or(0);
        let j0 = points.iter().map(|p| p.j).min().unwrap_or(0);
        let j1 = points.iter().map(|p| p.j).max().unwrap_or(0);
        let span = (i1 - i0).max(j1 - j0).max(1);
        Self {
            i0,
            j0,
            unit: (CANVAS - 2.0 * MARGIN) / f64::from(span),
        }
    }

    fn x(&self, i: u32) -> f64 {
        MARGIN + f64::from(i - self.i0) * self.unit
    }

    fn y(&self, j: u32) -> f64 {
        CANVAS - MARGIN - f64::from(j - self.j0) * self.unit
    }

    fn cells(&self) -> u32 {
        ((CANVAS - 2.0 * MARGIN) / self.unit).round() as u32
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Deterministic SVG document: lattice grid, support dots, hull outline and
/// vertical edges drawn with their own stroke class.
pub fn render_svg(poly: &NewtonPolygon, title: &str) -> String {
    let frame = Frame::new(poly.support());
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">"
    );
    if !title.is_empty() {
        let _ = writeln!(out, "  <title>{}</title>", escape(title));
    }
    out.push_str(concat!(
        "  <style>\n",
        "    .grid { stroke: #dddddd; stroke-width: 1; }\n",
        "    .hull { fill: #e8f0fa; fill-opacity: 0.6; stroke: #1f4e9c; stroke-width: 2; }\n",
        "    .vertical { stroke: #c0392b; stroke-width: 4; }\n",
        "    .support { fill: #222222; }\n",
        "    .vertex { fill: #1f4e9c; }\n",
        "  </style>\n",
    ));

    out.push_str("  <g class=\"grid\">\n");
    for k in 0..=frame.cells() {
        let x = frame.x(frame.i0 + k);
        let y = frame.y(frame.j0 + k);
        let _ = writeln!(
            out,
            "    <line x1=\"{x:.2}\" y1=\"{MARGIN:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\"/>",
            CANVAS - MARGIN
        );
        let _ = writeln!(
            out,
            "    <line x1=\"{MARGIN:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\"/>",
            CANVAS - MARGIN
        );
    }
    out.push_str("  </g>\n");

    let verts = poly.vertices();
    if verts.len() >= 3 {
        let points: Vec<String> = verts
            .iter()
            .map(|p| format!("{:.2},{:.2}", frame.x(p.i), frame.y(p.j)))
            .collect();
        let _ = writeln!(out, "  <polygon class=\"hull\" points=\"{}\"/>", points.join(" "));
    } else if verts.len() == 2 {
        let (a, b) = (verts[0], verts[1]);
        let _ = writeln!(
            out,
            "  <line class=\"hull\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>",
            frame.x(a.i),
            frame.y(a.j),
            frame.x(b.i),
            frame.y(b.j)
        );
    }

    for e in poly.edges().iter().filter(|e| e.slope == Slope::Vertical) {
        let _ = writeln!(
            out,
            "  <line class=\"vertical\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>",
            frame.x(e.start.i),
            frame.y(e.start.j),
            frame.x(e.end.i),
            frame.y(e.end.j)
        );
    }

    for p in poly.support() {
        let class = if verts.contains(p) { "vertex" } else { "support" };
        let _ = writeln!(
            out,
            "  <circle class=\"{class}\" cx=\"{:.2}\" cy=\"{:.2}\" r=\"5\"/>",
            frame.x(p.i),
            frame.y(p.j)
        );
    }
    out.push_str("</svg>\n");
    out
}
