//! Static SVG figure of a network in the inflation picture.

use std::collections::BTreeSet;
use std::fmt::Write;

use vanishing::lattice::{LatticePoint, LatticePolygon, PrimitiveSegment};
use vanishing::network::{Clause, CurveId, Network};

/// Pixels per lattice unit.
pub const UNIT: f64 = 56.0;
/// Margin around the polygon, in lattice units.
pub const MARGIN: f64 = 1.0;
/// Radius of the disks removed at interior points, in lattice units.
pub const CIRCLE_RADIUS: f64 = 0.25;
/// Offset of the dashed back copy of a B-curve, in lattice units.
pub const BACK_OFFSET: f64 = 0.07;

pub const HIGHLIGHT: &str = "#9ecae1";

pub fn clause_color(c: Clause) -> &'static str {
    match c {
        Clause::AllA => "#1f3a93",
        Clause::Sigma => "#d62728",
        Clause::Tau => "#ff7f0e",
        Clause::Radial => "#2ca02c",
    }
}

struct Frame {
    min: (f64, f64),
    max: (f64, f64),
}

impl Frame {
    fn new(p: &LatticePolygon) -> Self {
        let (lo, hi) = p.bbox();
        Frame {
            min: (lo.x as f64 - MARGIN, lo.y as f64 - MARGIN),
            max: (hi.x as f64 + MARGIN, hi.y as f64 + MARGIN),
        }
    }

    fn width(&self) -> f64 {
        (self.max.0 - self.min.0) * UNIT
    }

    fn height(&self) -> f64 {
        (self.max.1 - self.min.1) * UNIT
    }

    /// y grows upward in the lattice and downward in SVG.
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        ((x - self.min.0) * UNIT, (self.max.1 - y) * UNIT)
    }

    fn point(&self, p: LatticePoint) -> (f64, f64) {
        self.map(p.x as f64, p.y as f64)
    }
}

fn polygon_path(f: &Frame, p: &LatticePolygon) -> String {
    p.vertices()
        .iter()
        .map(|&v| {
            let (x, y) = f.point(v);
            format!("{x:.2},{y:.2}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn segment_line(out: &mut String, f: &Frame, s: &PrimitiveSegment, offset: f64, attrs: &str) {
    let d = s.b.sub(s.a);
    let len = ((d.x * d.x + d.y * d.y) as f64).sqrt();
    let (nx, ny) = (-(d.y as f64) / len * offset, d.x as f64 / len * offset);
    let (x1, y1) = f.map(s.a.x as f64 + nx, s.a.y as f64 + ny);
    let (x2, y2) = f.map(s.b.x as f64 + nx, s.b.y as f64 + ny);
    let _ = writeln!(out, r#"  <line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" {attrs}/>"#);
}

/// Renders the polygon, the shaded adjoint polygon and every network curve.
/// Curves in `highlight` get a light blue underlay. `extra` segments (such
/// as b) are drawn dotted.
pub fn render_svg(net: &Network, highlight: &BTreeSet<CurveId>, extra: &[PrimitiveSegment]) -> String {
    let f = Frame::new(&net.polygon);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#,
        w = f.width(),
        h = f.height()
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"  <polygon class="polygon" points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
        polygon_path(&f, &net.polygon)
    );
    if let Some(adj) = net.polygon.adjoint().polygon() {
        let _ = writeln!(
            out,
            r##"  <polygon class="adjoint" points="{}" fill="#d9d9d9" stroke="#969696" stroke-width="1"/>"##,
            polygon_path(&f, adj)
        );
    }
    for p in net.polygon.lattice_points() {
        let (x, y) = f.point(p);
        let _ = writeln!(out, r##"  <circle class="lattice" cx="{x:.2}" cy="{y:.2}" r="2" fill="#555555"/>"##);
    }

    let b_curves: Vec<(PrimitiveSegment, Clause)> = net
        .curves()
        .filter_map(|(c, &cl)| match c {
            CurveId::B(s) => Some((*s, cl)),
            CurveId::A(_) => None,
        })
        .collect();
    for (s, _) in &b_curves {
        if highlight.contains(&CurveId::B(*s)) {
            segment_line(&mut out, &f, s, 0.0, &format!(r#"class="highlight" stroke="{HIGHLIGHT}" stroke-width="10" stroke-linecap="round""#));
        }
    }
    for (s, cl) in &b_curves {
        let col = clause_color(*cl);
        segment_line(&mut out, &f, s, BACK_OFFSET, &format!(r#"class="back" stroke="{col}" stroke-width="1.5" stroke-dasharray="4 3""#));
        segment_line(&mut out, &f, s, -BACK_OFFSET, &format!(r#"class="front" stroke="{col}" stroke-width="2""#));
    }
    for s in extra {
        segment_line(&mut out, &f, s, 0.0, r##"class="extra" stroke="#756bb1" stroke-width="2" stroke-dasharray="1 4""##);
    }

    let rad = CIRCLE_RADIUS * UNIT;
    for (c, &cl) in net.curves() {
        let CurveId::A(v) = c else { continue };
        let (x, y) = f.point(*v);
        let fill = if highlight.contains(c) { HIGHLIGHT } else { "white" };
        let _ = writeln!(
            out,
            r#"  <circle class="a-curve" cx="{x:.2}" cy="{y:.2}" r="{rad:.2}" fill="{fill}" stroke="{}" stroke-width="2"/>"#,
            clause_color(cl)
        );
    }
    let _ = writeln!(out, "</svg>");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use vanishing::lattice::triangle;
    use vanishing::network::{build_network, find_kappa};

    #[test]
    fn deterministic_and_counts_circles() {
        let p = triangle(6);
        let net = build_network(&p, find_kappa(&p).unwrap()).unwrap();
        let a = render_svg(&net, &BTreeSet::new(), &[]);
        let b = render_svg(&net, &BTreeSet::new(), &[]);
        assert_eq!(a, b);
        assert_eq!(a.matches(r#"class="a-curve""#).count(), 10);
        assert_eq!(a.matches(r#"class="back""#).count(), a.matches(r#"class="front""#).count());
    }
}
