//! Static SVG figures on a fixed 1000-px viewport.

use std::f64::consts::{PI, TAU};
use std::fmt::Write;

use num_complex::Complex64;

use crate::arc::BoundaryArc;
use crate::domain::PlanarGeometry;
use crate::group::LimitSetCover;

const SIZE: f64 = 1000.0;
const PALETTE: [&str; 8] = ["#1b3a6b", "#2a6f97", "#2c7c5a", "#7a9c2c", "#c9a227", "#d9782d", "#c0392b", "#8e2c6f"];

fn depth_colour(d: usize) -> &'static str {
    PALETTE[d % PALETTE.len()]
}

fn header(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r##"<rect width="{SIZE}" height="{SIZE}" fill="#ffffff"/>"##);
}

/// Maps the square `[−extent, extent]²` onto the viewport, with `y` pointing up.
struct Frame {
    extent: f64,
}

impl Frame {
    fn px(&self, z: Complex64) -> (f64, f64) {
        let s = 0.45 * SIZE / self.extent;
        (SIZE / 2.0 + s * z.re, SIZE / 2.0 - s * z.im)
    }

    fn len(&self, r: f64) -> f64 {
        0.45 * SIZE / self.extent * r
    }
}

fn arc_path(frame: &Frame, center: Complex64, radius: f64, start: f64, length: f64) -> String {
    let (x0, y0) = frame.px(center + Complex64::from_polar(radius, start));
    let (x1, y1) = frame.px(center + Complex64::from_polar(radius, start + length));
    let r = frame.len(radius);
    let large = if length > PI { 1 } else { 0 };
    // y is flipped, so counterclockwise in the plane is sweep-flag 0
    format!("M {x0:.3} {y0:.3} A {r:.3} {r:.3} 0 {large} 0 {x1:.3} {y1:.3}")
}

fn boundary_arc(out: &mut String, frame: &Frame, arc: &BoundaryArc, radius: f64, colour: &str, width: f64) {
    if arc.is_full() || arc.length() >= TAU - 1e-12 {
        let (cx, cy) = frame.px(Complex64::new(0.0, 0.0));
        let _ = writeln!(
            out,
            r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="{:.3}" fill="none" stroke="{colour}" stroke-width="{width}"/>"#,
            frame.len(radius)
        );
        return;
    }
    if frame.len(radius) * arc.length() < 0.5 {
        let (x, y) = frame.px(Complex64::from_polar(radius, arc.mid()));
        let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="{:.3}" fill="{colour}"/>"#, width / 2.0);
        return;
    }
    let d = arc_path(frame, Complex64::new(0.0, 0.0), radius, arc.start(), arc.length());
    let _ = writeln!(out, r#"<path d="{d}" fill="none" stroke="{colour}" stroke-width="{width}"/>"#);
}

/// Covers of the limit set drawn as rings just inside the unit circle, one ring per depth.
pub fn svg_limit_set(covers: &[LimitSetCover]) -> String {
    let mut out = String::new();
    header(&mut out);
    let frame = Frame { extent: 1.0 };
    boundary_arc(&mut out, &frame, &BoundaryArc::full_circle(), 1.0, "#999999", 1.0);
    let step = 0.6 / covers.len().max(1) as f64;
    for (k, cover) in covers.iter().enumerate() {
        let radius = 1.0 - step * (k as f64 + 0.5);
        let colour = depth_colour(cover.depth);
        let _ = writeln!(out, r#"<g id="depth-{}">"#, cover.depth);
        for arc in &cover.arcs {
            boundary_arc(&mut out, &frame, arc, radius, colour, 4.0);
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

/// Complement pieces of a planar example; the distinguished boundary component in red.
pub fn svg_planar(geom: &PlanarGeometry) -> String {
    let mut extent: f64 = 0.3;
    for a in &geom.arcs {
        extent = extent.max(a.center.norm() + a.radius);
    }
    for s in &geom.segments {
        extent = extent.max(s.0.norm()).max(s.1.norm());
    }
    for p in &geom.points {
        extent = extent.max(p.norm());
    }
    if let Some(r) = geom.annulus {
        extent = extent.max(r);
    }
    let frame = Frame { extent: extent * 1.05 };
    let mut out = String::new();
    header(&mut out);
    if let Some(r) = geom.annulus {
        for radius in [r, 1.0 / r] {
            let (cx, cy) = frame.px(Complex64::new(0.0, 0.0));
            let _ = writeln!(
                out,
                r##"<circle cx="{cx:.3}" cy="{cy:.3}" r="{:.3}" fill="none" stroke="#1b3a6b" stroke-width="2"/>"##,
                frame.len(radius)
            );
        }
    }
    for a in &geom.arcs {
        let d = arc_path(&frame, a.center, a.radius, a.mid - a.half, 2.0 * a.half);
        let _ = writeln!(out, r##"<path d="{d}" fill="none" stroke="#1b3a6b" stroke-width="2"/>"##);
    }
    for s in &geom.segments {
        let (x0, y0) = frame.px(s.0);
        let (x1, y1) = frame.px(s.1);
        let _ = writeln!(out, r##"<line x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y1:.3}" stroke="#1b3a6b" stroke-width="2"/>"##);
    }
    for p in &geom.points {
        let (x, y) = frame.px(*p);
        let _ = writeln!(out, r##"<circle cx="{x:.3}" cy="{y:.3}" r="2" fill="#1b3a6b"/>"##);
    }
    for s in &geom.distinguished {
        let (x0, y0) = frame.px(s.0);
        let (x1, y1) = frame.px(s.1);
        let _ = writeln!(out, r##"<line x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y1:.3}" stroke="#c0392b" stroke-width="4" stroke-linecap="round"/>"##);
    }
    out.push_str("</svg>\n");
    out
}

/// A sampled path in the plane, drawn as a polyline in the given frame extent.
pub fn svg_path(points: &[Complex64], extent: f64, unit_circle: bool) -> String {
    let frame = Frame { extent };
    let mut out = String::new();
    header(&mut out);
    if unit_circle {
        boundary_arc(&mut out, &frame, &BoundaryArc::full_circle(), 1.0, "#999999", 1.0);
    }
    let pts: Vec<String> = points
        .iter()
        .map(|z| {
            let (x, y) = frame.px(*z);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    let _ = writeln!(out, r##"<polyline points="{}" fill="none" stroke="#2a6f97" stroke-width="2"/>"##, pts.join(" "));
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{families, limit_set_cover};

    #[test]
    fn limit_set_svg_has_one_group_per_depth() {
        let sys = families::cyclic();
        let covers: Vec<_> = (0..4).map(|d| limit_set_cover(&sys, d).unwrap()).collect();
        let svg = svg_limit_set(&covers);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<g id=").count(), 4);
        assert_eq!(svg, svg_limit_set(&covers));
    }
}
