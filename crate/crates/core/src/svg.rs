//! SVG 1.1 drawings of path families and overlays.
//!
//! Output is a pure function of the input, so equal inputs give byte-identical files.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::overlays::{BicolouredTrail, Colour, Overlay};
use crate::paths::{LatticePath, PathTuple, Point};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SvgOptions {
    /// Pixels per lattice unit.
    pub unit: f64,
    pub green: String,
    pub red: String,
    /// Stroke colour for plain path families.
    pub path: String,
    pub highlight: String,
    /// Print coordinates next to endpoints.
    pub labels: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            unit: 32.0,
            green: "#2e8b57".into(),
            red: "#c0392b".into(),
            path: "#1f4e9c".into(),
            highlight: "#000000".into(),
            labels: true,
        }
    }
}

struct Frame {
    x0: i64,
    y1: i64,
    unit: f64,
    margin: f64,
    width: f64,
    height: f64,
}

impl Frame {
    fn new(points: impl IntoIterator<Item = Point>, unit: f64) -> Frame {
        let pts: Vec<Point> = points.into_iter().collect();
        let x0 = pts.iter().map(|p| p.x).min().unwrap_or(0);
        let x1 = pts.iter().map(|p| p.x).max().unwrap_or(0);
        let y0 = pts.iter().map(|p| p.y).min().unwrap_or(1);
        let y1 = pts.iter().map(|p| p.y).max().unwrap_or(1);
        let margin = unit * 1.5;
        Frame {
            x0,
            y1,
            unit,
            margin,
            width: (x1 - x0) as f64 * unit + 2.0 * margin,
            height: (y1 - y0) as f64 * unit + 2.0 * margin,
        }
    }

    fn at(&self, p: Point, dx: f64, dy: f64) -> (f64, f64) {
        (
            self.margin + (p.x - self.x0) as f64 * self.unit + dx,
            self.margin + (self.y1 - p.y) as f64 * self.unit + dy,
        )
    }

    fn header(&self, out: &mut String) {
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.0}" height="{:.0}" viewBox="0 0 {:.0} {:.0}">"#,
            self.width, self.height, self.width, self.height
        );
        let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    }

    fn grid(&self, points: &[Point], out: &mut String) {
        let _ = writeln!(out, r##"<g fill="#bbbbbb">"##);
        for &p in points {
            let (x, y) = self.at(p, 0.0, 0.0);
            let _ = writeln!(out, r#"<circle cx="{x:.1}" cy="{y:.1}" r="1.5"/>"#);
        }
        let _ = writeln!(out, "</g>");
    }
}

/// A polyline through the path's points with rounded corners, shifted by `(dx, dy)`.
fn path_d(f: &Frame, p: &LatticePath, dx: f64, dy: f64) -> String {
    let pts: Vec<(f64, f64)> = p.points().into_iter().map(|q| f.at(q, dx, dy)).collect();
    let mut d = String::new();
    let r = f.unit * 0.2;
    let _ = write!(d, "M {:.1} {:.1}", pts[0].0, pts[0].1);
    for k in 1..pts.len() {
        let (x, y) = pts[k];
        if k + 1 < pts.len() {
            let (px, py) = pts[k - 1];
            let (nx, ny) = pts[k + 1];
            let turns = (px - x).abs() > 1e-9 && (ny - y).abs() > 1e-9 || (py - y).abs() > 1e-9 && (nx - x).abs() > 1e-9;
            if turns {
                let ax = x + (px - x).signum() * r;
                let ay = y + (py - y).signum() * r;
                let bx = x + (nx - x).signum() * r;
                let by = y + (ny - y).signum() * r;
                let _ = write!(d, " L {ax:.1} {ay:.1} Q {x:.1} {y:.1} {bx:.1} {by:.1}");
                continue;
            }
        }
        let _ = write!(d, " L {x:.1} {y:.1}");
    }
    d
}

fn lattice_points(points: &[Point]) -> Vec<Point> {
    let (Some(x0), Some(x1)) = (points.iter().map(|p| p.x).min(), points.iter().map(|p| p.x).max()) else {
        return vec![];
    };
    let y0 = points.iter().map(|p| p.y).min().unwrap_or(1);
    let y1 = points.iter().map(|p| p.y).max().unwrap_or(1);
    let mut out = Vec::new();
    for y in y0..=y1 {
        for x in x0..=x1 {
            out.push(Point::new(x, y));
        }
    }
    out
}

fn endpoint_marks(f: &Frame, pts: &[Point], colour: &str, labels: bool, out: &mut String) {
    for &p in pts {
        let (x, y) = f.at(p, 0.0, 0.0);
        let _ = writeln!(out, r#"<circle cx="{x:.1}" cy="{y:.1}" r="4" fill="{colour}"/>"#);
        if labels {
            let dy = if p.y == 1 { 18.0 } else { -10.0 };
            let _ = writeln!(
                out,
                r#"<text x="{x:.1}" y="{:.1}" font-family="sans-serif" font-size="10" text-anchor="middle">({},{})</text>"#,
                y + dy,
                p.x,
                p.y
            );
        }
    }
}

/// Draws a path tuple; endpoints are marked and optionally labelled.
pub fn render_tuple(p: &PathTuple, opts: &SvgOptions) -> String {
    let mut all: Vec<Point> = p.paths().iter().flat_map(|q| q.points()).collect();
    all.extend(p.lower());
    all.extend(p.upper());
    let f = Frame::new(all.iter().copied(), opts.unit);
    let mut out = String::new();
    f.header(&mut out);
    f.grid(&lattice_points(&all), &mut out);
    let _ = writeln!(out, r#"<g fill="none" stroke="{}" stroke-width="2.5" stroke-linecap="round">"#, opts.path);
    for q in p.paths() {
        let _ = writeln!(out, r#"<path d="{}"/>"#, path_d(&f, q, 0.0, 0.0));
    }
    let _ = writeln!(out, "</g>");
    endpoint_marks(&f, p.lower(), &opts.path, opts.labels, &mut out);
    endpoint_marks(&f, p.upper(), &opts.path, opts.labels, &mut out);
    let _ = writeln!(out, "</svg>");
    out
}

/// Draws an overlay, green paths shifted up-left and red ones down-right so shared
/// arcs stay visible; `trail`, if given, is drawn on top.
pub fn render_overlay(o: &Overlay, trail: Option<&BicolouredTrail>, opts: &SvgOptions) -> String {
    let mut all: Vec<Point> = Vec::new();
    for c in [Colour::Green, Colour::Red] {
        let fam = o.family(c);
        all.extend(fam.paths().iter().flat_map(|q| q.points()));
        all.extend(fam.lower());
        all.extend(fam.upper());
    }
    let f = Frame::new(all.iter().copied(), opts.unit);
    let off = opts.unit * 0.07;
    let mut out = String::new();
    f.header(&mut out);
    f.grid(&lattice_points(&all), &mut out);
    for (c, stroke, d) in [(Colour::Green, &opts.green, -off), (Colour::Red, &opts.red, off)] {
        let _ = writeln!(
            out,
            r#"<g class="{c}" fill="none" stroke="{stroke}" stroke-width="2.5" stroke-linecap="round">"#
        );
        for q in o.family(c).paths() {
            let _ = writeln!(out, r#"<path d="{}"/>"#, path_d(&f, q, d, -d));
        }
        let _ = writeln!(out, "</g>");
    }
    if let Some(t) = trail {
        let _ = writeln!(
            out,
            r#"<g class="trail" fill="none" stroke="{}" stroke-width="1.2" stroke-dasharray="4 3">"#,
            opts.highlight
        );
        for a in &t.arcs {
            let d = if a.colour == Colour::Green { -off } else { off };
            let (x1, y1) = f.at(a.from, d, -d);
            let (x2, y2) = f.at(a.from.step(a.step), d, -d);
            let _ = writeln!(out, r#"<line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}"/>"#);
        }
        let _ = writeln!(out, "</g>");
        for e in [t.start, t.end] {
            let (x, y) = f.at(e.point, 0.0, 0.0);
            let _ = writeln!(
                out,
                r#"<circle cx="{x:.1}" cy="{y:.1}" r="7" fill="none" stroke="{}" stroke-width="1.5"/>"#,
                opts.highlight
            );
        }
    }
    for (c, stroke) in [(Colour::Green, &opts.green), (Colour::Red, &opts.red)] {
        let fam = o.family(c);
        endpoint_marks(&f, fam.lower(), stroke, opts.labels, &mut out);
        endpoint_marks(&f, fam.upper(), stroke, opts.labels, &mut out);
    }
    let _ = writeln!(out, "</svg>");
    out
}
