//! SVG rendering of planar triangulations and of real plane curves.
//!
//! Output is deterministic: identical inputs and options give byte-identical
//! documents. Elements carry `id`/`class` attributes so that tests and
//! downstream tools can inspect structure without parsing geometry.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::foldable::{FacetBipartition, VertexColoring};
use crate::poly::{ExactPolynomial, PolynomialSystem};
use crate::subdivision::SimplicialComplex;

#[derive(Debug, Clone, PartialEq)]
pub struct TriangulationStyle {
    pub width: u32,
    pub height: u32,
    pub margin: f64,
    /// Fills for black and white facets.
    pub facet_fills: [String; 2],
    pub edge_stroke: String,
    /// Cycled when there are more color classes than entries.
    pub vertex_colors: Vec<String>,
    pub vertex_radius: f64,
    pub labels: bool,
}

impl Default for TriangulationStyle {
    fn default() -> Self {
        Self {
            width: 800,
            height: 800,
            margin: 40.0,
            facet_fills: ["#5b7db1".to_string(), "#f4f1e8".to_string()],
            edge_stroke: "#222222".to_string(),
            vertex_colors: ["#d1495b", "#edae49", "#00798c", "#30638e", "#8d6a9f"]
                .map(String::from)
                .to_vec(),
            vertex_radius: 9.0,
            labels: true,
        }
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

fn header(out: &mut String, width: u32, height: u32) {
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
}

/// Uniform-scale map from a data rectangle onto the drawable area, `y` up.
#[derive(Debug, Clone, Copy)]
struct Frame {
    scale: f64,
    x0: f64,
    y0: f64,
    ox: f64,
    oy: f64,
}

impl Frame {
    fn new(window: &PlotWindow, width: u32, height: u32, margin: f64) -> Self {
        let (w, h) = (
            f64::from(width) - 2.0 * margin,
            f64::from(height) - 2.0 * margin,
        );
        let (dx, dy) = (window.x_max - window.x_min, window.y_max - window.y_min);
        let scale = (w / dx).min(h / dy);
        Self {
            scale,
            x0: window.x_min,
            y0: window.y_min,
            ox: margin + (w - scale * dx) / 2.0,
            oy: margin + (h - scale * dy) / 2.0 + scale * dy,
        }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (
            self.ox + (x - self.x0) * self.scale,
            self.oy - (y - self.y0) * self.scale,
        )
    }
}

/// Facets filled by bipartition side, vertices colored by color class and
/// labelled by point index. Facets are emitted in index order.
pub fn svg_triangulation(
    complex: &SimplicialComplex,
    bipartition: &FacetBipartition,
    coloring: &VertexColoring,
    style: &TriangulationStyle,
) -> Result<String> {
    let config = complex.config();
    if config.dim() != 2 {
        return Err(Error::UnsupportedDimension(config.dim()));
    }
    let pts: Vec<(f64, f64)> = config
        .points()
        .iter()
        .map(|p| (p[0] as f64, p[1] as f64))
        .collect();
    let window = PlotWindow {
        x_min: pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min),
        x_max: pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max),
        y_min: pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min),
        y_max: pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max),
    };
    window.validate()?;
    let frame = Frame::new(&window, style.width, style.height, style.margin);
    let mut out = String::new();
    header(&mut out, style.width, style.height);
    out.push_str("<g id=\"facets\">\n");
    for (i, facet) in complex.facets().iter().enumerate() {
        let (side, fill) = if bipartition.is_black(i) {
            ("black", &style.facet_fills[0])
        } else {
            ("white", &style.facet_fills[1])
        };
        let points: Vec<String> = facet
            .iter()
            .map(|&j| {
                let (x, y) = frame.map(pts[j].0, pts[j].1);
                format!("{},{}", num(x), num(y))
            })
            .collect();
        let _ = writeln!(
            out,
            "<polygon class=\"facet {side}\" data-facet=\"{i}\" points=\"{}\" fill=\"{fill}\" stroke=\"{}\" stroke-width=\"2\" stroke-linejoin=\"round\"/>",
            points.join(" "),
            style.edge_stroke
        );
    }
    out.push_str("</g>\n<g id=\"vertices\">\n");
    for (j, &(px, py)) in pts.iter().enumerate() {
        let (x, y) = frame.map(px, py);
        let (class, fill) = match coloring.color(j) {
            Some(c) if !style.vertex_colors.is_empty() => (
                format!("vertex color-{c}"),
                style.vertex_colors[c % style.vertex_colors.len()].as_str(),
            ),
            _ => ("vertex uncolored".to_string(), "#999999"),
        };
        let _ = writeln!(
            out,
            "<circle class=\"{class}\" data-point=\"{j}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{fill}\" stroke=\"#000000\"/>",
            num(x),
            num(y),
            num(style.vertex_radius)
        );
        if style.labels {
            let _ = writeln!(
                out,
                "<text class=\"label\" x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"14\">{j}</text>",
                num(x + style.vertex_radius + 2.0),
                num(y - style.vertex_radius - 2.0)
            );
        }
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

/// Axis-aligned plotting rectangle in data coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotWindow {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl PlotWindow {
    pub fn validate(&self) -> Result<()> {
        let ok = [self.x_min, self.x_max, self.y_min, self.y_max]
            .iter()
            .all(|v| v.is_finite())
            && self.x_min < self.x_max
            && self.y_min < self.y_max;
        if ok {
            Ok(())
        } else {
            Err(Error::BadWindow)
        }
    }

    /// Bounding box of `points` padded by a quarter of its extent on every
    /// side, or `[-3, 3]^2` without points. A flat extent borrows the other
    /// axis' extent, or 1 if both are flat.
    pub fn around(points: &[[f64; 2]]) -> Self {
        if points.is_empty() {
            return Self {
                x_min: -3.0,
                x_max: 3.0,
                y_min: -3.0,
                y_max: 3.0,
            };
        }
        let lo = |k: usize| points.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min);
        let hi = |k: usize| {
            points
                .iter()
                .map(|p| p[k])
                .fold(f64::NEG_INFINITY, f64::max)
        };
        let (x_min, x_max, y_min, y_max) = (lo(0), hi(0), lo(1), hi(1));
        let (mut dx, mut dy) = (x_max - x_min, y_max - y_min);
        if dx == 0.0 && dy == 0.0 {
            dx = 1.0;
            dy = 1.0;
        } else if dx == 0.0 {
            dx = dy;
        } else if dy == 0.0 {
            dy = dx;
        }
        let (cx, cy) = ((x_min + x_max) / 2.0, (y_min + y_max) / 2.0);
        Self {
            x_min: cx - 0.75 * dx,
            x_max: cx + 0.75 * dx,
            y_min: cy - 0.75 * dy,
            y_max: cy + 0.75 * dy,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: [f64; 2],
    pub b: [f64; 2],
}

/// Marching squares on `nx` by `ny` cells over `window`.
///
/// Each returned endpoint lies on a cell edge whose end values have
/// opposite signs (zero counts as negative), placed by linear interpolation.
/// Saddle cells are resolved with the value at the cell center. Segments are
/// ordered by cell, row by row from the bottom.
pub fn marching_squares<F: Fn(f64, f64) -> f64>(
    f: F,
    window: &PlotWindow,
    grid: (usize, usize),
) -> Vec<Segment> {
    let (nx, ny) = grid;
    let hx = (window.x_max - window.x_min) / nx as f64;
    let hy = (window.y_max - window.y_min) / ny as f64;
    let xs: Vec<f64> = (0..=nx).map(|i| window.x_min + i as f64 * hx).collect();
    let ys: Vec<f64> = (0..=ny).map(|j| window.y_min + j as f64 * hy).collect();
    let values: Vec<Vec<f64>> = ys
        .iter()
        .map(|&y| xs.iter().map(|&x| f(x, y)).collect())
        .collect();
    let mut out = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            // corners counter-clockwise from bottom-left
            let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            let v = corners.map(|(a, b)| values[b][a]);
            if v.iter().any(|x| !x.is_finite()) {
                continue;
            }
            let pos = v.map(|x| x > 0.0);
            let crossing = |e: usize| -> Option<[f64; 2]> {
                // interpolate from the lower-left end so that neighbouring
                // cells produce bit-identical points on a shared edge
                let (p, q) = if e < 2 { (e, e + 1) } else { ((e + 1) % 4, e) };
                if pos[p] == pos[q] {
                    return None;
                }
                let t = (v[p] / (v[p] - v[q])).clamp(0.0, 1.0);
                let (ap, bp) = corners[p];
                let (aq, bq) = corners[q];
                Some([
                    xs[ap] + t * (xs[aq] - xs[ap]),
                    ys[bp] + t * (ys[bq] - ys[bp]),
                ])
            };
            // edge e joins corner e and corner e + 1
            let hits: Vec<(usize, [f64; 2])> =
                (0..4).filter_map(|e| crossing(e).map(|p| (e, p))).collect();
            match hits.len() {
                2 => out.push(Segment {
                    a: hits[0].1,
                    b: hits[1].1,
                }),
                4 => {
                    let center = f((xs[i] + xs[i + 1]) / 2.0, (ys[j] + ys[j + 1]) / 2.0) > 0.0;
                    // cut off each corner whose sign differs from the center
                    for k in 0..4 {
                        if pos[k] != center {
                            let before = (k + 3) % 4;
                            out.push(Segment {
                                a: hits[before].1,
                                b: hits[k].1,
                            });
                        }
                    }
                }
                _ => {}
            }
        }
    }
    out
}

/// Joins segments sharing endpoints into polylines. Input order decides
/// output order, so the result is deterministic.
pub fn chain_segments(segments: &[Segment]) -> Vec<Vec<[f64; 2]>> {
    use std::collections::HashMap;
    let key = |p: [f64; 2]| (p[0].to_bits(), p[1].to_bits());
    let mut at: HashMap<(u64, u64), Vec<usize>> = HashMap::new();
    for (i, s) in segments.iter().enumerate() {
        at.entry(key(s.a)).or_default().push(i);
        at.entry(key(s.b)).or_default().push(i);
    }
    let mut used = vec![false; segments.len()];
    let mut lines = Vec::new();
    let next_from = |p: [f64; 2], used: &mut Vec<bool>| -> Option<[f64; 2]> {
        let i = *at.get(&key(p))?.iter().find(|&&i| !used[i])?;
        used[i] = true;
        let s = segments[i];
        Some(if key(s.a) == key(p) { s.b } else { s.a })
    };
    for i in 0..segments.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut forward = vec![segments[i].a, segments[i].b];
        while let Some(p) = next_from(*forward.last().unwrap(), &mut used) {
            forward.push(p);
        }
        let mut backward = Vec::new();
        while let Some(p) = next_from(*backward.last().unwrap_or(&forward[0]), &mut used) {
            backward.push(p);
        }
        backward.reverse();
        backward.extend(forward);
        lines.push(backward);
    }
    lines
}

/// Real evaluation of a polynomial in two variables.
fn real_evaluator(p: &ExactPolynomial) -> impl Fn(f64, f64) -> f64 {
    let terms: Vec<(f64, i32, i32)> = p
        .terms()
        .map(|(m, c)| {
            let e = m.exponents();
            (c.to_f64().unwrap_or(f64::NAN), e[0] as i32, e[1] as i32)
        })
        .collect();
    move |x, y| {
        terms
            .iter()
            .map(|&(c, a, b)| c * x.powi(a) * y.powi(b))
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveStyle {
    pub width: u32,
    pub height: u32,
    pub margin: f64,
    /// Cells along `x` and `y`.
    pub grid: (usize, usize),
    pub strokes: [String; 2],
    pub stroke_width: f64,
    pub marker_color: String,
    pub marker_radius: f64,
}

impl Default for CurveStyle {
    fn default() -> Self {
        Self {
            width: 800,
            height: 800,
            margin: 40.0,
            grid: (400, 400),
            strokes: ["#1f4e8c".to_string(), "#cd5c5c".to_string()],
            stroke_width: 2.0,
            marker_color: "#000000".to_string(),
            marker_radius: 5.0,
        }
    }
}

/// Zero sets of the two polynomials of `system` over `window` (by default
/// [`PlotWindow::around`] the given points), one stroke group per
/// polynomial, with `real_points` drawn as filled markers. Both axes use the
/// same scale.
pub fn svg_implicit_curves(
    system: &PolynomialSystem,
    real_points: &[[f64; 2]],
    window: Option<PlotWindow>,
    style: &CurveStyle,
) -> Result<String> {
    if system.vars().len() != 2 {
        return Err(Error::UnsupportedDimension(system.vars().len()));
    }
    if system.len() != 2 {
        return Err(Error::NotSquare {
            polys: system.len(),
            vars: 2,
        });
    }
    let window = window.unwrap_or_else(|| PlotWindow::around(real_points));
    window.validate()?;
    if style.grid.0 == 0 || style.grid.1 == 0 {
        return Err(Error::BadWindow);
    }
    let frame = Frame::new(&window, style.width, style.height, style.margin);
    let mut out = String::new();
    header(&mut out, style.width, style.height);
    let (x0, y1) = frame.map(window.x_min, window.y_min);
    let (x1, y0) = frame.map(window.x_max, window.y_max);
    let _ = writeln!(
        out,
        "<rect id=\"window\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#cccccc\"/>",
        num(x0),
        num(y0),
        num(x1 - x0),
        num(y1 - y0)
    );
    for (k, p) in system.polys().iter().enumerate() {
        let segments = marching_squares(real_evaluator(p), &window, style.grid);
        let mut d = String::new();
        for line in chain_segments(&segments) {
            for (i, p) in line.iter().enumerate() {
                let (x, y) = frame.map(p[0], p[1]);
                let _ = write!(d, "{}{} {}", if i == 0 { 'M' } else { 'L' }, num(x), num(y));
            }
        }
        let _ = writeln!(
            out,
            "<g id=\"curve-{}\" class=\"curve\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" stroke-linecap=\"round\">\n<path d=\"{d}\"/>\n</g>",
            k + 1,
            style.strokes[k],
            num(style.stroke_width)
        );
    }
    out.push_str("<g id=\"real-points\">\n");
    for p in real_points {
        let (x, y) = frame.map(p[0], p[1]);
        let _ = writeln!(
            out,
            "<circle class=\"marker\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>",
            num(x),
            num(y),
            num(style.marker_radius),
            style.marker_color
        );
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}
