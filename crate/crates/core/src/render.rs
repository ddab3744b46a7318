//! SVG rendering of walks on both lattices and ASCII rendering on the square lattice.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::lattice::{SquareWalk, TriWalk, Walk};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderOptions {
    /// Pixels per lattice unit.
    pub scale: f64,
    /// Margin around the box, in lattice units.
    pub margin: f64,
    pub grid: bool,
    pub draw_box: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { scale: 20.0, margin: 1.0, grid: true, draw_box: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Svg,
    Ascii,
}

/// Renders a walk in the requested format.
pub fn render(walk: &Walk, format: Format, opts: &RenderOptions) -> Result<String> {
    match (walk, format) {
        (Walk::Square(w), Format::Svg) => Ok(square_svg(w, opts)),
        (Walk::Tri(w), Format::Svg) => Ok(tri_svg(w, opts)),
        (Walk::Square(w), Format::Ascii) => Ok(square_ascii(w)),
        (Walk::Tri(_), Format::Ascii) => Err(Error::invalid("ASCII rendering is only available on the square lattice")),
    }
}

struct Canvas {
    out: String,
    scale: f64,
    x0: f64,
    y1: f64,
}

impl Canvas {
    /// `(x_min, x_max, y_min, y_max)` in embedded coordinates, margin included.
    fn new(bounds: (f64, f64, f64, f64), scale: f64) -> Self {
        let (x0, x1, y0, y1) = bounds;
        let w = (x1 - x0) * scale;
        let h = (y1 - y0) * scale;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.2} {h:.2}">"#
        );
        let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
        Canvas { out, scale, x0, y1 }
    }

    fn pt(&self, (x, y): (f64, f64)) -> String {
        format!("{:.2},{:.2}", (x - self.x0) * self.scale, (self.y1 - y) * self.scale)
    }

    fn path(&mut self, pts: &[(f64, f64)], attrs: &str) {
        let p: Vec<String> = pts.iter().map(|&q| self.pt(q)).collect();
        let _ = writeln!(self.out, r#"<polyline points="{}" fill="none" {attrs}/>"#, p.join(" "));
    }

    fn polygon(&mut self, pts: &[(f64, f64)], attrs: &str) {
        let p: Vec<String> = pts.iter().map(|&q| self.pt(q)).collect();
        let _ = writeln!(self.out, r#"<polygon points="{}" fill="none" {attrs}/>"#, p.join(" "));
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64), attrs: &str) {
        self.path(&[a, b], attrs);
    }

    fn dot(&mut self, p: (f64, f64), r: f64, attrs: &str) {
        let (x, y) = ((p.0 - self.x0) * self.scale, (self.y1 - p.1) * self.scale);
        let _ = writeln!(self.out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r:.2}" {attrs}/>"#);
    }

    fn finish(mut self) -> String {
        self.out.push_str("</svg>\n");
        self.out
    }
}

const GRID: &str = r##"stroke="#dddddd" stroke-width="0.5""##;
const BOX: &str = r##"stroke="#3366cc" stroke-width="1" stroke-dasharray="4 2""##;
const WALK: &str = r##"stroke="black" stroke-width="2" stroke-linejoin="round" class="walk""##;
const START: &str = r##"fill="#cc2222" class="start""##;
const END: &str = r##"fill="black" class="end""##;

fn markers(c: &mut Canvas, pts: &[(f64, f64)]) {
    if pts.len() > 1 {
        c.path(pts, WALK);
        c.dot(*pts.last().unwrap(), 3.0, END);
    }
    c.dot(pts[0], 4.0, START);
}

/// SVG drawing of a square-lattice walk with unit grid and bounding rectangle.
pub fn square_svg(w: &SquareWalk, opts: &RenderOptions) -> String {
    let b = w.bbox();
    let m = opts.margin;
    let (x0, x1, y0, y1) = (b.x_min as f64 - m, b.x_max as f64 + m, b.y_min as f64 - m, b.y_max as f64 + m);
    let mut c = Canvas::new((x0, x1, y0, y1), opts.scale);
    if opts.grid {
        for x in x0.ceil() as i32..=x1.floor() as i32 {
            c.line((x as f64, y0), (x as f64, y1), GRID);
        }
        for y in y0.ceil() as i32..=y1.floor() as i32 {
            c.line((x0, y as f64), (x1, y as f64), GRID);
        }
    }
    if opts.draw_box {
        let (a, bb, cc, d) = (b.x_min as f64, b.x_max as f64, b.y_min as f64, b.y_max as f64);
        c.polygon(&[(a, cc), (bb, cc), (bb, d), (a, d)], BOX);
    }
    let pts: Vec<(f64, f64)> = w.vertices().iter().map(|&(x, y)| (x as f64, y as f64)).collect();
    markers(&mut c, &pts);
    c.finish()
}

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

/// The 60-degree embedding of the triangular lattice.
pub fn tri_embed(x: i32, y: i32) -> (f64, f64) {
    (x as f64 + y as f64 / 2.0, y as f64 * SQRT3_2)
}

/// SVG drawing of a triangular-lattice walk with its north-pointing box.
pub fn tri_svg(w: &TriWalk, opts: &RenderOptions) -> String {
    let b = w.bbox();
    let corners = [(b.x_min, b.y_min), (b.s_max - b.y_min, b.y_min), (b.x_min, b.s_max - b.x_min)];
    let emb: Vec<(f64, f64)> = corners.iter().map(|&(x, y)| tri_embed(x, y)).collect();
    let m = opts.margin;
    let xs = emb.iter().map(|p| p.0);
    let ys = emb.iter().map(|p| p.1);
    let x0 = xs.clone().fold(f64::INFINITY, f64::min) - m;
    let x1 = xs.fold(f64::NEG_INFINITY, f64::max) + m;
    let y0 = ys.clone().fold(f64::INFINITY, f64::min) - m;
    let y1 = ys.fold(f64::NEG_INFINITY, f64::max) + m;
    let mut c = Canvas::new((x0, x1, y0, y1), opts.scale);
    if opts.grid {
        // Lattice points inside the box, joined along the three lattice directions.
        for y in b.y_min..=b.s_max - b.x_min {
            for x in b.x_min..=b.s_max - y {
                let p = tri_embed(x, y);
                if x + y < b.s_max {
                    c.line(p, tri_embed(x + 1, y), GRID);
                    c.line(p, tri_embed(x, y + 1), GRID);
                }
                if x > b.x_min {
                    c.line(p, tri_embed(x - 1, y + 1), GRID);
                }
            }
        }
    }
    if opts.draw_box {
        c.polygon(&emb, BOX);
    }
    let pts: Vec<(f64, f64)> = w.vertices().iter().map(|&(x, y)| tri_embed(x, y)).collect();
    markers(&mut c, &pts);
    c.finish()
}

/// Character drawing: `o` start, `*` end, `+` other vertices, `-`/`|` steps,
/// `.` unvisited points of the box. North is up.
pub fn square_ascii(w: &SquareWalk) -> String {
    let b = w.bbox();
    let cols = (2 * b.width() + 1) as usize;
    let rows = (2 * b.height() + 1) as usize;
    let mut g = vec![vec![' '; cols]; rows];
    let cell = |x: i32, y: i32| ((2 * (b.y_max - y)) as usize, (2 * (x - b.x_min)) as usize);
    for y in b.y_min..=b.y_max {
        for x in b.x_min..=b.x_max {
            let (r, c) = cell(x, y);
            g[r][c] = '.';
        }
    }
    let v = w.vertices();
    for pair in v.windows(2) {
        let (r0, c0) = cell(pair[0].0, pair[0].1);
        let (r1, c1) = cell(pair[1].0, pair[1].1);
        g[(r0 + r1) / 2][(c0 + c1) / 2] = if r0 == r1 { '-' } else { '|' };
        g[r1][c1] = '+';
    }
    let (r, c) = cell(v[v.len() - 1].0, v[v.len() - 1].1);
    if v.len() > 1 {
        g[r][c] = '*';
    }
    let (r, c) = cell(0, 0);
    g[r][c] = 'o';
    let mut out = String::new();
    for row in g {
        out.push_str(row.iter().collect::<String>().trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(s: &str, pat: &str) -> usize {
        s.matches(pat).count()
    }

    #[test]
    fn empty_walk_is_a_single_marker() {
        let svg = square_svg(&SquareWalk::default(), &RenderOptions::default());
        assert_eq!(count(&svg, "class=\"start\""), 1);
        assert_eq!(count(&svg, "class=\"walk\""), 0);
        assert_eq!(square_ascii(&SquareWalk::default()), "o\n");
    }

    #[test]
    fn nes_polyline() {
        let w: SquareWalk = "NES".parse().unwrap();
        let svg = square_svg(&w, &RenderOptions { grid: false, ..Default::default() });
        let line = svg.lines().find(|l| l.contains("class=\"walk\"")).unwrap();
        let pts = line.split('"').nth(1).unwrap().split(' ').count();
        assert_eq!(pts, 4);
        let b = w.bbox();
        assert_eq!((b.width(), b.height()), (1, 1));
        assert_eq!(square_ascii(&w), "+-+\n| |\no *\n");
        assert_eq!(svg, square_svg(&w, &RenderOptions { grid: false, ..Default::default() }));
    }

    #[test]
    fn triangular_walk_inside_outline() {
        let w: TriWalk = "2150".parse().unwrap();
        let svg = tri_svg(&w, &RenderOptions::default());
        assert_eq!(count(&svg, "<polygon"), 1);
        let b = w.bbox();
        for (x, y) in w.vertices() {
            assert!(x >= b.x_min && y >= b.y_min && x + y <= b.s_max);
        }
        assert!(render(&Walk::Tri(w), Format::Ascii, &RenderOptions::default()).is_err());
    }
}
