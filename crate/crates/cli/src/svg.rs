//! Minimal SVG dumps; coordinates are rounded to floats for drawing only.

use std::fmt::Write as _;
use std::path::Path;

use basecondary::polygon::P2;
use basecondary::rational::{self, Rational};
use basecondary::tropical::{MorseReport, TropicalPolynomial};
use basecondary::{Error, Result};

const SIZE: f64 = 400.0;
const MARGIN: f64 = 20.0;

struct Frame {
    x0: f64,
    y0: f64,
    scale: f64,
}

impl Frame {
    fn fit(pts: &[(f64, f64)]) -> Frame {
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in pts {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        let span = (x1 - x0).max(y1 - y0).max(1e-9);
        Frame { x0, y0: y1, scale: (SIZE - 2.0 * MARGIN) / span }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (MARGIN + (x - self.x0) * self.scale, MARGIN + (self.y0 - y) * self.scale)
    }
}

fn write(path: &Path, body: &str) -> Result<()> {
    let doc = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\">\n{body}</svg>\n"
    );
    std::fs::write(path, doc).map_err(|e| Error::input(format!("cannot write {}: {e}", path.display())))
}

fn f(p: &P2) -> (f64, f64) {
    (rational::to_f64(&p.0), rational::to_f64(&p.1))
}

pub fn write_polygon(path: &Path, vertices: &[P2]) -> Result<()> {
    let pts: Vec<(f64, f64)> = vertices.iter().map(f).collect();
    let frame = Frame::fit(&pts);
    let mut body = String::new();
    let coords: Vec<String> = pts
        .iter()
        .map(|&p| {
            let (x, y) = frame.map(p);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    let _ = writeln!(body, "<polygon points=\"{}\" fill=\"#cde\" stroke=\"#124\"/>", coords.join(" "));
    write(path, &body)
}

/// Graph of the envelope with critical points marked, red when the
/// polynomial is not Morse.
pub fn write_envelope(path: &Path, p: &TropicalPolynomial, report: &MorseReport) -> Result<()> {
    let locs: Vec<Rational> = report.critical_points.iter().map(|c| c.location.clone()).collect();
    let (lo, hi) = match (locs.first(), locs.last()) {
        (Some(a), Some(b)) => (a - rational::int(1), b + rational::int(1)),
        _ => (rational::int(-1), rational::int(1)),
    };
    let mut xs = vec![lo];
    xs.extend(locs);
    xs.push(hi);
    let graph: Vec<(f64, f64)> = xs.iter().map(|x| (rational::to_f64(x), rational::to_f64(&p.value(x)))).collect();
    let frame = Frame::fit(&graph);
    let mut body = String::new();
    let line: Vec<String> = graph
        .iter()
        .map(|&q| {
            let (x, y) = frame.map(q);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    let _ = writeln!(body, "<polyline points=\"{}\" fill=\"none\" stroke=\"#124\"/>", line.join(" "));
    let color = if report.morse { "#124" } else { "#c22" };
    for &q in &graph[1..graph.len() - 1] {
        let (x, y) = frame.map(q);
        let _ = writeln!(body, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"3\" fill=\"{color}\"/>");
    }
    write(path, &body)
}
