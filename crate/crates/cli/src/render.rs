//! SVG output: the arrangement on the left, its dual subdivision on the right.

use std::fmt::Write;

use troplines_core::{
    Arrangement, ArrangementAnalysis, CellClass, Direction, DualSubdivision, Point2,
};

const PANEL: f64 = 400.0;
const MARGIN: f64 = 20.0;

fn class_name(c: CellClass) -> &'static str {
    match c {
        CellClass::Triangle => "triangle",
        CellClass::Parallelogram => "parallelogram",
        CellClass::Hexagon => "hexagon",
        CellClass::NonUniform4 => "non-uniform-4",
        CellClass::NonUniform5 => "non-uniform-5",
        CellClass::NonUniform6 => "non-uniform-6",
    }
}

fn fill(c: CellClass) -> &'static str {
    match c {
        CellClass::Triangle => "#f4d03f",
        CellClass::Parallelogram => "#aed6f1",
        CellClass::Hexagon => "#a9dfbf",
        _ => "#f5b7b1",
    }
}

/// Affine map from a world box onto a square panel, y pointing up.
struct Frame {
    min_x: f64,
    min_y: f64,
    scale: f64,
    offset_x: f64,
}

impl Frame {
    fn new(min_x: f64, min_y: f64, max_x: f64, max_y: f64, offset_x: f64) -> Frame {
        let span = (max_x - min_x).max(max_y - min_y).max(1.0);
        Frame {
            min_x,
            min_y,
            scale: (PANEL - 2.0 * MARGIN) / span,
            offset_x,
        }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (
            self.offset_x + MARGIN + (x - self.min_x) * self.scale,
            PANEL - MARGIN - (y - self.min_y) * self.scale,
        )
    }
}

fn xy(p: &Point2) -> (f64, f64) {
    (p.x.to_f64(), p.y.to_f64())
}

pub fn render_svg(
    arr: &Arrangement,
    analysis: &ArrangementAnalysis,
    sub: &DualSubdivision,
) -> String {
    let mut out = String::new();
    let width = 2.0 * PANEL;
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{PANEL}" viewBox="0 0 {width} {PANEL}">"#
    )
    .unwrap();
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    draw_arrangement(&mut out, arr, analysis);
    draw_subdivision(&mut out, sub);
    out.push_str("</svg>\n");
    out
}

fn draw_arrangement(out: &mut String, arr: &Arrangement, analysis: &ArrangementAnalysis) {
    let pts: Vec<(f64, f64)> = arr
        .lines()
        .iter()
        .map(|l| xy(&l.vertex))
        .chain(analysis.vertices.iter().map(|v| xy(&v.point)))
        .collect();
    let min_x = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min) - 2.0;
    let min_y = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min) - 2.0;
    let max_x = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max) + 2.0;
    let max_y = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max) + 2.0;
    let frame = Frame::new(min_x, min_y, max_x, max_y, 0.0);

    out.push_str("<g id=\"arrangement\" stroke=\"#1b4f72\" stroke-width=\"2\" fill=\"none\">\n");
    for (idx, line) in arr.lines().iter().enumerate() {
        let (vx, vy) = xy(&line.vertex);
        let mut path = String::new();
        for d in Direction::ALL {
            let end = match d {
                Direction::W => (min_x, vy),
                Direction::S => (vx, min_y),
                Direction::NE => {
                    let t = (max_x - vx).min(max_y - vy);
                    (vx + t, vy + t)
                }
            };
            let (ax, ay) = frame.map(vx, vy);
            let (bx, by) = frame.map(end.0, end.1);
            write!(path, "M{ax:.3},{ay:.3} L{bx:.3},{by:.3} ").unwrap();
        }
        writeln!(
            out,
            r#"<path class="line" data-line="{idx}" d="{}"/>"#,
            path.trim_end()
        )
        .unwrap();
    }
    out.push_str("</g>\n");

    out.push_str("<g id=\"stable-intersections\">\n");
    for (vd, cell) in analysis.vertices.iter().zip(&analysis.cells) {
        if cell.class == CellClass::Triangle {
            continue;
        }
        let (x, y) = xy(&vd.point);
        let (px, py) = frame.map(x, y);
        if vd.c == 0 {
            writeln!(
                out,
                r##"<circle class="stable first-kind" cx="{px:.3}" cy="{py:.3}" r="5" fill="#c0392b"/>"##
            )
            .unwrap();
        } else {
            writeln!(
                out,
                r##"<rect class="stable second-kind" x="{:.3}" y="{:.3}" width="10" height="10" fill="#7d3c98"/>"##,
                px - 5.0,
                py - 5.0
            )
            .unwrap();
        }
    }
    out.push_str("</g>\n");
}

fn draw_subdivision(out: &mut String, sub: &DualSubdivision) {
    let n = sub.n as f64;
    let frame = Frame::new(0.0, 0.0, n, n, PANEL);
    out.push_str("<g id=\"subdivision\" stroke=\"black\" stroke-width=\"1.5\">\n");
    for cell in &sub.cells {
        let points: Vec<String> = cell
            .vertices
            .iter()
            .map(|v| {
                let (x, y) = frame.map(v.i as f64, v.j as f64);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        writeln!(
            out,
            r#"<polygon class="cell {}" fill="{}" points="{}"/>"#,
            class_name(cell.class),
            fill(cell.class),
            points.join(" ")
        )
        .unwrap();
    }
    out.push_str("</g>\n");
}
