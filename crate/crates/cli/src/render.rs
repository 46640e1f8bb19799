//! CSV and SVG output. All numbers go through `{}` (shortest round-trip)
//! in CSV and fixed precision in SVG, so output bytes depend only on input.

use std::fmt::Write as _;

use num_complex::Complex64;
use toeplitz_pc::spectra::{Provenance, SpectrumDescription};

fn provenance_label(p: Provenance) -> String {
    match p {
        Provenance::RangePiece(i) => format!("range{i}"),
        Provenance::JumpArc(t) => format!("arc@{t}"),
    }
}

pub fn spectrum_csv(spec: &SpectrumDescription, header: &[String]) -> String {
    let mut out = String::new();
    for line in header {
        let _ = writeln!(out, "# {line}");
    }
    out.push_str("segment_id,provenance,theta_or_r,re,im\n");
    for (id, seg) in spec.segments.iter().enumerate() {
        let label = provenance_label(seg.provenance);
        for (param, z) in seg.params.iter().zip(&seg.curve.points) {
            let _ = writeln!(out, "{id},{label},{param},{},{}", z.re, z.im);
        }
    }
    out
}

const SIZE: f64 = 800.0;
const ARC_COLORS: [&str; 6] = [
    "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

/// Square window around all points with a 10% margin on each side.
fn window(points: &[Complex64]) -> (f64, f64, f64) {
    let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for z in points {
        lo_x = lo_x.min(z.re);
        hi_x = hi_x.max(z.re);
        lo_y = lo_y.min(z.im);
        hi_y = hi_y.max(z.im);
    }
    let span = (hi_x - lo_x).max(hi_y - lo_y).max(1e-9);
    let pad = 0.1 * span;
    let cx = 0.5 * (lo_x + hi_x);
    let cy = 0.5 * (lo_y + hi_y);
    (cx, cy, span + 2.0 * pad)
}

pub fn spectrum_svg(spec: &SpectrumDescription, title: &str) -> String {
    let points: Vec<Complex64> = spec.points().collect();
    let (cx, cy, side) = window(&points);
    let scale = SIZE / side;
    let map = |z: Complex64| {
        (
            (z.re - cx) * scale + SIZE / 2.0,
            SIZE / 2.0 - (z.im - cy) * scale,
        )
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" viewBox="0 0 800 800">"#
    );
    let _ = writeln!(out, "<title>{title}</title>");
    out.push_str("<rect width=\"800\" height=\"800\" fill=\"white\"/>\n");
    let (ox, oy) = map(Complex64::new(0.0, 0.0));
    let _ = writeln!(
        out,
        r##"<line x1="0" y1="{oy:.3}" x2="800" y2="{oy:.3}" stroke="#999" stroke-width="1"/>"##
    );
    let _ = writeln!(
        out,
        r##"<line x1="{ox:.3}" y1="0" x2="{ox:.3}" y2="800" stroke="#999" stroke-width="1"/>"##
    );

    let mut arc_index = 0;
    for seg in &spec.segments {
        let (color, width, dash) = match seg.provenance {
            Provenance::RangePiece(_) => ("#000000", 2.0, ""),
            Provenance::JumpArc(_) => {
                let c = ARC_COLORS[arc_index % ARC_COLORS.len()];
                arc_index += 1;
                (c, 2.5, r#" stroke-dasharray="8 4""#)
            }
        };
        let class = provenance_label(seg.provenance);
        if seg.curve.points.len() == 1 {
            let (x, y) = map(seg.curve.points[0]);
            let _ = writeln!(
                out,
                r#"<circle class="{class}" cx="{x:.3}" cy="{y:.3}" r="4" fill="{color}"/>"#
            );
            continue;
        }
        let path: Vec<String> = seg
            .curve
            .points
            .iter()
            .map(|&z| {
                let (x, y) = map(z);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline class="{class}" fill="none" stroke="{color}" stroke-width="{width}"{dash} points="{}"/>"#,
            path.join(" ")
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use toeplitz_pc::spectra::essential_spectrum;
    use toeplitz_pc::PiecewiseSymbol;

    #[test]
    fn csv_has_one_row_per_sample() {
        let spec = essential_spectrum(&PiecewiseSymbol::sign(), 2.0, 16).unwrap();
        let csv = spectrum_csv(&spec, &["p=2".into()]);
        let rows = csv.lines().filter(|l| !l.starts_with('#')).count() - 1;
        assert_eq!(rows, spec.points().count());
        assert!(csv.starts_with("# p=2\nsegment_id,"));
    }

    #[test]
    fn svg_is_fixed_size_and_colours_arcs() {
        let spec = essential_spectrum(&PiecewiseSymbol::sign(), 3.0, 16).unwrap();
        let svg = spectrum_svg(&spec, "sgn");
        assert!(svg.contains(r#"width="800" height="800""#));
        assert!(svg.contains(ARC_COLORS[0]) && svg.contains(ARC_COLORS[1]));
    }
}
