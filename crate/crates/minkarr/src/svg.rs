//! Deterministic SVG rendering of planar instances and their covers.
//!
//! The drawing uses 100 px per unit length with the viewport padded 10%
//! around the bounding box of the homothets. All coordinates are written
//! with 6 decimal digits in a fixed element order, so the output is
//! byte-for-byte stable for a given input. Selected members are shaded, the
//! rest outlined; red centers are hollow circles, blue points filled dots.

use std::fmt::Write as _;

use thiserror::Error;

use crate::cover::CoverResult;
use crate::density::Instance;
use crate::geometry::NormBody;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SvgError {
    #[error("SVG output requires a planar instance (dim = 2), got dim {0}")]
    NotPlanar(usize),
}

const PX_PER_UNIT: f64 = 100.0;
const POINT_RADIUS_PX: f64 = 3.5;

fn fmt(x: f64) -> String {
    format!("{x:.6}")
}

/// Render an instance and its greedy cover as an SVG document.
pub fn render_cover(inst: &Instance, cover: &CoverResult) -> Result<String, SvgError> {
    let dim = inst.body().dim();
    if dim != 2 {
        return Err(SvgError::NotPlanar(dim));
    }
    let body = inst.body();
    let (ext_x, ext_y) = body_extent(body);

    let mut min = [f64::INFINITY; 2];
    let mut max = [f64::NEG_INFINITY; 2];
    let mut grow = |x: f64, y: f64, rx: f64, ry: f64| {
        min[0] = min[0].min(x - rx);
        min[1] = min[1].min(y - ry);
        max[0] = max[0].max(x + rx);
        max[1] = max[1].max(y + ry);
    };
    for h in inst.red() {
        grow(h.center.coords[0], h.center.coords[1], h.ratio * ext_x, h.ratio * ext_y);
    }
    for b in inst.blue() {
        grow(b.coords[0], b.coords[1], 0.0, 0.0);
    }

    let width = (max[0] - min[0]).max(1e-9);
    let height = (max[1] - min[1]).max(1e-9);
    let pad = [0.1 * width, 0.1 * height];
    // SVG y grows downward; flip about the padded top edge.
    let to_px_x = |x: f64| (x - min[0] + pad[0]) * PX_PER_UNIT;
    let to_px_y = |y: f64| (max[1] + pad[1] - y) * PX_PER_UNIT;
    let w_px = (width + 2.0 * pad[0]) * PX_PER_UNIT;
    let h_px = (height + 2.0 * pad[1]) * PX_PER_UNIT;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg version=\"1.1\" xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        fmt(w_px),
        fmt(h_px),
        fmt(w_px),
        fmt(h_px)
    );

    for (i, h) in inst.red().iter().enumerate() {
        let selected = cover.selected.contains(&i);
        let style = if selected {
            "fill=\"#f2b6b6\" fill-opacity=\"0.55\" stroke=\"#a33\" stroke-width=\"2\""
        } else {
            "fill=\"none\" stroke=\"#999\" stroke-width=\"1\""
        };
        let cx = h.center.coords[0];
        let cy = h.center.coords[1];
        match body {
            NormBody::Euclidean { .. } => {
                let _ = writeln!(
                    out,
                    "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" {style}/>",
                    fmt(to_px_x(cx)),
                    fmt(to_px_y(cy)),
                    fmt(h.ratio * PX_PER_UNIT)
                );
            }
            NormBody::Linf { .. } => {
                let _ = writeln!(
                    out,
                    "  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" {style}/>",
                    fmt(to_px_x(cx - h.ratio)),
                    fmt(to_px_y(cy + h.ratio)),
                    fmt(2.0 * h.ratio * PX_PER_UNIT),
                    fmt(2.0 * h.ratio * PX_PER_UNIT)
                );
            }
            NormBody::Polygon(p) => {
                let pts: Vec<String> = p
                    .vertices()
                    .iter()
                    .map(|v| {
                        format!(
                            "{},{}",
                            fmt(to_px_x(cx + h.ratio * v[0])),
                            fmt(to_px_y(cy + h.ratio * v[1]))
                        )
                    })
                    .collect();
                let _ = writeln!(out, "  <polygon points=\"{}\" {style}/>", pts.join(" "));
            }
        }
    }

    for h in inst.red() {
        let _ = writeln!(
            out,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"white\" stroke=\"#c00\" stroke-width=\"1.5\"/>",
            fmt(to_px_x(h.center.coords[0])),
            fmt(to_px_y(h.center.coords[1])),
            fmt(POINT_RADIUS_PX)
        );
    }
    for b in inst.blue() {
        let _ = writeln!(
            out,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#225\" stroke=\"none\"/>",
            fmt(to_px_x(b.coords[0])),
            fmt(to_px_y(b.coords[1])),
            fmt(POINT_RADIUS_PX)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn body_extent(body: &NormBody) -> (f64, f64) {
    match body {
        NormBody::Euclidean { .. } | NormBody::Linf { .. } => (1.0, 1.0),
        NormBody::Polygon(p) => p.vertices().iter().fold((0.0f64, 0.0f64), |(x, y), v| {
            (x.max(v[0].abs()), y.max(v[1].abs()))
        }),
    }
}
