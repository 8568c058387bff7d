// Copyright 2026 the geoshape Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Filmstrip rendering of a path of curves.
//!
//! Slices are drawn left to right as closed polylines, evenly subsampled to
//! at most twelve frames, sharing one scale so that growth and shrinkage
//! stay visible. Output is plain SVG text with fixed-precision coordinates,
//! byte-for-byte deterministic for identical inputs.

use crate::energy::Path;
use std::fmt::Write;

const CELL: f64 = 120.0;
const MARGIN: f64 = 10.0;
const MAX_FRAMES: usize = 12;

/// Indices of the slices to draw: all of them if few, otherwise an even
/// subsample that keeps the first and last.
fn frame_indices(slice_count: usize) -> Vec<usize> {
    if slice_count <= MAX_FRAMES {
        return (0..slice_count).collect();
    }
    (0..MAX_FRAMES)
        .map(|k| (k * (slice_count - 1) + (MAX_FRAMES - 1) / 2) / (MAX_FRAMES - 1))
        .collect()
}

/// Render the filmstrip as an SVG document.
pub fn filmstrip(path: &Path) -> String {
    let frames = frame_indices(path.slices().len());

    // shared bounding box over every slice, so all frames use one scale
    let mut lo = path.slice(0).vertex(0);
    let mut hi = lo;
    for s in path.slices() {
        for &v in s.vertices() {
            lo.x = lo.x.min(v.x);
            lo.y = lo.y.min(v.y);
            hi.x = hi.x.max(v.x);
            hi.y = hi.y.max(v.y);
        }
    }
    let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-12);
    let scale = (CELL - 2.0 * MARGIN) / span;

    let width = CELL * frames.len() as f64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{CELL}" viewBox="0 0 {width} {CELL}">"#
    );
    let _ = writeln!(
        out,
        r##"<rect width="{width}" height="{CELL}" fill="#ffffff"/>"##
    );

    for (i, &t) in frames.iter().enumerate() {
        let x0 = CELL * i as f64 + MARGIN + (CELL - 2.0 * MARGIN - (hi.x - lo.x) * scale) / 2.0;
        let y0 = MARGIN + (CELL - 2.0 * MARGIN - (hi.y - lo.y) * scale) / 2.0;
        let mut d = String::new();
        for (j, &v) in path.slice(t).vertices().iter().enumerate() {
            let px = x0 + (v.x - lo.x) * scale;
            // flip: SVG y grows downward
            let py = y0 + (hi.y - v.y) * scale;
            let _ = write!(d, "{}{px:.3},{py:.3}", if j == 0 { "M" } else { " L" });
        }
        d.push_str(" Z");
        let _ = writeln!(
            out,
            r##"<path d="{d}" fill="none" stroke="#1f3552" stroke-width="1.4"/>"##
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvegeom::Polygon;
    use crate::testutil::regular_ngon;
    use crate::vec2::Vec2;

    fn sample_path(t_steps: usize) -> Path {
        let c0 = regular_ngon(10, 1.0);
        let slices = (0..=t_steps)
            .map(|t| {
                let d = t as f64 / t_steps as f64;
                Polygon::new(c0.vertices().iter().map(|&v| v + Vec2::new(d, 0.0)).collect())
                    .unwrap()
            })
            .collect();
        Path::new(slices).unwrap()
    }

    #[test]
    fn subsampling_keeps_endpoints() {
        assert_eq!(frame_indices(5), vec![0, 1, 2, 3, 4]);
        let idx = frame_indices(21);
        assert_eq!(idx.len(), 12);
        assert_eq!(idx[0], 0);
        assert_eq!(*idx.last().unwrap(), 20);
        assert!(idx.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn deterministic_bytes() {
        let path = sample_path(20);
        let a = filmstrip(&path);
        let b = filmstrip(&path);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.ends_with("</svg>\n"));
        assert_eq!(a.matches("<path").count(), 12);
    }
}
