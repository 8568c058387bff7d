// Copyright 2026 the geoshape Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Built-in shape generators and the `kind:key=value,...` spec strings the
//! CLI accepts for them.

use crate::curvegeom::Polygon;
use crate::vec2::Vec2;
use std::collections::HashMap;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ShapeError {
    #[error("invalid shape parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed shape spec `{0}`; expected kind:key=value,...")]
    MalformedSpec(String),
    #[error("unknown shape kind `{0}`")]
    UnknownKind(String),
}

fn check(cond: bool, msg: impl Into<String>) -> Result<(), ShapeError> {
    if cond {
        Ok(())
    } else {
        Err(ShapeError::InvalidParameter(msg.into()))
    }
}

/// `n` vertices at uniform angles on a circle.
pub fn circle(radius: f64, n: usize, center: Vec2) -> Result<Polygon, ShapeError> {
    check(n >= 3, format!("circle needs n >= 3, got {n}"))?;
    check(radius > 0.0, format!("circle radius must be positive, got {radius}"))?;
    let verts = (0..n)
        .map(|v| {
            let th = 2.0 * PI * v as f64 / n as f64;
            center + Vec2::new(radius * th.cos(), radius * th.sin())
        })
        .collect();
    Ok(Polygon::new(verts).expect("valid circle"))
}

/// `n` vertices at uniform parameter on an axis-aligned ellipse.
pub fn ellipse(rx: f64, ry: f64, n: usize, center: Vec2) -> Result<Polygon, ShapeError> {
    check(n >= 3, format!("ellipse needs n >= 3, got {n}"))?;
    check(rx > 0.0 && ry > 0.0, "ellipse radii must be positive")?;
    let verts = (0..n)
        .map(|v| {
            let th = 2.0 * PI * v as f64 / n as f64;
            center + Vec2::new(rx * th.cos(), ry * th.sin())
        })
        .collect();
    Ok(Polygon::new(verts).expect("valid ellipse"))
}

/// `k`-pointed star with radius modulated between `r_in` and `r_out` by a
/// cosine: `r(theta) = (r_in + r_out)/2 + (r_out - r_in)/2 * cos(k theta)`.
pub fn star(k: usize, r_in: f64, r_out: f64, n: usize) -> Result<Polygon, ShapeError> {
    check(n >= 3, format!("star needs n >= 3, got {n}"))?;
    check(k >= 2, format!("star needs k >= 2 points, got {k}"))?;
    check(r_in > 0.0 && r_out > 0.0, "star radii must be positive")?;
    check(r_out >= r_in, "star outer radius must be at least the inner")?;
    let mid = (r_in + r_out) / 2.0;
    let amp = (r_out - r_in) / 2.0;
    let verts = (0..n)
        .map(|v| {
            let th = 2.0 * PI * v as f64 / n as f64;
            let r = mid + amp * (k as f64 * th).cos();
            Vec2::new(r * th.cos(), r * th.sin())
        })
        .collect();
    Ok(Polygon::new(verts).expect("valid star"))
}

/// `n` vertices at uniform perimeter parameter on the square with corners
/// `(0,0)` and `(side, side)`, starting at the origin, counter-clockwise.
pub fn square(side: f64, n: usize) -> Result<Polygon, ShapeError> {
    check(n >= 3, format!("square needs n >= 3, got {n}"))?;
    check(side > 0.0, format!("square side must be positive, got {side}"))?;
    let verts = (0..n)
        .map(|v| {
            // perimeter position in [0, 4)
            let p = 4.0 * v as f64 / n as f64;
            let pos = match p {
                p if p < 1.0 => Vec2::new(p, 0.0),
                p if p < 2.0 => Vec2::new(1.0, p - 1.0),
                p if p < 3.0 => Vec2::new(3.0 - p, 1.0),
                p => Vec2::new(0.0, 4.0 - p),
            };
            pos * side
        })
        .collect();
    Ok(Polygon::new(verts).expect("valid square"))
}

/// Parse a generator spec like `circle:r=1,n=100` or
/// `star:k=5,rin=0.5,rout=1,n=100`.
///
/// Kinds and keys:
/// - `circle`: `r` (1), `n` (100), `cx`, `cy` (0)
/// - `ellipse`: `rx` (1), `ry` (0.5), `n` (100), `cx`, `cy` (0)
/// - `star`: `k` (5), `rin` (0.5), `rout` (1), `n` (100)
/// - `square`: `side` (1), `n` (100)
pub fn parse_spec(spec: &str) -> Result<Polygon, ShapeError> {
    let (kind, rest) = match spec.split_once(':') {
        Some((k, r)) => (k.trim(), r.trim()),
        None => (spec.trim(), ""),
    };
    let mut params: HashMap<&str, f64> = HashMap::new();
    if !rest.is_empty() {
        for part in rest.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| ShapeError::MalformedSpec(spec.to_string()))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| ShapeError::MalformedSpec(spec.to_string()))?;
            params.insert(key.trim(), value);
        }
    }
    let get = |key: &str, default: f64| params.get(key).copied().unwrap_or(default);
    let get_n = |key: &str, default: usize| -> Result<usize, ShapeError> {
        let raw = get(key, default as f64);
        check(
            raw.fract() == 0.0 && raw >= 0.0,
            format!("{key} must be a nonnegative integer, got {raw}"),
        )?;
        Ok(raw as usize)
    };

    match kind {
        "circle" => circle(
            get("r", 1.0),
            get_n("n", 100)?,
            Vec2::new(get("cx", 0.0), get("cy", 0.0)),
        ),
        "ellipse" => ellipse(
            get("rx", 1.0),
            get("ry", 0.5),
            get_n("n", 100)?,
            Vec2::new(get("cx", 0.0), get("cy", 0.0)),
        ),
        "star" => star(
            get_n("k", 5)?,
            get("rin", 0.5),
            get("rout", 1.0),
            get_n("n", 100)?,
        ),
        "square" => square(get("side", 1.0), get_n("n", 100)?),
        other => Err(ShapeError::UnknownKind(other.to_string())),
    }
}

/// Arclength-uniform resampling to `n` vertices, starting at vertex 0.
pub fn resample(poly: &Polygon, n: usize) -> Result<Polygon, ShapeError> {
    check(n >= 3, format!("resample needs n >= 3, got {n}"))?;
    let m = poly.vertex_count();
    let mut cumulative = Vec::with_capacity(m + 1);
    cumulative.push(0.0);
    for v in 0..m {
        let e = (poly.vertex((v + 1) % m) - poly.vertex(v)).norm();
        cumulative.push(cumulative[v] + e);
    }
    let total = cumulative[m];
    check(total > 0.0, "cannot resample a degenerate polygon")?;

    let mut verts = Vec::with_capacity(n);
    let mut seg = 0usize;
    for j in 0..n {
        let target = total * j as f64 / n as f64;
        while seg + 1 < m && cumulative[seg + 1] <= target {
            seg += 1;
        }
        let seg_len = cumulative[seg + 1] - cumulative[seg];
        let lam = if seg_len > 0.0 {
            (target - cumulative[seg]) / seg_len
        } else {
            0.0
        };
        let a = poly.vertex(seg);
        let b = poly.vertex((seg + 1) % m);
        verts.push(a * (1.0 - lam) + b * lam);
    }
    Polygon::new(verts).map_err(|e| ShapeError::InvalidParameter(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_small_n() {
        let c = circle(1.0, 4, Vec2::ZERO).unwrap();
        let expect = [
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(-1.0, 0.0),
            Vec2::new(0.0, -1.0),
        ];
        for v in 0..4 {
            assert!((c.vertex(v) - expect[v]).norm() < 1e-15);
        }
    }

    #[test]
    fn square_corners() {
        let s = square(1.0, 4).unwrap();
        assert_eq!(
            s.vertices(),
            &[
                Vec2::new(0.0, 0.0),
                Vec2::new(1.0, 0.0),
                Vec2::new(1.0, 1.0),
                Vec2::new(0.0, 1.0),
            ]
        );
    }

    #[test]
    fn star_radii_and_symmetry() {
        let s = star(5, 0.5, 1.0, 100).unwrap();
        let radii: Vec<f64> = (0..100).map(|v| s.vertex(v).norm()).collect();
        let max = radii.iter().cloned().fold(0.0f64, f64::max);
        let min = radii.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!((max - 1.0).abs() < 1e-12);
        assert!((min - 0.5).abs() < 1e-12);
        // five-fold symmetry: shifting labels by 20 rotates by 2 pi / 5
        for v in 0..100 {
            let rotated = s.vertex(v).rotated(2.0 * PI / 5.0);
            assert!((rotated - s.vertex((v + 20) % 100)).norm() < 1e-12);
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(circle(0.0, 10, Vec2::ZERO).is_err());
        assert!(circle(1.0, 2, Vec2::ZERO).is_err());
        assert!(star(1, 0.5, 1.0, 10).is_err());
        assert!(square(-1.0, 10).is_err());
        assert!(parse_spec("blob:r=1").is_err());
        assert!(parse_spec("circle:r").is_err());
    }

    #[test]
    fn spec_parsing() {
        let c = parse_spec("circle:r=2,n=6,cx=1,cy=-1").unwrap();
        assert_eq!(c.vertex_count(), 6);
        assert!((c.vertex(0) - Vec2::new(3.0, -1.0)).norm() < 1e-15);
        // defaults
        let c = parse_spec("circle").unwrap();
        assert_eq!(c.vertex_count(), 100);
    }

    #[test]
    fn resample_uniform() {
        let sq = square(2.0, 4).unwrap();
        let r = resample(&sq, 8).unwrap();
        let g = crate::curvegeom::compute_geometry(&r).unwrap();
        for v in 0..8 {
            assert!((g.vol_edge[v] - 1.0).abs() < 1e-12);
        }
        assert!((g.length - 8.0).abs() < 1e-12);
    }
}
