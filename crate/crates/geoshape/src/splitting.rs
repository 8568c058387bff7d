// Copyright 2026 the geoshape Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Normal/tangential decomposition of deformation fields.
//!
//! For the metric family implemented here the horizontal bundle of the
//! shape-space projection coincides with the pointwise normal bundle, so
//! the horizontal projection of a deformation is plain normal projection.
//! The triangle-level split pairs each vertex vector with the frames of
//! both neighboring edges; the vertex-level projection uses a length
//! weighted average normal.

use crate::curvegeom::CurveGeometry;
use crate::vec2::Vec2;
use thiserror::Error;

/// A discrete tangent vector to the space of curves: one 2-vector per vertex.
pub type VertexField = Vec<Vec2>;

#[derive(Debug, Error)]
pub enum SplitError {
    #[error("field has {got} entries but the curve has {expected} vertices")]
    SizeMismatch { expected: usize, got: usize },
    #[error("vertex normal vanishes at vertex {index} (antipodal adjacent edge normals)")]
    ZeroVertexNormal { index: usize },
}

/// Per-triangle normal and tangential coefficients of a vertex field.
///
/// `a[v][side]` pairs `h[v]` with the normal of edge `v-1` (`side == 0`)
/// or edge `v` (`side == 1`); `b` does the same with the tangent.
#[derive(Clone, Debug)]
pub struct SplitField {
    pub a: Vec<[f64; 2]>,
    pub b: Vec<[f64; 2]>,
}

impl SplitField {
    /// Rebuild the vertex vector on each triangle from its coefficients.
    /// Both sides reproduce the original vector since each edge frame is
    /// orthonormal.
    pub fn reconstruct(&self, geom: &CurveGeometry) -> Vec<[Vec2; 2]> {
        let n = geom.vertex_count();
        assert_eq!(self.a.len(), n);
        (0..n)
            .map(|v| {
                let mut out = [Vec2::ZERO; 2];
                for side in 0..2 {
                    let w = geom.tri_edge(v, side);
                    out[side] =
                        self.a[v][side] * geom.normal[w] + self.b[v][side] * geom.tangent[w];
                }
                out
            })
            .collect()
    }
}

/// Decompose `h` against the edge frames of both triangles at each vertex.
pub fn split(h: &[Vec2], geom: &CurveGeometry) -> Result<SplitField, SplitError> {
    let n = geom.vertex_count();
    if h.len() != n {
        return Err(SplitError::SizeMismatch {
            expected: n,
            got: h.len(),
        });
    }
    let mut a = vec![[0.0; 2]; n];
    let mut b = vec![[0.0; 2]; n];
    for v in 0..n {
        for side in 0..2 {
            let w = geom.tri_edge(v, side);
            a[v][side] = h[v].dot(geom.normal[w]);
            b[v][side] = h[v].dot(geom.tangent[w]);
        }
    }
    Ok(SplitField { a, b })
}

/// Unit vertex normals: the edge-length weighted average of the two
/// adjacent edge normals, renormalized.
pub fn vertex_normals(geom: &CurveGeometry) -> Result<Vec<Vec2>, SplitError> {
    let n = geom.vertex_count();
    let mut out = Vec::with_capacity(n);
    for v in 0..n {
        let p = geom.prev(v);
        let avg = geom.vol_edge[p] * geom.normal[p] + geom.vol_edge[v] * geom.normal[v];
        let len = avg.norm();
        if len <= geom.eps_edge {
            return Err(SplitError::ZeroVertexNormal { index: v });
        }
        out.push(avg * (1.0 / len));
    }
    Ok(out)
}

/// Unit vertex tangents, the counter-clockwise quarter turn of
/// [`vertex_normals`].
pub fn vertex_tangents(geom: &CurveGeometry) -> Result<Vec<Vec2>, SplitError> {
    Ok(vertex_normals(geom)?.iter().map(|n| n.perp_ccw()).collect())
}

/// Pointwise projection of `h` onto the vertex normal direction.
///
/// This is the horizontal projection for every metric in this crate: the
/// component along the vertex normal survives, the tangential component is
/// removed.
pub fn horizontal_part(h: &[Vec2], geom: &CurveGeometry) -> Result<VertexField, SplitError> {
    let n = geom.vertex_count();
    if h.len() != n {
        return Err(SplitError::SizeMismatch {
            expected: n,
            got: h.len(),
        });
    }
    let normals = vertex_normals(geom)?;
    Ok((0..n).map(|v| h[v].dot(normals[v]) * normals[v]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvegeom::{compute_geometry, Polygon};
    use crate::testutil::{radial_polygon, unit_square, wavy_field};
    use proptest::prelude::*;

    fn ngon(n: usize) -> Polygon {
        crate::testutil::regular_ngon(n, 1.0)
    }

    #[test]
    fn square_split_example() {
        // h = (1, 0) everywhere; the triangle pairing vertex 1 with edge 1
        // (the right-hand side of the square, normal (1, 0)) gives a = 1,
        // b = 0.
        let g = compute_geometry(&unit_square()).unwrap();
        let h = vec![Vec2::new(1.0, 0.0); 4];
        let s = split(&h, &g).unwrap();
        assert!((s.a[1][1] - 1.0).abs() < 1e-15);
        assert!(s.b[1][1].abs() < 1e-15);
    }

    #[test]
    fn normal_field_has_unit_a() {
        let g = compute_geometry(&ngon(8)).unwrap();
        // pick h[v] equal to the normal of edge v; then on triangle side 1
        // the coefficients are exactly (1, 0)
        let h: Vec<Vec2> = g.normal.clone();
        let s = split(&h, &g).unwrap();
        for v in 0..8 {
            assert!((s.a[v][1] - 1.0).abs() < 1e-15);
            assert!(s.b[v][1].abs() < 1e-15);
        }
    }

    #[test]
    fn horizontal_part_examples() {
        // straight segment: tangential input projects to zero there
        let poly = Polygon::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(1.0, 2.0),
        ])
        .unwrap();
        let g = compute_geometry(&poly).unwrap();
        let mut h = vec![Vec2::ZERO; 4];
        h[1] = Vec2::new(3.0, 0.0); // tangential at the straight vertex 1
        let proj = horizontal_part(&h, &g).unwrap();
        assert!(proj[1].norm() < 1e-14);

        // the vertex normal field is a fixed point
        let g = compute_geometry(&ngon(12)).unwrap();
        let nv = vertex_normals(&g).unwrap();
        let proj = horizontal_part(&nv, &g).unwrap();
        for v in 0..12 {
            assert!((proj[v] - nv[v]).norm() < 1e-14);
        }
    }

    #[test]
    fn zero_vertex_normal_detected() {
        // edge 0 and edge 1 double back with equal length, so their normals
        // cancel in the weighted average: a cusp
        let poly = Polygon::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 0.0),
            Vec2::new(0.5, -1.0),
        ])
        .unwrap();
        let g = compute_geometry(&poly).unwrap();
        match vertex_normals(&g) {
            Err(SplitError::ZeroVertexNormal { index }) => assert_eq!(index, 1),
            other => panic!("expected ZeroVertexNormal, got {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn split_reconstruct_identity(
            poly in radial_polygon(4, 20),
            seed in 0u64..1000,
        ) {
            let g = compute_geometry(&poly).unwrap();
            let n = poly.vertex_count();
            let h = wavy_field(n, seed);
            let s = split(&h, &g).unwrap();
            let rec = s.reconstruct(&g);
            for v in 0..n {
                for side in 0..2 {
                    prop_assert!((rec[v][side] - h[v]).norm() < 1e-13);
                    // orthonormal frame: a^2 + b^2 = |h|^2
                    let ss = s.a[v][side].powi(2) + s.b[v][side].powi(2);
                    prop_assert!((ss - h[v].norm_sq()).abs() < 1e-12);
                }
            }
        }

        #[test]
        fn horizontal_part_idempotent(poly in radial_polygon(4, 20)) {
            let g = compute_geometry(&poly).unwrap();
            let n = poly.vertex_count();
            let h = wavy_field(n, 7);
            let once = horizontal_part(&h, &g).unwrap();
            let twice = horizontal_part(&once, &g).unwrap();
            for v in 0..n {
                prop_assert!((once[v] - twice[v]).norm() < 1e-12);
                // image orthogonal to kernel: h - P h is tangential at the vertex
                let nv = vertex_normals(&g).unwrap();
                prop_assert!((h[v] - once[v]).dot(nv[v]).abs() < 1e-12);
            }
        }
    }
}
