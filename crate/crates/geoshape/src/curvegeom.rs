// Copyright 2026 the geoshape Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Discrete differential geometry of closed polygons.
//!
//! A curve is a closed polygon with cyclic vertex indexing. All geometric
//! quantities live on their natural domain: edges carry the arc-length
//! measure, tangents and normals; vertices carry turning angles and
//! curvature; "triangles" pair a vertex with one of its two neighboring
//! edges and carry the weight `vol_vert[v] + vol_edge[w]`.

use crate::vec2::Vec2;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("polygon needs at least 3 vertices, got {count}")]
    TooFewVertices { count: usize },
    #[error("non-finite coordinate at vertex {index}")]
    NonFiniteCoordinate { index: usize },
    #[error("degenerate edge {index}: length {length:.3e} below threshold {threshold:.3e}")]
    DegenerateEdge {
        index: usize,
        length: f64,
        threshold: f64,
    },
}

/// A closed polygon with at least three vertices. Indexing is cyclic.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    vertices: Vec<Vec2>,
}

impl Polygon {
    pub fn new(vertices: Vec<Vec2>) -> Result<Polygon, GeomError> {
        if vertices.len() < 3 {
            return Err(GeomError::TooFewVertices {
                count: vertices.len(),
            });
        }
        if let Some(index) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(GeomError::NonFiniteCoordinate { index });
        }
        Ok(Polygon { vertices })
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    #[inline]
    pub fn vertex(&self, v: usize) -> Vec2 {
        self.vertices[v]
    }

    pub(crate) fn vertices_mut(&mut self) -> &mut [Vec2] {
        &mut self.vertices
    }

    /// Axis-aligned bounding box as (min corner, max corner).
    pub fn bounding_box(&self) -> (Vec2, Vec2) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices[1..] {
            lo.x = lo.x.min(v.x);
            lo.y = lo.y.min(v.y);
            hi.x = hi.x.max(v.x);
            hi.y = hi.y.max(v.y);
        }
        (lo, hi)
    }

    pub fn bbox_diagonal(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        (hi - lo).norm()
    }

    /// New polygon with every vertex mapped through `f`.
    pub fn map(&self, f: impl Fn(Vec2) -> Vec2) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Cyclic relabeling: vertex `v` of the result is vertex `(v + shift) % n`.
    pub fn shifted(&self, shift: usize) -> Polygon {
        let n = self.vertices.len();
        Polygon {
            vertices: (0..n).map(|v| self.vertices[(v + shift) % n]).collect(),
        }
    }

    /// Orientation reversal keeping vertex 0 in place.
    pub fn reversed(&self) -> Polygon {
        let n = self.vertices.len();
        Polygon {
            vertices: (0..n).map(|v| self.vertices[(n - v) % n]).collect(),
        }
    }
}

/// Options for [`compute_geometry_with`].
#[derive(Clone, Copy, Debug)]
pub struct GeomConfig {
    /// Degenerate-edge threshold, relative to the bounding-box diagonal.
    pub eps_edge_rel: f64,
    /// Multiply the turning-angle curvature by the sign of the tangent
    /// cross product. Off by default; every energy in this crate uses the
    /// unsigned convention.
    pub signed_curvature: bool,
}

impl Default for GeomConfig {
    fn default() -> Self {
        GeomConfig {
            eps_edge_rel: 1e-12,
            signed_curvature: false,
        }
    }
}

/// Per-slice cache of every discrete geometric quantity.
///
/// Triangle-indexed arrays use `[v][side]` where `side == 0` pairs vertex
/// `v` with edge `v-1` and `side == 1` pairs it with edge `v`.
#[derive(Clone, Debug)]
pub struct CurveGeometry {
    n: usize,
    /// Edge vectors `c[v+1] - c[v]`.
    pub edge: Vec<Vec2>,
    /// Edge lengths.
    pub vol_edge: Vec<f64>,
    /// Vertex weights `(vol_edge[v-1] + vol_edge[v]) / 2`.
    pub vol_vert: Vec<f64>,
    /// Triangle weights `vol_vert[v] + vol_edge[w]`.
    pub vol_tri: Vec<[f64; 2]>,
    /// Unit edge tangents.
    pub tangent: Vec<Vec2>,
    /// Unit edge normals, the clockwise quarter turn of the tangent.
    pub normal: Vec<Vec2>,
    /// Total length.
    pub length: f64,
    /// Turning angle at each vertex, in [0, pi].
    pub angle: Vec<f64>,
    /// Curvature `angle[v] / vol_vert[v]`.
    pub kappa: Vec<f64>,
    /// Edge-based curvature derivative `(kappa[v+1] - kappa[v]) / vol_edge[v]`.
    pub kappa_s: Vec<f64>,
    /// Absolute degenerate-edge threshold used when this cache was built.
    pub eps_edge: f64,
}

impl CurveGeometry {
    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn next(&self, v: usize) -> usize {
        if v + 1 == self.n {
            0
        } else {
            v + 1
        }
    }

    #[inline]
    pub fn prev(&self, v: usize) -> usize {
        if v == 0 {
            self.n - 1
        } else {
            v - 1
        }
    }

    /// Edge index `w` of triangle `(v, side)`.
    #[inline]
    pub fn tri_edge(&self, v: usize, side: usize) -> usize {
        debug_assert!(side < 2);
        if side == 0 {
            self.prev(v)
        } else {
            v
        }
    }
}

pub fn compute_geometry(curve: &Polygon) -> Result<CurveGeometry, GeomError> {
    compute_geometry_with(curve, &GeomConfig::default())
}

pub fn compute_geometry_with(
    curve: &Polygon,
    config: &GeomConfig,
) -> Result<CurveGeometry, GeomError> {
    let n = curve.vertex_count();
    let eps_edge = config.eps_edge_rel * curve.bbox_diagonal();

    let pts = curve.vertices();
    let mut edge = Vec::with_capacity(n);
    let mut vol_edge = Vec::with_capacity(n);
    for v in 0..n {
        let e = pts[(v + 1) % n] - pts[v];
        let len = e.norm();
        if len <= eps_edge {
            return Err(GeomError::DegenerateEdge {
                index: v,
                length: len,
                threshold: eps_edge,
            });
        }
        edge.push(e);
        vol_edge.push(len);
    }

    let prev = |v: usize| if v == 0 { n - 1 } else { v - 1 };
    let next = |v: usize| if v + 1 == n { 0 } else { v + 1 };

    let vol_vert: Vec<f64> = (0..n)
        .map(|v| (vol_edge[prev(v)] + vol_edge[v]) / 2.0)
        .collect();
    let vol_tri: Vec<[f64; 2]> = (0..n)
        .map(|v| [vol_vert[v] + vol_edge[prev(v)], vol_vert[v] + vol_edge[v]])
        .collect();
    let tangent: Vec<Vec2> = (0..n).map(|v| edge[v] * (1.0 / vol_edge[v])).collect();
    let normal: Vec<Vec2> = tangent.iter().map(|t| t.perp_cw()).collect();
    let length: f64 = vol_edge.iter().sum();

    let mut angle = Vec::with_capacity(n);
    let mut kappa = Vec::with_capacity(n);
    for v in 0..n {
        let dot = tangent[prev(v)].dot(tangent[v]).clamp(-1.0, 1.0);
        let mut ang = dot.acos();
        if config.signed_curvature {
            let sign = tangent[prev(v)].cross(tangent[v]);
            if sign < 0.0 {
                ang = -ang;
            }
        }
        angle.push(ang);
        kappa.push(ang / vol_vert[v]);
    }

    let kappa_s: Vec<f64> = (0..n)
        .map(|v| (kappa[next(v)] - kappa[v]) / vol_edge[v])
        .collect();

    Ok(CurveGeometry {
        n,
        edge,
        vol_edge,
        vol_vert,
        vol_tri,
        tangent,
        normal,
        length,
        angle,
        kappa,
        kappa_s,
        eps_edge,
    })
}

/// Edge-based divided difference of a per-vertex scalar field:
/// `(field[v+1] - field[v]) / vol_edge[v]`.
pub fn d_s_edge(field: &[f64], geom: &CurveGeometry) -> Vec<f64> {
    let n = geom.vertex_count();
    assert_eq!(field.len(), n, "field length must match vertex count");
    (0..n)
        .map(|v| (field[geom.next(v)] - field[v]) / geom.vol_edge[v])
        .collect()
}

/// Adjoint accumulators for the geometry fields consumed by the path energy.
#[derive(Clone, Debug)]
pub(crate) struct GeomAdjoints {
    pub normal: Vec<Vec2>,
    pub vol_edge: Vec<f64>,
    pub vol_vert: Vec<f64>,
    pub vol_tri: Vec<[f64; 2]>,
    pub kappa: Vec<f64>,
    pub kappa_s: Vec<f64>,
    pub length: f64,
}

impl GeomAdjoints {
    pub fn zeros(n: usize) -> GeomAdjoints {
        GeomAdjoints {
            normal: vec![Vec2::ZERO; n],
            vol_edge: vec![0.0; n],
            vol_vert: vec![0.0; n],
            vol_tri: vec![[0.0; 2]; n],
            kappa: vec![0.0; n],
            kappa_s: vec![0.0; n],
            length: 0.0,
        }
    }
}

/// Pull accumulated geometry adjoints back to per-vertex adjoints.
///
/// Assumes the unsigned curvature convention. The clamped arccos gets
/// derivative zero once its argument saturates.
pub(crate) fn pullback_vertices(geom: &CurveGeometry, adj: &mut GeomAdjoints) -> Vec<Vec2> {
    let n = geom.vertex_count();

    // vol_tri[v][side] = vol_vert[v] + vol_edge[w]
    for v in 0..n {
        for side in 0..2 {
            let g = adj.vol_tri[v][side];
            adj.vol_vert[v] += g;
            adj.vol_edge[geom.tri_edge(v, side)] += g;
        }
    }

    // kappa_s[v] = (kappa[v+1] - kappa[v]) / vol_edge[v]
    for v in 0..n {
        let g = adj.kappa_s[v];
        let ve = geom.vol_edge[v];
        adj.kappa[geom.next(v)] += g / ve;
        adj.kappa[v] -= g / ve;
        adj.vol_edge[v] -= g * geom.kappa_s[v] / ve;
    }

    // kappa[v] = angle[v] / vol_vert[v]
    let mut angle_bar = vec![0.0; n];
    for v in 0..n {
        let g = adj.kappa[v];
        let vv = geom.vol_vert[v];
        angle_bar[v] += g / vv;
        adj.vol_vert[v] -= g * geom.kappa[v] / vv;
    }

    // angle[v] = acos(clamp(<tangent[v-1], tangent[v]>))
    let mut tangent_bar = vec![Vec2::ZERO; n];
    for v in 0..n {
        let p = geom.prev(v);
        let dot = geom.tangent[p].dot(geom.tangent[v]);
        let dacos = if dot.abs() >= 1.0 {
            0.0
        } else {
            -1.0 / (1.0 - dot * dot).sqrt()
        };
        let g = angle_bar[v] * dacos;
        tangent_bar[p] += g * geom.tangent[v];
        tangent_bar[v] += g * geom.tangent[p];
    }

    // vol_vert[v] = (vol_edge[v-1] + vol_edge[v]) / 2
    for v in 0..n {
        let g = adj.vol_vert[v] * 0.5;
        adj.vol_edge[geom.prev(v)] += g;
        adj.vol_edge[v] += g;
    }

    // length = sum of vol_edge
    for v in 0..n {
        adj.vol_edge[v] += adj.length;
    }

    // normal[v] = (tangent[v].y, -tangent[v].x)
    for v in 0..n {
        tangent_bar[v].y += adj.normal[v].x;
        tangent_bar[v].x -= adj.normal[v].y;
    }

    // tangent[v] = edge[v] / vol_edge[v]
    let mut edge_bar = vec![Vec2::ZERO; n];
    for v in 0..n {
        let ve = geom.vol_edge[v];
        edge_bar[v] += tangent_bar[v] * (1.0 / ve);
        adj.vol_edge[v] -= tangent_bar[v].dot(geom.tangent[v]) / ve;
    }

    // vol_edge[v] = |edge[v]|
    for v in 0..n {
        edge_bar[v] += adj.vol_edge[v] * geom.tangent[v];
    }

    // edge[v] = c[v+1] - c[v]
    let mut vertex_bar = vec![Vec2::ZERO; n];
    for v in 0..n {
        vertex_bar[geom.next(v)] += edge_bar[v];
        vertex_bar[v] -= edge_bar[v];
    }
    vertex_bar
}
