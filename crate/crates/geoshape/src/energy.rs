// Copyright 2026 the geoshape Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! The discrete horizontal path energy.
//!
//! A path is a stack of `T + 1` polygon slices with fixed first and last
//! slice. The velocity of time step `t` is paired with the edge normals of
//! both neighboring geometry slices `s in {t, t+1}`, producing the triangle
//! fields `a`, `a_s`, `a_ss`. Each time step contributes
//!
//! ```text
//! energy[t] = ( sum over s, v, w of
//!     [ (A0 + A1 k^2 + A2 k^4 + A3 kappa_s^2) a^2
//!       + (B0 + B1 k^2) a_s^2 + C0 a_ss^2 ] * vol_tri ) / 8
//! ```
//!
//! and the total energy averages the time steps. The objective adds a
//! penalty measuring the deviation of every slice from constant-speed
//! parametrization. Accumulation order is fixed (ascending time step,
//! geometry slice, vertex, triangle side), so results are bit-reproducible.

use crate::curvegeom::{
    compute_geometry, pullback_vertices, CurveGeometry, GeomAdjoints, GeomError, Polygon,
};
use crate::metrics::MetricCoefficients;
use crate::vec2::Vec2;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PathError {
    #[error("a path needs at least 2 slices, got {0}")]
    TooFewSlices(usize),
    #[error("slice {index} has {got} vertices but slice 0 has {expected}")]
    SliceSizeMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },
}

/// A discrete path of curves: `T + 1` slices sharing one vertex count.
/// The first and last slice are boundary data; only interior slices are
/// ever mutated by the solver.
#[derive(Clone, Debug)]
pub struct Path {
    slices: Vec<Polygon>,
}

impl Path {
    pub fn new(slices: Vec<Polygon>) -> Result<Path, PathError> {
        if slices.len() < 2 {
            return Err(PathError::TooFewSlices(slices.len()));
        }
        let n = slices[0].vertex_count();
        for (index, s) in slices.iter().enumerate() {
            if s.vertex_count() != n {
                return Err(PathError::SliceSizeMismatch {
                    index,
                    expected: n,
                    got: s.vertex_count(),
                });
            }
        }
        Ok(Path { slices })
    }

    /// Number of time steps `T`; slices are indexed `0..=T`.
    #[inline]
    pub fn time_steps(&self) -> usize {
        self.slices.len() - 1
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.slices[0].vertex_count()
    }

    pub fn slices(&self) -> &[Polygon] {
        &self.slices
    }

    pub fn slice(&self, t: usize) -> &Polygon {
        &self.slices[t]
    }

    pub fn first(&self) -> &Polygon {
        &self.slices[0]
    }

    pub fn last(&self) -> &Polygon {
        self.slices.last().unwrap()
    }

    /// The same path traversed backwards in time.
    pub fn reversed(&self) -> Path {
        Path {
            slices: self.slices.iter().rev().cloned().collect(),
        }
    }

    /// Flat coordinates of the interior slices, ordered by
    /// (slice, vertex, x then y).
    pub(crate) fn interior_coords(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity((self.slices.len() - 2) * self.vertex_count() * 2);
        for s in &self.slices[1..self.slices.len() - 1] {
            for v in s.vertices() {
                out.push(v.x);
                out.push(v.y);
            }
        }
        out
    }

    pub(crate) fn set_interior_coords(&mut self, x: &[f64]) {
        let n = self.vertex_count();
        let t_count = self.slices.len();
        assert_eq!(x.len(), (t_count - 2) * n * 2, "coordinate vector size");
        let mut i = 0;
        for s in &mut self.slices[1..t_count - 1] {
            for v in s.vertices_mut() {
                v.x = x[i];
                v.y = x[i + 1];
                i += 2;
            }
        }
    }
}

/// Geometry of every slice of a path.
pub fn path_geometries(path: &Path) -> Result<Vec<CurveGeometry>, GeomError> {
    path.slices().iter().map(compute_geometry).collect()
}

/// Time derivative of the path, scaled by the step count:
/// `c_t[t][v] = T * (c[t+1][v] - c[t][v])` for `t in 0..T`.
pub fn velocity(path: &Path) -> Vec<Vec<Vec2>> {
    let t_steps = path.time_steps();
    let n = path.vertex_count();
    let scale = t_steps as f64;
    (0..t_steps)
        .map(|t| {
            (0..n)
                .map(|v| scale * (path.slice(t + 1).vertex(v) - path.slice(t).vertex(v)))
                .collect()
        })
        .collect()
}

/// Triangle fields of one (time step, geometry slice) pair: the paired
/// coefficient `a` and its first and second derivative stencils.
#[derive(Clone, Debug)]
pub struct SliceFields {
    pub a: Vec<[f64; 2]>,
    pub a_s: Vec<[f64; 2]>,
    pub a_ss: Vec<[f64; 2]>,
}

/// Pair a per-vertex field with a per-edge frame on every triangle and
/// apply the derivative stencils.
///
/// With `frame = geom.normal` and `vel` the path velocity this produces the
/// fields of the horizontal energy; with the tangent frame the tangential
/// block; with a constant frame the componentwise stencils used by the
/// Sobolev comparison metrics.
pub fn frame_fields(vel: &[Vec2], frame: &[Vec2], geom: &CurveGeometry) -> SliceFields {
    let n = geom.vertex_count();
    assert_eq!(vel.len(), n, "velocity size must match the curve");
    assert_eq!(frame.len(), n, "frame size must match the curve");

    let mut a = vec![[0.0; 2]; n];
    for v in 0..n {
        a[v][0] = vel[v].dot(frame[geom.prev(v)]);
        a[v][1] = vel[v].dot(frame[v]);
    }

    let mut a_s = vec![[0.0; 2]; n];
    for v in 0..n {
        let p = geom.prev(v);
        let nx = geom.next(v);
        let dframe = frame[v] - frame[p];
        // triangle (v, w = v): forward velocity difference against frame[v]
        let num1 = vel[v].dot(dframe) + (vel[nx] - vel[v]).dot(frame[v]);
        a_s[v][1] = num1 / geom.vol_tri[v][1];
        // triangle (v, w = v-1): backward velocity difference against frame[v-1]
        let num0 = vel[v].dot(dframe) + (vel[v] - vel[p]).dot(frame[p]);
        a_s[v][0] = num0 / geom.vol_tri[v][0];
    }

    let a_ss = second_derivative(&a, geom);
    SliceFields { a, a_s, a_ss }
}

/// Second derivative stencil on a triangle field.
///
/// Neighbor triangles sharing an edge are a `vol_edge` apart, those sharing
/// a vertex a `vol_vert` apart; the two one-sided slopes are differenced
/// and divided by the triangle weight.
pub fn second_derivative(a: &[[f64; 2]], geom: &CurveGeometry) -> Vec<[f64; 2]> {
    let n = geom.vertex_count();
    assert_eq!(a.len(), n, "field size must match the curve");
    let mut out = vec![[0.0; 2]; n];
    for v in 0..n {
        let p = geom.prev(v);
        let nx = geom.next(v);
        // w = v
        let ve = geom.vol_edge[v];
        let vv = geom.vol_vert[v];
        out[v][1] = ((a[nx][0] - a[v][1]) / ve - (a[v][1] - a[v][0]) / vv) / (ve + vv);
        // w = v - 1
        let vep = geom.vol_edge[p];
        out[v][0] = ((a[v][1] - a[v][0]) / vv - (a[v][0] - a[p][1]) / vep) / geom.vol_tri[v][0];
    }
    out
}

/// A scalar per (time step, geometry slice, vertex, triangle side).
#[derive(Clone, Debug)]
pub struct TriangleField {
    t_steps: usize,
    n: usize,
    values: Vec<f64>,
}

impl TriangleField {
    fn from_slices(t_steps: usize, n: usize, per_slice: Vec<Vec<[f64; 2]>>) -> TriangleField {
        let mut values = Vec::with_capacity(4 * t_steps * n);
        for field in &per_slice {
            for v in 0..n {
                values.push(field[v][0]);
                values.push(field[v][1]);
            }
        }
        TriangleField { t_steps, n, values }
    }

    /// Value at time step `t`, geometry slice `t + s_off`, triangle
    /// `(v, side)`.
    pub fn get(&self, t: usize, s_off: usize, v: usize, side: usize) -> f64 {
        debug_assert!(t < self.t_steps && s_off < 2 && v < self.n && side < 2);
        self.values[((t * 2 + s_off) * self.n + v) * 2 + side]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn assemble_field(
    path: &Path,
    geoms: &[CurveGeometry],
    pick: impl Fn(SliceFields) -> Vec<[f64; 2]>,
) -> TriangleField {
    let t_steps = path.time_steps();
    let n = path.vertex_count();
    let vels = velocity(path);
    let mut per_slice = Vec::with_capacity(2 * t_steps);
    for (t, vel) in vels.iter().enumerate() {
        for s_off in 0..2 {
            let geom = &geoms[t + s_off];
            per_slice.push(pick(frame_fields(vel, &geom.normal, geom)));
        }
    }
    TriangleField::from_slices(t_steps, n, per_slice)
}

/// Normal coefficient `a[t,s,v,w] = <c_t[t,v], n_s[w]>`.
pub fn field_a(path: &Path, geoms: &[CurveGeometry]) -> TriangleField {
    assemble_field(path, geoms, |f| f.a)
}

/// First derivative of `a` on triangles.
pub fn field_a_s(path: &Path, geoms: &[CurveGeometry]) -> TriangleField {
    assemble_field(path, geoms, |f| f.a_s)
}

/// Second derivative of `a` on triangles.
pub fn field_a_ss(path: &Path, geoms: &[CurveGeometry]) -> TriangleField {
    assemble_field(path, geoms, |f| f.a_ss)
}

/// Squared deviation of one slice from constant-speed parametrization.
pub fn penalty_slice(geom: &CurveGeometry) -> f64 {
    let n = geom.vertex_count() as f64;
    let mean = geom.length / n;
    geom.vol_edge.iter().map(|ve| (ve - mean) * (ve - mean)).sum()
}

/// Parametrization penalty summed over every slice, endpoints included.
pub fn penalty(geoms: &[CurveGeometry]) -> f64 {
    geoms.iter().map(penalty_slice).sum()
}

/// Objective value with its pieces.
#[derive(Clone, Debug)]
pub struct ObjectiveBreakdown {
    /// `energy + penalty_weight * penalty`.
    pub objective: f64,
    /// Time-averaged horizontal path energy.
    pub energy: f64,
    /// Raw penalty (before weighting).
    pub penalty: f64,
    /// Per-time-step energies.
    pub per_step: Vec<f64>,
}

struct Forward {
    geoms: Vec<CurveGeometry>,
    vels: Vec<Vec<Vec2>>,
    // fields[t][s_off] belongs to geometry slice t + s_off
    fields: Vec<[SliceFields; 2]>,
    breakdown: ObjectiveBreakdown,
}

fn step_energy(coeff: &MetricCoefficients, fields: &SliceFields, geom: &CurveGeometry) -> f64 {
    let n = geom.vertex_count();
    let mut acc = 0.0;
    for v in 0..n {
        let k = geom.kappa[v];
        let k2 = k * k;
        for side in 0..2 {
            let w = geom.tri_edge(v, side);
            let ks = geom.kappa_s[w];
            let alpha = coeff.a0 + coeff.a1 * k2 + coeff.a2 * k2 * k2 + coeff.a3 * ks * ks;
            let beta = coeff.b0 + coeff.b1 * k2;
            let a = fields.a[v][side];
            let a_s = fields.a_s[v][side];
            let a_ss = fields.a_ss[v][side];
            acc += (alpha * a * a + beta * a_s * a_s + coeff.c0 * a_ss * a_ss)
                * geom.vol_tri[v][side];
        }
    }
    acc
}

fn forward(
    path: &Path,
    coeff: &MetricCoefficients,
    penalty_weight: f64,
) -> Result<Forward, GeomError> {
    let t_steps = path.time_steps();
    let geoms = path_geometries(path)?;
    let vels = velocity(path);

    let mut fields = Vec::with_capacity(t_steps);
    let mut per_step = Vec::with_capacity(t_steps);
    for t in 0..t_steps {
        let f0 = frame_fields(&vels[t], &geoms[t].normal, &geoms[t]);
        let f1 = frame_fields(&vels[t], &geoms[t + 1].normal, &geoms[t + 1]);
        let e = (step_energy(coeff, &f0, &geoms[t]) + step_energy(coeff, &f1, &geoms[t + 1])) / 8.0;
        per_step.push(e);
        fields.push([f0, f1]);
    }
    let energy: f64 = per_step.iter().sum::<f64>() / t_steps as f64;
    let pen = penalty(&geoms);
    let breakdown = ObjectiveBreakdown {
        objective: energy + penalty_weight * pen,
        energy,
        penalty: pen,
        per_step,
    };
    Ok(Forward {
        geoms,
        vels,
        fields,
        breakdown,
    })
}

/// Time-averaged horizontal path energy and the per-time-step values.
pub fn total_energy(
    path: &Path,
    coeff: &MetricCoefficients,
) -> Result<(f64, Vec<f64>), GeomError> {
    let fwd = forward(path, coeff, 0.0)?;
    Ok((fwd.breakdown.energy, fwd.breakdown.per_step))
}

/// Full objective: energy plus weighted parametrization penalty.
pub fn objective(
    path: &Path,
    coeff: &MetricCoefficients,
    penalty_weight: f64,
) -> Result<ObjectiveBreakdown, GeomError> {
    Ok(forward(path, coeff, penalty_weight)?.breakdown)
}

/// Objective together with its exact gradient with respect to the interior
/// slice vertices, computed by a reverse sweep of the evaluation graph.
///
/// The returned gradient has one entry per interior slice (`1..T`), each a
/// per-vertex 2-vector. The clamped arccos in the turning angle carries
/// derivative zero once saturated.
pub(crate) fn objective_with_gradient(
    path: &Path,
    coeff: &MetricCoefficients,
    penalty_weight: f64,
) -> Result<(ObjectiveBreakdown, Vec<Vec<Vec2>>), GeomError> {
    let t_steps = path.time_steps();
    let n = path.vertex_count();
    let fwd = forward(path, coeff, penalty_weight)?;
    let lam = 1.0 / (8.0 * t_steps as f64);

    let mut geom_adj: Vec<GeomAdjoints> = (0..=t_steps).map(|_| GeomAdjoints::zeros(n)).collect();
    let mut vel_adj: Vec<Vec<Vec2>> = vec![vec![Vec2::ZERO; n]; t_steps];

    for t in 0..t_steps {
        for s_off in 0..2 {
            let s = t + s_off;
            let geom = &fwd.geoms[s];
            let f = &fwd.fields[t][s_off];
            let adj = &mut geom_adj[s];
            let ct = &fwd.vels[t];

            let mut a_bar = vec![[0.0; 2]; n];
            let mut a_s_bar = vec![[0.0; 2]; n];
            let mut a_ss_bar = vec![[0.0; 2]; n];

            // energy integrand
            for v in 0..n {
                let k = geom.kappa[v];
                let k2 = k * k;
                for side in 0..2 {
                    let w = geom.tri_edge(v, side);
                    let ks = geom.kappa_s[w];
                    let alpha =
                        coeff.a0 + coeff.a1 * k2 + coeff.a2 * k2 * k2 + coeff.a3 * ks * ks;
                    let beta = coeff.b0 + coeff.b1 * k2;
                    let a = f.a[v][side];
                    let a_s = f.a_s[v][side];
                    let a_ss = f.a_ss[v][side];
                    let vt = geom.vol_tri[v][side];

                    a_bar[v][side] += lam * 2.0 * alpha * a * vt;
                    a_s_bar[v][side] += lam * 2.0 * beta * a_s * vt;
                    a_ss_bar[v][side] += lam * 2.0 * coeff.c0 * a_ss * vt;
                    adj.kappa[v] += lam
                        * ((2.0 * coeff.a1 * k + 4.0 * coeff.a2 * k2 * k) * a * a
                            + 2.0 * coeff.b1 * k * a_s * a_s)
                        * vt;
                    adj.kappa_s[w] += lam * 2.0 * coeff.a3 * ks * a * a * vt;
                    adj.vol_tri[v][side] +=
                        lam * (alpha * a * a + beta * a_s * a_s + coeff.c0 * a_ss * a_ss);
                }
            }

            // a_ss stencil
            for v in 0..n {
                let p = geom.prev(v);
                let nx = geom.next(v);
                let ve = geom.vol_edge[v];
                let vv = geom.vol_vert[v];
                {
                    // side 1, w = v
                    let g = a_ss_bar[v][1];
                    let sum = ve + vv;
                    let d1 = (f.a[nx][0] - f.a[v][1]) / ve;
                    let d2 = (f.a[v][1] - f.a[v][0]) / vv;
                    let val = (d1 - d2) / sum;
                    a_bar[nx][0] += g / (ve * sum);
                    a_bar[v][1] += g * (-1.0 / ve - 1.0 / vv) / sum;
                    a_bar[v][0] += g / (vv * sum);
                    adj.vol_edge[v] += g * (-d1 / ve - val) / sum;
                    adj.vol_vert[v] += g * (d2 / vv - val) / sum;
                }
                {
                    // side 0, w = v - 1
                    let g = a_ss_bar[v][0];
                    let vep = geom.vol_edge[p];
                    let vt = geom.vol_tri[v][0];
                    let e1 = (f.a[v][1] - f.a[v][0]) / vv;
                    let e2 = (f.a[v][0] - f.a[p][1]) / vep;
                    let val = (e1 - e2) / vt;
                    a_bar[v][1] += g / (vv * vt);
                    a_bar[v][0] += g * (-1.0 / vv - 1.0 / vep) / vt;
                    a_bar[p][1] += g / (vep * vt);
                    adj.vol_vert[v] += g * (-e1 / vv) / vt;
                    adj.vol_edge[p] += g * (e2 / vep) / vt;
                    adj.vol_tri[v][0] += g * (-val / vt);
                }
            }

            // a_s stencil
            for v in 0..n {
                let p = geom.prev(v);
                let nx = geom.next(v);
                {
                    // side 1, w = v
                    let vt = geom.vol_tri[v][1];
                    let g = a_s_bar[v][1] / vt;
                    vel_adj[t][v] -= g * geom.normal[p];
                    vel_adj[t][nx] += g * geom.normal[v];
                    adj.normal[v] += g * ct[nx];
                    adj.normal[p] -= g * ct[v];
                    adj.vol_tri[v][1] -= a_s_bar[v][1] * f.a_s[v][1] / vt;
                }
                {
                    // side 0, w = v - 1
                    let vt = geom.vol_tri[v][0];
                    let g = a_s_bar[v][0] / vt;
                    vel_adj[t][v] += g * geom.normal[v];
                    vel_adj[t][p] -= g * geom.normal[p];
                    adj.normal[v] += g * ct[v];
                    adj.normal[p] -= g * ct[p];
                    adj.vol_tri[v][0] -= a_s_bar[v][0] * f.a_s[v][0] / vt;
                }
            }

            // a pairing
            for v in 0..n {
                for side in 0..2 {
                    let w = geom.tri_edge(v, side);
                    let g = a_bar[v][side];
                    vel_adj[t][v] += g * geom.normal[w];
                    adj.normal[w] += g * ct[v];
                }
            }
        }
    }

    // penalty over every slice
    for (s, geom) in fwd.geoms.iter().enumerate() {
        let nf = n as f64;
        let mean = geom.length / nf;
        let mut residual_sum = 0.0;
        let adj = &mut geom_adj[s];
        for v in 0..n {
            let r = geom.vol_edge[v] - mean;
            adj.vol_edge[v] += penalty_weight * 2.0 * r;
            residual_sum += r;
        }
        adj.length -= penalty_weight * 2.0 * residual_sum / nf;
    }

    // pull geometry adjoints back to slice vertices
    let mut slice_grad: Vec<Vec<Vec2>> = fwd
        .geoms
        .iter()
        .zip(geom_adj.iter_mut())
        .map(|(geom, adj)| pullback_vertices(geom, adj))
        .collect();

    // velocity: c_t[t][v] = T * (c[t+1][v] - c[t][v])
    let scale = t_steps as f64;
    for t in 0..t_steps {
        for v in 0..n {
            let g = scale * vel_adj[t][v];
            slice_grad[t][v] -= g;
            slice_grad[t + 1][v] += g;
        }
    }

    let interior = slice_grad[1..t_steps].to_vec();
    Ok((fwd.breakdown, interior))
}
