// Copyright 2026 the geoshape Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

// index-based cyclic stencils read better than iterator chains here
#![allow(clippy::needless_range_loop)]

//! Geodesics between unparametrized closed planar curves.
//!
//! Curves are closed polygons. Deformations are measured by curvature
//! weighted metrics that act on the normal component of the motion, so the
//! horizontal projection onto shape space is plain pointwise normal
//! projection. Geodesics between two shapes are computed by minimizing a
//! discretized horizontal path energy over the interior slices of a path
//! with fixed endpoint curves, plus a penalty that pins the parametrization
//! to constant speed.
//!
//! - [`curvegeom`]: discrete differential geometry of closed polygons
//! - [`splitting`]: normal/tangential decomposition of deformation fields
//! - [`metrics`]: the coefficient metric family, presets and comparisons
//! - [`energy`]: the discrete horizontal path energy and penalty
//! - [`optimize`]: exact gradients and the quasi-Newton boundary value solver
//! - [`shapes`], [`io`], [`svg`]: generators, file formats, filmstrip output

pub mod curvegeom;
pub mod energy;
pub mod io;
pub mod metrics;
pub mod optimize;
pub mod shapes;
pub mod splitting;
pub mod svg;
pub mod vec2;

#[cfg(test)]
pub(crate) mod testutil;

pub use curvegeom::{compute_geometry, CurveGeometry, GeomConfig, GeomError, Polygon};
pub use energy::{ObjectiveBreakdown, Path};
pub use metrics::{MetricCoefficients, MetricPreset};
pub use optimize::{SolveReport, SolverConfig, Termination};
pub use vec2::Vec2;
