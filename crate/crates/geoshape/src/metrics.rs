// Copyright 2026 the geoshape Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! The coefficient metric family, its named presets, and comparison checks.
//!
//! A member of the family is the quadratic form
//!
//! ```text
//! (A0 + A1 k^2 + A2 k^4 + A3 (D_s k)^2) a^2
//!   + (B0 + B1 k^2) (D_s a)^2 + C0 (D_s^2 a)^2
//! ```
//!
//! integrated over the curve, where `a` is the normal coefficient of a
//! deformation. Horizontal deformations are purely normal for every member,
//! so the path energy only ever sees `a`. A tangential block with the same
//! coefficient shape exists for the block-orthogonality and domination
//! checks; it never influences horizontal geometry.

use crate::curvegeom::CurveGeometry;
use crate::energy::{frame_fields, SliceFields};
use crate::splitting::{vertex_normals, vertex_tangents, SplitError};
use crate::vec2::Vec2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("coefficient {name} must be nonnegative, got {value}")]
    NegativeCoefficient { name: &'static str, value: f64 },
    #[error("A0 must be strictly positive, got {0}")]
    DegenerateOrderZero(f64),
    #[error("unknown metric preset `{0}`")]
    UnknownPreset(String),
    #[error("Sobolev order must be 1 or 2, got {0}")]
    InvalidSobolevOrder(usize),
    #[error("unsupported domination pair ({0}, {1}); use (metric2, h1) or (metric4, h2)")]
    UnsupportedDominationPair(MetricPreset, MetricPreset),
    #[error("preset {0} has no coefficient form")]
    NotACoefficientPreset(MetricPreset),
}

/// Weights selecting one member of the metric family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricCoefficients {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub b0: f64,
    pub b1: f64,
    pub c0: f64,
}

impl MetricCoefficients {
    pub fn new(
        a0: f64,
        a1: f64,
        a2: f64,
        a3: f64,
        b0: f64,
        b1: f64,
        c0: f64,
    ) -> Result<Self, MetricsError> {
        let fields = [
            ("A0", a0),
            ("A1", a1),
            ("A2", a2),
            ("A3", a3),
            ("B0", b0),
            ("B1", b1),
            ("C0", c0),
        ];
        for (name, value) in fields {
            if !value.is_finite() || value < 0.0 {
                return Err(MetricsError::NegativeCoefficient { name, value });
            }
        }
        if a0 <= 0.0 {
            return Err(MetricsError::DegenerateOrderZero(a0));
        }
        Ok(MetricCoefficients {
            a0,
            a1,
            a2,
            a3,
            b0,
            b1,
            c0,
        })
    }

    pub fn to_array(self) -> [f64; 7] {
        [
            self.a0, self.a1, self.a2, self.a3, self.b0, self.b1, self.c0,
        ]
    }

    pub fn from_array(c: [f64; 7]) -> Result<Self, MetricsError> {
        MetricCoefficients::new(c[0], c[1], c[2], c[3], c[4], c[5], c[6])
    }

    /// Termwise comparison: every coefficient of `self` at most that of
    /// `other`, making `other` the pointwise stronger quadratic form.
    pub fn dominated_by(&self, other: &MetricCoefficients) -> bool {
        self.to_array()
            .iter()
            .zip(other.to_array().iter())
            .all(|(a, b)| a <= b)
    }
}

/// Named metrics exposed on the CLI plus the two Sobolev comparison metrics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MetricPreset {
    /// Curvature weighted L2 metric `(1 + 2 k^2) a^2`.
    Metric1,
    /// First order metric `(1 + 2 k^2) a^2 + 2 (D_s a)^2`.
    Metric2,
    /// All order-zero terms of the second order metric.
    Metric3,
    /// Full second order metric.
    Metric4,
    /// Standard Sobolev metric of order one (comparison only).
    H1,
    /// Standard Sobolev metric of order two (comparison only).
    H2,
}

impl MetricPreset {
    pub const CLI_PRESETS: [MetricPreset; 4] = [
        MetricPreset::Metric1,
        MetricPreset::Metric2,
        MetricPreset::Metric3,
        MetricPreset::Metric4,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            MetricPreset::Metric1 => "metric1",
            MetricPreset::Metric2 => "metric2",
            MetricPreset::Metric3 => "metric3",
            MetricPreset::Metric4 => "metric4",
            MetricPreset::H1 => "h1",
            MetricPreset::H2 => "h2",
        }
    }

    /// Coefficients for the family presets; `None` for the Sobolev metrics.
    pub fn coefficients(&self) -> Option<MetricCoefficients> {
        let c = match self {
            MetricPreset::Metric1 => [1.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            MetricPreset::Metric2 => [1.0, 2.0, 0.0, 0.0, 2.0, 0.0, 0.0],
            MetricPreset::Metric3 => [1.0, 2.0, 4.0, 4.0, 0.0, 0.0, 0.0],
            MetricPreset::Metric4 => [1.0, 2.0, 4.0, 4.0, 2.0, 16.0, 4.0],
            _ => return None,
        };
        Some(MetricCoefficients::from_array(c).expect("preset coefficients are valid"))
    }

    /// Sobolev order for `h1`/`h2`; `None` for the family presets.
    pub fn sobolev_order(&self) -> Option<usize> {
        match self {
            MetricPreset::H1 => Some(1),
            MetricPreset::H2 => Some(2),
            _ => None,
        }
    }
}

impl fmt::Display for MetricPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricPreset {
    type Err = MetricsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "metric1" => Ok(MetricPreset::Metric1),
            "metric2" => Ok(MetricPreset::Metric2),
            "metric3" => Ok(MetricPreset::Metric3),
            "metric4" => Ok(MetricPreset::Metric4),
            "h1" => Ok(MetricPreset::H1),
            "h2" => Ok(MetricPreset::H2),
            other => Err(MetricsError::UnknownPreset(other.to_string())),
        }
    }
}

/// Evaluate the normal-block quadratic form on triangle fields.
///
/// Curvature is taken at the triangle's vertex, its derivative at the
/// triangle's edge. The sum over the 2N triangles carries a 1/4 factor so
/// that a field sampled from a smooth curve approximates the line integral.
pub fn evaluate_normal_quadratic(
    coeff: &MetricCoefficients,
    fields: &SliceFields,
    geom: &CurveGeometry,
) -> f64 {
    let n = geom.vertex_count();
    assert_eq!(fields.a.len(), n, "field size must match the curve");
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
    acc / 4.0
}

/// Value of the full quadratic form on a vertex field, split by block.
#[derive(Clone, Copy, Debug)]
pub struct QuadraticValue {
    pub normal: f64,
    pub tangential: f64,
    pub total: f64,
}

/// Evaluate the metric on a general vertex field: normal block on the
/// normal coefficients plus a tangential block with the same weights on the
/// tangential coefficients.
pub fn evaluate_quadratic_form(
    coeff: &MetricCoefficients,
    h: &[Vec2],
    geom: &CurveGeometry,
) -> QuadraticValue {
    let normal = evaluate_normal_quadratic(coeff, &frame_fields(h, &geom.normal, geom), geom);
    let tangential = evaluate_normal_quadratic(coeff, &frame_fields(h, &geom.tangent, geom), geom);
    QuadraticValue {
        normal,
        tangential,
        total: normal + tangential,
    }
}

/// Discrete Sobolev metric of order `l` on a vertex field, built from the
/// componentwise triangle fields so that derivative stencils match the
/// family metrics exactly.
pub fn evaluate_sobolev(
    order: usize,
    h: &[Vec2],
    geom: &CurveGeometry,
) -> Result<f64, MetricsError> {
    if order != 1 && order != 2 {
        return Err(MetricsError::InvalidSobolevOrder(order));
    }
    let n = geom.vertex_count();
    assert_eq!(h.len(), n, "field size must match the curve");
    let ex = vec![Vec2::new(1.0, 0.0); n];
    let ey = vec![Vec2::new(0.0, 1.0); n];
    let fx = frame_fields(h, &ex, geom);
    let fy = frame_fields(h, &ey, geom);
    let mut acc = 0.0;
    for v in 0..n {
        for side in 0..2 {
            let mut term = fx.a[v][side].powi(2) + fy.a[v][side].powi(2);
            term += fx.a_s[v][side].powi(2) + fy.a_s[v][side].powi(2);
            if order == 2 {
                term += fx.a_ss[v][side].powi(2) + fy.a_ss[v][side].powi(2);
            }
            acc += term * geom.vol_tri[v][side];
        }
    }
    Ok(acc / 4.0)
}

/// Outcome of the cross-block polarization check.
#[derive(Clone, Copy, Debug, Default)]
pub struct BlockOrthogonality {
    /// Largest absolute cross term seen.
    pub max_abs_cross: f64,
    /// Largest cross term relative to the diagonal scale G(h1,h1)+G(h2,h2).
    pub max_rel_cross: f64,
}

/// Polarize the implemented quadratic form on random normal/tangential
/// field pairs and measure the residual coupling between the two blocks.
///
/// The bilinear form of the full metric is compared against the sum of the
/// polarized normal-restricted and tangential-restricted forms. The
/// integrand carries no mixed terms, so the residual is zero up to
/// round-off for any inputs; a nonzero value flags a block-mixing term.
pub fn check_block_orthogonality(
    coeff: &MetricCoefficients,
    geom: &CurveGeometry,
    trials: usize,
    seed: u64,
) -> Result<BlockOrthogonality, SplitError> {
    assert!(trials >= 1, "need at least one trial");
    let n = geom.vertex_count();
    let nv = vertex_normals(geom)?;
    let tv = vertex_tangents(geom)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = BlockOrthogonality::default();

    for _ in 0..trials {
        let h1: Vec<Vec2> = (0..n).map(|v| nv[v] * rng.gen_range(-1.0..1.0)).collect();
        let h2: Vec<Vec2> = (0..n).map(|v| tv[v] * rng.gen_range(-1.0..1.0)).collect();
        let hp: Vec<Vec2> = (0..n).map(|v| h1[v] + h2[v]).collect();
        let hm: Vec<Vec2> = (0..n).map(|v| h1[v] - h2[v]).collect();

        let qp = evaluate_quadratic_form(coeff, &hp, geom);
        let qm = evaluate_quadratic_form(coeff, &hm, geom);
        let bilinear_full = (qp.total - qm.total) / 4.0;
        let bilinear_normal = (qp.normal - qm.normal) / 4.0;
        let bilinear_tangential = (qp.tangential - qm.tangential) / 4.0;
        let cross = bilinear_full - bilinear_normal - bilinear_tangential;

        let diag = evaluate_quadratic_form(coeff, &h1, geom).total
            + evaluate_quadratic_form(coeff, &h2, geom).total;
        let rel = if diag > 0.0 {
            cross.abs() / diag
        } else {
            cross.abs()
        };
        out.max_abs_cross = out.max_abs_cross.max(cross.abs());
        out.max_rel_cross = out.max_rel_cross.max(rel);
    }
    Ok(out)
}

/// Result of a single domination comparison.
#[derive(Clone, Copy, Debug)]
pub struct DominationSlack {
    pub strong: f64,
    pub weak: f64,
    /// `strong - weak`; nonnegative up to round-off.
    pub slack: f64,
}

/// Evaluate `G_strong(h,h) - G_weak(h,h)` with identical stencils on both
/// sides. Supported pairs: (metric2, h1) and (metric4, h2).
pub fn check_domination(
    strong: MetricPreset,
    weak: MetricPreset,
    geom: &CurveGeometry,
    h: &[Vec2],
) -> Result<DominationSlack, MetricsError> {
    let order = match (strong, weak) {
        (MetricPreset::Metric2, MetricPreset::H1) => 1,
        (MetricPreset::Metric4, MetricPreset::H2) => 2,
        _ => return Err(MetricsError::UnsupportedDominationPair(strong, weak)),
    };
    let coeff = strong
        .coefficients()
        .ok_or(MetricsError::NotACoefficientPreset(strong))?;
    let strong_value = evaluate_quadratic_form(&coeff, h, geom).total;
    let weak_value = evaluate_sobolev(order, h, geom)?;
    Ok(DominationSlack {
        strong: strong_value,
        weak: weak_value,
        slack: strong_value - weak_value,
    })
}
