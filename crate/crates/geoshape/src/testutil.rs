// Copyright 2026 the geoshape Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Shared fixtures for unit tests.

use crate::curvegeom::Polygon;
use crate::vec2::Vec2;
use proptest::prelude::*;
use std::f64::consts::PI;

pub fn unit_square() -> Polygon {
    Polygon::new(vec![
        Vec2::new(0.0, 0.0),
        Vec2::new(1.0, 0.0),
        Vec2::new(1.0, 1.0),
        Vec2::new(0.0, 1.0),
    ])
    .unwrap()
}

pub fn regular_ngon(n: usize, radius: f64) -> Polygon {
    Polygon::new(
        (0..n)
            .map(|v| {
                let th = 2.0 * PI * v as f64 / n as f64;
                Vec2::new(radius * th.cos(), radius * th.sin())
            })
            .collect(),
    )
    .unwrap()
}

/// Deterministic pseudo-random vertex field, good enough for invariants.
pub fn wavy_field(n: usize, seed: u64) -> Vec<Vec2> {
    (0..n)
        .map(|v| {
            let s = seed as f64;
            Vec2::new(
                ((v as f64 + 1.3) * (s * 0.61 + 0.7)).sin(),
                ((v as f64 + 2.1) * (s * 0.37 + 1.9)).cos(),
            )
        })
        .collect()
}

prop_compose! {
    /// Star-shaped polygon with per-vertex radii in [0.6, 1.4].
    pub fn radial_polygon(n_min: usize, n_max: usize)
        (n in n_min..=n_max)
        (radii in prop::collection::vec(0.6f64..1.4, n), phase in 0.0f64..1.0)
        -> Polygon
    {
        let n = radii.len();
        Polygon::new((0..n).map(|v| {
            let th = 2.0 * PI * (v as f64 + phase) / n as f64;
            Vec2::new(radii[v] * th.cos(), radii[v] * th.sin())
        }).collect()).unwrap()
    }
}
