// Copyright 2026 the geoshape Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Shared helpers for the integration test suites.

#![allow(dead_code)]

pub mod oracle;

use geoshape::{compute_geometry, Polygon, Vec2};
use rand::Rng;
use std::f64::consts::PI;

pub fn circle(n: usize, radius: f64, center: Vec2) -> Polygon {
    Polygon::new(
        (0..n)
            .map(|v| {
                let th = 2.0 * PI * v as f64 / n as f64;
                center + Vec2::new(radius * th.cos(), radius * th.sin())
            })
            .collect(),
    )
    .unwrap()
}

/// Random star-shaped polygon with curvature capped at `max_kappa`.
pub fn random_polygon(rng: &mut impl Rng, n_min: usize, n_max: usize, max_kappa: f64) -> Polygon {
    loop {
        let n = rng.gen_range(n_min..=n_max);
        let verts: Vec<Vec2> = (0..n)
            .map(|v| {
                let th = 2.0 * PI * v as f64 / n as f64;
                let r = rng.gen_range(0.5..1.5);
                Vec2::new(r * th.cos(), r * th.sin())
            })
            .collect();
        let poly = Polygon::new(verts).unwrap();
        if let Ok(g) = compute_geometry(&poly) {
            if g.kappa.iter().all(|&k| k <= max_kappa) {
                return poly;
            }
        }
    }
}

pub fn random_field(rng: &mut impl Rng, n: usize, amplitude: f64) -> Vec<Vec2> {
    (0..n)
        .map(|_| {
            Vec2::new(
                rng.gen_range(-amplitude..amplitude),
                rng.gen_range(-amplitude..amplitude),
            )
        })
        .collect()
}

pub fn rel_err(got: f64, expect: f64) -> f64 {
    (got - expect).abs() / expect.abs().max(1e-300)
}

/// One pass line per acceptance criterion.
pub fn criterion_pass(id: u32, detail: &str) {
    println!("criterion {id}: PASS - {detail}");
}
