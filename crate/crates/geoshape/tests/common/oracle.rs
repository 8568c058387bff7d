// Copyright 2026 the geoshape Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Brute-force evaluator of the discrete path energy.
//!
//! Written directly from the defining formulas as a plain transcription,
//! and deliberately kept independent of the library: its own indexing, its
//! own containers, no shared helpers. The acceptance suite compares the
//! library against this evaluator term by term.

#![allow(clippy::needless_range_loop)]

/// Everything the oracle computes for one path.
pub struct OracleResult {
    pub total_energy: f64,
    pub energies: Vec<f64>,
    pub penalty: f64,
    pub objective: f64,
    // indexed [t][s - t][v][slot], slot 0 for w = v-1, slot 1 for w = v
    pub a: Vec<Vec<Vec<[f64; 2]>>>,
    pub a_s: Vec<Vec<Vec<[f64; 2]>>>,
    pub a_ss: Vec<Vec<Vec<[f64; 2]>>>,
}

impl OracleResult {
    fn slot(v: usize, w: usize, n: usize) -> usize {
        if w == v {
            1
        } else {
            assert_eq!(w, (v + n - 1) % n, "w must neighbor v");
            0
        }
    }

    pub fn a_at(&self, t: usize, s: usize, v: usize, w: usize) -> f64 {
        let n = self.a[0][0].len();
        self.a[t][s - t][v][Self::slot(v, w, n)]
    }

    pub fn a_s_at(&self, t: usize, s: usize, v: usize, w: usize) -> f64 {
        let n = self.a_s[0][0].len();
        self.a_s[t][s - t][v][Self::slot(v, w, n)]
    }

    pub fn a_ss_at(&self, t: usize, s: usize, v: usize, w: usize) -> f64 {
        let n = self.a_ss[0][0].len();
        self.a_ss[t][s - t][v][Self::slot(v, w, n)]
    }
}

/// Evaluate the whole energy pipeline on raw vertex data.
///
/// `slices` holds `T + 1` closed polygons of `N` points each; `coeff` is
/// `[A0, A1, A2, A3, B0, B1, C0]`.
pub fn evaluate(slices: &[Vec<[f64; 2]>], coeff: [f64; 7], penalty_weight: f64) -> OracleResult {
    let t_count = slices.len() - 1;
    let n = slices[0].len();
    assert!(t_count >= 1 && n >= 3);
    let prv = |v: usize| (v + n - 1) % n;
    let nxt = |v: usize| (v + 1) % n;
    let dot2 = |a: [f64; 2], b: [f64; 2]| a[0] * b[0] + a[1] * b[1];

    // per-slice geometric quantities
    let mut vol_edge = vec![vec![0.0; n]; t_count + 1];
    let mut vol_vert = vec![vec![0.0; n]; t_count + 1];
    let mut tangent = vec![vec![[0.0; 2]; n]; t_count + 1];
    let mut normal = vec![vec![[0.0; 2]; n]; t_count + 1];
    let mut length = vec![0.0; t_count + 1];
    let mut kappa = vec![vec![0.0; n]; t_count + 1];
    let mut kappa_s = vec![vec![0.0; n]; t_count + 1];

    for s in 0..=t_count {
        let c = &slices[s];
        for v in 0..n {
            let cx = [c[nxt(v)][0] - c[v][0], c[nxt(v)][1] - c[v][1]];
            vol_edge[s][v] = (cx[0] * cx[0] + cx[1] * cx[1]).sqrt();
            tangent[s][v] = [cx[0] / vol_edge[s][v], cx[1] / vol_edge[s][v]];
            normal[s][v] = [tangent[s][v][1], -tangent[s][v][0]];
        }
        for v in 0..n {
            vol_vert[s][v] = (vol_edge[s][prv(v)] + vol_edge[s][v]) / 2.0;
        }
        length[s] = vol_edge[s].iter().sum();
        for v in 0..n {
            let d = dot2(tangent[s][prv(v)], tangent[s][v]);
            let angle = d.clamp(-1.0, 1.0).acos();
            kappa[s][v] = angle / vol_vert[s][v];
        }
        for v in 0..n {
            kappa_s[s][v] = (kappa[s][nxt(v)] - kappa[s][v]) / vol_edge[s][v];
        }
    }

    let vol_tri =
        |s: usize, v: usize, w: usize| -> f64 { vol_vert[s][v] + vol_edge[s][w] };

    // velocity
    let mut c_t = vec![vec![[0.0; 2]; n]; t_count];
    for t in 0..t_count {
        for v in 0..n {
            for i in 0..2 {
                c_t[t][v][i] = t_count as f64 * (slices[t + 1][v][i] - slices[t][v][i]);
            }
        }
    }

    // the triangle fields, one slot pair per vertex
    let mut a = vec![vec![vec![[0.0; 2]; n]; 2]; t_count];
    for t in 0..t_count {
        for j in 0..2 {
            let s = t + j;
            for v in 0..n {
                for (slot, w) in [(0usize, prv(v)), (1usize, v)] {
                    a[t][j][v][slot] = dot2(c_t[t][v], normal[s][w]);
                }
            }
        }
    }

    let a_at = |a: &Vec<Vec<Vec<[f64; 2]>>>, t: usize, j: usize, v: usize, w: usize| -> f64 {
        let slot = if w == v { 1 } else { 0 };
        a[t][j][v][slot]
    };

    let mut a_s = vec![vec![vec![[0.0; 2]; n]; 2]; t_count];
    for t in 0..t_count {
        for j in 0..2 {
            let s = t + j;
            for v in 0..n {
                for (slot, w) in [(0usize, prv(v)), (1usize, v)] {
                    let num = if w == v {
                        let dn = [
                            normal[s][w][0] - normal[s][prv(w)][0],
                            normal[s][w][1] - normal[s][prv(w)][1],
                        ];
                        let dv = [
                            c_t[t][nxt(v)][0] - c_t[t][v][0],
                            c_t[t][nxt(v)][1] - c_t[t][v][1],
                        ];
                        dot2(c_t[t][v], dn) + dot2(dv, normal[s][w])
                    } else {
                        let dn = [
                            normal[s][nxt(w)][0] - normal[s][w][0],
                            normal[s][nxt(w)][1] - normal[s][w][1],
                        ];
                        let dv = [
                            c_t[t][v][0] - c_t[t][prv(v)][0],
                            c_t[t][v][1] - c_t[t][prv(v)][1],
                        ];
                        dot2(c_t[t][v], dn) + dot2(dv, normal[s][w])
                    };
                    a_s[t][j][v][slot] = num / vol_tri(s, v, w);
                }
            }
        }
    }

    let mut a_ss = vec![vec![vec![[0.0; 2]; n]; 2]; t_count];
    for t in 0..t_count {
        for j in 0..2 {
            let s = t + j;
            for v in 0..n {
                for (slot, w) in [(0usize, prv(v)), (1usize, v)] {
                    a_ss[t][j][v][slot] = if w == v {
                        ((a_at(&a, t, j, nxt(v), w) - a_at(&a, t, j, v, w)) / vol_edge[s][w]
                            - (a_at(&a, t, j, v, w) - a_at(&a, t, j, v, prv(w))) / vol_vert[s][v])
                            / (vol_edge[s][w] + vol_vert[s][v])
                    } else {
                        ((a_at(&a, t, j, v, nxt(w)) - a_at(&a, t, j, v, w)) / vol_vert[s][v]
                            - (a_at(&a, t, j, v, w) - a_at(&a, t, j, prv(v), w)) / vol_edge[s][w])
                            / vol_tri(s, v, w)
                    };
                }
            }
        }
    }

    // penalty over all slices
    let mut penalty = 0.0;
    for s in 0..=t_count {
        for v in 0..n {
            let r = vol_edge[s][v] - length[s] / n as f64;
            penalty += r * r;
        }
    }

    // per-step energies
    let [a0, a1, a2, a3, b0, b1, c0] = coeff;
    let mut energies = Vec::with_capacity(t_count);
    for t in 0..t_count {
        let mut acc = 0.0;
        for j in 0..2 {
            let s = t + j;
            for v in 0..n {
                for (slot, w) in [(0usize, prv(v)), (1usize, v)] {
                    let k = kappa[s][v];
                    let ks = kappa_s[s][w];
                    let alpha = a0 + a1 * k.powi(2) + a2 * k.powi(4) + a3 * ks.powi(2);
                    let beta = b0 + b1 * k.powi(2);
                    acc += (alpha * a[t][j][v][slot].powi(2)
                        + beta * a_s[t][j][v][slot].powi(2)
                        + c0 * a_ss[t][j][v][slot].powi(2))
                        * vol_tri(s, v, w);
                }
            }
        }
        energies.push(acc / 8.0);
    }
    let total_energy = energies.iter().sum::<f64>() / t_count as f64;

    OracleResult {
        total_energy,
        energies,
        penalty,
        objective: total_energy + penalty_weight * penalty,
        a,
        a_s,
        a_ss,
    }
}
