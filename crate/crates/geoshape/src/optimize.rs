// Copyright 2026 the geoshape Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Boundary value solver for geodesics.
//!
//! The endpoint slices are fixed, so the discrete problem is an
//! unconstrained minimization over the interior slice vertices. A
//! limited-memory quasi-Newton method with a strong Wolfe line search does
//! the work; gradients come from the reverse sweep in [`crate::energy`].
//! Trial steps that collapse an edge are rejected and halved rather than
//! penalized.

use crate::curvegeom::{GeomError, Polygon};
use crate::energy::{self, ObjectiveBreakdown, Path, PathError};
use crate::metrics::MetricCoefficients;
use crate::vec2::Vec2;
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("endpoint curves disagree: {0} vs {1} vertices")]
    SizeMismatch(usize, usize),
    #[error("need at least one time step")]
    NoTimeSteps,
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error(transparent)]
    Path(#[from] PathError),
}

/// Solver knobs. The defaults are sized for desk-scale problems.
#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub max_iters: usize,
    /// Stop when the gradient max-norm drops below
    /// `grad_tol * (1 + |objective|)`.
    pub grad_tol: f64,
    /// Stop when the relative objective decrease over
    /// `step_tol_window` accepted iterations falls below this.
    pub step_tol: f64,
    pub step_tol_window: usize,
    /// Quasi-Newton history length.
    pub memory: usize,
    pub penalty_weight: f64,
    /// Sufficient-decrease constant of the Wolfe conditions.
    pub wolfe_c1: f64,
    /// Curvature constant of the Wolfe conditions.
    pub wolfe_c2: f64,
    /// Trial steps hitting a degenerate edge are halved at most this often.
    pub max_step_halvings: usize,
    /// Iteration budget of one line search.
    pub max_line_search_iters: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_iters: 2000,
            grad_tol: 1e-5,
            step_tol: 1e-10,
            step_tol_window: 5,
            memory: 10,
            penalty_weight: 1.0,
            wolfe_c1: 1e-4,
            wolfe_c2: 0.9,
            max_step_halvings: 30,
            max_line_search_iters: 25,
        }
    }
}

/// Why the solver stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    GradientTolerance,
    StepTolerance,
    MaxIterations,
    LineSearchFailure,
}

impl Termination {
    pub fn converged(&self) -> bool {
        matches!(
            self,
            Termination::GradientTolerance | Termination::StepTolerance
        )
    }

    pub fn describe(&self) -> &'static str {
        match self {
            Termination::GradientTolerance => "gradient tolerance reached",
            Termination::StepTolerance => "objective stalled",
            Termination::MaxIterations => "iteration budget exhausted",
            Termination::LineSearchFailure => "line search failed",
        }
    }
}

/// One accepted iterate.
#[derive(Clone, Copy, Debug)]
pub struct TraceRow {
    pub iter: usize,
    pub objective: f64,
    pub energy: f64,
    pub penalty: f64,
    pub grad_norm: f64,
}

/// Outcome of a [`solve`] call.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub iterations: usize,
    pub objective: f64,
    pub energy: f64,
    pub penalty: f64,
    pub grad_max_norm: f64,
    pub trace: Vec<TraceRow>,
    pub termination: Termination,
}

/// Straight-line interpolation between the endpoint curves. Interior slice
/// `t` (1-based slices `2..T`) sits at `((T - t + 1) c0 + (t - 1) c1) / T`;
/// the endpoints are copied bitwise.
pub fn initial_path(c0: &Polygon, c1: &Polygon, t_steps: usize) -> Result<Path, SolveError> {
    if c0.vertex_count() != c1.vertex_count() {
        return Err(SolveError::SizeMismatch(
            c0.vertex_count(),
            c1.vertex_count(),
        ));
    }
    if t_steps == 0 {
        return Err(SolveError::NoTimeSteps);
    }
    let n = c0.vertex_count();
    let tf = t_steps as f64;
    let mut slices = Vec::with_capacity(t_steps + 1);
    slices.push(c0.clone());
    for i in 1..t_steps {
        // interpolation written in difference form so identical endpoints
        // reproduce c0 bitwise
        let lam = i as f64 / tf;
        let verts = (0..n)
            .map(|v| c0.vertex(v) + lam * (c1.vertex(v) - c0.vertex(v)))
            .collect();
        slices.push(Polygon::new(verts).expect("interpolated slice"));
    }
    slices.push(c1.clone());
    Ok(Path::new(slices)?)
}

/// Result of aligning the labels of a target curve to a source curve.
#[derive(Clone, Debug)]
pub struct AlignResult {
    pub aligned: Polygon,
    /// Cyclic shift applied to the (possibly reversed) target.
    pub shift: usize,
    pub reversed: bool,
    /// Sum of squared vertex distances after alignment.
    pub cost: f64,
}

/// Relabel (and possibly reverse) `c1` to minimize the sum of squared
/// vertex distances to `c0` over all `2 N` candidates. Ties prefer the
/// forward orientation, then the smallest shift.
pub fn align(c0: &Polygon, c1: &Polygon) -> Result<AlignResult, SolveError> {
    let n = c0.vertex_count();
    if c1.vertex_count() != n {
        return Err(SolveError::SizeMismatch(n, c1.vertex_count()));
    }
    let mut best: Option<AlignResult> = None;
    for reversed in [false, true] {
        let candidate = if reversed { c1.reversed() } else { c1.clone() };
        for shift in 0..n {
            let cost: f64 = (0..n)
                .map(|v| (c0.vertex(v) - candidate.vertex((v + shift) % n)).norm_sq())
                .sum();
            let better = match &best {
                None => true,
                Some(b) => cost < b.cost,
            };
            if better {
                best = Some(AlignResult {
                    aligned: candidate.shifted(shift),
                    shift,
                    reversed,
                    cost,
                });
            }
        }
    }
    Ok(best.expect("at least one candidate"))
}

/// Exact gradient of the objective with respect to the interior slice
/// vertices; matches central finite differences.
pub fn gradient(
    path: &Path,
    coeff: &MetricCoefficients,
    penalty_weight: f64,
) -> Result<Vec<Vec<Vec2>>, GeomError> {
    energy::objective_with_gradient(path, coeff, penalty_weight).map(|(_, g)| g)
}

fn flatten(grad: &[Vec<Vec2>]) -> Vec<f64> {
    let mut out = Vec::with_capacity(grad.len() * grad.first().map_or(0, |g| g.len()) * 2);
    for slice in grad {
        for g in slice {
            out.push(g.x);
            out.push(g.y);
        }
    }
    out
}

fn max_norm(x: &[f64]) -> f64 {
    x.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct Evaluation {
    f: f64,
    grad: Vec<f64>,
    breakdown: ObjectiveBreakdown,
}

struct Objective<'a> {
    scratch: Path,
    coeff: &'a MetricCoefficients,
    penalty_weight: f64,
}

impl Objective<'_> {
    fn eval(&mut self, x: &[f64]) -> Result<Evaluation, GeomError> {
        self.scratch.set_interior_coords(x);
        let (breakdown, grad) =
            energy::objective_with_gradient(&self.scratch, self.coeff, self.penalty_weight)?;
        Ok(Evaluation {
            f: breakdown.objective,
            grad: flatten(&grad),
            breakdown,
        })
    }
}

struct LbfgsHistory {
    pairs: VecDeque<(Vec<f64>, Vec<f64>, f64)>, // (s, y, 1 / <y, s>)
    memory: usize,
}

impl LbfgsHistory {
    fn new(memory: usize) -> Self {
        LbfgsHistory {
            pairs: VecDeque::with_capacity(memory),
            memory: memory.max(1),
        }
    }

    fn push(&mut self, s: Vec<f64>, y: Vec<f64>) {
        let ys = dot(&y, &s);
        let sn = dot(&s, &s).sqrt();
        let yn = dot(&y, &y).sqrt();
        // skip pairs that would break positive definiteness
        if ys <= 1e-10 * sn * yn {
            return;
        }
        if self.pairs.len() == self.memory {
            self.pairs.pop_front();
        }
        self.pairs.push_back((s, y, 1.0 / ys));
    }

    /// Two-loop recursion: approximate `-H g`.
    fn direction(&self, g: &[f64]) -> Vec<f64> {
        let mut q: Vec<f64> = g.to_vec();
        let mut alphas = Vec::with_capacity(self.pairs.len());
        for (s, y, rho) in self.pairs.iter().rev() {
            let alpha = rho * dot(s, &q);
            for (qi, yi) in q.iter_mut().zip(y) {
                *qi -= alpha * yi;
            }
            alphas.push(alpha);
        }
        if let Some((s, y, _)) = self.pairs.back() {
            let gamma = dot(s, y) / dot(y, y);
            for qi in q.iter_mut() {
                *qi *= gamma;
            }
        }
        for ((s, y, rho), alpha) in self.pairs.iter().zip(alphas.into_iter().rev()) {
            let beta = rho * dot(y, &q);
            for (qi, si) in q.iter_mut().zip(s) {
                *qi += (alpha - beta) * si;
            }
        }
        for qi in q.iter_mut() {
            *qi = -*qi;
        }
        q
    }
}

struct LineSearchHit {
    x: Vec<f64>,
    eval: Evaluation,
}

/// Strong Wolfe line search (bracket and zoom with bisection). Trial
/// points where the geometry degenerates count as failed sufficient
/// decrease and shrink the step, up to the configured halving budget.
struct WolfeSearch<'a, 'b> {
    obj: &'a mut Objective<'b>,
    x0: &'a [f64],
    d: &'a [f64],
    f0: f64,
    dphi0: f64,
    c1: f64,
    c2: f64,
    halvings: usize,
    max_halvings: usize,
    max_iters: usize,
    /// Best point satisfying sufficient decrease, kept as a fallback when
    /// the curvature condition cannot be met within budget.
    best: Option<(Vec<f64>, Evaluation)>,
}

impl WolfeSearch<'_, '_> {
    fn armijo(&self, alpha: f64, f: f64) -> bool {
        f <= self.f0 + self.c1 * alpha * self.dphi0
    }

    fn trial(&mut self, alpha: f64) -> Option<(Vec<f64>, Evaluation, f64)> {
        let x: Vec<f64> = self
            .x0
            .iter()
            .zip(self.d)
            .map(|(xi, di)| xi + alpha * di)
            .collect();
        let e = self.obj.eval(&x).ok()?;
        let dphi = dot(&e.grad, self.d);
        if self.armijo(alpha, e.f) && self.best.as_ref().is_none_or(|(_, b)| e.f < b.f) {
            self.best = Some((
                x.clone(),
                Evaluation {
                    f: e.f,
                    grad: e.grad.clone(),
                    breakdown: e.breakdown.clone(),
                },
            ));
        }
        Some((x, e, dphi))
    }

    fn strong(&self, dphi: f64) -> bool {
        dphi.abs() <= -self.c2 * self.dphi0
    }

    fn zoom(&mut self, mut lo: f64, mut f_lo: f64, mut hi: f64) -> Option<LineSearchHit> {
        for _ in 0..self.max_iters {
            let alpha = 0.5 * (lo + hi);
            let Some((x, e, dphi)) = self.trial(alpha) else {
                self.halvings += 1;
                if self.halvings > self.max_halvings {
                    return None;
                }
                hi = alpha;
                continue;
            };
            if !self.armijo(alpha, e.f) || e.f >= f_lo {
                hi = alpha;
                continue;
            }
            if self.strong(dphi) {
                return Some(LineSearchHit { x, eval: e });
            }
            if dphi * (hi - lo) >= 0.0 {
                hi = lo;
            }
            lo = alpha;
            f_lo = e.f;
        }
        None
    }

    fn run(&mut self, alpha_init: f64) -> Option<LineSearchHit> {
        if self.dphi0 >= 0.0 {
            return None;
        }
        let mut alpha_prev = 0.0f64;
        let mut f_prev = self.f0;
        let mut alpha = alpha_init.max(f64::MIN_POSITIVE);
        let mut result = None;
        for i in 0..self.max_iters {
            let Some((x, e, dphi)) = self.trial(alpha) else {
                self.halvings += 1;
                if self.halvings > self.max_halvings {
                    break;
                }
                alpha = 0.5 * (alpha_prev + alpha);
                continue;
            };
            if !self.armijo(alpha, e.f) || (i > 0 && e.f >= f_prev) {
                result = self.zoom(alpha_prev, f_prev, alpha);
                break;
            }
            if self.strong(dphi) {
                return Some(LineSearchHit { x, eval: e });
            }
            if dphi >= 0.0 {
                result = self.zoom(alpha, e.f, alpha_prev);
                break;
            }
            alpha_prev = alpha;
            f_prev = e.f;
            alpha = (2.0 * alpha).min(1e10);
        }
        result.or_else(|| self.best.take().map(|(x, eval)| LineSearchHit { x, eval }))
    }
}

/// Minimize the objective over the interior slices of the straight-line
/// initial path between `c0` and `c1`.
///
/// Returns the best iterate together with a report. A failed line search
/// is not an error: the best path found so far comes back with
/// [`Termination::LineSearchFailure`].
pub fn solve(
    c0: &Polygon,
    c1: &Polygon,
    t_steps: usize,
    coeff: &MetricCoefficients,
    config: &SolverConfig,
) -> Result<(Path, SolveReport), SolveError> {
    let mut path = initial_path(c0, c1, t_steps)?;
    let mut obj = Objective {
        scratch: path.clone(),
        coeff,
        penalty_weight: config.penalty_weight,
    };

    let mut x = path.interior_coords();
    // the initial path must be evaluable; later trial failures only reject steps
    let mut current = obj.eval(&x)?;

    let mut trace = vec![TraceRow {
        iter: 0,
        objective: current.f,
        energy: current.breakdown.energy,
        penalty: current.breakdown.penalty,
        grad_norm: max_norm(&current.grad),
    }];
    let mut history = LbfgsHistory::new(config.memory);
    let mut iterations = 0usize;

    let termination = loop {
        let gmax = max_norm(&current.grad);
        if gmax < config.grad_tol * (1.0 + current.f.abs()) {
            break Termination::GradientTolerance;
        }
        if iterations >= config.max_iters {
            break Termination::MaxIterations;
        }
        if iterations >= config.step_tol_window {
            let past = trace[trace.len() - 1 - config.step_tol_window].objective;
            if past - current.f < config.step_tol * (1.0 + current.f.abs()) {
                break Termination::StepTolerance;
            }
        }

        let mut d = history.direction(&current.grad);
        if dot(&d, &current.grad) >= 0.0 {
            // fall back to steepest descent if the model direction is unusable
            d = current.grad.iter().map(|g| -g).collect();
        }
        let alpha_init = if history.pairs.is_empty() {
            1.0 / gmax.max(1.0)
        } else {
            1.0
        };

        let mut search = WolfeSearch {
            obj: &mut obj,
            x0: &x,
            d: &d,
            f0: current.f,
            dphi0: dot(&current.grad, &d),
            c1: config.wolfe_c1,
            c2: config.wolfe_c2,
            halvings: 0,
            max_halvings: config.max_step_halvings,
            max_iters: config.max_line_search_iters,
            best: None,
        };
        let Some(hit) = search.run(alpha_init) else {
            break Termination::LineSearchFailure;
        };

        let s: Vec<f64> = hit.x.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = hit
            .eval
            .grad
            .iter()
            .zip(&current.grad)
            .map(|(a, b)| a - b)
            .collect();
        history.push(s, y);

        x = hit.x;
        current = hit.eval;
        iterations += 1;
        trace.push(TraceRow {
            iter: iterations,
            objective: current.f,
            energy: current.breakdown.energy,
            penalty: current.breakdown.penalty,
            grad_norm: max_norm(&current.grad),
        });
    };

    path.set_interior_coords(&x);
    let report = SolveReport {
        iterations,
        objective: current.f,
        energy: current.breakdown.energy,
        penalty: current.breakdown.penalty,
        grad_max_norm: max_norm(&current.grad),
        trace,
        termination,
    };
    Ok((path, report))
}
