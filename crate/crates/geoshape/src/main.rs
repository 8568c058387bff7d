// Copyright 2026 the geoshape Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

//! Command line front end: shape generation, geodesic solves, energy
//! re-evaluation, resampling, and normal projection of deformations.
//!
//! Exit codes: 0 on success (for `solve`: the optimizer terminated without
//! a line-search failure), 1 on input or I/O errors, 2 when the line
//! search failed and the best path so far was returned.

use clap::{ArgGroup, Parser, Subcommand};
use geoshape::energy;
use geoshape::io::{self, FieldFile, PathFile};
use geoshape::metrics::{MetricCoefficients, MetricPreset};
use geoshape::optimize::{self, SolverConfig, Termination};
use geoshape::shapes;
use geoshape::splitting;
use geoshape::svg;
use geoshape::{compute_geometry, Polygon};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "geoshape",
    about = "Geodesics between closed planar curves under curvature-weighted metrics",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Generate a shape file from a spec like `circle:r=1,n=100`,
    /// `ellipse:rx=2,ry=1,n=100`, `star:k=5,rin=0.5,rout=1,n=100`,
    /// or `square:side=1,n=100`.
    Generate {
        /// Shape spec, `kind:key=value,...`.
        spec: String,
        /// Output shape file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve the geodesic boundary value problem between two shapes.
    #[command(group(ArgGroup::new("src").required(true).args(["from", "gen_from"])))]
    #[command(group(ArgGroup::new("dst").required(true).args(["to", "gen_to"])))]
    #[command(group(ArgGroup::new("met").required(true).args(["metric", "coeffs"])))]
    Solve {
        /// Start shape file.
        #[arg(long)]
        from: Option<PathBuf>,
        /// Generate the start shape from a spec instead.
        #[arg(long)]
        gen_from: Option<String>,
        /// End shape file.
        #[arg(long)]
        to: Option<PathBuf>,
        /// Generate the end shape from a spec instead.
        #[arg(long)]
        gen_to: Option<String>,
        /// Metric preset: metric1, metric2, metric3 or metric4.
        #[arg(long)]
        metric: Option<String>,
        /// Custom coefficients A0,A1,A2,A3,B0,B1,C0.
        #[arg(long)]
        coeffs: Option<String>,
        /// Number of time steps.
        #[arg(short = 'T', long = "time-steps", default_value_t = 20)]
        time_steps: usize,
        /// Cyclically relabel (and possibly reverse) the end shape to match
        /// the start shape before solving.
        #[arg(long)]
        align: bool,
        #[arg(long, default_value_t = 1.0)]
        penalty_weight: f64,
        /// Write the solved path here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write an SVG filmstrip of the solved path here.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write the per-iteration trace here as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Accepted for pipeline compatibility; the solver is deterministic
        /// and ignores it.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 2000)]
        max_iters: usize,
        #[arg(long, default_value_t = 1e-5)]
        grad_tol: f64,
        #[arg(long, default_value_t = 1e-10)]
        step_tol: f64,
        /// Quasi-Newton history length.
        #[arg(long, default_value_t = 10)]
        memory: usize,
    },
    /// Re-evaluate the objective of a stored path and print it as JSON.
    #[command(group(ArgGroup::new("met").required(true).args(["metric", "coeffs"])))]
    Energy {
        /// Path file to evaluate.
        #[arg(long)]
        path: PathBuf,
        #[arg(long)]
        metric: Option<String>,
        #[arg(long)]
        coeffs: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        penalty_weight: f64,
    },
    /// Resample a shape to `n` arclength-uniform vertices.
    Resample {
        /// Input shape file.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Project a deformation field onto the vertex normals of a shape.
    Project {
        /// Shape file the field lives on.
        #[arg(long)]
        shape: PathBuf,
        /// Field file with one vector per vertex.
        #[arg(long)]
        field: PathBuf,
        /// Output field file.
        #[arg(long)]
        out: PathBuf,
    },
}

/// Anything that should end the process with exit code 1.
struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

fn parse_coeffs(raw: &str) -> Result<MetricCoefficients, CliError> {
    let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
    if parts.len() != 7 {
        return Err(CliError(format!(
            "--coeffs expects 7 comma-separated values A0,A1,A2,A3,B0,B1,C0, got {}",
            parts.len()
        )));
    }
    let mut values = [0.0f64; 7];
    for (i, p) in parts.iter().enumerate() {
        values[i] = p
            .parse()
            .map_err(|_| CliError(format!("--coeffs: `{p}` is not a number")))?;
    }
    Ok(MetricCoefficients::from_array(values)?)
}

/// Resolve --metric / --coeffs into coefficients and a label for output files.
fn resolve_metric(
    metric: &Option<String>,
    coeffs: &Option<String>,
) -> Result<(MetricCoefficients, String), CliError> {
    match (metric, coeffs) {
        (Some(name), None) => {
            let preset: MetricPreset = name.parse()?;
            let c = preset.coefficients().ok_or_else(|| {
                CliError(format!(
                    "{name} is a comparison metric; pick one of metric1..metric4 or use --coeffs"
                ))
            })?;
            Ok((c, name.clone()))
        }
        (None, Some(raw)) => {
            let c = parse_coeffs(raw)?;
            let label = format!(
                "coeffs:{}",
                c.to_array().map(|v| v.to_string()).join(",")
            );
            Ok((c, label))
        }
        _ => Err(CliError("exactly one of --metric/--coeffs is required".into())),
    }
}

fn load_endpoint(file: &Option<PathBuf>, spec: &Option<String>) -> Result<Polygon, CliError> {
    match (file, spec) {
        (Some(p), None) => Ok(io::load_shape(p).map_err(|e| CliError(format!("{}: {e}", p.display())))?),
        (None, Some(s)) => Ok(shapes::parse_spec(s)?),
        _ => Err(CliError("exactly one shape source is required".into())),
    }
}

#[derive(Serialize)]
struct EnergyOutput {
    objective: f64,
    energy: f64,
    penalty: f64,
    per_timestep: Vec<f64>,
}

fn trace_csv(report: &optimize::SolveReport) -> String {
    let mut out = String::from("iter,objective,energy,penalty,grad_norm\n");
    for row in &report.trace {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            row.iter, row.objective, row.energy, row.penalty, row.grad_norm
        );
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn run_solve(
    from: Option<PathBuf>,
    gen_from: Option<String>,
    to: Option<PathBuf>,
    gen_to: Option<String>,
    metric: Option<String>,
    coeffs: Option<String>,
    time_steps: usize,
    align: bool,
    penalty_weight: f64,
    out: Option<PathBuf>,
    svg_out: Option<PathBuf>,
    csv_out: Option<PathBuf>,
    max_iters: usize,
    grad_tol: f64,
    step_tol: f64,
    memory: usize,
) -> Result<u8, CliError> {
    let c0 = load_endpoint(&from, &gen_from)?;
    let mut c1 = load_endpoint(&to, &gen_to)?;
    if c0.vertex_count() != c1.vertex_count() {
        return Err(CliError(format!(
            "endpoint shapes have {} and {} vertices; resample one of them first \
             (geoshape resample --n {})",
            c0.vertex_count(),
            c1.vertex_count(),
            c0.vertex_count()
        )));
    }
    let (coeff, label) = resolve_metric(&metric, &coeffs)?;

    if align {
        let result = optimize::align(&c0, &c1)?;
        if result.shift != 0 || result.reversed {
            println!(
                "aligned end shape: shift {}, reversed {}",
                result.shift, result.reversed
            );
        }
        c1 = result.aligned;
    }

    let config = SolverConfig {
        max_iters,
        grad_tol,
        step_tol,
        memory,
        penalty_weight,
        ..SolverConfig::default()
    };
    let (path, report) = optimize::solve(&c0, &c1, time_steps, &coeff, &config)?;

    println!(
        "{} after {} iterations: objective {:.6e}, energy {:.6e}, penalty {:.6e}, grad {:.3e}",
        report.termination.describe(),
        report.iterations,
        report.objective,
        report.energy,
        report.penalty,
        report.grad_max_norm
    );

    if let Some(p) = &out {
        io::write_json(p, &PathFile::from_path(&path, &label, report.objective))?;
        println!("wrote {}", p.display());
    }
    if let Some(p) = &svg_out {
        std::fs::write(p, svg::filmstrip(&path))?;
        println!("wrote {}", p.display());
    }
    if let Some(p) = &csv_out {
        std::fs::write(p, trace_csv(&report))?;
        println!("wrote {}", p.display());
    }

    Ok(if report.termination == Termination::LineSearchFailure {
        2
    } else {
        0
    })
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Generate { spec, out } => {
            let poly = shapes::parse_spec(&spec)?;
            io::save_shape(&out, &poly)?;
            println!("wrote {} ({} vertices)", out.display(), poly.vertex_count());
            Ok(0)
        }
        Command::Solve {
            from,
            gen_from,
            to,
            gen_to,
            metric,
            coeffs,
            time_steps,
            align,
            penalty_weight,
            out,
            svg,
            csv,
            seed: _,
            max_iters,
            grad_tol,
            step_tol,
            memory,
        } => run_solve(
            from,
            gen_from,
            to,
            gen_to,
            metric,
            coeffs,
            time_steps,
            align,
            penalty_weight,
            out,
            svg,
            csv,
            max_iters,
            grad_tol,
            step_tol,
            memory,
        ),
        Command::Energy {
            path,
            metric,
            coeffs,
            penalty_weight,
        } => {
            let file: PathFile =
                io::read_json(&path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
            let p = file.to_path()?;
            let (coeff, _) = resolve_metric(&metric, &coeffs)?;
            let breakdown = energy::objective(&p, &coeff, penalty_weight)?;
            let output = EnergyOutput {
                objective: breakdown.objective,
                energy: breakdown.energy,
                penalty: breakdown.penalty,
                per_timestep: breakdown.per_step,
            };
            println!("{}", serde_json::to_string_pretty(&output)?);
            Ok(0)
        }
        Command::Resample { input, n, out } => {
            let poly =
                io::load_shape(&input).map_err(|e| CliError(format!("{}: {e}", input.display())))?;
            let resampled = shapes::resample(&poly, n)?;
            io::save_shape(&out, &resampled)?;
            println!("wrote {} ({} vertices)", out.display(), n);
            Ok(0)
        }
        Command::Project { shape, field, out } => {
            let poly =
                io::load_shape(&shape).map_err(|e| CliError(format!("{}: {e}", shape.display())))?;
            let field_file: FieldFile =
                io::read_json(&field).map_err(|e| CliError(format!("{}: {e}", field.display())))?;
            let h = field_file.to_field()?;
            if h.len() != poly.vertex_count() {
                return Err(CliError(format!(
                    "field has {} vectors but the shape has {} vertices",
                    h.len(),
                    poly.vertex_count()
                )));
            }
            let geom = compute_geometry(&poly)?;
            let projected = splitting::horizontal_part(&h, &geom)?;
            io::write_json(&out, &FieldFile::from_field(&projected))?;
            println!("wrote {}", out.display());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
