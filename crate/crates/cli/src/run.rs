//! Executes a resolved plan in memory. Nothing touches the disk here, so a
//! refusal discovered mid-run leaves no partial output behind.

use dtheat::grid::io::{format_float, write_csv, FieldMeta};
use dtheat::grid::{field_lp_norm, solve, Field, ForcingSchedule, Record};
use dtheat::kernel::{
    eval_closed_form, eval_gradient_magnitude, eval_quadrature, eval_time_difference, heat_kernel,
    lp_norm, KernelParams, QuadratureSpec, RadialQuantity,
};
use dtheat::lab::thresholds::BOUNDARY_RATIO;
use dtheat::lab::{
    duhamel_decay_sweep, forced_convergence_sweep, kernel_decay_sweep, l2_optimality_sweep,
    profile_convergence_sweep, solution_decay_sweep, yosida_convergence_sweep, Check, DecayReport,
};
use dtheat::{Error, Result, Warning};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{
    ConvergeTarget, DecayTarget, Figures, KernelCheck, KernelEval, Plan, Resolved, Solve,
};

pub const SCHEMA_VERSION: u32 = 1;

pub struct Artifact {
    pub name: String,
    pub bytes: Vec<u8>,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub schema_version: u32,
    pub name: String,
    pub kind: &'static str,
    pub passed: bool,
    /// No adequacy or route warnings were raised.
    pub evidentiary: bool,
    pub checks: Vec<Check>,
    pub warnings: Vec<Warning>,
    pub files: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<DecayReport>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
}

pub struct Outcome {
    pub files: Vec<Artifact>,
    pub summary: Summary,
}

#[derive(Default)]
struct Partial {
    files: Vec<Artifact>,
    checks: Vec<Check>,
    warnings: Vec<Warning>,
    report: Option<DecayReport>,
    details: Value,
}

fn csv_bytes(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let io = |e: csv::Error| Error::Precondition(format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    w.into_inner()
        .map_err(|e| Error::Precondition(format!("csv: {e}")))
}

fn floats(values: &[f64]) -> Vec<String> {
    values.iter().map(|v| format_float(*v)).collect()
}

fn decay_csv(report: &DecayReport) -> Result<Artifact> {
    let rows = report.points.iter().map(|p| {
        let mut row = vec![p.n.to_string()];
        row.extend(floats(&[p.nh, p.value, p.scaled_value]));
        row
    });
    Ok(Artifact {
        name: "decay.csv".into(),
        bytes: csv_bytes(&["n", "nh", "value", "scaled_value"], rows)?,
    })
}

fn from_report(report: DecayReport) -> Result<Partial> {
    Ok(Partial {
        files: vec![decay_csv(&report)?],
        checks: report.checks.clone(),
        warnings: report.warnings.clone(),
        report: Some(report),
        details: Value::Null,
    })
}

fn log_radii(r_min: f64, r_max: f64, count: usize) -> Vec<f64> {
    let step = (r_max / r_min).ln() / (count - 1) as f64;
    (0..count)
        .map(|i| {
            if i + 1 == count {
                r_max
            } else {
                r_min * (step * i as f64).exp()
            }
        })
        .collect()
}

fn kernel_eval(k: &KernelEval) -> Result<Partial> {
    let params = KernelParams::new(k.n, k.h, k.dim)?;
    let radii = match &k.radii {
        Some(r) => r.clone(),
        None => log_radii(k.r_min, k.r_max, k.count),
    };
    let values = radii
        .iter()
        .map(|&r| match k.quantity {
            RadialQuantity::Kernel => eval_closed_form(&params, r),
            RadialQuantity::Gradient => eval_gradient_magnitude(&params, r),
            RadialQuantity::TimeDifference => eval_time_difference(&params, r),
        })
        .collect::<Result<Vec<f64>>>()?;
    let mut checks = vec![Check::holds(
        "finite",
        values.iter().filter(|v| !v.is_finite()).count(),
    )];
    if k.quantity != RadialQuantity::TimeDifference {
        checks.push(Check::holds(
            "non_negative",
            values.iter().filter(|v| **v < 0.0).count(),
        ));
    }
    let rows = radii.iter().zip(&values).map(|(r, v)| floats(&[*r, *v]));
    Ok(Partial {
        files: vec![Artifact {
            name: "kernel.csv".into(),
            bytes: csv_bytes(&["r", "value"], rows)?,
        }],
        checks,
        ..Default::default()
    })
}

/// Largest quadrature-vs-closed-form gap tolerated at any radius.
const ROUTE_TOLERANCE: f64 = 1e-7;
const MASS_TOLERANCE: f64 = 1e-8;

fn kernel_check(k: &KernelCheck) -> Result<Partial> {
    let params = KernelParams::new(k.n, k.h, k.dim)?;
    let spec = QuadratureSpec::recommended(&params);
    let t = params.time();
    let mut warnings = Vec::new();
    let mut rows = Vec::new();
    let mut worst = 0.0_f64;
    // r² from 1e-2 to 16 times nh spans both asymptotic regimes
    for ratio in log_radii(1e-2, 16.0, k.count) {
        let r = (ratio * t).sqrt();
        let exact = eval_closed_form(&params, r)?;
        let quad = eval_quadrature(&params, r, &spec)?;
        warnings.extend(quad.warnings);
        let rel = ((quad.value - exact) / exact).abs();
        worst = worst.max(rel);
        rows.push(floats(&[r, exact, quad.value, rel]));
    }
    let mass = lp_norm(&params, 1.0)?;
    Ok(Partial {
        files: vec![Artifact {
            name: "kernel_check.csv".into(),
            bytes: csv_bytes(
                &["r", "closed_form", "quadrature", "relative_difference"],
                rows,
            )?,
        }],
        checks: vec![
            Check::at_most("route_agreement", worst, ROUTE_TOLERANCE),
            Check::within("mass", mass, 1.0, MASS_TOLERANCE),
        ],
        warnings,
        ..Default::default()
    })
}

fn boundary_ratio(field: &Field) -> f64 {
    let grid = field.grid();
    let peak = field.max_abs();
    if peak == 0.0 {
        return 0.0;
    }
    let edge = field
        .values()
        .iter()
        .enumerate()
        .filter(|(i, _)| grid.on_boundary(*i))
        .fold(0.0_f64, |m, (_, v)| m.max(v.abs()));
    edge / peak
}

fn run_solve(s: &Solve) -> Result<Partial> {
    let sweep = s.as_sweep();
    let resolved = sweep.resolve_grid()?;
    let grid = resolved.value;
    let mut warnings = resolved.warnings;
    let n_max = sweep.n_max();
    let f = s.initial_data.sample(&grid)?;
    let schedule = match &s.forcing {
        Some(g) => Some(ForcingSchedule::separable(
            g.shape.sample(&grid)?,
            (1..=n_max).map(|j| g.amplitude(j, s.h)).collect(),
            g.gamma,
        )?),
        None => None,
    };
    let trace = solve(
        &f,
        schedule.as_ref(),
        s.h,
        n_max,
        s.route,
        &Record::Only(s.n_values.clone()),
    )?;

    let mut files = Vec::new();
    let mut rows = Vec::new();
    let mut masses = Vec::new();
    let mut l1 = Vec::new();
    for &n in &s.n_values {
        let u = trace.get(n).ok_or(Error::MissingForcingStep(n))?;
        let mut bytes = Vec::new();
        write_csv(
            u,
            FieldMeta {
                h: Some(s.h),
                n: Some(n),
            },
            &mut bytes,
        )?;
        files.push(Artifact {
            name: format!("field_n{n}.csv"),
            bytes,
        });
        let norms = [1.0, 2.0, f64::INFINITY]
            .iter()
            .map(|&p| field_lp_norm(u, p))
            .collect::<Result<Vec<f64>>>()?;
        masses.push(u.mass());
        l1.push(norms[0]);
        let mut row = vec![n.to_string()];
        row.extend(floats(&[
            n as f64 * s.h,
            u.mass(),
            norms[0],
            norms[1],
            norms[2],
        ]));
        rows.push(row);
    }
    files.push(Artifact {
        name: "solve.csv".into(),
        bytes: csv_bytes(&["n", "nh", "mass", "l1", "l2", "linf"], rows)?,
    });

    let mut checks = Vec::new();
    if s.forcing.is_none() {
        let m0 = f.mass();
        let scale = field_lp_norm(&f, 1.0)?.max(f64::MIN_POSITIVE);
        let drift = masses.iter().fold(0.0_f64, |m, v| m.max((v - m0).abs())) / scale;
        checks.push(Check::at_most("mass_conserved", drift, 1e-10));
        let rises = std::iter::once(field_lp_norm(&f, 1.0)?)
            .chain(l1.iter().copied())
            .collect::<Vec<_>>()
            .windows(2)
            .filter(|w| w[1] > w[0] * (1.0 + 1e-12))
            .count();
        checks.push(Check::holds("l1_non_increasing", rises));
    }
    if s.initial_data.is_integrable() {
        let last = trace.get(n_max).ok_or(Error::MissingForcingStep(n_max))?;
        let ratio = boundary_ratio(last);
        if ratio > BOUNDARY_RATIO {
            warnings.push(Warning::BoundaryContamination {
                ratio,
                threshold: BOUNDARY_RATIO,
            });
        }
    }
    Ok(Partial {
        files,
        checks,
        warnings,
        details: json!({
            "grid": { "dim": grid.dim(), "extent": grid.extent(), "points": grid.points() }
        }),
        ..Default::default()
    })
}

fn figures(f: &Figures) -> Result<Partial> {
    let radii: Vec<f64> = (1..=f.count)
        .map(|k| f.r_max * k as f64 / f.count as f64)
        .collect();
    let mut files = Vec::new();
    let mut checks = Vec::new();
    let mut gaps_by_dim = serde_json::Map::new();
    for &dim in &f.dims {
        let reference: Vec<f64> = radii.iter().map(|&r| heat_kernel(dim, 1.0, r)).collect();
        files.push(Artifact {
            name: format!("figure_N{dim}_heat.csv"),
            bytes: csv_bytes(
                &["r", "value"],
                radii.iter().zip(&reference).map(|(r, v)| floats(&[*r, *v])),
            )?,
        });
        let mut gaps = Vec::new();
        for (n, h) in Figures::STEPS {
            let params = KernelParams::new(n, h, dim)?;
            let values = radii
                .iter()
                .map(|&r| eval_closed_form(&params, r))
                .collect::<Result<Vec<f64>>>()?;
            let gap = values
                .iter()
                .zip(&reference)
                .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
            gaps.push(json!({ "n": n, "h": h, "max_gap": gap }));
            files.push(Artifact {
                name: format!("figure_N{dim}_n{n}.csv"),
                bytes: csv_bytes(
                    &["r", "value"],
                    radii.iter().zip(&values).map(|(r, v)| floats(&[*r, *v])),
                )?,
            });
        }
        let rises = gaps
            .windows(2)
            .filter(|w| w[1]["max_gap"].as_f64() >= w[0]["max_gap"].as_f64())
            .count();
        checks.push(Check::holds(
            format!("N={dim}: gap to heat kernel decreasing"),
            rises,
        ));
        gaps_by_dim.insert(format!("N={dim}"), Value::Array(gaps));
    }
    Ok(Partial {
        files,
        checks,
        details: json!({ "max_gap": gaps_by_dim }),
        ..Default::default()
    })
}

pub fn run(resolved: &Resolved) -> Result<Outcome> {
    let partial = match &resolved.parameters {
        Plan::KernelEval(k) => kernel_eval(k)?,
        Plan::KernelCheck(k) => kernel_check(k)?,
        Plan::Solve(s) => run_solve(s)?,
        Plan::Decay(d) => from_report(match d.sweep {
            DecayTarget::Kernel => kernel_decay_sweep(&d.config, d.config.quantity)?,
            DecayTarget::Solution => solution_decay_sweep(&d.config)?,
            DecayTarget::Duhamel => duhamel_decay_sweep(&d.config)?,
        })?,
        Plan::Converge(c) => from_report(match c.target {
            ConvergeTarget::Initial => profile_convergence_sweep(&c.config, c.moment_condition)?,
            ConvergeTarget::Forced => forced_convergence_sweep(&c.config)?,
        })?,
        Plan::L2opt(c) => from_report(l2_optimality_sweep(c)?)?,
        Plan::Yosida(y) => from_report(yosida_convergence_sweep(y.t, &y.n_values, y.dim)?)?,
        Plan::Figures(f) => figures(f)?,
    };
    let summary = Summary {
        schema_version: SCHEMA_VERSION,
        name: resolved.name.clone(),
        kind: resolved.kind.name(),
        passed: partial.checks.iter().all(|c| c.passed),
        evidentiary: partial.warnings.is_empty(),
        checks: partial.checks,
        warnings: partial.warnings,
        files: partial.files.iter().map(|a| a.name.clone()).collect(),
        report: partial.report,
        details: partial.details,
    };
    Ok(Outcome {
        files: partial.files,
        summary,
    })
}
