use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::config::SweepConfig;
use super::fit::{fit_power_law, PowerLawFit};
use super::report::{
    Abscissa, Check, Compensation, DecayPoint, DecayReport, GridSummary, RouteDiagnostic,
};
use super::thresholds;
use crate::error::{Error, Result, Warning};
use crate::grid::{
    apply_kernel_direct, field_lp_norm, field_moments, solve, Field, ForcingSchedule, Grid, Record,
    Route, Spectral,
};
use crate::kernel::{
    eval_closed_form, eval_quadrature, integrability_margin, quantity_lp_norm, yosida_l1_gap,
    KernelParams, QuadratureSpec, RadialQuantity,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    KernelDecay,
    SolutionDecay,
    DuhamelDecay,
    ProfileConvergence,
    ForcedConvergence,
    L2Optimality,
}

/// Which bound governs ‖u_p‖_p, from β = (N/2)(1/q − 1/p) and γ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DuhamelCase {
    /// (nh)^{1−min(1,γ)−min(1,β)}
    Generic,
    /// γ = 1: ln(nh)/(nh)^{min(1,β)}
    CriticalForcing,
    /// β = 1: ln(nh)/(nh)^{min(1,γ)}
    CriticalExponent,
    /// γ = β = 1: ln(nh)/nh
    DoublyCritical,
}

impl DuhamelCase {
    /// Predicted power of nh, and whether a ln(nh) factor multiplies it.
    pub fn rate(self, gamma: f64, beta: f64) -> (f64, bool) {
        match self {
            DuhamelCase::Generic => (1.0 - gamma.min(1.0) - beta.min(1.0), false),
            DuhamelCase::CriticalForcing => (-beta.min(1.0), true),
            DuhamelCase::CriticalExponent => (-gamma.min(1.0), true),
            DuhamelCase::DoublyCritical => (-1.0, true),
        }
    }
}

const EXACT: f64 = 1e-12;

/// Classifies the Duhamel decay regime; parameters close to but not at a
/// log-critical value are refused.
pub fn classify_duhamel(gamma: f64, dim: usize, p: f64, q: f64) -> Result<(DuhamelCase, f64)> {
    let beta = 0.5 * dim as f64 * (1.0 / q - 1.0 / p);
    let critical = |name: &str, v: f64| -> Result<bool> {
        let d = (v - 1.0).abs();
        if d <= EXACT {
            Ok(true)
        } else if d < thresholds::LOG_GUARD_BAND {
            Err(Error::Precondition(format!(
                "{name} = {v} lies within {} of the log-critical value 1; refusing to classify",
                thresholds::LOG_GUARD_BAND
            )))
        } else {
            Ok(false)
        }
    };
    let case = match (
        critical("gamma", gamma)?,
        critical("(N/2)(1/q - 1/p)", beta)?,
    ) {
        (false, false) => DuhamelCase::Generic,
        (true, false) => DuhamelCase::CriticalForcing,
        (false, true) => DuhamelCase::CriticalExponent,
        (true, true) => DuhamelCase::DoublyCritical,
    };
    Ok((case, beta))
}

/// Hypotheses a sweep needs before its rate means anything, as readable violations.
pub fn preconditions(kind: SweepKind, config: &SweepConfig) -> Vec<String> {
    let mut out = config.violations();
    if !out.is_empty() {
        return out;
    }
    let dim = config.dim as f64;
    let needs_fit = |out: &mut Vec<String>| {
        if config.n_values.len() < 4 {
            out.push(format!(
                "a slope fit needs at least 4 n values, got {}",
                config.n_values.len()
            ));
        }
    };
    let grid_quantity_only = |out: &mut Vec<String>| {
        if config.quantity != RadialQuantity::Kernel {
            out.push("this sweep measures the solution itself; quantity must be \"kernel\"".into());
        }
    };
    let integrable = |out: &mut Vec<String>| {
        if !config.initial_data.is_integrable() {
            out.push("initial data must be integrable on the whole space".into());
        }
    };
    match kind {
        SweepKind::KernelDecay => {
            needs_fit(&mut out);
            let bad: Vec<usize> = config
                .n_values
                .iter()
                .copied()
                .filter(|&n| {
                    KernelParams::new(n, config.h, config.dim)
                        .map(|k| integrability_margin(&k, config.quantity, config.p) <= 0.0)
                        .unwrap_or(true)
                })
                .collect();
            if !bad.is_empty() {
                out.push(format!(
                    "requires n − (N/2)(1 − 1/p) − {} > 0; fails for n = {bad:?}",
                    config.quantity.derivative_order()
                ));
            }
        }
        SweepKind::SolutionDecay => {
            needs_fit(&mut out);
            integrable(&mut out);
        }
        SweepKind::DuhamelDecay => {
            grid_quantity_only(&mut out);
            match &config.forcing {
                None => out.push("requires a forcing schedule".into()),
                Some(g) => match classify_duhamel(g.gamma, config.dim, config.p, config.q) {
                    Err(e) => out.push(e.to_string()),
                    Ok((DuhamelCase::Generic, _)) => needs_fit(&mut out),
                    Ok(_) => {
                        if config.n_min() as f64 * config.h <= 1.0 {
                            out.push("log-case compensation requires nh > 1 for every n".into());
                        }
                        if config.n_max() < 10 * config.n_min() {
                            out.push(
                                "log-case spread needs n values spanning at least a decade".into(),
                            );
                        }
                    }
                },
            }
        }
        SweepKind::ProfileConvergence => {
            grid_quantity_only(&mut out);
            integrable(&mut out);
            if config.n_values.len() < 2 {
                out.push("needs at least two n values".into());
            }
        }
        SweepKind::ForcedConvergence => {
            grid_quantity_only(&mut out);
            if config.n_values.len() < 2 {
                out.push("needs at least two n values".into());
            }
            match &config.forcing {
                None => out.push("requires a forcing schedule".into()),
                Some(g) => {
                    let bound = 1.0_f64.max(0.5 * dim * (1.0 - 1.0 / config.p));
                    if !(g.gamma > bound) {
                        out.push(format!(
                            "requires gamma > max{{1, (N/2)(1 − 1/p)}} = {bound}, got {}",
                            g.gamma
                        ));
                    }
                    if !g.shape.is_integrable() {
                        out.push("forcing shape must be integrable".into());
                    }
                }
            }
        }
        SweepKind::L2Optimality => {
            needs_fit(&mut out);
            grid_quantity_only(&mut out);
            if config.p != 2.0 {
                out.push(format!(
                    "this sweep measures the L² norm; requires p = 2, got {}",
                    config.p
                ));
            }
            match config.initial_data.mass() {
                None => out.push("requires f ∈ L¹ ∩ L²".into()),
                Some(0.0) => out.push("requires ∫f ≠ 0; the initial data has zero mass".into()),
                Some(_) => {}
            }
        }
    }
    out
}

fn ensure(kind: SweepKind, config: &SweepConfig) -> Result<()> {
    let v = preconditions(kind, config);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::Precondition(v.join("; ")))
    }
}

fn nh(config: &SweepConfig, n: usize) -> f64 {
    n as f64 * config.h
}

fn point(n: usize, nh: f64, value: f64, scaled_value: f64) -> DecayPoint {
    DecayPoint {
        n,
        nh,
        value,
        scaled_value,
    }
}

/// Scaled-by-prediction points: value·(nh)^{−slope}.
fn predicted_points(config: &SweepConfig, values: &[f64], slope: f64) -> Vec<DecayPoint> {
    config
        .n_values
        .iter()
        .zip(values)
        .map(|(&n, &v)| {
            let t = nh(config, n);
            point(n, t, v, v * t.powf(-slope))
        })
        .collect()
}

fn fit_values(points: &[DecayPoint], scaled: bool) -> Result<PowerLawFit> {
    fit_power_law(
        &points
            .iter()
            .map(|p| (p.nh, if scaled { p.scaled_value } else { p.value }))
            .collect::<Vec<_>>(),
    )
}

fn route(report: &mut DecayReport, label: &str, relative: f64, tolerance: f64) {
    report.route_diagnostics.push(RouteDiagnostic {
        label: label.into(),
        relative_difference: relative,
    });
    if !(relative <= tolerance) {
        report.warnings.push(Warning::RouteDisagreement {
            label: label.into(),
            relative,
            tolerance,
        });
    }
}

fn boundary_ratio(field: &Field) -> f64 {
    let grid = field.grid();
    let peak = field.max_abs();
    if peak == 0.0 {
        return 0.0;
    }
    let edge = (0..grid.len())
        .filter(|&i| grid.on_boundary(i))
        .map(|i| field.values()[i].abs())
        .fold(0.0, f64::max);
    edge / peak
}

fn attach_grid(report: &mut DecayReport, grid: &Grid, last: &Field) {
    let ratio = boundary_ratio(last);
    report.grid = Some(GridSummary::new(grid, ratio));
    log::info!(
        "{}: grid {}^{} on extent {:.3}, boundary ratio {ratio:.3e}",
        report.label,
        grid.points(),
        grid.dim(),
        grid.extent()
    );
    if ratio > thresholds::BOUNDARY_RATIO {
        report.warnings.push(Warning::BoundaryContamination {
            ratio,
            threshold: thresholds::BOUNDARY_RATIO,
        });
    }
}

fn relative_l2(a: &Field, reference: &Field) -> Result<f64> {
    Ok(field_lp_norm(&a.sub(reference)?, 2.0)? / field_lp_norm(reference, 2.0)?)
}

/// Number of non-decreasing steps among points with n ≥ n_max/10.
fn top_decade_violations(points: &[DecayPoint]) -> usize {
    let n_max = points.last().map_or(0, |p| p.n);
    let top: Vec<f64> = points
        .iter()
        .filter(|p| p.n * 10 >= n_max)
        .map(|p| p.scaled_value)
        .collect();
    top.windows(2).filter(|w| w[1] >= w[0]).count()
}

/// Sweep over n of the radial L^p norm of the kernel, its gradient or its
/// time difference.
pub fn kernel_decay_sweep(config: &SweepConfig, quantity: RadialQuantity) -> Result<DecayReport> {
    let config = &SweepConfig {
        quantity,
        ..config.clone()
    };
    ensure(SweepKind::KernelDecay, config)?;
    let values = config
        .n_values
        .par_iter()
        .map(|&n| {
            quantity_lp_norm(
                &KernelParams::new(n, config.h, config.dim)?,
                quantity,
                config.p,
            )
        })
        .collect::<Result<Vec<f64>>>()?;
    let theory =
        -0.5 * config.dim as f64 * (1.0 - 1.0 / config.p) - quantity.derivative_order() + 0.0;
    let mut report = DecayReport::new(
        format!(
            "kernel decay ({quantity:?}, N={}, p={})",
            config.dim, config.p
        ),
        Abscissa::Time,
    );
    report.points = predicted_points(config, &values, theory);
    let fit = fit_values(&report.points, false)?;
    report.fit = Some(fit);
    report.theory_slope = Some(theory);
    let tolerance = if theory == 0.0 {
        thresholds::FLAT_SLOPE
    } else if quantity == RadialQuantity::Kernel {
        thresholds::KERNEL_SLOPE
    } else {
        thresholds::DERIVATIVE_SLOPE
    };
    report
        .checks
        .push(Check::within("slope", fit.slope, theory, tolerance));

    // closed form against the integral representation at r = √(nh)
    for &n in [config.n_min(), config.n_max()].iter() {
        let params = KernelParams::new(n, config.h, config.dim)?;
        let r = params.time().sqrt();
        let quad = eval_quadrature(&params, r, &QuadratureSpec::recommended(&params))?;
        report.warnings.extend(quad.warnings);
        let exact = eval_closed_form(&params, r)?;
        route(
            &mut report,
            &format!("closed form vs quadrature at n={n}, r=sqrt(nh)"),
            ((quad.value - exact) / exact).abs(),
            thresholds::ROUTE_QUADRATURE,
        );
    }
    Ok(report)
}

struct Prepared {
    grid: Grid,
    spectral: Spectral,
    log_symbol: Vec<f64>,
    warnings: Vec<Warning>,
}

fn prepare(config: &SweepConfig) -> Result<Prepared> {
    let grid = config.resolve_grid()?;
    let spectral = Spectral::new(&grid.value);
    let log_symbol = spectral
        .xi_squared()
        .iter()
        .map(|x| (config.h * x).ln_1p())
        .collect();
    Ok(Prepared {
        grid: grid.value,
        spectral,
        log_symbol,
        warnings: grid.warnings,
    })
}

impl Prepared {
    /// spectrum·(1 + h|ξ|²)^{−n}
    fn evolve(&self, spectrum: &[Complex64], n: usize) -> Vec<Complex64> {
        spectrum
            .iter()
            .zip(&self.log_symbol)
            .map(|(s, l)| s * (-(n as f64) * l).exp())
            .collect()
    }

    fn field(&self, spectrum: Vec<Complex64>) -> Result<Field> {
        Field::new(self.grid, self.spectral.inverse(spectrum))
    }

    /// The solution-side quantity as a grid field: u, |∇u| or δu = Δu.
    fn quantity(&self, spectrum: Vec<Complex64>, quantity: RadialQuantity) -> Result<Field> {
        match quantity {
            RadialQuantity::Kernel => self.field(spectrum),
            RadialQuantity::TimeDifference => {
                let s = spectrum
                    .iter()
                    .zip(self.spectral.xi_squared())
                    .map(|(s, x)| -s * x)
                    .collect();
                self.field(s)
            }
            RadialQuantity::Gradient => {
                let mut squared = vec![0.0; self.grid.len()];
                for axis in 0..self.grid.dim() {
                    let component = spectrum
                        .iter()
                        .enumerate()
                        .map(|(k, s)| s * Complex64::new(0.0, self.spectral.wavevector(k)[axis]))
                        .collect();
                    for (acc, v) in squared.iter_mut().zip(self.spectral.inverse(component)) {
                        *acc += v * v;
                    }
                }
                Field::new(self.grid, squared.into_iter().map(f64::sqrt).collect())
            }
        }
    }
}

/// Decay of the homogeneous solution 𝒢ₙ,ₕ ∗ f (or its gradient or time
/// difference) on the grid.
pub fn solution_decay_sweep(config: &SweepConfig) -> Result<DecayReport> {
    ensure(SweepKind::SolutionDecay, config)?;
    let prepared = prepare(config)?;
    let f = config.initial_data.sample(&prepared.grid)?;
    let f_hat = prepared.spectral.forward(f.values());
    let fields = config
        .n_values
        .par_iter()
        .map(|&n| prepared.quantity(prepared.evolve(&f_hat, n), config.quantity))
        .collect::<Result<Vec<Field>>>()?;
    let values = fields
        .iter()
        .map(|u| field_lp_norm(u, config.p))
        .collect::<Result<Vec<f64>>>()?;
    let beta = 0.5 * config.dim as f64 * (1.0 / config.q - 1.0 / config.p);
    let theory = -beta - config.quantity.derivative_order();
    let mut report = DecayReport::new(
        format!(
            "solution decay ({:?}, N={}, q={}, p={})",
            config.quantity, config.dim, config.q, config.p
        ),
        Abscissa::Time,
    );
    report.warnings = prepared.warnings.clone();
    report.points = predicted_points(config, &values, theory);
    let fit = fit_values(&report.points, false)?;
    report.fit = Some(fit);
    report.theory_slope = Some(theory);
    report.checks.push(Check::within(
        "slope",
        fit.slope,
        theory,
        thresholds::SOLUTION_SLOPE,
    ));
    if config.q == config.p && config.quantity == RadialQuantity::Kernel {
        let relaxed: Vec<f64> = values.iter().map(|v| v * (1.0 - 1e-12)).collect();
        let increases = relaxed
            .windows(2)
            .zip(values.windows(2))
            .filter(|(r, v)| v[1] > r[0])
            .count();
        report
            .checks
            .push(Check::holds("non_increasing", increases));
    }
    if let Some(last) = fields.last() {
        attach_grid(&mut report, &prepared.grid, last);
    }
    let n0 = config.n_min();
    if config.quantity == RadialQuantity::Kernel && 2 * n0 > config.dim {
        let direct = apply_kernel_direct(&f, n0, config.h)?;
        report.warnings.extend(direct.warnings);
        route(
            &mut report,
            &format!("spectral vs sampled-kernel convolution at n={n0}"),
            relative_l2(&direct.value, &fields[0])?,
            thresholds::ROUTE_SAMPLED,
        );
    }
    Ok(report)
}

/// Σ_{j≥1} (1 + jh)^{−γ} for γ > 1: a direct sum followed by an
/// Euler–Maclaurin tail.
pub fn forcing_mass_series(h: f64, gamma: f64) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) || !(gamma > 1.0 && gamma.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "series needs h > 0 and gamma > 1, got h = {h}, gamma = {gamma}"
        )));
    }
    let term = |x: f64| (1.0 + x * h).powf(-gamma);
    let cut = (64.0 / h).ceil().max(64.0);
    let head: f64 = (1..cut as usize).map(|j| term(j as f64)).sum();
    let base = 1.0 + cut * h;
    let integral = base.powf(1.0 - gamma) / (h * (gamma - 1.0));
    let d1 = -gamma * h * base.powf(-gamma - 1.0);
    let d3 = -gamma * (gamma + 1.0) * (gamma + 2.0) * h.powi(3) * base.powf(-gamma - 3.0);
    Ok(head + integral + 0.5 * term(cut) - d1 / 12.0 + d3 / 720.0)
}

fn forcing_schedule(config: &SweepConfig, grid: &Grid) -> Result<ForcingSchedule> {
    let g = config
        .forcing
        .as_ref()
        .ok_or_else(|| Error::Precondition("requires a forcing schedule".into()))?;
    let shape = g.shape.sample(grid)?;
    let amplitudes = (1..=config.n_max())
        .map(|j| g.amplitude(j, config.h))
        .collect();
    ForcingSchedule::separable(shape, amplitudes, g.gamma)
}

/// u_p from zero data at every requested n, by the resolvent recursion,
/// plus the closed Duhamel sum at n_min as a cross-check.
fn forced_fields(
    config: &SweepConfig,
    prepared: &Prepared,
    report: &mut DecayReport,
) -> Result<Vec<Field>> {
    let schedule = forcing_schedule(config, &prepared.grid)?;
    let zero = prepared.grid.zeros();
    let record = Record::Only(config.n_values.clone());
    let trace = solve(
        &zero,
        Some(&schedule),
        config.h,
        config.n_max(),
        Route::ResolventRecursion,
        &record,
    )?;
    let fields: Vec<Field> = config
        .n_values
        .iter()
        .map(|n| trace.get(*n).cloned().ok_or(Error::MissingForcingStep(*n)))
        .collect::<Result<_>>()?;
    let n0 = config.n_min();
    let direct = solve(
        &zero,
        Some(&schedule),
        config.h,
        n0,
        Route::DirectKernel,
        &Record::Only(vec![n0]),
    )?;
    if let Some(d) = direct.get(n0) {
        if fields[0].max_abs() > 0.0 {
            let rel = relative_l2(d, &fields[0])?;
            route(
                report,
                &format!("recursion vs closed Duhamel sum at n={n0}"),
                rel,
                thresholds::ROUTE_ALGEBRAIC,
            );
        }
    }
    Ok(fields)
}

/// ‖u_p(nh)‖_p for forcing ‖g(jh)‖_q ~ (jh)^{−γ} from zero data.
pub fn duhamel_decay_sweep(config: &SweepConfig) -> Result<DecayReport> {
    ensure(SweepKind::DuhamelDecay, config)?;
    let gamma = config.forcing.as_ref().map_or(f64::NAN, |g| g.gamma);
    let (case, beta) = classify_duhamel(gamma, config.dim, config.p, config.q)?;
    let prepared = prepare(config)?;
    let mut report = DecayReport::new(
        format!(
            "duhamel decay ({case:?}, N={}, q={}, p={}, gamma={gamma})",
            config.dim, config.q, config.p
        ),
        Abscissa::Time,
    );
    report.warnings = prepared.warnings.clone();
    let fields = forced_fields(config, &prepared, &mut report)?;
    let values = fields
        .iter()
        .map(|u| field_lp_norm(u, config.p))
        .collect::<Result<Vec<f64>>>()?;
    if let Some(last) = fields.last() {
        attach_grid(&mut report, &prepared.grid, last);
    }
    let (power, logarithmic) = case.rate(gamma, beta);
    report.theory_slope = Some(power);
    if values.iter().all(|v| *v == 0.0) {
        report.points = predicted_points(config, &values, 0.0);
        report.checks.push(Check::holds("identically_zero", 0));
        return Ok(report);
    }
    if logarithmic {
        let compensation = Compensation {
            exponent: -power,
            log_power: 1.0,
        };
        report.compensation = Some(compensation);
        report.points = config
            .n_values
            .iter()
            .zip(&values)
            .map(|(&n, &v)| {
                let t = nh(config, n);
                point(n, t, v, compensation.apply(t, v))
            })
            .collect();
        report.fit = Some(fit_values(&report.points, false)?);
        let n_max = config.n_max();
        let top: Vec<f64> = report
            .points
            .iter()
            .filter(|p| p.n * 10 >= n_max)
            .map(|p| p.scaled_value)
            .collect();
        let mean = top.iter().sum::<f64>() / top.len() as f64;
        let spread = top
            .iter()
            .map(|c| (c / mean - 1.0).abs())
            .fold(0.0, f64::max);
        report.checks.push(Check::at_most(
            "compensated_spread",
            spread,
            thresholds::LOG_SPREAD,
        ));
    } else {
        report.points = predicted_points(config, &values, power);
        let fit = fit_values(&report.points, false)?;
        report.fit = Some(fit);
        report.checks.push(Check::within(
            "slope",
            fit.slope,
            power,
            thresholds::DUHAMEL_SLOPE,
        ));
    }
    Ok(report)
}

fn convergence_checks(report: &mut DecayReport) {
    let violations = top_decade_violations(&report.points);
    report
        .checks
        .push(Check::holds("decreasing_top_decade", violations));
    if let (Some(first), Some(last)) = (report.points.first(), report.points.last()) {
        report.checks.push(Check::at_most(
            "final_fraction",
            last.scaled_value / first.scaled_value,
            thresholds::CONVERGENCE_FINAL_FRACTION,
        ));
    }
}

/// The grid 𝒢ₙ,ₕ as the response to a unit-mass spike, compared with the
/// closed form sampled on the same grid.
fn spike_reference(
    config: &SweepConfig,
    prepared: &Prepared,
    report: &mut DecayReport,
) -> Result<Vec<Complex64>> {
    let spike = prepared
        .spectral
        .forward(prepared.grid.unit_spike().values());
    let n0 = config.n_min();
    if 2 * n0 > config.dim {
        let params = KernelParams::new(n0, config.h, config.dim)?;
        let grid = prepared.grid;
        let samples = (0..grid.len())
            .into_par_iter()
            .map(|i| eval_closed_form(&params, grid.radius_squared(i).sqrt()))
            .collect::<Result<Vec<f64>>>()?;
        let response = prepared.field(prepared.evolve(&spike, n0))?;
        let peak = samples.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let gap = samples
            .iter()
            .zip(response.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        route(
            report,
            &format!("spike response vs closed form at n={n0}"),
            gap / peak,
            thresholds::ROUTE_SAMPLED,
        );
    }
    Ok(spike)
}

fn discrepancy_points(config: &SweepConfig, values: &[f64]) -> Vec<DecayPoint> {
    let exponent = 0.5 * config.dim as f64 * (1.0 - 1.0 / config.p);
    config
        .n_values
        .iter()
        .zip(values)
        .map(|(&n, &v)| {
            let t = nh(config, n);
            point(n, t, v, v * t.powf(exponent))
        })
        .collect()
}

/// (nh)^{(N/2)(1−1/p)}‖𝒢ₙ,ₕ ∗ f − M_c 𝒢ₙ,ₕ‖_p with M_c = ∫f.
pub fn profile_convergence_sweep(
    config: &SweepConfig,
    moment_condition: bool,
) -> Result<DecayReport> {
    ensure(SweepKind::ProfileConvergence, config)?;
    if moment_condition && config.initial_data.first_moment().is_none() {
        return Err(Error::Precondition(
            "moment condition needs a finite first moment".into(),
        ));
    }
    let prepared = prepare(config)?;
    let f = config.initial_data.sample(&prepared.grid)?;
    let moments = field_moments(&f);
    let mass = moments.value.mass;
    let mut report = DecayReport::new(
        format!(
            "profile convergence (N={}, p={}, mass={mass:.6})",
            config.dim, config.p
        ),
        Abscissa::Time,
    );
    report.warnings = prepared.warnings.clone();
    report.warnings.extend(moments.warnings);
    let spike = spike_reference(config, &prepared, &mut report)?;
    let difference: Vec<Complex64> = prepared
        .spectral
        .forward(f.values())
        .iter()
        .zip(&spike)
        .map(|(a, s)| a - s * mass)
        .collect();
    let results = config
        .n_values
        .par_iter()
        .map(|&n| {
            let d = prepared.field(prepared.evolve(&difference, n))?;
            Ok((field_lp_norm(&d, config.p)?, d))
        })
        .collect::<Result<Vec<(f64, Field)>>>()?;
    let values: Vec<f64> = results.iter().map(|r| r.0).collect();
    let last =
        prepared.field(prepared.evolve(&prepared.spectral.forward(f.values()), config.n_max()))?;
    attach_grid(&mut report, &prepared.grid, &last);
    report.points = discrepancy_points(config, &values);
    convergence_checks(&mut report);
    if moment_condition {
        let fit = fit_values(&report.points, true)?;
        report.fit = Some(fit);
        report.theory_slope = Some(thresholds::MOMENT_RATE);
        report.checks.push(Check::within(
            "moment_slope",
            fit.slope,
            thresholds::MOMENT_RATE,
            thresholds::MOMENT_SLOPE,
        ));
    } else if report.points.len() >= 4 && report.points.iter().all(|p| p.scaled_value > 0.0) {
        report.fit = Some(fit_values(&report.points, true)?);
    }
    Ok(report)
}

/// (nh)^{(N/2)(1−1/p)}‖u_p − h M_p 𝒢ₙ,ₕ‖_p with M_p = Σ_{j≥1} ∫g(jh).
pub fn forced_convergence_sweep(config: &SweepConfig) -> Result<DecayReport> {
    ensure(SweepKind::ForcedConvergence, config)?;
    let g = config
        .forcing
        .as_ref()
        .ok_or_else(|| Error::Precondition("requires a forcing schedule".into()))?;
    let prepared = prepare(config)?;
    let shape_mass = g.shape.sample(&prepared.grid)?.mass();
    let total = g.scale * shape_mass * forcing_mass_series(config.h, g.gamma)?;
    let mut report = DecayReport::new(
        format!(
            "forced convergence (N={}, p={}, gamma={}, M_p={total:.6})",
            config.dim, config.p, g.gamma
        ),
        Abscissa::Time,
    );
    report.warnings = prepared.warnings.clone();
    let spike = spike_reference(config, &prepared, &mut report)?;
    let fields = forced_fields(config, &prepared, &mut report)?;
    let values = config
        .n_values
        .par_iter()
        .zip(fields.par_iter())
        .map(|(&n, u)| {
            let reference = prepared
                .field(prepared.evolve(&spike, n))?
                .scaled(config.h * total);
            field_lp_norm(&u.sub(&reference)?, config.p)
        })
        .collect::<Result<Vec<f64>>>()?;
    if let Some(last) = fields.last() {
        attach_grid(&mut report, &prepared.grid, last);
    }
    report.points = discrepancy_points(config, &values);
    convergence_checks(&mut report);
    if report.points.len() >= 4 && report.points.iter().all(|p| p.scaled_value > 0.0) {
        report.fit = Some(fit_values(&report.points, true)?);
    }
    Ok(report)
}

/// ‖𝒢ₙ,ₕ ∗ f‖₂ against the two-sided rate (nh)^{−N/4}.
pub fn l2_optimality_sweep(config: &SweepConfig) -> Result<DecayReport> {
    ensure(SweepKind::L2Optimality, config)?;
    let prepared = prepare(config)?;
    let f = config.initial_data.sample(&prepared.grid)?;
    let f_hat = prepared.spectral.forward(f.values());
    let fields = config
        .n_values
        .par_iter()
        .map(|&n| prepared.field(prepared.evolve(&f_hat, n)))
        .collect::<Result<Vec<Field>>>()?;
    let values = fields
        .iter()
        .map(|u| field_lp_norm(u, 2.0))
        .collect::<Result<Vec<f64>>>()?;
    let theory = -0.25 * config.dim as f64;
    let mut report = DecayReport::new(format!("L2 optimality (N={})", config.dim), Abscissa::Time);
    report.warnings = prepared.warnings.clone();
    report.points = predicted_points(config, &values, theory);
    let fit = fit_values(&report.points, false)?;
    report.fit = Some(fit);
    report.theory_slope = Some(theory);
    report.checks.push(Check::within(
        "slope",
        fit.slope,
        theory,
        thresholds::L2_SLOPE,
    ));
    let compensated: Vec<f64> = report.points.iter().map(|p| p.scaled_value).collect();
    let hi = compensated.iter().copied().fold(f64::MIN, f64::max);
    let lo = compensated.iter().copied().fold(f64::MAX, f64::min);
    report.checks.push(Check::at_most(
        "two_sided_band",
        hi / lo,
        thresholds::L2_BAND,
    ));
    if let Some(last) = fields.last() {
        attach_grid(&mut report, &prepared.grid, last);
    }
    let n0 = config.n_min();
    if 2 * n0 > config.dim {
        let direct = apply_kernel_direct(&f, n0, config.h)?;
        report.warnings.extend(direct.warnings);
        route(
            &mut report,
            &format!("spectral vs sampled-kernel convolution at n={n0}"),
            relative_l2(&direct.value, &fields[0])?,
            thresholds::ROUTE_SAMPLED,
        );
    }
    Ok(report)
}

/// sup over a ≥ 0 of |(1 + a/n)^{−n} − e^{−a}|, with a = t|ξ|².
fn fourier_gap(n: usize) -> f64 {
    let nf = n as f64;
    let gap = |a: f64| ((-nf * (a / nf).ln_1p()).exp() - (-a).exp()).abs();
    let step = 1e-3;
    let (mut best_a, mut best) = (0.0, 0.0);
    for i in 0..=60_000 {
        let a = i as f64 * step;
        let g = gap(a);
        if g > best {
            best = g;
            best_a = a;
        }
    }
    // golden-section polish around the coarse maximum
    let (mut lo, mut hi) = ((best_a - step).max(0.0), best_a + step);
    let ratio = 0.5 * (5.0_f64.sqrt() - 1.0);
    for _ in 0..60 {
        let a = hi - ratio * (hi - lo);
        let b = lo + ratio * (hi - lo);
        if gap(a) > gap(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    best.max(gap(0.5 * (lo + hi)))
}

/// ‖𝒢ₙ,ₜ/ₙ − G_t‖₁ as n grows at fixed t.
pub fn yosida_convergence_sweep(t: f64, n_values: &[usize], dim: usize) -> Result<DecayReport> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "time t = {t} must be positive"
        )));
    }
    if n_values.is_empty() || n_values[0] == 0 || n_values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "n_values must be strictly ascending positive integers".into(),
        ));
    }
    let values = n_values
        .par_iter()
        .map(|&n| yosida_l1_gap(t, n, dim))
        .collect::<Result<Vec<f64>>>()?;
    let mut report = DecayReport::new(
        format!("Yosida convergence (N={dim}, t={t})"),
        Abscissa::Steps,
    );
    report.points = n_values
        .iter()
        .zip(&values)
        .map(|(&n, &v)| point(n, t, v, v * n as f64))
        .collect();
    if values.len() >= 4 {
        let pts: Vec<(f64, f64)> = n_values
            .iter()
            .zip(&values)
            .map(|(&n, &v)| (n as f64, v))
            .collect();
        report.fit = Some(fit_power_law(&pts)?);
    }
    report.checks.push(Check::holds(
        "strictly_decreasing",
        values.windows(2).filter(|w| w[1] >= w[0]).count(),
    ));
    report.checks.push(Check::at_most(
        "final_l1_gap",
        *values.last().unwrap_or(&f64::NAN),
        thresholds::YOSIDA_FINAL_GAP,
    ));
    let n_max = *n_values.last().unwrap_or(&1);
    report.checks.push(Check::at_most(
        "fourier_sup_gap",
        fourier_gap(n_max),
        thresholds::YOSIDA_FOURIER_GAP,
    ));
    Ok(report)
}
