//! Acceptance suite: one line per criterion, preceded by the individual checks.
//! Pass criterion numbers as arguments to run a subset.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dtheat::grid::{apply_kernel_spectral, field_lp_norm, field_moments, Grid};
use dtheat::kernel::{
    eval_closed_form, eval_quadrature, lp_norm, moment, KernelParams, QuadratureSpec,
    RadialQuantity,
};
use dtheat::lab::{
    duhamel_decay_sweep, forced_convergence_sweep, kernel_decay_sweep, l2_optimality_sweep,
    log_spaced, powers_of_two, profile_convergence_sweep, solution_decay_sweep,
    yosida_convergence_sweep, DecayReport, ForcingSpec, InitialProfile, SweepConfig,
};
use dtheat::quadrature::integrate_adaptive;
use dtheat::special::{bessel_k, bessel_k_scaled, log_gamma};

const INF: f64 = f64::INFINITY;

struct Outcome {
    label: String,
    passed: bool,
    /// Reported for context; does not decide the criterion.
    informational: bool,
    detail: String,
}

fn outcome(label: impl Into<String>, passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        label: label.into(),
        passed,
        informational: false,
        detail: detail.into(),
    }
}

fn info(label: impl Into<String>, passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        informational: true,
        ..outcome(label, passed, detail)
    }
}

/// Every check of a sweep report as one outcome each.
fn report_outcomes(label: &str, report: &DecayReport) -> Vec<Outcome> {
    let mut out: Vec<Outcome> = report
        .checks
        .iter()
        .map(|c| {
            outcome(
                format!("{label}: {}", c.name),
                c.passed,
                format!(
                    "measured {:.6}, expected {:.6}, tolerance {:.3e}",
                    c.measured, c.expected, c.tolerance
                ),
            )
        })
        .collect();
    out.push(evidentiary(label, report));
    out
}

fn evidentiary(label: &str, report: &DecayReport) -> Outcome {
    outcome(
        format!("{label}: evidentiary"),
        report.evidentiary(),
        if report.warnings.is_empty() {
            "no adequacy or route warnings".to_string()
        } else {
            format!("{:?}", report.warnings)
        },
    )
}

fn failed(label: &str, err: impl std::fmt::Display) -> Vec<Outcome> {
    vec![outcome(label, false, format!("error: {err}"))]
}

fn sweep(label: &str, result: dtheat::Result<DecayReport>) -> Vec<Outcome> {
    match result {
        Ok(r) => report_outcomes(label, &r),
        Err(e) => failed(label, e),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn max_over<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

// 1 ------------------------------------------------------------------------

fn special_functions() -> Vec<Outcome> {
    let mut out = Vec::new();

    let mut worst = 0.0_f64;
    for nu in [0.0_f64, 1.0, 2.0] {
        for z in [0.5_f64, 1.0, 5.0] {
            let upper = (750.0 / z + 1.0).acosh();
            let integral = integrate_adaptive(
                |t| (-z * t.cosh()).exp() * (nu * t).cosh(),
                0.0,
                upper,
                1e-14,
                0.0,
            );
            worst = worst.max(rel(bessel_k(nu, z).unwrap(), integral.value));
        }
    }
    out.push(outcome(
        "integral form",
        worst <= 1e-8,
        format!("max relative gap {worst:.2e} (≤ 1e-8)"),
    ));

    let orders: Vec<f64> = (-1..=40).map(|k| 0.5 * k as f64).collect();
    let radii: Vec<f64> = (0..40)
        .map(|i| 0.1 * (500.0_f64.ln() * i as f64 / 39.0).exp())
        .collect();
    let mut symmetric = true;
    let mut positive = true;
    let mut recurrence = 0.0_f64;
    let mut derivative = 0.0_f64;
    for &nu in &orders {
        for &z in &radii {
            let k = bessel_k(nu, z).unwrap();
            symmetric &= bessel_k(-nu, z).unwrap().to_bits() == k.to_bits();
            positive &= k > 0.0;
            let below = bessel_k(nu - 1.0, z).unwrap();
            let above = bessel_k(nu + 1.0, z).unwrap();
            let terms = [z * below, z * above, 2.0 * nu * k];
            let residual = (terms[0] - terms[1] + terms[2]).abs();
            recurrence = recurrence.max(residual / max_over(terms.iter().map(|t| t.abs())));
            let step = 1e-5 * z;
            let fd =
                (bessel_k(nu, z + step).unwrap() - bessel_k(nu, z - step).unwrap()) / (2.0 * step);
            derivative = derivative.max(rel(fd, -0.5 * (below + above)));
        }
    }
    out.push(outcome(
        "symmetry K_ν = K_{−ν}",
        symmetric,
        "bit-for-bit on the order/argument grid",
    ));
    out.push(outcome("positivity", positive, "K_ν(z) > 0 on the grid"));
    out.push(outcome(
        "three-term recurrence",
        recurrence <= 1e-8,
        format!("max residual {recurrence:.2e} of the largest term (≤ 1e-8)"),
    ));
    out.push(outcome(
        "derivative relation",
        derivative <= 1e-5,
        format!("max relative gap {derivative:.2e} (≤ 1e-5)"),
    ));

    let mut small = 0.0_f64;
    for nu in [1.0_f64, 2.0, 3.0, 0.5, 2.5] {
        let z = 1e-4 * (nu + 1.0).sqrt();
        let leading = (log_gamma(nu).unwrap() - 2.0_f64.ln() + nu * (2.0 / z).ln()).exp();
        small = small.max((bessel_k(nu, z).unwrap() / leading - 1.0).abs());
    }
    out.push(outcome(
        "small-argument law",
        small <= 1e-2,
        format!("max deviation {small:.2e} (≤ 1e-2)"),
    ));

    let mut envelope = true;
    let mut worst_ratio = 0.0_f64;
    // the first correction is (4ν² − 1)/(8z), inside 5/z for ν ≤ 3
    for nu in [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0] {
        for z in [50.0, 100.0, 200.0, 500.0, 700.0] {
            let d = rel(bessel_k_scaled(nu, z).unwrap(), (PI / (2.0 * z)).sqrt());
            envelope &= d <= 5.0 / z;
            worst_ratio = worst_ratio.max(d * z);
        }
    }
    out.push(outcome(
        "large-argument envelope",
        envelope,
        format!("max z·deviation {worst_ratio:.3} (≤ 5)"),
    ));

    out
}

// 2 ------------------------------------------------------------------------

fn route_agreement() -> Vec<Outcome> {
    let mut worst = 0.0_f64;
    let mut at = String::new();
    let mut count = 0;
    let mut warnings = 0;
    for n in [1usize, 2, 5, 20, 100] {
        for h in [0.1, 1.0] {
            for dim in [1usize, 2, 3] {
                for ratio in [0.05, 0.5, 1.0, 4.0, 16.0] {
                    let params = KernelParams::new(n, h, dim).unwrap();
                    let r = (ratio * params.time()).sqrt();
                    let quad =
                        eval_quadrature(&params, r, &QuadratureSpec::recommended(&params)).unwrap();
                    warnings += quad.warnings.len();
                    let d = rel(quad.value, eval_closed_form(&params, r).unwrap());
                    count += 1;
                    if d > worst {
                        worst = d;
                        at = format!("n={n}, h={h}, N={dim}, r²/nh={ratio}");
                    }
                }
            }
        }
    }
    vec![
        outcome(
            "closed form vs quadrature",
            worst <= 1e-7 && count == 150,
            format!("{count} points, max relative gap {worst:.2e} at {at} (≤ 1e-7)"),
        ),
        outcome(
            "quadrature warnings",
            warnings == 0,
            format!("{warnings} warnings"),
        ),
    ]
}

// 3 ------------------------------------------------------------------------

/// A box wide enough that the kernel at its edge is below 1e-12 of the peak.
fn kernel_grid(params: &KernelParams) -> Grid {
    let peak = eval_closed_form(params, 0.0).unwrap();
    let mut extent = 12.0 * params.time().sqrt();
    while eval_closed_form(params, 0.5 * extent).unwrap() > 1e-12 * peak {
        extent *= 1.25;
    }
    Grid::new(
        params.dim(),
        extent,
        if params.dim() == 1 { 1024 } else { 256 },
    )
    .unwrap()
}

fn conservation() -> Vec<Outcome> {
    let mut out = Vec::new();
    let mut radial_mass = 0.0_f64;
    for dim in [1usize, 2, 3] {
        for &(n, h) in &[(2usize, 0.1), (5, 0.5), (50, 0.1), (400, 0.25)] {
            let params = KernelParams::new(n, h, dim).unwrap();
            radial_mass = radial_mass.max((lp_norm(&params, 1.0).unwrap() - 1.0).abs());
        }
    }
    out.push(outcome(
        "radial mass",
        radial_mass <= 1e-8,
        format!("max |mass − 1| {radial_mass:.2e} (≤ 1e-8)"),
    ));
    for dim in [1usize, 2] {
        for n in [5usize, 50] {
            for h in [0.1, 0.5] {
                let params = KernelParams::new(n, h, dim).unwrap();
                let grid = kernel_grid(&params);
                let sampled = grid
                    .sample_radial(|r| eval_closed_form(&params, r).unwrap())
                    .unwrap();
                let m = field_moments(&sampled);
                let expected = moment(&params, 2).unwrap();
                let mass_ok = (m.value.mass - 1.0).abs() <= 1e-6;
                let second_ok = rel(m.value.second, expected) <= 0.01;
                out.push(outcome(
                    format!("grid kernel N={dim} n={n} h={h}"),
                    mass_ok && second_ok && m.is_clean(),
                    format!(
                        "mass − 1 = {:.2e} (≤ 1e-6), second {:.6} vs 2Nnh {expected} (±1%), warnings {}",
                        m.value.mass - 1.0,
                        m.value.second,
                        m.warnings.len()
                    ),
                ));

                let data = InitialProfile::Gaussian {
                    width: 0.5,
                    mass: 1.0,
                }
                .sample(&grid)
                .unwrap();
                let u = apply_kernel_spectral(&data, n, h).unwrap();
                let before = field_moments(&data).value.second;
                let after = field_moments(&u);
                let growth = after.value.second - before;
                out.push(outcome(
                    format!("solution growth N={dim} n={n} h={h}"),
                    rel(growth, expected) <= 0.01 && after.is_clean(),
                    format!("second-moment growth {growth:.6} vs {expected} (±1%)"),
                ));
            }
        }
    }
    out
}

// 4 ------------------------------------------------------------------------

fn semigroup() -> Vec<Outcome> {
    let grid = Grid::new(2, 30.0, 128).unwrap();
    let f = InitialProfile::Noise {
        seed: 11,
        max_mode: 12,
        terms: 40,
    }
    .sample(&grid)
    .unwrap();
    let (m, n, h) = (3usize, 7usize, 0.2);
    let composed = apply_kernel_spectral(&apply_kernel_spectral(&f, m, h).unwrap(), n, h).unwrap();
    let direct = apply_kernel_spectral(&f, n + m, h).unwrap();
    let spectral_gap = field_lp_norm(&composed.sub(&direct).unwrap(), 2.0).unwrap()
        / field_lp_norm(&direct, 2.0).unwrap();

    let grid = Grid::new(1, 40.0, 512).unwrap();
    let h = 0.1;
    let composed_peak_gap = |m: usize, n: usize| {
        let gm = KernelParams::new(m, h, 1).unwrap();
        let sampled = grid
            .sample_radial(|r| eval_closed_form(&gm, r).unwrap())
            .unwrap();
        let composed = apply_kernel_spectral(&sampled, n, h).unwrap();
        let peak = eval_closed_form(&KernelParams::new(n + m, h, 1).unwrap(), 0.0).unwrap();
        rel(composed.values()[grid.origin_index()], peak)
    };
    let worst = max_over(
        [(3, 2), (4, 4), (5, 7), (10, 20)]
            .iter()
            .map(|&(m, n)| composed_peak_gap(m, n)),
    );
    // 𝒢₁ has a corner and 𝒢₂ a jump in its third derivative at the origin;
    // sampling them on this grid costs accuracy independent of the transform
    let rough: Vec<String> = [(1, 5), (2, 3)]
        .iter()
        .map(|&(m, n)| format!("m={m}, n={n}: {:.2e}", composed_peak_gap(m, n)))
        .collect();
    vec![
        info("sampled kernels with m ≤ 2", true, rough.join("; ")),
        outcome(
            "spectral composition",
            spectral_gap <= 1e-12,
            format!("relative L² gap {spectral_gap:.2e} (≤ 1e-12)"),
        ),
        outcome(
            "sampled kernel composition at the peak",
            worst <= 1e-6,
            format!("max relative gap {worst:.2e} over m ≥ 3 (≤ 1e-6, N=1, M=512)"),
        ),
    ]
}

// 5 ------------------------------------------------------------------------

fn kernel_exponents() -> Vec<Outcome> {
    let mut out = Vec::new();
    let data = InitialProfile::Gaussian {
        width: 1.0,
        mass: 1.0,
    };
    for dim in [1usize, 2, 3] {
        for p in [1.0, 2.0, INF] {
            for quantity in [
                RadialQuantity::Kernel,
                RadialQuantity::Gradient,
                RadialQuantity::TimeDifference,
            ] {
                let config = SweepConfig::new(dim, p, powers_of_two(6, 12), data.clone());
                let label = format!("{quantity:?} N={dim} p={p}");
                match kernel_decay_sweep(&config, quantity) {
                    Ok(r) => {
                        let c = r.check("slope").unwrap();
                        out.push(outcome(
                            label,
                            c.passed && r.evidentiary(),
                            format!(
                                "slope {:.5} vs {:.3} ± {:.0e}, r² {:.6}",
                                c.measured,
                                c.expected,
                                c.tolerance,
                                r.fit.unwrap().r_squared
                            ),
                        ));
                    }
                    Err(e) => out.extend(failed(&label, e)),
                }
            }
        }
    }
    out
}

// 6 ------------------------------------------------------------------------

fn gaussian(width: f64) -> InitialProfile {
    InitialProfile::Gaussian { width, mass: 1.0 }
}

fn forcing(gamma: f64, width: f64) -> ForcingSpec {
    ForcingSpec {
        gamma,
        shape: gaussian(width),
        scale: 1.0,
    }
}

fn solution_and_duhamel() -> Vec<Outcome> {
    let mut out = Vec::new();
    for &(dim, q, p) in &[(1usize, 1.0, 2.0), (1, 1.0, INF), (2, 1.0, 2.0)] {
        let config = SweepConfig::new(dim, p, powers_of_two(6, 12), gaussian(1.0)).with_q(q);
        out.extend(sweep(
            &format!("solution N={dim} q={q} p={p}"),
            solution_decay_sweep(&config),
        ));
    }
    let n_values = log_spaced(16, 4096, 15);
    let generic =
        SweepConfig::new(1, INF, n_values.clone(), gaussian(1.0)).with_forcing(forcing(2.0, 1.0));
    out.extend(sweep(
        "duhamel N=1 p=inf q=1 gamma=2",
        duhamel_decay_sweep(&generic),
    ));
    let forcing_critical =
        SweepConfig::new(1, INF, n_values.clone(), gaussian(1.0)).with_forcing(forcing(1.0, 1.0));
    out.extend(sweep(
        "duhamel log case gamma=1 (N=1 p=inf q=1)",
        duhamel_decay_sweep(&forcing_critical),
    ));
    let exponent_critical =
        SweepConfig::new(2, INF, n_values.clone(), gaussian(2.0)).with_forcing(forcing(0.5, 2.0));
    out.extend(sweep(
        "duhamel log case (N/2)(1/q-1/p)=1 (N=2 p=inf q=1 gamma=0.5)",
        duhamel_decay_sweep(&exponent_critical),
    ));
    // with γ > 1 the forcing is summable in time and the log bound is not sharp
    let summable =
        SweepConfig::new(2, INF, n_values.clone(), gaussian(2.0)).with_forcing(forcing(2.0, 2.0));
    match duhamel_decay_sweep(&summable) {
        Ok(r) => {
            let c = r.check("compensated_spread").unwrap();
            out.push(info(
                "duhamel (N/2)(1/q-1/p)=1 with gamma=2",
                c.passed,
                format!(
                    "top-decade spread {:.4}, fitted slope {:.4}",
                    c.measured,
                    r.slope().unwrap_or(f64::NAN)
                ),
            ));
        }
        Err(e) => out.push(info(
            "duhamel (N/2)(1/q-1/p)=1 with gamma=2",
            false,
            e.to_string(),
        )),
    }
    let doubly = SweepConfig::new(2, INF, n_values, gaussian(2.0)).with_forcing(forcing(1.0, 2.0));
    match duhamel_decay_sweep(&doubly) {
        Ok(r) => {
            let c = r.check("compensated_spread").unwrap();
            out.push(info(
                "duhamel doubly critical (N=2 p=inf q=1 gamma=1)",
                c.passed,
                format!("top-decade spread {:.4} (≤ 0.15)", c.measured),
            ));
        }
        Err(e) => out.push(info("duhamel doubly critical", false, e.to_string())),
    }
    out
}

// 7 ------------------------------------------------------------------------

fn large_time_profile() -> Vec<Outcome> {
    let mut out = Vec::new();
    let n_values = log_spaced(16, 1600, 11);
    let centered = gaussian(0.5);
    let shifted = InitialProfile::ShiftedBump {
        width: 0.5,
        mass: 2.0,
        shift: 1.0,
    };
    for p in [1.0, 2.0] {
        for (name, profile) in [("centered gaussian", &centered), ("shifted bump", &shifted)] {
            let config = SweepConfig::new(1, p, n_values.clone(), profile.clone());
            let label = format!("{name} p={p}");
            match profile_convergence_sweep(&config, true) {
                Ok(r) => {
                    for c in &r.checks {
                        let detail = format!(
                            "measured {:.5}, expected {:.3}, tolerance {}",
                            c.measured, c.expected, c.tolerance
                        );
                        match (c.name.as_str(), name) {
                            ("moment_slope", "centered gaussian") => out.push(outcome(
                                format!("{label}: symmetric f slope"),
                                c.passed,
                                detail,
                            )),
                            ("moment_slope", _) => out.push(info(
                                format!("{label}: first-moment slope (companion)"),
                                c.passed,
                                detail,
                            )),
                            _ => {
                                out.push(outcome(format!("{label}: {}", c.name), c.passed, detail))
                            }
                        }
                    }
                    out.push(evidentiary(&label, &r));
                }
                Err(e) => out.extend(failed(&label, e)),
            }
        }
        let forced =
            SweepConfig::new(1, p, n_values.clone(), gaussian(0.5)).with_forcing(forcing(2.0, 0.5));
        out.extend(sweep(
            &format!("forced gamma=2 p={p}"),
            forced_convergence_sweep(&forced),
        ));
    }
    out
}

// 8 ------------------------------------------------------------------------

fn l2_optimality() -> Vec<Outcome> {
    let n_values = log_spaced(4, 4000, 13);
    let mut out = sweep(
        "N=1 gaussian",
        l2_optimality_sweep(&SweepConfig::new(1, 2.0, n_values.clone(), gaussian(0.5))),
    );
    let unit_box = InitialProfile::Box {
        half_width: 1.0,
        mass: 1.0,
    };
    out.extend(sweep(
        "N=2 box",
        l2_optimality_sweep(&SweepConfig::new(2, 2.0, n_values, unit_box)),
    ));
    out
}

// 9 ------------------------------------------------------------------------

fn yosida() -> Vec<Outcome> {
    match yosida_convergence_sweep(1.0, &powers_of_two(0, 10), 1) {
        Ok(r) => {
            let mut out = report_outcomes("t=1 N=1", &r);
            if let Some(fit) = r.fit {
                out.push(info(
                    "empirical rate in n",
                    true,
                    format!("{:.4}", fit.slope),
                ));
            }
            out
        }
        Err(e) => failed("yosida", e),
    }
}

// 10 -----------------------------------------------------------------------

fn closed_form_anchor() -> Vec<Outcome> {
    let params = KernelParams::new(1, 1.0, 1).unwrap();
    let worst = max_over((0..500).map(|i| {
        let r = 0.01 * (3000.0_f64.ln() * i as f64 / 499.0).exp();
        rel(eval_closed_form(&params, r).unwrap(), 0.5 * (-r).exp())
    }));
    // Γ(n − N/2)/(Γ(n)(4πh)^{N/2}) at 40 digits
    let origin = [
        (1usize, 1.0, 1usize, 0.5),
        (2, 0.5, 2, 0.159_154_943_091_895_34),
        (3, 0.25, 3, 0.079_577_471_545_947_67),
        (50, 0.1, 1, 0.127_112_761_302_683_5),
        (4096, 0.25, 2, 7.773_135_193_743_362e-5),
        (1000, 0.01, 3, 7.112_135_947_127_622e-4),
        (2, 1.0, 3, 0.039_788_735_772_973_83),
    ];
    let origin_worst = max_over(origin.iter().map(|&(n, h, dim, v)| {
        rel(
            eval_closed_form(&KernelParams::new(n, h, dim).unwrap(), 0.0).unwrap(),
            v,
        )
    }));
    vec![
        outcome(
            "resolvent kernel e^{-r}/2",
            worst <= 1e-12,
            format!("max relative gap {worst:.2e} on [0.01, 30] (≤ 1e-12)"),
        ),
        outcome(
            "origin value",
            origin_worst <= 1e-12,
            format!("max relative gap {origin_worst:.2e} over 7 parameter sets (≤ 1e-12)"),
        ),
    ]
}

struct Criterion {
    number: u32,
    title: &'static str,
    budget: Duration,
    run: fn() -> Vec<Outcome>,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            number: 1,
            title: "special-function properties",
            budget: Duration::from_secs(10),
            run: special_functions,
        },
        Criterion {
            number: 2,
            title: "closed form vs quadrature route",
            budget: Duration::from_secs(30),
            run: route_agreement,
        },
        Criterion {
            number: 3,
            title: "conservation laws",
            budget: Duration::from_secs(60),
            run: conservation,
        },
        Criterion {
            number: 4,
            title: "semigroup property",
            budget: Duration::from_secs(30),
            run: semigroup,
        },
        Criterion {
            number: 5,
            title: "kernel L^p decay exponents",
            budget: Duration::from_secs(120),
            run: kernel_exponents,
        },
        Criterion {
            number: 6,
            title: "solution and Duhamel decay",
            budget: Duration::from_secs(300),
            run: solution_and_duhamel,
        },
        Criterion {
            number: 7,
            title: "large-time profile",
            budget: Duration::from_secs(300),
            run: large_time_profile,
        },
        Criterion {
            number: 8,
            title: "optimal L² decay",
            budget: Duration::from_secs(120),
            run: l2_optimality,
        },
        Criterion {
            number: 9,
            title: "Yosida convergence",
            budget: Duration::from_secs(30),
            run: yosida,
        },
        Criterion {
            number: 10,
            title: "closed-form anchors",
            budget: Duration::from_secs(5),
            run: closed_form_anchor,
        },
    ];
    let selected: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut summary = Vec::new();
    for c in criteria
        .iter()
        .filter(|c| selected.is_empty() || selected.contains(&c.number))
    {
        let start = Instant::now();
        let outcomes = (c.run)();
        let elapsed = start.elapsed();
        for o in &outcomes {
            let tag = match (o.informational, o.passed) {
                (true, _) => "info",
                (false, true) => "pass",
                (false, false) => "FAIL",
            };
            println!("    [{tag}] {}: {}", o.label, o.detail);
        }
        let in_time = elapsed <= c.budget;
        if !in_time {
            println!(
                "    [FAIL] runtime {:.1} s exceeds {} s",
                elapsed.as_secs_f64(),
                c.budget.as_secs()
            );
        }
        let passed = in_time && outcomes.iter().all(|o| o.informational || o.passed);
        let line = format!(
            "criterion {:>2} {}  {} ({:.1} s of {} s)",
            c.number,
            if passed { "PASS" } else { "FAIL" },
            c.title,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
        println!("{line}");
        summary.push((passed, line));
    }
    println!("\nacceptance summary");
    for (_, line) in &summary {
        println!("{line}");
    }
    if summary.iter().all(|s| s.0) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
