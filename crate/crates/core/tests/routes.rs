use dtheat::grid::{
    apply_kernel_direct, apply_kernel_spectral, field_lp_norm, solve, ForcingSchedule, Grid,
    Record, Route,
};
use dtheat::kernel::{eval_closed_form, eval_quadrature, KernelParams, QuadratureSpec};
use dtheat::lab::{
    duhamel_decay_sweep, solution_decay_sweep, ForcingSpec, InitialProfile, SweepConfig,
};

fn relative_l2(a: &dtheat::grid::Field, b: &dtheat::grid::Field) -> f64 {
    field_lp_norm(&a.sub(b).unwrap(), 2.0).unwrap() / field_lp_norm(b, 2.0).unwrap()
}

#[test]
fn closed_form_matches_quadrature_across_regimes() {
    for dim in 1..=3 {
        for n in [1, 3, 10, 40, 150] {
            for h in [0.1, 1.0] {
                let params = KernelParams::new(n, h, dim).unwrap();
                let spec = QuadratureSpec::recommended(&params);
                for ratio in [0.05, 0.5, 1.0, 4.0, 16.0] {
                    let r = (ratio * n as f64 * h).sqrt();
                    let exact = eval_closed_form(&params, r).unwrap();
                    let quad = eval_quadrature(&params, r, &spec).unwrap().value;
                    assert!(
                        ((quad - exact) / exact).abs() <= 1e-7,
                        "N={dim} n={n} h={h} r={r}: {quad} vs {exact}"
                    );
                }
            }
        }
    }
}

#[test]
fn sampled_kernel_convolution_matches_spectral() {
    let grid = Grid::new(1, 40.0, 256).unwrap();
    let f = grid
        .sample(|x| (-x[0] * x[0]).exp() * (1.0 + 0.3 * (2.0 * x[0]).cos()))
        .unwrap();
    let spectral = apply_kernel_spectral(&f, 10, 0.1).unwrap();
    let direct = apply_kernel_direct(&f, 10, 0.1).unwrap();
    assert!(direct.warnings.is_empty(), "{:?}", direct.warnings);
    assert!(relative_l2(&direct.value, &spectral) <= 1e-5);
}

#[test]
fn recursion_and_duhamel_sum_agree() {
    let grid = Grid::new(2, 30.0, 64).unwrap();
    let f = grid
        .sample(|x| (-(x[0] * x[0] + x[1] * x[1]) / 2.0).exp())
        .unwrap();
    let shape = grid
        .sample(|x| (-(x[0] - 1.0).powi(2) - x[1] * x[1]).exp())
        .unwrap();
    let h = 0.25;
    let amplitudes: Vec<f64> = (1..=24).map(|j| (1.0 + j as f64 * h).powf(-1.5)).collect();
    let schedule = ForcingSchedule::separable(shape, amplitudes, 1.5).unwrap();
    let record = Record::Only(vec![1, 7, 24]);
    let a = solve(
        &f,
        Some(&schedule),
        h,
        24,
        Route::ResolventRecursion,
        &record,
    )
    .unwrap();
    let b = solve(&f, Some(&schedule), h, 24, Route::DirectKernel, &record).unwrap();
    for n in [1, 7, 24] {
        let gap = relative_l2(a.get(n).unwrap(), b.get(n).unwrap());
        assert!(gap <= 1e-9, "n={n}: {gap}");
    }
}

fn solution_config(points: Option<usize>) -> SweepConfig {
    let base = SweepConfig::new(
        1,
        2.0,
        vec![64, 128, 256, 512, 1024],
        InitialProfile::Gaussian {
            width: 1.0,
            mass: 1.0,
        },
    );
    match points {
        Some(points) => {
            let extent = base.required_extent();
            base.with_grid(extent, points)
        }
        None => base,
    }
}

#[test]
fn slope_is_stable_under_refinement() {
    let coarse = solution_decay_sweep(&solution_config(Some(512))).unwrap();
    let fine = solution_decay_sweep(&solution_config(Some(1024))).unwrap();
    let gap = (coarse.slope().unwrap() - fine.slope().unwrap()).abs();
    assert!(gap < 0.01, "slope moved by {gap}");
}

#[test]
fn sweeps_are_deterministic() {
    let config = solution_config(None);
    let first = solution_decay_sweep(&config).unwrap();
    let second = solution_decay_sweep(&config).unwrap();
    assert_eq!(first, second);

    let forced = SweepConfig::new(
        1,
        2.0,
        vec![16, 32, 64, 128],
        InitialProfile::Gaussian {
            width: 1.0,
            mass: 1.0,
        },
    )
    .with_forcing(ForcingSpec {
        gamma: 1.5,
        shape: InitialProfile::Noise {
            seed: 7,
            max_mode: 4,
            terms: 6,
        },
        scale: 1.0,
    });
    assert_eq!(
        duhamel_decay_sweep(&forced).unwrap(),
        duhamel_decay_sweep(&forced).unwrap()
    );
}
