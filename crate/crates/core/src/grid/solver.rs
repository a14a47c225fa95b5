//! u_n = (1 − hΔ)^{−1}(u_{n−1} + h g_n) on the periodic box, by recursion and
//! by the Duhamel sum u_n = R^n f + h Σ_{j≤n} R^{n−j+1} g_j, R = (1 − hΔ)^{−1}.

use std::borrow::Cow;
use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ensure_same_grid, field_lp_norm, Field, Grid, Spectral};
use crate::error::{Error, Result, Warned, Warning};
use crate::kernel::{log_at_origin, log_eval_positive, KernelParams};

/// Sampled kernel at the box edge relative to its peak above which the
/// real-space route is flagged.
pub const TAIL_THRESHOLD: f64 = 1e-12;

fn check_h(h: f64) -> Result<()> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "mesh width h = {h} must be positive"
        )))
    }
}

/// ln(1 + h|ξ|²) per mode; the n-step symbol is exp(−n·this).
fn log_resolvent_symbol(spectral: &Spectral, h: f64) -> Vec<f64> {
    spectral
        .xi_squared()
        .iter()
        .map(|x| (h * x).ln_1p())
        .collect()
}

/// One backward-Euler step: û ← (û + h ĝ)/(1 + h|ξ|²).
pub fn spectral_resolvent_step(state: &Field, h: f64, forcing: Option<&Field>) -> Result<Field> {
    check_h(h)?;
    let grid = *state.grid();
    let spectral = Spectral::new(&grid);
    let mut spectrum = spectral.forward(state.values());
    if let Some(g) = forcing {
        ensure_same_grid(&grid, g.grid())?;
        for (s, gk) in spectrum.iter_mut().zip(spectral.forward(g.values())) {
            *s += gk * h;
        }
    }
    for (s, x) in spectrum.iter_mut().zip(spectral.xi_squared()) {
        *s /= 1.0 + h * x;
    }
    Field::new(grid, spectral.inverse(spectrum))
}

/// 𝒢ₙ,ₕ ∗ f on the box: multiply by (1 + h|ξ|²)^{−n}.
pub fn apply_kernel_spectral(f: &Field, n: usize, h: f64) -> Result<Field> {
    check_h(h)?;
    if n == 0 {
        return Err(Error::InvalidParameter(
            "kernel power n must be at least 1".into(),
        ));
    }
    let spectral = Spectral::new(f.grid());
    let mut spectrum = spectral.forward(f.values());
    for (s, l) in spectrum.iter_mut().zip(log_resolvent_symbol(&spectral, h)) {
        *s *= (-(n as f64) * l).exp();
    }
    Field::new(*f.grid(), spectral.inverse(spectrum))
}

/// 𝒢ₙ,ₕ sampled at the minimum-image offset of every node from the origin.
pub(crate) fn periodic_kernel_samples(
    grid: &Grid,
    params: &KernelParams,
) -> Result<(Vec<f64>, f64)> {
    let m = grid.points();
    let dx = grid.spacing();
    let peak = log_at_origin(params)?;
    let offsets: Vec<f64> = (0..m)
        .map(|i| {
            if i < m / 2 {
                i as f64 * dx
            } else {
                (i as f64 - m as f64) * dx
            }
        })
        .collect();
    let values = (0..grid.len())
        .into_par_iter()
        .map(|flat| {
            let mut rest = flat;
            let mut r2 = 0.0;
            for _ in 0..grid.dim() {
                r2 += offsets[rest % m].powi(2);
                rest /= m;
            }
            if r2 == 0.0 {
                peak.exp()
            } else {
                log_eval_positive(params, r2.sqrt()).exp()
            }
        })
        .collect();
    let edge = log_eval_positive(params, 0.5 * grid.extent());
    Ok((values, (edge - peak).exp()))
}

/// 𝒢ₙ,ₕ ∗ f as the discrete circular convolution Σ_y 𝒢(x − y) f(y) dx^N with
/// the kernel taken from its closed form, not from the symbol. The sum is
/// evaluated with FFTs, which is exact up to rounding. Needs n > N/2 so the
/// kernel has a finite value at the origin.
pub fn apply_kernel_direct(f: &Field, n: usize, h: f64) -> Result<Warned<Field>> {
    let grid = *f.grid();
    let params = KernelParams::new(n, h, grid.dim())?;
    let (kernel, tail) = periodic_kernel_samples(&grid, &params)?;
    let spectral = Spectral::new(&grid);
    let kernel_hat = spectral.forward(&kernel);
    let mut spectrum = spectral.forward(f.values());
    let dv = grid.cell_volume();
    for (s, k) in spectrum.iter_mut().zip(kernel_hat) {
        *s *= k * dv;
    }
    // the kernel is indexed by offset from node 0, the field by node; the
    // product convolves correctly because both use the same periodic index
    let field = Field::new(grid, spectral.inverse(spectrum))?;
    let mut warned = Warned::clean(field);
    if tail > TAIL_THRESHOLD {
        warned.warnings.push(Warning::TailTruncation {
            ratio: tail,
            threshold: TAIL_THRESHOLD,
        });
    }
    Ok(warned)
}

/// Forcing g(jh, ·) for j = 1..=J together with its declared L¹ decay
/// exponent γ, either as explicit fields or as a fixed shape times a scalar
/// amplitude per step.
#[derive(Debug, Clone, PartialEq)]
pub struct ForcingSchedule {
    grid: Grid,
    source: ForcingSource,
    gamma: f64,
}

#[derive(Debug, Clone, PartialEq)]
enum ForcingSource {
    Steps(Vec<Field>),
    Separable { shape: Field, amplitudes: Vec<f64> },
}

impl ForcingSchedule {
    pub fn from_steps(steps: Vec<Field>, gamma: f64) -> Result<Self> {
        let grid = *steps
            .first()
            .ok_or_else(|| Error::InvalidParameter("forcing schedule has no steps".into()))?
            .grid();
        for s in &steps {
            ensure_same_grid(&grid, s.grid())?;
        }
        Self::checked(grid, ForcingSource::Steps(steps), gamma)
    }

    /// g(jh, x) = amplitudes[j−1] · shape(x).
    pub fn separable(shape: Field, amplitudes: Vec<f64>, gamma: f64) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidParameter(
                "forcing schedule has no steps".into(),
            ));
        }
        if amplitudes.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidParameter(
                "non-finite forcing amplitude".into(),
            ));
        }
        let grid = *shape.grid();
        Self::checked(grid, ForcingSource::Separable { shape, amplitudes }, gamma)
    }

    fn checked(grid: Grid, source: ForcingSource, gamma: f64) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "decay exponent gamma = {gamma} must be positive"
            )));
        }
        Ok(Self {
            grid,
            source,
            gamma,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Number of supplied steps J.
    pub fn len(&self) -> usize {
        match &self.source {
            ForcingSource::Steps(s) => s.len(),
            ForcingSource::Separable { amplitudes, .. } => amplitudes.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// g(jh, ·), j ≥ 1.
    pub fn step(&self, j: usize) -> Result<Cow<'_, Field>> {
        if j == 0 || j > self.len() {
            return Err(Error::MissingForcingStep(j));
        }
        Ok(match &self.source {
            ForcingSource::Steps(s) => Cow::Borrowed(&s[j - 1]),
            ForcingSource::Separable { shape, amplitudes } => {
                Cow::Owned(shape.scaled(amplitudes[j - 1]))
            }
        })
    }

    /// max_j ‖g(jh)‖₁ j^γ over the supplied steps: the constant in
    /// ‖g(jh)‖₁ ≤ C j^{−γ}.
    pub fn decay_constant(&self) -> f64 {
        let one = |f: &Field| field_lp_norm(f, 1.0).unwrap_or(f64::NAN);
        let weight = |j: usize| (j as f64).powf(self.gamma);
        match &self.source {
            ForcingSource::Steps(s) => s
                .iter()
                .enumerate()
                .map(|(i, f)| one(f) * weight(i + 1))
                .fold(0.0, f64::max),
            ForcingSource::Separable { shape, amplitudes } => {
                let base = one(shape);
                amplitudes
                    .iter()
                    .enumerate()
                    .map(|(i, a)| a.abs() * base * weight(i + 1))
                    .fold(0.0, f64::max)
            }
        }
    }

    /// Σ_j ∫g(jh) over the supplied steps.
    pub fn total_mass(&self) -> f64 {
        match &self.source {
            ForcingSource::Steps(s) => s.iter().map(Field::mass).sum(),
            ForcingSource::Separable { shape, amplitudes } => {
                shape.mass() * amplitudes.iter().sum::<f64>()
            }
        }
    }

    /// Spectra of the steps 1..=n; a separable schedule transforms once.
    fn spectra(&self, spectral: &Spectral, n: usize) -> ForcingSpectra {
        match &self.source {
            ForcingSource::Steps(s) => ForcingSpectra::Steps(
                s[..n]
                    .iter()
                    .map(|f| spectral.forward(f.values()))
                    .collect(),
            ),
            ForcingSource::Separable { shape, amplitudes } => ForcingSpectra::Separable {
                shape: spectral.forward(shape.values()),
                amplitudes: amplitudes[..n].to_vec(),
            },
        }
    }
}

enum ForcingSpectra {
    Steps(Vec<Vec<Complex64>>),
    Separable {
        shape: Vec<Complex64>,
        amplitudes: Vec<f64>,
    },
}

impl ForcingSpectra {
    /// Mode k of ĝ_j, j ≥ 1.
    fn mode(&self, j: usize, k: usize) -> Complex64 {
        match self {
            ForcingSpectra::Steps(s) => s[j - 1][k],
            ForcingSpectra::Separable { shape, amplitudes } => shape[k] * amplitudes[j - 1],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// One resolvent step at a time.
    ResolventRecursion,
    /// Every recorded step from the closed Duhamel sum.
    DirectKernel,
}

/// Which steps a solve keeps.
#[derive(Debug, Clone, PartialEq)]
pub enum Record {
    All,
    Only(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionTrace {
    pub h: f64,
    pub dim: usize,
    pub route: Route,
    pub fields_by_step: BTreeMap<usize, Field>,
}

impl SolutionTrace {
    pub fn get(&self, n: usize) -> Option<&Field> {
        self.fields_by_step.get(&n)
    }

    pub fn steps(&self) -> impl Iterator<Item = usize> + '_ {
        self.fields_by_step.keys().copied()
    }
}

/// Solves δu = Δu + g, u(0) = f, up to step n_max.
pub fn solve(
    f: &Field,
    forcing: Option<&ForcingSchedule>,
    h: f64,
    n_max: usize,
    route: Route,
    record: &Record,
) -> Result<SolutionTrace> {
    check_h(h)?;
    let grid = *f.grid();
    if let Some(g) = forcing {
        ensure_same_grid(&grid, g.grid())?;
        if g.len() < n_max {
            return Err(Error::MissingForcingStep(g.len() + 1));
        }
    }
    let steps: Vec<usize> = match record {
        Record::All => (1..=n_max).collect(),
        Record::Only(s) => {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            if let Some(bad) = s.iter().find(|&&n| n == 0 || n > n_max) {
                return Err(Error::InvalidParameter(format!(
                    "recorded step {bad} outside 1..={n_max}"
                )));
            }
            s
        }
    };
    let spectral = Spectral::new(&grid);
    let initial = spectral.forward(f.values());
    let forcing_hat = forcing.map(|g| g.spectra(&spectral, n_max));
    let log_symbol = log_resolvent_symbol(&spectral, h);

    let fields: Vec<(usize, Vec<f64>)> = match route {
        Route::ResolventRecursion => {
            let divisor: Vec<f64> = spectral.xi_squared().iter().map(|x| 1.0 + h * x).collect();
            let mut state = initial;
            let mut out = Vec::with_capacity(steps.len());
            let mut next = steps.iter().peekable();
            for n in 1..=n_max {
                for (k, s) in state.iter_mut().enumerate() {
                    if let Some(g) = &forcing_hat {
                        *s += g.mode(n, k) * h;
                    }
                    *s /= divisor[k];
                }
                if next.peek() == Some(&&n) {
                    next.next();
                    out.push((n, spectral.inverse(state.clone())));
                }
            }
            out
        }
        Route::DirectKernel => steps
            .par_iter()
            .map(|&n| {
                let spectrum: Vec<Complex64> = (0..grid.len())
                    .map(|k| {
                        let power = |m: usize| (-(m as f64) * log_symbol[k]).exp();
                        let mut s = initial[k] * power(n);
                        if let Some(g) = &forcing_hat {
                            for j in 1..=n {
                                s += g.mode(j, k) * (h * power(n - j + 1));
                            }
                        }
                        s
                    })
                    .collect();
                (n, spectral.inverse(spectrum))
            })
            .collect(),
    };
    let mut fields_by_step = BTreeMap::new();
    for (n, values) in fields {
        fields_by_step.insert(n, Field::new(grid, values)?);
    }
    Ok(SolutionTrace {
        h,
        dim: grid.dim(),
        route,
        fields_by_step,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::field_lp_norm;
    use crate::kernel::eval_closed_form;

    fn l2_rel(a: &Field, b: &Field) -> f64 {
        field_lp_norm(&a.sub(b).unwrap(), 2.0).unwrap() / field_lp_norm(b, 2.0).unwrap()
    }

    fn bump(grid: &Grid, center: f64) -> Field {
        grid.sample(|x| (-x.iter().map(|c| (c - center).powi(2)).sum::<f64>()).exp())
            .unwrap()
    }

    #[test]
    fn constants_are_fixed_points() {
        let grid = Grid::new(2, 10.0, 16).unwrap();
        let c = grid.sample(|_| 3.5).unwrap();
        let next = spectral_resolvent_step(&c, 0.7, None).unwrap();
        assert!(next.values().iter().all(|v| (v - 3.5).abs() < 1e-13));
    }

    #[test]
    fn unit_wavenumber_mode_is_halved() {
        let grid = Grid::new(1, 2.0 * std::f64::consts::PI, 32).unwrap();
        for shift in [0.0, std::f64::consts::FRAC_PI_2] {
            let mode = grid.sample(|x| (x[0] + shift).cos()).unwrap();
            let next = spectral_resolvent_step(&mode, 1.0, None).unwrap();
            assert!(l2_rel(&next, &mode.scaled(0.5)) < 1e-14);
        }
    }

    #[test]
    fn iterated_steps_equal_the_kernel_power() {
        let grid = Grid::new(1, 20.0, 128).unwrap();
        let f = bump(&grid, 1.0);
        let mut u = f.clone();
        for _ in 0..7 {
            u = spectral_resolvent_step(&u, 0.3, None).unwrap();
        }
        assert!(l2_rel(&u, &apply_kernel_spectral(&f, 7, 0.3).unwrap()) < 1e-12);
        assert!(apply_kernel_spectral(&f, 0, 0.3).is_err());
    }

    #[test]
    fn direct_route_is_the_circular_convolution() {
        let grid = Grid::new(1, 12.0, 32).unwrap();
        let f = grid.sample(|x| (x[0] * 0.7).sin() + 0.2 * x[0]).unwrap();
        let params = KernelParams::new(3, 0.2, 1).unwrap();
        let m = grid.points();
        let dx = grid.spacing();
        let naive: Vec<f64> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let d = (i + m - j) % m;
                        let off = if d < m / 2 {
                            d as f64
                        } else {
                            d as f64 - m as f64
                        };
                        eval_closed_form(&params, (off * dx).abs()).unwrap() * f.values()[j] * dx
                    })
                    .sum()
            })
            .collect();
        let direct = apply_kernel_direct(&f, 3, 0.2).unwrap().value;
        for (a, b) in direct.values().iter().zip(&naive) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn direct_route_flags_a_small_box() {
        let grid = Grid::new(1, 6.0, 64).unwrap();
        let w = apply_kernel_direct(&bump(&grid, 0.0), 10, 0.5).unwrap();
        assert!(matches!(w.warnings[0], Warning::TailTruncation { .. }));
        let singular = Grid::new(2, 6.0, 16).unwrap();
        assert!(apply_kernel_direct(&singular.unit_spike(), 1, 0.5).is_err());
    }

    #[test]
    fn single_pulse_forcing() {
        let grid = Grid::new(1, 30.0, 128).unwrap();
        let g = bump(&grid, 0.0);
        let mut amplitudes = vec![0.0; 6];
        amplitudes[0] = 1.0;
        let forcing = ForcingSchedule::separable(g.clone(), amplitudes, 2.0).unwrap();
        let h = 0.4;
        let trace = solve(
            &grid.zeros(),
            Some(&forcing),
            h,
            6,
            Route::ResolventRecursion,
            &Record::All,
        )
        .unwrap();
        for n in 1..=6 {
            let expected = apply_kernel_spectral(&g, n, h).unwrap().scaled(h);
            assert!(l2_rel(trace.get(n).unwrap(), &expected) < 1e-12);
        }
    }

    #[test]
    fn routes_agree_and_mass_is_booked() {
        let grid = Grid::new(2, 16.0, 32).unwrap();
        let f = bump(&grid, 0.5);
        let steps: Vec<Field> = (1..=12)
            .map(|j| bump(&grid, -1.0).scaled(1.0 / j as f64))
            .collect();
        let forcing = ForcingSchedule::from_steps(steps, 1.0).unwrap();
        let h = 0.25;
        let record = Record::Only(vec![3, 12, 7]);
        let a = solve(
            &f,
            Some(&forcing),
            h,
            12,
            Route::ResolventRecursion,
            &record,
        )
        .unwrap();
        let b = solve(&f, Some(&forcing), h, 12, Route::DirectKernel, &record).unwrap();
        assert_eq!(a.steps().collect::<Vec<_>>(), vec![3, 7, 12]);
        for n in [3, 7, 12] {
            assert!(l2_rel(a.get(n).unwrap(), b.get(n).unwrap()) < 1e-12);
            let booked = f.mass()
                + h * (1..=n)
                    .map(|j| forcing.step(j).unwrap().mass())
                    .sum::<f64>();
            assert!((a.get(n).unwrap().mass() - booked).abs() < 1e-12 * booked);
        }
        assert_eq!(
            solve(
                &f,
                Some(&forcing),
                h,
                13,
                Route::ResolventRecursion,
                &Record::All
            ),
            Err(Error::MissingForcingStep(13))
        );
        assert!(solve(&f, None, h, 5, Route::DirectKernel, &Record::Only(vec![6])).is_err());
    }

    #[test]
    fn schedule_bookkeeping() {
        let grid = Grid::new(1, 10.0, 16).unwrap();
        let shape = grid.sample(|_| 0.1).unwrap();
        let s = ForcingSchedule::separable(shape, vec![1.0, 0.25, 1.0 / 9.0], 2.0).unwrap();
        assert_eq!(s.len(), 3);
        assert!((s.decay_constant() - 1.0).abs() < 1e-12);
        assert!(s.step(0).is_err() && s.step(4).is_err());
        assert!(ForcingSchedule::separable(grid.zeros(), vec![1.0], 0.0).is_err());
        assert!(ForcingSchedule::from_steps(vec![], 1.0).is_err());
        let other = Grid::new(1, 10.0, 32).unwrap();
        assert!(ForcingSchedule::from_steps(vec![grid.zeros(), other.zeros()], 1.0).is_err());
    }
}
