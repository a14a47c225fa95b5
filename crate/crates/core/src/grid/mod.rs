//! Periodic grids, sampled fields and the discrete-in-time solver.
//!
//! The box is [−L/2, L/2)^N with M nodes per axis at −L/2 + i·L/M, so the
//! origin is node M/2 on every axis. Values are stored row-major with the
//! last axis fastest.

pub mod io;
mod solver;
mod spectral;

pub use solver::{
    apply_kernel_direct, apply_kernel_spectral, solve, spectral_resolvent_step, ForcingSchedule,
    Record, Route, SolutionTrace,
};
pub use spectral::Spectral;

use serde::Serialize;

use crate::error::{Error, Result, Warned, Warning};

/// Boundary magnitude relative to the peak above which moments are suspect.
pub const BOUNDARY_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    dim: usize,
    extent: f64,
    points: usize,
}

impl Grid {
    pub fn new(dim: usize, extent: f64, points: usize) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidParameter(format!(
                "grid dimension {dim} outside 1..=3"
            )));
        }
        if !(extent > 0.0) || !extent.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "box extent {extent} must be positive"
            )));
        }
        if points < 8 || !points.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "{points} points per axis; need a power of two, at least 8"
            )));
        }
        Ok(Self {
            dim,
            extent,
            points,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn spacing(&self) -> f64 {
        self.extent / self.points as f64
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    /// Total number of nodes, M^N.
    pub fn len(&self) -> usize {
        self.points.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Flat index of the node at the origin.
    pub fn origin_index(&self) -> usize {
        let half = self.points / 2;
        (0..self.dim).fold(0, |acc, _| acc * self.points + half)
    }

    /// Per-axis indices of a flat index.
    pub fn axis_indices(&self, flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.dim];
        let mut rest = flat;
        for slot in out.iter_mut().rev() {
            *slot = rest % self.points;
            rest /= self.points;
        }
        out
    }

    /// Coordinate of node i along one axis.
    pub fn coordinate(&self, i: usize) -> f64 {
        -0.5 * self.extent + i as f64 * self.spacing()
    }

    /// Node position of a flat index.
    pub fn position(&self, flat: usize) -> Vec<f64> {
        self.coords(flat)[..self.dim].to_vec()
    }

    /// Position padded with zeros to three components, allocation free.
    pub(crate) fn coords(&self, flat: usize) -> [f64; 3] {
        let mut out = [0.0; 3];
        let mut rest = flat;
        for axis in (0..self.dim).rev() {
            out[axis] = self.coordinate(rest % self.points);
            rest /= self.points;
        }
        out
    }

    /// Squared distance of a flat index from the origin.
    pub fn radius_squared(&self, flat: usize) -> f64 {
        self.coords(flat).iter().map(|x| x * x).sum()
    }

    /// Whether the node lies on the outermost layer of the box.
    pub fn on_boundary(&self, flat: usize) -> bool {
        let mut rest = flat;
        for _ in 0..self.dim {
            let i = rest % self.points;
            if i == 0 || i == self.points - 1 {
                return true;
            }
            rest /= self.points;
        }
        false
    }

    pub fn sample<F: Fn(&[f64]) -> f64>(&self, f: F) -> Result<Field> {
        Field::new(
            *self,
            (0..self.len())
                .map(|i| f(&self.coords(i)[..self.dim]))
                .collect(),
        )
    }

    /// Samples a radial function of |x|.
    pub fn sample_radial<F: Fn(f64) -> f64>(&self, f: F) -> Result<Field> {
        Field::new(
            *self,
            (0..self.len())
                .map(|i| f(self.radius_squared(i).sqrt()))
                .collect(),
        )
    }

    pub fn zeros(&self) -> Field {
        Field {
            grid: *self,
            values: vec![0.0; self.len()],
        }
    }

    /// A single node of unit mass at the origin.
    pub fn unit_spike(&self) -> Field {
        let mut field = self.zeros();
        field.values[self.origin_index()] = 1.0 / self.cell_volume();
        field
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: Grid,
    values: Vec<f64>,
}

impl Field {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} values for a grid of {} nodes",
                values.len(),
                grid.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "non-finite value at node {i}"
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// ∫f as a Riemann sum.
    pub fn mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.cell_volume()
    }

    pub fn scaled(&self, factor: f64) -> Field {
        Field {
            grid: self.grid,
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    fn zip_with(&self, other: &Field, op: impl Fn(f64, f64) -> f64) -> Result<Field> {
        ensure_same_grid(&self.grid, &other.grid)?;
        Ok(Field {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| op(*a, *b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Field) -> Result<Field> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Field) -> Result<Field> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

pub(crate) fn ensure_same_grid(a: &Grid, b: &Grid) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::GridMismatch(format!("{a:?} vs {b:?}")))
    }
}

/// (Σ|v|^p·dx^N)^{1/p}; the maximum for p = ∞.
pub fn field_lp_norm(f: &Field, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "Lebesgue exponent p = {p} must be at least 1"
        )));
    }
    if p.is_infinite() {
        return Ok(f.max_abs());
    }
    let scale = f.max_abs();
    if scale == 0.0 {
        return Ok(0.0);
    }
    // factor out the maximum so large p cannot overflow
    let sum: f64 = f.values.iter().map(|v| (v.abs() / scale).powf(p)).sum();
    Ok(scale * (sum * f.grid.cell_volume()).powf(1.0 / p))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Moments {
    pub mass: f64,
    pub first: Vec<f64>,
    pub second: f64,
}

/// Mass, first and second moments about the box center.
pub fn field_moments(f: &Field) -> Warned<Moments> {
    let grid = f.grid;
    let dv = grid.cell_volume();
    let mut mass = 0.0;
    let mut first = vec![0.0; grid.dim];
    let mut second = 0.0;
    let mut boundary = 0.0_f64;
    for (i, &v) in f.values.iter().enumerate() {
        let x = &grid.coords(i)[..grid.dim];
        mass += v;
        for (acc, xi) in first.iter_mut().zip(x) {
            *acc += xi * v;
        }
        second += x.iter().map(|c| c * c).sum::<f64>() * v;
        if grid.on_boundary(i) {
            boundary = boundary.max(v.abs());
        }
    }
    let moments = Moments {
        mass: mass * dv,
        first: first.into_iter().map(|m| m * dv).collect(),
        second: second * dv,
    };
    let peak = f.max_abs();
    let ratio = if peak > 0.0 { boundary / peak } else { 0.0 };
    let mut warned = Warned::clean(moments);
    if ratio > BOUNDARY_THRESHOLD {
        warned.warnings.push(Warning::BoundaryContamination {
            ratio,
            threshold: BOUNDARY_THRESHOLD,
        });
    }
    warned
}
