use serde::Serialize;

use super::fit::PowerLawFit;
use crate::error::Warning;
use crate::grid::Grid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Abscissa {
    /// Fits are against t = nh.
    Time,
    /// Fits are against n at fixed t (Yosida sweeps).
    Steps,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayPoint {
    pub n: usize,
    pub nh: f64,
    pub value: f64,
    /// The value divided by its predicted rate; flat when the prediction holds.
    pub scaled_value: f64,
}

/// y·x^{exponent}/ln(x)^{log_power}
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Compensation {
    pub exponent: f64,
    pub log_power: f64,
}

impl Compensation {
    pub fn apply(&self, x: f64, y: f64) -> f64 {
        y * x.powf(self.exponent) / x.ln().powf(self.log_power)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RouteDiagnostic {
    pub label: String,
    pub relative_difference: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
}

impl Check {
    /// |measured − expected| ≤ tolerance
    pub fn within(name: impl Into<String>, measured: f64, expected: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            passed: (measured - expected).abs() <= tolerance,
            measured,
            expected,
            tolerance,
        }
    }

    /// measured ≤ bound
    pub fn at_most(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            passed: measured <= bound,
            measured,
            expected: bound,
            tolerance: 0.0,
        }
    }

    /// A yes/no property; measured counts violations.
    pub fn holds(name: impl Into<String>, violations: usize) -> Self {
        Self {
            name: name.into(),
            passed: violations == 0,
            measured: violations as f64,
            expected: 0.0,
            tolerance: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSummary {
    pub dim: usize,
    pub extent: f64,
    pub points: usize,
    pub spacing: f64,
    /// max |u| on the box boundary over max |u| at the last step.
    pub boundary_ratio: f64,
}

impl GridSummary {
    pub(crate) fn new(grid: &Grid, boundary_ratio: f64) -> Self {
        Self {
            dim: grid.dim(),
            extent: grid.extent(),
            points: grid.points(),
            spacing: grid.spacing(),
            boundary_ratio,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayReport {
    pub label: String,
    pub abscissa: Abscissa,
    pub points: Vec<DecayPoint>,
    /// Absent when every measured value is zero.
    pub fit: Option<PowerLawFit>,
    pub theory_slope: Option<f64>,
    pub compensation: Option<Compensation>,
    pub route_diagnostics: Vec<RouteDiagnostic>,
    pub grid: Option<GridSummary>,
    pub warnings: Vec<Warning>,
    pub checks: Vec<Check>,
}

impl DecayReport {
    pub(crate) fn new(label: impl Into<String>, abscissa: Abscissa) -> Self {
        Self {
            label: label.into(),
            abscissa,
            points: Vec::new(),
            fit: None,
            theory_slope: None,
            compensation: None,
            route_diagnostics: Vec::new(),
            grid: None,
            warnings: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn slope(&self) -> Option<f64> {
        self.fit.map(|f| f.slope)
    }

    /// |fitted − predicted| slope.
    pub fn fit_deviation(&self) -> Option<f64> {
        Some((self.fit?.slope - self.theory_slope?).abs())
    }

    /// No adequacy or route warnings were raised.
    pub fn evidentiary(&self) -> bool {
        self.warnings.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}
