//! Named initial data with known mass and first moment.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Field, Grid};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "profile", rename_all = "snake_case")]
pub enum InitialProfile {
    /// mass·(2πσ²)^{−N/2} e^{−|x|²/2σ²}
    Gaussian { width: f64, mass: f64 },
    /// The Gaussian moved by `shift` along the first axis.
    ShiftedBump { width: f64, mass: f64, shift: f64 },
    /// mass/(2a)^N on the cube [−a, a)^N, renormalized on the grid.
    Box { half_width: f64, mass: f64 },
    /// A unit bump at +offset minus a bump twice as wide at −offset/2 along
    /// the first axis: zero mass, not symmetric.
    Dipole { width: f64, offset: f64 },
    /// Sum of random cosines with wavenumber index at most `max_mode` per
    /// axis. Periodic, not integrable on ℝ^N; used for route comparisons.
    Noise {
        seed: u64,
        max_mode: usize,
        terms: usize,
    },
}

fn gaussian(x: &[f64], center: f64, width: f64, mass: f64) -> f64 {
    let n = x.len() as f64;
    let r2: f64 = x
        .iter()
        .enumerate()
        .map(|(i, c)| if i == 0 { (c - center).powi(2) } else { c * c })
        .sum();
    mass * (2.0 * PI * width * width).powf(-0.5 * n) * (-r2 / (2.0 * width * width)).exp()
}

impl InitialProfile {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{name} = {v} must be positive"
                )))
            }
        };
        match *self {
            InitialProfile::Gaussian { width, mass } => {
                positive("width", width).and(finite("mass", mass))
            }
            InitialProfile::ShiftedBump { width, mass, shift } => positive("width", width)
                .and(finite("mass", mass))
                .and(finite("shift", shift)),
            InitialProfile::Box { half_width, mass } => {
                positive("half_width", half_width).and(finite("mass", mass))
            }
            InitialProfile::Dipole { width, offset } => {
                positive("width", width).and(finite("offset", offset))
            }
            InitialProfile::Noise {
                max_mode, terms, ..
            } => {
                if max_mode == 0 || terms == 0 {
                    Err(Error::InvalidParameter(
                        "noise needs max_mode and terms of at least 1".into(),
                    ))
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn sample(&self, grid: &Grid) -> Result<Field> {
        self.validate()?;
        match *self {
            InitialProfile::Gaussian { width, mass } => {
                grid.sample(|x| gaussian(x, 0.0, width, mass))
            }
            InitialProfile::ShiftedBump { width, mass, shift } => {
                grid.sample(|x| gaussian(x, shift, width, mass))
            }
            InitialProfile::Box { half_width, mass } => {
                let raw = grid.sample(|x| {
                    if x.iter().all(|c| *c >= -half_width && *c < half_width) {
                        1.0
                    } else {
                        0.0
                    }
                })?;
                // the origin is a node, so the sampled mass is positive
                Ok(raw.scaled(mass / raw.mass()))
            }
            InitialProfile::Dipole { width, offset } => grid.sample(|x| {
                gaussian(x, offset, width, 1.0) - gaussian(x, -0.5 * offset, 2.0 * width, 1.0)
            }),
            InitialProfile::Noise {
                seed,
                max_mode,
                terms,
            } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let m = max_mode as i64;
                let waves: Vec<(Vec<f64>, f64, f64)> = (0..terms)
                    .map(|_| {
                        let k = (0..grid.dim())
                            .map(|_| 2.0 * PI * rng.gen_range(-m..=m) as f64 / grid.extent())
                            .collect();
                        (k, rng.gen_range(-1.0..1.0), rng.gen_range(0.0..2.0 * PI))
                    })
                    .collect();
                grid.sample(|x| {
                    waves
                        .iter()
                        .map(|(k, a, phase)| {
                            a * (k.iter().zip(x).map(|(ki, xi)| ki * xi).sum::<f64>() + phase).cos()
                        })
                        .sum()
                })
            }
        }
    }

    /// ∫f on ℝ^N, if the profile is integrable.
    pub fn mass(&self) -> Option<f64> {
        match *self {
            InitialProfile::Gaussian { mass, .. }
            | InitialProfile::ShiftedBump { mass, .. }
            | InitialProfile::Box { mass, .. } => Some(mass),
            InitialProfile::Dipole { .. } => Some(0.0),
            InitialProfile::Noise { .. } => None,
        }
    }

    /// First component of ∫x f, if integrable (the others vanish).
    pub fn first_moment(&self) -> Option<f64> {
        match *self {
            InitialProfile::Gaussian { .. } | InitialProfile::Box { .. } => Some(0.0),
            InitialProfile::ShiftedBump { mass, shift, .. } => Some(mass * shift),
            InitialProfile::Dipole { offset, .. } => Some(1.5 * offset),
            InitialProfile::Noise { .. } => None,
        }
    }

    /// Radius outside which the profile is negligible (below ~e^{−18} of its
    /// peak for the Gaussian family).
    pub fn support_radius(&self) -> f64 {
        match *self {
            InitialProfile::Gaussian { width, .. } => 6.0 * width,
            InitialProfile::ShiftedBump { width, shift, .. } => 6.0 * width + shift.abs(),
            InitialProfile::Box { half_width, .. } => half_width * 3.0_f64.sqrt(),
            InitialProfile::Dipole { width, offset } => 12.0 * width + offset.abs(),
            InitialProfile::Noise { .. } => 0.0,
        }
    }

    /// Smallest feature length, which sets the grid spacing.
    pub fn feature_length(&self) -> f64 {
        match *self {
            InitialProfile::Gaussian { width, .. }
            | InitialProfile::ShiftedBump { width, .. }
            | InitialProfile::Dipole { width, .. } => width,
            InitialProfile::Box { half_width, .. } => half_width,
            InitialProfile::Noise { .. } => f64::INFINITY,
        }
    }

    pub fn is_integrable(&self) -> bool {
        self.mass().is_some()
    }
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} = {v} must be finite"
        )))
    }
}
