//! Gamma and modified Bessel functions.
//!
//! Every kernel formula is assembled from [`log_gamma`] and [`log_bessel_k`]
//! and exponentiated once, so the routines here are built to stay finite in
//! log space far outside the range where Γ(n) or K_ν(z) themselves fit in an
//! `f64`.

mod bessel_i;
mod bessel_k;
mod gamma;

pub use bessel_i::{bessel_i, bessel_i_scaled, bessel_i_with, log_bessel_i, EvalPrecision};
pub use bessel_k::{bessel_k, bessel_k_scaled, log_bessel_k};
pub use gamma::{gamma_ratio, log_gamma};

pub(crate) use bessel_k::log_k_unchecked;
pub(crate) use gamma::{log_gamma_ratio_unchecked, log_gamma_unchecked};

/// Algorithm switchover points, exposed so tests can probe both sides.
pub mod thresholds {
    pub use super::bessel_k::{LARGE_ORDER, SERIES_MAX_Z};
    pub use super::gamma::STIRLING_MIN;
}

/// Direct access to the individual K_ν evaluation paths. Used by the seam
/// tests; everything else should go through [`log_bessel_k`].
pub mod paths {
    pub use super::bessel_k::{
        log_k_debye, log_k_half_integer, log_k_recurrence, log_k_steed_pair, log_k_temme_pair,
    };
}

use crate::error::{domain, Result};

/// Order ν of a Bessel function. Finite; any real value is admitted.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BesselOrder(f64);

/// How an order is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderClass {
    Integer,
    HalfInteger,
    General,
}

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if nu.is_finite() {
            Ok(Self(nu))
        } else {
            Err(domain("BesselOrder", format!("order {nu} is not finite")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn class(self) -> OrderClass {
        let nu = self.0.abs();
        if nu.fract() == 0.0 {
            OrderClass::Integer
        } else if (nu - 0.5).fract() == 0.0 {
            OrderClass::HalfInteger
        } else {
            OrderClass::General
        }
    }
}

impl TryFrom<f64> for BesselOrder {
    type Error = crate::error::Error;

    fn try_from(nu: f64) -> Result<Self> {
        Self::new(nu)
    }
}
