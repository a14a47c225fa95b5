//! The discrete fundamental solution 𝒢ₙ,ₕ: the convolution kernel of
//! (1 − hΔ)^{−n} on ℝ^N, radially symmetric, written as a function of r = |x|.
//!
//! Closed form: 𝒢ₙ,ₕ(r) = 2 / (Γ(n)(4πh)^{N/2}) · (r/2√h)^ν · K_ν(r/√h) with
//! ν = n − N/2. Everything is evaluated as a logarithm first; Γ(n) alone
//! overflows for n > 171.

mod norms;
mod routes;

pub use norms::{
    integrability_margin, lp_norm, quantity_lp_norm, sample_radial_profile, unit_sphere_area,
    yosida_l1_gap, RadialProfile, RadialQuantity,
};
pub use routes::{eval_quadrature, QuadratureRule, QuadratureSpec};

use std::f64::consts::{LN_2, PI};

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::special::{log_gamma_ratio_unchecked, log_gamma_unchecked, log_k_unchecked};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelParams {
    n: usize,
    h: f64,
    dim: usize,
}

impl KernelParams {
    pub fn new(n: usize, h: f64, dim: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "time-step index n must be at least 1".into(),
            ));
        }
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "mesh width h = {h} must be positive"
            )));
        }
        if dim == 0 {
            return Err(Error::InvalidParameter(
                "dimension must be at least 1".into(),
            ));
        }
        Ok(Self { n, h, dim })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Same h and N, different step index.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        Self::new(n, self.h, self.dim)
    }

    /// Bessel order n − N/2.
    pub fn order(&self) -> f64 {
        self.n as f64 - 0.5 * self.dim as f64
    }

    /// nh, the elapsed time.
    pub fn time(&self) -> f64 {
        self.n as f64 * self.h
    }

    /// Whether 𝒢 has a finite value at the origin (n > N/2).
    pub fn bounded_at_origin(&self) -> bool {
        2 * self.n > self.dim
    }

    /// ln of 2 / (Γ(n)(4πh)^{N/2}).
    fn log_prefactor(&self) -> f64 {
        LN_2 - log_gamma_unchecked(self.n as f64) - 0.5 * self.dim as f64 * (4.0 * PI * self.h).ln()
    }
}

fn check_radius(function: &'static str, r: f64) -> Result<()> {
    if r >= 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(domain(
            function,
            format!("radius {r} must be finite and non-negative"),
        ))
    }
}

/// ln 𝒢ₙ,ₕ(r) for r > 0.
pub(crate) fn log_eval_positive(params: &KernelParams, r: f64) -> f64 {
    let nu = params.order();
    let z = r / params.h.sqrt();
    params.log_prefactor() + nu * (0.5 * z).ln() + log_k_unchecked(nu.abs(), z)
}

/// ln 𝒢ₙ,ₕ(0) = ln Γ(n − N/2) − ln Γ(n) − (N/2) ln(4πh), for n > N/2.
pub fn log_at_origin(params: &KernelParams) -> Result<f64> {
    if !params.bounded_at_origin() {
        return Err(Error::SingularAtOrigin {
            n: params.n,
            dim: params.dim,
        });
    }
    let nu = params.order();
    Ok(-log_gamma_ratio_unchecked(nu, 0.5 * params.dim as f64)
        - 0.5 * params.dim as f64 * (4.0 * PI * params.h).ln())
}

/// ln 𝒢ₙ,ₕ(r), including the limit at r = 0.
pub fn log_eval(params: &KernelParams, r: f64) -> Result<f64> {
    check_radius("kernel", r)?;
    if r == 0.0 {
        log_at_origin(params)
    } else {
        Ok(log_eval_positive(params, r))
    }
}

pub fn eval_closed_form(params: &KernelParams, r: f64) -> Result<f64> {
    Ok(log_eval(params, r)?.exp())
}

/// (1 + h|ξ|²)^{−n}.
pub fn fourier_symbol(params: &KernelParams, xi_norm: f64) -> f64 {
    (-(params.n as f64) * (params.h * xi_norm * xi_norm).ln_1p()).exp()
}

pub(crate) fn log_gradient_positive(params: &KernelParams, r: f64) -> f64 {
    let nu = params.order();
    let z = r / params.h.sqrt();
    params.log_prefactor() - 0.5 * params.h.ln()
        + nu * (0.5 * z).ln()
        + log_k_unchecked((nu - 1.0).abs(), z)
}

/// |∇𝒢ₙ,ₕ| at radius r, i.e. 2/(Γ(n)(4πh)^{N/2}√h) (r/2√h)^ν K_{ν−1}(r/√h).
pub fn eval_gradient_magnitude(params: &KernelParams, r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(domain("gradient", format!("radius {r} must be positive")));
    }
    Ok(log_gradient_positive(params, r).exp())
}

/// ln|e^a − e^b| and the sign of e^a − e^b.
pub(crate) fn log_abs_diff(a: f64, b: f64) -> (f64, f64) {
    if a == b {
        return (f64::NEG_INFINITY, 0.0);
    }
    let (hi, lo, sign) = if a > b { (a, b, 1.0) } else { (b, a, -1.0) };
    (hi + (-(lo - hi).exp_m1()).ln(), sign)
}

/// ln|(𝒢ₙ − 𝒢ₙ₋₁)/h| and its sign, r ≥ 0 (r = 0 needs n − 1 > N/2).
pub(crate) fn log_time_difference(params: &KernelParams, r: f64) -> Result<(f64, f64)> {
    if params.n < 2 {
        return Err(domain("time_difference", "needs n >= 2"));
    }
    let prev = KernelParams {
        n: params.n - 1,
        ..*params
    };
    let (current, previous) = if r == 0.0 {
        (log_at_origin(params)?, log_at_origin(&prev)?)
    } else {
        (log_eval_positive(params, r), log_eval_positive(&prev, r))
    };
    let (log_abs, sign) = log_abs_diff(current, previous);
    Ok((log_abs - params.h.ln(), sign))
}

/// (𝒢ₙ,ₕ − 𝒢ₙ₋₁,ₕ)/h, which equals Δ𝒢ₙ,ₕ.
pub fn eval_time_difference(params: &KernelParams, r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(domain(
            "time_difference",
            format!("radius {r} must be positive"),
        ));
    }
    let (log_abs, sign) = log_time_difference(params, r)?;
    Ok(sign * log_abs.exp())
}

/// ∫𝒢 = 1, ∫x𝒢 = 0, ∫|x|²𝒢 = 2Nnh.
pub fn moment(params: &KernelParams, order: u32) -> Result<f64> {
    match order {
        0 => Ok(1.0),
        1 => Ok(0.0),
        2 => Ok(2.0 * params.dim as f64 * params.time()),
        other => Err(Error::UnsupportedOrder(other)),
    }
}

/// ln G_t(r) for the Gaussian heat kernel (4πt)^{−N/2} e^{−r²/4t}.
pub fn log_heat_kernel(dim: usize, t: f64, r: f64) -> f64 {
    -0.5 * dim as f64 * (4.0 * PI * t).ln() - r * r / (4.0 * t)
}

pub fn heat_kernel(dim: usize, t: f64, r: f64) -> f64 {
    log_heat_kernel(dim, t, r).exp()
}
