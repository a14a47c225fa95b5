//! Radial L^p norms of the kernel and its derived quantities.
//!
//! ‖f‖_p^p = ω_{N−1} ∫₀^∞ |f(r)|^p r^{N−1} dr is computed after r = s·e^u with
//! s = √(nh), integrating |f|^p r^N du over the window in u where the
//! integrand exceeds 1e-18 of its peak. The window is located by a coarse scan
//! so that nothing about the shape of f is assumed beyond radial symmetry.

use std::f64::consts::PI;

use log::warn;
use serde::{Deserialize, Serialize};

use super::{
    log_at_origin, log_eval, log_eval_positive, log_gradient_positive, log_heat_kernel,
    log_time_difference, KernelParams,
};
use crate::error::{domain, Error, Result};
use crate::quadrature::integrate_adaptive;
use crate::special::log_gamma_unchecked;

const SCAN_LEFT: f64 = -60.0;
const SCAN_RIGHT: f64 = 12.0;
const SCAN_STEP: f64 = 0.25;
/// ln(1e-18)
const DEPTH: f64 = -41.446_531_673_892_82;
const REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialQuantity {
    #[default]
    Kernel,
    Gradient,
    TimeDifference,
}

impl RadialQuantity {
    /// Extra decay in nh relative to the kernel, and the extra integrability
    /// requirement at the origin: 0, 1/2 and 1.
    pub fn derivative_order(self) -> f64 {
        match self {
            RadialQuantity::Kernel => 0.0,
            RadialQuantity::Gradient => 0.5,
            RadialQuantity::TimeDifference => 1.0,
        }
    }
}

/// Area of the unit sphere in ℝ^N, 2π^{N/2}/Γ(N/2).
pub fn unit_sphere_area(dim: usize) -> f64 {
    let half = 0.5 * dim as f64;
    (2.0_f64.ln() + half * PI.ln() - log_gamma_unchecked(half)).exp()
}

/// n − (N/2)(1 − 1/p) − k with k the derivative order; the norm is finite
/// iff this is positive.
pub fn integrability_margin(params: &KernelParams, quantity: RadialQuantity, p: f64) -> f64 {
    params.n() as f64 - 0.5 * params.dim() as f64 * (1.0 - 1.0 / p) - quantity.derivative_order()
}

enum Radial {
    Finite(f64),
    Divergent,
}

fn scan<F: Fn(f64) -> f64>(log_integrand: &F) -> Vec<(f64, f64)> {
    let mut points = Vec::new();
    let mut u = SCAN_LEFT;
    let mut peak = f64::NEG_INFINITY;
    while u <= SCAN_RIGHT {
        let l = log_integrand(u);
        peak = peak.max(l);
        points.push((u, l));
        if u > 0.0 && l < peak + DEPTH {
            break;
        }
        u += SCAN_STEP;
    }
    points
}

/// ln ∫ exp(L(u)) du over ℝ, where L is sampled in log-length units relative
/// to the natural scale.
fn log_integral_in_u<F: Fn(f64) -> f64>(log_integrand: F) -> Radial {
    let points = scan(&log_integrand);
    let peak = points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    if peak == f64::NEG_INFINITY {
        return Radial::Finite(f64::NEG_INFINITY);
    }
    let first = points.iter().position(|p| p.1 > peak + DEPTH).unwrap();
    let last = points.iter().rposition(|p| p.1 > peak + DEPTH).unwrap();
    let mut tail = 0.0;
    if first == 0 {
        // left tail not exhausted: integrand ~ e^{slope·u} as u → −∞
        let slope = (points[4].1 - points[0].1) / (points[4].0 - points[0].0);
        if !(slope > 1e-9) {
            return Radial::Divergent;
        }
        tail = (points[0].1 - peak).exp() / slope;
    }
    let lo = points[first.saturating_sub(1)].0;
    let hi = points[(last + 1).min(points.len() - 1)].0;
    let integral = integrate_adaptive(|u| (log_integrand(u) - peak).exp(), lo, hi, REL_TOL, 0.0);
    if !integral.converged {
        warn!(
            "radial quadrature stopped at estimated relative error {:.1e}",
            integral.error_estimate / integral.value
        );
    }
    Radial::Finite(peak + (integral.value + tail).ln())
}

/// ln sup_r |f(r)|, with the value at the origin (if finite) included.
fn log_sup<F: Fn(f64) -> f64>(log_abs: F, scale: f64, at_origin: Option<f64>) -> Radial {
    let g = |u: f64| log_abs(scale * u.exp());
    let points = scan(&g);
    let (idx, _) = points
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .unwrap();
    if idx == 0 && points[0].1 > points[1].1 + 1e-9 {
        return match at_origin {
            Some(v) => Radial::Finite(v),
            None => Radial::Divergent,
        };
    }
    // golden-section refinement around the coarse maximum
    let mut a = points[idx.saturating_sub(1)].0;
    let mut b = points[(idx + 1).min(points.len() - 1)].0;
    let ratio = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    for _ in 0..80 {
        if gc > gd {
            b = d;
            d = c;
            gd = gc;
            c = b - ratio * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + ratio * (b - a);
            gd = g(d);
        }
    }
    let best = gc.max(gd).max(points[idx].1);
    Radial::Finite(match at_origin {
        Some(v) => best.max(v),
        None => best,
    })
}

fn check_exponent(p: f64) -> Result<()> {
    if p >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "Lebesgue exponent p = {p} must be at least 1"
        )))
    }
}

/// L^p norm of a radial function given through ln|f|, p ∈ [1, ∞].
fn radial_norm<F: Fn(f64) -> f64>(
    log_abs: F,
    dim: usize,
    p: f64,
    scale: f64,
    at_origin: Option<f64>,
    margin: f64,
) -> Result<f64> {
    check_exponent(p)?;
    let outcome = if p.is_infinite() {
        log_sup(&log_abs, scale, at_origin)
    } else {
        let n = dim as f64;
        let integrand = |u: f64| p * log_abs(scale * u.exp()) + n * (scale.ln() + u);
        match log_integral_in_u(integrand) {
            Radial::Finite(l) => Radial::Finite((unit_sphere_area(dim).ln() + l) / p),
            Radial::Divergent => Radial::Divergent,
        }
    };
    match outcome {
        Radial::Finite(l) => Ok(l.exp()),
        Radial::Divergent => Err(Error::DivergentNorm { p, margin }),
    }
}

/// ‖𝒢ₙ,ₕ‖_p; p = ∞ is the value at the origin when n > N/2.
pub fn lp_norm(params: &KernelParams, p: f64) -> Result<f64> {
    quantity_lp_norm(params, RadialQuantity::Kernel, p)
}

/// L^p norm of 𝒢, |∇𝒢| or (𝒢ₙ − 𝒢ₙ₋₁)/h.
pub fn quantity_lp_norm(params: &KernelParams, quantity: RadialQuantity, p: f64) -> Result<f64> {
    check_exponent(p)?;
    let margin = integrability_margin(params, quantity, p);
    if margin <= 0.0 {
        warn!(
            "L^{p} norm of {quantity:?} for n = {} expected to diverge (margin {margin})",
            params.n()
        );
    }
    let scale = params.time().sqrt();
    let dim = params.dim();
    match quantity {
        RadialQuantity::Kernel => {
            let at_origin = log_at_origin(params).ok();
            radial_norm(
                |r| log_eval_positive(params, r),
                dim,
                p,
                scale,
                at_origin,
                margin,
            )
        }
        RadialQuantity::Gradient => radial_norm(
            |r| log_gradient_positive(params, r),
            dim,
            p,
            scale,
            None,
            margin,
        ),
        RadialQuantity::TimeDifference => {
            if params.n() < 2 {
                return Err(domain("time_difference", "needs n >= 2"));
            }
            let at_origin = log_time_difference(params, 0.0).ok().map(|v| v.0);
            radial_norm(
                |r| {
                    log_time_difference(params, r)
                        .map(|v| v.0)
                        .unwrap_or(f64::NAN)
                },
                dim,
                p,
                scale,
                at_origin,
                margin,
            )
        }
    }
}

/// ‖𝒢ₙ,ₜ/ₙ − G_t‖₁ in ℝ^N.
pub fn yosida_l1_gap(t: f64, n: usize, dim: usize) -> Result<f64> {
    let params = KernelParams::new(n, t / n as f64, dim)?;
    let log_gap = |r: f64| {
        let (l, _) = super::log_abs_diff(log_eval_positive(&params, r), log_heat_kernel(dim, t, r));
        l
    };
    radial_norm(log_gap, dim, 1.0, t.sqrt(), None, params.n() as f64)
}

/// Kernel values on log-spaced radii.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialProfile {
    pub params: KernelParams,
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
    pub log_values: Vec<f64>,
}

pub fn sample_radial_profile(
    params: &KernelParams,
    r_min: f64,
    r_max: f64,
    count: usize,
) -> Result<RadialProfile> {
    if r_min == 0.0 && !params.bounded_at_origin() {
        return Err(Error::SingularAtOrigin {
            n: params.n(),
            dim: params.dim(),
        });
    }
    if !(r_min > 0.0 && r_max > r_min && r_max.is_finite()) {
        return Err(domain(
            "sample_radial_profile",
            format!("need 0 < r_min < r_max, got [{r_min}, {r_max}]"),
        ));
    }
    if count < 2 {
        return Err(domain("sample_radial_profile", "need at least two radii"));
    }
    let step = (r_max / r_min).ln() / (count - 1) as f64;
    let radii: Vec<f64> = (0..count)
        .map(|i| {
            if i + 1 == count {
                r_max
            } else {
                r_min * (step * i as f64).exp()
            }
        })
        .collect();
    let log_values = radii
        .iter()
        .map(|&r| log_eval(params, r))
        .collect::<Result<Vec<_>>>()?;
    let values = log_values.iter().map(|l| l.exp()).collect();
    Ok(RadialProfile {
        params: *params,
        radii,
        values,
        log_values,
    })
}
