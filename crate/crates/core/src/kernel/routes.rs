//! Independent route: 𝒢ₙ,ₕ = (1/Γ(n)) ∫₀^∞ s^{n−1} e^{−s} G_{hs} ds, the
//! Gaussian-mixture representation, discretized directly.

use std::f64::consts::PI;

use log::warn;

use super::KernelParams;
use crate::error::{domain, Result, Warned, Warning};
use crate::quadrature::gauss_laguerre;
use crate::special::log_gamma_unchecked;

/// Below this n the Laguerre weight s^{n−1} is too weak to absorb the
/// e^{−r²/4hs} factor's behaviour near s = 0 and 96-node rules lose
/// several digits; the log-variable trapezoid is used instead.
pub const LAGUERRE_MIN_N: usize = 8;

const DEFAULT_NODES: usize = 96;
const MIN_NODES: usize = 8;
// Integrand cut-off relative to its peak, in log units (e^{-40} ≈ 4e-18).
const WINDOW_DEPTH: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadratureRule {
    /// Generalized Gauss–Laguerre with weight s^α e^{−s}, α = n − 1.
    GaussLaguerre,
    /// Trapezoid rule in u = ln s over the window where the integrand
    /// exceeds e^{−40} of its peak.
    LogTrapezoid,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    nodes: usize,
    alpha: f64,
    rule: QuadratureRule,
}

impl QuadratureSpec {
    pub fn gauss_laguerre(nodes: usize, alpha: f64) -> Result<Self> {
        if nodes < MIN_NODES {
            return Err(domain(
                "QuadratureSpec",
                format!("{nodes} nodes; at least {MIN_NODES} required"),
            ));
        }
        if !(alpha > -1.0) {
            return Err(domain(
                "QuadratureSpec",
                format!("alpha = {alpha} must exceed -1"),
            ));
        }
        Ok(Self {
            nodes,
            alpha,
            rule: QuadratureRule::GaussLaguerre,
        })
    }

    /// Trapezoid in ln s; `alpha` is recorded for bookkeeping only.
    pub fn log_trapezoid(nodes: usize, alpha: f64) -> Result<Self> {
        let mut spec = Self::gauss_laguerre(nodes, alpha)?;
        spec.rule = QuadratureRule::LogTrapezoid;
        Ok(spec)
    }

    /// 96 nodes; Gauss–Laguerre for n ≥ [`LAGUERRE_MIN_N`], trapezoid below.
    pub fn recommended(params: &KernelParams) -> Self {
        let alpha = params.n() as f64 - 1.0;
        let rule = if params.n() >= LAGUERRE_MIN_N {
            QuadratureRule::GaussLaguerre
        } else {
            QuadratureRule::LogTrapezoid
        };
        Self {
            nodes: DEFAULT_NODES,
            alpha,
            rule,
        }
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn rule(&self) -> QuadratureRule {
        self.rule
    }
}

fn log_sum_exp(terms: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = terms.clone().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + terms.map(|t| (t - max).exp()).sum::<f64>().ln()
}

fn laguerre_log(params: &KernelParams, r: f64, nodes: usize) -> Result<f64> {
    let rule = gauss_laguerre(nodes, params.n() as f64 - 1.0)?;
    let half_dim = 0.5 * params.dim() as f64;
    let h = params.h();
    let terms = rule.nodes.iter().zip(&rule.weights).map(|(&s, &w)| {
        let t = h * s;
        w.ln() - half_dim * (4.0 * PI * t).ln() - r * r / (4.0 * t)
    });
    Ok(log_sum_exp(terms))
}

/// After s = e^u the integrand is exp(νu − e^u − a e^{−u}) with a = r²/4h.
fn trapezoid_log(params: &KernelParams, r: f64, nodes: usize) -> f64 {
    let nu = params.order();
    let a = r * r / (4.0 * params.h());
    let phi = |u: f64| nu * u - u.exp() - a * (-u).exp();
    let root = (nu * nu + 4.0 * a).sqrt();
    let s_peak = if nu >= 0.0 {
        0.5 * (nu + root)
    } else {
        2.0 * a / (root - nu)
    };
    let u_peak = s_peak.ln();
    let peak = phi(u_peak);
    let width = 1.0 / (s_peak + a / s_peak).sqrt();
    let (mut lo, mut hi) = (u_peak, u_peak);
    while phi(lo) - peak > -WINDOW_DEPTH {
        lo -= width;
    }
    while phi(hi) - peak > -WINDOW_DEPTH {
        hi += width;
    }
    let du = (hi - lo) / (nodes - 1) as f64;
    let sum: f64 = (0..nodes)
        .map(|i| (phi(lo + i as f64 * du) - peak).exp())
        .sum();
    sum.ln() + du.ln() + peak
        - log_gamma_unchecked(params.n() as f64)
        - 0.5 * params.dim() as f64 * (4.0 * PI * params.h()).ln()
}

/// 𝒢ₙ,ₕ(r) from the integral representation. A warning is attached when a
/// Gauss–Laguerre rule is forced into the small-n regime where it degrades.
pub fn eval_quadrature(
    params: &KernelParams,
    r: f64,
    spec: &QuadratureSpec,
) -> Result<Warned<f64>> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(domain(
            "eval_quadrature",
            format!("radius {r} must be finite and non-negative"),
        ));
    }
    if r == 0.0 && !params.bounded_at_origin() {
        return Err(domain("eval_quadrature", "r = 0 requires n > N/2"));
    }
    let expected_alpha = params.n() as f64 - 1.0;
    if spec.alpha != expected_alpha {
        return Err(domain(
            "eval_quadrature",
            format!(
                "spec alpha {} differs from n - 1 = {expected_alpha}",
                spec.alpha
            ),
        ));
    }
    let mut warnings = Vec::new();
    let log_value = match spec.rule {
        QuadratureRule::GaussLaguerre => {
            if params.n() < LAGUERRE_MIN_N {
                let detail = format!(
                    "Gauss-Laguerre with n = {} < {LAGUERRE_MIN_N} loses accuracy; prefer the log trapezoid",
                    params.n()
                );
                warn!("{detail}");
                warnings.push(Warning::QuadratureDegradation { detail });
            }
            laguerre_log(params, r, spec.nodes)?
        }
        QuadratureRule::LogTrapezoid => trapezoid_log(params, r, spec.nodes),
    };
    Ok(Warned {
        value: log_value.exp(),
        warnings,
    })
}
