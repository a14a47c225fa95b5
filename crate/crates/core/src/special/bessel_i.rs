//! Modified Bessel functions of the first kind, order ν ≥ 0.
//!
//! The ascending series is summed in scaled form (the leading factor
//! (z/2)^ν / Γ(ν+1) is kept in log space). For large z the Hankel expansion
//! of e^{−z} I_ν(z) is tried first and used only if its terms reach the
//! requested tolerance before they start growing; otherwise the series runs.

use std::f64::consts::{LN_10, PI};

use super::gamma::log_gamma_unchecked;
use crate::error::{domain, Error, Result};

/// Beyond this e^z no longer fits in an `f64`; only the scaled variant and
/// the log variant are defined past it.
pub const MAX_UNSCALED_Z: f64 = 700.0;

const RESCALE: f64 = 1e250;
const LN_RESCALE: f64 = 250.0 * LN_10;

/// Termination controls for series evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPrecision {
    rel_tol: f64,
    max_terms: usize,
}

impl EvalPrecision {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(domain(
                "EvalPrecision",
                format!("rel_tol = {rel_tol} outside (0, 1)"),
            ));
        }
        if max_terms == 0 {
            return Err(domain("EvalPrecision", "max_terms must be positive"));
        }
        Ok(Self { rel_tol, max_terms })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for EvalPrecision {
    fn default() -> Self {
        Self {
            rel_tol: f64::EPSILON / 2.0,
            max_terms: 100_000,
        }
    }
}

pub fn bessel_i(nu: f64, z: f64) -> Result<f64> {
    bessel_i_with(nu, z, EvalPrecision::default())
}

pub fn bessel_i_with(nu: f64, z: f64, precision: EvalPrecision) -> Result<f64> {
    if z > MAX_UNSCALED_Z {
        return Err(Error::Overflow {
            function: "bessel_i",
            z,
        });
    }
    let value = log_bessel_i(nu, z, precision)?;
    Ok(value.exp())
}

/// e^{−z} I_ν(z).
pub fn bessel_i_scaled(nu: f64, z: f64) -> Result<f64> {
    Ok((log_bessel_i(nu, z, EvalPrecision::default())? - z).exp())
}

/// ln I_ν(z); −∞ at z = 0 for ν > 0.
pub fn log_bessel_i(nu: f64, z: f64, precision: EvalPrecision) -> Result<f64> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(domain(
            "bessel_i",
            format!("order {nu} must be finite and non-negative"),
        ));
    }
    if !(z >= 0.0) || !z.is_finite() {
        return Err(domain(
            "bessel_i",
            format!("z = {z} must be finite and non-negative"),
        ));
    }
    if z == 0.0 {
        return Ok(if nu == 0.0 { 0.0 } else { f64::NEG_INFINITY });
    }
    // the expansion drops a companion term of relative size e^{−2z}
    if z > 2.0 * (nu + 1.0) && -2.0 * z < precision.rel_tol.ln() {
        if let Some(scaled) = hankel_scaled(nu, z, precision) {
            return Ok(scaled.ln() + z);
        }
    }
    ascending_series(nu, z, precision)
}

fn ascending_series(nu: f64, z: f64, precision: EvalPrecision) -> Result<f64> {
    let quarter_z2 = 0.25 * z * z;
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut log_scale = 0.0;
    let mut converged = false;
    for k in 1..precision.max_terms {
        let kf = k as f64;
        term *= quarter_z2 / (kf * (kf + nu));
        sum += term;
        if sum > RESCALE {
            sum /= RESCALE;
            term /= RESCALE;
            log_scale += LN_RESCALE;
        }
        // past the peak the remainder is bounded by a geometric tail
        let ratio = quarter_z2 / ((kf + 1.0) * (kf + 1.0 + nu));
        if ratio < 0.5 && term < precision.rel_tol * sum {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Precondition(format!(
            "bessel_i series for nu = {nu}, z = {z} did not converge in {} terms",
            precision.max_terms
        )));
    }
    Ok(nu * (0.5 * z).ln() - log_gamma_unchecked(nu + 1.0) + sum.ln() + log_scale)
}

/// e^{−z} I_ν(z) from the large-argument expansion, if it converges.
fn hankel_scaled(nu: f64, z: f64, precision: EvalPrecision) -> Option<f64> {
    let four_nu2 = 4.0 * nu * nu;
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for k in 1..precision.max_terms.min(200) {
        let odd = (2 * k - 1) as f64;
        let next = -term * (four_nu2 - odd * odd) / (8.0 * k as f64 * z);
        if next.abs() > term.abs() {
            return None;
        }
        term = next;
        sum += term;
        if term.abs() < precision.rel_tol * sum.abs() {
            return Some(sum / (2.0 * PI * z).sqrt());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn known_values() {
        assert!(rel(bessel_i(0.0, 1.0).unwrap(), 1.266_065_877_752_008_4) < 1e-14);
        assert_eq!(bessel_i(0.0, 1e-300).unwrap(), 1.0);
        // I_{1/2}(z) = √(2/πz) sinh z
        let z = 3.0_f64;
        assert!(
            rel(
                bessel_i(0.5, z).unwrap(),
                (2.0 / (PI * z)).sqrt() * z.sinh()
            ) < 1e-14
        );
    }

    #[test]
    fn scaled_variant_survives_large_arguments() {
        let v = bessel_i_scaled(0.0, 1e4).unwrap();
        assert!(rel(v, 1.0 / (2.0 * PI * 1e4).sqrt() * (1.0 + 1.0 / 8e4)) < 1e-8);
        assert!(matches!(bessel_i(0.0, 701.0), Err(Error::Overflow { .. })));
        assert!(bessel_i(0.0, 700.0).unwrap().is_finite());
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(bessel_i(-1.0, 1.0), Err(Error::Domain { .. })));
        assert!(matches!(bessel_i(1.0, -1.0), Err(Error::Domain { .. })));
        assert!(EvalPrecision::new(0.0, 10).is_err());
        assert!(EvalPrecision::new(1e-10, 0).is_err());
    }

    #[test]
    fn non_convergence_is_reported() {
        let tight = EvalPrecision::new(1e-16, 5).unwrap();
        assert!(matches!(
            bessel_i_with(3.0, 1.5, tight),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn series_and_hankel_agree_where_both_apply() {
        let p = EvalPrecision::default();
        for &(nu, z) in &[(0.0, 40.0), (1.0, 60.0), (2.5, 90.0), (0.5, 30.0)] {
            let series = ascending_series(nu, z, p).unwrap();
            let hankel = hankel_scaled(nu, z, p).unwrap().ln() + z;
            assert!((series - hankel).abs() < 1e-13, "nu={nu} z={z}");
        }
    }
}
