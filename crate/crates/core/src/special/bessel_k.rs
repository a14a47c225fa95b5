//! Modified Bessel functions of the second kind (MacDonald functions).
//!
//! Evaluation paths, all working on ln K so that nothing overflows:
//!
//! * half-integer orders up to [`LARGE_ORDER`]: the terminating closed form
//!   K_{k+1/2}(z) = √(π/2z) e^{−z} Σ_j (k+j)! / (j! (k−j)!) (2z)^{−j};
//! * other orders up to [`LARGE_ORDER`]: K_μ and K_{μ+1} with |μ| ≤ 1/2 from
//!   Temme's series (z ≤ [`SERIES_MAX_Z`]) or Steed's continued fraction,
//!   then the upward recurrence K_{ν+1} = K_{ν−1} + (2ν/z) K_ν, which is
//!   stable for K;
//! * orders above [`LARGE_ORDER`]: Debye's uniform expansion.

use std::f64::consts::{LN_10, PI};

use super::gamma::log_gamma_unchecked;
use super::BesselOrder;
use crate::error::{domain, Error, Result};

/// Orders strictly above this use the uniform large-order expansion.
pub const LARGE_ORDER: f64 = 150.0;

/// Temme's series for z at or below this, Steed's continued fraction above.
pub const SERIES_MAX_Z: f64 = 2.0;

const EPS: f64 = 1e-17;
const MAX_ITER: usize = 100_000;
const RESCALE: f64 = 1e250;
const LN_RESCALE: f64 = 250.0 * LN_10;

/// Taylor coefficients of 1/Γ(1 + x) about x = 0.
const RGAMMA_TAYLOR: [f64; 27] = [
    1.0,
    5.772_156_649_015_329e-1,
    -6.558_780_715_202_539e-1,
    -4.200_263_503_409_524e-2,
    1.665_386_113_822_914_8e-1,
    -4.219_773_455_554_433e-2,
    -9.621_971_527_876_973e-3,
    7.218_943_246_663_1e-3,
    -1.165_167_591_859_065_2e-3,
    -2.152_416_741_149_509_7e-4,
    1.280_502_823_881_162e-4,
    -2.013_485_478_078_824e-5,
    -1.250_493_482_142_670_6e-6,
    1.133_027_231_981_696e-6,
    -2.056_338_416_977_607e-7,
    6.116_095_104_481_416e-9,
    5.002_007_644_469_223e-9,
    -1.181_274_570_487_02e-9,
    1.043_426_711_691_100_5e-10,
    7.782_263_439_905_071e-12,
    -3.696_805_618_642_206e-12,
    5.100_370_287_454_476e-13,
    -2.058_326_053_566_506_6e-14,
    -5.348_122_539_423_018e-15,
    1.226_778_628_238_260_8e-15,
    -1.181_259_301_697_458_8e-16,
    1.186_692_254_751_600_4e-18,
];

pub fn bessel_k(nu: f64, z: f64) -> Result<f64> {
    let value = log_bessel_k(nu, z)?;
    if value > f64::MAX.ln() {
        return Err(Error::Overflow {
            function: "bessel_k",
            z,
        });
    }
    Ok(value.exp())
}

/// e^z K_ν(z).
pub fn bessel_k_scaled(nu: f64, z: f64) -> Result<f64> {
    let value = log_bessel_k(nu, z)? + z;
    if value > f64::MAX.ln() {
        return Err(Error::Overflow {
            function: "bessel_k_scaled",
            z,
        });
    }
    Ok(value.exp())
}

/// ln K_ν(z). K_ν = K_{−ν}, so only |ν| is ever evaluated.
pub fn log_bessel_k(nu: f64, z: f64) -> Result<f64> {
    let order = BesselOrder::new(nu)?;
    if !(z > 0.0) || !z.is_finite() {
        return Err(domain(
            "bessel_k",
            format!("z = {z} must be positive and finite"),
        ));
    }
    Ok(log_k_unchecked(order.value().abs(), z))
}

/// ln K_ν(z) for ν ≥ 0, z > 0 finite.
pub(crate) fn log_k_unchecked(nu: f64, z: f64) -> f64 {
    if nu > LARGE_ORDER {
        log_k_debye(nu, z)
    } else if (nu - 0.5).fract() == 0.0 {
        log_k_half_integer(nu, z)
    } else {
        log_k_recurrence(nu, z)
    }
}

/// Closed form for ν = k + 1/2. All terms are positive. For 2z ≥ 1 they are
/// summed upward with periodic rescaling; below that the leading power
/// (2z)^{−k} is factored out and the sum runs downward from the top term.
pub fn log_k_half_integer(nu: f64, z: f64) -> f64 {
    let k = (nu - 0.5).round() as u64;
    let kf = k as f64;
    let two_z = 2.0 * z;
    let prefactor = 0.5 * (PI / two_z).ln() - z;
    if two_z < 1.0 {
        let mut term = 1.0_f64;
        let mut sum = 1.0_f64;
        for j in (1..=k).rev() {
            let jf = j as f64;
            term *= jf * two_z / ((kf + jf) * (kf - jf + 1.0));
            sum += term;
        }
        let log_top =
            log_gamma_unchecked(2.0 * kf + 1.0) - log_gamma_unchecked(kf + 1.0) - kf * two_z.ln();
        return prefactor + log_top + sum.ln();
    }
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut log_scale = 0.0;
    for j in 1..=k {
        let jf = j as f64;
        term *= (kf + jf) * (kf - jf + 1.0) / (jf * two_z);
        sum += term;
        if sum > RESCALE {
            sum /= RESCALE;
            term /= RESCALE;
            log_scale += LN_RESCALE;
        }
    }
    prefactor + sum.ln() + log_scale
}

/// Upward recurrence from (K_μ, K_{μ+1}), |μ| ≤ 1/2. The ratios
/// K_{j+1}/K_j are carried instead of the values, so nothing overflows even
/// when K_ν itself is far outside the `f64` range.
pub fn log_k_recurrence(nu: f64, z: f64) -> f64 {
    let steps = nu.round();
    let mu = nu - steps;
    let (log_k0, log_k1) = if z <= SERIES_MAX_Z {
        log_k_temme_pair(mu, z)
    } else {
        log_k_steed_pair(mu, z)
    };
    if steps == 0.0 {
        return log_k0;
    }
    let mut log_k = log_k1;
    let mut ratio = (log_k1 - log_k0).exp();
    let mut order = mu + 1.0;
    for _ in 1..steps as u64 {
        ratio = 1.0 / ratio + 2.0 * order / z;
        log_k += ratio.ln();
        order += 1.0;
    }
    log_k
}

/// 1/Γ(1+μ), 1/Γ(1−μ) and Temme's auxiliary γ₁, γ₂ for |μ| ≤ 1/2.
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    let mut even = 0.0;
    let mut odd_over_mu = 0.0;
    let mu2 = mu * mu;
    for (j, &c) in RGAMMA_TAYLOR.iter().enumerate().rev() {
        if j % 2 == 0 {
            even = even * mu2 + c;
        } else {
            odd_over_mu = odd_over_mu * mu2 + c;
        }
    }
    let odd = odd_over_mu * mu;
    let inv_gamma_plus = even + odd;
    let inv_gamma_minus = even - odd;
    // γ₁ = (1/Γ(1−μ) − 1/Γ(1+μ)) / (2μ) = −(odd part)/μ, γ₂ = even part
    (inv_gamma_plus, inv_gamma_minus, -odd_over_mu, even)
}

/// (ln K_μ(z), ln K_{μ+1}(z)) by Temme's series, for |μ| ≤ 1/2, small z.
pub fn log_k_temme_pair(mu: f64, z: f64) -> (f64, f64) {
    let half_z = 0.5 * z;
    let pimu = PI * mu;
    let fact = if pimu.abs() < 1e-15 {
        1.0
    } else {
        pimu / pimu.sin()
    };
    let d = -half_z.ln();
    let e = mu * d;
    let fact2 = if e.abs() < 1e-15 { 1.0 } else { e.sinh() / e };
    let (gampl, gammi, gam1, gam2) = temme_gammas(mu);
    let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
    let mut sum = ff;
    let ee = e.exp();
    let mut p = 0.5 * ee / gampl;
    let mut q = 0.5 / (ee * gammi);
    let mut c = 1.0;
    let dd = half_z * half_z;
    let mut sum1 = p;
    let mu2 = mu * mu;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - mu2);
        c *= dd / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = c * ff;
        sum += del;
        sum1 += c * (p - fi * ff);
        if del.abs() < sum.abs() * EPS {
            break;
        }
    }
    (sum.ln(), sum1.ln() + (2.0 / z).ln())
}

/// (ln K_μ(z), ln K_{μ+1}(z)) by Steed's continued fraction, |μ| ≤ 1/2, z ≳ 2.
pub fn log_k_steed_pair(mu: f64, z: f64) -> (f64, f64) {
    let mut b = 2.0 * (1.0 + z);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - mu * mu;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
    }
    h *= a1;
    let log_k_mu = 0.5 * (PI / (2.0 * z)).ln() - z - s.ln();
    let log_k_mu1 = log_k_mu + ((mu + z + 0.5 - h) / z).ln();
    (log_k_mu, log_k_mu1)
}

/// Debye's uniform asymptotic expansion in the order, four correction terms.
pub fn log_k_debye(nu: f64, z: f64) -> f64 {
    let t = z / nu;
    let s = t.hypot(1.0);
    let p = 1.0 / s;
    let eta = s + (t / (1.0 + s)).ln();
    let p2 = p * p;
    let u1 = p * (3.0 - 5.0 * p2) / 24.0;
    let u2 = p2 * (81.0 + p2 * (-462.0 + p2 * 385.0)) / 1152.0;
    let u3 = p * p2 * (30375.0 + p2 * (-369_603.0 + p2 * (765_765.0 - p2 * 425_425.0))) / 414_720.0;
    let u4 = p2
        * p2
        * (4_465_125.0
            + p2 * (-94_121_676.0
                + p2 * (349_922_430.0 + p2 * (-446_185_740.0 + p2 * 185_910_725.0))))
        / 39_813_120.0;
    let inv = 1.0 / nu;
    let series = 1.0 + inv * (-u1 + inv * (u2 + inv * (-u3 + inv * u4)));
    0.5 * (PI / (2.0 * nu)).ln() - nu * eta - 0.5 * s.ln() + series.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn half_order_closed_form_at_one() {
        // √(π/2)·e^{−1}
        let expected = (PI / 2.0).sqrt() * (-1.0_f64).exp();
        assert!(rel(bessel_k(0.5, 1.0).unwrap(), expected) < 1e-15);
        assert!(rel(bessel_k(0.5, 1.0).unwrap(), 0.461_068_504_447_894_4) < 1e-12);
    }

    #[test]
    fn three_halves_is_twice_half_at_one() {
        let k12 = bessel_k(0.5, 1.0).unwrap();
        assert!(rel(bessel_k(1.5, 1.0).unwrap(), 2.0 * k12) < 1e-14);
        assert!(rel(bessel_k(1.5, 1.0).unwrap(), 0.922_137_008_895_788_8) < 1e-12);
    }

    #[test]
    fn negative_order_is_bitwise_symmetric() {
        for &(nu, z) in &[(3.0, 2.0), (0.7, 0.3), (151.5, 40.0), (2.5, 1e-3)] {
            assert_eq!(
                bessel_k(-nu, z).unwrap().to_bits(),
                bessel_k(nu, z).unwrap().to_bits()
            );
        }
    }

    #[test]
    fn scaled_values() {
        // e·K₀(1) = 1.1444630798068949 (50-digit reference)
        assert!(rel(bessel_k_scaled(0.0, 1.0).unwrap(), 1.144_463_079_806_894_9) < 1e-13);
        assert!(rel(bessel_k_scaled(0.5, 100.0).unwrap(), (PI / 200.0).sqrt()) < 1e-14);
    }

    #[test]
    fn log_variants() {
        assert!((log_bessel_k(0.5, 1.0).unwrap() - 0.461_068_504_447_894_4_f64.ln()).abs() < 1e-13);
        let expected = 0.5 * (PI / 1000.0).ln() - 500.0;
        assert!((log_bessel_k(0.5, 500.0).unwrap() - expected).abs() < 1e-12);
        assert!((expected - (-502.881)).abs() < 1e-3);
        let direct = bessel_k(0.0, 2.0).unwrap();
        assert!(rel(log_bessel_k(0.0, 2.0).unwrap().exp(), direct) < 1e-9);
    }

    #[test]
    fn domain_and_overflow_errors() {
        assert!(matches!(bessel_k(1.0, 0.0), Err(Error::Domain { .. })));
        assert!(matches!(bessel_k(1.0, -2.0), Err(Error::Domain { .. })));
        assert!(matches!(bessel_k(f64::NAN, 2.0), Err(Error::Domain { .. })));
        assert!(matches!(bessel_k(200.0, 1e-3), Err(Error::Overflow { .. })));
        assert!(log_bessel_k(200.0, 1e-3).unwrap().is_finite());
        // silent underflow
        assert_eq!(bessel_k(0.0, 1000.0).unwrap(), 0.0);
    }

    #[test]
    fn temme_and_steed_agree_at_the_seam() {
        for &mu in &[-0.5, -0.3, 0.0, 0.2, 0.4999, 0.5] {
            for &z in &[1.5, 2.0, 2.5] {
                let (a0, a1) = log_k_temme_pair(mu, z);
                let (b0, b1) = log_k_steed_pair(mu, z);
                assert!((a0 - b0).abs() < 1e-13, "mu={mu} z={z}: {a0} vs {b0}");
                assert!((a1 - b1).abs() < 1e-13, "mu={mu} z={z}: {a1} vs {b1}");
            }
        }
    }

    #[test]
    fn half_integer_closed_form_matches_recurrence() {
        for &nu in &[0.5, 1.5, 7.5, 40.5, 149.5] {
            for &z in &[1e-3, 0.7, 2.0, 30.0, 400.0] {
                let a = log_k_half_integer(nu, z);
                let b = log_k_recurrence(nu, z);
                assert!(
                    (a - b).abs() < 1e-9 * a.abs().max(1.0),
                    "nu={nu} z={z}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn debye_agrees_with_exact_paths_at_the_switchover() {
        for &nu in &[LARGE_ORDER, LARGE_ORDER + 0.5, LARGE_ORDER - 0.5] {
            for &z in &[1e-4, 0.5, 10.0, 150.0, 600.0] {
                let exact = if (nu - 0.5).fract() == 0.0 {
                    log_k_half_integer(nu, z)
                } else {
                    log_k_recurrence(nu, z)
                };
                let asym = log_k_debye(nu, z);
                // compare K itself: |Δ ln K| is its relative error
                assert!(
                    (exact - asym).abs() < 1e-9,
                    "nu={nu} z={z}: {exact} vs {asym}"
                );
            }
        }
    }
}
