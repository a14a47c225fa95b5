//! Logarithm of the Gamma function and Gamma ratios.
//!
//! Three regimes: a Taylor expansion of ln Γ about 2 (where ln Γ has zeros
//! at 1 and 2, so relative accuracy needs care), the Stirling series with
//! Bernoulli corrections for z >= `STIRLING_MIN`, and upward shifting from
//! the interval [3, STIRLING_MIN) into the Stirling range.

use crate::error::{domain, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Below this the Stirling series is reached by upward shifting.
pub const STIRLING_MIN: f64 = 12.0;

/// B_{2k} / (2k (2k - 1)) for k = 1..8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// ζ(k) − 1 for k = 2..31.
const ZETA_MINUS_ONE: [f64; 30] = [
    6.449_340_668_482_264e-1,
    2.020_569_031_595_943e-1,
    8.232_323_371_113_819e-2,
    3.692_775_514_336_993e-2,
    1.734_306_198_444_914e-2,
    8.349_277_381_922_827e-3,
    4.077_356_197_944_34e-3,
    2.008_392_826_082_214_3e-3,
    9.945_751_278_180_853e-4,
    4.941_886_041_194_645e-4,
    2.460_865_533_080_483e-4,
    1.227_133_475_784_891_5e-4,
    6.124_813_505_870_483e-5,
    3.058_823_630_702_049e-5,
    1.528_225_940_865_187e-5,
    7.637_197_637_899_763e-6,
    3.817_293_264_999_84e-6,
    1.908_212_716_553_939e-6,
    9.539_620_338_727_962e-7,
    4.769_329_867_878_064e-7,
    2.384_505_027_277_33e-7,
    1.192_199_259_653_110_6e-7,
    5.960_818_905_125_948e-8,
    2.980_350_351_465_228e-8,
    1.490_155_482_836_504_3e-8,
    7.450_711_789_835_43e-9,
    3.725_334_024_788_457e-9,
    1.862_659_723_513_049e-9,
    9.313_274_324_196_682e-10,
    4.656_629_065_033_784e-10,
];

/// Stirling correction Σ B_{2k} / (2k(2k−1) z^{2k−1}).
fn stirling_tail(z: f64) -> f64 {
    let inv = z.recip();
    let inv2 = inv * inv;
    let poly = STIRLING.iter().rev().fold(0.0, |acc, &c| acc * inv2 + c);
    poly * inv
}

fn stirling(z: f64) -> f64 {
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + stirling_tail(z)
}

/// ln Γ(2 + x) for |x| <= 1/2.
fn log_gamma_near_two(x: f64) -> f64 {
    // ln Γ(2+x) = (1 − γ) x + Σ_{k≥2} (−1)^k (ζ(k) − 1) x^k / k
    let mut sum = 0.0;
    let mut power = x * x;
    for (i, &c) in ZETA_MINUS_ONE.iter().enumerate() {
        let k = (i + 2) as f64;
        let term = c * power / k;
        sum += if i % 2 == 0 { term } else { -term };
        power *= x;
    }
    (1.0 - EULER_GAMMA) * x + sum
}

/// Natural logarithm of Γ(z) for z > 0.
pub fn log_gamma(z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(domain(
            "log_gamma",
            format!("z = {z} must be positive and finite"),
        ));
    }
    Ok(log_gamma_unchecked(z))
}

pub(crate) fn log_gamma_unchecked(z: f64) -> f64 {
    if z >= STIRLING_MIN {
        return stirling(z);
    }
    if z < 0.5 {
        // Γ(z) = Γ(2 + z) / (z (1 + z))
        return log_gamma_near_two(z) - z.ln_1p() - z.ln();
    }
    if z < 1.5 {
        return log_gamma_near_two(z - 1.0) - (z - 1.0).ln_1p();
    }
    if z <= 2.5 {
        return log_gamma_near_two(z - 2.0);
    }
    // 2.5 < z < STIRLING_MIN: shift up into the Stirling range.
    let shift = (STIRLING_MIN - z).ceil() as usize;
    let mut product = 1.0;
    for i in 0..shift {
        product *= z + i as f64;
    }
    stirling(z + shift as f64) - product.ln()
}

/// Γ(z + α) / Γ(z).
pub fn gamma_ratio(z: f64, alpha: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(domain("gamma_ratio", format!("z = {z} must be positive")));
    }
    if !(z + alpha > 0.0) || !alpha.is_finite() {
        return Err(domain(
            "gamma_ratio",
            format!("z + alpha = {} must be positive", z + alpha),
        ));
    }
    Ok(log_gamma_ratio_unchecked(z, alpha).exp())
}

/// ln Γ(z + α) − ln Γ(z) without the cancellation of two large logarithms
/// when both arguments are in the Stirling range.
pub(crate) fn log_gamma_ratio_unchecked(z: f64, alpha: f64) -> f64 {
    let w = z + alpha;
    if z >= STIRLING_MIN && w >= STIRLING_MIN {
        // (w − ½) ln w − (z − ½) ln z − α = (z − ½) ln(1 + α/z) + α ln w − α
        (z - 0.5) * (alpha / z).ln_1p() + alpha * w.ln() - alpha + stirling_tail(w)
            - stirling_tail(z)
    } else {
        log_gamma_unchecked(w) - log_gamma_unchecked(z)
    }
}
