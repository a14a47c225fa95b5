use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Least squares for ln y = slope·ln x + intercept.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    if points.len() < 4 {
        return Err(Error::InvalidParameter(format!(
            "a power-law fit needs at least 4 points, got {}",
            points.len()
        )));
    }
    for (index, &(x, y)) in points.iter().enumerate() {
        if !(x > 0.0) {
            return Err(Error::NonPositive { index, value: x });
        }
        if !(y > 0.0) {
            return Err(Error::NonPositive { index, value: y });
        }
    }
    let n = points.len() as f64;
    let logs: Vec<(f64, f64)> = points.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = logs.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidParameter("all abscissae coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual: f64 = logs
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    // a perfectly flat response is fitted exactly
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        1.0 - residual / syy
    };
    Ok(PowerLawFit {
        slope,
        intercept,
        r_squared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let pts: Vec<(f64, f64)> = (1..=8)
            .map(|i| (i as f64, 3.0 * (i as f64).powi(-2)))
            .collect();
        let fit = fit_power_law(&pts).unwrap();
        assert!((fit.slope + 2.0).abs() < 1e-13);
        assert!((fit.intercept - 3.0_f64.ln()).abs() < 1e-13);
        assert!((fit.r_squared - 1.0).abs() < 1e-13);
    }

    #[test]
    fn constant_has_zero_slope() {
        let pts: Vec<(f64, f64)> = (1..=5).map(|i| (i as f64, 2.5)).collect();
        let fit = fit_power_law(&pts).unwrap();
        assert_eq!(fit.slope, 0.0);
        assert_eq!(fit.r_squared, 1.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(fit_power_law(&[(1.0, 1.0); 3]).is_err());
        let bad = [(1.0, 1.0), (2.0, 0.0), (3.0, 1.0), (4.0, 1.0)];
        assert_eq!(
            fit_power_law(&bad),
            Err(Error::NonPositive {
                index: 1,
                value: 0.0
            })
        );
    }
}
