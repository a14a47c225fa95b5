use serde::{Deserialize, Serialize};

use super::profiles::InitialProfile;
use super::thresholds;
use crate::error::{Error, Result, Warned, Warning};
use crate::grid::Grid;
use crate::kernel::RadialQuantity;

/// Lebesgue exponents in JSON: a number, or "inf" for p = ∞.
pub mod exponent {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &f64, s: S) -> Result<S::Ok, S::Error> {
        if p.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*p)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Number(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Number(p) => Ok(p),
            Raw::Text(t) => match t.trim().to_ascii_lowercase().as_str() {
                "inf" | "infinity" | "∞" => Ok(f64::INFINITY),
                other => other
                    .parse()
                    .map_err(|_| de::Error::custom(format!("invalid exponent {t:?}"))),
            },
        }
    }
}

/// g(jh, x) = scale·(1 + jh)^{−γ}·shape(x), so ‖g(jh)‖_q ≤ C(jh)^{−γ}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForcingSpec {
    pub gamma: f64,
    pub shape: InitialProfile,
    #[serde(default = "one")]
    pub scale: f64,
}

impl ForcingSpec {
    pub fn amplitude(&self, j: usize, h: f64) -> f64 {
        self.scale * (1.0 + j as f64 * h).powf(-self.gamma)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub extent: f64,
    pub points: usize,
}

fn one() -> f64 {
    1.0
}

fn default_h() -> f64 {
    0.25
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub dim: usize,
    #[serde(default = "default_h")]
    pub h: f64,
    #[serde(with = "exponent")]
    pub p: f64,
    #[serde(with = "exponent", default = "one")]
    pub q: f64,
    pub n_values: Vec<usize>,
    pub initial_data: InitialProfile,
    #[serde(default)]
    pub forcing: Option<ForcingSpec>,
    #[serde(default)]
    pub quantity: RadialQuantity,
    #[serde(default)]
    pub grid: Option<GridSpec>,
}

/// Distinct integers approximately geometric between lo and hi inclusive.
pub fn log_spaced(lo: usize, hi: usize, count: usize) -> Vec<usize> {
    if count < 2 || hi <= lo {
        return vec![lo.max(1)];
    }
    let ratio = (hi as f64 / lo as f64).ln() / (count - 1) as f64;
    let mut out: Vec<usize> = (0..count)
        .map(|i| ((lo as f64) * (ratio * i as f64).exp()).round() as usize)
        .collect();
    out.dedup();
    out
}

/// 2^k for k in lo..=hi.
pub fn powers_of_two(lo: u32, hi: u32) -> Vec<usize> {
    (lo..=hi).map(|k| 1usize << k).collect()
}

impl SweepConfig {
    pub fn new(dim: usize, p: f64, n_values: Vec<usize>, initial_data: InitialProfile) -> Self {
        Self {
            dim,
            h: default_h(),
            p,
            q: 1.0,
            n_values,
            initial_data,
            forcing: None,
            quantity: RadialQuantity::Kernel,
            grid: None,
        }
    }

    pub fn with_h(mut self, h: f64) -> Self {
        self.h = h;
        self
    }

    pub fn with_q(mut self, q: f64) -> Self {
        self.q = q;
        self
    }

    pub fn with_forcing(mut self, forcing: ForcingSpec) -> Self {
        self.forcing = Some(forcing);
        self
    }

    pub fn with_quantity(mut self, quantity: RadialQuantity) -> Self {
        self.quantity = quantity;
        self
    }

    pub fn with_grid(mut self, extent: f64, points: usize) -> Self {
        self.grid = Some(GridSpec { extent, points });
        self
    }

    pub fn n_max(&self) -> usize {
        self.n_values.last().copied().unwrap_or(0)
    }

    pub fn n_min(&self) -> usize {
        self.n_values.first().copied().unwrap_or(0)
    }

    /// Structural problems shared by every sweep.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !(1..=3).contains(&self.dim) {
            out.push(format!("dimension must be 1, 2 or 3, got {}", self.dim));
        }
        if !(self.h > 0.0 && self.h.is_finite()) {
            out.push(format!("requires h > 0, got {}", self.h));
        }
        if !(self.q >= 1.0 && self.p >= self.q) {
            out.push(format!(
                "requires 1 ≤ q ≤ p ≤ ∞, got q = {}, p = {}",
                self.q, self.p
            ));
        }
        if self.n_values.is_empty() {
            out.push("n_values is empty".into());
        } else if self.n_values[0] == 0 || self.n_values.windows(2).any(|w| w[1] <= w[0]) {
            out.push("n_values must be strictly ascending positive integers".into());
        }
        if let Err(e) = self.initial_data.validate() {
            out.push(format!("initial_data: {e}"));
        }
        if let Some(g) = &self.forcing {
            if !(g.gamma > 0.0 && g.gamma.is_finite()) {
                out.push(format!("requires forcing gamma > 0, got {}", g.gamma));
            }
            if !g.scale.is_finite() {
                out.push("forcing scale must be finite".into());
            }
            if let Err(e) = g.shape.validate() {
                out.push(format!("forcing shape: {e}"));
            }
        }
        if let Some(g) = &self.grid {
            if let Some(v) = self.extent_violation(g.extent) {
                out.push(v);
            }
            if let Err(e) = Grid::new(self.dim.clamp(1, 3), g.extent, g.points) {
                out.push(e.to_string());
            }
        }
        out
    }

    fn support_radius(&self) -> f64 {
        let forcing = self
            .forcing
            .as_ref()
            .map_or(0.0, |g| g.shape.support_radius());
        self.initial_data.support_radius().max(forcing)
    }

    /// Smallest box side for which the solution at n_max has negligible
    /// mass outside: 12√(n_max h) plus the data's support radius.
    pub fn required_extent(&self) -> f64 {
        12.0 * (self.n_max() as f64 * self.h).sqrt() + self.support_radius()
    }

    fn extent_violation(&self, extent: f64) -> Option<String> {
        let need = self.required_extent();
        (extent < need).then(|| {
            format!(
                "grid extent {extent} is below 12·sqrt(n_max·h) + support radius = {need:.6}; the periodic box would alias the solution"
            )
        })
    }

    /// The explicit grid if given, otherwise the smallest power-of-two grid
    /// that meets the extent rule and resolves both the data and the
    /// earliest kernel.
    pub fn resolve_grid(&self) -> Result<Warned<Grid>> {
        if let Some(g) = &self.grid {
            if let Some(v) = self.extent_violation(g.extent) {
                return Err(Error::Precondition(v));
            }
            return Ok(Warned::clean(Grid::new(self.dim, g.extent, g.points)?));
        }
        let extent = self.required_extent();
        let feature = self.initial_data.feature_length().min(
            self.forcing
                .as_ref()
                .map_or(f64::INFINITY, |g| g.shape.feature_length()),
        );
        let n_min = self.n_min().max(1) as f64;
        // (1 + h (pi/dx)^2)^(-n_min) <= NYQUIST_SYMBOL
        let nyquist = std::f64::consts::PI * self.h.sqrt()
            / (thresholds::NYQUIST_SYMBOL.powf(-1.0 / n_min) - 1.0).sqrt();
        let target = (feature.min((n_min * self.h).sqrt()) / thresholds::POINTS_PER_FEATURE)
            .min(nyquist)
            .min(extent / 8.0);
        let cap = thresholds::max_points(self.dim);
        let wanted = (extent / target).ceil() as usize;
        let points = wanted.next_power_of_two().clamp(8, cap);
        let grid = Grid::new(self.dim, extent, points)?;
        let mut warned = Warned::clean(grid);
        if grid.spacing() > target * (1.0 + 1e-12) {
            warned.warnings.push(Warning::GridResolution {
                spacing: grid.spacing(),
                target,
            });
        }
        Ok(warned)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config() -> SweepConfig {
        SweepConfig::new(
            1,
            2.0,
            vec![16, 64, 256],
            InitialProfile::Gaussian {
                width: 1.0,
                mass: 1.0,
            },
        )
    }

    #[test]
    fn exponent_round_trip_accepts_infinity() {
        let json = r#"{"dim":1,"p":"inf","n_values":[4,8,16,32],
            "initial_data":{"profile":"gaussian","width":1.0,"mass":1.0}}"#;
        let c: SweepConfig = serde_json::from_str(json).unwrap();
        assert!(c.p.is_infinite());
        assert_eq!(c.q, 1.0);
        assert_eq!(c.h, 0.25);
        assert!(serde_json::to_string(&c).unwrap().contains(r#""p":"inf""#));
    }

    #[test]
    fn automatic_grid_meets_the_extent_rule() {
        let c = config();
        let g = c.resolve_grid().unwrap();
        assert!(g.is_clean());
        assert!(g.value.extent() >= 12.0 * 8.0);
        assert!(g.value.spacing() <= 0.4);
    }

    #[test]
    fn explicit_small_box_is_refused() {
        let c = config().with_grid(50.0, 256);
        assert!(matches!(c.resolve_grid(), Err(Error::Precondition(_))));
        assert_eq!(c.violations().len(), 1);
    }

    #[test]
    fn structural_violations() {
        let mut c = config().with_q(3.0);
        c.n_values = vec![4, 4];
        let v = c.violations();
        assert!(v.iter().any(|s| s.contains("q ≤ p")));
        assert!(v.iter().any(|s| s.contains("ascending")));
    }

    #[test]
    fn log_spacing() {
        assert_eq!(
            log_spaced(16, 4096, 9),
            vec![16, 32, 64, 128, 256, 512, 1024, 2048, 4096]
        );
        assert_eq!(powers_of_two(0, 3), vec![1, 2, 4, 8]);
    }
}
