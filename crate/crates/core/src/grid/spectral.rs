//! Multidimensional complex FFTs on a [`Grid`], axis by axis.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::Grid;

pub struct Spectral {
    grid: Grid,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    xi_squared: Vec<f64>,
}

impl Spectral {
    pub fn new(grid: &Grid) -> Self {
        let mut planner = FftPlanner::new();
        let m = grid.points();
        let wavenumber = |i: usize| {
            let k = if i < m / 2 {
                i as f64
            } else {
                i as f64 - m as f64
            };
            2.0 * std::f64::consts::PI * k / grid.extent()
        };
        let xi_squared = (0..grid.len())
            .map(|flat| {
                let mut rest = flat;
                let mut sum = 0.0;
                for _ in 0..grid.dim() {
                    let xi = wavenumber(rest % m);
                    sum += xi * xi;
                    rest /= m;
                }
                sum
            })
            .collect();
        Self {
            grid: *grid,
            forward: planner.plan_fft_forward(m),
            inverse: planner.plan_fft_inverse(m),
            xi_squared,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// |ξ_k|² for every mode, in the same flat order as the field.
    pub fn xi_squared(&self) -> &[f64] {
        &self.xi_squared
    }

    /// Components of ξ for a mode, fastest-varying axis first; unused
    /// trailing components are zero.
    pub fn wavevector(&self, flat: usize) -> [f64; 3] {
        let m = self.grid.points();
        let mut rest = flat;
        let mut out = [0.0; 3];
        for slot in out.iter_mut().take(self.grid.dim()) {
            let i = rest % m;
            let k = if i < m / 2 {
                i as f64
            } else {
                i as f64 - m as f64
            };
            *slot = 2.0 * std::f64::consts::PI * k / self.grid.extent();
            rest /= m;
        }
        out
    }

    fn transform(&self, data: &mut [Complex64], fft: &dyn Fft<f64>) {
        let m = self.grid.points();
        let dim = self.grid.dim();
        let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
        let mut line = vec![Complex64::default(); m];
        for axis in 0..dim {
            let stride = m.pow((dim - 1 - axis) as u32);
            if stride == 1 {
                for chunk in data.chunks_exact_mut(m) {
                    fft.process_with_scratch(chunk, &mut scratch);
                }
                continue;
            }
            let block = stride * m;
            for base in (0..data.len()).step_by(block) {
                for offset in 0..stride {
                    for (k, slot) in line.iter_mut().enumerate() {
                        *slot = data[base + offset + k * stride];
                    }
                    fft.process_with_scratch(&mut line, &mut scratch);
                    for (k, value) in line.iter().enumerate() {
                        data[base + offset + k * stride] = *value;
                    }
                }
            }
        }
    }

    pub fn forward(&self, values: &[f64]) -> Vec<Complex64> {
        let mut data: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.transform(&mut data, self.forward.as_ref());
        data
    }

    /// Inverse transform, normalized, real part.
    pub fn inverse(&self, mut spectrum: Vec<Complex64>) -> Vec<f64> {
        self.transform(&mut spectrum, self.inverse.as_ref());
        let scale = 1.0 / spectrum.len() as f64;
        spectrum.into_iter().map(|c| c.re * scale).collect()
    }
}
