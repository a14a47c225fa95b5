//! Sweeps that measure decay exponents and large-time limits of the discrete
//! heat flow and compare them with their predicted values.

mod config;
mod fit;
mod profiles;
mod report;
mod sweeps;

pub use config::{exponent, log_spaced, powers_of_two, ForcingSpec, GridSpec, SweepConfig};
pub use fit::{fit_power_law, PowerLawFit};
pub use profiles::InitialProfile;
pub use report::{
    Abscissa, Check, Compensation, DecayPoint, DecayReport, GridSummary, RouteDiagnostic,
};
pub use sweeps::{
    classify_duhamel, duhamel_decay_sweep, forced_convergence_sweep, forcing_mass_series,
    kernel_decay_sweep, l2_optimality_sweep, preconditions, profile_convergence_sweep,
    solution_decay_sweep, yosida_convergence_sweep, DuhamelCase, SweepKind,
};

/// Every acceptance tolerance used by the sweeps.
pub mod thresholds {
    /// Kernel L^p slope against its predicted exponent.
    pub const KERNEL_SLOPE: f64 = 0.02;
    /// Gradient and time-difference kernel slopes.
    pub const DERIVATIVE_SLOPE: f64 = 0.03;
    /// Slope when the predicted exponent is zero.
    pub const FLAT_SLOPE: f64 = 1e-10;
    pub const SOLUTION_SLOPE: f64 = 0.03;
    pub const DUHAMEL_SLOPE: f64 = 0.05;
    /// Largest relative deviation from the top-decade mean of a log-case
    /// compensated sequence.
    pub const LOG_SPREAD: f64 = 0.15;
    /// Distance from a log-critical parameter inside which a Duhamel sweep
    /// refuses to classify.
    pub const LOG_GUARD_BAND: f64 = 0.05;
    /// The final scaled discrepancy must be at most this fraction of the first.
    pub const CONVERGENCE_FINAL_FRACTION: f64 = 0.2;
    /// Slope of the discrepancy when the first moment is finite.
    pub const MOMENT_RATE: f64 = -0.5;
    pub const MOMENT_SLOPE: f64 = 0.07;
    pub const L2_SLOPE: f64 = 0.03;
    /// max/min of the compensated L² norm.
    pub const L2_BAND: f64 = 10.0;
    pub const YOSIDA_FINAL_GAP: f64 = 1e-2;
    pub const YOSIDA_FOURIER_GAP: f64 = 1e-3;
    // Relative disagreement between two routes above which a report stops
    // being evidence, one per pair of routes.
    pub const ROUTE_QUADRATURE: f64 = 1e-7;
    pub const ROUTE_SAMPLED: f64 = 1e-5;
    pub const ROUTE_ALGEBRAIC: f64 = 1e-9;
    /// Largest |u| on the box boundary relative to max |u|.
    pub const BOUNDARY_RATIO: f64 = 1e-3;
    /// Grid nodes per feature length of the data or of the earliest kernel.
    pub const POINTS_PER_FEATURE: f64 = 2.5;
    /// Largest symbol value of the earliest kernel allowed at the Nyquist
    /// frequency, so sampled and spectral kernels agree.
    pub const NYQUIST_SYMBOL: f64 = 1e-7;

    /// Nodes per axis beyond which the automatic grid stops refining.
    pub fn max_points(dim: usize) -> usize {
        match dim {
            1 => 1 << 16,
            2 => 2048,
            _ => 256,
        }
    }
}
