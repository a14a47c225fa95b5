//! Experiment documents and their per-kind parameters.

use std::path::PathBuf;

use dtheat::grid::Route;
use dtheat::kernel::{KernelParams, RadialQuantity};
use dtheat::lab::{
    powers_of_two, preconditions, ForcingSpec, GridSpec, InitialProfile, SweepConfig, SweepKind,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    KernelEval,
    KernelCheck,
    Solve,
    Decay,
    Converge,
    L2opt,
    Yosida,
    Figures,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::KernelEval => "kernel-eval",
            Kind::KernelCheck => "kernel-check",
            Kind::Solve => "solve",
            Kind::Decay => "decay",
            Kind::Converge => "converge",
            Kind::L2opt => "l2opt",
            Kind::Yosida => "yosida",
            Kind::Figures => "figures",
        }
    }
}

/// The JSON document given with --config.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    #[serde(default)]
    pub kind: Option<Kind>,
    #[serde(default = "empty_object")]
    pub parameters: Value,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub seed: Option<u64>,
}

fn empty_object() -> Value {
    Value::Object(Default::default())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelEval {
    pub n: usize,
    pub h: f64,
    pub dim: usize,
    #[serde(default)]
    pub quantity: RadialQuantity,
    /// Explicit radii; otherwise `count` log-spaced radii in [r_min, r_max].
    #[serde(default)]
    pub radii: Option<Vec<f64>>,
    #[serde(default = "default_r_min")]
    pub r_min: f64,
    #[serde(default = "default_r_max")]
    pub r_max: f64,
    #[serde(default = "default_count")]
    pub count: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelCheck {
    pub n: usize,
    pub h: f64,
    pub dim: usize,
    #[serde(default = "default_count")]
    pub count: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Solve {
    pub dim: usize,
    #[serde(default = "default_h")]
    pub h: f64,
    pub n_values: Vec<usize>,
    pub initial_data: InitialProfile,
    #[serde(default)]
    pub forcing: Option<ForcingSpec>,
    #[serde(default)]
    pub grid: Option<GridSpec>,
    #[serde(default = "default_route")]
    pub route: Route,
}

impl Solve {
    /// The same problem as a sweep configuration, for grid resolution and
    /// the shared parameter checks.
    pub fn as_sweep(&self) -> SweepConfig {
        SweepConfig {
            dim: self.dim,
            h: self.h,
            p: 1.0,
            q: 1.0,
            n_values: self.n_values.clone(),
            initial_data: self.initial_data.clone(),
            forcing: self.forcing.clone(),
            quantity: RadialQuantity::Kernel,
            grid: self.grid,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecayTarget {
    Kernel,
    Solution,
    Duhamel,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Decay {
    pub sweep: DecayTarget,
    #[serde(flatten)]
    pub config: SweepConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConvergeTarget {
    Initial,
    Forced,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Converge {
    #[serde(default = "default_converge")]
    pub target: ConvergeTarget,
    /// Also fit the first-moment rate; needs a non-symmetric profile.
    #[serde(default)]
    pub moment_condition: bool,
    #[serde(flatten)]
    pub config: SweepConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Yosida {
    #[serde(default = "one")]
    pub t: f64,
    #[serde(default = "default_yosida_n")]
    pub n_values: Vec<usize>,
    #[serde(default = "default_dim")]
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Figures {
    #[serde(default = "default_figure_dims")]
    pub dims: Vec<usize>,
    #[serde(default = "default_figure_r_max")]
    pub r_max: f64,
    #[serde(default = "default_figure_count")]
    pub count: usize,
}

impl Figures {
    /// (n, h) with nh = 1, coarsest first.
    pub const STEPS: [(usize, f64); 4] = [(1, 1.0), (2, 0.5), (4, 0.25), (10, 0.1)];
}

fn default_h() -> f64 {
    0.25
}
fn one() -> f64 {
    1.0
}
fn default_dim() -> usize {
    1
}
fn default_r_min() -> f64 {
    1e-2
}
fn default_r_max() -> f64 {
    10.0
}
fn default_count() -> usize {
    100
}
fn default_route() -> Route {
    Route::ResolventRecursion
}
fn default_converge() -> ConvergeTarget {
    ConvergeTarget::Initial
}
fn default_yosida_n() -> Vec<usize> {
    powers_of_two(0, 10)
}
fn default_figure_dims() -> Vec<usize> {
    vec![1, 2]
}
fn default_figure_r_max() -> f64 {
    5.0
}
fn default_figure_count() -> usize {
    200
}

/// A fully typed experiment, ready to run.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Plan {
    KernelEval(KernelEval),
    KernelCheck(KernelCheck),
    Solve(Solve),
    Decay(Decay),
    Converge(Converge),
    L2opt(SweepConfig),
    Yosida(Yosida),
    Figures(Figures),
}

/// Everything a run needs, with command-line overrides applied.
#[derive(Debug, Clone, Serialize)]
pub struct Resolved {
    pub name: String,
    pub kind: Kind,
    pub parameters: Plan,
    pub output_dir: PathBuf,
    pub seed: Option<u64>,
}

fn reseed(profile: &mut InitialProfile, seed: u64) {
    if let InitialProfile::Noise { seed: s, .. } = profile {
        *s = seed;
    }
}

fn reseed_sweep(config: &mut SweepConfig, seed: u64) {
    reseed(&mut config.initial_data, seed);
    if let Some(g) = &mut config.forcing {
        reseed(&mut g.shape, seed);
    }
}

fn parse<T: serde::de::DeserializeOwned>(kind: Kind, value: &Value) -> Result<T, Vec<String>> {
    serde_json::from_value(value.clone())
        .map_err(|e| vec![format!("{} parameters: {e}", kind.name())])
}

fn kernel_params(n: usize, h: f64, dim: usize) -> Vec<String> {
    match KernelParams::new(n, h, dim) {
        Ok(_) => Vec::new(),
        Err(e) => vec![e.to_string()],
    }
}

impl Plan {
    pub fn parse(kind: Kind, value: &Value, seed: Option<u64>) -> Result<Plan, Vec<String>> {
        let mut plan = match kind {
            Kind::KernelEval => Plan::KernelEval(parse(kind, value)?),
            Kind::KernelCheck => Plan::KernelCheck(parse(kind, value)?),
            Kind::Solve => Plan::Solve(parse(kind, value)?),
            Kind::Decay => Plan::Decay(parse(kind, value)?),
            Kind::Converge => Plan::Converge(parse(kind, value)?),
            Kind::L2opt => Plan::L2opt(parse(kind, value)?),
            Kind::Yosida => Plan::Yosida(parse(kind, value)?),
            Kind::Figures => Plan::Figures(parse(kind, value)?),
        };
        if let Some(seed) = seed {
            match &mut plan {
                Plan::Solve(s) => {
                    reseed(&mut s.initial_data, seed);
                    if let Some(g) = &mut s.forcing {
                        reseed(&mut g.shape, seed);
                    }
                }
                Plan::Decay(d) => reseed_sweep(&mut d.config, seed),
                Plan::Converge(c) => reseed_sweep(&mut c.config, seed),
                Plan::L2opt(c) => reseed_sweep(c, seed),
                _ => {}
            }
        }
        Ok(plan)
    }

    /// Every reason the plan would be refused; empty iff it would start.
    pub fn violations(&self) -> Vec<String> {
        match self {
            Plan::KernelEval(k) => {
                let mut out = kernel_params(k.n, k.h, k.dim);
                match &k.radii {
                    Some(radii) => {
                        if radii.is_empty() {
                            out.push("radii is empty".into());
                        }
                        if let Some(r) = radii.iter().find(|r| !(**r > 0.0 && r.is_finite())) {
                            out.push(format!("radii must be positive and finite, got {r}"));
                        }
                    }
                    None => {
                        if !(k.r_min > 0.0 && k.r_max > k.r_min && k.r_max.is_finite()) {
                            out.push(format!(
                                "requires 0 < r_min < r_max, got [{}, {}]",
                                k.r_min, k.r_max
                            ));
                        }
                        if k.count < 2 {
                            out.push("count must be at least 2".into());
                        }
                    }
                }
                out
            }
            Plan::KernelCheck(k) => {
                let mut out = kernel_params(k.n, k.h, k.dim);
                if k.count < 2 {
                    out.push("count must be at least 2".into());
                }
                out
            }
            Plan::Solve(s) => s.as_sweep().violations(),
            Plan::Decay(d) => preconditions(
                match d.sweep {
                    DecayTarget::Kernel => SweepKind::KernelDecay,
                    DecayTarget::Solution => SweepKind::SolutionDecay,
                    DecayTarget::Duhamel => SweepKind::DuhamelDecay,
                },
                &d.config,
            ),
            Plan::Converge(c) => {
                let mut out = preconditions(
                    match c.target {
                        ConvergeTarget::Initial => SweepKind::ProfileConvergence,
                        ConvergeTarget::Forced => SweepKind::ForcedConvergence,
                    },
                    &c.config,
                );
                if c.moment_condition && c.target == ConvergeTarget::Forced {
                    out.push("moment_condition applies to the initial-data profile only".into());
                }
                out
            }
            Plan::L2opt(c) => preconditions(SweepKind::L2Optimality, c),
            Plan::Yosida(y) => {
                let mut out = Vec::new();
                if !(y.t > 0.0 && y.t.is_finite()) {
                    out.push(format!("requires t > 0, got {}", y.t));
                }
                if !(1..=3).contains(&y.dim) {
                    out.push(format!("dimension must be 1, 2 or 3, got {}", y.dim));
                }
                if y.n_values.is_empty()
                    || y.n_values[0] == 0
                    || y.n_values.windows(2).any(|w| w[1] <= w[0])
                {
                    out.push("n_values must be strictly ascending positive integers".into());
                }
                out
            }
            Plan::Figures(f) => {
                let mut out = Vec::new();
                if f.dims.is_empty() || f.dims.iter().any(|d| !(1..=3).contains(d)) {
                    out.push(format!("dims must be drawn from 1, 2, 3, got {:?}", f.dims));
                }
                if !(f.r_max > 0.0 && f.r_max.is_finite()) {
                    out.push(format!("requires r_max > 0, got {}", f.r_max));
                }
                if f.count < 2 {
                    out.push("count must be at least 2".into());
                }
                out
            }
        }
    }
}

/// Parses and checks a document for the requested kind. `Err` carries the
/// violations.
pub fn resolve(
    text: &str,
    kind: Kind,
    seed: Option<u64>,
    output_dir: Option<PathBuf>,
) -> Result<Resolved, Vec<String>> {
    let doc: ExperimentConfig =
        serde_json::from_str(text).map_err(|e| vec![format!("config: {e}")])?;
    if let Some(k) = doc.kind {
        if k != kind {
            return Err(vec![format!(
                "config kind {} does not match subcommand {}",
                k.name(),
                kind.name()
            )]);
        }
    }
    let seed = seed.or(doc.seed);
    let plan = Plan::parse(kind, &doc.parameters, seed)?;
    let violations = plan.violations();
    if !violations.is_empty() {
        return Err(violations);
    }
    Ok(Resolved {
        name: doc.name,
        kind,
        parameters: plan,
        output_dir: output_dir
            .or(doc.output_dir)
            .unwrap_or_else(|| PathBuf::from("out")),
        seed,
    })
}

/// The kind named inside a document, for `validate`.
pub fn declared_kind(text: &str) -> Result<Kind, Vec<String>> {
    let doc: ExperimentConfig =
        serde_json::from_str(text).map_err(|e| vec![format!("config: {e}")])?;
    doc.kind
        .ok_or_else(|| vec!["config names no kind; validate needs one".to_string()])
}
