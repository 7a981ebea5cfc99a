//! Seeded property-fuzz suites behind the `fuzz` CLI command.
//!
//! Every suite draws its per-trial randomness from `mix_seed(seed, trial)`,
//! so reports are identical for identical configurations regardless of
//! execution order.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::channel::{check_contraction, check_schwarz, random_channel};
use crate::classical::{fisher_form, random_probability, random_simplex_tangent, ProbabilityVector, SimplexTangent};
use crate::hermitian::{ginibre, mix_seed, random_density, random_tangent};
use crate::metric::{metric_rld, metric_sld, metric_value};
use crate::omf::{default_catalog, MonotoneKind};
use crate::{tol, Error, Result};

/// Overridable check tolerances, echoed into every report.
#[derive(Debug, Clone, Serialize)]
pub struct Tolerances {
    pub contraction_rel: f64,
    pub contraction_abs: f64,
    pub schwarz_min: f64,
    pub ordering_rel: f64,
    pub classical_rel: f64,
    pub classical_abs: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            contraction_rel: tol::CONTRACTION_REL,
            contraction_abs: tol::CONTRACTION_ABS,
            schwarz_min: tol::SCHWARZ_MIN,
            ordering_rel: tol::ORDERING_REL,
            classical_rel: 1e-10,
            classical_abs: 1e-12,
        }
    }
}

impl Tolerances {
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        match name {
            "contraction-rel" => self.contraction_rel = value,
            "contraction-abs" => self.contraction_abs = value,
            "schwarz-min" => self.schwarz_min = value,
            "ordering-rel" => self.ordering_rel = value,
            "classical-rel" => self.classical_rel = value,
            "classical-abs" => self.classical_abs = value,
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown tolerance '{other}' (expected contraction-rel, contraction-abs, \
                     schwarz-min, ordering-rel, classical-rel, classical-abs)"
                )))
            }
        }
        Ok(())
    }
}

/// Configuration shared by the fuzz suites.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    pub dims: Vec<usize>,
    pub kinds: Vec<MonotoneKind>,
    pub tolerances: Tolerances,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 100,
            dims: vec![2, 3, 4],
            kinds: default_catalog(),
            tolerances: Tolerances::default(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidInput("trials must be >= 1".into()));
        }
        if self.dims.is_empty() {
            return Err(Error::InvalidInput("dims must be nonempty".into()));
        }
        if let Some(&bad) = self.dims.iter().find(|&&n| !(2..=16).contains(&n)) {
            return Err(Error::InvalidInput(format!(
                "dims must lie in [2, 16], got {bad}"
            )));
        }
        if self.kinds.is_empty() {
            return Err(Error::InvalidInput("kinds must be nonempty".into()));
        }
        for k in &self.kinds {
            k.validate()?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Monotone,
    Schwarz,
    Ordering,
    Classical,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "monotone" => Ok(Suite::Monotone),
            "schwarz" => Ok(Suite::Schwarz),
            "ordering" => Ok(Suite::Ordering),
            "classical" => Ok(Suite::Classical),
            other => Err(Error::InvalidInput(format!(
                "unknown suite '{other}' (expected monotone, schwarz, ordering, classical)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Monotone => "monotone",
            Suite::Schwarz => "schwarz",
            Suite::Ordering => "ordering",
            Suite::Classical => "classical",
        }
    }
}

/// Aggregated outcome of a suite run. `checks` counts individual
/// comparisons (trials × kinds for the per-kind suites).
#[derive(Debug, Clone, Serialize)]
pub struct FuzzReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub checks: usize,
    pub passes: usize,
    pub failures: usize,
    pub skips: usize,
    /// Most adverse margin seen; the margin convention is per suite
    /// (relative contraction slack, Schwarz least eigenvalue, relative
    /// ordering slack, relative classical slack).
    pub worst_margin: f64,
    pub dims: Vec<usize>,
    pub kinds: Vec<String>,
    pub tolerances: Tolerances,
}

impl FuzzReport {
    fn new(suite: Suite, cfg: &RunConfig) -> Self {
        Self {
            suite: suite.name().to_owned(),
            seed: cfg.seed,
            trials: cfg.trials,
            checks: 0,
            passes: 0,
            failures: 0,
            skips: 0,
            worst_margin: f64::INFINITY,
            dims: cfg.dims.clone(),
            kinds: cfg.kinds.iter().map(|k| k.name()).collect(),
            tolerances: cfg.tolerances.clone(),
        }
    }

    fn record(&mut self, margin: f64, passed: bool) {
        self.checks += 1;
        if passed {
            self.passes += 1;
        } else {
            self.failures += 1;
        }
        if margin < self.worst_margin {
            self.worst_margin = margin;
        }
    }

    fn record_skip(&mut self) {
        self.checks += 1;
        self.skips += 1;
    }
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<FuzzReport> {
    cfg.validate()?;
    match suite {
        Suite::Monotone => run_monotone(cfg),
        Suite::Schwarz => run_schwarz(cfg),
        Suite::Ordering => run_ordering(cfg),
        Suite::Classical => run_classical(cfg),
    }
}

fn trial_dim(cfg: &RunConfig, trial: usize) -> usize {
    cfg.dims[trial % cfg.dims.len()]
}

/// Metric contraction under random channels, every kind per trial.
fn run_monotone(cfg: &RunConfig) -> Result<FuzzReport> {
    let mut report = FuzzReport::new(Suite::Monotone, cfg);
    for trial in 0..cfg.trials {
        let s = mix_seed(cfg.seed, trial as u64);
        let n = trial_dim(cfg, trial);
        let env = 1 + trial % 3;
        let d = random_density(n, mix_seed(s, 1), tol::EPS_MIN_DEFAULT)?;
        let a = random_tangent(n, mix_seed(s, 2));
        let ch = random_channel(n, env, mix_seed(s, 3))?;
        for &kind in &cfg.kinds {
            match check_contraction(kind, &ch, &d, &a)? {
                Some(rep) => {
                    let margin = rep.margin / rep.value_before.abs().max(1e-300);
                    let passed = rep.passes_with(
                        cfg.tolerances.contraction_rel,
                        cfg.tolerances.contraction_abs,
                    );
                    report.record(margin, passed);
                }
                None => report.record_skip(),
            }
        }
    }
    Ok(report)
}

/// Operator Schwarz inequality under random channels.
fn run_schwarz(cfg: &RunConfig) -> Result<FuzzReport> {
    let mut report = FuzzReport::new(Suite::Schwarz, cfg);
    for trial in 0..cfg.trials {
        let s = mix_seed(cfg.seed, trial as u64);
        let n = trial_dim(cfg, trial);
        let env = 1 + trial % 3;
        let d = random_density(n, mix_seed(s, 1), tol::EPS_MIN_DEFAULT)?;
        let k = ginibre(n, n, mix_seed(s, 2));
        let ch = random_channel(n, env, mix_seed(s, 3))?;
        match check_schwarz(&ch, &d, &k)? {
            Some(rep) => report.record(
                rep.min_eigenvalue,
                rep.passes_with(cfg.tolerances.schwarz_min),
            ),
            None => report.record_skip(),
        }
    }
    Ok(report)
}

/// Extremal ordering: closed-form SLD and RLD bracket every kind.
fn run_ordering(cfg: &RunConfig) -> Result<FuzzReport> {
    let mut report = FuzzReport::new(Suite::Ordering, cfg);
    for trial in 0..cfg.trials {
        let s = mix_seed(cfg.seed, trial as u64);
        let n = trial_dim(cfg, trial);
        let d = random_density(n, mix_seed(s, 1), tol::EPS_MIN_DEFAULT)?;
        let a = random_tangent(n, mix_seed(s, 2));
        let lower = metric_sld(&d, &a, &a);
        let upper = metric_rld(&d, &a, &a);
        for &kind in &cfg.kinds {
            let v = metric_value(kind, &d, &a, &a)?;
            let scale = v.abs().max(1e-300);
            let margin = ((v - lower) / scale).min((upper - v) / scale);
            report.record(margin, margin >= -cfg.tolerances.ordering_rel);
        }
    }
    Ok(report)
}

/// Chentsov contraction of the Fisher form under column-stochastic maps.
fn run_classical(cfg: &RunConfig) -> Result<FuzzReport> {
    let mut report = FuzzReport::new(Suite::Classical, cfg);
    for trial in 0..cfg.trials {
        let s = mix_seed(cfg.seed, trial as u64);
        let n = trial_dim(cfg, trial);
        let m = 2 + trial % (n - 1).max(1);
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(s, 1));
        let mut pi = DMatrix::<f64>::zeros(m, n);
        for j in 0..n {
            let col: Vec<f64> = (0..m).map(|_| rng.gen_range(0.02..1.0)).collect();
            let sum: f64 = col.iter().sum();
            for i in 0..m {
                pi[(i, j)] = col[i] / sum;
            }
        }
        let p = random_probability(n, mix_seed(s, 2));
        let u = random_simplex_tangent(n, mix_seed(s, 3));
        let before = fisher_form(&p, &u, &u)?;

        let mut q = vec![0.0; m];
        let mut v = vec![0.0; m];
        for i in 0..m {
            for j in 0..n {
                q[i] += pi[(i, j)] * p.as_slice()[j];
                v[i] += pi[(i, j)] * u.as_slice()[j];
            }
        }
        let gap = 1.0 - q.iter().sum::<f64>();
        q[0] += gap;
        let q = ProbabilityVector::new(q)?;
        let v = SimplexTangent::projected(&v);
        let after = fisher_form(&q, &v, &v)?;
        let margin = (before - after) / before.abs().max(1e-300);
        let passed = after
            <= before * (1.0 + cfg.tolerances.classical_rel) + cfg.tolerances.classical_abs;
        report.record(margin, passed);
    }
    Ok(report)
}
