//! Catalog of symmetric normalized operator monotone functions and their
//! Morozova-Chentsov functions.
//!
//! Every member satisfies `f(1) = 1` (so that the metric restricts to the
//! Fisher form on commuting tangents), the symmetry `f(t) = t f(1/t)` (so the
//! inner product is real on Hermitian tangents), and the extremality bounds
//! `2t/(1+t) <= f(t) <= (1+t)/2`. The Morozova-Chentsov function is always
//! derived from `f` as `c(x, y) = 1/(y f(x/y))`; there is no second code path
//! for `c`.
//!
//! Quotients with a removable singularity at `t = 1` (Kubo-Mori and the WYD
//! family) switch to a Taylor branch for `|t - 1| < 1e-6`, where the naive
//! formulas lose roughly six digits.

use std::fmt;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hermitian::{mix_seed, random_hermitian, ComplexMatrix, HermitianMatrix, C64};
use crate::{tol, Error, Result};

/// A catalog identifier, possibly with a family parameter.
///
/// Stable CLI names: `sld`, `rld`, `km`, `sqrt:<alpha>`, `km-geo`, `km-sq`,
/// `wyd:<alpha>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MonotoneKind {
    /// `f(t) = (1+t)/2`; the smallest metric (symmetric logarithmic
    /// derivative / Bures).
    Sld,
    /// `f(t) = 2t/(1+t)`; the largest metric (right logarithmic derivative).
    Rld,
    /// `f(t) = (t-1)/log t`; Kubo-Mori / Bogoliubov.
    KuboMori,
    /// `f(t) = 2 t^(a+1/2) / (1 + t^(2a))` for `0 <= a <= 1/2`.
    SqrtFamily(f64),
    /// `f(t) = (t-1)/log t * 2 sqrt(t)/(1+t)`.
    KmGeo,
    /// `f(t) = ((t-1)/log t)^2 * 2/(1+t)`.
    KmSq,
    /// Wigner-Yanase-Dyson family with parameter `alpha` in `(-3, 3)`;
    /// `alpha = ±1` is the Kubo-Mori limit and is aliased to it.
    Wyd(f64),
}

impl MonotoneKind {
    /// WYD constructor that folds the `alpha = ±1` limits onto Kubo-Mori.
    pub fn wyd(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha.abs() >= 3.0 {
            return Err(Error::Domain(format!(
                "wyd parameter must lie in (-3, 3), got {alpha}"
            )));
        }
        if alpha == 1.0 || alpha == -1.0 {
            Ok(MonotoneKind::KuboMori)
        } else {
            Ok(MonotoneKind::Wyd(alpha))
        }
    }

    pub fn sqrt_family(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || !(0.0..=0.5).contains(&alpha) {
            return Err(Error::Domain(format!(
                "sqrt family parameter must lie in [0, 1/2], got {alpha}"
            )));
        }
        Ok(MonotoneKind::SqrtFamily(alpha))
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            MonotoneKind::SqrtFamily(a) => {
                Self::sqrt_family(a)?;
            }
            MonotoneKind::Wyd(a) => {
                Self::wyd(a)?;
            }
            _ => {}
        }
        Ok(())
    }

    /// Parse a stable CLI identifier.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = |s: &str| Error::InvalidInput(format!("unknown function kind '{s}'"));
        match s {
            "sld" => Ok(MonotoneKind::Sld),
            "rld" => Ok(MonotoneKind::Rld),
            "km" => Ok(MonotoneKind::KuboMori),
            "km-geo" => Ok(MonotoneKind::KmGeo),
            "km-sq" => Ok(MonotoneKind::KmSq),
            _ => {
                if let Some(rest) = s.strip_prefix("sqrt:") {
                    let a: f64 = rest.parse().map_err(|_| bad(s))?;
                    Self::sqrt_family(a)
                } else if let Some(rest) = s.strip_prefix("wyd:") {
                    let a: f64 = rest.parse().map_err(|_| bad(s))?;
                    Self::wyd(a)
                } else {
                    Err(bad(s))
                }
            }
        }
    }

    pub fn name(&self) -> String {
        match *self {
            MonotoneKind::Sld => "sld".into(),
            MonotoneKind::Rld => "rld".into(),
            MonotoneKind::KuboMori => "km".into(),
            MonotoneKind::KmGeo => "km-geo".into(),
            MonotoneKind::KmSq => "km-sq".into(),
            MonotoneKind::SqrtFamily(a) => format!("sqrt:{a}"),
            MonotoneKind::Wyd(a) => format!("wyd:{a}"),
        }
    }
}

impl fmt::Display for MonotoneKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl std::str::FromStr for MonotoneKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        MonotoneKind::parse(s)
    }
}

/// Representative members used by the fuzz suites and the CLI default.
pub fn default_catalog() -> Vec<MonotoneKind> {
    vec![
        MonotoneKind::Sld,
        MonotoneKind::Rld,
        MonotoneKind::KuboMori,
        MonotoneKind::SqrtFamily(0.0),
        MonotoneKind::SqrtFamily(0.25),
        MonotoneKind::SqrtFamily(0.5),
        MonotoneKind::KmGeo,
        MonotoneKind::KmSq,
        MonotoneKind::Wyd(-0.5),
        MonotoneKind::Wyd(0.0),
        MonotoneKind::Wyd(0.5),
    ]
}

fn beta_of(alpha: f64) -> f64 {
    (1.0 - alpha) / 2.0
}

/// `t^g - 1` without cancellation.
fn powm1(t: f64, g: f64) -> f64 {
    (g * t.ln()).exp_m1()
}

fn f_km(t: f64) -> f64 {
    let u = t - 1.0;
    if u.abs() < tol::SERIES_SWITCHOVER {
        1.0 + u * (0.5 + u * (-1.0 / 12.0 + u / 24.0))
    } else if u.abs() < 0.5 {
        // Here t - 1 is exact and ln_1p avoids the cancellation in ln(t).
        u / u.ln_1p()
    } else {
        // For t far from 1, 1 + u no longer reconstructs t to full
        // precision (t below ~2^-53 loses everything), so use ln(t).
        u / t.ln()
    }
}

fn f_wyd(t: f64, beta: f64) -> f64 {
    let u = t - 1.0;
    if u.abs() < tol::SERIES_SWITCHOVER {
        1.0 + 0.5 * u - u * u * (beta * beta - beta + 1.0) / 12.0
    } else {
        beta * (1.0 - beta) * u * u / (powm1(t, beta) * powm1(t, 1.0 - beta))
    }
}

/// Evaluate `f` at `t > 0`.
pub fn eval_f(kind: MonotoneKind, t: f64) -> Result<f64> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::Domain(format!("f is defined for t > 0, got {t}")));
    }
    kind.validate()?;
    Ok(match kind {
        MonotoneKind::Sld => 0.5 * (1.0 + t),
        MonotoneKind::Rld => 2.0 * t / (1.0 + t),
        MonotoneKind::KuboMori => f_km(t),
        MonotoneKind::KmGeo => f_km(t) * 2.0 * t.sqrt() / (1.0 + t),
        MonotoneKind::KmSq => {
            let k = f_km(t);
            k * k * 2.0 / (1.0 + t)
        }
        MonotoneKind::SqrtFamily(a) => 2.0 * t.powf(a + 0.5) / (1.0 + t.powf(2.0 * a)),
        MonotoneKind::Wyd(a) => {
            if a == 1.0 || a == -1.0 {
                f_km(t)
            } else {
                f_wyd(t, beta_of(a))
            }
        }
    })
}

/// Morozova-Chentsov function `c(x, y) = 1/(y f(x/y))` for `x, y > 0`.
pub fn eval_c(kind: MonotoneKind, x: f64, y: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 || !y.is_finite() || y <= 0.0 {
        return Err(Error::Domain(format!(
            "c is defined for x, y > 0, got ({x}, {y})"
        )));
    }
    Ok(1.0 / (y * eval_f(kind, x / y)?))
}

/// Analytic limit `f(0+)`. Members with vanishing limit report exactly 0;
/// the boundary extension branches on that value being nonzero.
pub fn f_at_zero(kind: MonotoneKind) -> f64 {
    match kind {
        MonotoneKind::Sld => 0.5,
        MonotoneKind::Rld
        | MonotoneKind::KuboMori
        | MonotoneKind::KmGeo
        | MonotoneKind::KmSq
        | MonotoneKind::SqrtFamily(_) => 0.0,
        MonotoneKind::Wyd(a) => {
            let b = beta_of(a);
            if b > 0.0 && b < 1.0 {
                b * (1.0 - b)
            } else {
                0.0
            }
        }
    }
}

/// Result of a scalar sweep over log-uniform sample points.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SweepReport {
    pub kind: String,
    pub samples: usize,
    pub violations: usize,
    /// Largest excess over the allowed tolerance (negative when clean).
    pub worst_excess: f64,
    /// Sample point where the worst excess occurred.
    pub worst_t: f64,
}

fn log_uniform(rng: &mut ChaCha8Rng) -> f64 {
    10f64.powf(rng.gen_range(-6.0..6.0))
}

/// Sweep the symmetry `f(t) = t f(1/t)` over log-uniform `t` in
/// `[1e-6, 1e6]`.
pub fn check_symmetry(kind: MonotoneKind, samples: usize, seed: u64) -> Result<SweepReport> {
    if samples == 0 {
        return Err(Error::Domain("samples must be >= 1".into()));
    }
    kind.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_excess = f64::NEG_INFINITY;
    let mut worst_t = 1.0;
    let mut violations = 0;
    for _ in 0..samples {
        let t = log_uniform(&mut rng);
        let f1 = eval_f(kind, t)?;
        let f2 = t * eval_f(kind, 1.0 / t)?;
        let excess = (f1 - f2).abs() - tol::SYMMETRY_SWEEP * f1.max(1.0);
        if excess > 0.0 {
            violations += 1;
        }
        if excess > worst_excess {
            worst_excess = excess;
            worst_t = t;
        }
    }
    Ok(SweepReport {
        kind: kind.name(),
        samples,
        violations,
        worst_excess,
        worst_t,
    })
}

/// Sweep the extremality bounds `2t/(1+t) <= f(t) <= (1+t)/2`.
pub fn check_bounds(kind: MonotoneKind, samples: usize, seed: u64) -> Result<SweepReport> {
    if samples == 0 {
        return Err(Error::Domain("samples must be >= 1".into()));
    }
    kind.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_excess = f64::NEG_INFINITY;
    let mut worst_t = 1.0;
    let mut violations = 0;
    for _ in 0..samples {
        let t = log_uniform(&mut rng);
        let f = eval_f(kind, t)?;
        let slack = tol::BOUNDS_SWEEP * (1.0 + t);
        let lower = 2.0 * t / (1.0 + t) - slack - f;
        let upper = f - (0.5 * (1.0 + t) + slack);
        let excess = lower.max(upper);
        if excess > 0.0 {
            violations += 1;
        }
        if excess > worst_excess {
            worst_excess = excess;
            worst_t = t;
        }
    }
    Ok(SweepReport {
        kind: kind.name(),
        samples,
        violations,
        worst_excess,
        worst_t,
    })
}

/// Result of the sampled matrix-order check.
#[derive(Debug, Clone, serde::Serialize)]
pub struct MonotoneSampleReport {
    pub kind: String,
    pub dim: usize,
    pub trials: usize,
    pub violations: usize,
    /// Most negative eigenvalue of `f(H) - f(K)` seen across trials.
    pub min_eigenvalue: f64,
}

/// Apply `f` to a positive semidefinite Hermitian matrix through its
/// spectrum. Eigenvalues rounded slightly below zero are clamped to zero,
/// where the analytic limit `f(0+)` is used.
fn apply_f(kind: MonotoneKind, h: &HermitianMatrix) -> Result<HermitianMatrix> {
    let sd = h.spectral_decompose()?;
    let n = h.n();
    let mapped: Vec<f64> = sd
        .eigenvalues
        .iter()
        .map(|&x| {
            if x <= 0.0 {
                Ok(f_at_zero(kind))
            } else {
                eval_f(kind, x)
            }
        })
        .collect::<Result<_>>()?;
    let diag = ComplexMatrix::from_diagonal(&DVector::from_iterator(
        n,
        mapped.iter().map(|&x| C64::new(x, 0.0)),
    ));
    Ok(HermitianMatrix::from_symmetric_parts(
        &sd.unitary * diag * sd.unitary.adjoint(),
    ))
}

/// Sampled operator monotonicity: draw `0 <= K <= H` and check
/// `f(K) <= f(H)` up to eigensolver noise.
///
/// `H` is a Ginibre covariance plus a small positive shift; `K` is
/// `H^{1/2} R H^{1/2}` with `R` a spectrally clamped Hermitian, `0 <= R <= I`.
pub fn check_operator_monotone_sample(
    kind: MonotoneKind,
    dim: usize,
    trials: usize,
    seed: u64,
) -> Result<MonotoneSampleReport> {
    if !(2..=6).contains(&dim) {
        return Err(Error::Domain(format!("dim must lie in [2, 6], got {dim}")));
    }
    kind.validate()?;
    let mut violations = 0;
    let mut min_eig = f64::INFINITY;
    for trial in 0..trials {
        let s = mix_seed(seed, trial as u64);
        let g = crate::hermitian::ginibre(dim, dim, s);
        let shifted = &g * g.adjoint() + ComplexMatrix::identity(dim, dim) * C64::new(1e-3, 0.0);
        let h = HermitianMatrix::from_symmetric_parts(shifted);

        let w = random_hermitian(dim, mix_seed(s, 1));
        let wd = w.spectral_decompose()?;
        let clamped = ComplexMatrix::from_diagonal(&DVector::from_iterator(
            dim,
            wd.eigenvalues
                .iter()
                .map(|&x| C64::new(x.clamp(0.0, 1.0), 0.0)),
        ));
        let r = &wd.unitary * clamped * wd.unitary.adjoint();

        let hd = h.spectral_decompose()?;
        let sqrt_diag = ComplexMatrix::from_diagonal(&DVector::from_iterator(
            dim,
            hd.eigenvalues.iter().map(|&x| C64::new(x.sqrt(), 0.0)),
        ));
        let sqrt_h = &hd.unitary * sqrt_diag * hd.unitary.adjoint();
        let k = HermitianMatrix::from_symmetric_parts(&sqrt_h * r * &sqrt_h);

        let diff = apply_f(kind, &h)?.sub(&apply_f(kind, &k)?);
        let min = diff.min_eigenvalue()?;
        if min < tol::OPERATOR_MONOTONE_MIN {
            violations += 1;
        }
        min_eig = min_eig.min(min);
    }
    Ok(MonotoneSampleReport {
        kind: kind.name(),
        dim,
        trials,
        violations,
        min_eigenvalue: min_eig,
    })
}
