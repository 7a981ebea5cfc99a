//! Monotone metric evaluation.
//!
//! The eigenbasis sum
//!
//! ```text
//! K_D(A, B) = Re Σ_jk c(p_j, p_k) conj(A'_jk) B'_jk,    A' = U†AU,
//! ```
//!
//! is the canonical evaluator for every catalog member. The closed forms of
//! the extreme members (trace formula for RLD, Lyapunov solve for SLD), the
//! resolvent quadrature and entropy Hessian for Kubo-Mori, and the α-entropy
//! machinery for the WYD family are independent routes kept alongside it as
//! cross-checking oracles.

use nalgebra::DVector;

use crate::hermitian::{
    to_eigenbasis, validate_density, ComplexMatrix, DensityMatrix, HermitianMatrix,
    TangentVector, C64,
};
use crate::omf::{eval_c, MonotoneKind};
use crate::{tol, Error, Result};

fn real_inner(a: C64, b: C64) -> f64 {
    // Re(conj(a) * b)
    a.re * b.re + a.im * b.im
}

/// `K_D(A, B)` by the eigenbasis formula. Symmetric and bilinear in `(A, B)`;
/// strictly positive for `A = B ≠ 0`.
pub fn metric_value(
    kind: MonotoneKind,
    d: &DensityMatrix,
    a: &TangentVector,
    b: &TangentVector,
) -> Result<f64> {
    let n = d.n();
    if a.n() != n || b.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: if a.n() != n { a.n() } else { b.n() },
        });
    }
    kind.validate()?;
    let ap = to_eigenbasis(d, a);
    let bp = to_eigenbasis(d, b);
    let p = d.eigenvalues();
    let mut acc = 0.0;
    for j in 0..n {
        for k in 0..n {
            let c = eval_c(kind, p[j], p[k])?;
            acc += c * real_inner(ap[(j, k)], bp[(j, k)]);
        }
    }
    Ok(acc)
}

/// Largest monotone metric: `½ Re Tr D⁻¹ (AB + BA)`.
pub fn metric_rld(d: &DensityMatrix, a: &TangentVector, b: &TangentVector) -> f64 {
    assert_eq!(d.n(), a.n());
    assert_eq!(d.n(), b.n());
    let dinv = d.inverse();
    let anti = a.as_matrix() * b.as_matrix() + b.as_matrix() * a.as_matrix();
    let prod = dinv.as_matrix() * anti;
    0.5 * (0..d.n()).map(|i| prod[(i, i)].re).sum::<f64>()
}

/// Unique solution `G` of `DG + GD = 2B`; entrywise `2 B'_jk / (p_j + p_k)`
/// in the eigenbasis of `D`.
pub fn solve_lyapunov(d: &DensityMatrix, b: &HermitianMatrix) -> HermitianMatrix {
    assert_eq!(d.n(), b.n());
    let n = d.n();
    let bp = d.conjugate_to_eigenbasis(b.as_matrix());
    let p = d.eigenvalues();
    let gp = ComplexMatrix::from_fn(n, n, |j, k| bp[(j, k)] * C64::new(2.0 / (p[j] + p[k]), 0.0));
    HermitianMatrix::from_symmetric_parts(d.conjugate_from_eigenbasis(&gp))
}

/// Smallest monotone metric: `Re Tr A G` with `DG + GD = 2B`.
pub fn metric_sld(d: &DensityMatrix, a: &TangentVector, b: &TangentVector) -> f64 {
    let g = solve_lyapunov(d, b.matrix());
    let prod = a.as_matrix() * g.as_matrix();
    (0..d.n()).map(|i| prod[(i, i)].re).sum()
}

/// Kubo-Mori metric by adaptive quadrature of
/// `∫₀^∞ Tr (D+t)⁻¹ A (D+t)⁻¹ B dt`.
///
/// The substitution `t = s/(1-s)` maps the ray to `[0, 1]`; with
/// `q_i(s) = p_i + s(1 - p_i)` the integrand becomes
/// `Σ_jk Re(conj(A'_jk) B'_jk) / (q_j q_k)`, smooth up to the endpoint.
pub fn metric_km_quadrature(
    d: &DensityMatrix,
    a: &TangentVector,
    b: &TangentVector,
    rel_tol: f64,
) -> Result<f64> {
    if !(1e-10..=1e-3).contains(&rel_tol) {
        return Err(Error::Domain(format!(
            "rel_tol must lie in [1e-10, 1e-3], got {rel_tol}"
        )));
    }
    let n = d.n();
    let ap = to_eigenbasis(d, a);
    let bp = to_eigenbasis(d, b);
    let p = d.eigenvalues().to_vec();
    let mut weights = vec![0.0f64; n * n];
    for j in 0..n {
        for k in 0..n {
            weights[j * n + k] = real_inner(ap[(j, k)], bp[(j, k)]);
        }
    }
    let integrand = move |s: f64| -> f64 {
        let q: Vec<f64> = p.iter().map(|&pi| pi + s * (1.0 - pi)).collect();
        let mut acc = 0.0;
        for j in 0..n {
            for k in 0..n {
                acc += weights[j * n + k] / (q[j] * q[k]);
            }
        }
        acc
    };
    adaptive_simpson(&integrand, 0.0, 1.0, rel_tol)
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    let fa = f(a);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let fb = f(b);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let scale = whole.abs().max(1e-30);
    simpson_step(f, a, b, fa, fm, fb, whole, rel_tol * scale, 52)
        .ok_or(Error::QuadratureFailure(rel_tol))
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol_abs: f64,
    depth: u32,
) -> Option<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol_abs {
        return Some(left + right + delta / 15.0);
    }
    if depth == 0 {
        return None;
    }
    let l = simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol_abs, depth - 1)?;
    let r = simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol_abs, depth - 1)?;
    Some(l + r)
}

/// Trace functional generator `G` for Hessian metrics. The canonical member
/// is `t log t`, whose Hessian is the Kubo-Mori inner product.
pub struct EntropyGenerator {
    name: String,
    func: fn(f64) -> f64,
}

impl EntropyGenerator {
    pub fn new(name: &str, func: fn(f64) -> f64) -> Self {
        Self {
            name: name.to_owned(),
            func,
        }
    }

    pub fn von_neumann() -> Self {
        Self::new("t log t", |t| t * t.ln())
    }

    pub fn quadratic() -> Self {
        Self::new("t^2", |t| t * t)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.func)(t)
    }
}

fn trace_g(gen: &EntropyGenerator, h: &HermitianMatrix) -> Result<f64> {
    let sd = h.spectral_decompose()?;
    let min = *sd.eigenvalues.last().expect("nonempty spectrum");
    if min <= 0.0 {
        return Err(Error::StepTooLarge(min));
    }
    Ok(sd.eigenvalues.iter().map(|&x| gen.eval(x)).sum())
}

/// Mixed second derivative of `Tr G(D + tA + sB)` at the origin, by the
/// second-order central stencil
/// `[F(+h,+h) - F(+h,-h) - F(-h,+h) + F(-h,-h)] / (4h²)`.
///
/// For `G(t) = t log t` this is the Kubo-Mori inner product.
pub fn hessian_metric(
    gen: &EntropyGenerator,
    d: &DensityMatrix,
    a: &TangentVector,
    b: &TangentVector,
    step: f64,
) -> Result<f64> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::Domain(format!("step must be positive, got {step}")));
    }
    let base = d.matrix();
    let corner = |sa: f64, sb: f64| -> Result<f64> {
        let m = base
            .add(&a.matrix().scaled(sa * step))
            .add(&b.matrix().scaled(sb * step));
        trace_g(gen, &m).map_err(|e| match e {
            Error::StepTooLarge(_) => Error::StepTooLarge(step),
            other => other,
        })
    };
    let fpp = corner(1.0, 1.0)?;
    let fpm = corner(1.0, -1.0)?;
    let fmp = corner(-1.0, 1.0)?;
    let fmm = corner(-1.0, -1.0)?;
    Ok((fpp - fpm - fmp + fmm) / (4.0 * step * step))
}

/// Quantum relative entropy `Tr D₁ (log D₁ - log D₂)`.
pub fn relative_entropy(d1: &DensityMatrix, d2: &DensityMatrix) -> Result<f64> {
    if d1.n() != d2.n() {
        return Err(Error::DimensionMismatch {
            expected: d1.n(),
            got: d2.n(),
        });
    }
    let own: f64 = d1.eigenvalues().iter().map(|&p| p * p.ln()).sum();
    let log2 = d2.log();
    let prod = d1.matrix().as_matrix() * log2.as_matrix();
    let cross: f64 = (0..d1.n()).map(|i| prod[(i, i)].re).sum();
    Ok(own - cross)
}

/// Classical relative entropy `Σ p_i (log p_i - log q_i)` for strictly
/// positive vectors.
pub fn classical_relative_entropy(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            got: q.len(),
        });
    }
    if p.iter().chain(q.iter()).any(|&x| !(x > 0.0)) {
        return Err(Error::Domain(
            "relative entropy needs strictly positive entries".into(),
        ));
    }
    Ok(p.iter()
        .zip(q.iter())
        .map(|(&pi, &qi)| pi * (pi.ln() - qi.ln()))
        .sum())
}

/// α-entropy `S_α(D₁, D₂) = 4/(1-α²) Tr (I - D₂^e D₁^{-e}) D₁` with
/// `e = (1+α)/2`, for `α` in `(-2, 2)`.
///
/// The limits `α → ∓1` are the relative entropies `S(D₁‖D₂)` and
/// `S(D₂‖D₁)`; exactly `±1` dispatches there.
pub fn alpha_entropy(d1: &DensityMatrix, d2: &DensityMatrix, alpha: f64) -> Result<f64> {
    if !alpha.is_finite() || alpha.abs() >= 2.0 {
        return Err(Error::Domain(format!(
            "alpha must lie in (-2, 2), got {alpha}"
        )));
    }
    if d1.n() != d2.n() {
        return Err(Error::DimensionMismatch {
            expected: d1.n(),
            got: d2.n(),
        });
    }
    if alpha == -1.0 {
        return relative_entropy(d1, d2);
    }
    if alpha == 1.0 {
        return relative_entropy(d2, d1);
    }
    let e = 0.5 * (1.0 + alpha);
    let m2 = d2.power(e);
    let m1 = d1.power(1.0 - e);
    let prod = m2.as_matrix() * m1.as_matrix();
    let tr: f64 = (0..d1.n()).map(|i| prod[(i, i)].re).sum();
    Ok(4.0 / (1.0 - alpha * alpha) * (1.0 - tr))
}

fn perturbed_density(d: &DensityMatrix, t: &TangentVector, coef: f64, step: f64) -> Result<DensityMatrix> {
    let m = d.matrix().add(&t.matrix().scaled(coef));
    DensityMatrix::from_hermitian(m, 0.0).map_err(|e| match e {
        Error::NotStrictlyPositive { .. } => Error::StepTooLarge(step),
        other => other,
    })
}

/// WYD metric as the negated mixed second difference of the α-entropy,
/// `K^α(A, B) = -∂²/∂t∂u S_α(D + tA, D + uB)`, central stencil.
///
/// The sign is fixed by the commuting case, which must reproduce the Fisher
/// value `Σ a_i b_i / p_i`.
pub fn alpha_metric_hessian(
    d: &DensityMatrix,
    a: &TangentVector,
    b: &TangentVector,
    alpha: f64,
    step: f64,
) -> Result<f64> {
    if !alpha.is_finite() || alpha.abs() >= 2.0 || alpha == 1.0 || alpha == -1.0 {
        return Err(Error::Domain(format!(
            "alpha must lie in (-2, 2) excluding ±1, got {alpha}"
        )));
    }
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::Domain(format!("step must be positive, got {step}")));
    }
    let dap = perturbed_density(d, a, step, step)?;
    let dam = perturbed_density(d, a, -step, step)?;
    let dbp = perturbed_density(d, b, step, step)?;
    let dbm = perturbed_density(d, b, -step, step)?;
    let spp = alpha_entropy(&dap, &dbp, alpha)?;
    let spm = alpha_entropy(&dap, &dbm, alpha)?;
    let smp = alpha_entropy(&dam, &dbp, alpha)?;
    let smm = alpha_entropy(&dam, &dbm, alpha)?;
    Ok(-(spp - spm - smp + smm) / (4.0 * step * step))
}

/// Commutator quadratic form of the WYD metric.
#[derive(Debug, Clone)]
pub struct CommutatorForm {
    pub alpha: f64,
    /// `K^α(i[D,X], i[D,X])` by the eigenbasis evaluator.
    pub metric: f64,
    /// `Re Tr [D^β, X][D^{1-β}, X]` with `β = (1-α)/2`.
    pub raw_trace: f64,
    /// `metric / raw_trace`; `None` when the commutator vanishes.
    pub ratio: Option<f64>,
    /// The analytic constant `-4/(1-α²)` the ratio reproduces.
    pub expected_ratio: f64,
}

/// Evaluate the WYD metric on `i[D, X]` together with the raw commutator
/// trace; their ratio is a constant depending on `α` only.
pub fn commutator_form(d: &DensityMatrix, x: &HermitianMatrix, alpha: f64) -> Result<CommutatorForm> {
    if !alpha.is_finite() || alpha.abs() >= 1.0 {
        return Err(Error::Domain(format!(
            "alpha must lie in (-1, 1), got {alpha}"
        )));
    }
    if d.n() != x.n() {
        return Err(Error::DimensionMismatch {
            expected: d.n(),
            got: x.n(),
        });
    }
    let n = d.n();
    let comm = d.matrix().as_matrix() * x.as_matrix() - x.as_matrix() * d.matrix().as_matrix();
    let i_comm = comm.map(|z| C64::new(-z.im, z.re)); // i [D, X]
    let a = TangentVector::from_hermitian_projected(&HermitianMatrix::from_symmetric_parts(i_comm));
    let metric = metric_value(MonotoneKind::wyd(alpha)?, d, &a, &a)?;

    let beta = 0.5 * (1.0 - alpha);
    let db = d.power(beta);
    let dob = d.power(1.0 - beta);
    let cb = db.as_matrix() * x.as_matrix() - x.as_matrix() * db.as_matrix();
    let cob = dob.as_matrix() * x.as_matrix() - x.as_matrix() * dob.as_matrix();
    let prod = cb * cob;
    let raw_trace: f64 = (0..n).map(|i| prod[(i, i)].re).sum();

    let ratio = if raw_trace.abs() > 1e-30 {
        Some(metric / raw_trace)
    } else {
        None
    };
    Ok(CommutatorForm {
        alpha,
        metric,
        raw_trace,
        ratio,
        expected_ratio: -4.0 / (1.0 - alpha * alpha),
    })
}

/// Morozova-Chentsov function reconstructed from the power pair
/// `g(x) = a x^p`, `g*(x) = b x^{1-p}` with `ab = 1/(p(1-p))`:
///
/// ```text
/// c(λ, μ) = (g(λ) - g(μ))(g*(λ) - g*(μ)) / (λ - μ)².
/// ```
///
/// Coincides with the WYD function at `β = p` (`α = 1 - 2p`); the confluent
/// case `λ = μ` returns the limit `1/λ`.
pub fn mc_function_from_pair(p: f64, lambda: f64, mu: f64) -> Result<f64> {
    if !p.is_finite() || p <= 0.0 || p >= 1.0 {
        return Err(Error::Domain(format!("p must lie in (0, 1), got {p}")));
    }
    if !(lambda > 0.0) || !(mu > 0.0) {
        return Err(Error::Domain(format!(
            "arguments must be positive, got ({lambda}, {mu})"
        )));
    }
    if lambda == mu {
        return Ok(1.0 / lambda);
    }
    let num = (lambda.powf(p) - mu.powf(p)) * (lambda.powf(1.0 - p) - mu.powf(1.0 - p));
    let den = p * (1.0 - p) * (lambda - mu) * (lambda - mu);
    Ok(num / den)
}

/// Split a tangent into the part commuting with `D` (diagonal in the
/// eigenbasis) and its Hilbert-Schmidt-orthogonal complement. Requires a
/// nondegenerate spectrum.
pub fn decompose_tangent(
    d: &DensityMatrix,
    a: &TangentVector,
) -> Result<(TangentVector, TangentVector)> {
    let n = d.n();
    if a.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: a.n(),
        });
    }
    let p = d.eigenvalues();
    let mut min_gap = f64::INFINITY;
    for w in p.windows(2) {
        min_gap = min_gap.min(w[0] - w[1]);
    }
    if min_gap <= tol::DEGENERATE_GAP {
        return Err(Error::DegenerateSpectrum(min_gap));
    }
    let ap = to_eigenbasis(d, a);
    let diag = ComplexMatrix::from_diagonal(&DVector::from_iterator(
        n,
        (0..n).map(|i| C64::new(ap[(i, i)].re, 0.0)),
    ));
    let off = &ap - &diag;
    let commuting = HermitianMatrix::from_symmetric_parts(d.conjugate_from_eigenbasis(&diag));
    let orthogonal = HermitianMatrix::from_symmetric_parts(d.conjugate_from_eigenbasis(&off));
    Ok((
        TangentVector::from_hermitian_projected(&commuting),
        TangentVector::from_hermitian_projected(&orthogonal),
    ))
}

/// Convenience wrapper used by tests and the CLI: the three standard values
/// on one input.
pub fn metric_with_extremes(
    kind: MonotoneKind,
    d: &DensityMatrix,
    a: &TangentVector,
    b: &TangentVector,
) -> Result<(f64, f64, f64)> {
    Ok((
        metric_value(kind, d, a, b)?,
        metric_sld(d, a, b),
        metric_rld(d, a, b),
    ))
}

/// Tangent direction check used by the contraction harness.
pub(crate) fn density_after_floor(m: &HermitianMatrix, n: usize) -> Result<DensityMatrix> {
    validate_density(m.as_matrix(), 0.0).or_else(|_| {
        let floored = m
            .scaled(1.0 - tol::CHANNEL_FLOOR_DELTA)
            .add(&HermitianMatrix::identity(n).scaled(tol::CHANNEL_FLOOR_DELTA / n as f64));
        validate_density(floored.as_matrix(), 0.0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::sigma_x;
    use crate::hermitian::{mix_seed, random_density, random_tangent};

    fn diag_density(p: &[f64]) -> DensityMatrix {
        DensityMatrix::from_probabilities(p, 0.0).unwrap()
    }

    fn sx_tangent() -> TangentVector {
        TangentVector::new(sigma_x()).unwrap()
    }

    fn conditioned_instance(n: usize, seed: u64) -> (DensityMatrix, TangentVector, TangentVector) {
        let raw = random_density(n, mix_seed(seed, 0), 1e-9).unwrap();
        let mixed = raw
            .matrix()
            .scaled(0.5)
            .add(&HermitianMatrix::identity(n).scaled(0.5 / n as f64));
        let d = validate_density(mixed.as_matrix(), 1e-3).unwrap();
        let a = random_tangent(n, mix_seed(seed, 1));
        let b = random_tangent(n, mix_seed(seed, 2));
        let a = a.scaled(1.0 / a.frobenius_norm());
        let b = b.scaled(1.0 / b.frobenius_norm());
        (d, a, b)
    }

    #[test]
    fn diagonal_case_is_kind_independent() {
        let d = diag_density(&[0.5, 0.5]);
        let a = TangentVector::from_real_diagonal(&[0.5, -0.5]).unwrap();
        for kind in crate::omf::default_catalog() {
            let v = metric_value(kind, &d, &a, &a).unwrap();
            assert!((v - 1.0).abs() < 1e-14, "{kind}: {v}");
        }
    }

    #[test]
    fn sld_value_against_lyapunov_oracle() {
        let d = diag_density(&[0.75, 0.25]);
        let a = sx_tangent();
        // Oracle: G solves DG + GD = 2 sigma_x; off-diagonal entries are
        // 2/(p1+p2) = 2, so Tr(sigma_x G) = 4.
        let g = solve_lyapunov(&d, a.matrix());
        assert!((g.as_matrix()[(0, 1)].re - 2.0).abs() < 1e-12);
        let v = metric_value(MonotoneKind::Sld, &d, &a, &a).unwrap();
        assert!((v - 4.0).abs() < 1e-12);
        assert!((metric_sld(&d, &a, &a) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn rld_value_against_trace_oracle() {
        let d = diag_density(&[0.75, 0.25]);
        let a = sx_tangent();
        // sigma_x² = I, so ½ Tr D⁻¹(AB+BA) = Tr D⁻¹ = 4/3 + 4 = 16/3.
        let v = metric_value(MonotoneKind::Rld, &d, &a, &a).unwrap();
        assert!((v - 16.0 / 3.0).abs() < 1e-12);
        assert!((metric_rld(&d, &a, &a) - 16.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn rld_identity_case() {
        let d = diag_density(&[0.5, 0.5]);
        let a = TangentVector::from_real_diagonal(&[0.5, -0.5]).unwrap();
        assert!((metric_rld(&d, &a, &a) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn closed_forms_match_eigenbasis_on_random_input() {
        for seed in 0..50 {
            let n = 2 + (seed as usize % 3);
            let d = random_density(n, mix_seed(21, seed), 1e-9).unwrap();
            let a = random_tangent(n, mix_seed(22, seed));
            let b = random_tangent(n, mix_seed(23, seed));
            let sld = metric_sld(&d, &a, &b);
            let via_sum = metric_value(MonotoneKind::Sld, &d, &a, &b).unwrap();
            assert!(
                (sld - via_sum).abs() <= tol::ORACLE_REL * via_sum.abs().max(1e-12),
                "sld mismatch at seed {seed}"
            );
            let rld = metric_rld(&d, &a, &b);
            let via_sum = metric_value(MonotoneKind::Rld, &d, &a, &b).unwrap();
            assert!(
                (rld - via_sum).abs() <= tol::ORACLE_REL * via_sum.abs().max(1e-12),
                "rld mismatch at seed {seed}"
            );
        }
    }

    #[test]
    fn sld_is_symmetric_in_its_tangents() {
        for seed in 0..20 {
            let d = random_density(4, mix_seed(35, seed), 1e-9).unwrap();
            let a = random_tangent(4, mix_seed(36, seed));
            let b = random_tangent(4, mix_seed(37, seed));
            let ab = metric_sld(&d, &a, &b);
            let ba = metric_sld(&d, &b, &a);
            assert!(
                (ab - ba).abs() <= 1e-10 * ab.abs().max(1.0),
                "seed {seed}: {ab} vs {ba}"
            );
        }
    }

    #[test]
    fn lyapunov_solution_examples() {
        // D = I/2: DG + GD = G, so G = 2B.
        let d = diag_density(&[0.5, 0.5]);
        let b = random_tangent(2, 3);
        let g = solve_lyapunov(&d, b.matrix());
        assert!((g.as_matrix() - b.as_matrix() * C64::new(2.0, 0.0)).norm() < 1e-13);
        // Commuting case: Diag(b_i / p_i).
        let d = diag_density(&[0.75, 0.25]);
        let b = TangentVector::from_real_diagonal(&[0.5, -0.5]).unwrap();
        let g = solve_lyapunov(&d, b.matrix());
        assert!((g.as_matrix()[(0, 0)].re - 0.5 / 0.75).abs() < 1e-13);
        assert!((g.as_matrix()[(1, 1)].re + 0.5 / 0.25).abs() < 1e-13);
    }

    #[test]
    fn lyapunov_residual_small_on_random_input() {
        for seed in 0..30 {
            let n = 2 + (seed as usize % 3);
            let d = random_density(n, mix_seed(31, seed), 1e-9).unwrap();
            let b = random_tangent(n, mix_seed(32, seed));
            let g = solve_lyapunov(&d, b.matrix());
            let resid = d.matrix().as_matrix() * g.as_matrix()
                + g.as_matrix() * d.matrix().as_matrix()
                - b.as_matrix() * C64::new(2.0, 0.0);
            assert!(
                resid.norm() <= 1e-10 * b.frobenius_norm(),
                "residual at seed {seed}: {:.3e}",
                resid.norm()
            );
        }
    }

    #[test]
    fn km_quadrature_matches_closed_form() {
        let d = diag_density(&[0.75, 0.25]);
        let a = sx_tangent();
        let expect = 4.0 * 3.0f64.ln();
        let quad = metric_km_quadrature(&d, &a, &a, 1e-8).unwrap();
        assert!((quad - expect).abs() < 1e-8 * expect, "quad {quad}");
        let eig = metric_value(MonotoneKind::KuboMori, &d, &a, &a).unwrap();
        assert!((eig - expect).abs() < 1e-12 * expect);

        let d = diag_density(&[0.5, 0.5]);
        let a = TangentVector::from_real_diagonal(&[0.5, -0.5]).unwrap();
        let quad = metric_km_quadrature(&d, &a, &a, 1e-8).unwrap();
        assert!((quad - 1.0).abs() < 1e-8);
    }

    #[test]
    fn km_quadrature_matches_eigenbasis_on_random_input() {
        for seed in 0..20 {
            let d = random_density(3, mix_seed(41, seed), 1e-9).unwrap();
            let a = random_tangent(3, mix_seed(42, seed));
            let quad = metric_km_quadrature(&d, &a, &a, 1e-8).unwrap();
            let eig = metric_value(MonotoneKind::KuboMori, &d, &a, &a).unwrap();
            assert!(
                (quad - eig).abs() <= 1e-6 * eig.abs().max(1e-12),
                "seed {seed}: {quad} vs {eig}"
            );
        }
    }

    #[test]
    fn km_quadrature_rejects_bad_tolerance() {
        let d = diag_density(&[0.5, 0.5]);
        let a = sx_tangent();
        assert!(metric_km_quadrature(&d, &a, &a, 1e-2).is_err());
        assert!(metric_km_quadrature(&d, &a, &a, 1e-11).is_err());
    }

    #[test]
    fn hessian_metric_commuting_case() {
        let gen = EntropyGenerator::von_neumann();
        let d = diag_density(&[0.5, 0.5]);
        let a = TangentVector::from_real_diagonal(&[0.5, -0.5]).unwrap();
        let v = hessian_metric(&gen, &d, &a, &a, 1e-4).unwrap();
        assert!((v - 1.0).abs() < 1e-4, "{v}");
    }

    #[test]
    fn hessian_metric_km_instance() {
        let gen = EntropyGenerator::von_neumann();
        let d = diag_density(&[0.75, 0.25]);
        let a = sx_tangent();
        let expect = 4.0 * 3.0f64.ln();
        let v = hessian_metric(&gen, &d, &a, &a, 1e-4).unwrap();
        assert!((v - expect).abs() < 1e-4 * expect, "{v} vs {expect}");
    }

    #[test]
    fn hessian_metric_quadratic_generator() {
        // G(t) = t² has G'' = 2 and the stencil is exact:
        // value = 2 Re Tr(AB).
        let gen = EntropyGenerator::quadratic();
        let (d, a, b) = conditioned_instance(3, 77);
        let prod = a.as_matrix() * b.as_matrix();
        let expect = 2.0 * (0..3).map(|i| prod[(i, i)].re).sum::<f64>();
        let v = hessian_metric(&gen, &d, &a, &b, 1e-4).unwrap();
        assert!((v - expect).abs() < 1e-7, "{v} vs {expect}");
    }

    #[test]
    fn hessian_metric_step_too_large() {
        let gen = EntropyGenerator::von_neumann();
        let d = diag_density(&[0.9, 0.1]);
        let a = TangentVector::from_real_diagonal(&[-1.0, 1.0]).unwrap();
        match hessian_metric(&gen, &d, &a, &a, 0.2) {
            Err(Error::StepTooLarge(_)) => {}
            other => panic!("expected StepTooLarge, got {other:?}"),
        }
    }

    #[test]
    fn relative_entropy_examples() {
        let d = random_density(3, 5, 1e-9).unwrap();
        assert!(relative_entropy(&d, &d).unwrap().abs() < 1e-12);

        let p = [0.5, 0.5];
        let q = [0.75, 0.25];
        let expect = 0.5 * (4.0f64 / 3.0).ln();
        let got = classical_relative_entropy(&p, &q).unwrap();
        assert!((got - expect).abs() < 1e-14);
        assert!((got - 0.143841036225890).abs() < 1e-12);

        // Unitary invariance.
        let u = crate::hermitian::random_unitary(3, 9);
        let d2 = random_density(3, 6, 1e-9).unwrap();
        let rot = |x: &DensityMatrix| {
            validate_density(&(&u * x.matrix().as_matrix() * u.adjoint()), 0.0).unwrap()
        };
        let plain = relative_entropy(&d, &d2).unwrap();
        let rotated = relative_entropy(&rot(&d), &rot(&d2)).unwrap();
        assert!((plain - rotated).abs() < 1e-10);
    }

    #[test]
    fn alpha_entropy_zero_on_equal_arguments() {
        let d = random_density(3, 15, 1e-9).unwrap();
        assert!(alpha_entropy(&d, &d, 0.5).unwrap().abs() < 1e-12);
    }

    #[test]
    fn alpha_entropy_nonnegative_near_the_diagonal() {
        for seed in 0..20 {
            let (d, a, _) = conditioned_instance(3, mix_seed(91, seed));
            let nearby = perturbed_density(&d, &a, 1e-2, 1e-2).unwrap();
            for alpha in [-1.5, -0.5, 0.0, 0.5, 1.5] {
                let s = alpha_entropy(&d, &nearby, alpha).unwrap();
                assert!(s >= -1e-12, "seed {seed} alpha {alpha}: {s}");
            }
        }
    }

    #[test]
    fn alpha_entropy_diagonal_oracle() {
        // Commuting case at alpha = 0: 4 (1 - Σ sqrt(p q)).
        let d1 = diag_density(&[0.5, 0.5]);
        let d2 = diag_density(&[0.75, 0.25]);
        let oracle = 4.0 * (1.0 - (0.375f64.sqrt() + 0.125f64.sqrt()));
        let got = alpha_entropy(&d1, &d2, 0.0).unwrap();
        assert!((got - oracle).abs() < 1e-12, "{got} vs {oracle}");
        assert!((got - 0.136296694843727).abs() < 1e-12);
    }

    #[test]
    fn alpha_entropy_relative_entropy_limits() {
        let d1 = random_density(3, 25, 1e-3).unwrap();
        let d2 = random_density(3, 26, 1e-3).unwrap();
        let near_minus = alpha_entropy(&d1, &d2, -1.0 + 1e-5).unwrap();
        let s12 = relative_entropy(&d1, &d2).unwrap();
        assert!((near_minus - s12).abs() < 1e-3 * s12.max(1.0));
        let near_plus = alpha_entropy(&d1, &d2, 1.0 - 1e-5).unwrap();
        let s21 = relative_entropy(&d2, &d1).unwrap();
        assert!((near_plus - s21).abs() < 1e-3 * s21.max(1.0));
        // Exactly ±1 dispatches to the limits.
        assert_eq!(alpha_entropy(&d1, &d2, -1.0).unwrap(), s12);
        assert_eq!(alpha_entropy(&d1, &d2, 1.0).unwrap(), s21);
    }

    #[test]
    fn alpha_hessian_commuting_case() {
        let d = diag_density(&[0.75, 0.25]);
        let a = TangentVector::from_real_diagonal(&[0.5, -0.5]).unwrap();
        let fisher = 0.25 / 0.75 + 0.25 / 0.25;
        let v = alpha_metric_hessian(&d, &a, &a, 0.5, 1e-4).unwrap();
        assert!((v - fisher).abs() < 1e-3 * fisher, "{v} vs {fisher}");
    }

    #[test]
    fn alpha_hessian_offdiagonal_oracle() {
        let d = diag_density(&[0.75, 0.25]);
        let a = sx_tangent();
        let oracle = metric_value(MonotoneKind::Wyd(0.0), &d, &a, &a).unwrap();
        // Independent closed value: 2 c_wyd0(3/4, 1/4) = 8/(√x+√y)².
        let root_sum = 0.75f64.sqrt() + 0.25f64.sqrt();
        assert!((oracle - 8.0 / (root_sum * root_sum)).abs() < 1e-12);
        let v = alpha_metric_hessian(&d, &a, &a, 0.0, 1e-4).unwrap();
        assert!((v - oracle).abs() < 1e-3 * oracle, "{v} vs {oracle}");
    }

    #[test]
    fn alpha_hessian_km_limit() {
        let (d, a, _) = conditioned_instance(2, 123);
        let km = metric_value(MonotoneKind::KuboMori, &d, &a, &a).unwrap();
        for alpha in [1.0 - 1e-4, -1.0 + 1e-4] {
            let v = alpha_metric_hessian(&d, &a, &a, alpha, 1e-4).unwrap();
            assert!((v - km).abs() < 1e-3 * km, "alpha {alpha}: {v} vs {km}");
        }
    }

    #[test]
    fn commutator_form_ratio_is_constant() {
        let mut ratios = Vec::new();
        for seed in 0..5 {
            let d = random_density(3, mix_seed(61, seed), 1e-6).unwrap();
            let x = crate::hermitian::random_hermitian(3, mix_seed(62, seed));
            let form = commutator_form(&d, &x, 0.4).unwrap();
            let ratio = form.ratio.expect("noncommuting instance");
            assert!(
                (ratio - form.expected_ratio).abs()
                    <= tol::COMMUTATOR_RATIO_REL * form.expected_ratio.abs(),
                "seed {seed}: {ratio} vs {}",
                form.expected_ratio
            );
            ratios.push(ratio);
        }
        let spread = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(spread <= 1e-9 * ratios[0].abs());
    }

    #[test]
    fn commutator_form_vanishes_on_commuting_input() {
        let d = diag_density(&[0.6, 0.3, 0.1]);
        let x = HermitianMatrix::from_real_diagonal(&[1.0, 2.0, 3.0]);
        let form = commutator_form(&d, &x, 0.0).unwrap();
        assert!(form.metric.abs() < 1e-20);
        assert!(form.raw_trace.abs() < 1e-20);
        assert!(form.ratio.is_none());
    }

    #[test]
    fn mc_function_from_pair_matches_wyd() {
        // p = 1/2, λ = 4, μ = 1 ↔ wyd alpha = 0.
        let got = mc_function_from_pair(0.5, 4.0, 1.0).unwrap();
        let expect = eval_c(MonotoneKind::Wyd(0.0), 4.0, 1.0).unwrap();
        assert!((got - expect).abs() < 1e-10 * expect);
        // Generic p against alpha = 1 - 2p.
        for (p, l, m) in [(0.3, 2.5, 0.7), (0.8, 0.2, 5.0)] {
            let got = mc_function_from_pair(p, l, m).unwrap();
            let expect = eval_c(MonotoneKind::wyd(1.0 - 2.0 * p).unwrap(), l, m).unwrap();
            assert!((got - expect).abs() < 1e-10 * expect, "p {p}");
        }
        // Confluent limit and homogeneity.
        assert_eq!(mc_function_from_pair(0.5, 2.0, 2.0).unwrap(), 0.5);
        let v = mc_function_from_pair(0.3, 1.7, 0.4).unwrap();
        let w = mc_function_from_pair(0.3, 3.4, 0.8).unwrap();
        assert!((v - 2.0 * w).abs() < 1e-10 * v);
    }

    #[test]
    fn decompose_tangent_splits_orthogonally() {
        let d = diag_density(&[0.6, 0.3, 0.1]);
        // Diagonal tangent maps to (A, 0).
        let a = TangentVector::from_real_diagonal(&[0.5, -0.2, -0.3]).unwrap();
        let (com, orth) = decompose_tangent(&d, &a).unwrap();
        assert!((com.as_matrix() - a.as_matrix()).norm() < 1e-12);
        assert!(orth.frobenius_norm() < 1e-12);

        // sigma_x-like tangent is purely off-diagonal.
        let mut m = ComplexMatrix::zeros(3, 3);
        m[(0, 1)] = C64::new(1.0, 0.0);
        m[(1, 0)] = C64::new(1.0, 0.0);
        let a = TangentVector::from_matrix(&m).unwrap();
        let (com, orth) = decompose_tangent(&d, &a).unwrap();
        assert!(com.frobenius_norm() < 1e-12);
        assert!((orth.as_matrix() - a.as_matrix()).norm() < 1e-12);

        // Random split: parts reconstruct and are HS-orthogonal.
        for seed in 0..20 {
            let d = random_density(3, mix_seed(71, seed), 1e-4).unwrap();
            let gaps_ok = d.eigenvalues().windows(2).all(|w| w[0] - w[1] > 1e-8);
            if !gaps_ok {
                continue;
            }
            let a = random_tangent(3, mix_seed(72, seed));
            let (com, orth) = decompose_tangent(&d, &a).unwrap();
            let sum = com.as_matrix() + orth.as_matrix();
            assert!((sum - a.as_matrix()).norm() < 1e-10);
            let prod = com.as_matrix() * orth.as_matrix();
            let inner: f64 = (0..3).map(|i| prod[(i, i)].re).sum();
            assert!(inner.abs() < 1e-12, "seed {seed}: HS inner {inner:.3e}");
        }
    }

    #[test]
    fn decompose_tangent_rejects_degenerate_spectrum() {
        let d = diag_density(&[0.5, 0.5]);
        let a = sx_tangent();
        match decompose_tangent(&d, &a) {
            Err(Error::DegenerateSpectrum(_)) => {}
            other => panic!("expected DegenerateSpectrum, got {other:?}"),
        }
    }

    #[test]
    fn commuting_tangents_see_the_fisher_form_for_every_kind() {
        let d = diag_density(&[0.6, 0.3, 0.1]);
        let a = TangentVector::from_real_diagonal(&[0.5, -0.2, -0.3]).unwrap();
        let fisher = 0.25 / 0.6 + 0.04 / 0.3 + 0.09 / 0.1;
        for kind in crate::omf::default_catalog() {
            let v = metric_value(kind, &d, &a, &a).unwrap();
            assert!(
                (v - fisher).abs() <= 1e-10 * fisher,
                "{kind}: {v} vs {fisher}"
            );
        }
    }

    #[test]
    fn bilinearity_and_symmetry() {
        let (d, a, b) = conditioned_instance(3, 31);
        for kind in [MonotoneKind::KuboMori, MonotoneKind::Wyd(0.5)] {
            let kab = metric_value(kind, &d, &a, &b).unwrap();
            let kba = metric_value(kind, &d, &b, &a).unwrap();
            assert!((kab - kba).abs() < 1e-10 * kab.abs().max(1.0));
            let kaa = metric_value(kind, &d, &a, &a).unwrap();
            let kbb = metric_value(kind, &d, &b, &b).unwrap();
            let ksum = metric_value(kind, &d, &a.add(&b), &a.add(&b)).unwrap();
            assert!(
                (ksum - (kaa + 2.0 * kab + kbb)).abs() < 1e-10 * ksum.abs().max(1.0),
                "{kind}"
            );
        }
    }

    #[test]
    fn kubo_transform_route_agrees_once() {
        // Logarithmic-coordinate form: with A' = c_km ∘ A entrywise in the
        // eigenbasis, g(A, B) = ∫₀¹ Tr D^t A' D^{1-t} B' dt.
        let d = random_density(3, 2024, 1e-6).unwrap();
        let a = random_tangent(3, 2025);
        let b = random_tangent(3, 2026);
        let p = d.eigenvalues();
        let n = d.n();
        let ap = to_eigenbasis(&d, &a);
        let bp = to_eigenbasis(&d, &b);
        let c = |j: usize, k: usize| eval_c(MonotoneKind::KuboMori, p[j], p[k]).unwrap();
        let apk = ComplexMatrix::from_fn(n, n, |j, k| ap[(j, k)] * C64::new(c(j, k), 0.0));
        let bpk = ComplexMatrix::from_fn(n, n, |j, k| bp[(j, k)] * C64::new(c(j, k), 0.0));
        let integrand = |t: f64| -> f64 {
            let mut acc = 0.0;
            for j in 0..n {
                for k in 0..n {
                    acc += p[j].powf(t) * p[k].powf(1.0 - t)
                        * (apk[(j, k)] * bpk[(k, j)]).re;
                }
            }
            acc
        };
        // Fixed composite Simpson: smooth integrand on [0, 1].
        let m = 256;
        let h = 1.0 / m as f64;
        let mut total = integrand(0.0) + integrand(1.0);
        for i in 1..m {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            total += w * integrand(i as f64 * h);
        }
        total *= h / 3.0;
        let direct = metric_value(MonotoneKind::KuboMori, &d, &a, &b).unwrap();
        assert!(
            (total - direct).abs() < 1e-8 * direct.abs().max(1.0),
            "{total} vs {direct}"
        );
    }
}
