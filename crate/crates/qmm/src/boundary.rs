//! Radial projection onto pure states, horizontal lifts, and the boundary
//! limit of monotone metrics.
//!
//! A state with a simple top eigenvalue projects radially onto the pure
//! state of its dominant eigenvector. Tangents of the pure-state manifold
//! lift to horizontal tangents at the interior point; in the frame of the
//! diagonalized state the lift has first-row entries `(λ₁ - λ_i) ū_i` and is
//! the same matrix for every metric in the family. The lifted inner product
//!
//! ```text
//! g_D(lift u, lift v) = 2 Re Σ_{i≥2} (λ₁ - λ_i)² / (f(λ_i/λ₁) λ₁) u_i v̄_i
//! ```
//!
//! converges along any sequence approaching the pure state exactly when
//! `f(0) ≠ 0`, and the limit is the Fubini-Study form scaled by `1/f(0)`.

use crate::hermitian::{ComplexMatrix, DensityMatrix, HermitianMatrix, TangentVector, C64};
use crate::omf::{eval_f, f_at_zero, MonotoneKind};
use crate::{tol, Error, Result};

/// Unit vector with its rank-one projector; the phase is canonical (first
/// component of modulus above 1e-12 is real positive).
#[derive(Debug, Clone)]
pub struct PureState {
    vector: Vec<C64>,
    projector: HermitianMatrix,
}

impl PureState {
    pub fn vector(&self) -> &[C64] {
        &self.vector
    }

    pub fn projector(&self) -> &HermitianMatrix {
        &self.projector
    }
}

/// Project onto the eigenspace of the largest eigenvalue. Requires the top
/// gap `λ₁ - λ₂` to exceed the degeneracy threshold.
pub fn radial_projection(d: &DensityMatrix) -> Result<PureState> {
    let p = d.eigenvalues();
    let gap = p[0] - p[1];
    if gap <= tol::DEGENERATE_GAP {
        return Err(Error::DegenerateTop(gap));
    }
    let n = d.n();
    let mut v: Vec<C64> = (0..n).map(|i| d.eigenvectors()[(i, 0)]).collect();
    // Phase canonicalization.
    if let Some(lead) = v.iter().find(|z| z.norm() > 1e-12) {
        let phase = lead / C64::new(lead.norm(), 0.0);
        let correction = phase.conj();
        for z in &mut v {
            *z *= correction;
        }
    }
    let projector = ComplexMatrix::from_fn(n, n, |r, c| v[r] * v[c].conj());
    Ok(PureState {
        vector: v,
        projector: HermitianMatrix::from_symmetric_parts(projector),
    })
}

/// Coordinates `u_2, …, u_n` of a pure-state tangent in the frame of the
/// base point.
#[derive(Debug, Clone, PartialEq)]
pub struct HorizontalVector {
    u: Vec<C64>,
}

impl HorizontalVector {
    pub fn new(u: Vec<C64>) -> Self {
        Self { u }
    }

    pub fn from_reals(u: &[f64]) -> Self {
        Self {
            u: u.iter().map(|&x| C64::new(x, 0.0)).collect(),
        }
    }

    /// Number of coordinates (`n - 1` for an `n`-dimensional base).
    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.u
    }
}

/// Horizontal lift at a diagonal state with descending eigenvalues: the
/// Hermitian matrix with `(0, i)` entry `(λ₁ - λ_i) ū_i` and zero elsewhere.
/// The same matrix for every metric in the family.
pub fn horizontal_lift(eigenvalues: &[f64], u: &HorizontalVector) -> TangentVector {
    let n = eigenvalues.len();
    assert_eq!(u.len(), n - 1, "coordinate count must be n - 1");
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 1..n {
        let w = C64::new(eigenvalues[0] - eigenvalues[i], 0.0);
        m[(0, i)] = w * u.as_slice()[i - 1].conj();
        m[(i, 0)] = w * u.as_slice()[i - 1];
    }
    TangentVector::new(HermitianMatrix::from_symmetric_parts(m))
        .expect("zero diagonal is traceless")
}

/// Fubini-Study form in base-point coordinates: `2 Re Σ u_i v̄_i`. The
/// normalization is fixed so the boundary limit reads `h / f(0)` verbatim.
pub fn fubini_study(u: &HorizontalVector, v: &HorizontalVector) -> f64 {
    u.as_slice()
        .iter()
        .zip(v.as_slice())
        .map(|(a, b)| (a * b.conj()).re)
        .sum::<f64>()
        * 2.0
}

/// Lifted inner product at a diagonal state:
/// `2 Re Σ (λ₁-λ_i)²/(f(λ_i/λ₁) λ₁) u_i v̄_i`.
pub fn lifted_inner(
    kind: MonotoneKind,
    eigenvalues: &[f64],
    u: &HorizontalVector,
    v: &HorizontalVector,
) -> Result<f64> {
    let n = eigenvalues.len();
    if u.len() != n - 1 || v.len() != n - 1 {
        return Err(Error::DimensionMismatch {
            expected: n - 1,
            got: u.len(),
        });
    }
    let top = eigenvalues[0];
    let mut acc = 0.0;
    for ((&li, ui), vi) in eigenvalues[1..].iter().zip(u.as_slice()).zip(v.as_slice()) {
        if !(li < top) {
            return Err(Error::DegenerateTop(top - li));
        }
        let gap = top - li;
        let coeff = gap * gap / (eval_f(kind, li / top)? * top);
        acc += coeff * (ui * vi.conj()).re;
    }
    Ok(2.0 * acc)
}

/// Scale between the two boundary normalizations in this crate: for a qubit
/// with `u = (1)` the lifted limit is `2/f(0)` while the Bloch tangential
/// coefficient tends to `1/(2 f(0))`.
pub const LIFT_TO_BLOCH_TANGENTIAL: f64 = 4.0;

/// Family of interior states approaching a pure state through its eigenframe:
/// `D(ε) = Diag(1 - ε Σw, ε w_1, …, ε w_{n-1})` over a decreasing ε grid.
#[derive(Debug, Clone)]
pub struct BoundarySequence {
    weights: Vec<f64>,
    eps_grid: Vec<f64>,
}

impl BoundarySequence {
    pub fn new(weights: Vec<f64>, eps_grid: Vec<f64>) -> Result<Self> {
        if weights.is_empty() || weights.iter().any(|&w| !(w > 0.0)) {
            return Err(Error::Domain("weights must be positive".into()));
        }
        if eps_grid.is_empty()
            || eps_grid.iter().any(|&e| !(e > 0.0))
            || eps_grid.windows(2).any(|w| w[1] >= w[0])
        {
            return Err(Error::Domain(
                "epsilon grid must be positive and strictly decreasing".into(),
            ));
        }
        let seq = Self { weights, eps_grid };
        for &eps in &seq.eps_grid {
            let eigs = seq.eigenvalues_at(eps);
            let top = eigs[0];
            if !(top > 0.0) || eigs[1..].iter().any(|&x| !(x > 0.0) || x >= top) {
                return Err(Error::Domain(format!(
                    "epsilon {eps} leaves the sequence invalid"
                )));
            }
        }
        Ok(seq)
    }

    /// Default grid `1e-2, …, 1e-7` with unit weights.
    pub fn standard(n: usize) -> Result<Self> {
        Self::new(
            vec![1.0; n - 1],
            (2..=7).map(|k| 10f64.powi(-k)).collect(),
        )
    }

    /// Same endpoints on a half-decade grid. The denser ladder feeds the
    /// Aitken acceleration enough levels to strip two fractional-power
    /// error terms, which the slow WYD members need.
    pub fn refined(n: usize) -> Result<Self> {
        Self::new(
            vec![1.0; n - 1],
            (4..=14).map(|k| 10f64.powf(-0.5 * k as f64)).collect(),
        )
    }

    pub fn eps_grid(&self) -> &[f64] {
        &self.eps_grid
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len() + 1
    }

    pub fn eigenvalues_at(&self, eps: f64) -> Vec<f64> {
        let tail: f64 = self.weights.iter().sum::<f64>() * eps;
        let mut eigs = vec![1.0 - tail];
        eigs.extend(self.weights.iter().map(|&w| eps * w));
        eigs
    }

    pub fn density_at(&self, eps: f64) -> Result<DensityMatrix> {
        DensityMatrix::from_probabilities(&self.eigenvalues_at(eps), 0.0)
    }
}

/// One evaluation of the lifted inner product along the sequence.
#[derive(Debug, Clone, serde::Serialize)]
pub struct GridPoint {
    pub eps: f64,
    pub value: f64,
    /// Distance to the limit, when one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<f64>,
}

/// Outcome of the boundary limit for one kind.
#[derive(Debug, Clone, serde::Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LimitOutcome {
    /// `f(0) ≠ 0`: the limit `h(u, v)/f(0)` with the observed errors.
    ///
    /// `final_rel_error` is the last raw grid value against the limit; its
    /// size is governed by the behaviour of `f` near zero (`O(ε)` for the
    /// rational members, a fractional power for the WYD family).
    /// `extrapolated` removes the leading power by iterated Aitken
    /// acceleration of the grid values.
    Finite {
        limit: f64,
        final_rel_error: f64,
        extrapolated: f64,
        extrapolated_rel_error: f64,
    },
    /// `f(0) = 0`: no limit; at least one divergence witness fired.
    Divergent {
        final_value: f64,
        exceeded_threshold: bool,
        increments_not_vanishing: bool,
    },
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct LimitReport {
    pub kind: String,
    pub f0: f64,
    /// Fubini-Study value `h(u, v)`.
    pub h: f64,
    pub grid: Vec<GridPoint>,
    #[serde(flatten)]
    pub outcome: LimitOutcome,
}

/// Aitken delta-squared acceleration, iterated while the increments are
/// above rounding noise. Exact on a single geometric error component, which
/// is what a power law `C ε^q` becomes on a geometric epsilon grid.
fn aitken_limit(values: &[f64]) -> f64 {
    let mut row = values.to_vec();
    while row.len() >= 3 {
        let scale = row.last().expect("nonempty").abs().max(1e-300);
        let d_last = (row[row.len() - 1] - row[row.len() - 2]).abs();
        if d_last <= 1e-12 * scale {
            break;
        }
        let mut next = Vec::with_capacity(row.len() - 2);
        for w in row.windows(3) {
            let (a, b, c) = (w[0], w[1], w[2]);
            let denom = (c - b) - (b - a);
            if denom.abs() <= 1e-14 * scale {
                return *row.last().expect("nonempty");
            }
            next.push(c - (c - b) * (c - b) / denom);
        }
        row = next;
    }
    *row.last().expect("nonempty")
}

/// Evaluate the lifted inner product along the sequence and classify the
/// boundary behaviour.
///
/// Divergence is witnessed either by the value blowing past
/// `DIVERGENCE_FACTOR · |h|` or by the grid increments failing to vanish;
/// the second witness is what catches the logarithmic growth of the
/// Kubo-Mori members, which stays numerically modest on any finite grid.
pub fn radial_extension_limit(
    kind: MonotoneKind,
    seq: &BoundarySequence,
    u: &HorizontalVector,
    v: &HorizontalVector,
) -> Result<LimitReport> {
    kind.validate()?;
    let f0 = f_at_zero(kind);
    let h = fubini_study(u, v);
    let mut values = Vec::with_capacity(seq.eps_grid().len());
    for &eps in seq.eps_grid() {
        values.push(lifted_inner(kind, &seq.eigenvalues_at(eps), u, v)?);
    }
    let last = *values.last().expect("nonempty grid");
    let scale = h.abs().max(1e-30);

    if f0 != 0.0 {
        let limit = h / f0;
        let grid = seq
            .eps_grid()
            .iter()
            .zip(&values)
            .map(|(&eps, &value)| GridPoint {
                eps,
                value,
                error: Some((value - limit).abs()),
            })
            .collect();
        let final_rel_error = (last - limit).abs() / limit.abs().max(1e-30);
        let extrapolated = aitken_limit(&values);
        let extrapolated_rel_error = (extrapolated - limit).abs() / limit.abs().max(1e-30);
        Ok(LimitReport {
            kind: kind.name(),
            f0,
            h,
            grid,
            outcome: LimitOutcome::Finite {
                limit,
                final_rel_error,
                extrapolated,
                extrapolated_rel_error,
            },
        })
    } else {
        let exceeded_threshold = last.abs() > tol::DIVERGENCE_FACTOR * scale;
        let increments_not_vanishing = values
            .windows(2)
            .last()
            .map(|w| (w[1] - w[0]).abs() > tol::CAUCHY_INCREMENT_REL * w[1].abs().max(1e-30))
            .unwrap_or(false);
        let grid = seq
            .eps_grid()
            .iter()
            .zip(&values)
            .map(|(&eps, &value)| GridPoint {
                eps,
                value,
                error: None,
            })
            .collect();
        Ok(LimitReport {
            kind: kind.name(),
            f0,
            h,
            grid,
            outcome: LimitOutcome::Divergent {
                final_value: last,
                exceeded_threshold,
                increments_not_vanishing,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::{tangential_limit, TangentialLimit};
    use crate::hermitian::{mix_seed, random_density, validate_density};
    use crate::metric::metric_value;
    use crate::omf::default_catalog;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_horizontal(len: usize, seed: u64) -> HorizontalVector {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        HorizontalVector::new(
            (0..len)
                .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        )
    }

    #[test]
    fn radial_projection_examples() {
        let d = DensityMatrix::from_probabilities(&[0.75, 0.25], 0.0).unwrap();
        let p = radial_projection(&d).unwrap();
        assert!((p.vector()[0] - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(p.vector()[1].norm() < 1e-12);

        let d = crate::bloch::density_from_stokes(&crate::bloch::StokesVector::new([
            0.5, 0.0, 0.0,
        ]))
        .unwrap();
        let p = radial_projection(&d).unwrap();
        let s = 1.0 / 2.0f64.sqrt();
        assert!((p.vector()[0].norm() - s).abs() < 1e-12);
        assert!((p.vector()[1].norm() - s).abs() < 1e-12);
        // Canonical phase: leading component real positive.
        assert!(p.vector()[0].im.abs() < 1e-12);
        assert!(p.vector()[0].re > 0.0);

        let d = DensityMatrix::from_probabilities(&[0.5, 0.5], 0.0).unwrap();
        assert!(matches!(
            radial_projection(&d),
            Err(Error::DegenerateTop(_))
        ));
    }

    #[test]
    fn projector_matches_vector() {
        let d = random_density(4, 900, 1e-6).unwrap();
        if d.eigenvalues()[0] - d.eigenvalues()[1] <= tol::DEGENERATE_GAP {
            return;
        }
        let p = radial_projection(&d).unwrap();
        let norm: f64 = p.vector().iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        let pr = p.projector().as_matrix();
        assert!(((pr * pr) - pr).norm() < 1e-12, "idempotent");
    }

    #[test]
    fn horizontal_lift_examples() {
        let eigs = [0.75, 0.25];
        let zero = horizontal_lift(&eigs, &HorizontalVector::from_reals(&[0.0]));
        assert_eq!(zero.frobenius_norm(), 0.0);

        let lift = horizontal_lift(&eigs, &HorizontalVector::from_reals(&[1.0]));
        assert!((lift.as_matrix()[(0, 1)] - C64::new(0.5, 0.0)).norm() < 1e-15);
        assert!((lift.as_matrix()[(1, 0)] - C64::new(0.5, 0.0)).norm() < 1e-15);
        assert!(lift.matrix().trace().abs() < 1e-16);
    }

    #[test]
    fn lifted_inner_examples() {
        let eigs = [0.75, 0.25];
        let u = HorizontalVector::from_reals(&[1.0]);
        // sld: f(1/3) = 2/3, so 2·(1/2)²/((2/3)(3/4)) = 1.
        let v = lifted_inner(MonotoneKind::Sld, &eigs, &u, &u).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
        // rld: f(1/3) = 1/2, value 4/3.
        let v = lifted_inner(MonotoneKind::Rld, &eigs, &u, &u).unwrap();
        assert!((v - 4.0 / 3.0).abs() < 1e-14);
        // Disjointly supported coordinates are orthogonal.
        let eigs = [0.6, 0.25, 0.15];
        let u = HorizontalVector::from_reals(&[1.0, 0.0]);
        let w = HorizontalVector::from_reals(&[0.0, 1.0]);
        assert_eq!(
            lifted_inner(MonotoneKind::KuboMori, &eigs, &u, &w).unwrap(),
            0.0
        );
    }

    #[test]
    fn lift_agrees_with_metric_on_lifts() {
        let mut rng = ChaCha8Rng::seed_from_u64(1234);
        for trial in 0..100 {
            let n = 2 + (trial % 4);
            // Descending strictly positive spectrum with a clear top gap.
            let mut eigs: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
            eigs.sort_by(|a, b| b.partial_cmp(a).unwrap());
            eigs[0] += 0.5;
            let sum: f64 = eigs.iter().sum();
            for e in &mut eigs {
                *e /= sum;
            }
            let d = DensityMatrix::from_probabilities(&eigs, 0.0).unwrap();
            let u = random_horizontal(n - 1, mix_seed(500, trial as u64));
            let v = random_horizontal(n - 1, mix_seed(501, trial as u64));
            let kind = default_catalog()[trial % default_catalog().len()];
            let direct = lifted_inner(kind, &eigs, &u, &v).unwrap();
            let via_metric = metric_value(
                kind,
                &d,
                &horizontal_lift(&eigs, &u),
                &horizontal_lift(&eigs, &v),
            )
            .unwrap();
            assert!(
                (direct - via_metric).abs() <= 1e-9 * via_metric.abs().max(1e-12),
                "{kind} trial {trial}: {direct} vs {via_metric}"
            );
        }
    }

    #[test]
    fn fubini_study_basics() {
        let u = HorizontalVector::from_reals(&[1.0, 0.0]);
        let v = HorizontalVector::from_reals(&[0.0, 1.0]);
        assert_eq!(fubini_study(&u, &u), 2.0);
        assert_eq!(fubini_study(&u, &v), 0.0);
        let w = random_horizontal(3, 42);
        let z = random_horizontal(3, 43);
        assert!((fubini_study(&w, &z) - fubini_study(&z, &w)).abs() < 1e-15);
    }

    #[test]
    fn finite_limits_converge_to_scaled_fubini_study() {
        let seq = BoundarySequence::new(
            vec![1.0, 0.7, 0.4],
            (2..=7).map(|k| 10f64.powi(-k)).collect(),
        )
        .unwrap();
        let fine = BoundarySequence::refined(4).unwrap();
        let u = random_horizontal(3, 777);
        for kind in [MonotoneKind::Sld, MonotoneKind::Wyd(0.0), MonotoneKind::Wyd(0.5)] {
            let rep = radial_extension_limit(kind, &seq, &u, &u).unwrap();
            let LimitOutcome::Finite {
                limit,
                final_rel_error,
                ..
            } = rep.outcome
            else {
                panic!("{kind} should converge");
            };
            assert!(
                (limit - rep.h / rep.f0).abs() < 1e-15,
                "{kind} limit normalization"
            );
            // The raw grid converges at rate eps^min(beta, 1-beta); only
            // rational members reach the target directly, the others do
            // through the accelerated grid limit on the refined ladder.
            if kind == MonotoneKind::Sld {
                assert!(final_rel_error <= tol::LIMIT_FINAL_REL, "{kind}");
            }
            let rep_fine = radial_extension_limit(kind, &fine, &u, &u).unwrap();
            let LimitOutcome::Finite {
                extrapolated_rel_error,
                ..
            } = rep_fine.outcome
            else {
                panic!("{kind} should converge");
            };
            assert!(
                extrapolated_rel_error <= tol::LIMIT_FINAL_REL,
                "{kind}: extrapolated error {extrapolated_rel_error:.3e}"
            );
            // Error decays monotonically along the grid.
            let errs: Vec<f64> = rep.grid.iter().map(|g| g.error.unwrap()).collect();
            for w in errs.windows(2) {
                assert!(w[1] <= w[0] + 1e-12, "{kind} error not decaying");
            }
        }
    }

    #[test]
    fn zero_f0_kinds_flag_divergence() {
        let seq = BoundarySequence::standard(3).unwrap();
        let u = random_horizontal(2, 778);
        for kind in [
            MonotoneKind::KuboMori,
            MonotoneKind::Rld,
            MonotoneKind::SqrtFamily(0.0),
            MonotoneKind::KmGeo,
            MonotoneKind::KmSq,
        ] {
            let rep = radial_extension_limit(kind, &seq, &u, &u).unwrap();
            let LimitOutcome::Divergent {
                exceeded_threshold,
                increments_not_vanishing,
                ..
            } = rep.outcome
            else {
                panic!("{kind} should diverge");
            };
            assert!(
                exceeded_threshold || increments_not_vanishing,
                "{kind} divergence not witnessed"
            );
        }
    }

    #[test]
    fn divergence_detected_after_unitary_rotation_too() {
        // The sequence definition is frame independent; rotate a copy and
        // evaluate through the general metric on lifted tangents.
        let seq = BoundarySequence::standard(3).unwrap();
        let u = HorizontalVector::from_reals(&[0.8, -0.5]);
        let rot = crate::hermitian::random_unitary(3, 4141);
        let mut values = Vec::new();
        for &eps in seq.eps_grid() {
            let eigs = seq.eigenvalues_at(eps);
            let d = DensityMatrix::from_probabilities(&eigs, 0.0).unwrap();
            let rotated = validate_density(
                &(&rot * d.matrix().as_matrix() * rot.adjoint()),
                0.0,
            )
            .unwrap();
            let lift = horizontal_lift(&eigs, &u);
            let lift_rot = TangentVector::new(HermitianMatrix::from_symmetric_parts(
                &rot * lift.as_matrix() * rot.adjoint(),
            ))
            .unwrap();
            values.push(
                metric_value(MonotoneKind::Rld, &rotated, &lift_rot, &lift_rot).unwrap(),
            );
        }
        assert!(values.windows(2).all(|w| w[1] > w[0]));
        assert!(values.last().unwrap() > &(tol::DIVERGENCE_FACTOR * fubini_study(&u, &u)));
    }

    #[test]
    fn qubit_limit_matches_bloch_normalization() {
        let seq = BoundarySequence::standard(2).unwrap();
        let u = HorizontalVector::from_reals(&[1.0]);
        for kind in [MonotoneKind::Sld, MonotoneKind::Wyd(0.0)] {
            let rep = radial_extension_limit(kind, &seq, &u, &u).unwrap();
            let LimitOutcome::Finite { limit, .. } = rep.outcome else {
                panic!("finite expected");
            };
            let TangentialLimit::Finite(bloch) = tangential_limit(kind).unwrap() else {
                panic!("finite expected");
            };
            assert!(
                (limit - LIFT_TO_BLOCH_TANGENTIAL * bloch).abs() < 1e-12,
                "{kind}"
            );
        }
    }
}
