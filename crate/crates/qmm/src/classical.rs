//! Fisher geometry on the probability simplex and the diagonal embedding
//! into density matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hermitian::{DensityMatrix, TangentVector};
use crate::{tol, Error, Result};

/// Point of the closed probability simplex. Zero components are allowed;
/// the quadratic form additionally needs strict positivity.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector {
    p: Vec<f64>,
}

impl ProbabilityVector {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::Domain("empty probability vector".into()));
        }
        if p.iter().any(|&x| !x.is_finite() || x < 0.0) {
            return Err(Error::Domain(
                "probabilities must be finite and nonnegative".into(),
            ));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > tol::PROBABILITY_SUM {
            return Err(Error::Domain(format!("probabilities sum to {sum}")));
        }
        Ok(Self { p })
    }

    pub fn uniform(n: usize) -> Self {
        Self {
            p: vec![1.0 / n as f64; n],
        }
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.p
    }
}

/// Zero-sum direction tangent to the simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexTangent {
    u: Vec<f64>,
}

impl SimplexTangent {
    pub fn new(u: Vec<f64>) -> Result<Self> {
        if u.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let sum: f64 = u.iter().sum();
        if sum.abs() > tol::PROBABILITY_SUM {
            return Err(Error::NotTraceless(sum));
        }
        Ok(Self { u })
    }

    /// Project an arbitrary vector onto the zero-sum hyperplane.
    pub fn projected(v: &[f64]) -> Self {
        let mean: f64 = v.iter().sum::<f64>() / v.len() as f64;
        Self {
            u: v.iter().map(|x| x - mean).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.u
    }
}

/// Fisher information form `Σ u_i v_i / p_i` at a strictly positive point.
pub fn fisher_form(p: &ProbabilityVector, u: &SimplexTangent, v: &SimplexTangent) -> Result<f64> {
    if u.len() != p.len() || v.len() != p.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            got: if u.len() != p.len() { u.len() } else { v.len() },
        });
    }
    if p.as_slice().iter().any(|&x| !(x > 0.0)) {
        return Err(Error::Domain(
            "Fisher form needs strictly positive probabilities".into(),
        ));
    }
    Ok(p.as_slice()
        .iter()
        .zip(u.as_slice().iter().zip(v.as_slice()))
        .map(|(&pi, (&ui, &vi))| ui * vi / pi)
        .sum())
}

/// Geodesic distance on the spherical representation,
/// `d = 2 arccos Σ sqrt(p_i r_i)`, in `[0, π]`. Zero components are fine.
pub fn geodesic_distance(p: &ProbabilityVector, r: &ProbabilityVector) -> Result<f64> {
    if p.len() != r.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            got: r.len(),
        });
    }
    let overlap: f64 = p
        .as_slice()
        .iter()
        .zip(r.as_slice())
        .map(|(&a, &b)| (a * b).sqrt())
        .sum();
    // Rounding can push the overlap past 1 by ~1e-16.
    Ok(2.0 * overlap.clamp(0.0, 1.0).acos())
}

/// Hellinger distance `sqrt(Σ (sqrt(p_i) - sqrt(r_i))²)`; a transform of the
/// geodesic distance, `d_H = 2 sin(d/4)`.
pub fn hellinger(p: &ProbabilityVector, r: &ProbabilityVector) -> Result<f64> {
    if p.len() != r.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            got: r.len(),
        });
    }
    Ok(p.as_slice()
        .iter()
        .zip(r.as_slice())
        .map(|(&a, &b)| {
            let d = a.sqrt() - b.sqrt();
            d * d
        })
        .sum::<f64>()
        .sqrt())
}

/// Diagonal density `Diag(p)` for strictly positive `p`.
pub fn embed_diagonal(p: &ProbabilityVector, eps_min: f64) -> Result<DensityMatrix> {
    DensityMatrix::from_probabilities(p.as_slice(), eps_min)
}

/// Diagonal tangent `Diag(u)`.
pub fn embed_tangent(u: &SimplexTangent) -> Result<TangentVector> {
    TangentVector::from_real_diagonal(u.as_slice())
}

/// Strictly positive random simplex point (normalized chi-square weights).
pub fn random_probability(n: usize, seed: u64) -> ProbabilityVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut raw: Vec<f64> = (0..n)
        .map(|_| {
            let x: f64 = rng.sample(rand_distr::StandardNormal);
            x * x + 1e-6
        })
        .collect();
    let sum: f64 = raw.iter().sum();
    for x in &mut raw {
        *x /= sum;
    }
    // Close the normalization gap exactly.
    let gap = 1.0 - raw.iter().sum::<f64>();
    raw[0] += gap;
    ProbabilityVector::new(raw).expect("normalized by construction")
}

/// Random zero-sum tangent.
pub fn random_simplex_tangent(n: usize, seed: u64) -> SimplexTangent {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    SimplexTangent::projected(&raw)
}
