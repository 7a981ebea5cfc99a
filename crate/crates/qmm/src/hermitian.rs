//! Complex Hermitian primitives: validated density/tangent types, spectral
//! decomposition, and seeded random generation.
//!
//! All matrix types are immutable after construction. `HermitianMatrix`
//! stores an exactly Hermitian canonical form (symmetrized entrywise on
//! construction), so downstream code never re-checks symmetry.
//! `DensityMatrix` caches its spectral decomposition with eigenvalues sorted
//! descending.

use nalgebra::{Complex, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::{tol, Error, Result};

pub type C64 = Complex<f64>;
pub type ComplexMatrix = DMatrix<C64>;

/// Deterministic per-item seed derivation (SplitMix64 over the pair), so
/// fuzz results do not depend on trial scheduling.
pub fn mix_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index.wrapping_add(0x517c_c1b7_2722_0a95)))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn standard_complex(rng: &mut ChaCha8Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

/// Complex matrix with independent standard-normal real and imaginary parts.
pub fn ginibre(rows: usize, cols: usize, seed: u64) -> ComplexMatrix {
    let mut rng = rng_from(seed);
    let mut m = ComplexMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m[(r, c)] = standard_complex(&mut rng);
        }
    }
    m
}

/// Haar-like random unitary: Q factor of a square Ginibre matrix.
pub fn random_unitary(n: usize, seed: u64) -> ComplexMatrix {
    ginibre(n, n, seed).qr().q()
}

fn check_finite(m: &ComplexMatrix) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

fn hermitian_deviation(m: &ComplexMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for j in 0..n {
        for k in j..n {
            let d = m[(j, k)] - m[(k, j)].conj();
            worst = worst.max(d.norm());
        }
    }
    worst
}

fn symmetrize(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.nrows();
    ComplexMatrix::from_fn(n, n, |j, k| {
        if j == k {
            C64::new(m[(j, j)].re, 0.0)
        } else {
            (m[(j, k)] + m[(k, j)].conj()) * C64::new(0.5, 0.0)
        }
    })
}

/// Hermitian matrix in exactly symmetric canonical form.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    mat: ComplexMatrix,
}

impl HermitianMatrix {
    /// Validate Hermiticity to `tolerance` and canonicalize `(M + M†)/2`.
    pub fn from_matrix(m: &ComplexMatrix, tolerance: f64) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare(m.nrows(), m.ncols()));
        }
        check_finite(m)?;
        let dev = hermitian_deviation(m);
        if dev > tolerance {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self { mat: symmetrize(m) })
    }

    /// Canonicalize a matrix that is Hermitian by construction (results of
    /// conjugations, Kraus sums, spectral synthesis). Still symmetrized so
    /// the exact-form invariant holds.
    pub fn from_symmetric_parts(m: ComplexMatrix) -> Self {
        debug_assert!(hermitian_deviation(&m) < 1e-8);
        Self { mat: symmetrize(&m) }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            mat: ComplexMatrix::zeros(n, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            mat: ComplexMatrix::identity(n, n),
        }
    }

    pub fn from_real_diagonal(d: &[f64]) -> Self {
        let n = d.len();
        Self {
            mat: ComplexMatrix::from_fn(n, n, |j, k| {
                if j == k {
                    C64::new(d[j], 0.0)
                } else {
                    C64::new(0.0, 0.0)
                }
            }),
        }
    }

    pub fn n(&self) -> usize {
        self.mat.nrows()
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// Trace; exactly real in canonical form.
    pub fn trace(&self) -> f64 {
        (0..self.n()).map(|i| self.mat[(i, i)].re).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.mat.norm()
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            mat: &self.mat * C64::new(s, 0.0),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            mat: &self.mat + &other.mat,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            mat: &self.mat - &other.mat,
        }
    }

    pub fn spectral_decompose(&self) -> Result<SpectralDecomposition> {
        spectral_decompose(self)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        let sd = self.spectral_decompose()?;
        Ok(*sd.eigenvalues.last().expect("nonempty spectrum"))
    }
}

/// Eigenvalues (descending) and the diagonalizing unitary of a Hermitian
/// matrix: `H = U Diag(λ) U†`.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub unitary: ComplexMatrix,
}

impl SpectralDecomposition {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = ComplexMatrix::from_diagonal(&DVector::from_iterator(
            self.eigenvalues.len(),
            self.eigenvalues.iter().map(|&x| C64::new(x, 0.0)),
        ));
        &self.unitary * d * self.unitary.adjoint()
    }
}

/// Eigendecomposition with eigenvalues sorted descending.
pub fn spectral_decompose(h: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let n = h.n();
    let se = h
        .as_matrix()
        .clone()
        .try_symmetric_eigen(f64::EPSILON, 4096)
        .ok_or(Error::EigenFailure)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        se.eigenvalues[b]
            .partial_cmp(&se.eigenvalues[a])
            .expect("finite eigenvalues")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let unitary = ComplexMatrix::from_fn(n, n, |r, c| se.eigenvectors[(r, order[c])]);
    Ok(SpectralDecomposition {
        eigenvalues,
        unitary,
    })
}

/// Strictly positive, unit-trace Hermitian matrix with cached spectrum.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: HermitianMatrix,
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
}

/// Validate a raw matrix as a density: Hermitian, trace one, all eigenvalues
/// at least `eps_min` (and strictly positive). The accepted matrix is stored
/// in symmetrized canonical form.
pub fn validate_density(m: &ComplexMatrix, eps_min: f64) -> Result<DensityMatrix> {
    let h = HermitianMatrix::from_matrix(m, tol::HERMITIAN_INPUT)?;
    DensityMatrix::from_hermitian(h, eps_min)
}

impl DensityMatrix {
    pub fn from_hermitian(h: HermitianMatrix, eps_min: f64) -> Result<Self> {
        let tr = h.trace();
        if (tr - 1.0).abs() > tol::TRACE_ONE {
            return Err(Error::TraceMismatch(tr));
        }
        let sd = h.spectral_decompose()?;
        let min = *sd.eigenvalues.last().expect("nonempty spectrum");
        if min <= 0.0 || min < eps_min {
            return Err(Error::NotStrictlyPositive {
                min,
                floor: eps_min,
            });
        }
        Ok(Self {
            matrix: h,
            eigenvalues: sd.eigenvalues,
            eigenvectors: sd.unitary,
        })
    }

    /// Diagonal density from a strictly positive probability vector. The
    /// cached unitary is an exact permutation, so eigenbasis quantities of
    /// diagonal states carry no decomposition noise.
    pub fn from_probabilities(p: &[f64], eps_min: f64) -> Result<Self> {
        let n = p.len();
        if n == 0 {
            return Err(Error::Domain("empty probability vector".into()));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > tol::TRACE_ONE {
            return Err(Error::TraceMismatch(sum));
        }
        let min = p.iter().cloned().fold(f64::INFINITY, f64::min);
        if min <= 0.0 || min < eps_min {
            return Err(Error::NotStrictlyPositive {
                min,
                floor: eps_min,
            });
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| p[b].partial_cmp(&p[a]).expect("finite probabilities"));
        let eigenvalues: Vec<f64> = order.iter().map(|&i| p[i]).collect();
        let unitary = ComplexMatrix::from_fn(n, n, |r, c| {
            if r == order[c] {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        Ok(Self {
            matrix: HermitianMatrix::from_real_diagonal(p),
            eigenvalues,
            eigenvectors: unitary,
        })
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("nonempty spectrum")
    }

    /// Columns are eigenvectors matching `eigenvalues()`.
    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    /// `U† M U`: coordinates of `M` in the eigenbasis of the state.
    pub fn conjugate_to_eigenbasis(&self, m: &ComplexMatrix) -> ComplexMatrix {
        self.eigenvectors.adjoint() * m * &self.eigenvectors
    }

    /// `U M U†`: back from eigenbasis coordinates.
    pub fn conjugate_from_eigenbasis(&self, m: &ComplexMatrix) -> ComplexMatrix {
        &self.eigenvectors * m * self.eigenvectors.adjoint()
    }

    /// Spectral calculus: `φ(D) = U Diag(φ(p)) U†`.
    pub fn spectral_fn(&self, phi: impl Fn(f64) -> f64) -> HermitianMatrix {
        let d = ComplexMatrix::from_diagonal(&DVector::from_iterator(
            self.eigenvalues.len(),
            self.eigenvalues.iter().map(|&x| C64::new(phi(x), 0.0)),
        ));
        HermitianMatrix::from_symmetric_parts(self.conjugate_from_eigenbasis(&d))
    }

    pub fn power(&self, exponent: f64) -> HermitianMatrix {
        self.spectral_fn(|p| p.powf(exponent))
    }

    pub fn log(&self) -> HermitianMatrix {
        self.spectral_fn(f64::ln)
    }

    pub fn inverse(&self) -> HermitianMatrix {
        self.spectral_fn(|p| 1.0 / p)
    }
}

/// Traceless Hermitian matrix: a tangent to the density manifold.
#[derive(Debug, Clone)]
pub struct TangentVector {
    matrix: HermitianMatrix,
}

impl TangentVector {
    pub fn new(h: HermitianMatrix) -> Result<Self> {
        let tr = h.trace();
        if tr.abs() > tol::TRACELESS {
            return Err(Error::NotTraceless(tr));
        }
        Ok(Self { matrix: h })
    }

    pub fn from_matrix(m: &ComplexMatrix) -> Result<Self> {
        Self::new(HermitianMatrix::from_matrix(m, tol::HERMITIAN_INPUT)?)
    }

    /// Trace-project a Hermitian matrix: `A - (Tr A / n) I`.
    pub fn from_hermitian_projected(h: &HermitianMatrix) -> Self {
        let n = h.n();
        let shift = h.trace() / n as f64;
        let m = h.as_matrix() - ComplexMatrix::identity(n, n) * C64::new(shift, 0.0);
        Self {
            matrix: HermitianMatrix::from_symmetric_parts(m),
        }
    }

    pub fn from_real_diagonal(d: &[f64]) -> Result<Self> {
        Self::new(HermitianMatrix::from_real_diagonal(d))
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            matrix: HermitianMatrix::zeros(n),
        }
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        self.matrix.as_matrix()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.frobenius_norm()
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            matrix: self.matrix.scaled(s),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            matrix: self.matrix.add(&other.matrix),
        }
    }
}

/// `U† A U` in the eigenbasis of `D`; Hermitian, trace preserved.
pub fn to_eigenbasis(d: &DensityMatrix, a: &TangentVector) -> ComplexMatrix {
    d.conjugate_to_eigenbasis(a.as_matrix())
}

/// Seeded random density: Ginibre `G G†` normalized to unit trace, then mixed
/// with `I/n` by the smallest `δ ∈ {0, 2 n eps_min}` that guarantees the
/// eigenvalue floor. Deterministic in `(n, seed, eps_min)`.
pub fn random_density(n: usize, seed: u64, eps_min: f64) -> Result<DensityMatrix> {
    if n < 2 {
        return Err(Error::Domain(format!("dimension must be >= 2, got {n}")));
    }
    if !(eps_min >= 0.0) {
        return Err(Error::Domain(format!("eps_min must be >= 0, got {eps_min}")));
    }
    let g = ginibre(n, n, seed);
    let gg = &g * g.adjoint();
    let tr: f64 = (0..n).map(|i| gg[(i, i)].re).sum();
    let base = HermitianMatrix::from_symmetric_parts(gg * C64::new(1.0 / tr, 0.0));
    let sd = base.spectral_decompose()?;
    let min = *sd.eigenvalues.last().expect("nonempty spectrum");
    let delta = if min >= eps_min { 0.0 } else { 2.0 * n as f64 * eps_min };
    if delta >= 1.0 {
        return Err(Error::Domain(format!(
            "eps_min {eps_min} too large for dimension {n}"
        )));
    }
    // Mixing with I/n keeps the eigenvectors; shift the spectrum directly.
    let eigenvalues: Vec<f64> = sd
        .eigenvalues
        .iter()
        .map(|&p| (1.0 - delta) * p + delta / n as f64)
        .collect();
    let diag = ComplexMatrix::from_diagonal(&DVector::from_iterator(
        n,
        eigenvalues.iter().map(|&x| C64::new(x, 0.0)),
    ));
    let mat = &sd.unitary * diag * sd.unitary.adjoint();
    Ok(DensityMatrix {
        matrix: HermitianMatrix::from_symmetric_parts(mat),
        eigenvalues,
        eigenvectors: sd.unitary,
    })
}

/// Seeded random tangent: symmetrized Ginibre, trace-projected.
pub fn random_tangent(n: usize, seed: u64) -> TangentVector {
    assert!(n >= 2, "dimension must be >= 2");
    let g = ginibre(n, n, seed);
    let h = HermitianMatrix::from_symmetric_parts((&g + g.adjoint()) * C64::new(0.5, 0.0));
    TangentVector::from_hermitian_projected(&h)
}

/// Seeded random Hermitian matrix (no trace projection).
pub fn random_hermitian(n: usize, seed: u64) -> HermitianMatrix {
    let g = ginibre(n, n, seed);
    HermitianMatrix::from_symmetric_parts((&g + g.adjoint()) * C64::new(0.5, 0.0))
}
