//! # qmm
//!
//! Monotone Riemannian metrics on finite-dimensional density matrices.
//!
//! A Riemannian metric on the invertible density matrices is *monotone* when
//! every stochastic map (trace-preserving completely positive map) is a
//! contraction for it. On the diagonal submanifold of probability vectors
//! there is only one such metric up to scale, the Fisher information; off the
//! diagonal a whole family appears. The family is classified by operator
//! monotone functions `f: (0,∞) → (0,∞)` with the symmetry `f(t) = t·f(1/t)`
//! and the normalization `f(1) = 1`: in the eigenbasis of the state
//! `D = Diag(p_1, …, p_n)` the squared length of a tangent `A` is
//!
//! ```text
//! K_D(A, A) = Σ_jk c(p_j, p_k) |A_jk|²,    c(x, y) = 1 / (y · f(x/y)).
//! ```
//!
//! `c` is the Morozova–Chentsov function of the metric. The largest member of
//! the family is the right-logarithmic-derivative (RLD) metric
//! (`f(t) = 2t/(1+t)`), the smallest is the symmetric-logarithmic-derivative
//! (SLD, or Bures) metric (`f(t) = (1+t)/2`), and statistical mechanics
//! prefers the Kubo–Mori metric (`f(t) = (t−1)/log t`) in between.
//!
//! ## What the crate provides
//!
//! - [`omf`]: the catalog of operator monotone functions with numerically
//!   stable evaluation and sampled verification of every defining property.
//! - [`metric`]: the eigenbasis evaluator plus the independent closed forms
//!   (Lyapunov solve for SLD, trace formula for RLD, resolvent quadrature and
//!   entropy Hessians for Kubo–Mori, α-entropy machinery for the WYD family).
//! - [`channel`]: Kraus channels, pinchings, random Stinespring channels, and
//!   the contraction / operator-Schwarz / unitary-invariance checks.
//! - [`classical`]: Fisher geometry on the probability simplex and its
//!   consistency with the diagonal embedding.
//! - [`bloch`]: the qubit state space in Stokes coordinates with the
//!   radial/tangential split of every monotone line element.
//! - [`boundary`]: radial projection to pure states, horizontal lifts, and
//!   the Fubini–Study limit of the metric at the pure-state boundary.
//! - [`fuzz`] and [`cli`]: seeded property-fuzz suites and the batch command
//!   line front end (`qmm` binary).
//!
//! Everything is dense, double precision, and sized for desk scale
//! (dimension ≤ 64). All randomness is derived from explicit seeds; every
//! operation is pure and safe for concurrent use.
//!
//! ## Quick start
//!
//! ```rust
//! use qmm::hermitian::{random_density, random_tangent};
//! use qmm::metric::{metric_value, metric_rld, metric_sld};
//! use qmm::omf::MonotoneKind;
//!
//! let d = random_density(3, 7, 1e-9).unwrap();
//! let a = random_tangent(3, 11);
//! let km = metric_value(MonotoneKind::KuboMori, &d, &a, &a).unwrap();
//! // SLD is the smallest monotone metric, RLD the largest.
//! assert!(metric_sld(&d, &a, &a) <= km + 1e-10 * km);
//! assert!(km <= metric_rld(&d, &a, &a) * (1.0 + 1e-10));
//! ```
//!
//! See the `examples/` directory for one runnable demo per capability.
//!
//! ## References
//!
//! - Morozova & Chentsov (1990), "Markov invariant geometry on state
//!   manifolds".
//! - Petz (1996), "Monotone metrics on matrix spaces", Lin. Alg. Appl. 244.
//! - Hasegawa & Petz (1997), on the Wigner–Yanase–Dyson α-family.
//! - Chentsov (1982), *Statistical Decision Rules and Optimal Inference*.

#![forbid(unsafe_code)]
// Negated comparisons like `!(x > 0.0)` are domain guards that must also
// reject NaN; the direct comparison would let NaN through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bloch;
pub mod boundary;
pub mod channel;
pub mod classical;
pub mod cli;
pub mod fuzz;
pub mod hermitian;
pub mod io;
pub mod metric;
pub mod omf;
pub mod tol;

pub use hermitian::{
    random_density, random_tangent, spectral_decompose, to_eigenbasis, validate_density,
    ComplexMatrix, DensityMatrix, HermitianMatrix, SpectralDecomposition, TangentVector, C64,
};
pub use omf::MonotoneKind;

use thiserror::Error as ThisError;

/// Errors reported by the numerical layer and the IO/CLI plumbing.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),

    #[error("trace must be 1 (got {0})")]
    TraceMismatch(f64),

    #[error("not strictly positive (min eigenvalue {min:.3e}, floor {floor:.3e})")]
    NotStrictlyPositive { min: f64, floor: f64 },

    #[error("not traceless (trace {0:.3e})")]
    NotTraceless(f64),

    #[error("eigensolver failed to converge")]
    EigenFailure,

    #[error("quadrature failed to reach relative tolerance {0:.3e}")]
    QuadratureFailure(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate spectrum (smallest eigenvalue gap {0:.3e})")]
    DegenerateSpectrum(f64),

    #[error("degenerate top eigenvalue (gap {0:.3e})")]
    DegenerateTop(f64),

    #[error("finite-difference step {0:.3e} violates strict positivity")]
    StepTooLarge(f64),

    #[error("matrix is not unitary (deviation {0:.3e})")]
    NotUnitary(f64),

    #[error("Kraus operators are not trace preserving (deviation {0:.3e})")]
    NotTracePreserving(f64),

    #[error("matrix is not column-stochastic: {0}")]
    NotStochastic(String),

    #[error("invalid block partition: blocks sum to {got}, dimension is {expected}")]
    BadPartition { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
