//! Named tolerances used across the crate.
//!
//! Construction tolerances bound representation noise in the inputs;
//! verification tolerances bound the accumulated rounding of the algorithm
//! they gate. Every checker defaults to the constant listed here and the CLI
//! echoes the values it ran with into its reports.

/// Hermitian symmetry accepted on input matrices before canonicalization.
pub const HERMITIAN_INPUT: f64 = 1e-10;

/// Unit-trace check for density matrices.
pub const TRACE_ONE: f64 = 1e-10;

/// Traceless check for tangent vectors.
pub const TRACELESS: f64 = 1e-12;

/// Default eigenvalue floor for densities; the metrics live on strictly
/// positive states, the floor makes that testable.
pub const EPS_MIN_DEFAULT: f64 = 1e-9;

/// Relative Frobenius reconstruction error allowed for a spectral
/// decomposition.
pub const RECONSTRUCTION_REL: f64 = 1e-10;

/// Switch from the closed formula to the Taylor branch of `f` at `|t-1|`
/// below this; the naive quotients lose about six digits at the removable
/// singularity.
pub const SERIES_SWITCHOVER: f64 = 1e-6;

/// Symmetry sweep `f(t) = t f(1/t)`, relative to `max(1, f(t))`.
pub const SYMMETRY_SWEEP: f64 = 1e-10;

/// Extremality bounds sweep `2t/(1+t) <= f(t) <= (1+t)/2`, scaled by `1+t`.
pub const BOUNDS_SWEEP: f64 = 1e-10;

/// Minimum eigenvalue of `f(H) - f(K)` accepted by the sampled operator
/// monotonicity check.
pub const OPERATOR_MONOTONE_MIN: f64 = -1e-8;

/// Kraus completeness `sum K†K = I`.
pub const KRAUS_COMPLETENESS: f64 = 1e-10;

/// Contraction check: `after <= before*(1+rel) + abs`.
pub const CONTRACTION_REL: f64 = 1e-8;
pub const CONTRACTION_ABS: f64 = 1e-10;

/// Output densities with smaller least eigenvalue are floored before the
/// contraction comparison, by mixing this much of the maximally mixed state.
pub const CHANNEL_FLOOR_TRIGGER: f64 = 1e-12;
pub const CHANNEL_FLOOR_DELTA: f64 = 1e-10;

/// Minimum eigenvalue accepted by the operator Schwarz inequality check.
pub const SCHWARZ_MIN: f64 = -1e-8;

/// Unitary invariance of metric values, relative.
pub const UNITARY_INVARIANCE_REL: f64 = 1e-9;

/// Unitarity of user-supplied conjugation matrices.
pub const UNITARY_INPUT: f64 = 1e-10;

/// SLD/RLD closed forms against the eigenbasis evaluator, relative.
pub const ORACLE_REL: f64 = 1e-10;

/// Extremal ordering slack `sld <= kind <= rld`, relative.
pub const ORDERING_REL: f64 = 1e-10;

/// Kubo-Mori quadrature against the eigenbasis value, relative.
pub const KM_QUADRATURE_REL: f64 = 1e-6;

/// Entropy-Hessian finite difference against the closed value, relative,
/// at the default step.
pub const HESSIAN_REL: f64 = 1e-4;
pub const ALPHA_HESSIAN_REL: f64 = 1e-3;
pub const FD_STEP_DEFAULT: f64 = 1e-4;

/// Eigenvalue gap below which spectra are treated as degenerate
/// (tangent decomposition, radial projection).
pub const DEGENERATE_GAP: f64 = 1e-8;

/// Constancy of the commutator-form ratio across states, relative.
pub const COMMUTATOR_RATIO_REL: f64 = 1e-9;

/// Bloch closed form against the general evaluator, relative.
pub const BLOCH_CROSSCHECK_REL: f64 = 1e-9;

/// Boundary limit: final relative error at the smallest epsilon, and the
/// blow-up factor over the Fubini-Study value that flags divergence.
pub const LIMIT_FINAL_REL: f64 = 1e-5;
pub const DIVERGENCE_FACTOR: f64 = 1e3;
/// A sequence whose last increment stays above this fraction of the value
/// has not settled; logarithmic divergence is caught this way.
pub const CAUCHY_INCREMENT_REL: f64 = 1e-3;

/// Column sums of classical stochastic matrices.
pub const STOCHASTIC_COLSUM: f64 = 1e-12;

/// Probability vectors: sum to one; simplex tangents: sum to zero.
pub const PROBABILITY_SUM: f64 = 1e-12;

/// Hellinger / geodesic identity on the simplex, absolute.
pub const HELLINGER_IDENTITY: f64 = 1e-12;

/// Diagonal embedding: quantum metric against the Fisher form, relative.
pub const DIAGONAL_CONSISTENCY_REL: f64 = 1e-10;
