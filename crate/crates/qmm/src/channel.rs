//! Stochastic maps (trace-preserving completely positive) in Kraus form,
//! with the contraction and operator-inequality checks they must satisfy.

use nalgebra::DMatrix;

use crate::hermitian::{
    ginibre, validate_density, ComplexMatrix, DensityMatrix, HermitianMatrix, TangentVector, C64,
};
use crate::metric::{density_after_floor, metric_value};
use crate::omf::MonotoneKind;
use crate::{tol, Error, Result};

/// Trace-preserving completely positive map `M ↦ Σ K_i M K_i†` given by its
/// Kraus operators (`output_dim × input_dim` each).
#[derive(Debug, Clone)]
pub struct KrausChannel {
    n_in: usize,
    n_out: usize,
    kraus: Vec<ComplexMatrix>,
}

impl KrausChannel {
    /// Validate the completeness relation `Σ K_i† K_i = I` on the input
    /// space.
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::InvalidInput("channel needs Kraus operators".into()));
        }
        let n_out = kraus[0].nrows();
        let n_in = kraus[0].ncols();
        for k in &kraus {
            if k.nrows() != n_out || k.ncols() != n_in {
                return Err(Error::DimensionMismatch {
                    expected: n_in,
                    got: k.ncols(),
                });
            }
        }
        let mut sum = ComplexMatrix::zeros(n_in, n_in);
        for k in &kraus {
            sum += k.adjoint() * k;
        }
        let dev = (&sum - ComplexMatrix::identity(n_in, n_in)).norm();
        if dev > tol::KRAUS_COMPLETENESS {
            return Err(Error::NotTracePreserving(dev));
        }
        Ok(Self {
            n_in,
            n_out,
            kraus,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n_in: n,
            n_out: n,
            kraus: vec![ComplexMatrix::identity(n, n)],
        }
    }

    /// Single-Kraus channel from a unitary conjugation.
    pub fn unitary(u: &ComplexMatrix) -> Result<Self> {
        let n = u.nrows();
        let dev = (u.adjoint() * u - ComplexMatrix::identity(n, n)).norm();
        if dev > tol::UNITARY_INPUT {
            return Err(Error::NotUnitary(dev));
        }
        Ok(Self {
            n_in: n,
            n_out: n,
            kraus: vec![u.clone()],
        })
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn kraus_ops(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    /// Kraus sum on an arbitrary matrix.
    pub fn apply_matrix(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        if m.nrows() != self.n_in || m.ncols() != self.n_in {
            return Err(Error::DimensionMismatch {
                expected: self.n_in,
                got: m.nrows(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.n_out, self.n_out);
        for k in &self.kraus {
            out += k * m * k.adjoint();
        }
        Ok(out)
    }

    /// Kraus sum on a Hermitian matrix; preserves Hermiticity and trace.
    pub fn apply(&self, m: &HermitianMatrix) -> Result<HermitianMatrix> {
        Ok(HermitianMatrix::from_symmetric_parts(
            self.apply_matrix(m.as_matrix())?,
        ))
    }
}

/// Coarse-graining that erases all cross-block entries: Kraus operators are
/// the block projectors of the given partition.
pub fn pinching(block_sizes: &[usize]) -> Result<KrausChannel> {
    if block_sizes.is_empty() || block_sizes.contains(&0) {
        return Err(Error::BadPartition {
            expected: block_sizes.iter().sum(),
            got: 0,
        });
    }
    let n: usize = block_sizes.iter().sum();
    let mut kraus = Vec::with_capacity(block_sizes.len());
    let mut start = 0;
    for &b in block_sizes {
        let mut p = ComplexMatrix::zeros(n, n);
        for i in start..start + b {
            p[(i, i)] = C64::new(1.0, 0.0);
        }
        kraus.push(p);
        start += b;
    }
    KrausChannel::new(kraus)
}

/// Random channel by Stinespring sampling: orthonormalize an
/// `(n·env_dim) × n` Ginibre matrix into an isometry and slice it into
/// `env_dim` Kraus blocks. Deterministic in `(n, env_dim, seed)`.
pub fn random_channel(n: usize, env_dim: usize, seed: u64) -> Result<KrausChannel> {
    if env_dim == 0 {
        return Err(Error::Domain("env_dim must be >= 1".into()));
    }
    let g = ginibre(n * env_dim, n, seed);
    let q = g.qr().q();
    let kraus: Vec<ComplexMatrix> = (0..env_dim)
        .map(|i| q.view((i * n, 0), (n, n)).into_owned())
        .collect();
    KrausChannel::new(kraus)
}

/// Channel acting on diagonal densities as `p ↦ Π p` for a column-stochastic
/// `Π`; Kraus operators are `sqrt(Π_ij) E_ij` in the matrix units.
///
/// Off-diagonal entries are fully decohered, which is fine for the classical
/// tests that only feed diagonal states.
pub fn classical_stochastic(pi: &DMatrix<f64>) -> Result<KrausChannel> {
    let (m, n) = (pi.nrows(), pi.ncols());
    if m == 0 || n == 0 {
        return Err(Error::NotStochastic("empty matrix".into()));
    }
    for j in 0..n {
        let mut col_sum = 0.0;
        for i in 0..m {
            let e = pi[(i, j)];
            if !(e >= 0.0) {
                return Err(Error::NotStochastic(format!(
                    "negative entry {e} at ({i}, {j})"
                )));
            }
            col_sum += e;
        }
        if (col_sum - 1.0).abs() > tol::STOCHASTIC_COLSUM {
            return Err(Error::NotStochastic(format!(
                "column {j} sums to {col_sum}"
            )));
        }
    }
    let mut kraus = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            let w = pi[(i, j)];
            if w == 0.0 {
                continue;
            }
            let mut k = ComplexMatrix::zeros(m, n);
            k[(i, j)] = C64::new(w.sqrt(), 0.0);
            kraus.push(k);
        }
    }
    KrausChannel::new(kraus)
}

/// One contraction comparison `g_{T(D)}(T(A), T(A)) <= g_D(A, A)`.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ContractionReport {
    pub value_before: f64,
    pub value_after: f64,
    /// `value_before - value_after`.
    pub margin: f64,
    pub passed: bool,
    /// Output density was mixed toward `I/n` before comparison.
    pub floored: bool,
}

impl ContractionReport {
    pub fn passes_with(&self, rel: f64, abs: f64) -> bool {
        self.value_after <= self.value_before * (1.0 + rel) + abs
    }
}

/// Check the contraction inequality for one `(kind, channel, D, A)`.
///
/// Returns `Ok(None)` (a skip, not a failure) when the output state cannot
/// be validated as a strictly positive density even after flooring.
pub fn check_contraction(
    kind: MonotoneKind,
    ch: &KrausChannel,
    d: &DensityMatrix,
    a: &TangentVector,
) -> Result<Option<ContractionReport>> {
    if ch.n_in() != ch.n_out() {
        return Err(Error::DimensionMismatch {
            expected: ch.n_in(),
            got: ch.n_out(),
        });
    }
    if ch.n_in() != d.n() {
        return Err(Error::DimensionMismatch {
            expected: ch.n_in(),
            got: d.n(),
        });
    }
    let n = d.n();
    let before = metric_value(kind, d, a, a)?;

    let td_raw = ch.apply(d.matrix())?;
    let ta_raw = ch.apply(a.matrix())?;
    let min = td_raw.min_eigenvalue()?;
    let (td_mat, ta_mat, floored) = if min < tol::CHANNEL_FLOOR_TRIGGER {
        // Compose with a slight depolarizing so the output is invertible;
        // that composite is itself stochastic, so the inequality still must
        // hold, with the tangent scaled accordingly.
        let delta = tol::CHANNEL_FLOOR_DELTA;
        let floored_d = td_raw
            .scaled(1.0 - delta)
            .add(&HermitianMatrix::identity(n).scaled(delta / n as f64));
        (floored_d, ta_raw.scaled(1.0 - delta), true)
    } else {
        (td_raw, ta_raw, false)
    };
    let td = match density_after_floor(&td_mat, n) {
        Ok(td) => td,
        Err(_) => return Ok(None),
    };
    let ta = match TangentVector::new(ta_mat) {
        Ok(t) => t,
        Err(_) => return Ok(None),
    };
    let after = metric_value(kind, &td, &ta, &ta)?;
    let report = ContractionReport {
        value_before: before,
        value_after: after,
        margin: before - after,
        passed: after <= before * (1.0 + tol::CONTRACTION_REL) + tol::CONTRACTION_ABS,
        floored,
    };
    Ok(Some(report))
}

/// One operator Schwarz comparison
/// `T(K) T(D)⁻¹ T(K)† <= T(K D⁻¹ K†)`.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SchwarzReport {
    /// Least eigenvalue of the difference (right minus left).
    pub min_eigenvalue: f64,
    pub passed: bool,
}

impl SchwarzReport {
    pub fn passes_with(&self, min: f64) -> bool {
        self.min_eigenvalue >= min
    }
}

/// Check the operator Schwarz inequality for one `(channel, D, K)`.
/// Skips (returns `Ok(None)`) when `T(D)` is numerically singular.
pub fn check_schwarz(
    ch: &KrausChannel,
    d: &DensityMatrix,
    k: &ComplexMatrix,
) -> Result<Option<SchwarzReport>> {
    if ch.n_in() != d.n() || k.nrows() != d.n() || k.ncols() != d.n() {
        return Err(Error::DimensionMismatch {
            expected: d.n(),
            got: k.nrows(),
        });
    }
    let dinv = d.inverse();
    let right_arg = k * dinv.as_matrix() * k.adjoint();
    let right = ch.apply_matrix(&right_arg)?;

    let td = ch.apply(d.matrix())?;
    let sd = td.spectral_decompose()?;
    let td_min = *sd.eigenvalues.last().expect("nonempty spectrum");
    if td_min < tol::CHANNEL_FLOOR_TRIGGER {
        return Ok(None);
    }
    let inv_diag = ComplexMatrix::from_fn(ch.n_out(), ch.n_out(), |r, c| {
        if r == c {
            C64::new(1.0 / sd.eigenvalues[r], 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let td_inv = &sd.unitary * inv_diag * sd.unitary.adjoint();
    let tk = ch.apply_matrix(k)?;
    let left = &tk * td_inv * tk.adjoint();
    let diff = HermitianMatrix::from_symmetric_parts(right - left);
    let min_eigenvalue = diff.min_eigenvalue()?;
    Ok(Some(SchwarzReport {
        min_eigenvalue,
        passed: min_eigenvalue >= tol::SCHWARZ_MIN,
    }))
}

/// Metric agreement under a reversible (unitary) channel.
#[derive(Debug, Clone, serde::Serialize)]
pub struct InvarianceReport {
    pub value: f64,
    pub transformed: f64,
    pub rel_diff: f64,
    pub passed: bool,
}

/// Check `K_{UDU†}(UAU†, UAU†) = K_D(A, A)`.
pub fn check_unitary_invariance(
    kind: MonotoneKind,
    u: &ComplexMatrix,
    d: &DensityMatrix,
    a: &TangentVector,
) -> Result<InvarianceReport> {
    let n = d.n();
    if u.nrows() != n || u.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: u.nrows(),
        });
    }
    let dev = (u.adjoint() * u - ComplexMatrix::identity(n, n)).norm();
    if dev > tol::UNITARY_INPUT {
        return Err(Error::NotUnitary(dev));
    }
    let value = metric_value(kind, d, a, a)?;
    let d2 = validate_density(&(u * d.matrix().as_matrix() * u.adjoint()), 0.0)?;
    let a2 = TangentVector::new(HermitianMatrix::from_symmetric_parts(
        u * a.as_matrix() * u.adjoint(),
    ))?;
    let transformed = metric_value(kind, &d2, &a2, &a2)?;
    let rel_diff = (transformed - value).abs() / value.abs().max(1e-300);
    Ok(InvarianceReport {
        value,
        transformed,
        rel_diff,
        passed: rel_diff <= tol::UNITARY_INVARIANCE_REL,
    })
}
