//! Qubit state space in Stokes coordinates.
//!
//! `D_x = ½(I + x·σ)` identifies the 2×2 densities with the closed unit
//! ball. Every monotone line element is rotation invariant and splits as
//!
//! ```text
//! ds² = dr²/(1-r²) + (1/(1+r)) g((1-r)/(1+r)) dn²,    g = 1/f,
//! ```
//!
//! with the radial part independent of `f`. The closed form is checked
//! against the general evaluator on the polar axis; rotation invariance
//! transports the check everywhere.

use nalgebra::DMatrix;

use crate::hermitian::{DensityMatrix, HermitianMatrix, TangentVector, C64};
use crate::metric::metric_value;
use crate::omf::{eval_f, f_at_zero, MonotoneKind};
use crate::{Error, Result};

pub fn sigma_x() -> HermitianMatrix {
    let m = DMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
        ],
    );
    HermitianMatrix::from_symmetric_parts(m)
}

pub fn sigma_y() -> HermitianMatrix {
    let m = DMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(0.0, 0.0),
            C64::new(0.0, -1.0),
            C64::new(0.0, 1.0),
            C64::new(0.0, 0.0),
        ],
    );
    HermitianMatrix::from_symmetric_parts(m)
}

pub fn sigma_z() -> HermitianMatrix {
    HermitianMatrix::from_real_diagonal(&[1.0, -1.0])
}

/// Stokes parameters of a qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StokesVector {
    pub x: [f64; 3],
}

impl StokesVector {
    pub fn new(x: [f64; 3]) -> Self {
        Self { x }
    }

    pub fn r(&self) -> f64 {
        (self.x[0] * self.x[0] + self.x[1] * self.x[1] + self.x[2] * self.x[2]).sqrt()
    }
}

/// `½(I + x·σ)`; eigenvalues `(1 ± r)/2`, so the interior of the ball maps
/// to the invertible densities.
pub fn density_from_stokes(v: &StokesVector) -> Result<DensityMatrix> {
    let r = v.r();
    if !(r < 1.0) {
        return Err(Error::Domain(format!(
            "Stokes vector must lie strictly inside the unit ball, |x| = {r}"
        )));
    }
    let [x1, x2, x3] = v.x;
    let m = DMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(0.5 * (1.0 + x3), 0.0),
            C64::new(0.5 * x1, -0.5 * x2),
            C64::new(0.5 * x1, 0.5 * x2),
            C64::new(0.5 * (1.0 - x3), 0.0),
        ],
    );
    crate::hermitian::validate_density(&m, 0.0)
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("radius must lie in (0, 1), got {r}")));
    }
    Ok(())
}

/// Radial coefficient `1/(1-r²)`; the same for every kind.
pub fn radial_coefficient(r: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(1.0 / (1.0 - r * r))
}

/// Tangential coefficient `(1/(1+r)) · 1/f((1-r)/(1+r))`.
pub fn tangential_coefficient(kind: MonotoneKind, r: f64) -> Result<f64> {
    check_radius(r)?;
    let t = (1.0 - r) / (1.0 + r);
    Ok(1.0 / ((1.0 + r) * eval_f(kind, t)?))
}

/// Line element `ds² = dr²/(1-r²) + tangential(r) · dn²`.
pub fn line_element(kind: MonotoneKind, r: f64, dr: f64, dn: f64) -> Result<f64> {
    Ok(radial_coefficient(r)? * dr * dr + tangential_coefficient(kind, r)? * dn * dn)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Radial,
    Tangential,
}

/// General evaluator vs. the closed form at `x = (0, 0, r)`.
///
/// Unit `dr` is the tangent `½σ₃`, unit `dn` is `½σ₁`; with these
/// normalizations the two routes must agree.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BlochCrosscheck {
    pub general: f64,
    pub formula: f64,
    pub rel_diff: f64,
}

pub fn crosscheck_bloch(kind: MonotoneKind, r: f64, dir: Direction) -> Result<BlochCrosscheck> {
    if !(r > 1e-3 && r < 1.0 - 1e-3) {
        return Err(Error::Domain(format!(
            "crosscheck radius must lie in (1e-3, 1 - 1e-3), got {r}"
        )));
    }
    // The polar-axis state is diagonal; building it from probabilities keeps
    // the eigenbasis exact.
    let d = DensityMatrix::from_probabilities(&[0.5 * (1.0 + r), 0.5 * (1.0 - r)], 0.0)?;
    let (tangent, formula) = match dir {
        Direction::Radial => (
            TangentVector::new(sigma_z().scaled(0.5))?,
            radial_coefficient(r)?,
        ),
        Direction::Tangential => (
            TangentVector::new(sigma_x().scaled(0.5))?,
            tangential_coefficient(kind, r)?,
        ),
    };
    let general = metric_value(kind, &d, &tangent, &tangent)?;
    let rel_diff = (general - formula).abs() / formula.abs().max(1e-300);
    Ok(BlochCrosscheck {
        general,
        formula,
        rel_diff,
    })
}

/// Behaviour of the tangential coefficient at the pure-state rim `r → 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TangentialLimit {
    /// `1/(2 f(0))` when `f(0) ≠ 0`.
    Finite(f64),
    Divergent,
}

pub fn tangential_limit(kind: MonotoneKind) -> Result<TangentialLimit> {
    kind.validate()?;
    let f0 = f_at_zero(kind);
    if f0 != 0.0 {
        Ok(TangentialLimit::Finite(1.0 / (2.0 * f0)))
    } else {
        Ok(TangentialLimit::Divergent)
    }
}

/// Rotation axis for the coordinate rotations of the ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// SU(2) element implementing the rotation of the Stokes ball by `angle`
/// about a coordinate axis: `U = cos(θ/2) I - i sin(θ/2) σ_axis`.
pub fn rotation_unitary(axis: Axis, angle: f64) -> DMatrix<C64> {
    let c = (0.5 * angle).cos();
    let s = (0.5 * angle).sin();
    let sigma = match axis {
        Axis::X => sigma_x(),
        Axis::Y => sigma_y(),
        Axis::Z => sigma_z(),
    };
    DMatrix::identity(2, 2) * C64::new(c, 0.0) + sigma.as_matrix() * C64::new(0.0, -s)
}
