//! Initial shared state of the inertial/accelerated observer pair.
//!
//! The maximally entangled two-mode state, viewed with the accelerated
//! observer's modes restricted to the causally connected wedge, becomes the
//! mixed 4x4 state built by [`unruh_density_matrix`]. The acceleration enters
//! through a single dimensionless angle r in [0, pi/4] with
//! cos r = (e^{-2 pi omega c / a} + 1)^{-1/2}.

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;

use crate::eigen::eigenvalues_hermitian;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Physical inputs for the acceleration-to-angle conversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccelerationInput {
    /// Dirac particle frequency (rad/s).
    pub omega: f64,
    /// Speed of light (m/s).
    pub c: f64,
    /// Proper acceleration (m/s^2).
    pub a: f64,
}

impl AccelerationInput {
    pub fn new(omega: f64, c: f64, a: f64) -> Result<Self> {
        for (name, value) in [("omega", omega), ("c", c), ("a", a)] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::ParamOutOfRange {
                    name,
                    value,
                    min: 0.0,
                    max: f64::INFINITY,
                });
            }
        }
        Ok(Self { omega, c, a })
    }
}

/// Dimensionless acceleration angle, 0 <= r <= pi/4.
///
/// r = 0 is the inertial limit, r = pi/4 the infinite-acceleration limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnruhParam {
    r: f64,
}

impl UnruhParam {
    /// Accepts r in [0, pi/4] with a 1e-12 slack for grid-rounding at the
    /// upper endpoint.
    pub fn new(r: f64) -> Result<Self> {
        if !r.is_finite() || r < 0.0 || r > FRAC_PI_4 + 1e-12 {
            return Err(Error::ParamOutOfRange {
                name: "r",
                value: r,
                min: 0.0,
                max: FRAC_PI_4,
            });
        }
        Ok(Self {
            r: r.min(FRAC_PI_4),
        })
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

/// r = arccos((e^{-2 pi omega c / a} + 1)^{-1/2}).
///
/// The exponential underflows to 0 as a -> 0+, which lands exactly on the
/// inertial limit r = 0; a -> infinity approaches r = pi/4 from below.
pub fn unruh_param_from_acceleration(inp: &AccelerationInput) -> UnruhParam {
    let exponent = -2.0 * std::f64::consts::PI * inp.omega * inp.c / inp.a;
    let cos_r = (exponent.exp() + 1.0).powf(-0.5);
    UnruhParam::new(cos_r.clamp(-1.0, 1.0).acos())
        .expect("arccos of a value in [2^-1/2, 1] lies in [0, pi/4]")
}

/// Validated 4x4 two-qubit state: Hermitian, unit trace, positive
/// semidefinite (up to the stated float tolerances).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

pub const DM_HERMITICITY_TOL: f64 = 1e-12;
pub const DM_TRACE_TOL: f64 = 1e-12;
pub const DM_EIGENVALUE_FLOOR: f64 = -1e-10;

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if mat.rows() != 4 || mat.cols() != 4 {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("expected 4x4, got {}x{}", mat.rows(), mat.cols()),
            });
        }
        let herm = mat.hermiticity_residual()?;
        if !(herm <= DM_HERMITICITY_TOL) {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("Hermiticity residual {herm:.3e}"),
            });
        }
        let tr = mat.trace();
        let tr_res = (tr - Complex64::new(1.0, 0.0)).norm();
        if !(tr_res <= DM_TRACE_TOL) {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("trace residual {tr_res:.3e}"),
            });
        }
        let min_eig = eigenvalues_hermitian(&mat)?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if !(min_eig >= DM_EIGENVALUE_FLOOR) {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("minimum eigenvalue {min_eig:.3e}"),
            });
        }
        Ok(Self { mat })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn trace_residual(&self) -> f64 {
        (self.mat.trace() - Complex64::new(1.0, 0.0)).norm()
    }

    pub fn hermiticity_residual(&self) -> f64 {
        self.mat.hermiticity_residual().expect("4x4 is square")
    }

    pub fn min_eigenvalue(&self) -> f64 {
        eigenvalues_hermitian(&self.mat)
            .expect("density matrix is Hermitian")
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    }
}

/// The shared state after restricting the accelerated observer to wedge-I
/// modes:
///
///   rho = 1/2 [ cos^2 r |00><00| + cos r (|00><11| + |11><00|)
///               + sin^2 r |01><01| + |11><11| ]
pub fn unruh_density_matrix(r: &UnruhParam) -> DensityMatrix {
    let (c, s) = (r.r().cos(), r.r().sin());
    let mut m = ComplexMatrix::zeros(4, 4);
    m = &m + &ComplexMatrix::basis_outer(4, 0, 0).scale_re(0.5 * c * c);
    m = &m + &ComplexMatrix::basis_outer(4, 0, 3).scale_re(0.5 * c);
    m = &m + &ComplexMatrix::basis_outer(4, 3, 0).scale_re(0.5 * c);
    m = &m + &ComplexMatrix::basis_outer(4, 1, 1).scale_re(0.5 * s * s);
    m = &m + &ComplexMatrix::basis_outer(4, 3, 3).scale_re(0.5);
    DensityMatrix::new(m).expect("construction satisfies the invariants for r in [0, pi/4]")
}
