//! Concurrence of a two-qubit state via the spin-flip construction.
//!
//! C = max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)) with l_i the
//! (descending) eigenvalues of rho * rho~ and rho~ the spin-flipped state.
//!
//! The sqrt(l_i) are computed directly as singular values of
//! M = sqrt(rho) (sigma_y (x) sigma_y) sqrt(rho)^*, since
//! M M^dag = sqrt(rho) rho~ sqrt(rho) shares its spectrum with rho rho~.
//! Going through a general eigensolver first and taking square roots after
//! would turn O(1e-17) float noise in the structurally-zero eigenvalues into
//! O(1e-9) error in C. The general-eigensolver route is still evaluated for
//! its diagnostics (imaginary residue, negativity) and as a live cross-check.

use num_complex::Complex64;

use crate::eigen::{eigenvalues_general, singular_values, sqrt_psd};
use crate::error::{Error, Result};
use crate::matrix::{pauli_y, ComplexMatrix};
use crate::unruh::DensityMatrix;

/// Largest tolerated |Im| among eigenvalues of rho * rho~.
pub const IMAG_RESIDUAL_TOL: f64 = 1e-9;
/// Eigenvalues in [-NEGATIVE_CLAMP, 0) are clamped to zero; below is an error.
pub const NEGATIVE_CLAMP: f64 = 1e-9;
/// Eigenvalues of rho below this are treated as exact zeros inside sqrt(rho).
const SQRT_RHO_CLAMP: f64 = 1e-14;
/// Agreement required between the two eigenvalue routes.
const ROUTE_AGREEMENT_TOL: f64 = 1e-6;

/// Concurrence plus the diagnostics that certify it.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcurrenceResult {
    /// C in [0, 1].
    pub concurrence: f64,
    /// Eigenvalues of rho * rho~, descending, clamped at zero.
    pub lambdas: [f64; 4],
    /// Largest imaginary part discarded from the general-eigensolver route.
    pub max_imag_residual: f64,
}

/// rho~ = (sigma_y (x) sigma_y) rho^* (sigma_y (x) sigma_y), with ^* the
/// entrywise conjugate.
pub fn spin_flip(rho: &DensityMatrix) -> ComplexMatrix {
    let yy = pauli_y().tensor(&pauli_y());
    &(&yy * &rho.matrix().conj()) * &yy
}

pub fn concurrence(rho: &DensityMatrix) -> Result<ConcurrenceResult> {
    let flipped = spin_flip(rho);
    let product = &(rho.matrix().clone()) * &flipped;

    // diagnostic route: general eigenvalues of the non-Hermitian product
    let general = eigenvalues_general(&product)?;
    let max_imag_residual = general.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if max_imag_residual > IMAG_RESIDUAL_TOL {
        return Err(Error::NumericalFailure(format!(
            "eigenvalue imaginary residual {max_imag_residual:.3e} exceeds {IMAG_RESIDUAL_TOL:.0e}"
        )));
    }
    let mut general_re: Vec<f64> = general.iter().map(|z| z.re).collect();
    for x in &mut general_re {
        if *x < -NEGATIVE_CLAMP {
            return Err(Error::NumericalFailure(format!(
                "eigenvalue {x:.3e} is negative beyond the {NEGATIVE_CLAMP:.0e} clamp"
            )));
        }
        *x = x.max(0.0);
    }
    general_re.sort_by(|a, b| b.total_cmp(a));

    // primary route: sqrt(l_i) as singular values of sqrt(rho) YY sqrt(rho)^*
    let s = sqrt_psd(rho.matrix(), SQRT_RHO_CLAMP)?;
    let yy = pauli_y().tensor(&pauli_y());
    let m = &(&s * &yy) * &s.conj();
    let sigma = singular_values(&m)?;
    let lambdas = [
        sigma[0] * sigma[0],
        sigma[1] * sigma[1],
        sigma[2] * sigma[2],
        sigma[3] * sigma[3],
    ];

    let route_dev = lambdas
        .iter()
        .zip(&general_re)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if route_dev > ROUTE_AGREEMENT_TOL {
        return Err(Error::NumericalFailure(format!(
            "eigenvalue routes disagree by {route_dev:.3e}"
        )));
    }

    let mut c = sigma[0] - sigma[1] - sigma[2] - sigma[3];
    c = c.max(0.0);
    if c > 1.0 + 1e-12 {
        return Err(Error::NumericalFailure(format!(
            "concurrence {c} exceeds 1 beyond roundoff"
        )));
    }
    Ok(ConcurrenceResult {
        concurrence: c.min(1.0),
        lambdas,
        max_imag_residual,
    })
}

/// Convenience wrapper when only the scalar is wanted.
pub fn concurrence_value(rho: &DensityMatrix) -> Result<f64> {
    Ok(concurrence(rho)?.concurrence)
}

#[allow(dead_code)]
fn complex(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}
