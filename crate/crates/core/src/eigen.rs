//! Eigenvalue kernels for the small matrices this crate works with.
//!
//! Two independent routes are kept on purpose so they can cross-validate
//! each other:
//!   - [`eigenvalues_hermitian`]: cyclic complex Jacobi rotations,
//!   - [`eigenvalues_general`]: Householder Hessenberg reduction followed by
//!     explicitly shifted QR (Wilkinson shifts, bottom deflation).
//!
//! [`singular_values`] reuses the Jacobi kernel through the Jordan-Wielandt
//! embedding [[0, A], [A^dag, 0]], whose eigenvalues are exactly the pairs
//! +/- sigma_i(A). That keeps small singular values at absolute accuracy
//! ~eps*||A|| instead of the sqrt(eps) loss of forming A^dag A.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

const HERMITICITY_TOL: f64 = 1e-10;
const MAX_JACOBI_SWEEPS: usize = 64;

fn require_square(a: &ComplexMatrix) -> Result<usize> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    Ok(a.rows())
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
///
/// Rejects inputs whose Hermiticity residual exceeds 1e-10.
pub fn eigenvalues_hermitian(a: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(a)?.0)
}

/// Full Hermitian eigendecomposition a = V diag(w) V^dag with eigenvalues
/// descending and V's columns the matching orthonormal eigenvectors.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = require_square(a)?;
    let residual = a.hermiticity_residual()?;
    if residual > HERMITICITY_TOL {
        return Err(Error::NotHermitian {
            residual,
            tol: HERMITICITY_TOL,
        });
    }
    // symmetrize away the (tolerated) residual before iterating
    let h = ComplexMatrix::from_fn(n, n, |i, j| (a.get(i, j) + a.get(j, i).conj()) * 0.5);
    let (mut w, v) = jacobi(&h);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[j].total_cmp(&w[i]));
    w = order.iter().map(|&i| w[i]).collect();
    let vs = ComplexMatrix::from_fn(n, n, |i, j| v.get(i, order[j]));
    Ok((w, vs))
}

/// Cyclic complex Jacobi; returns (unsorted eigenvalues, accumulated V).
fn jacobi(h: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let n = h.rows();
    let mut a: Vec<Vec<Complex64>> =
        (0..n).map(|i| (0..n).map(|j| h.get(i, j)).collect()).collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect();
    let scale = h.max_abs().max(f64::MIN_POSITIVE);
    let stop = scale * 1e-15;

    for _ in 0..MAX_JACOBI_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off = off.max(a[p][q].norm());
            }
        }
        if off <= stop {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let beta = a[p][q];
                let babs = beta.norm();
                if babs <= stop * 1e-2 {
                    continue;
                }
                let phase = beta / babs;
                let alpha = a[p][p].re;
                let gamma = a[q][q].re;
                // Rutishauser rotation for the phase-stripped real block
                let zeta = (gamma - alpha) / (2.0 * babs);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let sp = phase * s; // s * e^{i theta}
                let spc = sp.conj();

                // A <- U^dag A U with U = [[c, sp],[-conj(sp), c]] in (p,q)
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = akp * c - akq * spc;
                    a[k][q] = akp * sp + akq * c;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = apk * c - aqk * sp;
                    a[q][k] = apk * spc + aqk * c;
                }
                a[p][q] = Complex64::new(0.0, 0.0);
                a[q][p] = Complex64::new(0.0, 0.0);
                a[p][p] = Complex64::new(a[p][p].re, 0.0);
                a[q][q] = Complex64::new(a[q][q].re, 0.0);
                for k in 0..n {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = vkp * c - vkq * spc;
                    v[k][q] = vkp * sp + vkq * c;
                }
            }
        }
    }

    let w: Vec<f64> = (0..n).map(|i| a[i][i].re).collect();
    let vm = ComplexMatrix::from_fn(n, n, |i, j| v[i][j]);
    (w, vm)
}

/// Hermitian PSD square root. Eigenvalues below `clamp` are treated as
/// exact zeros; eigenvalues below -1e-9 are rejected as non-PSD.
pub fn sqrt_psd(a: &ComplexMatrix, clamp: f64) -> Result<ComplexMatrix> {
    let n = require_square(a)?;
    let (w, v) = hermitian_eigen(a)?;
    let mut roots = Vec::with_capacity(n);
    for &x in &w {
        if x < -1e-9 {
            return Err(Error::NumericalFailure(format!(
                "sqrt_psd: eigenvalue {x:.3e} is negative beyond tolerance"
            )));
        }
        roots.push(if x < clamp { 0.0 } else { x.sqrt() });
    }
    // V diag(sqrt w) V^dag
    let d = ComplexMatrix::real_diag(&roots);
    Ok(&(&v * &d) * &v.dagger())
}

/// Singular values, sorted descending, via the Hermitian Jordan-Wielandt
/// embedding.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    let (r, c) = (a.rows(), a.cols());
    let n = r + c;
    let j = ComplexMatrix::from_fn(n, n, |i, k| {
        if i < r && k >= r {
            a.get(i, k - r)
        } else if i >= r && k < r {
            a.get(k, i - r).conj()
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let w = eigenvalues_hermitian(&j)?;
    Ok(w.into_iter().take(r.min(c)).map(|x| x.max(0.0)).collect())
}

/// Eigenvalues of a general (possibly non-Hermitian) square complex matrix,
/// sorted by descending real part, then descending imaginary part.
pub fn eigenvalues_general(a: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = require_square(a)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h: Vec<Vec<Complex64>> =
        (0..n).map(|i| (0..n).map(|j| a.get(i, j)).collect()).collect();
    if n > 2 {
        hessenberg(&mut h);
    }
    let mut eigs = qr_eigenvalues(&mut h)?;
    eigs.sort_by(|x, y| y.re.total_cmp(&x.re).then(y.im.total_cmp(&x.im)));
    Ok(eigs)
}

/// In-place reduction to upper Hessenberg form by complex Householder
/// reflectors.
fn hessenberg(h: &mut [Vec<Complex64>]) {
    let n = h.len();
    for k in 0..n - 2 {
        let m = n - k - 1; // length of the column tail below the diagonal
        let mut x: Vec<Complex64> = (0..m).map(|i| h[k + 1 + i][k]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = x[0];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * xnorm;
        x[0] -= alpha;
        let vnorm2: f64 = x.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;
        let v = x;

        // left: H <- (I - beta v v^dag) H on rows k+1..n
        for j in 0..n {
            let t: Complex64 = (0..m).map(|i| v[i].conj() * h[k + 1 + i][j]).sum();
            let bt = t * beta;
            for i in 0..m {
                h[k + 1 + i][j] -= v[i] * bt;
            }
        }
        // right: H <- H (I - beta v v^dag) on columns k+1..n
        for i in 0..n {
            let t: Complex64 = (0..m).map(|j| h[i][k + 1 + j] * v[j]).sum();
            let bt = t * beta;
            for j in 0..m {
                h[i][k + 1 + j] -= bt * v[j].conj();
            }
        }
        h[k + 1][k] = alpha;
        for i in k + 2..n {
            h[i][k] = Complex64::new(0.0, 0.0);
        }
    }
}

fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let m = (a + d) * 0.5;
    let det = a * d - b * c;
    let disc = (m * m - det).sqrt();
    let q = if (m.conj() * disc).re < 0.0 { -disc } else { disc };
    let l1 = m + q;
    // the second root via det/l1 stays accurate when it is tiny
    let l2 = if l1.norm() > 0.0 { det / l1 } else { m - q };
    (l1, l2)
}

/// Givens pair (c real, s complex) with [[c, s],[-conj(s), c]] (f,g)^T = (r,0)^T.
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    let gn = g.norm();
    if gn == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    let fn_ = f.norm();
    let d = (fn_ * fn_ + gn * gn).sqrt();
    if fn_ == 0.0 {
        return (0.0, g.conj() / gn);
    }
    let fs = f / fn_;
    (fn_ / d, fs * g.conj() / d)
}

fn qr_eigenvalues(h: &mut Vec<Vec<Complex64>>) -> Result<Vec<Complex64>> {
    let n = h.len();
    let mut eigs: Vec<Complex64> = Vec::with_capacity(n);
    if n == 1 {
        return Ok(vec![h[0][0]]);
    }

    let negligible = |h: &[Vec<Complex64>], m: usize| -> bool {
        let thr = f64::EPSILON * (h[m - 1][m - 1].norm() + h[m][m].norm());
        h[m][m - 1].norm() <= thr.max(f64::MIN_POSITIVE)
    };

    let mut hi = n - 1;
    let mut stuck = 0usize;
    let mut budget = 60 * n;
    loop {
        // deflate converged eigenvalues off the bottom
        loop {
            if hi == 0 {
                eigs.push(h[0][0]);
                return Ok(eigs);
            }
            if negligible(h, hi) {
                eigs.push(h[hi][hi]);
                hi -= 1;
                stuck = 0;
                continue;
            }
            if hi == 1 || negligible(h, hi - 1) {
                // isolated trailing 2x2 block
                let (l1, l2) = eig2(
                    h[hi - 1][hi - 1],
                    h[hi - 1][hi],
                    h[hi][hi - 1],
                    h[hi][hi],
                );
                eigs.push(l1);
                eigs.push(l2);
                if hi == 1 {
                    return Ok(eigs);
                }
                hi -= 2;
                stuck = 0;
                continue;
            }
            break;
        }

        if budget == 0 {
            return Err(Error::NumericalFailure(
                "QR iteration did not converge".into(),
            ));
        }
        budget -= 1;
        stuck += 1;

        // active window [lo, hi]
        let mut lo = 0;
        for m in (1..=hi).rev() {
            if negligible(h, m) {
                lo = m;
                break;
            }
        }

        let shift = if stuck % 12 == 0 {
            // exceptional shift to break symmetric stalls
            Complex64::new(
                h[hi][hi - 1].norm() + if hi >= 2 { h[hi - 1][hi - 2].norm() } else { 0.0 },
                0.0,
            )
        } else {
            let (l1, l2) = eig2(
                h[hi - 1][hi - 1],
                h[hi - 1][hi],
                h[hi][hi - 1],
                h[hi][hi],
            );
            let d = h[hi][hi];
            if (l1 - d).norm() <= (l2 - d).norm() {
                l1
            } else {
                l2
            }
        };

        for i in lo..=hi {
            h[i][i] -= shift;
        }
        let mut rots: Vec<(f64, Complex64)> = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(h[k][k], h[k + 1][k]);
            rots.push((c, s));
            for j in k..=hi {
                let x = h[k][j];
                let y = h[k + 1][j];
                h[k][j] = x * c + y * s;
                h[k + 1][j] = -x * s.conj() + y * c;
            }
        }
        for (k, (c, s)) in rots.into_iter().enumerate() {
            let k = lo + k;
            for i in lo..=hi {
                let x = h[i][k];
                let y = h[i][k + 1];
                h[i][k] = x * c + y * s.conj();
                h[i][k + 1] = -x * s + y * c;
            }
        }
        for i in lo..=hi {
            h[i][i] += shift;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{pauli_y, pauli_z};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hermitian_diag_cases() {
        let d = ComplexMatrix::real_diag(&[0.5, 0.5, 0.0, 0.0]);
        assert_eq!(eigenvalues_hermitian(&d).unwrap(), vec![0.5, 0.5, 0.0, 0.0]);
    }

    #[test]
    fn hermitian_bell_state_is_pure() {
        // (|00>+|11>)(<00|+<11|)/2
        let mut rho = ComplexMatrix::zeros(4, 4);
        rho = &rho + &ComplexMatrix::basis_outer(4, 0, 0).scale_re(0.5);
        rho = &rho + &ComplexMatrix::basis_outer(4, 0, 3).scale_re(0.5);
        rho = &rho + &ComplexMatrix::basis_outer(4, 3, 0).scale_re(0.5);
        rho = &rho + &ComplexMatrix::basis_outer(4, 3, 3).scale_re(0.5);
        let w = eigenvalues_hermitian(&rho).unwrap();
        let expect = [1.0, 0.0, 0.0, 0.0];
        for (a, b) in w.iter().zip(expect) {
            assert!((a - b).abs() < 1e-14, "{w:?}");
        }
    }

    #[test]
    fn hermitian_rejects_non_hermitian() {
        let a = ComplexMatrix::basis_outer(2, 0, 1);
        assert!(matches!(
            eigenvalues_hermitian(&a),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn hermitian_pauli_y() {
        let w = eigenvalues_hermitian(&pauli_y()).unwrap();
        assert!((w[0] - 1.0).abs() < 1e-15 && (w[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn eigenvector_reconstruction() {
        let a = ComplexMatrix::new(
            3,
            3,
            vec![
                c(2.0, 0.0),
                c(0.3, 0.4),
                c(0.0, -0.2),
                c(0.3, -0.4),
                c(1.0, 0.0),
                c(0.1, 0.0),
                c(0.0, 0.2),
                c(0.1, 0.0),
                c(-0.5, 0.0),
            ],
        )
        .unwrap();
        let (w, v) = hermitian_eigen(&a).unwrap();
        let rebuilt = &(&v * &ComplexMatrix::real_diag(&w)) * &v.dagger();
        assert!(a.max_abs_diff(&rebuilt) < 1e-13);
        let vv = &v.dagger() * &v;
        assert!(vv.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-13);
    }

    #[test]
    fn general_identity_and_diag() {
        let w = eigenvalues_general(&ComplexMatrix::identity(4)).unwrap();
        for x in &w {
            assert!((x - c(1.0, 0.0)).norm() < 1e-14);
        }
        let d = ComplexMatrix::real_diag(&[4.0, 3.0, 2.0, 1.0]);
        let w = eigenvalues_general(&d).unwrap();
        for (x, e) in w.iter().zip([4.0, 3.0, 2.0, 1.0]) {
            assert!((x - c(e, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn general_handles_nilpotent_and_rotation() {
        // defective: [[0,1],[0,0]]
        let a = ComplexMatrix::basis_outer(2, 0, 1);
        for x in eigenvalues_general(&a).unwrap() {
            assert!(x.norm() < 1e-12);
        }
        // real rotation block has eigenvalues +/- i
        let rot = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        let w = eigenvalues_general(&rot).unwrap();
        assert!((w[0] - c(0.0, 1.0)).norm() < 1e-14);
        assert!((w[1] - c(0.0, -1.0)).norm() < 1e-14);
    }

    #[test]
    fn general_matches_hermitian_route() {
        let a = ComplexMatrix::new(
            4,
            4,
            vec![
                c(1.0, 0.0),
                c(0.2, 0.5),
                c(-0.1, 0.0),
                c(0.0, 0.3),
                c(0.2, -0.5),
                c(-2.0, 0.0),
                c(0.4, 0.0),
                c(0.0, 0.0),
                c(-0.1, 0.0),
                c(0.4, 0.0),
                c(0.7, 0.0),
                c(0.6, -0.1),
                c(0.0, -0.3),
                c(0.0, 0.0),
                c(0.6, 0.1),
                c(0.05, 0.0),
            ],
        )
        .unwrap();
        let wh = eigenvalues_hermitian(&a).unwrap();
        let wg = eigenvalues_general(&a).unwrap();
        for (x, y) in wg.iter().zip(wh) {
            assert!((x.re - y).abs() < 1e-9 && x.im.abs() < 1e-9);
        }
    }

    #[test]
    fn general_recovers_4x4_with_known_spectrum() {
        // upper triangular: spectrum is the diagonal
        let t = ComplexMatrix::new(
            4,
            4,
            vec![
                c(2.0, 1.0),
                c(3.0, 0.0),
                c(0.5, -2.0),
                c(0.0, 1.0),
                c(0.0, 0.0),
                c(-1.0, 0.5),
                c(4.0, 0.0),
                c(1.0, 1.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.25, -0.75),
                c(2.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(-0.5, -1.5),
            ],
        )
        .unwrap();
        let mut expect = vec![c(2.0, 1.0), c(-1.0, 0.5), c(0.25, -0.75), c(-0.5, -1.5)];
        expect.sort_by(|x, y| y.re.total_cmp(&x.re).then(y.im.total_cmp(&x.im)));
        let w = eigenvalues_general(&t).unwrap();
        for (x, e) in w.iter().zip(expect) {
            assert!((x - e).norm() < 1e-12, "{w:?}");
        }
    }

    #[test]
    fn sqrt_psd_squares_back() {
        let zz = pauli_z().tensor(&pauli_z());
        // 0.6*|phi+><phi+| + 0.4*I/4 style mix, built to be PSD
        let mut rho = ComplexMatrix::identity(4).scale_re(0.1);
        rho = &rho + &ComplexMatrix::basis_outer(4, 0, 0).scale_re(0.3);
        rho = &rho + &ComplexMatrix::basis_outer(4, 3, 3).scale_re(0.3);
        rho = &rho + &ComplexMatrix::basis_outer(4, 0, 3).scale_re(0.3);
        rho = &rho + &ComplexMatrix::basis_outer(4, 3, 0).scale_re(0.3);
        let _ = zz;
        let s = sqrt_psd(&rho, 1e-14).unwrap();
        assert!((&s * &s).max_abs_diff(&rho) < 1e-13);
        assert!(s.hermiticity_residual().unwrap() < 1e-13);
    }

    #[test]
    fn sqrt_psd_rejects_indefinite() {
        let a = ComplexMatrix::real_diag(&[1.0, -0.5]);
        assert!(sqrt_psd(&a, 1e-14).is_err());
    }

    #[test]
    fn singular_values_of_diag_and_jordan() {
        let d = ComplexMatrix::real_diag(&[-3.0, 2.0, 0.0, 1.0]);
        let s = singular_values(&d).unwrap();
        assert_eq!(s.len(), 4);
        for (x, e) in s.iter().zip([3.0, 2.0, 1.0, 0.0]) {
            assert!((x - e).abs() < 1e-13);
        }
        let jb = ComplexMatrix::basis_outer(2, 0, 1).scale_re(2.0);
        let s = singular_values(&jb).unwrap();
        assert!((s[0] - 2.0).abs() < 1e-14 && s[1].abs() < 1e-14);
    }
}
