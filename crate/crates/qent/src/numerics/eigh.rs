use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;
use crate::tol::{EIG_TOL, HERM_TOL};

const MAX_SWEEPS: usize = 100;

/// Result of a Hermitian eigendecomposition: real eigenvalues sorted
/// descending, matching orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct Eigh {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Eigh {
    /// Rebuild `V Λ V†` (used as the reconstruction check in tests).
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        ComplexMatrix::from_fn(n, n, |i, j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, &lambda) in self.eigenvalues.iter().enumerate() {
                acc += v[(i, k)] * lambda * v[(j, k)].conj();
            }
            acc
        })
    }
}

fn off_diagonal_norm(a: &ComplexMatrix, n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// The input must be Hermitian within [`HERM_TOL`]; it is symmetrized as
/// `(a + a†)/2` before iterating. Sweeps stop when the off-diagonal
/// Frobenius norm drops below [`EIG_TOL`] or after 100 sweeps. Quadratic
/// convergence makes the cap generous for the dimensions this crate
/// targets (≤ ~256).
pub fn eigh(a: &ComplexMatrix) -> Result<Eigh> {
    let n = a.dim()?;
    let defect = a.hermiticity_defect();
    if defect > HERM_TOL {
        return Err(Error::Domain(format!(
            "matrix is not Hermitian (defect {defect:.3e} > {HERM_TOL:.1e})"
        )));
    }

    // Symmetrize; diagonals become exactly real.
    let mut w = a.checked_add(&a.dagger())?.scale_re(0.5);
    let mut v = ComplexMatrix::identity(n);

    for _sweep in 0..MAX_SWEEPS {
        if off_diagonal_norm(&w, n) < EIG_TOL {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = w[(p, q)];
                let abs = apq.norm();
                if abs <= f64::MIN_POSITIVE {
                    continue;
                }
                let alpha = w[(p, p)].re;
                let gamma = w[(q, q)].re;
                let phase = Complex64::new(apq.re / abs, apq.im / abs);
                let tau = (gamma - alpha) / (2.0 * abs);
                let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = phase * (t * c);

                // w <- R† w R with R_pp = R_qq = c, R_pq = s, R_qp = -s̄.
                for k in 0..n {
                    let wkp = w[(k, p)];
                    let wkq = w[(k, q)];
                    w[(k, p)] = wkp * c - wkq * s.conj();
                    w[(k, q)] = wkp * s + wkq * c;
                }
                for k in 0..n {
                    let wpk = w[(p, k)];
                    let wqk = w[(q, k)];
                    w[(p, k)] = wpk * c - wqk * s;
                    w[(q, k)] = wpk * s.conj() + wqk * c;
                }
                // Rotations land tiny imaginary dust on the diagonal;
                // keep it exactly real so later reads stay clean.
                w[(p, p)] = Complex64::new(w[(p, p)].re, 0.0);
                w[(q, q)] = Complex64::new(w[(q, q)].re, 0.0);
                w[(p, q)] = Complex64::new(0.0, 0.0);
                w[(q, p)] = Complex64::new(0.0, 0.0);

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * s.conj();
                    v[(k, q)] = vkp * s + vkq * c;
                }
            }
        }
    }

    // Sort descending, permuting eigenvector columns along.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[(j, j)].re.total_cmp(&w[(i, i)].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| w[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);

    Ok(Eigh {
        eigenvalues,
        eigenvectors,
    })
}
