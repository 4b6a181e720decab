//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `h_pq` with a diagonal
//! unitary and then applies a real Givens rotation that annihilates the
//! (now real) off-diagonal pair. Sweeps continue until the off-diagonal
//! Frobenius mass drops below `1e-13 ‖H‖_F`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, Field};

/// Relative off-diagonal mass at which a sweep sequence is declared converged.
pub const JACOBI_REL_TOL: f64 = 1e-13;
/// Sweep budget before reporting [`Error::NoConvergence`].
pub const JACOBI_MAX_SWEEPS: usize = 64;

/// Default Hermiticity tolerance `1e-12 (1 + ‖H‖_F)`.
pub fn default_eig_tol(h: &CMatrix) -> f64 {
    1e-12 * (1.0 + h.frobenius_norm())
}

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct HermEigDecomp {
    pub values: Vec<f64>,
    /// Eigenvectors stored as columns, column `k` pairs with `values[k]`.
    pub vectors: CMatrix,
}

impl HermEigDecomp {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column_vec(k)
    }

    pub fn max_value(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn min_value(&self) -> f64 {
        self.values[0]
    }

    /// Columns whose eigenvalue lies within `gap` of `target`.
    pub fn eigenspace(&self, target: f64, gap: f64) -> Vec<Vec<Complex64>> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| (v - target).abs() <= gap)
            .map(|(k, _)| self.vector(k))
            .collect()
    }
}

/// Full eigensystem of a Hermitian matrix.
///
/// The input must be Hermitian within `eig_tol`; it is symmetrized before the
/// sweeps start.
pub fn herm_eig(h: &CMatrix, eig_tol: f64) -> Result<HermEigDecomp> {
    h.require_square()?;
    let asymmetry = h.hermitian_defect();
    if asymmetry > eig_tol {
        return Err(Error::NotHermitian {
            asymmetry,
            tol: eig_tol,
        });
    }
    let n = h.rows();
    let mut a = h.symmetrize().as_slice().to_vec();
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }
    jacobi(&mut a, n, Some(&mut v))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let values = order.iter().map(|&k| a[k * n + k].re).collect();
    let mut sorted = vec![Complex64::new(0.0, 0.0); n * n];
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            sorted[row * n + new_col] = v[row * n + old_col];
        }
    }
    let field = if h.is_real() { Field::Real } else { Field::Complex };
    let vectors = if field == Field::Real {
        // Rotations of a real symmetric matrix stay real up to signed zeros.
        for z in sorted.iter_mut() {
            z.im = 0.0;
        }
        CMatrix::from_parts(n, n, sorted, Field::Real)
    } else {
        CMatrix::from_parts(n, n, sorted, Field::Complex)
    };
    Ok(HermEigDecomp { values, vectors })
}

/// Ascending eigenvalues of a matrix already known to be Hermitian.
///
/// Uses closed forms for orders 1 and 2 and value-only Jacobi otherwise.
pub(crate) fn eigenvalues(h: &CMatrix) -> Result<Vec<f64>> {
    let n = h.rows();
    let s = h.as_slice();
    match n {
        1 => Ok(vec![s[0].re]),
        2 => {
            let (lo, hi) = eig2(s[0].re, s[3].re, s[1]);
            Ok(vec![lo, hi])
        }
        _ => {
            let mut a = s.to_vec();
            jacobi(&mut a, n, None)?;
            let mut values: Vec<f64> = (0..n).map(|k| a[k * n + k].re).collect();
            values.sort_by(f64::total_cmp);
            Ok(values)
        }
    }
}

/// Extreme eigenvalues `(λ_min, λ_max)` of a Hermitian matrix.
pub(crate) fn extreme_eigenvalues(h: &CMatrix) -> Result<(f64, f64)> {
    let values = eigenvalues(h)?;
    Ok((values[0], values[values.len() - 1]))
}

fn eig2(a: f64, b: f64, c: Complex64) -> (f64, f64) {
    let mean = 0.5 * (a + b);
    let radius = (0.5 * (a - b)).hypot(c.norm());
    (mean - radius, mean + radius)
}

fn off_diagonal_mass(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// In-place cyclic Jacobi on a row-major Hermitian `n x n` matrix. On return
/// the diagonal holds the eigenvalues; `v`, if given, is right-multiplied by
/// every rotation.
fn jacobi(a: &mut [Complex64], n: usize, mut v: Option<&mut [Complex64]>) -> Result<()> {
    let norm = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let target = JACOBI_REL_TOL * norm;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_mass(a, n) <= target {
            return Ok(());
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let hpq = a[p * n + q];
                let r = hpq.norm();
                if r == 0.0 {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                // Skip pivots that are negligible next to both diagonal entries.
                if r < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
                    a[p * n + q] = Complex64::new(0.0, 0.0);
                    a[q * n + p] = Complex64::new(0.0, 0.0);
                    continue;
                }
                let phase = hpq / r;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // U = diag(1, conj(phase)) * [[c, s], [-s, c]]
                let upp = Complex64::new(c, 0.0);
                let upq = Complex64::new(s, 0.0);
                let uqp = phase.conj() * (-s);
                let uqq = phase.conj() * c;

                for k in 0..n {
                    let xp = a[k * n + p];
                    let xq = a[k * n + q];
                    a[k * n + p] = xp * upp + xq * uqp;
                    a[k * n + q] = xp * upq + xq * uqq;
                }
                for k in 0..n {
                    let xp = a[p * n + k];
                    let xq = a[q * n + k];
                    a[p * n + k] = upp.conj() * xp + uqp.conj() * xq;
                    a[q * n + k] = upq.conj() * xp + uqq.conj() * xq;
                }
                a[p * n + p] = Complex64::new(app - t * r, 0.0);
                a[q * n + q] = Complex64::new(aqq + t * r, 0.0);
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);

                if let Some(v) = v.as_deref_mut() {
                    for k in 0..n {
                        let xp = v[k * n + p];
                        let xq = v[k * n + q];
                        v[k * n + p] = xp * upp + xq * uqp;
                        v[k * n + q] = xp * upq + xq * uqq;
                    }
                }
            }
        }
    }
    let off = off_diagonal_mass(a, n);
    if off <= target {
        Ok(())
    } else {
        Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
            off,
        })
    }
}
