//! Cyclic Jacobi eigenvalue solver for real symmetric matrices, and a
//! Hermitian wrapper through the real embedding `[[Re, -Im], [Im, Re]]`.
//!
//! Used only as a floating-point oracle against the exact spectra.

use num_traits::Float;

use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 100;

fn off_norm<F: Float>(a: &[F], n: usize) -> F {
    let mut sum = F::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum = sum + a[i * n + j] * a[i * n + j];
            }
        }
    }
    sum.sqrt()
}

/// Eigenvalues of the symmetric `n x n` row-major matrix `a`, ascending.
///
/// Iterates full cyclic sweeps until the off-diagonal Frobenius norm drops
/// below `tol`; fails after `max_sweeps`.
pub fn symmetric_eigenvalues<F: Float>(
    a: &[F],
    n: usize,
    tol: F,
    max_sweeps: usize,
) -> Result<Vec<F>> {
    assert_eq!(a.len(), n * n, "matrix must be n x n");
    let mut a = a.to_vec();
    let two = F::one() + F::one();
    let mut converged = off_norm(&a, n) < tol;
    let mut sweeps = 0;
    while !converged {
        if sweeps == max_sweeps {
            return Err(Error::Oracle(format!(
                "Jacobi did not converge after {max_sweeps} sweeps (off-diagonal norm {:e})",
                off_norm(&a, n).to_f64().unwrap_or(f64::NAN)
            )));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == F::zero() {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (two * apq);
                let t = {
                    let t = F::one() / (theta.abs() + (theta * theta + F::one()).sqrt());
                    if theta < F::zero() {
                        -t
                    } else {
                        t
                    }
                };
                let c = F::one() / (t * t + F::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    a[k * n + p] = new_kp;
                    a[p * n + k] = new_kp;
                    a[k * n + q] = new_kq;
                    a[q * n + k] = new_kq;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = F::zero();
                a[q * n + p] = F::zero();
            }
        }
        sweeps += 1;
        converged = off_norm(&a, n) < tol;
    }
    let mut eig: Vec<F> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    Ok(eig)
}

/// Eigenvalues of the Hermitian matrix `re + i im`, ascending.
///
/// The `2n x 2n` embedding doubles every eigenvalue; sorted neighbours are
/// paired and must agree within `pair_tol`.
pub fn hermitian_eigenvalues<F: Float>(
    re: &[F],
    im: &[F],
    n: usize,
    tol: F,
    pair_tol: F,
) -> Result<Vec<F>> {
    assert_eq!(re.len(), n * n);
    assert_eq!(im.len(), n * n);
    let m = 2 * n;
    let mut big = vec![F::zero(); m * m];
    for i in 0..n {
        for j in 0..n {
            let (r, c) = (re[i * n + j], im[i * n + j]);
            big[i * m + j] = r;
            big[i * m + n + j] = -c;
            big[(n + i) * m + j] = c;
            big[(n + i) * m + n + j] = r;
        }
    }
    let doubled = symmetric_eigenvalues(&big, m, tol, MAX_SWEEPS)?;
    let two = F::one() + F::one();
    doubled
        .chunks(2)
        .map(|pair| {
            if (pair[0] - pair[1]).abs() > pair_tol {
                Err(Error::Oracle(format!(
                    "embedded eigenvalues {:e} and {:e} do not pair up",
                    pair[0].to_f64().unwrap_or(f64::NAN),
                    pair[1].to_f64().unwrap_or(f64::NAN)
                )))
            } else {
                Ok((pair[0] + pair[1]) / two)
            }
        })
        .collect()
}
