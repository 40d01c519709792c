//! Hermitian eigensolver: Householder reduction to a real symmetric
//! tridiagonal matrix followed by implicit QL iteration.

use num_complex::Complex64;

use super::{CMatrix, ONE, TOL_HERM, ZERO};
use crate::error::{Error, Result};

const QL_ITERATIONS_PER_EIGENVALUE: usize = 60;

/// Eigenvalues in ascending order with matching unit eigenvectors (as columns).
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

fn check_hermitian(h: &CMatrix) -> Result<()> {
    h.ensure_finite()?;
    h.ensure_square("Hermitian eigensolver")?;
    let deviation = h.hermitian_deviation();
    let tolerance = TOL_HERM * h.frobenius_norm();
    if deviation > tolerance {
        return Err(Error::NonHermitian { deviation, tolerance });
    }
    Ok(())
}

/// Largest eigenvalue of a Hermitian matrix.
pub fn herm_eigen_max(h: &CMatrix) -> Result<f64> {
    check_hermitian(h)?;
    Ok(extreme_eigenvalues(h.data().to_vec(), h.rows())?.1)
}

/// All eigenvalues of a Hermitian matrix, ascending.
pub fn herm_eigenvalues(h: &CMatrix) -> Result<Vec<f64>> {
    check_hermitian(h)?;
    let n = h.rows();
    let mut a = h.data().to_vec();
    let (mut d, mut e) = tridiagonalize(&mut a, n, None);
    tql(&mut d, &mut e, None)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Full eigendecomposition `H = V diag(λ) V*`.
pub fn herm_eigen(h: &CMatrix) -> Result<HermitianEigen> {
    check_hermitian(h)?;
    let n = h.rows();
    let mut a = h.data().to_vec();
    let mut z = CMatrix::identity(n).into_data();
    let (mut d, mut e) = tridiagonalize(&mut a, n, Some(&mut z));
    tql(&mut d, &mut e, Some(&mut z))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| z[r * n + order[c]]);
    Ok(HermitianEigen { values, vectors })
}

/// `(λ_min, λ_max)` of a Hermitian matrix given as a row-major buffer.
/// The caller guarantees the buffer is Hermitian; it is consumed as workspace.
pub(crate) fn extreme_eigenvalues(mut a: Vec<Complex64>, n: usize) -> Result<(f64, f64)> {
    if n == 1 {
        let v = a[0].re;
        return Ok((v, v));
    }
    let (mut d, mut e) = tridiagonalize(&mut a, n, None);
    tql(&mut d, &mut e, None)?;
    let lo = d.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = d.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok((lo, hi))
}

/// Reduces the Hermitian matrix in `a` to real tridiagonal form `(d, e)` with
/// `e[k]` coupling `k` and `k + 1` (`e[n-1] = 0`). When `z` is given it must
/// hold the identity on entry and receives the unitary `Z` with `A = Z T Z*`.
fn tridiagonalize(a: &mut [Complex64], n: usize, mut z: Option<&mut Vec<Complex64>>) -> (Vec<f64>, Vec<f64>) {
    let mut v = vec![ZERO; n];
    let mut p = vec![ZERO; n];
    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let off = k + 1;
        let xnorm = (0..m).map(|i| a[(off + i) * n + k].norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = a[off * n + k];
        let phase = if x0 == ZERO { ONE } else { x0 / x0.norm() };
        let beta = -phase * xnorm;
        for i in 0..m {
            v[i] = a[(off + i) * n + k];
        }
        v[0] -= beta;
        let vnorm2: f64 = v[..m].iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm2;

        // p = τ A22 v, w = p − (τ/2)(v* p) v, A22 ← A22 − v w* − w v*
        for i in 0..m {
            let row = &a[(off + i) * n + off..(off + i) * n + n];
            p[i] = row.iter().zip(&v[..m]).map(|(x, y)| x * y).sum::<Complex64>() * tau;
        }
        let vp: Complex64 = v[..m].iter().zip(&p[..m]).map(|(x, y)| x.conj() * y).sum();
        let kk = vp * (0.5 * tau);
        for i in 0..m {
            p[i] -= kk * v[i];
        }
        for i in 0..m {
            let (vi, wi) = (v[i], p[i]);
            let row = &mut a[(off + i) * n + off..(off + i) * n + n];
            for (j, entry) in row.iter_mut().enumerate() {
                *entry -= vi * p[j].conj() + wi * v[j].conj();
            }
        }
        a[off * n + k] = beta;
        a[k * n + off] = beta.conj();
        for i in 1..m {
            a[(off + i) * n + k] = ZERO;
            a[k * n + off + i] = ZERO;
        }

        if let Some(z) = z.as_deref_mut() {
            for r in 0..n {
                let row = &mut z[r * n + off..r * n + n];
                let s: Complex64 = row.iter().zip(&v[..m]).map(|(x, y)| x * y).sum::<Complex64>() * tau;
                for (entry, vj) in row.iter_mut().zip(&v[..m]) {
                    *entry -= s * vj.conj();
                }
            }
        }
    }

    // Diagonal unitary scaling makes the off-diagonal real and nonnegative.
    let d: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    let mut e = vec![0.0; n];
    let mut delta = ONE;
    for k in 0..n.saturating_sub(1) {
        let c = a[(k + 1) * n + k];
        let mag = c.norm();
        e[k] = mag;
        if mag > 0.0 {
            delta *= c / mag;
        }
        if let Some(z) = z.as_deref_mut() {
            for r in 0..n {
                z[r * n + k + 1] *= delta;
            }
        }
    }
    (d, e)
}

/// Implicit QL iteration with Wilkinson-type shifts on a symmetric
/// tridiagonal matrix; rotations are accumulated into the columns of `z`.
fn tql(d: &mut [f64], e: &mut [f64], mut z: Option<&mut Vec<Complex64>>) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > QL_ITERATIONS_PER_EIGENVALUE {
                return Err(Error::NoConvergence {
                    what: "tridiagonal QL iteration",
                    budget: QL_ITERATIONS_PER_EIGENVALUE,
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        let zi = z[k * n + i];
                        let zi1 = z[k * n + i + 1];
                        z[k * n + i + 1] = zi * s + zi1 * c;
                        z[k * n + i] = zi * c - zi1 * s;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
