//! Singular value decomposition by one-sided (Hestenes) Jacobi rotations.

use num_complex::Complex64;

use super::{CMatrix, ZERO};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;

/// Thin SVD `A = U diag(σ) V*` with `σ` sorted descending.
/// `u` is `m × k`, `v` is `n × k` with `k = min(m, n)`.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: CMatrix,
    pub sigma: Vec<f64>,
    pub v: CMatrix,
}

/// Largest singular value.
pub fn operator_norm(a: &CMatrix) -> Result<f64> {
    Ok(singular_values(a)?[0])
}

pub fn singular_values(a: &CMatrix) -> Result<Vec<f64>> {
    Ok(svd(a)?.sigma)
}

pub fn svd(a: &CMatrix) -> Result<Svd> {
    a.ensure_finite()?;
    // Work at unit scale so noise-level inputs do not sink into subnormals.
    let scale = a.max_abs();
    if scale == 0.0 {
        return svd_unscaled(a);
    }
    let mut s = svd_unscaled(&a.scale_real(1.0 / scale))?;
    s.sigma.iter_mut().for_each(|x| *x *= scale);
    Ok(s)
}

fn svd_unscaled(a: &CMatrix) -> Result<Svd> {
    if a.rows() < a.cols() {
        let t = svd_tall(&a.adjoint())?;
        return Ok(Svd {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
        });
    }
    svd_tall(a)
}

/// Jacobi SVD for `m ≥ n`, orthogonalizing the columns of `A V`.
fn svd_tall(a: &CMatrix) -> Result<Svd> {
    let (m, n) = a.shape();
    // Column-major working copies.
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|j| a.column_vec(j)).collect();
    let mut vcols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            let mut e = vec![ZERO; n];
            e[j] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();

    // Columns below this squared norm cannot move any singular value by more
    // than rounding, so pairs involving them are left alone.
    let fro_sq: f64 = cols.iter().flatten().map(|z| z.norm_sqr()).sum();
    let negligible = (1e-3 * f64::EPSILON).powi(2) * fro_sq;
    let mut converged = n == 1;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() || alpha.min(beta) <= negligible {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + zeta.hypot(1.0));
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / t.hypot(1.0);
                let s = c * t;
                let conj_phase = phase.conj();
                rotate(&mut cols, p, q, c, s, conj_phase);
                rotate(&mut vcols, p, q, c, s, conj_phase);
            }
        }
        if !rotated {
            converged = true;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            what: "Jacobi SVD",
            budget: MAX_SWEEPS,
        });
    }

    let mut sigma: Vec<f64> = cols.iter().map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigma[j].total_cmp(&sigma[i]));
    let smax = sigma.iter().copied().fold(0.0, f64::max);
    let u = CMatrix::from_fn(m, n, |i, k| {
        let j = order[k];
        if sigma[j] > f64::MIN_POSITIVE && sigma[j] > smax * f64::EPSILON * 1e-3 {
            cols[j][i] / sigma[j]
        } else {
            ZERO
        }
    });
    let v = CMatrix::from_fn(n, n, |i, k| vcols[order[k]][i]);
    sigma = order.iter().map(|&j| sigma[j]).collect();
    Ok(Svd { u, sigma, v })
}

/// `x_p ← c x_p − s e^{−iφ} x_q`, `x_q ← s x_p + c e^{−iφ} x_q`.
fn rotate(cols: &mut [Vec<Complex64>], p: usize, q: usize, c: f64, s: f64, conj_phase: Complex64) {
    let (left, right) = cols.split_at_mut(q);
    let xp = &mut left[p];
    let xq = &mut right[0];
    for (a, b) in xp.iter_mut().zip(xq.iter_mut()) {
        let bq = conj_phase * *b;
        let new_p = *a * c - bq * s;
        let new_q = *a * s + bq * c;
        *a = new_p;
        *b = new_q;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::herm_eigen_max;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pseudo_random(rows: usize, cols: usize, seed: u64) -> CMatrix {
        let mut state = seed | 1;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        CMatrix::from_fn(rows, cols, |_, _| c(next(), next()))
    }

    #[test]
    fn norm_of_scaled_shift() {
        let a = CMatrix::from_real_rows(&[vec![0.0, 2.0], vec![0.0, 0.0]]);
        assert!((operator_norm(&a).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn unitary_has_unit_norm() {
        let s = 1.0 / 2f64.sqrt();
        let u = CMatrix::from_rows(&[vec![c(s, 0.0), c(0.0, s)], vec![c(0.0, s), c(s, 0.0)]]);
        let sv = singular_values(&u).unwrap();
        assert!(sv.iter().all(|x| (x - 1.0).abs() < 1e-14));
    }

    #[test]
    fn norm_matches_gram_eigenvalue() {
        let a = pseudo_random(5, 3, 99);
        let gram = &a.adjoint() * &a;
        let oracle = herm_eigen_max(&gram).unwrap().sqrt();
        assert!((operator_norm(&a).unwrap() - oracle).abs() < 1e-12 * oracle);
        let wide = a.adjoint();
        assert!((operator_norm(&wide).unwrap() - oracle).abs() < 1e-12 * oracle);
    }

    #[test]
    fn decomposition_reconstructs() {
        for &(m, n) in &[(4, 4), (6, 2), (2, 5), (1, 3)] {
            let a = pseudo_random(m, n, (m * 31 + n) as u64);
            let d = svd(&a).unwrap();
            let k = m.min(n);
            assert_eq!(d.sigma.len(), k);
            let sigma = CMatrix::diag_real(&d.sigma);
            let back = &(&d.u * &sigma) * &d.v.adjoint();
            assert!((&back - &a).frobenius_norm() < 1e-12, "{m}x{n}");
            assert!(d.sigma.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn rank_deficient_input() {
        let a = CMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        let sv = singular_values(&a).unwrap();
        assert!((sv[0] - 5.0).abs() < 1e-14);
        assert!(sv[1].abs() < 1e-14);
    }
}
