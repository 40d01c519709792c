//! General complex eigenvalues: Householder reduction to upper Hessenberg
//! form, then single-shift QR sweeps with Wilkinson shifts and deflation.

use num_complex::Complex64;

use super::{CMatrix, ONE, ZERO};
use crate::error::{Error, Result};

/// Sweep budget per unit of dimension.
const SWEEPS_PER_ROW: usize = 100;

/// All eigenvalues of a square matrix, with multiplicity, in no particular order.
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<Complex64>> {
    a.ensure_finite()?;
    a.ensure_square("eigenvalues")?;
    let n = a.rows();
    let mut h = a.data().to_vec();
    hessenberg(&mut h, n);
    hessenberg_qr(&mut h, n)
}

fn hessenberg(h: &mut [Complex64], n: usize) {
    let mut v = vec![ZERO; n];
    for k in 0..n.saturating_sub(2) {
        let off = k + 1;
        let m = n - off;
        let xnorm = (0..m).map(|i| h[(off + i) * n + k].norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = h[off * n + k];
        let phase = if x0 == ZERO { ONE } else { x0 / x0.norm() };
        let beta = -phase * xnorm;
        for i in 0..m {
            v[i] = h[(off + i) * n + k];
        }
        v[0] -= beta;
        let vnorm2: f64 = v[..m].iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm2;

        // Left: rows off.., columns k..
        for j in k..n {
            let s: Complex64 = (0..m).map(|i| v[i].conj() * h[(off + i) * n + j]).sum::<Complex64>() * tau;
            for i in 0..m {
                h[(off + i) * n + j] -= v[i] * s;
            }
        }
        // Right: all rows, columns off..
        for r in 0..n {
            let row = &mut h[r * n + off..r * n + n];
            let s: Complex64 = row.iter().zip(&v[..m]).map(|(x, y)| x * y).sum::<Complex64>() * tau;
            for (entry, vj) in row.iter_mut().zip(&v[..m]) {
                *entry -= s * vj.conj();
            }
        }
        for i in 1..m {
            h[(off + i) * n + k] = ZERO;
        }
    }
}

/// Complex Givens rotation `G = [[c, s], [−s̄, c]]` with `G [a; b] = [r; 0]`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, ZERO);
    }
    if an == 0.0 {
        return (0.0, ONE);
    }
    let r = an.hypot(bn);
    (an / r, (a / an) * b.conj() / r)
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powu(2) + b * c;
    let root = disc.sqrt();
    let l1 = half_tr + root;
    let l2 = half_tr - root;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn hessenberg_qr(h: &mut [Complex64], n: usize) -> Result<Vec<Complex64>> {
    let budget = SWEEPS_PER_ROW * n.max(1);
    let mut values = Vec::with_capacity(n);
    let mut rot: Vec<(f64, Complex64)> = vec![(1.0, ZERO); n];
    let at = |i: usize, j: usize| i * n + j;
    let norm_scale = h.iter().map(|z| z.norm()).fold(0.0, f64::max);

    let mut hi = n;
    let mut sweeps = 0;
    let mut since_deflation = 0;
    while hi > 0 {
        let last = hi - 1;
        // Locate the start of the active unreduced block.
        let mut lo = last;
        while lo > 0 {
            let sub = h[at(lo, lo - 1)].norm();
            let mut scale = h[at(lo, lo)].norm() + h[at(lo - 1, lo - 1)].norm();
            if scale == 0.0 {
                scale = norm_scale;
            }
            if sub <= f64::EPSILON * scale {
                h[at(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == last {
            values.push(h[at(last, last)]);
            hi -= 1;
            since_deflation = 0;
            continue;
        }

        sweeps += 1;
        since_deflation += 1;
        if sweeps > budget {
            return Err(Error::NoConvergence {
                what: "Hessenberg QR iteration",
                budget,
            });
        }

        let mu = if since_deflation % 11 == 0 {
            // Exceptional shift breaks cycles on symmetric-looking windows.
            h[at(last, last)] + h[at(last, last - 1)].norm() * Complex64::new(0.75, 0.4)
        } else {
            wilkinson_shift(
                h[at(last - 1, last - 1)],
                h[at(last - 1, last)],
                h[at(last, last - 1)],
                h[at(last, last)],
            )
        };

        for i in lo..=last {
            h[at(i, i)] -= mu;
        }
        // H − μI = QR on the window.
        for k in lo..last {
            let (c, s) = givens(h[at(k, k)], h[at(k + 1, k)]);
            rot[k] = (c, s);
            for j in k..=last {
                let x = h[at(k, j)];
                let y = h[at(k + 1, j)];
                h[at(k, j)] = x * c + s * y;
                h[at(k + 1, j)] = -s.conj() * x + y * c;
            }
        }
        // RQ: apply G_k* from the right.
        for k in lo..last {
            let (c, s) = rot[k];
            let top = (k + 2).min(last);
            for i in lo..=top {
                let x = h[at(i, k)];
                let y = h[at(i, k + 1)];
                h[at(i, k)] = x * c + s.conj() * y;
                h[at(i, k + 1)] = -s * x + y * c;
            }
        }
        for i in lo..=last {
            h[at(i, i)] += mu;
        }
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::singular_values;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted_by_re(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn nilpotent_two_by_two() {
        let a = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]);
        let ev = eigenvalues(&a).unwrap();
        assert_eq!(ev.len(), 2);
        assert!(ev.iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn diagonal_entries() {
        let a = CMatrix::diag(&[c(0.0, 1.0), c(-2.0, 0.0)]);
        let ev = sorted_by_re(eigenvalues(&a).unwrap());
        assert!((ev[0] - c(-2.0, 0.0)).norm() < 1e-14);
        assert!((ev[1] - c(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn companion_of_z_squared_minus_one() {
        let a = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let ev = sorted_by_re(eigenvalues(&a).unwrap());
        assert!((ev[0] - c(-1.0, 0.0)).norm() < 1e-14);
        assert!((ev[1] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn rotation_has_imaginary_pair() {
        let a = CMatrix::from_real_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]);
        let ev = eigenvalues(&a).unwrap();
        let mut ims: Vec<f64> = ev.iter().map(|z| z.im).collect();
        ims.sort_by(f64::total_cmp);
        assert!((ims[0] + 1.0).abs() < 1e-14 && (ims[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn residuals_on_dense_matrix() {
        // Deterministic pseudo-random fill.
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let a = CMatrix::from_fn(9, 9, |_, _| c(next(), next()));
        let norm = singular_values(&a).unwrap()[0];
        let ev = eigenvalues(&a).unwrap();
        assert_eq!(ev.len(), 9);
        let trace: Complex64 = ev.iter().sum();
        assert!((trace - a.trace()).norm() < 1e-10);
        for &lambda in &ev {
            let shifted = &a - &CMatrix::identity(9).scale(lambda);
            let smin = *singular_values(&shifted).unwrap().last().unwrap();
            assert!(smin <= 1e-9 * norm, "residual {smin}");
        }
    }
}
