use num_complex::Complex64;

use crate::error::Result;
use crate::matrix::{operator_norm, CMatrix};
use crate::radius::{numrad_nonneg, w};

struct Scalars {
    norm: f64,
    radius: f64,
    radius_sq: f64,
}

fn scalars(b: &CMatrix) -> Result<Scalars> {
    b.ensure_square("B")?;
    Ok(Scalars {
        norm: operator_norm(b)?,
        radius: w(b)?,
        radius_sq: w(&b.matmul(b)?)?,
    })
}

/// Upper bound for `w(A ⊗ B)` built from the moduli of the entries of `A`.
///
/// Diagonal `|a_ii| w(B)`; above the diagonal
/// `sqrt((|a_ij|+|a_ji|)²‖B‖² − |a_ij a_ji|(‖B‖² − w(B²)))`; zero below.
pub fn bound_kron_cor3(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    a.ensure_square("A")?;
    let s = scalars(b)?;
    let n = a.rows();
    let c = CMatrix::from_fn(n, n, |i, j| {
        let v = if i == j {
            a.get(i, i).norm() * s.radius
        } else if i < j {
            let (x, y) = (a.get(i, j).norm(), a.get(j, i).norm());
            ((x + y).powi(2) * s.norm * s.norm - x * y * (s.norm * s.norm - s.radius_sq))
                .max(0.0)
                .sqrt()
        } else {
            0.0
        };
        Complex64::new(v, 0.0)
    });
    numrad_nonneg(&c)
}

/// `w(A)‖B‖`.
pub fn holbrook(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    b.ensure_square("B")?;
    Ok(w(a)? * operator_norm(b)?)
}

/// `w(C°)` with `C°` carrying `|a_ii| w(B)` on the diagonal and `|a_ij|‖B‖` elsewhere.
pub fn khare_bound(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    a.ensure_square("A")?;
    let s = scalars(b)?;
    let c = CMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        let scale = if i == j { s.radius } else { s.norm };
        Complex64::new(a.get(i, j).norm() * scale, 0.0)
    });
    numrad_nonneg(&c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{bound_blockmatrix, BoundMatrixKind};
    use crate::matrix::{kron, BlockMatrix};

    fn sample_b() -> CMatrix {
        CMatrix::from_fn(3, 3, |i, j| {
            Complex64::new(0.5 * i as f64 - 0.3 * j as f64, if i < j { 0.4 } else { -0.1 })
        })
    }

    #[test]
    fn identity_factor_gives_radius_of_b() {
        let b = sample_b();
        let wb = w(&b).unwrap();
        for v in [
            bound_kron_cor3(&CMatrix::identity(3), &b).unwrap(),
            khare_bound(&CMatrix::identity(1), &b).unwrap(),
        ] {
            assert!((v - wb).abs() < 1e-12);
        }
        assert!((holbrook(&CMatrix::identity(1), &b).unwrap() - operator_norm(&b).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn scalar_b_reduces_to_entrywise_thm2() {
        let a = CMatrix::from_real_rows(&[vec![1.0, -2.0, 0.5], vec![0.3, 0.0, 1.0], vec![0.0, 0.7, -1.0]]);
        let one = CMatrix::identity(1);
        let grid = BlockMatrix::partition(&a, &[1, 1, 1]).unwrap();
        let thm2 = bound_blockmatrix(&grid, BoundMatrixKind::Thm2).unwrap();
        assert!((bound_kron_cor3(&a, &one).unwrap() - thm2).abs() < 1e-12);
    }

    #[test]
    fn nonnegative_factor_ordering() {
        let a = CMatrix::from_real_rows(&[vec![1.0, 2.0, 0.5], vec![0.3, 0.0, 1.0], vec![0.0, 0.7, 1.5]]);
        let b = sample_b();
        let exact = w(&kron(&a, &b)).unwrap();
        let cor3 = bound_kron_cor3(&a, &b).unwrap();
        assert!(exact <= cor3 + 1e-8);
        assert!(cor3 <= holbrook(&a, &b).unwrap() + 1e-8);
        assert!(cor3 <= khare_bound(&a, &b).unwrap() + 1e-8);
    }
}
