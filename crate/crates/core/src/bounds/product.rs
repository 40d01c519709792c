use crate::error::{Error, Result};
use crate::matrix::{frac_power, operator_norm, polar, CMatrix};
use crate::radius::w;

/// Relative size of `‖AB − BA‖` accepted as commuting.
const COMMUTE_TOL: f64 = 1e-10;

/// Bound for `w(AB)`.
///
/// General form: `½w(BA) + ¼ sqrt(3‖A‖²‖B‖² + w(|A|²|B*|²))`.
/// With `commuting` set the pair must satisfy `AB = BA` and the bound is
/// `½ sqrt(3‖A‖²‖B‖² + w(|A|²|B*|²))`.
pub fn bound_product(a: &CMatrix, b: &CMatrix, commuting: bool) -> Result<f64> {
    a.ensure_square("A")?;
    b.ensure_square("B")?;
    if a.rows() != b.rows() {
        return Err(Error::ShapeMismatch(format!(
            "A is {}x{}, B is {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let (na, nb) = (operator_norm(a)?, operator_norm(b)?);
    let ab = a.matmul(b)?;
    let ba = b.matmul(a)?;
    let mixed = a.adjoint().matmul(a)?.matmul(&b.matmul(&b.adjoint())?)?;
    let root = (3.0 * na * na * nb * nb + w(&mixed)?).sqrt();
    if commuting {
        let commutator = operator_norm(&ab.try_sub(&ba)?)?;
        if commutator > COMMUTE_TOL * (na * nb).max(f64::MIN_POSITIVE) {
            return Err(Error::NotCommuting { commutator });
        }
        return Ok(0.5 * root);
    }
    Ok(0.5 * w(&ba)? + 0.25 * root)
}

/// Generalised Aluthge transform `|A|^t U |A|^{1−t}` where `A = U|A|`.
pub fn aluthge(a: &CMatrix, t: f64) -> Result<CMatrix> {
    let pf = polar(a)?;
    let left = frac_power(&pf.modulus, t)?;
    let right = frac_power(&pf.modulus, 1.0 - t)?;
    left.matmul(&pf.unitary_part)?.matmul(&right)
}

/// `½w(Ã_t) + ½‖A‖`, an upper bound for `w(A)`.
pub fn bound_via_aluthge(a: &CMatrix, t: f64) -> Result<f64> {
    let at = aluthge(a, t)?;
    Ok(0.5 * w(&at)? + 0.5 * operator_norm(a)?)
}

/// `½w(A) + ¼ sqrt(3‖A‖² + w(|A|^{2t}|A*|^{2(1−t)}))`, an upper bound for `w(Ã_t)`.
pub fn bound_aluthge_transform(a: &CMatrix, t: f64) -> Result<f64> {
    a.ensure_square("A")?;
    let na = operator_norm(a)?;
    let left = frac_power(&a.adjoint().matmul(a)?, t)?;
    let right = frac_power(&a.matmul(&a.adjoint())?, 1.0 - t)?;
    let eta = w(&left.matmul(&right)?)?;
    Ok(0.5 * w(a)? + 0.25 * (3.0 * na * na + eta).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn shift2() -> CMatrix {
        CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]])
    }

    fn sample() -> CMatrix {
        CMatrix::from_fn(3, 3, |i, j| {
            Complex64::new((i as f64 - j as f64) * 0.7 + 0.2, ((i * j) % 3) as f64 * 0.4 - 0.3)
        })
    }

    #[test]
    fn product_of_shifts() {
        let s = shift2();
        let v = bound_product(&s, &s, false).unwrap();
        assert!((v - 3f64.sqrt() / 4.0).abs() < 1e-12);
        // The shift commutes with itself.
        assert!((bound_product(&s, &s, true).unwrap() - 3f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn product_with_identity_dominates_radius() {
        let a = sample();
        let v = bound_product(&a, &CMatrix::identity(3), false).unwrap();
        assert!(v >= w(&a).unwrap() - 1e-10);
    }

    #[test]
    fn non_commuting_pair_rejected() {
        let a = shift2();
        let b = a.adjoint();
        assert!(matches!(bound_product(&a, &b, true), Err(Error::NotCommuting { .. })));
    }

    #[test]
    fn commuting_polynomials_obey_bound() {
        let a = sample();
        let b = (&(&a * &a) - &a.scale_real(0.5)).try_add(&CMatrix::identity(3)).unwrap();
        let v = bound_product(&a, &b, true).unwrap();
        assert!(w(&a.matmul(&b).unwrap()).unwrap() <= v + 1e-8);
    }

    #[test]
    fn aluthge_examples() {
        assert!(aluthge(&shift2(), 0.5).unwrap().max_abs() < 1e-14);
        let p = CMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 3.0]]);
        for t in [0.0, 0.25, 1.0] {
            assert!((&aluthge(&p, t).unwrap() - &p).frobenius_norm() < 1e-12);
        }
    }

    #[test]
    fn aluthge_bounds_hold_on_sample() {
        let a = sample();
        let wa = w(&a).unwrap();
        for t in [0.0, 0.3, 0.5, 1.0] {
            assert!(wa <= bound_via_aluthge(&a, t).unwrap() + 1e-8);
            let wt = w(&aluthge(&a, t).unwrap()).unwrap();
            assert!(wt <= bound_aluthge_transform(&a, t).unwrap() + 1e-8);
        }
    }
}
