use super::{refined_entry, upper_triangular_radius};
use crate::error::{Error, Result};
use crate::matrix::{frac_power, operator_norm, CMatrix, TOL_HERM};
use crate::radius::w;

fn check_pair(b: &CMatrix, c: &CMatrix) -> Result<()> {
    if b.rows() != c.cols() || b.cols() != c.rows() {
        return Err(Error::ShapeMismatch(format!(
            "need B p×q and C q×p, got {}x{} and {}x{}",
            b.rows(),
            b.cols(),
            c.rows(),
            c.cols()
        )));
    }
    Ok(())
}

/// Closed-form bound for `w([[A, B], [C, D]])`.
pub fn bound_cor1(a: &CMatrix, b: &CMatrix, c: &CMatrix, d: &CMatrix) -> Result<f64> {
    a.ensure_square("A")?;
    d.ensure_square("D")?;
    check_pair(b, c)?;
    if b.rows() != a.rows() || b.cols() != d.rows() {
        return Err(Error::ShapeMismatch(format!(
            "B is {}x{} but A is {}x{} and D is {}x{}",
            b.rows(),
            b.cols(),
            a.rows(),
            a.cols(),
            d.rows(),
            d.cols()
        )));
    }
    let beta = bound_sum_cor6(b, c)?;
    Ok(upper_triangular_radius(w(a)?, w(d)?, beta))
}

/// `sqrt(‖B‖² − ¼(‖B‖² − w(B²)))`, which sits between `w(B)` and `‖B‖`.
pub fn bound_single(b: &CMatrix) -> Result<f64> {
    b.ensure_square("B")?;
    let nb = operator_norm(b)?;
    let wb2 = w(&b.matmul(b)?)?;
    Ok((nb * nb - 0.25 * (nb * nb - wb2)).max(0.0).sqrt())
}

/// `sqrt((‖B‖+‖C‖)² − (‖B‖‖C‖ − w(CB)))`, an upper bound for
/// `2w([[0, B], [C, 0]])` and hence for `‖B + C*‖`.
pub fn bound_sum_cor6(b: &CMatrix, c: &CMatrix) -> Result<f64> {
    check_pair(b, c)?;
    let cb = c.matmul(b)?;
    Ok(refined_entry(operator_norm(b)?, operator_norm(c)?, w(&cb)?))
}

/// Coefficient `sqrt((‖A‖+‖B‖)² − (‖A‖‖B‖ − w(BA)))` bounding
/// `|⟨Ax, y⟩| + |⟨By, x⟩|` over unit `x`, `y`.
pub fn lemma4_rhs(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    bound_sum_cor6(a, b)
}

fn ensure_psd_shape(p: &CMatrix, name: &'static str) -> Result<()> {
    p.ensure_square(name)?;
    let dev = p.hermitian_deviation();
    let tol = TOL_HERM * p.max_abs().max(1.0);
    if dev > tol {
        return Err(Error::NonHermitian {
            deviation: dev,
            tolerance: tol,
        });
    }
    Ok(())
}

/// Bound for `‖A + B‖` with `A`, `B` positive semidefinite, parameterised by
/// `alpha, t ∈ [0, 1]`.
pub fn bound_positive_sum(a: &CMatrix, b: &CMatrix, alpha: f64, t: f64) -> Result<f64> {
    ensure_psd_shape(a, "A")?;
    ensure_psd_shape(b, "B")?;
    if a.rows() != b.rows() {
        return Err(Error::ShapeMismatch(format!(
            "A is {}x{}, B is {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let a_t = frac_power(a, t)?;
    let a_1t = frac_power(a, 1.0 - t)?;
    let b_al = frac_power(b, alpha)?;
    let b_1al = frac_power(b, 1.0 - alpha)?;
    let x = operator_norm(&a_1t.matmul(&b_1al)?)?;
    let y = operator_norm(&b_al.matmul(&a_t)?)?;
    let eta = w(&b_al.matmul(a)?.matmul(&b_1al)?)?;
    Ok(upper_triangular_radius(
        operator_norm(a)?,
        operator_norm(b)?,
        refined_entry(x, y, eta),
    ))
}
