use super::{herm_eigen, svd, CMatrix, TOL_PSD, ZERO};
use crate::error::{Error, Result};

/// `A = U |A|` with `U` a partial isometry mapping the range of `|A|` onto
/// the range of `A`, and `|A| = (A*A)^{1/2}`.
#[derive(Debug, Clone)]
pub struct PolarFactors {
    pub unitary_part: CMatrix,
    pub modulus: CMatrix,
}

/// Relative threshold under which a singular value or eigenvalue counts as zero.
fn rank_threshold(n: usize, scale: f64) -> f64 {
    4.0 * n as f64 * f64::EPSILON * scale
}

pub fn polar(a: &CMatrix) -> Result<PolarFactors> {
    a.ensure_square("polar decomposition")?;
    let n = a.rows();
    let d = svd(a)?;
    let cut = rank_threshold(n, d.sigma[0]);
    let modulus = CMatrix::from_fn(n, n, |i, j| (0..n).map(|k| d.v.get(i, k) * d.sigma[k] * d.v.get(j, k).conj()).sum()).hermitian_part();
    let unitary_part = CMatrix::from_fn(n, n, |i, j| {
        (0..n)
            .filter(|&k| d.sigma[k] > cut)
            .map(|k| d.u.get(i, k) * d.v.get(j, k).conj())
            .sum()
    });
    Ok(PolarFactors { unitary_part, modulus })
}

/// `P^t` for a positive semidefinite `P` and `t ∈ [0, 1]`.
///
/// Eigenvalues within rounding of zero are treated as zero, so `t = 0`
/// yields the orthogonal projection onto the range of `P`.
pub fn frac_power(p: &CMatrix, t: f64) -> Result<CMatrix> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::BadSpec(format!("fractional power exponent {t} outside [0, 1]")));
    }
    let eig = herm_eigen(p)?;
    let n = p.rows();
    let scale = eig.values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let min = eig.values[0];
    if min < -TOL_PSD * scale {
        return Err(Error::NotPositive { min_eigenvalue: min });
    }
    let cut = rank_threshold(n, scale);
    let powered: Vec<f64> = eig.values.iter().map(|&l| if l <= cut { 0.0 } else { l.powf(t) }).collect();
    let v = &eig.vectors;
    let out = CMatrix::from_fn(n, n, |i, j| {
        (0..n)
            .filter(|&k| powered[k] != 0.0)
            .map(|k| v.get(i, k) * powered[k] * v.get(j, k).conj())
            .fold(ZERO, |acc, z| acc + z)
    });
    Ok(out.hermitian_part())
}
