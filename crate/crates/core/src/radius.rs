//! Desk-scale oracles for the numerical radius `w(·)`, the spectral radius
//! `r(·)`, the nonnegative-matrix shortcut `w(T) = ½ λ_max(T + Tᵀ)`, and the
//! sup-θ norm `sup_θ ‖e^{iθ}B + e^{−iθ}C*‖`.
//!
//! The numerical radius is evaluated through its support-function form
//! `w(A) = max_θ λ_max(Re(e^{iθ}A))`: a coarse θ grid followed by
//! golden-section refinement around the best local maxima. Every evaluated
//! value is itself a lower bound for `w(A)`, so the result never overshoots
//! beyond eigensolver rounding.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{eigenvalues, herm_eigen_max, hermitian::extreme_eigenvalues, CMatrix};

/// Local maxima of the coarse grid refined at most this many at a time.
const MAX_REFINED_PEAKS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaScanConfig {
    /// Grid points over one full period.
    pub coarse_points: usize,
    /// Golden-section stops once the bracket is narrower than this.
    pub refine_tol: f64,
    /// Golden-section iteration cap per peak.
    pub max_refines: usize,
}

impl Default for ThetaScanConfig {
    fn default() -> Self {
        Self {
            coarse_points: 720,
            refine_tol: 1e-12,
            max_refines: 200,
        }
    }
}

impl ThetaScanConfig {
    pub fn validate(&self) -> Result<()> {
        if self.coarse_points < 16 {
            return Err(Error::BadSpec(format!("coarse_points = {} < 16", self.coarse_points)));
        }
        if self.refine_tol.is_nan() || self.refine_tol <= 0.0 {
            return Err(Error::BadSpec("refine_tol must be positive".into()));
        }
        Ok(())
    }
}

/// Hermitian pencil `Re(e^{iθ}A) = cos θ · Re A − sin θ · Im A`.
struct RealPartPencil {
    n: usize,
    re: Vec<Complex64>,
    im: Vec<Complex64>,
}

impl RealPartPencil {
    fn new(a: &CMatrix) -> Self {
        Self {
            n: a.rows(),
            re: a.hermitian_part().data().to_vec(),
            im: a.skew_hermitian_part().data().to_vec(),
        }
    }

    fn at(&self, theta: f64) -> Vec<Complex64> {
        let (s, c) = theta.sin_cos();
        self.re.iter().zip(&self.im).map(|(r, i)| r * c - i * s).collect()
    }

    fn extremes(&self, theta: f64) -> Result<(f64, f64)> {
        extreme_eigenvalues(self.at(theta), self.n)
    }

    fn top(&self, theta: f64) -> Result<f64> {
        Ok(self.extremes(theta)?.1)
    }
}

/// `w(A) = sup_{‖x‖=1} |⟨Ax, x⟩|` for a square matrix.
pub fn numerical_radius(a: &CMatrix, cfg: &ThetaScanConfig) -> Result<f64> {
    cfg.validate()?;
    a.ensure_finite()?;
    a.ensure_square("numerical radius")?;
    if a.rows() == 1 {
        return Ok(a.get(0, 0).norm());
    }
    if a.max_abs() == 0.0 {
        return Ok(0.0);
    }
    let pencil = RealPartPencil::new(a);
    // f(θ + π) = −λ_min(Re(e^{iθ}A)), so half the grid gives the full period.
    let half = cfg.coarse_points.div_ceil(2);
    let step = PI / half as f64;
    let mut values = vec![0.0; 2 * half];
    for k in 0..half {
        let (lo, hi) = pencil.extremes(k as f64 * step)?;
        values[k] = hi;
        values[k + half] = -lo;
    }
    let lipschitz = a.frobenius_norm();
    maximize_periodic(&values, step, lipschitz, cfg, |t| pencil.top(t))
}

/// Numerical radius with the default scan configuration.
pub fn w(a: &CMatrix) -> Result<f64> {
    numerical_radius(a, &ThetaScanConfig::default())
}

/// `r(A) = max |λ|` over the eigenvalues of a square matrix.
pub fn spectral_radius(a: &CMatrix) -> Result<f64> {
    Ok(eigenvalues(a)?.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// `w(T) = ½ λ_max(T + Tᵀ)` for a real matrix with nonnegative entries.
pub fn numrad_nonneg(t: &CMatrix) -> Result<f64> {
    t.ensure_finite()?;
    t.ensure_square("nonnegative numerical radius")?;
    for i in 0..t.rows() {
        for j in 0..t.cols() {
            let z = t.get(i, j);
            if z.re < -1e-14 || z.im != 0.0 {
                return Err(Error::NegativeEntry {
                    row: i,
                    col: j,
                    value: z.re.min(-z.im.abs()),
                });
            }
        }
    }
    let sym = CMatrix::from_fn(t.rows(), t.cols(), |i, j| {
        Complex64::new(t.get(i, j).re.max(0.0) + t.get(j, i).re.max(0.0), 0.0)
    });
    Ok(0.5 * herm_eigen_max(&sym)?)
}

/// `sup_θ ‖e^{iθ}B + e^{−iθ}C*‖` for `B : p×q`, `C : q×p`.
pub fn sup_theta_norm(b: &CMatrix, c: &CMatrix) -> Result<f64> {
    sup_theta_norm_with(b, c, &ThetaScanConfig::default())
}

pub fn sup_theta_norm_with(b: &CMatrix, c: &CMatrix, cfg: &ThetaScanConfig) -> Result<f64> {
    cfg.validate()?;
    b.ensure_finite()?;
    c.ensure_finite()?;
    if b.rows() != c.cols() || b.cols() != c.rows() {
        return Err(Error::ShapeMismatch(format!(
            "sup-θ norm needs B: p×q and C: q×p, got {}x{} and {}x{}",
            b.rows(),
            b.cols(),
            c.rows(),
            c.cols()
        )));
    }
    let cstar = c.adjoint();
    // ‖M‖² = λ_max(M* M) on the smaller Gram side.
    let norm_at = |theta: f64| -> Result<f64> {
        let e = Complex64::from_polar(1.0, theta);
        let m = CMatrix::from_fn(b.rows(), b.cols(), |i, j| e * b.get(i, j) + e.conj() * cstar.get(i, j));
        let gram = if m.rows() >= m.cols() {
            &m.adjoint() * &m
        } else {
            &m * &m.adjoint()
        };
        let n = gram.rows();
        Ok(extreme_eigenvalues(gram.into_data(), n)?.1.max(0.0).sqrt())
    };
    // θ ↦ θ + π negates the matrix, so one half-period suffices.
    let points = cfg.coarse_points.div_ceil(2);
    let step = PI / points as f64;
    let values = (0..points).map(|k| norm_at(k as f64 * step)).collect::<Result<Vec<_>>>()?;
    let lipschitz = b.frobenius_norm() + c.frobenius_norm();
    maximize_periodic(&values, step, lipschitz, cfg, norm_at)
}

/// Maximizes a periodic function sampled on a uniform grid, refining the best
/// local maxima by golden-section search within one grid step on each side.
fn maximize_periodic(
    values: &[f64],
    step: f64,
    lipschitz: f64,
    cfg: &ThetaScanConfig,
    mut f: impl FnMut(f64) -> Result<f64>,
) -> Result<f64> {
    let len = values.len();
    let (best_idx, mut best) = values
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    // A cell can hide a maximum at most L·h above its endpoints.
    let window = lipschitz * step;
    let mut peaks: Vec<usize> = (0..len)
        .filter(|&k| {
            let prev = values[(k + len - 1) % len];
            let next = values[(k + 1) % len];
            values[k] > prev && values[k] >= next && values[k] >= best - window
        })
        .collect();
    if peaks.is_empty() {
        peaks.push(best_idx);
    }
    peaks.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    peaks.truncate(MAX_REFINED_PEAKS);

    for k in peaks {
        let center = k as f64 * step;
        let found = golden_max(center - step, center + step, cfg, &mut f)?;
        best = best.max(found);
    }
    Ok(best)
}

fn golden_max(mut lo: f64, mut hi: f64, cfg: &ThetaScanConfig, f: &mut impl FnMut(f64) -> Result<f64>) -> Result<f64> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1.rem_euclid(TAU))?;
    let mut f2 = f(x2.rem_euclid(TAU))?;
    let mut best = f1.max(f2);
    for _ in 0..cfg.max_refines {
        if hi - lo <= cfg.refine_tol {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2.rem_euclid(TAU))?;
            best = best.max(f2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1.rem_euclid(TAU))?;
            best = best.max(f1);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{operator_norm, BlockMatrix};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn shift2() -> CMatrix {
        CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]])
    }

    #[test]
    fn square_zero_matrix_has_half_norm() {
        assert!((w(&shift2()).unwrap() - 0.5).abs() < 1e-12);
        assert!((w(&CMatrix::lower_shift(2)).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn lower_shift_radius_is_cosine() {
        for n in [3, 5, 8] {
            let expected = (PI / (n as f64 + 1.0)).cos();
            assert!((w(&CMatrix::lower_shift(n)).unwrap() - expected).abs() < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn single_row_closed_form() {
        let a = [c(1.0, -2.0), c(0.5, 0.0), c(0.0, 3.0)];
        let m = CMatrix::from_fn(3, 3, |i, j| if i == 0 { a[j] } else { c(0.0, 0.0) });
        let sum: f64 = a.iter().map(|z| z.norm_sqr()).sum();
        let expected = 0.5 * (a[0].norm() + sum.sqrt());
        assert!((w(&m).unwrap() - expected).abs() < 1e-9);
    }

    #[test]
    fn spectral_radius_examples() {
        assert!(spectral_radius(&shift2()).unwrap() < 1e-12);
        let d = CMatrix::diag(&[c(2.0, 0.0), c(0.0, -3.0)]);
        assert!((spectral_radius(&d).unwrap() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn nonnegative_shortcut() {
        let d = CMatrix::diag_real(&[0.5, 2.0, 1.0]);
        assert!((numrad_nonneg(&d).unwrap() - 2.0).abs() < 1e-14);
        let t = CMatrix::from_real_rows(&[vec![0.0, 2.0], vec![0.0, 0.0]]);
        assert!((numrad_nonneg(&t).unwrap() - 1.0).abs() < 1e-14);
        assert!((w(&t).unwrap() - 1.0).abs() < 1e-12);
        let neg = CMatrix::from_real_rows(&[vec![0.0, -1.0], vec![0.0, 0.0]]);
        assert!(matches!(numrad_nonneg(&neg), Err(Error::NegativeEntry { .. })));
    }

    #[test]
    fn sup_theta_norm_examples() {
        let b = CMatrix::from_rows(&[vec![c(1.0, 1.0), c(0.0, 2.0)], vec![c(-1.0, 0.0), c(0.5, 0.5)]]);
        let zero = CMatrix::zeros(2, 2);
        let nb = operator_norm(&b).unwrap();
        assert!((sup_theta_norm(&b, &zero).unwrap() - nb).abs() < 1e-12);
        // B = C: w([[0,B],[B,0]]) = w(B).
        assert!((sup_theta_norm(&b, &b).unwrap() - 2.0 * w(&b).unwrap()).abs() < 1e-8);
        let bad = CMatrix::zeros(3, 2);
        assert!(matches!(sup_theta_norm(&b, &bad), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn sup_theta_norm_matches_off_diagonal_block() {
        let b = CMatrix::from_fn(2, 3, |i, j| c((i + 2 * j) as f64 * 0.3 - 0.4, (i as f64) - 0.2 * j as f64));
        let cc = CMatrix::from_fn(3, 2, |i, j| c(0.1 * (i * j) as f64 + 0.5, 0.7 - 0.3 * i as f64));
        let m = BlockMatrix::two_by_two(&CMatrix::zeros(2, 2), &b, &cc, &CMatrix::zeros(3, 3)).unwrap();
        let oracle = 2.0 * w(&m.flatten()).unwrap();
        assert!((sup_theta_norm(&b, &cc).unwrap() - oracle).abs() < 1e-8);
    }

    #[test]
    fn config_is_validated() {
        let cfg = ThetaScanConfig {
            coarse_points: 8,
            ..Default::default()
        };
        assert!(numerical_radius(&shift2(), &cfg).is_err());
        assert!(numerical_radius(&CMatrix::zeros(2, 3), &ThetaScanConfig::default()).is_err());
    }
}
