//! Root-modulus bounds for monic polynomials through their companion matrix.
//!
//! Coefficients are indexed from the constant term upwards:
//! `p(z) = zⁿ + a_n z^{n−1} + … + a_2 z + a_1`, so `coeffs[0]` is `a_1`.
//! Use [`PolySpec::from_high_to_low`] for the conventional ordering.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::bounds::bound_cor1;
use crate::error::{Error, Result};
use crate::matrix::{eigenvalues, CMatrix};
use crate::radius::spectral_radius;

#[derive(Debug, Clone, PartialEq)]
pub struct PolySpec {
    coeffs: Vec<Complex64>,
}

impl PolySpec {
    /// From `a_1, …, a_n` (constant term first). Needs `n ≥ 2` and `a_1 ≠ 0`.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::BadSpec(format!("degree must be at least 2, got {}", coeffs.len())));
        }
        if coeffs.iter().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite);
        }
        if coeffs[0] == Complex64::new(0.0, 0.0) {
            return Err(Error::BadSpec("constant coefficient a_1 must be nonzero".into()));
        }
        Ok(Self { coeffs })
    }

    /// From conventional coefficients `c_n zⁿ + … + c_1 z + c_0`, highest first.
    /// The list is divided by its leading entry to make the polynomial monic.
    pub fn from_high_to_low(coeffs: &[Complex64]) -> Result<Self> {
        let (&lead, rest) = coeffs
            .split_first()
            .ok_or_else(|| Error::BadSpec("empty coefficient list".into()))?;
        if lead == Complex64::new(0.0, 0.0) {
            return Err(Error::BadSpec("leading coefficient must be nonzero".into()));
        }
        Self::new(rest.iter().rev().map(|c| c / lead).collect())
    }

    /// Degree `n`.
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_j` for `j = 1..=n`.
    pub fn a(&self, j: usize) -> Complex64 {
        self.coeffs[j - 1]
    }

    /// `a_1, …, a_n`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `p(z)` by Horner's rule.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(1.0, 0.0), |acc, a| acc * z + a)
    }

    /// `S = sqrt(Σ_{j<n} |a_j|²)`.
    pub fn tail_norm(&self) -> f64 {
        self.coeffs[..self.degree() - 1].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `α = S − ½(|a_{n−1}| + S)`.
    pub fn alpha(&self) -> f64 {
        let s = self.tail_norm();
        s - 0.5 * (self.a(self.degree() - 1).norm() + s)
    }
}

/// Frobenius companion matrix: top row `−a_n … −a_1`, identity below.
pub fn companion(p: &PolySpec) -> CMatrix {
    let n = p.degree();
    CMatrix::from_fn(n, n, |i, j| match i {
        0 => -p.a(n - j),
        _ if i == j + 1 => Complex64::new(1.0, 0.0),
        _ => Complex64::new(0.0, 0.0),
    })
}

fn estpoly_form(p: &PolySpec, alpha: f64) -> f64 {
    let an = p.a(p.degree()).norm();
    let c = (PI / p.degree() as f64).cos();
    let s = p.tail_norm();
    0.5 * (an + c + ((an - c).powi(2) + (1.0 + s).powi(2) - alpha).max(0.0).sqrt())
}

/// Refined bound on the modulus of every root.
pub fn bound_estpoly(p: &PolySpec) -> f64 {
    estpoly_form(p, p.alpha())
}

/// Baseline bound: the same expression without `α`.
pub fn bound_abd(p: &PolySpec) -> f64 {
    estpoly_form(p, 0.0)
}

/// Companion blocks `A = [−a_n]`, `B = [−a_{n−1} … −a_1]`, `C = e_1`, `D = L_{n−1}`.
pub fn companion_blocks(p: &PolySpec) -> (CMatrix, CMatrix, CMatrix, CMatrix) {
    let c = companion(p);
    let n = p.degree();
    (
        c.submatrix(0, 0, 1, 1),
        c.submatrix(0, 1, 1, n - 1),
        c.submatrix(1, 0, n - 1, 1),
        c.submatrix(1, 1, n - 1, n - 1),
    )
}

/// The refined bound evaluated numerically on the 2×2 partition of `C(p)`.
/// Degree 2 uses the closed form.
pub fn bound_companion_cor1(p: &PolySpec) -> Result<f64> {
    if p.degree() == 2 {
        return Ok(bound_estpoly(p));
    }
    let (a, b, c, d) = companion_blocks(p);
    bound_cor1(&a, &b, &c, &d)
}

/// `r(C(p))`, the largest root modulus.
pub fn max_root_modulus(p: &PolySpec) -> Result<f64> {
    spectral_radius(&companion(p))
}

/// Roots of `p` as eigenvalues of the companion matrix.
pub fn roots(p: &PolySpec) -> Result<Vec<Complex64>> {
    eigenvalues(&companion(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radius::w;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(v: &[f64]) -> PolySpec {
        PolySpec::new(v.iter().map(|&x| c(x, 0.0)).collect()).unwrap()
    }

    #[test]
    fn z2_minus_one() {
        let p = real(&[-1.0, 0.0]);
        assert_eq!(companion(&p), CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]));
        assert_eq!(p.alpha(), 0.0);
        assert!((bound_estpoly(&p) - 1.0).abs() < 1e-15);
        assert!((bound_abd(&p) - 1.0).abs() < 1e-15);
        assert!((max_root_modulus(&p).unwrap() - 1.0).abs() < 1e-12);
        let mut r: Vec<f64> = roots(&p).unwrap().iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        assert!((r[0] + 1.0).abs() < 1e-12 && (r[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cubic_example_values() {
        let p = PolySpec::from_high_to_low(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(p.coeffs(), &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        assert!((p.alpha() - (2f64.sqrt() - 1.0) / 2.0).abs() < 1e-15);
        let hand = 0.5 * (0.5 + (0.25 + (1.0 + 2f64.sqrt()).powi(2)).sqrt());
        assert!((bound_abd(&p) - hand).abs() < 1e-14);
        assert!((bound_estpoly(&p) - 1.4616).abs() < 1e-3);
        assert!((max_root_modulus(&p).unwrap() - 1.2106).abs() < 1e-3);
        assert!((bound_companion_cor1(&p).unwrap() - bound_estpoly(&p)).abs() < 1e-10);
    }

    #[test]
    fn roots_satisfy_polynomial() {
        let p = PolySpec::new((0..9).map(|k| c((k as f64 * 1.3).sin(), (k as f64 * 0.7).cos())).collect()).unwrap();
        for z in roots(&p).unwrap() {
            assert!(p.eval(z).norm() < 1e-8, "p({z}) = {}", p.eval(z));
        }
    }

    #[test]
    fn pure_power_roots() {
        let p = PolySpec::new(vec![c(-8.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((max_root_modulus(&p).unwrap() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn companion_blocks_match_closed_forms() {
        let p = PolySpec::new(vec![c(0.3, -1.0), c(2.0, 0.5), c(-0.7, 0.0), c(1.1, 1.1)]).unwrap();
        let (a, b, cc, d) = companion_blocks(&p);
        assert_eq!(a.get(0, 0), -p.a(4));
        assert!((w(&d).unwrap() - (PI / 4.0).cos()).abs() < 1e-9);
        let s = p.tail_norm();
        let wcb = w(&cc.matmul(&b).unwrap()).unwrap();
        assert!((wcb - 0.5 * (p.a(3).norm() + s)).abs() < 1e-9);
        assert!((bound_companion_cor1(&p).unwrap() - bound_estpoly(&p)).abs() < 1e-10);
        let r = max_root_modulus(&p).unwrap();
        let wc = w(&companion(&p)).unwrap();
        assert!(r <= wc + 1e-8 && wc <= bound_estpoly(&p) + 1e-8);
        assert!(bound_estpoly(&p) < bound_abd(&p) - 1e-12);
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(PolySpec::new(vec![c(1.0, 0.0)]).is_err());
        assert!(PolySpec::new(vec![c(0.0, 0.0), c(1.0, 0.0)]).is_err());
        assert!(PolySpec::from_high_to_low(&[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]).is_err());
    }
}
