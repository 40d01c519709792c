//! Spectral radius bounds for sums of products, sums, commutators and products.

use num_complex::Complex64;

use crate::bounds::{refined_entry, upper_triangular_radius};
use crate::error::{Error, Result};
use crate::matrix::{operator_norm, CMatrix};
use crate::radius::{numrad_nonneg, w};

/// One factor pair `(A_i, B_i)` with `A_i : H_i → H_1` and `B_i : H_1 → H_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorPair {
    pub a: CMatrix,
    pub b: CMatrix,
}

impl FactorPair {
    pub fn new(a: CMatrix, b: CMatrix) -> Result<Self> {
        if a.cols() != b.rows() || a.rows() != b.cols() {
            return Err(Error::ShapeMismatch(format!(
                "A_i is {}x{} but B_i is {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        Ok(Self { a, b })
    }

    /// `A_i B_i`, an operator on `H_1`.
    pub fn product(&self) -> Result<CMatrix> {
        self.a.matmul(&self.b)
    }
}

fn check_pairs(pairs: &[FactorPair]) -> Result<usize> {
    let first = pairs
        .first()
        .ok_or_else(|| Error::ShapeMismatch("need at least one factor pair".into()))?;
    let d1 = first.a.rows();
    for (i, p) in pairs.iter().enumerate() {
        if p.a.cols() != p.b.rows() || p.a.rows() != d1 || p.b.cols() != d1 {
            return Err(Error::ShapeMismatch(format!(
                "pair {i}: A is {}x{}, B is {}x{}, shared dimension {d1}",
                p.a.rows(),
                p.a.cols(),
                p.b.rows(),
                p.b.cols()
            )));
        }
    }
    Ok(d1)
}

/// `Σ A_i B_i`.
pub fn pair_sum(pairs: &[FactorPair]) -> Result<CMatrix> {
    let d1 = check_pairs(pairs)?;
    pairs.iter().try_fold(CMatrix::zeros(d1, d1), |acc, p| acc.try_add(&p.product()?))
}

/// `w` of the upper triangular bound matrix dominating `r(Σ A_i B_i)`.
pub fn bound_th3(pairs: &[FactorPair]) -> Result<f64> {
    check_pairs(pairs)?;
    let n = pairs.len();
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        let (ai, bi) = (&pairs[i].a, &pairs[i].b);
        m = m.with_entry(i, i, Complex64::new(w(&bi.matmul(ai)?)?, 0.0));
        for j in i + 1..n {
            let (aj, bj) = (&pairs[j].a, &pairs[j].b);
            let bi_aj = bi.matmul(aj)?;
            let bj_ai = bj.matmul(ai)?;
            let eta = w(&bj_ai.matmul(&bi_aj)?)?;
            let v = refined_entry(operator_norm(&bi_aj)?, operator_norm(&bj_ai)?, eta);
            m = m.with_entry(i, j, Complex64::new(v, 0.0));
        }
    }
    numrad_nonneg(&m)
}

/// Scalars shared by the two-pair bounds.
struct Quad {
    w11: f64,
    w22: f64,
    n11: f64,
    n22: f64,
    x: f64,
    y: f64,
    eta: f64,
}

fn quad(a1: &CMatrix, b1: &CMatrix, a2: &CMatrix, b2: &CMatrix) -> Result<Quad> {
    let p1 = FactorPair::new(a1.clone(), b1.clone())?;
    let p2 = FactorPair::new(a2.clone(), b2.clone())?;
    check_pairs(&[p1, p2])?;
    let b1a1 = b1.matmul(a1)?;
    let b2a2 = b2.matmul(a2)?;
    let b1a2 = b1.matmul(a2)?;
    let b2a1 = b2.matmul(a1)?;
    Ok(Quad {
        w11: w(&b1a1)?,
        w22: w(&b2a2)?,
        n11: operator_norm(&b1a1)?,
        n22: operator_norm(&b2a2)?,
        x: operator_norm(&b1a2)?,
        y: operator_norm(&b2a1)?,
        eta: w(&b2a1.matmul(&b1a2)?)?,
    })
}

/// Refined bound for `r(A_1 B_1 + A_2 B_2)`, already optimised over the
/// scaling `A_1 → tA_1`, `B_1 → B_1 / t`.
pub fn bound_cor_s1(a1: &CMatrix, b1: &CMatrix, a2: &CMatrix, b2: &CMatrix) -> Result<f64> {
    let q = quad(a1, b1, a2, b2)?;
    Ok(upper_triangular_radius(q.w11, q.w22, (3.0 * q.x * q.y + q.eta).max(0.0).sqrt()))
}

/// Baseline with numerical radii on the diagonal and `4‖B_1A_2‖‖B_2A_1‖`.
pub fn aok_stud(a1: &CMatrix, b1: &CMatrix, a2: &CMatrix, b2: &CMatrix) -> Result<f64> {
    let q = quad(a1, b1, a2, b2)?;
    Ok(upper_triangular_radius(q.w11, q.w22, 2.0 * (q.x * q.y).sqrt()))
}

/// Baseline with norms on the diagonal and `4‖B_1A_2‖‖B_2A_1‖`.
pub fn kittaneh_ams(a1: &CMatrix, b1: &CMatrix, a2: &CMatrix, b2: &CMatrix) -> Result<f64> {
    let q = quad(a1, b1, a2, b2)?;
    Ok(upper_triangular_radius(q.n11, q.n22, 2.0 * (q.x * q.y).sqrt()))
}

fn same_square(a: &CMatrix, b: &CMatrix) -> Result<()> {
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
    Ok(())
}

/// `½(x + y) + ½ sqrt((x − y)² + disc)`.
fn half_form(x: f64, y: f64, disc: f64) -> f64 {
    upper_triangular_radius(x, y, disc.max(0.0).sqrt())
}

struct SumTerms {
    wa: f64,
    wb: f64,
    ab: (f64, f64),
    ba: (f64, f64),
}

fn sum_terms(a: &CMatrix, b: &CMatrix) -> Result<SumTerms> {
    same_square(a, b)?;
    let ab = a.matmul(b)?;
    let ba = b.matmul(a)?;
    Ok(SumTerms {
        wa: w(a)?,
        wb: w(b)?,
        ab: (operator_norm(&ab)?, w(&ab)?),
        ba: (operator_norm(&ba)?, w(&ba)?),
    })
}

/// Bound for `r(A + B)`.
pub fn bound_sum_s2(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    let s = sum_terms(a, b)?;
    let disc = (3.0 * s.ab.0 + s.ab.1).min(3.0 * s.ba.0 + s.ba.1);
    Ok(half_form(s.wa, s.wb, disc))
}

/// Baseline for `r(A + B)` with `4 min{‖AB‖, ‖BA‖}`.
pub fn aok_sum_s2(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    let s = sum_terms(a, b)?;
    Ok(half_form(s.wa, s.wb, 4.0 * s.ab.0.min(s.ba.0)))
}

/// Which combination `AB ± BA` a commutator bound is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// `AB + BA` or `AB − BA`.
pub fn commutator(a: &CMatrix, b: &CMatrix, sign: Sign) -> Result<CMatrix> {
    same_square(a, b)?;
    a.matmul(b)?.try_add(&b.matmul(a)?.scale_real(sign.factor()))
}

struct CommTerms {
    wab: f64,
    wba: f64,
    na2nb2: f64,
    wa2b2: f64,
    wb2a2: f64,
}

fn comm_terms(a: &CMatrix, b: &CMatrix) -> Result<CommTerms> {
    same_square(a, b)?;
    let a2 = a.matmul(a)?;
    let b2 = b.matmul(b)?;
    Ok(CommTerms {
        wab: w(&a.matmul(b)?)?,
        wba: w(&b.matmul(a)?)?,
        na2nb2: operator_norm(&a2)? * operator_norm(&b2)?,
        wa2b2: w(&a2.matmul(&b2)?)?,
        wb2a2: w(&b2.matmul(&a2)?)?,
    })
}

/// Bound for `r(AB ± BA)`. The value does not depend on the sign; it is
/// taken so callers state which combination they bound.
pub fn bound_commutator_s3(a: &CMatrix, b: &CMatrix, _sign: Sign) -> Result<f64> {
    let c = comm_terms(a, b)?;
    Ok(half_form(c.wab, c.wba, 3.0 * c.na2nb2 + c.wa2b2.min(c.wb2a2)))
}

/// Baseline for `r(AB ± BA)` with `4‖A²‖‖B²‖`.
pub fn aok_commutator_s3(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    let c = comm_terms(a, b)?;
    Ok(half_form(c.wab, c.wba, 4.0 * c.na2nb2))
}

/// The two values of the refined and the baseline commutator bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct S4Values {
    /// `w(AB) + ½ sqrt(3 min{‖A‖‖AB²‖, ‖B‖‖A²B‖} + w(A²B²))`.
    pub via_ab: f64,
    /// `w(BA) + ½ sqrt(3 min{‖A‖‖B²A‖, ‖B‖‖BA²‖} + w(B²A²))`.
    pub via_ba: f64,
    /// `w(AB) + sqrt(min{‖A‖‖AB²‖, ‖B‖‖A²B‖})`.
    pub baseline_ab: f64,
    /// `w(BA) + sqrt(min{‖A‖‖B²A‖, ‖B‖‖BA²‖})`.
    pub baseline_ba: f64,
}

impl S4Values {
    pub fn best(&self) -> f64 {
        self.via_ab.min(self.via_ba)
    }
}

/// Both commutator bounds of the `w(AB) + …` type, together with their
/// pre-refinement baselines.
pub fn bound_commutator_s4(a: &CMatrix, b: &CMatrix) -> Result<S4Values> {
    same_square(a, b)?;
    let (na, nb) = (operator_norm(a)?, operator_norm(b)?);
    let a2 = a.matmul(a)?;
    let b2 = b.matmul(b)?;
    let m_ab = (na * operator_norm(&a.matmul(&b2)?)?).min(nb * operator_norm(&a2.matmul(b)?)?);
    let m_ba = (na * operator_norm(&b2.matmul(a)?)?).min(nb * operator_norm(&b.matmul(&a2)?)?);
    let wab = w(&a.matmul(b)?)?;
    let wba = w(&b.matmul(a)?)?;
    let wa2b2 = w(&a2.matmul(&b2)?)?;
    let wb2a2 = w(&b2.matmul(&a2)?)?;
    Ok(S4Values {
        via_ab: wab + 0.5 * (3.0 * m_ab + wa2b2).sqrt(),
        via_ba: wba + 0.5 * (3.0 * m_ba + wb2a2).sqrt(),
        baseline_ab: wab + m_ab.sqrt(),
        baseline_ba: wba + m_ba.sqrt(),
    })
}

struct ProdTerms {
    wab: f64,
    wba: f64,
    left: (f64, f64),
    right: (f64, f64),
}

fn prod_terms(a: &CMatrix, b: &CMatrix) -> Result<ProdTerms> {
    same_square(a, b)?;
    let ab = a.matmul(b)?;
    let ba = b.matmul(a)?;
    let bab = ba.matmul(b)?;
    let aba = ab.matmul(a)?;
    Ok(ProdTerms {
        wab: w(&ab)?,
        wba: w(&ba)?,
        left: (operator_norm(a)? * operator_norm(&bab)?, w(&ab.matmul(&ab)?)?),
        right: (operator_norm(b)? * operator_norm(&aba)?, w(&ba.matmul(&ba)?)?),
    })
}

/// Bound for `r(AB)`.
pub fn bound_product_s5(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    let p = prod_terms(a, b)?;
    let gamma = (3.0 * p.left.0 + p.left.1).min(3.0 * p.right.0 + p.right.1);
    Ok(0.5 * half_form(p.wab, p.wba, gamma))
}

/// Baseline for `r(AB)` with `4 min{‖A‖‖BAB‖, ‖B‖‖ABA‖}`.
pub fn aok_product_s5(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    let p = prod_terms(a, b)?;
    Ok(0.5 * half_form(p.wab, p.wba, 4.0 * p.left.0.min(p.right.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radius::spectral_radius;

    fn shift2() -> CMatrix {
        CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]])
    }

    fn rect(r: usize, c: usize, seed: f64) -> CMatrix {
        CMatrix::from_fn(r, c, |i, j| {
            let t = seed + 1.3 * i as f64 + 0.7 * j as f64;
            Complex64::new(t.sin(), (1.7 * t).cos() * 0.5)
        })
    }

    #[test]
    fn th3_single_pair_and_zero() {
        let p = FactorPair::new(rect(3, 2, 0.1), rect(2, 3, 0.9)).unwrap();
        let direct = w(&p.b.matmul(&p.a).unwrap()).unwrap();
        assert!((bound_th3(std::slice::from_ref(&p)).unwrap() - direct).abs() < 1e-12);
        let zero = FactorPair::new(rect(3, 2, 0.1), CMatrix::zeros(2, 3)).unwrap();
        let other = FactorPair::new(rect(3, 1, 0.4), CMatrix::zeros(1, 3)).unwrap();
        assert_eq!(bound_th3(&[zero, other]).unwrap(), 0.0);
    }

    #[test]
    fn th3_mixed_dims_dominates_spectral_radius() {
        let pairs = vec![
            FactorPair::new(rect(4, 4, 0.2), rect(4, 4, 1.1)).unwrap(),
            FactorPair::new(rect(4, 3, 2.3), rect(3, 4, 0.5)).unwrap(),
            FactorPair::new(rect(4, 2, -1.0), rect(2, 4, 3.0)).unwrap(),
        ];
        let r = spectral_radius(&pair_sum(&pairs).unwrap()).unwrap();
        assert!(r <= bound_th3(&pairs).unwrap() + 1e-8);
        assert!(FactorPair::new(rect(4, 2, 0.0), rect(3, 4, 0.0)).is_err());
    }

    #[test]
    fn cor_s1_examples() {
        let a1 = rect(3, 2, 0.3);
        let b1 = rect(2, 3, 1.9);
        let v = bound_cor_s1(&a1, &b1, &CMatrix::zeros(3, 1), &CMatrix::zeros(1, 3)).unwrap();
        assert!((v - w(&b1.matmul(&a1).unwrap()).unwrap()).abs() < 1e-12);
        let id = CMatrix::identity(3);
        let z = CMatrix::zeros(3, 3);
        assert!((bound_cor_s1(&id, &id, &z, &z).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(kittaneh_ams(&z, &z, &z, &z).unwrap(), 0.0);
        assert_eq!(aok_stud(&z, &z, &z, &z).unwrap(), 0.0);
    }

    #[test]
    fn cor_s1_ordering_on_sample() {
        let (a1, b1, a2, b2) = (rect(3, 2, 0.3), rect(2, 3, 1.9), rect(3, 4, -0.6), rect(4, 3, 2.2));
        let sum = a1.matmul(&b1).unwrap().try_add(&a2.matmul(&b2).unwrap()).unwrap();
        let r = spectral_radius(&sum).unwrap();
        let s1 = bound_cor_s1(&a1, &b1, &a2, &b2).unwrap();
        let stud = aok_stud(&a1, &b1, &a2, &b2).unwrap();
        let ams = kittaneh_ams(&a1, &b1, &a2, &b2).unwrap();
        assert!(r <= s1 + 1e-8 && s1 <= stud + 1e-10 && stud <= ams + 1e-10, "{r} {s1} {stud} {ams}");
    }

    #[test]
    fn scaled_th3_infimum_matches_closed_form() {
        let (a1, b1, a2, b2) = (rect(3, 2, 0.3), rect(2, 3, 1.9), rect(3, 4, -0.6), rect(4, 3, 2.2));
        let closed = bound_cor_s1(&a1, &b1, &a2, &b2).unwrap();
        // Log grid around the optimum, then a golden-section polish.
        let at = |log_t: f64| {
            let t = log_t.exp();
            let pairs = [
                FactorPair::new(a1.scale_real(t), b1.scale_real(1.0 / t)).unwrap(),
                FactorPair::new(a2.clone(), b2.clone()).unwrap(),
            ];
            bound_th3(&pairs).unwrap()
        };
        let grid: Vec<f64> = (0..=400).map(|k| -6.0 + 12.0 * k as f64 / 400.0).collect();
        let (mut best, mut best_val) = (0.0, f64::INFINITY);
        for &g in &grid {
            let v = at(g);
            if v < best_val {
                (best, best_val) = (g, v);
            }
        }
        let (mut lo, mut hi) = (best - 0.03, best + 0.03);
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        for _ in 0..80 {
            let m1 = hi - phi * (hi - lo);
            let m2 = lo + phi * (hi - lo);
            if at(m1) < at(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        let numeric = at(0.5 * (lo + hi));
        assert!((numeric - closed).abs() < 1e-9, "{numeric} vs {closed}");
    }

    #[test]
    fn s2_examples() {
        let a = rect(3, 3, 0.8);
        let z = CMatrix::zeros(3, 3);
        assert!((bound_sum_s2(&a, &z).unwrap() - w(&a).unwrap()).abs() < 1e-12);
        let r = spectral_radius(&a.scale_real(2.0)).unwrap();
        let v = bound_sum_s2(&a, &a).unwrap();
        assert!(r <= v + 1e-8);
        assert!(v <= aok_sum_s2(&a, &a).unwrap() + 1e-10);
    }

    #[test]
    fn s3_shift_pair_is_tight() {
        let a = shift2();
        let b = a.transpose();
        let v = bound_commutator_s3(&a, &b, Sign::Plus).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        assert!((spectral_radius(&commutator(&a, &b, Sign::Plus).unwrap()).unwrap() - 1.0).abs() < 1e-12);
        let c = a.scale_real(2.0);
        assert_eq!(spectral_radius(&commutator(&a, &c, Sign::Minus).unwrap()).unwrap(), 0.0);
    }

    #[test]
    fn s4_examples() {
        let a = rect(3, 3, 0.1);
        let v = bound_commutator_s4(&a, &CMatrix::zeros(3, 3)).unwrap();
        assert_eq!((v.via_ab, v.via_ba), (0.0, 0.0));
        let n = shift2();
        let v = bound_commutator_s4(&n, &n.adjoint()).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            let r = spectral_radius(&commutator(&n, &n.adjoint(), sign).unwrap()).unwrap();
            assert!(r <= v.best() + 1e-8);
        }
        assert!(v.via_ab <= v.baseline_ab + 1e-12 && v.via_ba <= v.baseline_ba + 1e-12);
    }

    #[test]
    fn s5_examples() {
        let id = CMatrix::identity(2);
        assert!((bound_product_s5(&id, &id).unwrap() - 1.0).abs() < 1e-12);
        let a = shift2();
        let b = a.transpose();
        let r = spectral_radius(&a.matmul(&b).unwrap()).unwrap();
        let v = bound_product_s5(&a, &b).unwrap();
        assert!((r - 1.0).abs() < 1e-12 && r <= v + 1e-8);
        assert!(v <= aok_product_s5(&a, &b).unwrap() + 1e-12);
    }
}
