//! Berezin radius and Berezin norm on finite kernel truncations.
//!
//! A [`KernelSpace`] is a truncation `C^N` of a reproducing kernel Hilbert
//! space together with a finite sample of domain points. Every quantity here
//! is a supremum over the sample, so it approaches the true supremum from
//! below as the sample grows.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{refined_entry, upper_triangular_radius};
use crate::error::{Error, Result};
use crate::matrix::{inner, operator_norm, vec_norm, BlockMatrix, CMatrix};
use crate::radius::numrad_nonneg;

/// Largest number of product-grid tuples a block Berezin radius will visit.
pub const PRODUCT_GRID_LIMIT: usize = 50_000_000;

type KernelFn = Arc<dyn Fn(Complex64, usize) -> Vec<Complex64> + Send + Sync>;

/// A kernel truncation: dimension, sample points and the kernel map.
#[derive(Clone)]
pub struct KernelSpace {
    dim: usize,
    points: Vec<Complex64>,
    kernel_fn: KernelFn,
    kernels: Vec<Vec<Complex64>>,
    norms: Vec<f64>,
    unit: Vec<Vec<Complex64>>,
}

impl std::fmt::Debug for KernelSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("KernelSpace")
            .field("dim", &self.dim)
            .field("points", &self.points.len())
            .finish()
    }
}

impl KernelSpace {
    /// Samples `kernel_fn(λ, dim)` at every point and normalises.
    pub fn new(
        dim: usize,
        points: Vec<Complex64>,
        kernel_fn: impl Fn(Complex64, usize) -> Vec<Complex64> + Send + Sync + 'static,
    ) -> Result<Self> {
        Self::build(dim, points, Arc::new(kernel_fn))
    }

    fn build(dim: usize, points: Vec<Complex64>, kernel_fn: KernelFn) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadSpec("kernel space dimension must be positive".into()));
        }
        if points.is_empty() {
            return Err(Error::BadSpec("kernel space needs at least one sample point".into()));
        }
        let kernels: Vec<Vec<Complex64>> = points.par_iter().map(|&l| kernel_fn(l, dim)).collect();
        let mut norms = Vec::with_capacity(points.len());
        let mut unit = Vec::with_capacity(points.len());
        for (k, l) in kernels.iter().zip(&points) {
            if k.len() != dim {
                return Err(Error::DimMismatch(format!(
                    "kernel at {l} has {} coordinates, expected {dim}",
                    k.len()
                )));
            }
            let n = vec_norm(k);
            if !(n.is_finite() && n > 0.0) {
                return Err(Error::BadSpec(format!("kernel at {l} has norm {n}")));
            }
            let u: Vec<Complex64> = k.iter().map(|z| z / n).collect();
            let drift = (vec_norm(&u) - 1.0).abs();
            if drift > 1e-12 {
                return Err(Error::BadSpec(format!(
                    "normalised kernel at {l} is off the unit sphere by {drift:e}"
                )));
            }
            norms.push(n);
            unit.push(u);
        }
        Ok(Self {
            dim,
            points,
            kernel_fn,
            kernels,
            norms,
            unit,
        })
    }

    /// Hardy space `H²(D)` truncated to the first `dim` monomials, sampled on `grid`.
    pub fn hardy(dim: usize, grid: &HardyGrid) -> Result<Self> {
        Self::new(dim, grid.points()?, hardy_kernel)
    }

    /// The same kernel map with additional sample points.
    pub fn with_extra_points(&self, extra: &[Complex64]) -> Result<Self> {
        let mut points = self.points.clone();
        points.extend_from_slice(extra);
        Self::build(self.dim, points, self.kernel_fn.clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    /// Unnormalised kernel `k_λ` at sample `p`.
    pub fn kernel(&self, p: usize) -> &[Complex64] {
        &self.kernels[p]
    }

    /// `‖k_λ‖` at sample `p`.
    pub fn kernel_norm(&self, p: usize) -> f64 {
        self.norms[p]
    }

    /// `k̂_λ = k_λ / ‖k_λ‖` at sample `p`.
    pub fn unit_kernel(&self, p: usize) -> &[Complex64] {
        &self.unit[p]
    }

    /// Berezin symbol `⟨A k̂_λ, k̂_λ⟩` at every sample point.
    pub fn symbol(&self, a: &CMatrix) -> Result<Vec<Complex64>> {
        self.check_square(a)?;
        Ok(self.unit.par_iter().map(|u| inner(&a.apply(u), u)).collect())
    }

    fn check_square(&self, a: &CMatrix) -> Result<()> {
        if a.shape() != (self.dim, self.dim) {
            return Err(Error::DimMismatch(format!(
                "operator is {}x{}, kernel space has dimension {}",
                a.rows(),
                a.cols(),
                self.dim
            )));
        }
        Ok(())
    }
}

/// Hardy kernel coordinates `(1, λ̄, λ̄², …, λ̄^{N−1})`.
pub fn hardy_kernel(lambda: Complex64, dim: usize) -> Vec<Complex64> {
    let c = lambda.conj();
    let mut out = Vec::with_capacity(dim);
    let mut z = Complex64::new(1.0, 0.0);
    for _ in 0..dim {
        out.push(z);
        z *= c;
    }
    out
}

/// Closed form `‖k_λ‖² = (1 − |λ|^{2N}) / (1 − |λ|²)` of the truncated Hardy kernel.
pub fn hardy_kernel_norm_sq(lambda: Complex64, dim: usize) -> f64 {
    let r2 = lambda.norm_sqr();
    if r2 == 0.0 {
        return 1.0;
    }
    (1.0 - r2.powi(dim as i32)) / (1.0 - r2)
}

/// Sample grid on the unit disk.
///
/// Geometric radii `1 − 2^{−k}` for `k = 1..=levels` with `angles` points each,
/// uniform radii `j / uniform_levels` for `j = 1..uniform_levels` with
/// `uniform_angles` points each, and optionally the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HardyGrid {
    pub levels: u32,
    pub angles: usize,
    pub uniform_levels: usize,
    pub uniform_angles: usize,
    pub origin: bool,
}

impl Default for HardyGrid {
    fn default() -> Self {
        Self {
            levels: 10,
            angles: 64,
            uniform_levels: 32,
            uniform_angles: 32,
            origin: true,
        }
    }
}

impl HardyGrid {
    /// Only the geometric rings and the origin.
    pub fn geometric(levels: u32, angles: usize) -> Self {
        Self {
            levels,
            angles,
            uniform_levels: 0,
            uniform_angles: 0,
            origin: true,
        }
    }

    pub fn points(&self) -> Result<Vec<Complex64>> {
        if self.levels > 52 {
            return Err(Error::BadSpec(format!(
                "{} geometric levels reach the unit circle in f64",
                self.levels
            )));
        }
        let mut pts = Vec::new();
        if self.origin {
            pts.push(Complex64::new(0.0, 0.0));
        }
        let mut ring = |r: f64, m: usize| {
            for a in 0..m {
                pts.push(Complex64::from_polar(r, TAU * a as f64 / m as f64));
            }
        };
        for k in 1..=self.levels {
            ring(1.0 - 0.5f64.powi(k as i32), self.angles);
        }
        for j in 1..self.uniform_levels {
            ring(j as f64 / self.uniform_levels as f64, self.uniform_angles);
        }
        if pts.is_empty() {
            return Err(Error::BadSpec("Hardy grid has no points".into()));
        }
        Ok(pts)
    }
}

/// `ber(A) = max_λ |⟨A k̂_λ, k̂_λ⟩|` over the sample.
pub fn berezin_radius(a: &CMatrix, k: &KernelSpace) -> Result<f64> {
    Ok(k.symbol(a)?.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// `‖A‖_ber = max_λ ‖A k̂_λ‖` over the sample of the domain space.
pub fn berezin_norm(a: &CMatrix, k: &KernelSpace) -> Result<f64> {
    if a.cols() != k.dim() {
        return Err(Error::DimMismatch(format!(
            "operator has {} columns, kernel space has dimension {}",
            a.cols(),
            k.dim()
        )));
    }
    Ok(k.unit.par_iter().map(|u| vec_norm(&a.apply(u))).reduce(|| 0.0, f64::max))
}

/// Row-major table of `⟨A x_q, y_p⟩` for `x_q` in `right` and `y_p` in `left`,
/// using unit kernels when `normalized` is set.
fn kernel_gram(a: &CMatrix, left: &KernelSpace, right: &KernelSpace, normalized: bool) -> Vec<Complex64> {
    let pick = |s: &KernelSpace, p: usize| if normalized { s.unit[p].clone() } else { s.kernels[p].clone() };
    let images: Vec<Vec<Complex64>> = (0..right.points.len()).into_par_iter().map(|q| a.apply(&pick(right, q))).collect();
    (0..left.points.len())
        .into_par_iter()
        .flat_map_iter(|p| {
            let y = pick(left, p);
            images.iter().map(move |img| inner(img, &y)).collect::<Vec<_>>()
        })
        .collect()
}

fn check_spaces(m: &BlockMatrix, spaces: &[KernelSpace]) -> Result<()> {
    if spaces.len() != m.n() {
        return Err(Error::DimMismatch(format!(
            "{} kernel spaces for a {}x{} operator matrix",
            spaces.len(),
            m.n(),
            m.n()
        )));
    }
    for (i, s) in spaces.iter().enumerate() {
        if m.row_dims()[i] != s.dim() || m.col_dims()[i] != s.dim() {
            return Err(Error::DimMismatch(format!(
                "block row/column {i} has dims {}x{}, kernel space {i} has dimension {}",
                m.row_dims()[i],
                m.col_dims()[i],
                s.dim()
            )));
        }
    }
    Ok(())
}

/// Berezin radius of `[A_ij]` on the product grid, with the normalised kernel
/// `(k_{λ_1}, …, k_{λ_n}) / sqrt(Σ ‖k_{λ_i}‖²)`.
pub fn block_berezin_radius(m: &BlockMatrix, spaces: &[KernelSpace]) -> Result<f64> {
    check_spaces(m, spaces)?;
    let n = m.n();
    let sizes: Vec<usize> = spaces.iter().map(|s| s.points.len()).collect();
    let total = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s)).unwrap_or(usize::MAX);
    if total > PRODUCT_GRID_LIMIT {
        return Err(Error::BadSpec(format!(
            "product grid has {total} tuples, limit is {PRODUCT_GRID_LIMIT}"
        )));
    }
    let diag: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            let s = &spaces[i];
            (0..sizes[i])
                .map(|p| inner(&m.block(i, i).apply(&s.kernels[p]), &s.kernels[p]))
                .collect()
        })
        .collect();
    let norm_sq: Vec<Vec<f64>> = spaces.iter().map(|s| s.norms.iter().map(|x| x * x).collect()).collect();
    // cross[(i, j)][p_i * |grid_j| + p_j] = ⟨A_ij k_{p_j}, k_{p_i}⟩ + ⟨A_ji k_{p_i}, k_{p_j}⟩ for i < j.
    let mut cross = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let upper = kernel_gram(m.block(i, j), &spaces[i], &spaces[j], false);
            let lower = kernel_gram(m.block(j, i), &spaces[j], &spaces[i], false);
            let (gi, gj) = (sizes[i], sizes[j]);
            let sum: Vec<Complex64> = (0..gi * gj).map(|idx| upper[idx] + lower[(idx % gj) * gi + idx / gj]).collect();
            cross.push((i, j, sum));
        }
    }
    let best = (0..sizes[0])
        .into_par_iter()
        .map(|p0| {
            let mut idx = vec![0usize; n];
            idx[0] = p0;
            let mut best = 0.0f64;
            loop {
                let mut num = Complex64::new(0.0, 0.0);
                let mut den = 0.0;
                for i in 0..n {
                    num += diag[i][idx[i]];
                    den += norm_sq[i][idx[i]];
                }
                for (i, j, table) in &cross {
                    num += table[idx[*i] * sizes[*j] + idx[*j]];
                }
                best = best.max(num.norm() / den);
                // Odometer over coordinates 1..n.
                let mut k = n;
                loop {
                    k -= 1;
                    if k == 0 {
                        return best;
                    }
                    idx[k] += 1;
                    if idx[k] < sizes[k] {
                        break;
                    }
                    idx[k] = 0;
                }
            }
        })
        .reduce(|| 0.0, f64::max);
    Ok(best)
}

/// Nonnegative bound matrix for the block Berezin radius.
///
/// Diagonal `ber(A_ii)`; above the diagonal
/// `sqrt((‖A_ij‖_ber + ‖A_ji*‖_ber)² − (‖A_ij‖_ber ‖A_ji*‖_ber − ber(A_ji A_ij)))`;
/// zero below. `A_ij`, `A_ji*` and `A_ji A_ij` all act on space `j`.
pub fn thm_ber_matrix(m: &BlockMatrix, spaces: &[KernelSpace]) -> Result<CMatrix> {
    check_spaces(m, spaces)?;
    let n = m.n();
    let mut out = CMatrix::zeros(n, n);
    for i in 0..n {
        out = out.with_entry(i, i, Complex64::new(berezin_radius(m.block(i, i), &spaces[i])?, 0.0));
        for j in i + 1..n {
            let (aij, aji) = (m.block(i, j), m.block(j, i));
            let x = berezin_norm(aij, &spaces[j])?;
            let y = berezin_norm(&aji.adjoint(), &spaces[j])?;
            let eta = berezin_radius(&aji.matmul(aij)?, &spaces[j])?;
            out = out.with_entry(i, j, Complex64::new(refined_entry(x, y, eta), 0.0));
        }
    }
    Ok(out)
}

/// `w` of [`thm_ber_matrix`]; an upper bound for the block Berezin radius.
pub fn bound_thm_ber(m: &BlockMatrix, spaces: &[KernelSpace]) -> Result<f64> {
    numrad_nonneg(&thm_ber_matrix(m, spaces)?)
}

/// `½(a + d) + ½ sqrt((a − d)² + (b + c)² − (bc − eta))` from its scalar inputs.
pub fn cor1b_value(ber_a: f64, ber_d: f64, b_ber: f64, c_adj_ber: f64, ber_cb: f64) -> f64 {
    upper_triangular_radius(ber_a, ber_d, refined_entry(b_ber, c_adj_ber, ber_cb))
}

/// `½(a + d) + ½ sqrt((a − d)² + (‖B‖ + ‖C‖)²)` from its scalar inputs.
pub fn bakherad_value(ber_a: f64, ber_d: f64, norm_b: f64, norm_c: f64) -> f64 {
    upper_triangular_radius(ber_a, ber_d, norm_b + norm_c)
}

fn two_by_two(a: &CMatrix, b: &CMatrix, c: &CMatrix, d: &CMatrix, spaces: &[KernelSpace; 2]) -> Result<BlockMatrix> {
    let m = BlockMatrix::two_by_two(a, b, c, d).map_err(|e| Error::DimMismatch(e.to_string()))?;
    check_spaces(&m, spaces)?;
    Ok(m)
}

/// Closed-form bound for `ber([[A, B], [C, D]])`.
pub fn bound_cor1b(a: &CMatrix, b: &CMatrix, c: &CMatrix, d: &CMatrix, spaces: &[KernelSpace; 2]) -> Result<f64> {
    two_by_two(a, b, c, d, spaces)?;
    let [s1, s2] = spaces;
    Ok(cor1b_value(
        berezin_radius(a, s1)?,
        berezin_radius(d, s2)?,
        berezin_norm(b, s2)?,
        berezin_norm(&c.adjoint(), s2)?,
        berezin_radius(&c.matmul(b)?, s2)?,
    ))
}

/// Baseline bound with operator norms `‖B‖ + ‖C‖` and no subtracted term.
pub fn bakherad_baseline(a: &CMatrix, b: &CMatrix, c: &CMatrix, d: &CMatrix, spaces: &[KernelSpace; 2]) -> Result<f64> {
    two_by_two(a, b, c, d, spaces)?;
    Ok(bakherad_value(
        berezin_radius(a, &spaces[0])?,
        berezin_radius(d, &spaces[1])?,
        operator_norm(b)?,
        operator_norm(c)?,
    ))
}

/// `max |⟨A₁₂k̂_{λ₂}, k̂_{λ₁}⟩| + |⟨A₂₁k̂_{λ₁}, k̂_{λ₂}⟩|` over all sample pairs,
/// with `A₁₂ : space 2 → space 1` and `A₂₁ : space 1 → space 2`.
pub fn cross_symbol_max(a12: &CMatrix, a21: &CMatrix, s1: &KernelSpace, s2: &KernelSpace) -> Result<f64> {
    if a12.shape() != (s1.dim(), s2.dim()) || a21.shape() != (s2.dim(), s1.dim()) {
        return Err(Error::DimMismatch(format!(
            "A12 is {}x{}, A21 is {}x{}, spaces have dims {} and {}",
            a12.rows(),
            a12.cols(),
            a21.rows(),
            a21.cols(),
            s1.dim(),
            s2.dim()
        )));
    }
    let upper = kernel_gram(a12, s1, s2, true);
    let lower = kernel_gram(a21, s2, s1, true);
    let (g1, g2) = (s1.points.len(), s2.points.len());
    Ok((0..g1 * g2)
        .map(|idx| upper[idx].norm() + lower[(idx % g2) * g1 + idx / g2].norm())
        .fold(0.0, f64::max))
}

/// `sqrt((‖A₁₂‖_ber + ‖A₂₁*‖_ber)² − (‖A₁₂‖_ber‖A₂₁*‖_ber − ber(A₂₁A₁₂)))`.
pub fn cross_symbol_bound(a12: &CMatrix, a21: &CMatrix, s1: &KernelSpace, s2: &KernelSpace) -> Result<f64> {
    if a12.rows() != s1.dim() || a21.cols() != s1.dim() {
        return Err(Error::DimMismatch(format!(
            "space 1 has dimension {}, A12 is {}x{}",
            s1.dim(),
            a12.rows(),
            a12.cols()
        )));
    }
    let x = berezin_norm(a12, s2)?;
    let y = berezin_norm(&a21.adjoint(), s2)?;
    let eta = berezin_radius(&a21.matmul(a12)?, s2)?;
    Ok(refined_entry(x, y, eta))
}

/// Truncated Hardy-space operators of the worked example.
#[derive(Debug, Clone)]
pub struct HardyOperators {
    /// `M_z`: multiplication by `z`, the lower shift.
    pub m_z: CMatrix,
    /// `M_{z²}`.
    pub m_z2: CMatrix,
    /// `P_C = e₀e₀*`.
    pub p_c: CMatrix,
    /// `P_z = e₁e₁*`.
    pub p_z: CMatrix,
}

impl HardyOperators {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 3 {
            return Err(Error::BadSpec(format!("Hardy truncation needs at least 3 monomials, got {dim}")));
        }
        let m_z = CMatrix::lower_shift(dim);
        let m_z2 = m_z.matmul(&m_z)?;
        let unit = |k: usize| {
            CMatrix::from_fn(dim, dim, |i, j| {
                if i == k && j == k {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
        };
        Ok(Self {
            m_z,
            m_z2,
            p_c: unit(0),
            p_z: unit(1),
        })
    }

    /// `[[M_z, P_C], [P_z, M_{z²}]]`.
    pub fn block(&self) -> Result<BlockMatrix> {
        BlockMatrix::two_by_two(&self.m_z, &self.p_c, &self.p_z, &self.m_z2)
    }
}

/// Every quantity of the Hardy-space worked example.
#[derive(Debug, Clone, Serialize)]
pub struct HardyExample {
    pub dim: usize,
    pub grid_points: usize,
    pub ber_m_z: f64,
    pub ber_m_z2: f64,
    pub norm_ber_p_c: f64,
    pub norm_ber_p_z: f64,
    pub norm_ber_p_z_adj: f64,
    /// Grid Berezin radius of `P_z P_C`.
    pub ber_p_z_p_c: f64,
    /// True when `P_z P_C` is the zero matrix entry for entry.
    pub product_is_zero: bool,
    pub norm_p_c: f64,
    pub norm_p_z: f64,
    /// Refined bound with the grid-computed inputs.
    pub cor1b_grid: f64,
    /// Same bound through the general `n × n` matrix.
    pub thm_ber_grid: f64,
    /// Baseline with the grid-computed Berezin radii.
    pub baseline_grid: f64,
    /// Refined bound with the limiting values `1, 1, 1, ½, 0` substituted.
    pub cor1b_limit: f64,
    /// Baseline with the limiting values substituted.
    pub baseline_limit: f64,
    /// `(4 + √7) / 4`.
    pub closed_form: f64,
    /// Grid Berezin radius of the block operator on the product grid, when requested.
    pub ber_block_grid: Option<f64>,
}

/// Builds the truncated example operators, computes every grid quantity and
/// both bounds. `product_grid` adds the product-grid Berezin radius of the
/// block operator on a grid with `product_grid` geometric levels and 32 angles.
pub fn hardy_example(dim: usize, grid: &HardyGrid, product_grid: Option<u32>) -> Result<HardyExample> {
    if dim < 16 {
        return Err(Error::BadSpec(format!("Hardy example needs N ≥ 16, got {dim}")));
    }
    let ops = HardyOperators::new(dim)?;
    let space = KernelSpace::hardy(dim, grid)?;
    let spaces = [space.clone(), space.clone()];
    let product = ops.p_z.matmul(&ops.p_c)?;
    let ber_m_z = berezin_radius(&ops.m_z, &space)?;
    let ber_m_z2 = berezin_radius(&ops.m_z2, &space)?;
    let norm_ber_p_c = berezin_norm(&ops.p_c, &space)?;
    let norm_ber_p_z = berezin_norm(&ops.p_z, &space)?;
    let norm_ber_p_z_adj = berezin_norm(&ops.p_z.adjoint(), &space)?;
    let ber_p_z_p_c = berezin_radius(&product, &space)?;
    let norm_p_c = operator_norm(&ops.p_c)?;
    let norm_p_z = operator_norm(&ops.p_z)?;
    let cor1b_grid = cor1b_value(ber_m_z, ber_m_z2, norm_ber_p_c, norm_ber_p_z_adj, ber_p_z_p_c);
    let m = ops.block()?;
    let thm_ber_grid = bound_thm_ber(&m, &spaces)?;
    let baseline_grid = bakherad_value(ber_m_z, ber_m_z2, norm_p_c, norm_p_z);
    let ber_block_grid = match product_grid {
        Some(levels) => {
            let coarse = KernelSpace::hardy(
                dim,
                &HardyGrid {
                    levels,
                    angles: 32,
                    uniform_levels: 0,
                    uniform_angles: 0,
                    origin: true,
                },
            )?;
            Some(block_berezin_radius(&m, &[coarse.clone(), coarse])?)
        }
        None => None,
    };
    Ok(HardyExample {
        dim,
        grid_points: space.points().len(),
        ber_m_z,
        ber_m_z2,
        norm_ber_p_c,
        norm_ber_p_z,
        norm_ber_p_z_adj,
        ber_p_z_p_c,
        product_is_zero: product.data().iter().all(|z| *z == Complex64::new(0.0, 0.0)),
        norm_p_c,
        norm_p_z,
        cor1b_grid,
        thm_ber_grid,
        baseline_grid,
        cor1b_limit: cor1b_value(1.0, 1.0, 1.0, 0.5, 0.0),
        baseline_limit: bakherad_value(1.0, 1.0, 1.0, 1.0),
        closed_form: (4.0 + 7f64.sqrt()) / 4.0,
        ber_block_grid,
    })
}
