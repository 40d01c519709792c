//! Upper bounds for the numerical radius of operator matrices and the
//! corollaries that specialize them: 2×2 closed forms, single operators,
//! sums, positive sums, products, Aluthge transforms and Kronecker products.

mod block;
mod kron;
mod product;
mod two_by_two;

pub use block::{bound_blockmatrix, bound_matrix, BoundMatrixKind};
pub use kron::{bound_kron_cor3, holbrook, khare_bound};
pub use product::{aluthge, bound_aluthge_transform, bound_product, bound_via_aluthge};
pub use two_by_two::{bound_cor1, bound_positive_sum, bound_single, bound_sum_cor6, lemma4_rhs};

/// Off-diagonal entry `sqrt((x + y)² − (x·y − η))` shared by every refined bound.
///
/// The radicand equals `x² + y² + xy + η ≥ 0`, so it never goes negative.
pub(crate) fn refined_entry(x: f64, y: f64, eta: f64) -> f64 {
    ((x + y).powi(2) - (x * y - eta)).max(0.0).sqrt()
}

/// `w([[a, β], [0, d]]) = ½(a + d) + ½ sqrt((a − d)² + β²)` for `a, d, β ≥ 0`.
pub(crate) fn upper_triangular_radius(a: f64, d: f64, beta: f64) -> f64 {
    0.5 * (a + d) + 0.5 * ((a - d).powi(2) + beta * beta).sqrt()
}
