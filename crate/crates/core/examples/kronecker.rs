//! Numerical radius bounds for Kronecker products.

use num_complex::Complex64;
use radius_bounds::bounds::{bound_kron_cor3, holbrook, khare_bound};
use radius_bounds::error::Result;
use radius_bounds::matrix::{kron, CMatrix};
use radius_bounds::radius::w;

fn main() -> Result<()> {
    let a = CMatrix::from_real_rows(&[vec![0.0, 1.0, 0.5], vec![0.2, 0.3, 0.0], vec![0.0, 0.8, 0.1]]);
    let b = CMatrix::from_fn(3, 3, |i, j| {
        Complex64::new((i + 2 * j) as f64 * 0.3 - 0.5, (i as f64 - j as f64) * 0.2)
    });
    println!("w(A⊗B)   {:.12}", w(&kron(&a, &b))?);
    println!("refined  {:.12}", bound_kron_cor3(&a, &b)?);
    println!("Khare    {:.12}", khare_bound(&a, &b)?);
    println!("Holbrook {:.12}", holbrook(&a, &b)?);
    Ok(())
}
