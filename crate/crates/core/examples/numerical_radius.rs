//! Numerical radius, spectral radius and norm of a few small matrices.

use num_complex::Complex64;
use radius_bounds::error::Result;
use radius_bounds::matrix::{operator_norm, CMatrix};
use radius_bounds::radius::{numrad_nonneg, spectral_radius, sup_theta_norm, w};

fn main() -> Result<()> {
    let jordan = CMatrix::from_real_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]);
    println!("Jordan block [[1,2],[0,1]]");
    println!(
        "  r = {:.12}  w = {:.12}  ‖·‖ = {:.12}",
        spectral_radius(&jordan)?,
        w(&jordan)?,
        operator_norm(&jordan)?
    );

    for n in [2, 5, 10] {
        let l = CMatrix::lower_shift(n);
        println!(
            "shift L_{n}: w = {:.12}, cos(π/(n+1)) = {:.12}",
            w(&l)?,
            (std::f64::consts::PI / (n as f64 + 1.0)).cos()
        );
    }

    let t = CMatrix::from_real_rows(&[vec![0.5, 2.0, 0.0], vec![0.1, 0.0, 1.0], vec![0.3, 0.2, 0.7]]);
    println!(
        "nonnegative 3×3: θ-scan {:.12}, symmetric shortcut {:.12}",
        w(&t)?,
        numrad_nonneg(&t)?
    );

    let b = CMatrix::from_rows(&[vec![Complex64::new(1.0, 1.0), Complex64::new(0.0, -2.0)]]);
    let c = CMatrix::from_rows(&[vec![Complex64::new(0.5, 0.0)], vec![Complex64::new(1.0, 0.3)]]);
    println!("sup_θ ‖e^{{iθ}}B + e^{{−iθ}}C*‖ = {:.12}", sup_theta_norm(&b, &c)?);
    Ok(())
}
