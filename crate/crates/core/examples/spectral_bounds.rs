//! Spectral radius bounds for sums of products, sums, commutators and products.

use num_complex::Complex64;
use radius_bounds::error::Result;
use radius_bounds::matrix::CMatrix;
use radius_bounds::radius::spectral_radius;
use radius_bounds::spectral::{
    aok_stud, bound_commutator_s3, bound_commutator_s4, bound_cor_s1, bound_product_s5, bound_sum_s2, commutator, kittaneh_ams, Sign,
};

fn m(r: usize, c: usize, seed: f64) -> CMatrix {
    CMatrix::from_fn(r, c, |i, j| {
        let t = seed + 0.9 * i as f64 + 1.4 * j as f64;
        Complex64::new(t.cos(), 0.3 * (2.1 * t).sin())
    })
}

fn main() -> Result<()> {
    let (a1, b1, a2, b2) = (m(4, 3, 0.0), m(3, 4, 1.0), m(4, 2, 2.0), m(2, 4, 3.0));
    let sum = a1.matmul(&b1)?.try_add(&a2.matmul(&b2)?)?;
    println!("r(A1B1 + A2B2) = {:.12}", spectral_radius(&sum)?);
    println!("  refined       {:.12}", bound_cor_s1(&a1, &b1, &a2, &b2)?);
    println!("  w baseline    {:.12}", aok_stud(&a1, &b1, &a2, &b2)?);
    println!("  norm baseline {:.12}", kittaneh_ams(&a1, &b1, &a2, &b2)?);

    let (a, b) = (m(3, 3, 0.5), m(3, 3, 1.7));
    println!("r(A+B) = {:.12} ≤ {:.12}", spectral_radius(&a.try_add(&b)?)?, bound_sum_s2(&a, &b)?);
    for sign in [Sign::Plus, Sign::Minus] {
        let r = spectral_radius(&commutator(&a, &b, sign)?)?;
        let s4 = bound_commutator_s4(&a, &b)?;
        println!(
            "r(AB{}BA) = {r:.12} ≤ {:.12}, {:.12}",
            if sign == Sign::Plus { '+' } else { '-' },
            bound_commutator_s3(&a, &b, sign)?,
            s4.best()
        );
    }
    println!(
        "r(AB) = {:.12} ≤ {:.12}",
        spectral_radius(&a.matmul(&b)?)?,
        bound_product_s5(&a, &b)?
    );
    Ok(())
}
