//! Single-operator, sum, positive-sum, product and Aluthge bounds.

use num_complex::Complex64;
use radius_bounds::bounds::{
    aluthge, bound_aluthge_transform, bound_positive_sum, bound_product, bound_single, bound_sum_cor6, bound_via_aluthge,
};
use radius_bounds::error::Result;
use radius_bounds::matrix::{operator_norm, CMatrix};
use radius_bounds::radius::w;

fn main() -> Result<()> {
    let b = CMatrix::from_fn(3, 3, |i, j| Complex64::new((i * 3 + j) as f64 - 4.0, (j as f64) * 0.5));
    println!(
        "w(B) {:.10} ≤ single {:.10} ≤ ‖B‖ {:.10}",
        w(&b)?,
        bound_single(&b)?,
        operator_norm(&b)?
    );

    let c = b.adjoint().scale_real(0.5);
    println!(
        "‖B + C*‖ {:.10} ≤ {:.10}",
        operator_norm(&b.try_add(&c.adjoint())?)?,
        bound_sum_cor6(&b, &c)?
    );

    let p = b.adjoint().matmul(&b)?.hermitian_part();
    let q = CMatrix::diag_real(&[1.0, 2.0, 0.5]);
    println!(
        "‖P + Q‖ {:.10} ≤ {:.10}",
        operator_norm(&p.try_add(&q)?)?,
        bound_positive_sum(&p, &q, 0.5, 0.5)?
    );

    println!("w(BQ) {:.10} ≤ {:.10}", w(&b.matmul(&q)?)?, bound_product(&b, &q, false)?);

    for t in [0.0, 0.5, 1.0] {
        println!(
            "t = {t}: w(Ã_t) {:.10} ≤ {:.10};  w(B) ≤ {:.10}",
            w(&aluthge(&b, t)?)?,
            bound_aluthge_transform(&b, t)?,
            bound_via_aluthge(&b, t)?
        );
    }
    Ok(())
}
