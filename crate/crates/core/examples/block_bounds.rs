//! Every scalar bound-matrix recipe on one 3×3 operator matrix.

use num_complex::Complex64;
use radius_bounds::bounds::{bound_blockmatrix, bound_cor1, bound_matrix, BoundMatrixKind};
use radius_bounds::error::{Error, Result};
use radius_bounds::matrix::{BlockMatrix, CMatrix};
use radius_bounds::radius::w;

fn block(r: usize, c: usize, seed: f64) -> CMatrix {
    CMatrix::from_fn(r, c, |i, j| {
        let t = seed + 1.3 * i as f64 - 0.7 * j as f64;
        Complex64::new(t.sin(), 0.4 * (1.9 * t).cos())
    })
}

fn main() -> Result<()> {
    let dims = [2, 2, 2];
    let grid = dims
        .iter()
        .enumerate()
        .map(|(i, &r)| dims.iter().enumerate().map(|(j, &c)| block(r, c, (3 * i + j) as f64)).collect())
        .collect();
    let m = BlockMatrix::new(grid)?;
    println!("w(T) = {:.12}", w(&m.flatten())?);
    for kind in BoundMatrixKind::ALL {
        match bound_blockmatrix(&m, kind) {
            Ok(v) => println!("{:<11} {v:.12}", kind.name()),
            Err(Error::UnsupportedKind(_, why)) => println!("{:<11} not applicable: {why}", kind.name()),
            Err(e) => return Err(e),
        }
    }
    println!("THM2 scalar matrix:\n{:?}", bound_matrix(&m, BoundMatrixKind::Thm2)?);

    let (a, b, c, d) = (block(2, 2, 0.1), block(2, 3, 0.2), block(3, 2, 0.3), block(3, 3, 0.4));
    let two = BlockMatrix::two_by_two(&a, &b, &c, &d)?;
    println!(
        "2×2 closed form {:.12}, general recipe {:.12}, w = {:.12}",
        bound_cor1(&a, &b, &c, &d)?,
        bound_blockmatrix(&two, BoundMatrixKind::Thm2)?,
        w(&two.flatten())?
    );
    Ok(())
}
