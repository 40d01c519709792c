//! Root-modulus bounds through the companion matrix.

use num_complex::Complex64;
use radius_bounds::error::Result;
use radius_bounds::poly::{bound_abd, bound_companion_cor1, bound_estpoly, max_root_modulus, roots, PolySpec};

fn show(label: &str, high_to_low: &[f64]) -> Result<()> {
    let c: Vec<Complex64> = high_to_low.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let p = PolySpec::from_high_to_low(&c)?;
    println!("{label}");
    for z in roots(&p)? {
        println!("  root {:+.10} {:+.10}i", z.re, z.im);
    }
    println!("  max |root|       {:.10}", max_root_modulus(&p)?);
    println!(
        "  refined bound    {:.10}  (block evaluation {:.10})",
        bound_estpoly(&p),
        bound_companion_cor1(&p)?
    );
    println!("  baseline bound   {:.10}  (alpha = {:.6})", bound_abd(&p), p.alpha());
    Ok(())
}

fn main() -> Result<()> {
    show("z^3 + z + 1", &[1.0, 0.0, 1.0, 1.0])?;
    show("z^5 - 2z^4 + 0.5z^2 - 3", &[1.0, -2.0, 0.0, 0.5, 0.0, -3.0])?;
    show("z^2 - 1", &[1.0, 0.0, -1.0])
}
