//! The Hardy-space example: Berezin quantities of truncated shift and
//! projection operators and the refined 2×2 Berezin radius bound.

use radius_bounds::berezin::{hardy_example, HardyGrid};
use radius_bounds::error::Result;

fn main() -> Result<()> {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let ex = hardy_example(n, &HardyGrid::default(), Some(5))?;
    println!("N = {}, {} sample points", ex.dim, ex.grid_points);
    println!("ber(M_z)        {:.6}", ex.ber_m_z);
    println!("ber(M_z²)       {:.6}", ex.ber_m_z2);
    println!("‖P_C‖_ber       {:.6}", ex.norm_ber_p_c);
    println!("‖P_z‖_ber       {:.6}", ex.norm_ber_p_z);
    println!("‖P_z*‖_ber      {:.6}", ex.norm_ber_p_z_adj);
    println!("ber(P_z P_C)    {}", ex.ber_p_z_p_c);
    println!(
        "refined bound   {:.12} with limits, {:.12} on the grid",
        ex.cor1b_limit, ex.cor1b_grid
    );
    println!(
        "baseline        {:.12} with limits, {:.12} on the grid",
        ex.baseline_limit, ex.baseline_grid
    );
    println!("(4+√7)/4        {:.12}", ex.closed_form);
    if let Some(b) = ex.ber_block_grid {
        println!("product-grid ber of the block operator {b:.6}");
    }
    Ok(())
}
