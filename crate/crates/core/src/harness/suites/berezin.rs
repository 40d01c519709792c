//! The Hardy-space example and random block operators on Hardy truncations.

use num_complex::Complex64;
use rand::Rng;

use crate::berezin::{
    bakherad_baseline, berezin_norm, berezin_radius, block_berezin_radius, bound_cor1b, bound_thm_ber, cross_symbol_bound,
    cross_symbol_max, hardy_example, hardy_kernel_norm_sq, HardyGrid, KernelSpace,
};
use crate::error::{Error, Result};
use crate::harness::ensemble::mixed_block;
use crate::harness::report::{BoundReport, ReportBuilder, TrialInputs};
use crate::harness::{unknown_kind, Group, RunConfig, TrialRng};
use crate::matrix::{operator_norm, BlockMatrix, CMatrix};
use crate::radius::w;

/// Truncation used for the worked example.
pub const EXAMPLE_DIM: usize = 200;
/// Geometric levels of the coarse grid for the product-grid radius.
pub const PRODUCT_LEVELS: u32 = 5;

pub const LIMIT_TOL: f64 = 1e-9;
pub const P_Z_TOL: f64 = 1e-3;
pub const P_C_TOL: f64 = 1e-6;
pub const CONSISTENCY_TOL: f64 = 1e-10;

/// Sample for the random trials.
const RANDOM_GRID: HardyGrid = HardyGrid {
    levels: 6,
    angles: 24,
    uniform_levels: 8,
    uniform_angles: 16,
    origin: true,
};
/// Coarse grid for the product-grid radius of the random trials.
const RANDOM_PRODUCT_GRID: HardyGrid = HardyGrid {
    levels: 4,
    angles: 16,
    uniform_levels: 0,
    uniform_angles: 0,
    origin: true,
};

pub fn groups(cfg: &RunConfig) -> Vec<Group> {
    vec![
        Group::new("hardy-example", 1, make_example),
        Group::new("random", cfg.share(10), make_random),
    ]
}

fn make_example(_: &mut TrialRng, _: usize, _: &RunConfig) -> Result<TrialInputs> {
    Ok(TrialInputs::default().with_dims(vec![EXAMPLE_DIM]))
}

/// Random 2×2 operator matrix on two Hardy truncations plus a few extra
/// sample points for the monotonicity check.
fn make_random(rng: &mut TrialRng, _: usize, cfg: &RunConfig) -> Result<TrialInputs> {
    let n1 = cfg.pick_dim(rng, 2..=8);
    let n2 = cfg.pick_dim(rng, 2..=8);
    let extra: Vec<Complex64> = (0..4)
        .map(|_| Complex64::from_polar(rng.random::<f64>().sqrt() * 0.999, rng.random::<f64>() * std::f64::consts::TAU))
        .collect();
    Ok(TrialInputs::default()
        .with_matrix("A", &mixed_block(n1, n1, rng))
        .with_matrix("B", &mixed_block(n1, n2, rng))
        .with_matrix("C", &mixed_block(n2, n1, rng))
        .with_matrix("D", &mixed_block(n2, n2, rng))
        .with_matrix("extra", &CMatrix::row(&extra))
        .with_dims(vec![n1, n2]))
}

pub fn evaluate(inputs: &TrialInputs, slack: f64) -> Result<BoundReport> {
    match inputs.kind.as_str() {
        "hardy-example" => example(inputs, slack),
        "random" => random(inputs, slack),
        _ => Err(unknown_kind(inputs)),
    }
}

fn example(inputs: &TrialInputs, slack: f64) -> Result<BoundReport> {
    let n = *inputs
        .dims
        .first()
        .ok_or_else(|| Error::BadSpec("Hardy example needs a truncation size".into()))?;
    let ex = hardy_example(n, &HardyGrid::default(), Some(PRODUCT_LEVELS))?;
    let mut r = ReportBuilder::new(inputs.case_id.clone(), "(4+sqrt7)/4", ex.closed_form, slack);
    r.equals("COR1B_LIMIT", ex.cor1b_limit, "(4+sqrt7)/4", ex.closed_form, LIMIT_TOL)
        .equals("BAKHERAD_LIMIT", ex.baseline_limit, "2", 2.0, 0.0)
        .strictly_below("COR1B_LIMIT", ex.cor1b_limit, "BAKHERAD_LIMIT", ex.baseline_limit, 0.0)
        .equals("NORM_BER_P_Z", ex.norm_ber_p_z, "1/2", 0.5, P_Z_TOL)
        .equals("NORM_BER_P_Z_ADJ", ex.norm_ber_p_z_adj, "1/2", 0.5, P_Z_TOL)
        .equals("NORM_BER_P_C", ex.norm_ber_p_c, "1", 1.0, P_C_TOL)
        .equals("BER_P_Z_P_C", ex.ber_p_z_p_c, "0", 0.0, 0.0)
        .dominates("(N-1)/N", (n as f64 - 1.0) / n as f64, "BER_M_Z", ex.ber_m_z)
        .equals("THM_BER_GRID", ex.thm_ber_grid, "COR1B_GRID", ex.cor1b_grid, CONSISTENCY_TOL)
        .dominates("BAKHERAD_GRID", ex.baseline_grid, "COR1B_GRID", ex.cor1b_grid)
        .dominates("COR1B_LIMIT", ex.cor1b_limit, "COR1B_GRID", ex.cor1b_grid);
    if !ex.product_is_zero {
        r.equals("P_Z_P_C_IS_ZERO", 1.0, "0", 0.0, 0.0);
    }
    if let Some(block) = ex.ber_block_grid {
        r.dominates("THM_BER_GRID", ex.thm_ber_grid, "BER_BLOCK_GRID", block);
    }
    Ok(r.finish(inputs.clone()))
}

fn random(inputs: &TrialInputs, slack: f64) -> Result<BoundReport> {
    let (a, b, c, d) = (inputs.matrix("A")?, inputs.matrix("B")?, inputs.matrix("C")?, inputs.matrix("D")?);
    let (n1, n2) = (a.rows(), d.rows());
    let spaces = [KernelSpace::hardy(n1, &RANDOM_GRID)?, KernelSpace::hardy(n2, &RANDOM_GRID)?];
    let coarse = [
        KernelSpace::hardy(n1, &RANDOM_PRODUCT_GRID)?,
        KernelSpace::hardy(n2, &RANDOM_PRODUCT_GRID)?,
    ];
    let m = BlockMatrix::two_by_two(&a, &b, &c, &d)?;
    let oracle = block_berezin_radius(&m, &coarse)?;
    let thm = bound_thm_ber(&m, &spaces)?;
    let cor = bound_cor1b(&a, &b, &c, &d, &spaces)?;
    let base = bakherad_baseline(&a, &b, &c, &d, &spaces)?;
    let mut r = ReportBuilder::new(inputs.case_id.clone(), "ber_grid(T)", oracle, slack);
    r.upper("THM_BER", thm)
        .upper("W(T)", w(&m.flatten())?)
        .equals("COR1B", cor, "THM_BER", thm, CONSISTENCY_TOL)
        .dominates("BAKHERAD", base, "COR1B", cor)
        .dominates("W(A)", w(&a)?, "ber(A)", berezin_radius(&a, &spaces[0])?)
        .dominates("W(D)", w(&d)?, "ber(D)", berezin_radius(&d, &spaces[1])?)
        .dominates("NORM(B)", operator_norm(&b)?, "norm_ber(B)", berezin_norm(&b, &spaces[1])?)
        .dominates("NORM(C)", operator_norm(&c)?, "norm_ber(C)", berezin_norm(&c, &spaces[0])?)
        .dominates(
            "CROSS_SYMBOL_BOUND",
            cross_symbol_bound(&b, &c, &spaces[0], &spaces[1])?,
            "cross_symbol_max",
            cross_symbol_max(&b, &c, &spaces[0], &spaces[1])?,
        );
    let bigger = spaces[0].with_extra_points(inputs.matrix("extra")?.data())?;
    r.dominates_with(
        "ber(A) enlarged",
        berezin_radius(&a, &bigger)?,
        "ber(A)",
        berezin_radius(&a, &spaces[0])?,
        0.0,
    );
    let worst = (0..bigger.points().len())
        .map(|p| {
            let exact = hardy_kernel_norm_sq(bigger.points()[p], n1);
            (bigger.kernel_norm(p).powi(2) - exact).abs() / exact.max(1.0)
        })
        .fold(0.0, f64::max);
    r.equals("KERNEL_NORM_SQ", worst, "0", 0.0, 1e-10);
    Ok(r.finish(inputs.clone()))
}
