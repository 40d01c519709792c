//! Single-operator, sum, positive-sum, product and Aluthge bounds, entrywise
//! monotonicity and the 2×2 closed form.

use num_complex::Complex64;
use rand::Rng;

use crate::bounds::{
    aluthge, bound_aluthge_transform, bound_blockmatrix, bound_cor1, bound_positive_sum, bound_product, bound_single, bound_sum_cor6,
    bound_via_aluthge, BoundMatrixKind,
};
use crate::error::Result;
use crate::harness::ensemble::{complex_gaussian, mixed_block, nonnegative, sample, EnsembleKind};
use crate::harness::report::{BoundReport, ReportBuilder, TrialInputs};
use crate::harness::{unknown_kind, Group, RunConfig, TrialRng};
use crate::matrix::{operator_norm, BlockMatrix, CMatrix};
use crate::radius::{numrad_nonneg, sup_theta_norm, w};

/// Agreement of the closed 2×2 form with the general bound matrix.
pub const CONSISTENCY_TOL: f64 = 1e-10;
/// Slack of the entrywise monotonicity check.
pub const MONOTONE_SLACK: f64 = 1e-10;

pub fn groups(cfg: &RunConfig) -> Vec<Group> {
    vec![
        Group::new("single", cfg.trials, make_square),
        Group::new("sum", cfg.trials, make_sum),
        Group::new("positive-sum", cfg.trials, make_positive),
        Group::new("product", cfg.trials, make_product),
        Group::new("commuting-product", cfg.share(5), make_commuting),
        Group::new("aluthge", cfg.trials, make_aluthge),
        Group::new("monotone", cfg.share(2), make_monotone),
        Group::new("two-by-two", cfg.share(2), make_two_by_two),
    ]
}

fn make_square(rng: &mut TrialRng, _: usize, cfg: &RunConfig) -> Result<TrialInputs> {
    let d = cfg.pick_dim(rng, 1..=8);
    Ok(TrialInputs::default().with_matrix("B", &mixed_block(d, d, rng)))
}

fn make_sum(rng: &mut TrialRng, _: usize, cfg: &RunConfig) -> Result<TrialInputs> {
    let p = cfg.pick_dim(rng, 1..=6);
    let q = cfg.pick_dim(rng, 1..=6);
    Ok(TrialInputs::default()
        .with_matrix("B", &mixed_block(p, q, rng))
        .with_matrix("C", &mixed_block(q, p, rng)))
}

fn make_positive(rng: &mut TrialRng, _: usize, cfg: &RunConfig) -> Result<TrialInputs> {
    let d = cfg.pick_dim(rng, 1..=6);
    Ok(TrialInputs::default()
        .with_matrix("A", &sample(EnsembleKind::Positive, d, rng))
        .with_matrix("B", &sample(EnsembleKind::Positive, d, rng))
        .with_scalar("alpha", rng.random())
        .with_scalar("t", rng.random()))
}

fn make_product(rng: &mut TrialRng, _: usize, cfg: &RunConfig) -> Result<TrialInputs> {
    let d = cfg.pick_dim(rng, 1..=6);
    Ok(TrialInputs::default()
        .with_matrix("A", &mixed_block(d, d, rng))
        .with_matrix("B", &mixed_block(d, d, rng)))
}

/// `B = c₀I + c₁A + c₂A²`, which commutes with `A`.
fn make_commuting(rng: &mut TrialRng, _: usize, cfg: &RunConfig) -> Result<TrialInputs> {
    let d = cfg.pick_dim(rng, 1..=6);
    let a = mixed_block(d, d, rng);
    let c: Vec<Complex64> = (0..3).map(|_| complex_gaussian(rng)).collect();
    let a2 = a.matmul(&a)?;
    let b = CMatrix::identity(d).scale(c[0]).try_add(&a.scale(c[1]))?.try_add(&a2.scale(c[2]))?;
    Ok(TrialInputs::default().with_matrix("A", &a).with_matrix("B", &b))
}

fn make_aluthge(rng: &mut TrialRng, _: usize, cfg: &RunConfig) -> Result<TrialInputs> {
    let d = cfg.pick_dim(rng, 1..=6);
    Ok(TrialInputs::default()
        .with_matrix("A", &mixed_block(d, d, rng))
        .with_scalar("t", rng.random()))
}

/// `S ≤ T` entrywise with `S = T ∘ U`, `U` uniform in `[0, 1]`.
fn make_monotone(rng: &mut TrialRng, _: usize, cfg: &RunConfig) -> Result<TrialInputs> {
    let n = cfg.pick_dim(rng, 1..=8);
    let t = nonnegative(n, n, rng);
    let u = nonnegative(n, n, rng);
    let s = CMatrix::from_fn(n, n, |i, j| t.get(i, j) * u.get(i, j).re);
    Ok(TrialInputs::default().with_matrix("S", &s).with_matrix("T", &t))
}

fn make_two_by_two(rng: &mut TrialRng, _: usize, cfg: &RunConfig) -> Result<TrialInputs> {
    let p = cfg.pick_dim(rng, 1..=5);
    let q = cfg.pick_dim(rng, 1..=5);
    let m = BlockMatrix::two_by_two(
        &mixed_block(p, p, rng),
        &mixed_block(p, q, rng),
        &mixed_block(q, p, rng),
        &mixed_block(q, q, rng),
    )?;
    Ok(TrialInputs::default().with_matrix("T", &m.flatten()).with_dims(vec![p, q]))
}

pub fn evaluate(inputs: &TrialInputs, slack: f64) -> Result<BoundReport> {
    let id = inputs.case_id.clone();
    let report = match inputs.kind.as_str() {
        "single" => {
            let b = inputs.matrix("B")?;
            let v = bound_single(&b)?;
            let mut r = ReportBuilder::new(id, "w(B)", w(&b)?, slack);
            r.upper("SINGLE", v).dominates("NORM", operator_norm(&b)?, "SINGLE", v);
            r
        }
        "sum" => {
            let (b, c) = (inputs.matrix("B")?, inputs.matrix("C")?);
            let norm_sum = operator_norm(&b.try_add(&c.adjoint())?)?;
            let sup = sup_theta_norm(&b, &c)?;
            let cor6 = bound_sum_cor6(&b, &c)?;
            let mut r = ReportBuilder::new(id, "‖B+C*‖", norm_sum, slack);
            r.upper("SUP_THETA_NORM", sup)
                .upper("COR6", cor6)
                .dominates("COR6", cor6, "SUP_THETA_NORM", sup);
            r
        }
        "positive-sum" => {
            let (a, b) = (inputs.matrix("A")?, inputs.matrix("B")?);
            let (alpha, t) = (inputs.scalar("alpha")?, inputs.scalar("t")?);
            let mut r = ReportBuilder::new(id, "‖A+B‖", operator_norm(&a.try_add(&b)?)?, slack);
            r.upper("POSITIVE_SUM", bound_positive_sum(&a, &b, alpha, t)?)
                .upper("POSITIVE_SUM(1/2,1/2)", bound_positive_sum(&a, &b, 0.5, 0.5)?);
            r
        }
        "product" | "commuting-product" => {
            let (a, b) = (inputs.matrix("A")?, inputs.matrix("B")?);
            let mut r = ReportBuilder::new(id, "w(AB)", w(&a.matmul(&b)?)?, slack);
            r.upper("PRODUCT", bound_product(&a, &b, false)?);
            if inputs.kind == "commuting-product" {
                r.upper("PRODUCT_COMMUTING", bound_product(&a, &b, true)?);
            }
            r
        }
        "aluthge" => {
            let a = inputs.matrix("A")?;
            let t = inputs.scalar("t")?;
            let w_at = w(&aluthge(&a, t)?)?;
            let transform = bound_aluthge_transform(&a, t)?;
            let norm = operator_norm(&a)?;
            let mut r = ReportBuilder::new(id, "w(A)", w(&a)?, slack);
            r.upper("VIA_ALUTHGE", bound_via_aluthge(&a, t)?)
                .upper("VIA_TRANSFORM_BOUND", 0.5 * transform + 0.5 * norm)
                .dominates("ALUTHGE_TRANSFORM", transform, "w(A_t)", w_at)
                .dominates("NORM", norm, "w(A_t)", w_at);
            r
        }
        "monotone" => {
            let (s, t) = (inputs.matrix("S")?, inputs.matrix("T")?);
            let ws = numrad_nonneg(&s)?;
            let mut r = ReportBuilder::new(id, "w(S)", ws, slack);
            r.dominates_with("W(T)", numrad_nonneg(&t)?, "w(S)", ws, MONOTONE_SLACK);
            r
        }
        "two-by-two" => {
            let m = BlockMatrix::partition(&inputs.matrix("T")?, &inputs.dims)?;
            let thm2 = bound_blockmatrix(&m, BoundMatrixKind::Thm2)?;
            let cor1 = bound_cor1(m.block(0, 0), m.block(0, 1), m.block(1, 0), m.block(1, 1))?;
            let mut r = ReportBuilder::new(id, "w(T)", w(&m.flatten())?, slack);
            r.upper("COR1", cor1).equals("COR1", cor1, "THM2", thm2, CONSISTENCY_TOL);
            r
        }
        _ => return Err(unknown_kind(inputs)),
    };
    Ok(report.finish(inputs.clone()))
}
