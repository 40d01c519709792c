//! Spectral radius bounds against the eigensolver.

use rand::Rng;

use crate::error::Result;
use crate::harness::ensemble::mixed_block;
use crate::harness::report::{BoundReport, ReportBuilder, TrialInputs};
use crate::harness::{unknown_kind, Group, RunConfig, TrialRng};
use crate::radius::spectral_radius;
use crate::spectral::{
    aok_commutator_s3, aok_product_s5, aok_stud, aok_sum_s2, bound_commutator_s3, bound_commutator_s4, bound_cor_s1, bound_product_s5,
    bound_sum_s2, bound_th3, commutator, kittaneh_ams, FactorPair, Sign,
};

pub fn groups(cfg: &RunConfig) -> Vec<Group> {
    vec![
        Group::new("quadruple", cfg.trials, make_quadruple),
        Group::new("square", cfg.trials, make_square),
    ]
}

/// `A_i : C^{d_i} → C^{d_1}`, `B_i : C^{d_1} → C^{d_i}`.
fn make_quadruple(rng: &mut TrialRng, _: usize, cfg: &RunConfig) -> Result<TrialInputs> {
    let d1 = cfg.pick_dim(rng, 2..=8);
    let d2 = rng.random_range(1..=6);
    let d3 = rng.random_range(1..=6);
    Ok(TrialInputs::default()
        .with_matrix("A1", &mixed_block(d1, d2, rng))
        .with_matrix("B1", &mixed_block(d2, d1, rng))
        .with_matrix("A2", &mixed_block(d1, d3, rng))
        .with_matrix("B2", &mixed_block(d3, d1, rng))
        .with_dims(vec![d1, d2, d3]))
}

/// One in ten pairs uses `B = A*`.
fn make_square(rng: &mut TrialRng, _: usize, cfg: &RunConfig) -> Result<TrialInputs> {
    let d = cfg.pick_dim(rng, 2..=8);
    let a = mixed_block(d, d, rng);
    let b = if rng.random_bool(0.1) {
        a.adjoint()
    } else {
        mixed_block(d, d, rng)
    };
    Ok(TrialInputs::default().with_matrix("A", &a).with_matrix("B", &b).with_dims(vec![d]))
}

pub fn evaluate(inputs: &TrialInputs, slack: f64) -> Result<BoundReport> {
    match inputs.kind.as_str() {
        "quadruple" => quadruple(inputs, slack),
        "square" => square(inputs, slack),
        _ => Err(unknown_kind(inputs)),
    }
}

fn quadruple(inputs: &TrialInputs, slack: f64) -> Result<BoundReport> {
    let (a1, b1) = (inputs.matrix("A1")?, inputs.matrix("B1")?);
    let (a2, b2) = (inputs.matrix("A2")?, inputs.matrix("B2")?);
    let sum = a1.matmul(&b1)?.try_add(&a2.matmul(&b2)?)?;
    let oracle = spectral_radius(&sum)?;
    let cor = bound_cor_s1(&a1, &b1, &a2, &b2)?;
    let stud = aok_stud(&a1, &b1, &a2, &b2)?;
    let ams = kittaneh_ams(&a1, &b1, &a2, &b2)?;
    let th3 = bound_th3(&[FactorPair::new(a1, b1)?, FactorPair::new(a2, b2)?])?;
    let mut r = ReportBuilder::new(inputs.case_id.clone(), "r(A1B1+A2B2)", oracle, slack);
    r.upper("COR_S1", cor)
        .upper("AOK_STUD", stud)
        .upper("KITTANEH_AMS", ams)
        .upper("TH3", th3)
        .dominates("AOK_STUD", stud, "COR_S1", cor)
        .dominates("KITTANEH_AMS", ams, "AOK_STUD", stud);
    Ok(r.finish(inputs.clone()))
}

fn square(inputs: &TrialInputs, slack: f64) -> Result<BoundReport> {
    let (a, b) = (inputs.matrix("A")?, inputs.matrix("B")?);
    let r_sum = spectral_radius(&a.try_add(&b)?)?;
    let r_plus = spectral_radius(&commutator(&a, &b, Sign::Plus)?)?;
    let r_minus = spectral_radius(&commutator(&a, &b, Sign::Minus)?)?;
    let r_prod = spectral_radius(&a.matmul(&b)?)?;

    let mut r = ReportBuilder::new(inputs.case_id.clone(), "r(A+B)", r_sum, slack);
    let s2 = bound_sum_s2(&a, &b)?;
    let s2_base = aok_sum_s2(&a, &b)?;
    r.upper("COR_S2", s2).dominates("AOK_S2", s2_base, "COR_S2", s2);

    let s3_plus = bound_commutator_s3(&a, &b, Sign::Plus)?;
    let s3_minus = bound_commutator_s3(&a, &b, Sign::Minus)?;
    let s3_base = aok_commutator_s3(&a, &b)?;
    r.dominates("COR_S3(+)", s3_plus, "r(AB+BA)", r_plus)
        .dominates("COR_S3(-)", s3_minus, "r(AB-BA)", r_minus)
        .dominates("AOK_S3", s3_base, "COR_S3(+)", s3_plus);

    let s4 = bound_commutator_s4(&a, &b)?;
    r.dominates("COR_S4_AB", s4.via_ab, "r(AB+BA)", r_plus)
        .dominates("COR_S4_AB", s4.via_ab, "r(AB-BA)", r_minus)
        .dominates("COR_S4_BA", s4.via_ba, "r(AB+BA)", r_plus)
        .dominates("COR_S4_BA", s4.via_ba, "r(AB-BA)", r_minus)
        .dominates("AOK_S4_AB", s4.baseline_ab, "COR_S4_AB", s4.via_ab)
        .dominates("AOK_S4_BA", s4.baseline_ba, "COR_S4_BA", s4.via_ba);

    let s5 = bound_product_s5(&a, &b)?;
    let s5_base = aok_product_s5(&a, &b)?;
    r.dominates("COR_S5", s5, "r(AB)", r_prod)
        .dominates("AOK_S5", s5_base, "COR_S5", s5);
    Ok(r.finish(inputs.clone()))
}
