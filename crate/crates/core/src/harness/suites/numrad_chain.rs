//! Block numerical radius chain `w ≤ THM2 ≤ AOK_B = AOK_A ≤ HOU_DU`.

use rand::Rng;

use crate::bounds::{bound_blockmatrix, bound_cor1, BoundMatrixKind};
use crate::error::{Error, Result};
use crate::harness::ensemble::mixed_block;
use crate::harness::report::{BoundReport, ReportBuilder, TrialInputs};
use crate::harness::{unknown_kind, Group, RunConfig, TrialRng};
use crate::matrix::{BlockMatrix, CMatrix};
use crate::radius::w;

pub fn groups(cfg: &RunConfig) -> Vec<Group> {
    vec![Group::new("block", cfg.trials, make)]
}

/// Every fourth trial uses one common block size so the polar recipe applies.
fn make(rng: &mut TrialRng, local: usize, cfg: &RunConfig) -> Result<TrialInputs> {
    let n = rng.random_range(2..=4);
    let dims: Vec<usize> = if local.is_multiple_of(4) {
        vec![cfg.pick_dim(rng, 1..=6); n]
    } else {
        (0..n).map(|_| cfg.pick_dim(rng, 1..=6)).collect()
    };
    let grid: Vec<Vec<CMatrix>> = dims
        .iter()
        .map(|&r| dims.iter().map(|&c| mixed_block(r, c, rng)).collect())
        .collect();
    let m = BlockMatrix::new(grid)?;
    Ok(TrialInputs::default().with_matrix("T", &m.flatten()).with_dims(dims))
}

pub fn evaluate(inputs: &TrialInputs, slack: f64) -> Result<BoundReport> {
    if inputs.kind != "block" {
        return Err(unknown_kind(inputs));
    }
    let m = BlockMatrix::partition(&inputs.matrix("T")?, &inputs.dims)?;
    let oracle = w(&m.flatten())?;
    let mut r = ReportBuilder::new(inputs.case_id.clone(), "w(T)", oracle, slack);
    let thm2 = bound_blockmatrix(&m, BoundMatrixKind::Thm2)?;
    let aok_b = bound_blockmatrix(&m, BoundMatrixKind::AokB)?;
    let aok_a = bound_blockmatrix(&m, BoundMatrixKind::AokA)?;
    let hou_du = bound_blockmatrix(&m, BoundMatrixKind::HouDu)?;
    r.upper("THM2", thm2)
        .upper("AOK_B", aok_b)
        .upper("AOK_A", aok_a)
        .upper("HOU_DU", hou_du)
        .dominates("AOK_B", aok_b, "THM2", thm2)
        .dominates("HOU_DU", hou_du, "AOK_B", aok_b)
        .equals("AOK_A", aok_a, "AOK_B", aok_b, 1e-10);
    match bound_blockmatrix(&m, BoundMatrixKind::BhuniaAdm) {
        Ok(v) => {
            r.upper("BHUNIA_ADM", v);
        }
        Err(Error::UnsupportedKind(_, why)) => {
            r.skip("BHUNIA_ADM", "w(T)", why);
        }
        Err(e) => return Err(e),
    }
    if m.n() == 2 {
        let cor1 = bound_cor1(m.block(0, 0), m.block(0, 1), m.block(1, 0), m.block(1, 1))?;
        r.equals("COR1", cor1, "THM2", thm2, 1e-10);
    }
    Ok(r.finish(inputs.clone()))
}
