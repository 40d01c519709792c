//! Numerical radius of Kronecker products.

use rand::Rng;

use crate::bounds::{bound_kron_cor3, holbrook, khare_bound};
use crate::error::Result;
use crate::harness::ensemble::{mixed_block, nonnegative};
use crate::harness::report::{BoundReport, ReportBuilder, TrialInputs};
use crate::harness::{unknown_kind, Group, RunConfig, TrialRng};
use crate::matrix::kron;
use crate::radius::w;

pub fn groups(cfg: &RunConfig) -> Vec<Group> {
    vec![Group::new("pair", cfg.share(2), make)]
}

/// Odd trials use an entrywise nonnegative `A`.
fn make(rng: &mut TrialRng, local: usize, cfg: &RunConfig) -> Result<TrialInputs> {
    let n = cfg.pick_dim(rng, 2..=4);
    let m = rng.random_range(2..=5);
    let a = if local % 2 == 1 {
        nonnegative(n, n, rng)
    } else {
        mixed_block(n, n, rng)
    };
    Ok(TrialInputs::default()
        .with_matrix("A", &a)
        .with_matrix("B", &mixed_block(m, m, rng)))
}

pub fn evaluate(inputs: &TrialInputs, slack: f64) -> Result<BoundReport> {
    if inputs.kind != "pair" {
        return Err(unknown_kind(inputs));
    }
    let (a, b) = (inputs.matrix("A")?, inputs.matrix("B")?);
    let oracle = w(&kron(&a, &b))?;
    let cor3 = bound_kron_cor3(&a, &b)?;
    let khare = khare_bound(&a, &b)?;
    let hol = holbrook(&a, &b)?;
    let mut r = ReportBuilder::new(inputs.case_id.clone(), "w(A⊗B)", oracle, slack);
    r.upper("COR3", cor3)
        .upper("KHARE", khare)
        .upper("HOLBROOK", hol)
        .dominates("KHARE", khare, "COR3", cor3);
    let nonneg = a.data().iter().all(|z| z.im == 0.0 && z.re >= 0.0);
    if nonneg {
        r.dominates("HOLBROOK", hol, "COR3", cor3);
    } else {
        r.skip("HOLBROOK", "COR3", "A has entries outside [0, ∞)");
    }
    Ok(r.finish(inputs.clone()))
}
