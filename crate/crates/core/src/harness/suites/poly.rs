//! Root-modulus bounds for random monic polynomials.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::harness::ensemble::complex_gaussian;
use crate::harness::report::{BoundReport, ReportBuilder, TrialInputs};
use crate::harness::{unknown_kind, Group, RunConfig, TrialRng};
use crate::matrix::CMatrix;
use crate::poly::{bound_abd, bound_companion_cor1, bound_estpoly, companion, max_root_modulus, PolySpec};
use crate::radius::w;

/// Four-digit values quoted for `z³ + z + 1`.
pub const CUBIC_ESTPOLY: f64 = 1.4616;
pub const CUBIC_ABD: f64 = 1.4823;
pub const CUBIC_MAX_ROOT: f64 = 1.2106;
pub const QUOTED_TOL: f64 = 1e-3;

/// Tolerance for the closed form against the block evaluation.
pub const DUAL_PATH_TOL: f64 = 1e-10;

/// `α` above which the refined bound must be strictly smaller.
pub const ALPHA_STRICT: f64 = 1e-10;

pub fn groups(cfg: &RunConfig) -> Vec<Group> {
    vec![Group::new("cubic", 1, make_cubic), Group::new("random", cfg.trials, make_random)]
}

fn store(coeffs: &[Complex64]) -> TrialInputs {
    TrialInputs::default()
        .with_matrix("a", &CMatrix::row(coeffs))
        .with_dims(vec![coeffs.len()])
}

fn make_cubic(_: &mut TrialRng, _: usize, _: &RunConfig) -> Result<TrialInputs> {
    let p = PolySpec::from_high_to_low(&[1.0, 0.0, 1.0, 1.0].map(|x| Complex64::new(x, 0.0)))?;
    Ok(store(p.coeffs()))
}

/// Even trials draw real coefficients, odd trials complex ones.
fn make_random(rng: &mut TrialRng, local: usize, cfg: &RunConfig) -> Result<TrialInputs> {
    let n = cfg.pick_dim(rng, 2..=12);
    let draw = |rng: &mut TrialRng| {
        if local.is_multiple_of(2) {
            Complex64::new(rng.sample(StandardNormal), 0.0)
        } else {
            complex_gaussian(rng)
        }
    };
    let mut coeffs: Vec<Complex64> = (0..n).map(|_| draw(rng)).collect();
    while coeffs[0].norm() < 1e-6 {
        coeffs[0] = draw(rng);
    }
    Ok(store(&coeffs))
}

pub fn evaluate(inputs: &TrialInputs, slack: f64) -> Result<BoundReport> {
    if inputs.kind != "cubic" && inputs.kind != "random" {
        return Err(unknown_kind(inputs));
    }
    let p = PolySpec::new(inputs.matrix("a")?.data().to_vec())?;
    let root = max_root_modulus(&p)?;
    let est = bound_estpoly(&p);
    let abd = bound_abd(&p);
    let alpha = p.alpha();
    let wc = w(&companion(&p))?;
    let mut r = ReportBuilder::new(inputs.case_id.clone(), "max|root|", root, slack);
    r.upper("ESTPOLY", est)
        .upper("ABD", abd)
        .upper("W_COMPANION", wc)
        .dominates("ESTPOLY", est, "W_COMPANION", wc)
        .dominates("ABD", abd, "ESTPOLY", est)
        .equals("COMPANION_COR1", bound_companion_cor1(&p)?, "ESTPOLY", est, DUAL_PATH_TOL);
    if alpha > ALPHA_STRICT {
        r.strictly_below("ESTPOLY", est, "ABD", abd, 0.0);
    } else {
        r.skip("ESTPOLY", "ABD", format!("alpha = {alpha:e}"));
    }
    if inputs.kind == "cubic" {
        r.equals("ESTPOLY", est, "quoted", CUBIC_ESTPOLY, QUOTED_TOL)
            .equals("ABD", abd, "quoted", CUBIC_ABD, QUOTED_TOL)
            .equals("MAX_ROOT", root, "quoted", CUBIC_MAX_ROOT, QUOTED_TOL);
    }
    Ok(r.finish(inputs.clone()))
}
