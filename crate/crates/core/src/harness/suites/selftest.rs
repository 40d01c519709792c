//! Oracle cross-checks: closed-form numerical radii, the nonnegative
//! shortcut, Buzano's inequality and the two-operator lemmas.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::bounds::{bound_sum_cor6, lemma4_rhs};
use crate::error::Result;
use crate::harness::ensemble::{complex_gaussian, mixed_block, nonnegative, unit_vector};
use crate::harness::report::{BoundReport, ReportBuilder, TrialInputs};
use crate::harness::{unknown_kind, Group, RunConfig, TrialRng};
use crate::matrix::{inner, vec_norm, BlockMatrix, CMatrix};
use crate::radius::{numrad_nonneg, sup_theta_norm, w};

/// Agreement required between an oracle and a closed form.
pub const ORACLE_TOL: f64 = 1e-8;
/// Absolute slack of the vector inequalities on unit vectors.
pub const VECTOR_SLACK: f64 = 1e-10;
/// Vector samples per trial of the vector inequalities.
pub const SAMPLES_PER_TRIAL: usize = 100;
/// Largest shift size checked against `cos(π/(n+1))`.
pub const MAX_SHIFT: usize = 20;

pub fn groups(cfg: &RunConfig) -> Vec<Group> {
    vec![
        Group::new("shift", MAX_SHIFT - 1, make_shift),
        Group::new("rank-one", cfg.share(10), make_rank_one),
        Group::new("nonneg", cfg.share(2), make_nonneg),
        Group::new("buzano", cfg.trials, make_buzano),
        Group::new("lemma4", cfg.trials, make_lemma4),
        Group::new("offdiag-equal", cfg.share(5), make_offdiag_equal),
        Group::new("offdiag", cfg.share(5), make_offdiag),
    ]
}

fn columns(vs: &[Vec<Complex64>]) -> CMatrix {
    CMatrix::from_fn(vs[0].len(), vs.len(), |i, j| vs[j][i])
}

fn unit_columns(n: usize, rng: &mut TrialRng) -> CMatrix {
    columns(&(0..SAMPLES_PER_TRIAL).map(|_| unit_vector(n, rng)).collect::<Vec<_>>())
}

fn make_shift(_: &mut TrialRng, local: usize, _: &RunConfig) -> Result<TrialInputs> {
    Ok(TrialInputs::default().with_dims(vec![local + 2]))
}

fn make_rank_one(rng: &mut TrialRng, _: usize, cfg: &RunConfig) -> Result<TrialInputs> {
    let n = cfg.pick_dim(rng, 2..=8);
    let row: Vec<Complex64> = (0..n).map(|_| complex_gaussian(rng)).collect();
    Ok(TrialInputs::default().with_matrix("a", &CMatrix::row(&row)))
}

fn make_nonneg(rng: &mut TrialRng, _: usize, cfg: &RunConfig) -> Result<TrialInputs> {
    let n = cfg.pick_dim(rng, 2..=8);
    Ok(TrialInputs::default().with_matrix("T", &nonnegative(n, n, rng)))
}

/// Every fourth `z` bisects `x` and `y`, where the inequality is sharp.
fn make_buzano(rng: &mut TrialRng, _: usize, cfg: &RunConfig) -> Result<TrialInputs> {
    let n = cfg.pick_dim(rng, 2..=8);
    let x = unit_columns(n, rng);
    let y = unit_columns(n, rng);
    let mut zs: Vec<Vec<Complex64>> = (0..SAMPLES_PER_TRIAL).map(|_| unit_vector(n, rng)).collect();
    for (j, z) in zs.iter_mut().enumerate().step_by(4) {
        let (xj, yj) = (x.column_vec(j), y.column_vec(j));
        let phase = inner(&xj, &yj);
        let phase = if phase.norm() > 0.0 {
            phase / phase.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let mid: Vec<Complex64> = xj.iter().zip(&yj).map(|(a, b)| a + phase * b).collect();
        let norm = vec_norm(&mid);
        if norm > 1e-8 {
            *z = mid.into_iter().map(|v| v / norm).collect();
        }
    }
    Ok(TrialInputs::default()
        .with_matrix("X", &x)
        .with_matrix("Y", &y)
        .with_matrix("Z", &columns(&zs)))
}

/// `A : C^q → C^p`, `B : C^p → C^q` with unit `x ∈ C^q`, `y ∈ C^p`.
fn make_lemma4(rng: &mut TrialRng, _: usize, cfg: &RunConfig) -> Result<TrialInputs> {
    let p = cfg.pick_dim(rng, 1..=6);
    let q = cfg.pick_dim(rng, 1..=6);
    Ok(TrialInputs::default()
        .with_matrix("A", &mixed_block(p, q, rng))
        .with_matrix("B", &mixed_block(q, p, rng))
        .with_matrix("X", &unit_columns(q, rng))
        .with_matrix("Y", &unit_columns(p, rng)))
}

fn make_offdiag_equal(rng: &mut TrialRng, _: usize, cfg: &RunConfig) -> Result<TrialInputs> {
    let d = cfg.pick_dim(rng, 1..=6);
    Ok(TrialInputs::default().with_matrix("B", &mixed_block(d, d, rng)))
}

fn make_offdiag(rng: &mut TrialRng, _: usize, cfg: &RunConfig) -> Result<TrialInputs> {
    let p = cfg.pick_dim(rng, 1..=6);
    let q = cfg.pick_dim(rng, 1..=6);
    Ok(TrialInputs::default()
        .with_matrix("B", &mixed_block(p, q, rng))
        .with_matrix("C", &mixed_block(q, p, rng)))
}

/// `[[0, B], [C, 0]]` as one matrix.
fn off_diagonal(b: &CMatrix, c: &CMatrix) -> Result<CMatrix> {
    Ok(BlockMatrix::two_by_two(&CMatrix::zeros(b.rows(), b.rows()), b, c, &CMatrix::zeros(b.cols(), b.cols()))?.flatten())
}

pub fn evaluate(inputs: &TrialInputs, slack: f64) -> Result<BoundReport> {
    let id = inputs.case_id.clone();
    let report = match inputs.kind.as_str() {
        "shift" => {
            let n = inputs.dims.first().copied().unwrap_or(2);
            let l = CMatrix::lower_shift(n);
            let exact = (PI / (n as f64 + 1.0)).cos();
            let mut r = ReportBuilder::new(id, "cos(pi/(n+1))", exact, slack);
            r.equals("W(L_n)", w(&l)?, "cos(pi/(n+1))", exact, ORACLE_TOL).equals(
                "NUMRAD_NONNEG(L_n)",
                numrad_nonneg(&l)?,
                "cos(pi/(n+1))",
                exact,
                ORACLE_TOL,
            );
            r
        }
        "rank-one" => {
            let a = inputs.matrix("a")?;
            let n = a.cols();
            let m = CMatrix::from_fn(n, n, |i, j| if i == 0 { a.get(0, j) } else { Complex64::new(0.0, 0.0) });
            let formula = 0.5 * (a.get(0, 0).norm() + a.frobenius_norm());
            let mut r = ReportBuilder::new(id, "row formula", formula, slack);
            r.equals("W(row)", w(&m)?, "row formula", formula, ORACLE_TOL);
            r
        }
        "nonneg" => {
            let t = inputs.matrix("T")?;
            let scan = w(&t)?;
            let mut r = ReportBuilder::new(id, "w(T)", scan, slack);
            r.equals("NUMRAD_NONNEG", numrad_nonneg(&t)?, "w(T)", scan, ORACLE_TOL);
            r
        }
        "buzano" => {
            let (x, y, z) = (inputs.matrix("X")?, inputs.matrix("Y")?, inputs.matrix("Z")?);
            let (lhs, rhs) = worst_sample(x.cols(), |j| {
                let (xj, yj, zj) = (x.column_vec(j), y.column_vec(j), z.column_vec(j));
                let lhs = (inner(&xj, &zj) * inner(&zj, &yj)).norm();
                let rhs = 0.5 * (vec_norm(&xj) * vec_norm(&yj) + inner(&xj, &yj).norm()) * vec_norm(&zj).powi(2);
                (lhs, rhs)
            });
            let mut r = ReportBuilder::new(id, "|<x,z><z,y>|", lhs, slack);
            r.dominates_with("BUZANO", rhs, "|<x,z><z,y>|", lhs, VECTOR_SLACK);
            r
        }
        "lemma4" => {
            let (a, b, x, y) = (inputs.matrix("A")?, inputs.matrix("B")?, inputs.matrix("X")?, inputs.matrix("Y")?);
            let coeff = lemma4_rhs(&a, &b)?;
            let (lhs, rhs) = worst_sample(x.cols(), |j| {
                let (xj, yj) = (x.column_vec(j), y.column_vec(j));
                let lhs = inner(&a.apply(&xj), &yj).norm() + inner(&b.apply(&yj), &xj).norm();
                (lhs, coeff * vec_norm(&xj) * vec_norm(&yj))
            });
            let mut r = ReportBuilder::new(id, "|<Ax,y>|+|<By,x>|", lhs, slack);
            r.dominates_with("LEMMA4", rhs, "|<Ax,y>|+|<By,x>|", lhs, VECTOR_SLACK);
            r
        }
        "offdiag-equal" => {
            let b = inputs.matrix("B")?;
            let two_w = 2.0 * w(&b)?;
            let mut r = ReportBuilder::new(id, "2w(B)", two_w, slack);
            r.equals("2W([[0,B],[B,0]])", 2.0 * w(&off_diagonal(&b, &b)?)?, "2w(B)", two_w, ORACLE_TOL)
                .equals("SUP_THETA_NORM", sup_theta_norm(&b, &b)?, "2w(B)", two_w, ORACLE_TOL);
            r
        }
        "offdiag" => {
            let (b, c) = (inputs.matrix("B")?, inputs.matrix("C")?);
            let two_w = 2.0 * w(&off_diagonal(&b, &c)?)?;
            let mut r = ReportBuilder::new(id, "2w([[0,B],[C,0]])", two_w, slack);
            r.equals("SUP_THETA_NORM", sup_theta_norm(&b, &c)?, "2w([[0,B],[C,0]])", two_w, ORACLE_TOL)
                .upper("COR6", bound_sum_cor6(&b, &c)?);
            r
        }
        _ => return Err(unknown_kind(inputs)),
    };
    Ok(report.finish(inputs.clone()))
}

/// The `(lhs, rhs)` sample with the least headroom.
fn worst_sample(count: usize, f: impl Fn(usize) -> (f64, f64)) -> (f64, f64) {
    (0..count)
        .map(f)
        .min_by(|a, b| (a.1 - a.0).total_cmp(&(b.1 - b.0)))
        .unwrap_or((0.0, 0.0))
}
