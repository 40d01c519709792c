//! Seeded random matrix ensembles.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{inner, vec_norm, CMatrix};

pub type TrialRng = ChaCha8Rng;

/// Largest dimension an [`EnsembleSpec`] accepts.
pub const MAX_DIM: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EnsembleKind {
    /// I.i.d. standard complex Gaussian entries.
    Ginibre,
    /// `u v*` with `v ⟂ u`, so the square vanishes.
    Nilpotent2,
    /// `U diag(z) U*` with Ginibre `z` and Haar-like unitary `U`.
    Normal,
    /// `G* G` with Ginibre `G`.
    Positive,
    /// Gram–Schmidt orthonormalisation of a Ginibre matrix.
    Unitary,
    /// I.i.d. uniform `[0, 1]` real entries.
    Nonnegative,
}

impl EnsembleKind {
    pub const ALL: [EnsembleKind; 6] = [
        Self::Ginibre,
        Self::Nilpotent2,
        Self::Normal,
        Self::Positive,
        Self::Unitary,
        Self::Nonnegative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Ginibre => "GINIBRE",
            Self::Nilpotent2 => "NILPOTENT2",
            Self::Normal => "NORMAL",
            Self::Positive => "POSITIVE",
            Self::Unitary => "UNITARY",
            Self::Nonnegative => "NONNEGATIVE",
        }
    }
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::BadSpec(format!("unknown ensemble `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub dim: usize,
    pub seed: u64,
}

/// Deterministic matrix for `(kind, dim, seed)`.
pub fn generate(spec: EnsembleSpec) -> Result<CMatrix> {
    if !(1..=MAX_DIM).contains(&spec.dim) {
        return Err(Error::BadSpec(format!("ensemble dimension {} outside [1, {MAX_DIM}]", spec.dim)));
    }
    let mut rng = TrialRng::seed_from_u64(spec.seed);
    Ok(sample(spec.kind, spec.dim, &mut rng))
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The SplitMix64 finaliser.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index` under `master`, independent of scheduling.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index.wrapping_mul(GOLDEN_GAMMA)))
}

pub fn trial_rng(master: u64, index: u64) -> TrialRng {
    TrialRng::seed_from_u64(trial_seed(master, index))
}

/// Standard complex Gaussian: real and imaginary parts with variance ½.
pub fn complex_gaussian(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * FRAC_1_SQRT_2
}

pub fn ginibre(rows: usize, cols: usize, rng: &mut impl Rng) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

pub fn nonnegative(rows: usize, cols: usize, rng: &mut impl Rng) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| Complex64::new(rng.random::<f64>(), 0.0))
}

pub fn gaussian_vector(n: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    (0..n).map(|_| complex_gaussian(rng)).collect()
}

/// Uniform point on the unit sphere of `C^n`.
pub fn unit_vector(n: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    loop {
        let v = gaussian_vector(n, rng);
        let norm = vec_norm(&v);
        if norm > 1e-12 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

fn unitary(n: usize, rng: &mut impl Rng) -> CMatrix {
    // Modified Gram–Schmidt on the columns; redraw a column on breakdown.
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v = gaussian_vector(n, rng);
        for q in &cols {
            let c = inner(&v, q);
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= c * qi;
            }
        }
        let norm = vec_norm(&v);
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    CMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// One draw from `kind` in dimension `n`.
pub fn sample(kind: EnsembleKind, n: usize, rng: &mut impl Rng) -> CMatrix {
    match kind {
        EnsembleKind::Ginibre => ginibre(n, n, rng),
        EnsembleKind::Nilpotent2 => {
            let u = gaussian_vector(n, rng);
            let mut v = gaussian_vector(n, rng);
            let uu: f64 = u.iter().map(|z| z.norm_sqr()).sum();
            if uu > 0.0 {
                let c = inner(&v, &u) / uu;
                for (vi, ui) in v.iter_mut().zip(&u) {
                    *vi -= c * ui;
                }
            }
            CMatrix::from_fn(n, n, |i, j| u[i] * v[j].conj())
        }
        EnsembleKind::Normal => {
            let q = unitary(n, rng);
            let d = CMatrix::diag(&gaussian_vector(n, rng));
            &(&q * &d) * &q.adjoint()
        }
        EnsembleKind::Positive => {
            let g = ginibre(n, n, rng);
            (&g.adjoint() * &g).hermitian_part()
        }
        EnsembleKind::Unitary => unitary(n, rng),
        EnsembleKind::Nonnegative => nonnegative(n, n, rng),
    }
}

/// A square block from a uniformly chosen ensemble, or a rectangular
/// Ginibre / nonnegative block when `rows ≠ cols`.
pub fn mixed_block(rows: usize, cols: usize, rng: &mut impl Rng) -> CMatrix {
    if rows == cols {
        let kind = EnsembleKind::ALL[rng.random_range(0..EnsembleKind::ALL.len())];
        sample(kind, rows, rng)
    } else if rng.random_bool(0.75) {
        ginibre(rows, cols, rng)
    } else {
        nonnegative(rows, cols, rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{herm_eigenvalues, operator_norm};

    #[test]
    fn positive_is_hermitian_psd() {
        let p = generate(EnsembleSpec {
            kind: EnsembleKind::Positive,
            dim: 3,
            seed: 7,
        })
        .unwrap();
        assert!(p.hermitian_deviation() < 1e-12);
        assert!(herm_eigenvalues(&p).unwrap()[0] > -1e-12);
    }

    #[test]
    fn nilpotent_squares_to_zero() {
        for seed in 0..20 {
            let a = generate(EnsembleSpec {
                kind: EnsembleKind::Nilpotent2,
                dim: 4,
                seed,
            })
            .unwrap();
            assert!(operator_norm(&(&a * &a)).unwrap() < 1e-12);
            assert!(a.max_abs() > 0.0);
        }
    }

    #[test]
    fn unitary_and_normal() {
        let u = generate(EnsembleSpec {
            kind: EnsembleKind::Unitary,
            dim: 5,
            seed: 3,
        })
        .unwrap();
        assert!((&(&u.adjoint() * &u) - &CMatrix::identity(5)).frobenius_norm() < 1e-12);
        let n = generate(EnsembleSpec {
            kind: EnsembleKind::Normal,
            dim: 5,
            seed: 3,
        })
        .unwrap();
        let comm = &(&n * &n.adjoint()) - &(&n.adjoint() * &n);
        assert!(comm.frobenius_norm() < 1e-10);
    }

    #[test]
    fn deterministic_and_validated() {
        for kind in EnsembleKind::ALL {
            let spec = EnsembleSpec { kind, dim: 6, seed: 99 };
            assert_eq!(generate(spec).unwrap(), generate(spec).unwrap());
            assert_eq!(kind.name().parse::<EnsembleKind>().unwrap(), kind);
        }
        assert!(generate(EnsembleSpec {
            kind: EnsembleKind::Ginibre,
            dim: 0,
            seed: 0
        })
        .is_err());
        assert!(generate(EnsembleSpec {
            kind: EnsembleKind::Ginibre,
            dim: 65,
            seed: 0
        })
        .is_err());
        let nn = generate(EnsembleSpec {
            kind: EnsembleKind::Nonnegative,
            dim: 4,
            seed: 1,
        })
        .unwrap();
        assert!(nn.data().iter().all(|z| z.re >= 0.0 && z.re <= 1.0 && z.im == 0.0));
    }

    #[test]
    fn trial_seeds_differ() {
        let seeds: std::collections::HashSet<u64> = (0..1000).map(|i| trial_seed(42, i)).collect();
        assert_eq!(seeds.len(), 1000);
        assert_ne!(trial_seed(1, 0), trial_seed(2, 0));
    }
}
