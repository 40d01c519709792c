use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::refined_entry;
use crate::error::{Error, Result};
use crate::matrix::{operator_norm, polar, BlockMatrix, CMatrix};
use crate::radius::{numrad_nonneg, w};

/// Recipe for the scalar `n × n` matrix whose numerical radius bounds `w([A_ij])`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundMatrixKind {
    /// `[‖A_ij‖]`.
    HouDu,
    /// Diagonal `w(A_ii)`, off-diagonal `‖A_ij‖`.
    AokA,
    /// Diagonal `w(A_ii)`, upper `‖A_ij‖ + ‖A_ji‖`, lower zero.
    AokB,
    /// Diagonal `w(A_ii)`, upper `sqrt((‖A_ij‖+‖A_ji‖)² − (‖A_ij‖‖A_ji‖ − w(A_ji A_ij)))`, lower zero.
    Thm2,
    /// Diagonal `w(A_ii)`, upper `sqrt(‖|A_ij| + |A_ji*|‖ ‖|A_ij*| + |A_ji|‖)`, lower zero.
    /// Needs square blocks on equal spaces.
    BhuniaAdm,
}

impl BoundMatrixKind {
    pub const ALL: [BoundMatrixKind; 5] = [Self::HouDu, Self::AokA, Self::AokB, Self::Thm2, Self::BhuniaAdm];

    pub fn name(self) -> &'static str {
        match self {
            Self::HouDu => "HOU_DU",
            Self::AokA => "AOK_A",
            Self::AokB => "AOK_B",
            Self::Thm2 => "THM2",
            Self::BhuniaAdm => "BHUNIA_ADM",
        }
    }
}

impl fmt::Display for BoundMatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundMatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::BadSpec(format!("unknown bound kind `{s}`")))
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Positive square root `|X| = (X*X)^{1/2}`.
fn modulus(x: &CMatrix) -> Result<CMatrix> {
    Ok(polar(x)?.modulus)
}

/// The nonnegative scalar matrix of the chosen recipe.
pub fn bound_matrix(m: &BlockMatrix, kind: BoundMatrixKind) -> Result<CMatrix> {
    if m.row_dims() != m.col_dims() {
        return Err(Error::ShapeMismatch(format!(
            "operator matrix needs A_ij : H_j → H_i, got row dims {:?} and column dims {:?}",
            m.row_dims(),
            m.col_dims()
        )));
    }
    if kind == BoundMatrixKind::BhuniaAdm && !m.has_equal_square_blocks() {
        return Err(Error::UnsupportedKind(
            kind.name(),
            format!("requires H_1 = … = H_n, got block dims {:?}", m.row_dims()),
        ));
    }
    let n = m.n();
    let mut norms = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j || kind == BoundMatrixKind::HouDu {
                norms[i * n + j] = operator_norm(m.block(i, j))?;
            }
        }
    }
    let mut out = CMatrix::zeros(n, n);
    for i in 0..n {
        let diag = match kind {
            BoundMatrixKind::HouDu => norms[i * n + i],
            _ => w(m.block(i, i))?,
        };
        out = out.with_entry(i, i, real(diag));
        for j in 0..n {
            if i == j {
                continue;
            }
            let (nij, nji) = (norms[i * n + j], norms[j * n + i]);
            let value = match kind {
                BoundMatrixKind::HouDu | BoundMatrixKind::AokA => nij,
                _ if i > j => 0.0,
                BoundMatrixKind::AokB => nij + nji,
                BoundMatrixKind::Thm2 => {
                    let product = m.block(j, i).matmul(m.block(i, j))?;
                    refined_entry(nij, nji, w(&product)?)
                }
                BoundMatrixKind::BhuniaAdm => {
                    let (aij, aji) = (m.block(i, j), m.block(j, i));
                    let first = modulus(aij)?.try_add(&modulus(&aji.adjoint())?)?;
                    let second = modulus(&aij.adjoint())?.try_add(&modulus(aji)?)?;
                    (operator_norm(&first)? * operator_norm(&second)?).sqrt()
                }
            };
            out = out.with_entry(i, j, real(value));
        }
    }
    Ok(out)
}

/// `w` of the bound matrix; an upper bound for `w(flatten(M))`.
pub fn bound_blockmatrix(m: &BlockMatrix, kind: BoundMatrixKind) -> Result<f64> {
    numrad_nonneg(&bound_matrix(m, kind)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shift2() -> CMatrix {
        CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]])
    }

    #[test]
    fn diagonal_operator_matrix_gives_max_block_radius() {
        let a = CMatrix::from_real_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]);
        let d = CMatrix::diag_real(&[0.5, -0.25]);
        let m = BlockMatrix::two_by_two(&a, &CMatrix::zeros(2, 2), &CMatrix::zeros(2, 2), &d).unwrap();
        let wa = w(&a).unwrap();
        for kind in [
            BoundMatrixKind::AokA,
            BoundMatrixKind::AokB,
            BoundMatrixKind::Thm2,
            BoundMatrixKind::BhuniaAdm,
        ] {
            let bm = bound_matrix(&m, kind).unwrap();
            assert!((bm.get(0, 0).re - wa).abs() < 1e-12);
            assert!((bm.get(1, 1).re - 0.5).abs() < 1e-12);
            assert_eq!(bm.get(0, 1).re, 0.0);
            assert!((bound_blockmatrix(&m, kind).unwrap() - wa.max(0.5)).abs() < 1e-12);
        }
    }

    #[test]
    fn all_shift_blocks_thm2_entry_is_sqrt3() {
        let s = shift2();
        let m = BlockMatrix::two_by_two(&s, &s, &s, &s).unwrap();
        let bm = bound_matrix(&m, BoundMatrixKind::Thm2).unwrap();
        assert!((bm.get(0, 1).re - 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(bm.get(1, 0).re, 0.0);
        assert!((bm.get(0, 0).re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn zero_and_single_block() {
        let z = BlockMatrix::new(vec![
            vec![CMatrix::zeros(2, 2), CMatrix::zeros(2, 1)],
            vec![CMatrix::zeros(1, 2), CMatrix::zeros(1, 1)],
        ])
        .unwrap();
        for kind in [
            BoundMatrixKind::HouDu,
            BoundMatrixKind::AokA,
            BoundMatrixKind::AokB,
            BoundMatrixKind::Thm2,
        ] {
            assert_eq!(bound_blockmatrix(&z, kind).unwrap(), 0.0);
        }
        let a = CMatrix::from_real_rows(&[vec![0.0, 2.0], vec![0.0, 0.0]]);
        let single = BlockMatrix::new(vec![vec![a.clone()]]).unwrap();
        for kind in [
            BoundMatrixKind::AokA,
            BoundMatrixKind::AokB,
            BoundMatrixKind::Thm2,
            BoundMatrixKind::BhuniaAdm,
        ] {
            assert!((bound_blockmatrix(&single, kind).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bhunia_requires_equal_square_blocks() {
        let m = BlockMatrix::new(vec![
            vec![CMatrix::identity(2), CMatrix::zeros(2, 1)],
            vec![CMatrix::zeros(1, 2), CMatrix::identity(1)],
        ])
        .unwrap();
        assert!(matches!(
            bound_matrix(&m, BoundMatrixKind::BhuniaAdm),
            Err(Error::UnsupportedKind(..))
        ));
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in BoundMatrixKind::ALL {
            assert_eq!(kind.name().parse::<BoundMatrixKind>().unwrap(), kind);
        }
        assert!("nope".parse::<BoundMatrixKind>().is_err());
    }
}
