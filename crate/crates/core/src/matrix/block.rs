use super::CMatrix;
use crate::error::{Error, Result};

/// An `n × n` operator matrix `[A_ij]` with `A_ij : H_j → H_i`.
///
/// Block `(i, j)` has shape `row_dims[i] × col_dims[j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockMatrix {
    row_dims: Vec<usize>,
    col_dims: Vec<usize>,
    blocks: Vec<CMatrix>,
}

impl BlockMatrix {
    /// Builds from a row-major grid of blocks, inferring dimensions from the
    /// first row and column and checking every other block against them.
    pub fn new(grid: Vec<Vec<CMatrix>>) -> Result<Self> {
        let n = grid.len();
        if n == 0 {
            return Err(Error::ShapeMismatch("block matrix needs at least one block".into()));
        }
        if grid.iter().any(|row| row.len() != n) {
            return Err(Error::ShapeMismatch("block grid must be n×n".into()));
        }
        let row_dims: Vec<usize> = grid.iter().map(|row| row[0].rows()).collect();
        let col_dims: Vec<usize> = grid[0].iter().map(CMatrix::cols).collect();
        for (i, row) in grid.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                if b.shape() != (row_dims[i], col_dims[j]) {
                    return Err(Error::ShapeMismatch(format!(
                        "block ({i},{j}) is {}x{}, expected {}x{}",
                        b.rows(),
                        b.cols(),
                        row_dims[i],
                        col_dims[j]
                    )));
                }
            }
        }
        Ok(Self {
            row_dims,
            col_dims,
            blocks: grid.into_iter().flatten().collect(),
        })
    }

    /// The 2×2 operator matrix `[[A, B], [C, D]]`.
    pub fn two_by_two(a: &CMatrix, b: &CMatrix, c: &CMatrix, d: &CMatrix) -> Result<Self> {
        Self::new(vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]])
    }

    /// Splits a square matrix into blocks of the given sizes on both sides.
    pub fn partition(m: &CMatrix, dims: &[usize]) -> Result<Self> {
        Self::partition_rect(m, dims, dims)
    }

    pub fn partition_rect(m: &CMatrix, row_dims: &[usize], col_dims: &[usize]) -> Result<Self> {
        if row_dims.len() != col_dims.len() || row_dims.is_empty() {
            return Err(Error::ShapeMismatch(
                "partition needs the same positive number of row and column blocks".into(),
            ));
        }
        if row_dims.contains(&0) || col_dims.contains(&0) {
            return Err(Error::ShapeMismatch("block dimensions must be positive".into()));
        }
        if row_dims.iter().sum::<usize>() != m.rows() || col_dims.iter().sum::<usize>() != m.cols() {
            return Err(Error::ShapeMismatch(format!(
                "partition {row_dims:?} x {col_dims:?} does not cover a {}x{} matrix",
                m.rows(),
                m.cols()
            )));
        }
        let mut grid = Vec::with_capacity(row_dims.len());
        let mut r0 = 0;
        for &h in row_dims {
            let mut row = Vec::with_capacity(col_dims.len());
            let mut c0 = 0;
            for &w in col_dims {
                row.push(m.submatrix(r0, c0, h, w));
                c0 += w;
            }
            grid.push(row);
            r0 += h;
        }
        Self::new(grid)
    }

    /// Number of block rows (and columns).
    pub fn n(&self) -> usize {
        self.row_dims.len()
    }

    pub fn row_dims(&self) -> &[usize] {
        &self.row_dims
    }

    pub fn col_dims(&self) -> &[usize] {
        &self.col_dims
    }

    pub fn block(&self, i: usize, j: usize) -> &CMatrix {
        &self.blocks[i * self.n() + j]
    }

    /// True when every block is square and `H_1 = … = H_n`.
    pub fn has_equal_square_blocks(&self) -> bool {
        self.row_dims == self.col_dims && self.row_dims.windows(2).all(|w| w[0] == w[1])
    }

    /// Assembles the dense operator on `H_1 ⊕ … ⊕ H_n`.
    pub fn flatten(&self) -> CMatrix {
        let rows: usize = self.row_dims.iter().sum();
        let cols: usize = self.col_dims.iter().sum();
        let mut out = CMatrix::zeros(rows, cols).into_data();
        let mut r0 = 0;
        for i in 0..self.n() {
            let mut c0 = 0;
            for j in 0..self.n() {
                let b = self.block(i, j);
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        out[(r0 + r) * cols + c0 + c] = b.get(r, c);
                    }
                }
                c0 += self.col_dims[j];
            }
            r0 += self.row_dims[i];
        }
        CMatrix::from_raw(rows, cols, out)
    }
}
