//! Dense Gaussian elimination over `F_p`.

use rayon::prelude::*;

use crate::ffield::FieldCtx;
use crate::{Error, Result};

// Row updates below this many entries stay on the calling thread.
const PAR_WORK: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    ctx: FieldCtx,
    cols: usize,
    rows: Vec<Vec<u64>>,
}

impl Matrix {
    pub fn zeros(ctx: FieldCtx, rows: usize, cols: usize) -> Self {
        Self {
            ctx,
            cols,
            rows: vec![vec![0; cols]; rows],
        }
    }

    /// Rows must all have length `cols` and hold canonical residues.
    pub fn from_rows(ctx: FieldCtx, cols: usize, rows: Vec<Vec<u64>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|v| ctx.reduce(v)).collect())
            .collect();
        Self { ctx, cols, rows }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i]
    }

    pub fn push_row(&mut self, row: Vec<u64>) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    /// In-place reduction to row echelon form with unit pivots. Returns the
    /// pivot column of each nonzero row, in row order.
    pub fn echelonize(&mut self) -> Vec<usize> {
        let ctx = self.ctx;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows.len() {
                break;
            }
            let Some(pr) = (r..self.rows.len()).find(|&i| self.rows[i][c] != 0) else {
                continue;
            };
            self.rows.swap(r, pr);
            let inv = ctx.shoup(ctx.inv(self.rows[r][c]).expect("nonzero pivot"));
            for v in self.rows[r][c..].iter_mut() {
                *v = inv.mul(*v);
            }
            let (top, below) = self.rows.split_at_mut(r + 1);
            let pivot_row = &top[r][c..];
            let eliminate = |row: &mut Vec<u64>| {
                let f = row[c];
                if f == 0 {
                    return;
                }
                let m = ctx.shoup(ctx.neg(f));
                for (v, &pv) in row[c..].iter_mut().zip(pivot_row) {
                    *v = ctx.add(*v, m.mul(pv));
                }
            };
            if below.len() * (self.cols - c) >= PAR_WORK {
                below.par_iter_mut().for_each(eliminate);
            } else {
                below.iter_mut().for_each(eliminate);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelonize().len()
    }
}

/// The deterministic kernel vector: the lowest non-pivot column is set to 1,
/// every other free variable to 0, and pivot variables follow by back
/// substitution.
pub fn kernel_vector(m: &Matrix) -> Result<Vec<u64>> {
    let ctx = *m.ctx();
    let mut ech = m.clone();
    let pivots = ech.echelonize();
    let mut is_pivot = vec![false; m.ncols()];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free = (0..m.ncols())
        .find(|&c| !is_pivot[c])
        .ok_or(Error::TrivialKernel)?;
    let mut x = vec![0u64; m.ncols()];
    x[free] = 1;
    for (i, &pc) in pivots.iter().enumerate().rev() {
        let row = ech.row(i);
        let s = (pc + 1..m.ncols())
            .filter(|&j| x[j] != 0)
            .fold(0, |acc, j| ctx.add(acc, ctx.mul(row[j], x[j])));
        x[pc] = ctx.neg(s);
    }
    Ok(x)
}
