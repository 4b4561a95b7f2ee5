use super::recurrence::RecurrenceBasis;
use super::{PolySystem, StepanovParams};
use crate::ffield::CosetSpec;
use crate::linalg::{kernel_vector, Matrix};
use crate::{Error, Result};

/// The homogeneous system `Q_k ≡ 0` for `k < D`, where
/// `Q_k = Σ_{a,b} λ_{a,b} γ_b P_{k,a,b}` and `γ_b = ∏ g_i^{b_i t}`.
///
/// Unknown `(a, b)` sits in column `a + A·(b_1 + B_1·(b_2 + …))`. Row
/// `offset(k) + j` is the coefficient of `x^j` in `Q_k`, for
/// `j <= A - 1 + (𝓜_n - 1) k`.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    matrix: Matrix,
    a: usize,
    b: Vec<usize>,
    d: usize,
    row_offsets: Vec<usize>,
    row_bound: u64,
}

impl LinearSystem {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn unknowns(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn equations(&self) -> usize {
        self.matrix.nrows()
    }

    /// `A·D + 𝓜_n D²/2 + D`, rounded down.
    pub fn equation_bound(&self) -> u64 {
        self.row_bound
    }

    /// First row of the block for `Q_k`.
    pub fn row_offset(&self, k: usize) -> usize {
        self.row_offsets[k]
    }

    pub fn index_of(&self, a: usize, b: &[u64]) -> usize {
        unknown_index(self.a, &self.b, a, b)
    }

    pub fn decode(&self, idx: usize) -> (usize, Vec<u64>) {
        decode_unknown(self.a, &self.b, idx)
    }

    pub fn shape(&self) -> (usize, &[usize], usize) {
        (self.a, &self.b, self.d)
    }
}

pub(crate) fn unknown_index(a_len: usize, b_len: &[usize], a: usize, b: &[u64]) -> usize {
    let lin = b
        .iter()
        .zip(b_len)
        .rev()
        .fold(0usize, |acc, (&bi, &len)| acc * len + bi as usize);
    a + a_len * lin
}

pub(crate) fn decode_unknown(a_len: usize, b_len: &[usize], idx: usize) -> (usize, Vec<u64>) {
    let a = idx % a_len;
    let mut rest = idx / a_len;
    let b = b_len
        .iter()
        .map(|&len| {
            let v = rest % len;
            rest /= len;
            v as u64
        })
        .collect();
    (a, b)
}

/// `cosets` are given in the caller's polynomial order.
pub fn build_linear_system(
    sys: &PolySystem,
    params: &StepanovParams,
    cosets: &[CosetSpec],
) -> Result<LinearSystem> {
    if cosets.len() != sys.n() {
        return Err(Error::Precondition(format!(
            "expected {} cosets, got {}",
            sys.n(),
            cosets.len()
        )));
    }
    if let Some(c) = cosets.iter().find(|c| c.subgroup().order() != params.t) {
        return Err(Error::Precondition(format!(
            "coset of a subgroup of order {} used with t = {}",
            c.subgroup().order(),
            params.t
        )));
    }
    let ctx = *sys.ctx();
    let cosets = sys.normalize(cosets);
    let g_t: Vec<u64> = cosets.iter().map(CosetSpec::tth_power).collect();
    let a_len = params.a as usize;
    let b_len: Vec<usize> = params.b.iter().map(|&b| b as usize).collect();
    let d = params.d as usize;
    let m_sum = params.m_sum as usize;

    let mut row_offsets = Vec::with_capacity(d + 1);
    let mut total = 0usize;
    for k in 0..d {
        row_offsets.push(total);
        total += a_len + (m_sum - 1) * k;
    }
    row_offsets.push(total);
    let unknowns = a_len * b_len.iter().product::<usize>();
    let mut rows = vec![vec![0u64; unknowns]; total];

    let basis = RecurrenceBasis::new(sys.polys());
    #[allow(clippy::needless_range_loop)]
    for col in 0..unknowns {
        let (a, b) = decode_unknown(a_len, &b_len, col);
        let gamma = b
            .iter()
            .zip(&g_t)
            .fold(1u64, |acc, (&bi, &g)| ctx.mul(acc, ctx.pow(g, bi)));
        let seq = basis.sequence(a, &b, params.t, d.saturating_sub(1));
        let m = ctx.shoup(gamma);
        for (k, pk) in seq.iter().enumerate().take(d) {
            let width = row_offsets[k + 1] - row_offsets[k];
            debug_assert!(pk.coeffs().len() <= width);
            for (j, &c) in pk.coeffs().iter().enumerate().take(width) {
                rows[row_offsets[k] + j][col] = m.mul(c);
            }
        }
    }
    let matrix = Matrix::from_rows(ctx, unknowns, rows);
    let row_bound = (2 * params.a * params.d + params.m_sum * params.d * params.d) / 2 + params.d;
    Ok(LinearSystem {
        matrix,
        a: a_len,
        b: b_len,
        d,
        row_offsets,
        row_bound,
    })
}

/// Deterministic nonzero `λ` with the first-free-variable convention.
pub fn solve_nullspace(system: &LinearSystem) -> Result<Vec<u64>> {
    kernel_vector(system.matrix())
}
