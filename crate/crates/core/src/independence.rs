//! Linear independence of polynomial families over `F_p`: direct rank checks,
//! Wronskians, and the divisibility bookkeeping used to show the product
//! family `x^a ∏ f_i^{b_i t}` is independent.
//!
//! In characteristic `p` a vanishing Wronskian only forces dependence over
//! `F_p[[x^p]]`; when every degree is below `p` that collapses to dependence
//! over `F_p`. [`schmidt_consequence_check`] tests exactly this implication.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::bounds::IntComparison;
use crate::linalg::Matrix;
use crate::poly::DensePoly;
use crate::{Error, Result};

/// Largest family accepted by [`wronskian`].
pub const MAX_WRONSKIAN: usize = 8;
const BAREISS_MAX: usize = 5;

/// Full row rank of the coefficient matrix.
pub fn rank_independence(polys: &[DensePoly]) -> Result<bool> {
    let first = polys.first().ok_or(Error::EmptyFamily)?;
    let ctx = *first.ctx();
    if let Some(f) = polys.iter().find(|f| *f.ctx() != ctx) {
        return Err(Error::ModulusMismatch(ctx.p(), f.ctx().p()));
    }
    let cols = polys.iter().map(|f| f.coeffs().len()).max().unwrap_or(0);
    if polys.len() > cols {
        return Ok(false);
    }
    let rows = polys
        .iter()
        .map(|f| {
            let mut r = f.coeffs().to_vec();
            r.resize(cols, 0);
            r
        })
        .collect();
    Ok(Matrix::from_rows(ctx, cols, rows).rank() == polys.len())
}

/// `det [ f_j^{(k)} ]_{k, j}`.
pub fn wronskian(polys: &[DensePoly]) -> Result<DensePoly> {
    let s = polys.len();
    if s == 0 {
        return Err(Error::EmptyFamily);
    }
    if s > MAX_WRONSKIAN {
        return Err(Error::FamilyTooLarge(s));
    }
    let mut rows = vec![polys.to_vec()];
    for k in 1..s {
        let next = rows[k - 1].iter().map(DensePoly::derivative).collect();
        rows.push(next);
    }
    if s <= BAREISS_MAX {
        Ok(bareiss_det(rows))
    } else {
        Ok(cofactor_det(&rows))
    }
}

/// Fraction-free elimination; every division is exact in `F_p[x]`.
fn bareiss_det(mut m: Vec<Vec<DensePoly>>) -> DensePoly {
    let s = m.len();
    let ctx = *m[0][0].ctx();
    let mut negate = false;
    let mut prev = DensePoly::one(ctx);
    for k in 0..s - 1 {
        if m[k][k].is_zero() {
            match (k + 1..s).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return DensePoly::zero(ctx),
            }
        }
        for i in k + 1..s {
            for j in k + 1..s {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("same field")
                    .expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[s - 1][s - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Laplace expansion along successive rows, memoized on the set of columns
/// still available.
fn cofactor_det(m: &[Vec<DensePoly>]) -> DensePoly {
    fn go(
        m: &[Vec<DensePoly>],
        row: usize,
        cols: u32,
        memo: &mut HashMap<u32, DensePoly>,
    ) -> DensePoly {
        let ctx = *m[0][0].ctx();
        if row == m.len() {
            return DensePoly::one(ctx);
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc = DensePoly::zero(ctx);
        let mut pos = 0;
        for j in 0..m.len() {
            if cols & (1 << j) == 0 {
                continue;
            }
            if !m[row][j].is_zero() {
                let minor = go(m, row + 1, cols & !(1 << j), memo);
                let term = &m[row][j] * &minor;
                acc = if pos % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            pos += 1;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    go(m, 0, (1u32 << m.len()) - 1, &mut HashMap::new())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SchmidtVerdict {
    pub wronskian_zero: bool,
    pub fp_independent: bool,
    pub degrees_below_p: bool,
    /// Independent over `F_p`, all degrees below `p`, yet `W ≡ 0`. Never
    /// expected to be true.
    pub violation: bool,
}

pub fn schmidt_consequence_check(polys: &[DensePoly]) -> Result<SchmidtVerdict> {
    let w = wronskian(polys)?;
    let fp_independent = rank_independence(polys)?;
    let p = polys[0].ctx().p();
    let degrees_below_p = polys
        .iter()
        .all(|f| f.degree().is_none_or(|d| (d as u64) < p));
    let wronskian_zero = w.is_zero();
    Ok(SchmidtVerdict {
        wronskian_zero,
        fp_independent,
        degrees_below_p,
        violation: wronskian_zero && fp_independent && degrees_below_p,
    })
}

/// One instance of the independence argument for the first `n - 1`
/// polynomials.
#[derive(Debug, Clone)]
pub struct Lemma1Input {
    /// `f_1, …, f_{n-1}`.
    pub polys: Vec<DensePoly>,
    pub t: u64,
    pub a: u64,
    /// `B_1, …, B_{n-1}`.
    pub b: Vec<u64>,
    /// `m_n`, used only by the `ord-t` form of the order condition. Defaults
    /// to the largest degree among `polys`.
    pub last_degree: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma1Report {
    /// `𝓑_{n-1} = ∏ B_i`, the Wronskian size.
    pub family_size: usize,
    /// `A - 1 + (Σ B_i m_i - 𝓜_{n-1}) t < p`.
    pub degree: IntComparison,
    /// `2t > 2A𝓑 + 𝓜_n 𝓑²`.
    pub ord_t: IntComparison,
    /// `2t >= 2A𝓑 + 𝓜_{n-1} 𝓑² + 2𝓑`.
    pub ineq_t: IntComparison,
    pub hypotheses_ok: bool,
    pub wronskian_nonzero: bool,
    pub wronskian_degree: Option<usize>,
    pub r_degree: usize,
    /// `R | W` with exponents clamped at zero.
    pub r_divides_w: bool,
    pub quotient_degree: Option<usize>,
    /// `2 deg(W/R) <= 2A𝓑 + 𝓜_{n-1}𝓑²`.
    pub quotient_bound: Option<IntComparison>,
    /// The products `x^a ∏ f_i^{b_i t}` pass the rank check.
    pub products_independent: bool,
}

impl Lemma1Report {
    pub fn passed(&self) -> bool {
        self.wronskian_nonzero
            && self.r_divides_w
            && self.quotient_bound.as_ref().is_some_and(|c| c.holds)
            && self.products_independent
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// Enumerates `b̃ = (b_1, …, b_k)` with `b_1` fastest.
fn exponent_tuples(b: &[u64]) -> Vec<Vec<u64>> {
    let total: u64 = b.iter().product();
    (0..total)
        .map(|mut idx| {
            b.iter()
                .map(|&len| {
                    let v = idx % len;
                    idx /= len;
                    v
                })
                .collect()
        })
        .collect()
}

/// `H_j = x^{A-1} + Σ_{a < A-1, a ≡ j mod 𝓑} x^a`: indicator coefficients,
/// degree exactly `A - 1`, every `a` assigned to some column.
fn h_basis(ctx: crate::FieldCtx, a: u64, family: usize, j: usize) -> DensePoly {
    let mut coeffs = vec![0u64; a as usize];
    coeffs[a as usize - 1] = 1;
    for (k, c) in coeffs.iter_mut().enumerate().take(a as usize - 1) {
        if k % family == j {
            *c = 1;
        }
    }
    DensePoly::new(ctx, coeffs)
}

pub fn lemma1_pipeline(input: &Lemma1Input) -> Result<Lemma1Report> {
    let polys = &input.polys;
    let first = polys.first().ok_or(Error::EmptyFamily)?;
    if input.b.len() != polys.len() {
        return Err(Error::Precondition("one B_i per polynomial".into()));
    }
    if input.a == 0 || input.b.contains(&0) {
        return Err(Error::Precondition(
            "A and every B_i must be positive".into(),
        ));
    }
    let ctx = *first.ctx();
    let p = ctx.p();
    let (t, a) = (input.t, input.a);
    let family = input.b.iter().product::<u64>() as usize;
    if family > MAX_WRONSKIAN {
        return Err(Error::FamilyTooLarge(family));
    }
    let degs: Vec<u64> = polys
        .iter()
        .map(|f| f.degree().unwrap_or(0) as u64)
        .collect();
    let m_prev: u64 = degs.iter().sum();
    let m_last = input.last_degree.unwrap_or(*degs.iter().max().unwrap());
    let bb = family as u64;

    let lift: BigUint = input
        .b
        .iter()
        .zip(&degs)
        .map(|(&bi, &mi)| big(bi - 1) * big(mi))
        .sum();
    let degree = IntComparison::lt(big(a - 1) + lift * big(t), big(p));
    let core = big(2) * big(a) * big(bb);
    let ord_t = IntComparison::lt(
        &core + big(m_prev + m_last) * big(bb).pow(2),
        big(2) * big(t),
    );
    let ineq_t = IntComparison::le(
        &core + big(m_prev) * big(bb).pow(2) + big(2 * bb),
        big(2) * big(t),
    );

    let tuples = exponent_tuples(&input.b);
    let powers: Vec<Vec<DensePoly>> = polys
        .iter()
        .zip(&input.b)
        .map(|(f, &len)| {
            let ft = f.pow(t);
            let mut out = vec![DensePoly::one(ctx)];
            for _ in 1..len {
                let next = out.last().unwrap() * &ft;
                out.push(next);
            }
            out
        })
        .collect();
    let product_of = |bt: &[u64]| {
        bt.iter()
            .enumerate()
            .fold(DensePoly::one(ctx), |acc, (i, &bi)| {
                &acc * &powers[i][bi as usize]
            })
    };

    let family_polys: Vec<DensePoly> = tuples
        .iter()
        .enumerate()
        .map(|(j, bt)| &h_basis(ctx, a, family, j) * &product_of(bt))
        .collect();
    let w = wronskian(&family_polys)?;

    let r = tuples.iter().fold(DensePoly::one(ctx), |acc, bt| {
        bt.iter().zip(polys).fold(acc, |acc, (&bi, f)| {
            let e = (bi * t + 1).saturating_sub(bb);
            &acc * &f.pow(e)
        })
    });
    let quotient = w.exact_div(&r)?;
    let r_divides_w = quotient.is_some();
    let quotient_degree = quotient.as_ref().and_then(DensePoly::degree);
    let quotient_bound = quotient_degree
        .map(|q| IntComparison::le(big(2 * q as u64), &core + big(m_prev) * big(bb).pow(2)));

    let mut products = Vec::with_capacity(a as usize * family);
    for bt in &tuples {
        let base = product_of(bt);
        for k in 0..a as usize {
            products.push(base.shift(k));
        }
    }
    let products_independent = rank_independence(&products)?;

    Ok(Lemma1Report {
        family_size: family,
        hypotheses_ok: degree.holds && ord_t.holds && ineq_t.holds,
        degree,
        ord_t,
        ineq_t,
        wronskian_nonzero: !w.is_zero(),
        wronskian_degree: w.degree(),
        r_degree: r.degree().unwrap_or(0),
        r_divides_w,
        quotient_degree,
        quotient_bound,
        products_independent,
    })
}
