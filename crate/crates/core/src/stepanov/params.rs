use num_bigint::BigUint;
use serde::Serialize;

use super::PolySystem;
use crate::bounds::{integer_root, IntComparison};
use crate::{Error, Result};

/// Parameters `A, B_i, D` of the construction together with every condition
/// the counting argument relies on, each as an exact integer comparison.
///
/// With `B = (m_1⋯m_n)^(1/n) t^(1/(2n))`:
/// `B_i = floor(B / m_i)`, `A = ∏ B_i`, `D = floor(A / 𝓜_n)`.
#[derive(Debug, Clone, Serialize)]
pub struct StepanovParams {
    pub p: u64,
    pub t: u64,
    pub n: usize,
    /// Normalized degrees `m_1 <= … <= m_n`.
    pub m: Vec<u64>,
    /// `𝓜_n`.
    pub m_sum: u64,
    /// `B^(2n) = (∏m)^2 · t`; `B` itself is irrational in general.
    pub b_pow_2n: String,
    pub b: Vec<u64>,
    /// `𝓑_k = B_1 ⋯ B_k` for `k = 1..=n`.
    pub b_partial: Vec<u64>,
    pub a: u64,
    pub d: u64,
    /// `m_n / B < 1/n`, i.e. `(n m_n)^(2n) < B^(2n)`; gives `γ^n > 1/4` for
    /// `γ = (B - m_n)/B`.
    pub gamma_ratio: IntComparison,
    /// `AD + 𝓜_n D²/2 < A B_1⋯B_n`, doubled: `2AD + 𝓜_n D² < 2A∏B_i`.
    pub cond_var: IntComparison,
    /// `A - 1 + (B_1 m_1 + … + B_{n-1} m_{n-1} - 𝓜_{n-1}) t < p`.
    pub degree: IntComparison,
    /// `A - 1 + Σ_{i<=n} (B_i - 1) m_i t < p`: the degree of `Ψ` stays below `p`.
    pub psi_degree: IntComparison,
    /// `t > A𝓑_{n-1} + 𝓜_n 𝓑_{n-1}²/2`, doubled.
    pub ord_t: IntComparison,
    /// `t >= A𝓑_{n-1} + 𝓜_{n-1} 𝓑_{n-1}²/2 + 𝓑_{n-1}`, doubled.
    pub ineq_t: IntComparison,
    pub d_below_p: bool,
    pub cond_var_ok: bool,
    pub degree_ok: bool,
    /// Both forms of the order condition hold.
    pub ord_t_ok: bool,
}

impl StepanovParams {
    /// Every condition needed to build a valid certificate.
    pub fn hypotheses_ok(&self) -> bool {
        self.cond_var_ok
            && self.degree_ok
            && self.psi_degree.holds
            && self.ord_t_ok
            && self.d_below_p
    }

    /// The a-priori degree bound `A - 1 + Σ (B_i - 1) m_i t`.
    pub fn psi_degree_bound(&self) -> u64 {
        self.a - 1
            + self
                .b
                .iter()
                .zip(&self.m)
                .map(|(&b, &m)| (b - 1) * m * self.t)
                .sum::<u64>()
    }

    /// Number of unknowns `λ_{a,b}`: `A · ∏B_i`.
    pub fn unknowns(&self) -> u64 {
        self.a * self.b_partial.last().copied().unwrap_or(1)
    }

    pub fn failed_conditions(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.cond_var_ok {
            out.push("cond-var");
        }
        if !self.degree_ok {
            out.push("degree");
        }
        if !self.psi_degree.holds {
            out.push("psi-degree");
        }
        if !self.ord_t.holds {
            out.push("ord-t");
        }
        if !self.ineq_t.holds {
            out.push("ineq-t");
        }
        if !self.d_below_p {
            out.push("D<p");
        }
        out
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn to_u64(x: &BigUint, what: &str) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::DegenerateParams(format!("{what} overflows 64 bits")))
}

pub fn compute_params(sys: &PolySystem, t: u64) -> Result<StepanovParams> {
    if t < 2 {
        return Err(Error::Precondition(format!(
            "subgroup order t = {t} must be at least 2"
        )));
    }
    let n = sys.n();
    let nn = n as u32;
    let m = sys.degrees().to_vec();
    let m_sum = sys.degree_sum();
    let m_max = *m.last().unwrap();
    let prod: BigUint = m.iter().map(|&x| big(x)).product();
    let b_pow_2n = prod.pow(2) * big(t);

    // floor(B / m_i) = floor(((∏m)^2 t / m_i^(2n))^(1/(2n))), and the inner
    // quotient may be floored first without changing the result.
    let b = m
        .iter()
        .map(|&mi| {
            to_u64(
                &integer_root(&(&b_pow_2n / big(mi).pow(2 * nn)), 2 * nn),
                "B_i",
            )
        })
        .collect::<Result<Vec<u64>>>()?;
    if let Some(i) = b.iter().position(|&x| x == 0) {
        return Err(Error::DegenerateParams(format!(
            "B_{} = 0: t = {t} is too small for degree {}",
            i + 1,
            m[i]
        )));
    }
    let mut b_partial = Vec::with_capacity(n);
    let mut acc = big(1);
    for &bi in &b {
        acc *= big(bi);
        b_partial.push(to_u64(&acc, "B_1...B_k")?);
    }
    let a = *b_partial.last().unwrap();
    let d = a / m_sum;
    if d == 0 {
        return Err(Error::DegenerateParams(format!(
            "D = floor({a} / {m_sum}) = 0"
        )));
    }
    let p = sys.ctx().p();
    let bb = b_partial[n - 2];
    let m_prev = sys.partial_sums()[n - 2];

    let gamma_ratio = IntComparison::lt(big(nn as u64 * m_max).pow(2 * nn), b_pow_2n.clone());
    let cond_var = IntComparison::lt(
        big(2) * big(a) * big(d) + big(m_sum) * big(d).pow(2),
        big(2) * big(a) * big(a),
    );
    let lemma_sum: BigUint = b[..n - 1]
        .iter()
        .zip(&m[..n - 1])
        .map(|(&bi, &mi)| big(bi - 1) * big(mi))
        .sum();
    let degree = IntComparison::lt(big(a - 1) + lemma_sum * big(t), big(p));
    let full_sum: BigUint = b
        .iter()
        .zip(&m)
        .map(|(&bi, &mi)| big(bi - 1) * big(mi))
        .sum();
    let psi_degree = IntComparison::lt(big(a - 1) + full_sum * big(t), big(p));
    let ord_t = IntComparison::lt(
        big(2) * big(a) * big(bb) + big(m_sum) * big(bb).pow(2),
        big(2) * big(t),
    );
    let ineq_t = IntComparison::le(
        big(2) * big(a) * big(bb) + big(m_prev) * big(bb).pow(2) + big(2) * big(bb),
        big(2) * big(t),
    );

    Ok(StepanovParams {
        p,
        t,
        n,
        m,
        m_sum,
        b_pow_2n: b_pow_2n.to_string(),
        b,
        b_partial,
        a,
        d,
        d_below_p: d < p,
        cond_var_ok: cond_var.holds,
        degree_ok: degree.holds,
        ord_t_ok: ord_t.holds && ineq_t.holds,
        gamma_ratio,
        cond_var,
        degree,
        psi_degree,
        ord_t,
        ineq_t,
    })
}
