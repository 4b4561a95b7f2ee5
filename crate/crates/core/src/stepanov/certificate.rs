use std::collections::BTreeMap;

use serde::Serialize;

use super::system::{decode_unknown, unknown_index};
use super::{build_linear_system, solve_nullspace, PolySystem, StepanovParams};
use crate::ffield::CosetSpec;
use crate::poly::DensePoly;
use crate::{Error, Result};

/// `λ`, the assembled `Ψ`, and (once verified) the measured vanishing order
/// of `Ψ` at every element of `M'`.
#[derive(Debug, Clone)]
pub struct PsiCertificate {
    pub lambda: Vec<u64>,
    pub a: usize,
    pub b: Vec<usize>,
    pub psi: DensePoly,
    pub d: u64,
    pub deg_psi: usize,
    pub per_root: BTreeMap<u64, usize>,
}

impl PsiCertificate {
    pub fn lambda_at(&self, a: usize, b: &[u64]) -> u64 {
        self.lambda[unknown_index(self.a, &self.b, a, b)]
    }

    /// Nonzero entries as `(a, b, λ_{a,b})`.
    pub fn lambda_entries(&self) -> Vec<(usize, Vec<u64>, u64)> {
        self.lambda
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| {
                let (a, b) = decode_unknown(self.a, &self.b, i);
                (a, b, v)
            })
            .collect()
    }
}

/// Expands `Σ λ_{a,b} x^a ∏ f_i^{b_i t}` by nesting over the `b` indices:
/// the innermost sums are `H_b(x) = Σ_a λ_{a,b} x^a`, and each level
/// multiplies by a cached power `f_i^{b_i t}`.
pub fn assemble_psi(
    sys: &PolySystem,
    params: &StepanovParams,
    lambda: &[u64],
    t: u64,
) -> Result<DensePoly> {
    let bound = params.psi_degree_bound();
    let p = sys.ctx().p();
    if bound >= p {
        return Err(Error::DegreeOverflow { bound, p });
    }
    let a_len = params.a as usize;
    let b_len: Vec<usize> = params.b.iter().map(|&b| b as usize).collect();
    if lambda.len() != a_len * b_len.iter().product::<usize>() {
        return Err(Error::Precondition(format!(
            "lambda has {} entries, expected {}",
            lambda.len(),
            a_len * b_len.iter().product::<usize>()
        )));
    }
    let ctx = *sys.ctx();
    let powers: Vec<Vec<DensePoly>> = sys
        .polys()
        .iter()
        .zip(&b_len)
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
    Ok(nest(&ctx, lambda, a_len, &b_len, &powers, b_len.len()))
}

fn nest(
    ctx: &crate::FieldCtx,
    lambda: &[u64],
    a_len: usize,
    b_len: &[usize],
    powers: &[Vec<DensePoly>],
    level: usize,
) -> DensePoly {
    if level == 0 {
        return DensePoly::new(*ctx, lambda.to_vec());
    }
    let chunk = a_len * b_len[..level - 1].iter().product::<usize>();
    let mut acc = DensePoly::zero(*ctx);
    for (bi, block) in lambda.chunks(chunk).enumerate() {
        if block.iter().all(|&v| v == 0) {
            continue;
        }
        let inner = nest(ctx, block, a_len, b_len, powers, level - 1);
        acc = &acc + &(&powers[level - 1][bi] * &inner);
    }
    acc
}

/// Runs the construction: linear system, kernel vector, expansion of `Ψ`.
/// Fails with [`Error::DegenerateParams`] when a hypothesis needed for a
/// sound certificate is not met.
pub fn construct_certificate(
    sys: &PolySystem,
    params: &StepanovParams,
    cosets: &[CosetSpec],
) -> Result<PsiCertificate> {
    if !params.d_below_p {
        return Err(Error::DegenerateParams(format!(
            "D = {} is not below p = {}",
            params.d, params.p
        )));
    }
    let system = build_linear_system(sys, params, cosets)?;
    let lambda = solve_nullspace(&system)?;
    let psi = assemble_psi(sys, params, &lambda, params.t)?;
    let deg_psi = psi.degree().ok_or(Error::ZeroPsi)?;
    Ok(PsiCertificate {
        lambda,
        a: params.a as usize,
        b: params.b.iter().map(|&b| b as usize).collect(),
        psi,
        d: params.d,
        deg_psi,
        per_root: BTreeMap::new(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationOutcome {
    pub per_root: BTreeMap<u64, usize>,
    /// Every element of `M'` is a root of order at least `D`.
    pub multiplicities_ok: bool,
    pub multiplicity_sum: usize,
    /// `Σ multiplicities <= deg Ψ`.
    pub sum_ok: bool,
    pub deg_psi: usize,
    pub d: u64,
    /// `1 + 𝓜_n + floor(deg Ψ / D)`; an integer `|M|` satisfies the real
    /// bound `1 + 𝓜_n + deg Ψ / D` iff it satisfies this one.
    pub implied_bound: u64,
    pub passed: bool,
}

/// Checks the certificate against `M'` by synthetic division only; no
/// derivatives are involved, so the result holds in any characteristic.
pub fn verify_certificate(
    cert: &PsiCertificate,
    m_prime: &[u64],
    sys: &PolySystem,
) -> Result<VerificationOutcome> {
    let deg_psi = cert.psi.degree().ok_or(Error::ZeroPsi)?;
    let per_root = m_prime
        .iter()
        .map(|&x| Ok((x, cert.psi.multiplicity_at(x)?)))
        .collect::<Result<BTreeMap<u64, usize>>>()?;
    let multiplicities_ok = per_root.values().all(|&k| k as u64 >= cert.d);
    let multiplicity_sum: usize = per_root.values().sum();
    let sum_ok = multiplicity_sum <= deg_psi;
    let implied_bound = 1 + sys.degree_sum() + deg_psi as u64 / cert.d.max(1);
    Ok(VerificationOutcome {
        passed: multiplicities_ok && sum_ok,
        per_root,
        multiplicities_ok,
        multiplicity_sum,
        sum_ok,
        deg_psi,
        d: cert.d,
        implied_bound,
    })
}
