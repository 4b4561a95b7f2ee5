//! Exhaustive ground truth: the sets `M` and `M'`, coset intersections, and
//! full instance reports comparing the certificate against every bound.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{theorem2_report, BoundReport};
use crate::ffield::{in_coset, subgroup_of_order, CosetSpec, FieldCtx};
use crate::poly::DensePoly;
use crate::stepanov::{
    check_admissible, compute_params, construct_certificate, verify_certificate,
    AdmissibilityReport, PolySystem, StepanovParams,
};
use crate::{Error, Result};

/// Largest field the exhaustive scan accepts.
pub const MAX_SCAN: u64 = 10_000_000;
const PAR_THRESHOLD: u64 = 100_000;
const CHUNK: u64 = 1 << 15;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationResult {
    pub m: Vec<u64>,
    /// Elements of `M` with `x ∏ f_i(x) ≠ 0`.
    pub m_prime: Vec<u64>,
    pub excluded: Vec<u64>,
}

fn scan<F>(p: u64, keep: F) -> Result<Vec<u64>>
where
    F: Fn(u64) -> bool + Sync,
{
    if p > MAX_SCAN {
        return Err(Error::FieldTooLarge(p));
    }
    if p <= PAR_THRESHOLD {
        return Ok((0..p).filter(|&x| keep(x)).collect());
    }
    let chunks: Vec<u64> = (0..p.div_ceil(CHUNK)).collect();
    let parts: Vec<Vec<u64>> = chunks
        .par_iter()
        .map(|&c| {
            (c * CHUNK..((c + 1) * CHUNK).min(p))
                .filter(|&x| keep(x))
                .collect()
        })
        .collect();
    Ok(parts.concat())
}

/// `M` for polynomials and cosets given pairwise in any order. Also used for
/// degenerate maps (e.g. `f_1 = x`) that [`PolySystem`] would accept but the
/// construction would not.
pub fn enumerate_m_polys(polys: &[DensePoly], cosets: &[CosetSpec]) -> Result<EnumerationResult> {
    let first = polys.first().ok_or(Error::EmptyFamily)?;
    if polys.len() != cosets.len() {
        return Err(Error::Precondition(format!(
            "{} polynomials but {} cosets",
            polys.len(),
            cosets.len()
        )));
    }
    let ctx = *first.ctx();
    let m = scan(ctx.p(), |x| {
        polys
            .iter()
            .zip(cosets)
            .all(|(f, c)| in_coset(f.eval(x), c))
    })?;
    let (m_prime, excluded) = m
        .iter()
        .partition(|&&x| x != 0 && polys.iter().all(|f| f.eval(x) != 0));
    Ok(EnumerationResult {
        m,
        m_prime,
        excluded,
    })
}

/// `cosets` in the caller's order, matching the order `sys` was built from.
pub fn enumerate_m(sys: &PolySystem, cosets: &[CosetSpec]) -> Result<EnumerationResult> {
    enumerate_m_polys(&sys.polys_original(), cosets)
}

fn check_shifts(ctx: &FieldCtx, shifts: &[u64]) -> Result<Vec<u64>> {
    let reduced: Vec<u64> = shifts.iter().map(|&s| ctx.reduce(s)).collect();
    let mut sorted = reduced.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if reduced.contains(&0) || sorted.len() != reduced.len() {
        return Err(Error::InvalidShifts);
    }
    Ok(reduced)
}

/// `Γ ∩ (Γ+μ_1) ∩ … ∩ (Γ+μ_k)` for the subgroup `Γ` of order `t`.
pub fn coset_intersection(ctx: &FieldCtx, t: u64, shifts: &[u64]) -> Result<Vec<u64>> {
    if ctx.p() > MAX_SCAN {
        return Err(Error::FieldTooLarge(ctx.p()));
    }
    let shifts = check_shifts(ctx, shifts)?;
    let sg = subgroup_of_order(ctx, t)?;
    let keep = |x: u64| shifts.iter().all(|&mu| sg.contains(ctx.sub(x, mu)));
    match sg.elements() {
        Some(elems) => Ok(elems.iter().copied().filter(|&x| keep(x)).collect()),
        None => scan(ctx.p(), |x| sg.contains(x) && keep(x)),
    }
}

/// The same set computed as `M` for the map `x ↦ (x, x - μ_1, …)` with
/// every coset equal to `Γ`.
pub fn coset_intersection_via_map(ctx: &FieldCtx, t: u64, shifts: &[u64]) -> Result<Vec<u64>> {
    let shifts = check_shifts(ctx, shifts)?;
    let sg = subgroup_of_order(ctx, t)?;
    let mut polys = vec![DensePoly::x(*ctx)];
    polys.extend(shifts.iter().map(|&mu| DensePoly::linear_root(*ctx, mu)));
    let cosets = vec![sg.coset(1)?; polys.len()];
    Ok(enumerate_m_polys(&polys, &cosets)?.m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Passed,
    Failed,
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Passed => "PASSED",
            Status::Failed => "FAILED",
            Status::Skipped => "SKIPPED",
        }
    }
}

/// A single instance: polynomials and coset representatives in caller order.
#[derive(Debug, Clone)]
pub struct InstanceSpec {
    pub p: u64,
    pub t: u64,
    pub polys: Vec<DensePoly>,
    pub cosets: Vec<u64>,
}

impl InstanceSpec {
    pub fn from_text(p: u64, t: u64, polys: &[String], cosets: &[u64]) -> Result<Self> {
        let ctx = FieldCtx::new(p)?;
        let polys = polys
            .iter()
            .map(|s| DensePoly::parse(ctx, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            p,
            t,
            polys,
            cosets: cosets.to_vec(),
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceReport {
    pub p: u64,
    pub t: u64,
    pub n: usize,
    /// Degrees in normalized order.
    pub m: Vec<u64>,
    pub polys: Vec<String>,
    pub cosets: Vec<u64>,
    pub status: Status,
    pub skip_reason: Option<String>,
    pub error: Option<String>,
    pub m_size: usize,
    pub m_prime_size: usize,
    pub excluded_size: usize,
    pub elements: Vec<u64>,
    pub admissibility: AdmissibilityReport,
    pub params: Option<StepanovParams>,
    pub deg_psi: Option<usize>,
    pub d: Option<u64>,
    /// `1 + 𝓜_n + floor(deg Ψ / D)`.
    pub implied_bound: Option<u64>,
    pub multiplicity_sum: Option<usize>,
    pub theorem2: BoundReport,
    pub checks: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl InstanceReport {
    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, &ok)| !ok)
            .map(|(k, _)| k.as_str())
            .collect()
    }
}

/// Enumerates `M`, builds and verifies a certificate, and evaluates the main
/// bound. Instances outside the hypotheses come back [`Status::Skipped`];
/// only a broken certificate or a violated bound is [`Status::Failed`].
pub fn verify_instance(spec: &InstanceSpec) -> Result<InstanceReport> {
    let ctx = FieldCtx::new(spec.p)?;
    let sys = PolySystem::new(ctx, spec.polys.clone())?;
    if spec.cosets.len() != sys.n() {
        return Err(Error::Precondition(format!(
            "{} polynomials but {} coset representatives",
            sys.n(),
            spec.cosets.len()
        )));
    }
    let sg = subgroup_of_order(&ctx, spec.t)?;
    let cosets = spec
        .cosets
        .iter()
        .map(|&g| sg.coset(g))
        .collect::<Result<Vec<_>>>()?;
    let en = enumerate_m(&sys, &cosets)?;
    let size = en.m.len() as u64;
    let theorem2 = theorem2_report(sys.degrees(), spec.p, spec.t, size);
    let admissibility = check_admissible(&sys);

    let mut report = InstanceReport {
        p: spec.p,
        t: spec.t,
        n: sys.n(),
        m: sys.degrees().to_vec(),
        polys: spec.polys.iter().map(DensePoly::to_text).collect(),
        cosets: spec.cosets.clone(),
        status: Status::Skipped,
        skip_reason: None,
        error: None,
        m_size: en.m.len(),
        m_prime_size: en.m_prime.len(),
        excluded_size: en.excluded.len(),
        elements: en.m.clone(),
        admissibility,
        params: None,
        deg_psi: None,
        d: None,
        implied_bound: None,
        multiplicity_sum: None,
        theorem2,
        checks: BTreeMap::new(),
        seed: None,
    };

    if let Some(reason) = report.admissibility.reason() {
        report.skip_reason = Some(format!("admissibility: {reason}"));
        return Ok(report);
    }
    if !report.theorem2.window_ok {
        let side = if report.theorem2.lower_window.holds {
            "upper"
        } else {
            "lower"
        };
        report.skip_reason = Some(format!("window: {side} bound on t fails"));
        return Ok(report);
    }
    let params = match compute_params(&sys, spec.t) {
        Ok(p) => p,
        Err(Error::DegenerateParams(msg)) => {
            report.skip_reason = Some(format!("hypotheses: {msg}"));
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    if !params.hypotheses_ok() {
        report.skip_reason = Some(format!(
            "hypotheses: {}",
            params.failed_conditions().join(", ")
        ));
        report.params = Some(params);
        return Ok(report);
    }
    report.d = Some(params.d);
    report
        .checks
        .insert("theorem2_bound".into(), report.theorem2.bound_holds);

    let cert = match construct_certificate(&sys, &params, &cosets) {
        Ok(c) => c,
        Err(e) => {
            report.error = Some(e.to_string());
            report.checks.insert("certificate".into(), false);
            report.status = Status::Failed;
            report.params = Some(params);
            return Ok(report);
        }
    };
    let outcome = verify_certificate(&cert, &en.m_prime, &sys)?;
    let bound = params.psi_degree_bound();
    report
        .checks
        .insert("lambda_nonzero".into(), cert.lambda.iter().any(|&v| v != 0));
    report
        .checks
        .insert("psi_nonzero".into(), !cert.psi.is_zero());
    report
        .checks
        .insert("multiplicity_at_least_d".into(), outcome.multiplicities_ok);
    report
        .checks
        .insert("multiplicity_sum".into(), outcome.sum_ok);
    report.checks.insert(
        "psi_degree".into(),
        (outcome.deg_psi as u64) <= bound && bound < spec.p,
    );
    report
        .checks
        .insert("count_bound".into(), size <= outcome.implied_bound);
    report.deg_psi = Some(outcome.deg_psi);
    report.implied_bound = Some(outcome.implied_bound);
    report.multiplicity_sum = Some(outcome.multiplicity_sum);
    report.params = Some(params);
    report.status = if report.checks.values().all(|&ok| ok) {
        Status::Passed
    } else {
        Status::Failed
    };
    Ok(report)
}
