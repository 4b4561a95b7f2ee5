//! The roots-of-unity analogue over `ℂ`: `M = { z : f_i(z) ∈ g_i·G }` with
//! `G` the group of `t`-th roots of unity, enumerated numerically.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::bounds::{IntComparison, Remark1Constants};
use crate::oracle::Status;
use crate::{Error, Result};

pub const MAX_DEGREE: usize = 256;
/// `|(f_i(z)/g_i)^t - 1|` below this counts as membership.
pub const ACCEPT_TOL: f64 = 1e-6;
/// Accepted points closer than this are merged.
pub const DEDUP_TOL: f64 = 1e-7;
/// Relative residual every returned root must meet.
pub const RESIDUAL_TOL: f64 = 1e-8;
const MAX_ITERS: usize = 500;

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn horner_with_deriv(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    coeffs
        .iter()
        .rev()
        .fold((zero, zero), |(v, d), &c| (v * z + c, d * z + v))
}

/// Whether `|p(z)| <= 1e-8 (1+|z|)^deg ‖p‖_1`.
pub fn residual_ok(coeffs: &[Complex64], z: Complex64) -> bool {
    let norm: f64 = coeffs.iter().map(|c| c.norm()).sum();
    let deg = coeffs.len() as i32 - 1;
    horner(coeffs, z).norm() <= RESIDUAL_TOL * (1.0 + z.norm()).powi(deg) * norm
}

/// All roots of `Σ c_k x^k` (ascending coefficients) by Aberth–Ehrlich
/// iteration started on a circle enclosing the roots, then Newton polishing.
pub fn complex_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Err(Error::Precondition(
            "root finding needs degree at least 1".into(),
        ));
    }
    if deg > MAX_DEGREE {
        return Err(Error::Precondition(format!(
            "degree {deg} exceeds {MAX_DEGREE}"
        )));
    }
    let lead = coeffs[deg];
    if lead.norm() == 0.0 {
        return Err(Error::Precondition("leading coefficient is zero".into()));
    }
    let monic: Vec<Complex64> = coeffs.iter().map(|&c| c / lead).collect();

    // Fujiwara: every root has |z| <= 2 max |c_k|^(1/(deg-k)).
    let radius = (0..deg)
        .map(|k| monic[k].norm().powf(1.0 / (deg - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / deg as f64 + 0.4))
        .collect();

    for _ in 0..MAX_ITERS {
        let mut max_step = 0.0f64;
        for k in 0..deg {
            let (v, d) = horner_with_deriv(&monic, z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let repulsion: Complex64 = (0..deg)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    for root in z.iter_mut() {
        for _ in 0..3 {
            let (v, d) = horner_with_deriv(&monic, *root);
            let step = v / d;
            if !step.is_finite() || step.norm() == 0.0 {
                break;
            }
            *root -= step;
        }
    }
    if !z.iter().all(|&r| residual_ok(coeffs, r)) {
        return Err(Error::NoConvergence(MAX_ITERS));
    }
    Ok(z)
}

fn degree(f: &[Complex64]) -> usize {
    f.iter().rposition(|c| c.norm() != 0.0).unwrap_or(0)
}

/// `max_i |(f_i(z) / g_i)^t - 1|`.
pub fn membership_residual(
    polys: &[Vec<Complex64>],
    reps: &[Complex64],
    t: u64,
    z: Complex64,
) -> f64 {
    polys
        .iter()
        .zip(reps)
        .map(|(f, &g)| ((horner(f, z) / g).powu(t as u32) - 1.0).norm())
        .fold(0.0, f64::max)
}

/// Approximate `M`, sorted by real then imaginary part.
///
/// The smallest-degree polynomial anchors the search: for each `t`-th root
/// of unity `ζ`, the roots of `f(x) - g ζ` are the candidates, and each is
/// kept when every `(f_i(z)/g_i)^t` is within [`ACCEPT_TOL`] of 1.
pub fn enumerate_m_complex(
    polys: &[Vec<Complex64>],
    t: u64,
    reps: &[Complex64],
) -> Result<Vec<Complex64>> {
    if polys.len() < 2 {
        return Err(Error::InvalidSystem(format!(
            "need at least two polynomials, got {}",
            polys.len()
        )));
    }
    if polys.len() != reps.len() {
        return Err(Error::Precondition(
            "one representative per polynomial".into(),
        ));
    }
    if t == 0 {
        return Err(Error::Precondition("t must be positive".into()));
    }
    if reps.iter().any(|g| g.norm() == 0.0) {
        return Err(Error::ZeroRepresentative);
    }
    let anchor = (0..polys.len())
        .filter(|&i| degree(&polys[i]) >= 1)
        .min_by_key(|&i| degree(&polys[i]))
        .ok_or_else(|| Error::InvalidSystem("all polynomials are constant".into()))?;
    let f = &polys[anchor][..=degree(&polys[anchor])];
    if f.len() as u64 - 1 > MAX_DEGREE as u64 / t.max(1) {
        return Err(Error::Precondition(format!(
            "m_1 t = {} exceeds {MAX_DEGREE}",
            (f.len() as u64 - 1) * t
        )));
    }

    let mut found: Vec<Complex64> = Vec::new();
    for j in 0..t {
        let zeta = Complex64::from_polar(1.0, TAU * j as f64 / t as f64);
        let mut shifted = f.to_vec();
        shifted[0] -= reps[anchor] * zeta;
        for z in complex_roots(&shifted)? {
            if membership_residual(polys, reps, t, z) <= ACCEPT_TOL
                && found.iter().all(|w| (w - z).norm() > DEDUP_TOL)
            {
                found.push(z);
            }
        }
    }
    found.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(found)
}

/// Numerical admissibility: every `f_i(0) ≠ 0` and each `f_i` has a root
/// farther than `tol` from every root of the other polynomials.
pub fn admissible_complex(polys: &[Vec<Complex64>], tol: f64) -> Result<bool> {
    let roots = polys
        .iter()
        .map(|f| complex_roots(&f[..=degree(f)]))
        .collect::<Result<Vec<_>>>()?;
    let nonzero = polys
        .iter()
        .all(|f| f.first().is_some_and(|c| c.norm() > tol));
    let private = (0..polys.len()).all(|i| {
        roots[i].iter().any(|&z| {
            roots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .all(|(_, rj)| rj.iter().all(|&w| (z - w).norm() > tol))
        })
    });
    Ok(nonzero && private)
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem3Report {
    pub t: u64,
    pub m: Vec<u64>,
    pub status: Status,
    pub skip_reason: Option<String>,
    pub size: usize,
    /// `(re, im)` pairs.
    pub elements: Vec<(f64, f64)>,
    /// `|M|^(2n) <= (4(n+1)𝓜_n)^(2n) (∏m)^2 t^(n+1)`.
    pub bound: Option<IntComparison>,
    pub max_residual: f64,
    /// For two linear polynomials `M` lies on two circles, so `|M| <= 2`.
    pub circle_ok: Option<bool>,
}

/// Applies only the lower hypothesis `t > C_1`; there is no characteristic
/// and so no upper window.
pub fn verify_theorem3_instance(
    polys: &[Vec<Complex64>],
    t: u64,
    reps: &[Complex64],
) -> Result<Theorem3Report> {
    let mut m: Vec<u64> = polys.iter().map(|f| degree(f) as u64).collect();
    m.sort_unstable();
    if m.first() == Some(&0) {
        return Err(Error::InvalidSystem("constant polynomial".into()));
    }
    let constants = Remark1Constants::new(&m);
    let lower = constants.lower_window(t);
    let mut report = Theorem3Report {
        t,
        m: m.clone(),
        status: Status::Skipped,
        skip_reason: None,
        size: 0,
        elements: Vec::new(),
        bound: None,
        max_residual: 0.0,
        circle_ok: None,
    };
    if !lower.holds {
        report.skip_reason = Some(format!("window: t = {t} <= C_1 = {}", constants.c1));
        return Ok(report);
    }
    let found = enumerate_m_complex(polys, t, reps)?;
    let bound = constants.bound(t, found.len() as u64);
    let circle_ok = (m.len() == 2 && m.iter().all(|&d| d == 1)).then_some(found.len() <= 2);
    report.max_residual = found
        .iter()
        .map(|&z| membership_residual(polys, reps, t, z))
        .fold(0.0, f64::max);
    report.size = found.len();
    report.elements = found.iter().map(|z| (z.re, z.im)).collect();
    report.status = if bound.holds && circle_ok != Some(false) {
        Status::Passed
    } else {
        Status::Failed
    };
    report.bound = Some(bound);
    report.circle_ok = circle_ok;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(coeffs: &[f64]) -> Vec<Complex64> {
        coeffs.iter().map(|&x| c(x, 0.0)).collect()
    }

    fn contains(roots: &[Complex64], z: Complex64, tol: f64) -> bool {
        roots.iter().any(|r| (r - z).norm() < tol)
    }

    #[test]
    fn root_examples() {
        let r = complex_roots(&real(&[1.0, 0.0, 1.0])).unwrap();
        assert!(contains(&r, c(0.0, 1.0), 1e-8) && contains(&r, c(0.0, -1.0), 1e-8));
        let r = complex_roots(&real(&[-1.0, 0.0, 0.0, 0.0, 1.0])).unwrap();
        for z in [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)] {
            assert!(contains(&r, z, 1e-8));
        }
        // (x-1)^8 - 1
        let binom = [1.0, 8.0, 28.0, 56.0, 70.0, 56.0, 28.0, 8.0, 1.0];
        let mut coeffs: Vec<f64> = binom
            .iter()
            .enumerate()
            .map(|(k, &b)| if (8 - k) % 2 == 0 { b } else { -b })
            .collect();
        coeffs[0] -= 1.0;
        let r = complex_roots(&real(&coeffs)).unwrap();
        for j in 0..8 {
            let z = c(1.0, 0.0) + Complex64::from_polar(1.0, TAU * j as f64 / 8.0);
            assert!(contains(&r, z, 1e-6), "missing 1 + zeta^{j}");
        }
    }

    #[test]
    fn root_preconditions() {
        assert!(complex_roots(&real(&[1.0])).is_err());
        assert!(complex_roots(&real(&[1.0, 0.0])).is_err());
        assert!(complex_roots(&vec![c(1.0, 0.0); 258]).is_err());
    }

    #[test]
    fn high_degree_roots_of_unity() {
        let mut coeffs = vec![c(0.0, 0.0); 257];
        coeffs[0] = c(-1.0, 0.0);
        coeffs[256] = c(1.0, 0.0);
        let r = complex_roots(&coeffs).unwrap();
        assert_eq!(r.len(), 256);
        assert!(r.iter().all(|z| (z.norm() - 1.0).abs() < 1e-9));
    }

    #[test]
    fn enumeration_examples() {
        let one = [c(1.0, 0.0), c(1.0, 0.0)];
        let far = enumerate_m_complex(&[real(&[-1.0, 1.0]), real(&[-4.0, 1.0])], 12, &one).unwrap();
        assert!(far.is_empty());
        let dup = enumerate_m_complex(&[real(&[0.0, 1.0]), real(&[0.0, 1.0])], 4, &one).unwrap();
        assert_eq!(dup.len(), 4);
        let close =
            enumerate_m_complex(&[real(&[-3.0, 1.0]), real(&[-3.5, 1.0])], 12, &one).unwrap();
        assert!(close.len() <= 2);
        for z in &close {
            assert!(((z - 3.0).norm() - 1.0).abs() < 1e-6 && ((z - 3.5).norm() - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn planted_pair_is_found() {
        // a2 = a1 + ζ_1 - ζ_3 puts a1 + ζ_1 in M.
        let t = 20;
        let z1 = Complex64::from_polar(1.0, TAU / t as f64);
        let z3 = Complex64::from_polar(1.0, 3.0 * TAU / t as f64);
        let a1 = c(0.7, -0.2);
        let a2 = a1 + z1 - z3;
        let polys = vec![vec![-a1, c(1.0, 0.0)], vec![-a2, c(1.0, 0.0)]];
        let one = [c(1.0, 0.0), c(1.0, 0.0)];
        let found = enumerate_m_complex(&polys, t, &one).unwrap();
        assert!(contains(&found, a1 + z1, 1e-7));
        let rep = verify_theorem3_instance(&polys, t, &one).unwrap();
        assert_eq!(rep.status, Status::Passed);
        assert_eq!(rep.circle_ok, Some(true));
        assert!(rep.max_residual <= ACCEPT_TOL);
    }

    #[test]
    fn theorem3_skip_and_empty() {
        let one = [c(1.0, 0.0), c(1.0, 0.0)];
        let polys = vec![real(&[-1.0, 1.0]), real(&[-4.0, 1.0])];
        assert_eq!(
            verify_theorem3_instance(&polys, 8, &one).unwrap().status,
            Status::Skipped
        );
        let rep = verify_theorem3_instance(&polys, 20, &one).unwrap();
        assert_eq!((rep.status, rep.size), (Status::Passed, 0));
    }

    #[test]
    fn numeric_admissibility() {
        assert!(admissible_complex(&[real(&[-1.0, 1.0]), real(&[-2.0, 1.0])], 1e-6).unwrap());
        assert!(!admissible_complex(&[real(&[0.0, 1.0]), real(&[-2.0, 1.0])], 1e-6).unwrap());
        assert!(!admissible_complex(&[real(&[-1.0, 1.0]), real(&[2.0, -3.0, 1.0])], 1e-6).unwrap());
    }
}
