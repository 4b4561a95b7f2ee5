//! Construction and verification of the auxiliary polynomial
//! `Ψ(x) = Σ λ_{a,b} x^a f_1^{b_1 t}(x) ⋯ f_n^{b_n t}(x)`.

mod certificate;
mod params;
mod recurrence;
mod system;

pub use certificate::{
    assemble_psi, construct_certificate, verify_certificate, PsiCertificate, VerificationOutcome,
};
pub use params::{compute_params, StepanovParams};
pub use recurrence::{pk_recurrence, pk_sequence};
pub use system::{build_linear_system, solve_nullspace, LinearSystem};

use serde::Serialize;

use crate::ffield::FieldCtx;
use crate::poly::DensePoly;
use crate::{Error, Result};

/// The map `x ↦ (f_1(x), …, f_n(x))`, stored sorted by degree
/// (`m_1 <= … <= m_n`, stable). Reordering does not change the set `M`
/// as long as cosets are permuted alongside, see [`PolySystem::normalize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySystem {
    ctx: FieldCtx,
    polys: Vec<DensePoly>,
    degrees: Vec<u64>,
    partial_sums: Vec<u64>,
    original_index: Vec<usize>,
}

impl PolySystem {
    pub fn new(ctx: FieldCtx, polys: Vec<DensePoly>) -> Result<Self> {
        if polys.len() < 2 {
            return Err(Error::InvalidSystem(format!(
                "need at least two polynomials, got {}",
                polys.len()
            )));
        }
        for (i, f) in polys.iter().enumerate() {
            if *f.ctx() != ctx {
                return Err(Error::ModulusMismatch(ctx.p(), f.ctx().p()));
            }
            if f.degree().unwrap_or(0) == 0 {
                return Err(Error::InvalidSystem(format!("f_{} is constant", i + 1)));
            }
        }
        let mut original_index: Vec<usize> = (0..polys.len()).collect();
        original_index.sort_by_key(|&i| polys[i].degree());
        let polys: Vec<DensePoly> = original_index.iter().map(|&i| polys[i].clone()).collect();
        let degrees: Vec<u64> = polys.iter().map(|f| f.degree().unwrap() as u64).collect();
        let partial_sums = degrees
            .iter()
            .scan(0, |acc, &m| {
                *acc += m;
                Some(*acc)
            })
            .collect();
        Ok(Self {
            ctx,
            polys,
            degrees,
            partial_sums,
            original_index,
        })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.polys.len()
    }

    /// Polynomials in normalized (degree-ascending) order.
    pub fn polys(&self) -> &[DensePoly] {
        &self.polys
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// `𝓜_k = m_1 + … + m_k` for `k = 1..=n` (index `k - 1`).
    pub fn partial_sums(&self) -> &[u64] {
        &self.partial_sums
    }

    /// `𝓜_n`.
    pub fn degree_sum(&self) -> u64 {
        *self.partial_sums.last().unwrap()
    }

    /// `original_index()[i]` is the caller's position of normalized poly `i`.
    pub fn original_index(&self) -> &[usize] {
        &self.original_index
    }

    /// Reorders per-polynomial data given in caller order (e.g. coset
    /// representatives) into normalized order.
    pub fn normalize<T: Clone>(&self, items: &[T]) -> Vec<T> {
        assert_eq!(items.len(), self.n());
        self.original_index
            .iter()
            .map(|&i| items[i].clone())
            .collect()
    }

    /// Polynomials in the caller's original order.
    pub fn polys_original(&self) -> Vec<DensePoly> {
        let mut out = vec![DensePoly::zero(self.ctx); self.n()];
        for (pos, &orig) in self.original_index.iter().enumerate() {
            out[orig] = self.polys[pos].clone();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrivateRoot {
    pub has_private_root: bool,
    /// The factor of `f_i` left after peeling every common factor with the
    /// other polynomials; its roots are roots of `f_i` only.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    /// Indexed in caller order.
    pub per_index: Vec<PrivateRoot>,
    pub nonzero_at_zero: Vec<bool>,
}

impl AdmissibilityReport {
    /// First failing condition, phrased for humans.
    pub fn reason(&self) -> Option<String> {
        if let Some(i) = self.nonzero_at_zero.iter().position(|ok| !ok) {
            return Some(format!("f_{}(0)=0", i + 1));
        }
        self.per_index
            .iter()
            .position(|r| !r.has_private_root)
            .map(|i| {
                format!(
                    "f_{} has no root outside the other polynomials' roots",
                    i + 1
                )
            })
    }
}

/// Admissibility: each `f_i` is nonzero at 0 and owns a root (in the
/// algebraic closure) that no other `f_j` shares.
///
/// Works on the caller's polynomials directly, so it accepts any `n >= 1`.
pub fn check_admissible_polys(polys: &[DensePoly]) -> AdmissibilityReport {
    let per_index: Vec<PrivateRoot> = (0..polys.len())
        .map(|i| {
            let ctx = *polys[i].ctx();
            let others = polys
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(DensePoly::one(ctx), |acc, (_, f)| &acc * f);
            let mut h = polys[i].monic();
            loop {
                let d = h.gcd(&others).expect("h is nonzero");
                if d.degree() == Some(0) {
                    break;
                }
                h = h.divrem(&d).expect("nonzero divisor").0;
            }
            let has = h.degree().unwrap_or(0) >= 1;
            PrivateRoot {
                has_private_root: has,
                witness: has.then(|| h.to_text()),
            }
        })
        .collect();
    let nonzero_at_zero: Vec<bool> = polys.iter().map(|f| f.coeff(0) != 0).collect();
    AdmissibilityReport {
        admissible: per_index.iter().all(|r| r.has_private_root)
            && nonzero_at_zero.iter().all(|&b| b),
        per_index,
        nonzero_at_zero,
    }
}

pub fn check_admissible(sys: &PolySystem) -> AdmissibilityReport {
    check_admissible_polys(&sys.polys_original())
}
