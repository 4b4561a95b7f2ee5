//! Exact evaluation of the closed-form constants, hypothesis windows and
//! bounds. Every inequality with a fractional exponent is raised to an
//! integer power first, so each boolean here is a big-integer comparison.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

/// `floor(x^(1/k))` by binary search; `r^k <= x < (r+1)^k`.
pub fn integer_root(x: &BigUint, k: u32) -> BigUint {
    assert!(k >= 1, "root index must be positive");
    if x.is_zero() || k == 1 {
        return x.clone();
    }
    // 2^ceil(bits/k) already exceeds the root.
    let mut lo = BigUint::zero();
    let mut hi = BigUint::one() << x.bits().div_ceil(k as u64);
    while lo < hi {
        let mid: BigUint = (&lo + &hi + 1u32) >> 1;
        if mid.pow(k) <= *x {
            lo = mid;
        } else {
            hi = mid - 1u32;
        }
    }
    lo
}

pub fn integer_root_u64(x: u64, k: u32) -> u64 {
    integer_root(&BigUint::from(x), k)
        .to_u64()
        .expect("root fits")
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// An integer inequality `lhs < rhs` or `lhs <= rhs`, kept with both sides so
/// boundary cases can be reported verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntComparison {
    #[serde(serialize_with = "ser_big")]
    pub lhs: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub rhs: BigUint,
    pub strict: bool,
    pub holds: bool,
}

fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl IntComparison {
    pub fn lt(lhs: BigUint, rhs: BigUint) -> Self {
        let holds = lhs < rhs;
        Self {
            lhs,
            rhs,
            strict: true,
            holds,
        }
    }

    pub fn le(lhs: BigUint, rhs: BigUint) -> Self {
        let holds = lhs <= rhs;
        Self {
            lhs,
            rhs,
            strict: false,
            holds,
        }
    }

    pub fn is_tie(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// The constants `C_1, C_2, C_3` for a degree tuple.
///
/// `C_2` and `C_3` carry fractional powers, so they are stored through the
/// integer forms of the two inequalities they appear in:
///
/// * window: `t^(2n+1) · (n+1)^(2n) · (∏m)^2 < p^(2n)`
/// * bound: `|M|^(2n) <= (4(n+1)𝓜_n)^(2n) · (∏m)^2 · t^(n+1)`
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Remark1Constants {
    pub n: u32,
    pub m: Vec<u64>,
    #[serde(serialize_with = "ser_big")]
    pub c1: BigUint,
    /// `(n+1)^(2n) · (∏m)^2`, the factor multiplying `t^(2n+1)` in the window.
    #[serde(serialize_with = "ser_big")]
    pub c2_avatar: BigUint,
    /// `(4(n+1)𝓜_n)^(2n) · (∏m)^2`, the factor multiplying `t^(n+1)`.
    #[serde(serialize_with = "ser_big")]
    pub c3_avatar: BigUint,
    /// Exponent of `|M|` in the bound test (`2n`).
    pub size_exp: u32,
    /// Exponent of `t` in the bound test (`n+1`).
    pub t_exp: u32,
}

impl Remark1Constants {
    /// `m` is sorted internally; `m_n` is its maximum.
    pub fn new(m: &[u64]) -> Self {
        assert!(!m.is_empty(), "need at least one degree");
        let mut m = m.to_vec();
        m.sort_unstable();
        let n = m.len() as u32;
        let m_max = *m.last().unwrap();
        let prod: BigUint = m.iter().map(|&x| big(x)).product();
        let sum: u64 = m.iter().sum();
        let c1 = BigUint::from(4u32).pow(n) * big(m_max).pow(4 * n);
        let c2_avatar = big(n as u64 + 1).pow(2 * n) * prod.pow(2);
        let c3_avatar = (big(4 * (n as u64 + 1)) * big(sum)).pow(2 * n) * prod.pow(2);
        Self {
            n,
            m,
            c1,
            c2_avatar,
            c3_avatar,
            size_exp: 2 * n,
            t_exp: n + 1,
        }
    }

    /// `C_1 < t`.
    pub fn lower_window(&self, t: u64) -> IntComparison {
        IntComparison::lt(self.c1.clone(), big(t))
    }

    /// `t < C_2 · p^(1 - 1/(2n+1))`.
    pub fn upper_window(&self, p: u64, t: u64) -> IntComparison {
        let n = self.n;
        IntComparison::lt(big(t).pow(2 * n + 1) * &self.c2_avatar, big(p).pow(2 * n))
    }

    /// `|M| <= C_3 · t^(1/2 + 1/(2n))`.
    pub fn bound(&self, t: u64, size: u64) -> IntComparison {
        IntComparison::le(
            big(size).pow(self.size_exp),
            &self.c3_avatar * big(t).pow(self.t_exp),
        )
    }

    /// `C_3` as a float, for display only.
    pub fn c3_approx(&self) -> f64 {
        let sum: u64 = self.m.iter().sum();
        let prod: f64 = self.m.iter().map(|&x| x as f64).product();
        4.0 * (self.n as f64 + 1.0) * sum as f64 * prod.powf(1.0 / self.n as f64)
    }

    /// `|M| / (C_3 t^(1/2+1/(2n)))`; advisory display value.
    pub fn bound_ratio(&self, t: u64, size: u64) -> f64 {
        let exp = 0.5 + 0.5 / self.n as f64;
        size as f64 / (self.c3_approx() * (t as f64).powf(exp))
    }
}

/// Everything the main theorem says about one `(p, t, m, |M|)` point.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub constants: Remark1Constants,
    pub lower_window: IntComparison,
    pub upper_window: IntComparison,
    pub window_ok: bool,
    pub bound: IntComparison,
    pub bound_holds: bool,
    /// `|M| / (C_3 t^(1/2+1/(2n)))`; display only.
    pub margin: f64,
}

pub fn theorem2_report(m: &[u64], p: u64, t: u64, size: u64) -> BoundReport {
    let constants = Remark1Constants::new(m);
    let lower_window = constants.lower_window(t);
    let upper_window = constants.upper_window(p, t);
    let bound = constants.bound(t, size);
    BoundReport {
        window_ok: lower_window.holds && upper_window.holds,
        bound_holds: bound.holds,
        margin: constants.bound_ratio(t, size),
        constants,
        lower_window,
        upper_window,
        bound,
    }
}

/// The linear-shift special case: `|Γ ∩ (Γ+μ_1) ∩ … ∩ (Γ+μ_{k})|` with
/// `k + 1 = sets` uses the constants of `sets` linear polynomials.
pub fn corollary1_report(sets: usize, p: u64, t: u64, size: u64) -> BoundReport {
    theorem2_report(&vec![1; sets], p, t, size)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GvCheck {
    pub hypothesis_ok: bool,
    pub bound_ok: bool,
}

/// Single-shift estimate `|Γ ∩ (Γ+μ)| <= 4|Γ|^(2/3)` and its hypothesis
/// `|Γ| < (p-1)/((p-1)^(1/4) + 1)`.
pub fn gv_check(t: u64, size: u64, p: u64) -> GvCheck {
    let q = p.saturating_sub(1);
    // t((q)^(1/4) + 1) < q  <=>  t < q  and  t^4 q < (q - t)^4
    let hypothesis_ok = t < q && big(t).pow(4) * big(q) < big(q - t).pow(4);
    let bound_ok = big(size).pow(3) <= BigUint::from(64u32) * big(t).pow(2);
    GvCheck {
        hypothesis_ok,
        bound_ok,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Theorem1Check {
    /// `32 n (n+1)^(20n) <= t`, reading the logarithm in base 2.
    pub size_hypothesis: bool,
    /// `4 n t (t^(1/(2n+1)) + 1) <= p`.
    pub field_hypothesis: bool,
    /// `size <= 4(n+1)(r+2)^(n+1)` with `r = floor(t^(1/(2n+1)))`.
    pub bound_ok: bool,
    /// True when the conservative and the sharp forms agree, i.e. the result
    /// does not depend on the fractional part of the root.
    pub definitive: bool,
}

/// `n` shifts, `size = |Γ ∩ (Γ+μ_1) ∩ … ∩ (Γ+μ_n)|`.
pub fn theorem1_check(t: u64, n: u32, size: u64, p: u64) -> Theorem1Check {
    let nn = n as u64;
    let size_hypothesis = BigUint::from(32u32) * big(nn) * big(nn + 1).pow(20 * n) <= big(t);
    let a = 4 * nn * t;
    let field_hypothesis = p >= a && big(a).pow(2 * n + 1) * big(t) <= big(p - a).pow(2 * n + 1);
    let r = integer_root_u64(t, 2 * n + 1);
    let coeff = big(4 * (nn + 1));
    let upper = &coeff * big(r + 2).pow(n + 1);
    let lower = &coeff * big(r + 1).pow(n + 1);
    let s = big(size);
    let bound_ok = s <= upper;
    let definitive = s <= lower || s > upper;
    Theorem1Check {
        size_hypothesis,
        field_hypothesis,
        bound_ok,
        definitive,
    }
}
