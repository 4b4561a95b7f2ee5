//! Prime-field arithmetic on word-size residues, primitive roots, and the
//! subgroup/coset structure of `F_p^*`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest subgroup order whose elements are listed explicitly.
pub const MATERIALIZE_LIMIT: u64 = 1_000_000;

const MAX_MODULUS: u64 = 1 << 62;

/// The prime field `F_p`. Elements are plain `u64` values in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldCtx {
    p: u64,
}

impl FieldCtx {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..MAX_MODULUS).contains(&p) {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.p
    }

    /// Maps a signed integer to its canonical residue.
    #[inline]
    pub fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    pub fn pow(&self, base: u64, exp: u64) -> u64 {
        pow_mod(base, exp, self.p)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }

    /// Precomputes a multiplier for repeated products by the same constant.
    #[inline]
    pub fn shoup(&self, c: u64) -> ShoupMul {
        ShoupMul::new(c, self.p)
    }
}

/// Multiplication by a fixed residue `c` using a precomputed quotient
/// `floor(c * 2^64 / p)`. Valid for `p < 2^63`.
#[derive(Debug, Clone, Copy)]
pub struct ShoupMul {
    c: u64,
    w: u64,
    p: u64,
}

impl ShoupMul {
    pub fn new(c: u64, p: u64) -> Self {
        let w = (((c as u128) << 64) / p as u128) as u64;
        Self { c, w, p }
    }

    #[inline]
    pub fn mul(&self, x: u64) -> u64 {
        let q = ((self.w as u128 * x as u128) >> 64) as u64;
        let r = self.c.wrapping_mul(x).wrapping_sub(q.wrapping_mul(self.p));
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    result
}

/// Deterministic Miller–Rabin; the first twelve prime bases are exact for all
/// 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &BASES {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

// Brent's cycle detection with batched gcds.
fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let mut g = 1u64;
        let (mut x, mut ys) = (y, y);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..std::cmp::min(128, r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            out.push(m);
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Multiplicative order of `a` in `F_p^*`.
pub fn element_order(ctx: &FieldCtx, a: u64) -> Option<u64> {
    if a.is_multiple_of(ctx.p()) {
        return None;
    }
    let mut order = ctx.p() - 1;
    for q in prime_factors(order) {
        while order.is_multiple_of(q) && ctx.pow(a, order / q) == 1 {
            order /= q;
        }
    }
    Some(order)
}

/// The smallest generator of `F_p^*` in `[2, p-1]` (1 for `p = 2`).
pub fn primitive_root(ctx: &FieldCtx) -> u64 {
    let p = ctx.p();
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| ctx.pow(g, (p - 1) / q) != 1))
        .expect("a prime field always has a primitive root")
}

/// The unique subgroup `Γ ⊆ F_p^*` of order `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupSpec {
    ctx: FieldCtx,
    t: u64,
    generator: u64,
    elements: Option<Vec<u64>>,
}

impl SubgroupSpec {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn order(&self) -> u64 {
        self.t
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// Sorted member list, present when `t <= MATERIALIZE_LIMIT`.
    pub fn elements(&self) -> Option<&[u64]> {
        self.elements.as_deref()
    }

    pub fn contains(&self, x: u64) -> bool {
        let x = self.ctx.reduce(x);
        match &self.elements {
            Some(els) => els.binary_search(&x).is_ok(),
            None => x != 0 && self.ctx.pow(x, self.t) == 1,
        }
    }

    pub fn coset(&self, g: u64) -> Result<CosetSpec> {
        CosetSpec::new(self.clone(), g)
    }
}

pub fn subgroup_of_order(ctx: &FieldCtx, t: u64) -> Result<SubgroupSpec> {
    let order = ctx.p() - 1;
    if t == 0 || !order.is_multiple_of(t) {
        return Err(Error::NotADivisor { t, order });
    }
    let gamma = primitive_root(ctx);
    let h = ctx.pow(gamma, order / t);
    let elements = (t <= MATERIALIZE_LIMIT).then(|| {
        let mut els = Vec::with_capacity(t as usize);
        let mut x = 1u64;
        for _ in 0..t {
            els.push(x);
            x = ctx.mul(x, h);
        }
        els.sort_unstable();
        els
    });
    Ok(SubgroupSpec {
        ctx: *ctx,
        t,
        generator: h,
        elements,
    })
}

/// The coset `g·Γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetSpec {
    subgroup: SubgroupSpec,
    g: u64,
    g_inv: u64,
}

impl CosetSpec {
    pub fn new(subgroup: SubgroupSpec, g: u64) -> Result<Self> {
        let g = subgroup.ctx.reduce(g);
        let g_inv = subgroup.ctx.inv(g).ok_or(Error::ZeroRepresentative)?;
        Ok(Self { subgroup, g, g_inv })
    }

    pub fn subgroup(&self) -> &SubgroupSpec {
        &self.subgroup
    }

    pub fn representative(&self) -> u64 {
        self.g
    }

    pub fn representative_inv(&self) -> u64 {
        self.g_inv
    }

    /// `g^t`, the common value of `y^t` over the coset.
    pub fn tth_power(&self) -> u64 {
        self.subgroup.ctx.pow(self.g, self.subgroup.t)
    }
}

pub fn in_coset(x: u64, c: &CosetSpec) -> bool {
    let ctx = &c.subgroup.ctx;
    let x = ctx.reduce(x);
    x != 0 && ctx.pow(ctx.mul(x, c.g_inv), c.subgroup.t) == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn primality_small() {
        assert!(is_prime(31));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(is_prime(1021));
        for n in 0..20_000u64 {
            assert_eq!(is_prime(n), trial_division(n), "n = {n}");
        }
    }

    #[test]
    fn primality_large() {
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(18_446_744_073_709_551_557 - 2));
        // Strong pseudoprime to the bases 2 through 23.
        assert!(!is_prime(3_825_123_056_546_413_051));
        assert!(!is_prime(4_294_967_297)); // F5 = 641 * 6700417
    }

    #[test]
    fn factoring() {
        assert_eq!(prime_factors(1020), vec![2, 3, 5, 17]);
        assert_eq!(prime_factors(4_294_967_297), vec![641, 6_700_417]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        let n = 1_000_000_007u64 * 998_244_353;
        assert_eq!(prime_factors(n), vec![998_244_353, 1_000_000_007]);
    }

    #[test]
    fn primitive_roots() {
        let f = |p| primitive_root(&FieldCtx::new(p).unwrap());
        assert_eq!(f(31), 3);
        assert_eq!(f(5), 2);
        assert_eq!(f(3), 2);
        assert_eq!(f(7), 3);
        assert_eq!(f(1021), 10);
        assert_eq!(f(31), f(31));
    }

    #[test]
    fn subgroups() {
        let ctx = FieldCtx::new(31).unwrap();
        let g = subgroup_of_order(&ctx, 5).unwrap();
        assert_eq!(g.generator(), 16);
        assert_eq!(g.elements().unwrap(), &[1, 2, 4, 8, 16]);
        let g1 = subgroup_of_order(&ctx, 1).unwrap();
        assert_eq!(g1.generator(), 1);
        assert_eq!(g1.elements().unwrap(), &[1]);
        assert_eq!(
            subgroup_of_order(&ctx, 7),
            Err(Error::NotADivisor { t: 7, order: 30 })
        );
    }

    #[test]
    fn generator_has_exact_order() {
        for p in [31u64, 1021, 7919, 65537] {
            let ctx = FieldCtx::new(p).unwrap();
            let n = p - 1;
            for t in (1..=n).filter(|t| n % t == 0) {
                let sg = subgroup_of_order(&ctx, t).unwrap();
                assert_eq!(element_order(&ctx, sg.generator()), Some(t));
                assert_eq!(sg.elements().unwrap().len() as u64, t);
            }
        }
    }

    #[test]
    fn subgroup_closed_under_mul_and_inv() {
        let ctx = FieldCtx::new(7919).unwrap();
        for t in [2u64, 37, 107, 214, 3959] {
            let sg = subgroup_of_order(&ctx, t).unwrap();
            let els = sg.elements().unwrap();
            for &x in els {
                assert!(sg.contains(ctx.inv(x).unwrap()));
            }
            for &x in els.iter().take(40) {
                for &y in els {
                    assert!(sg.contains(ctx.mul(x, y)));
                }
            }
        }
    }

    #[test]
    fn coset_membership() {
        let ctx = FieldCtx::new(31).unwrap();
        let sg = subgroup_of_order(&ctx, 5).unwrap();
        let c = sg.coset(1).unwrap();
        assert!(in_coset(8, &c));
        assert!(!in_coset(0, &c));
        assert!(!in_coset(3, &c));
        assert_eq!(sg.coset(0), Err(Error::ZeroRepresentative));
    }

    #[test]
    fn coset_predicate_matches_explicit_set() {
        for p in [31u64, 101, 1009] {
            let ctx = FieldCtx::new(p).unwrap();
            for t in (1..p).filter(|t| (p - 1) % t == 0) {
                let sg = subgroup_of_order(&ctx, t).unwrap();
                for g in [1u64, 2, 3, p - 1] {
                    let c = sg.coset(g).unwrap();
                    let set: Vec<u64> = sg
                        .elements()
                        .unwrap()
                        .iter()
                        .map(|&y| ctx.mul(g, y))
                        .collect();
                    for x in 0..p {
                        assert_eq!(in_coset(x, &c), set.contains(&x), "p={p} t={t} g={g} x={x}");
                    }
                }
            }
        }
    }

    #[test]
    fn shoup_matches_plain() {
        let ctx = FieldCtx::new(4_611_686_018_427_387_847).unwrap();
        let c = 123_456_789_012_345_678u64;
        let s = ctx.shoup(c);
        for x in [0u64, 1, 2, ctx.p() - 1, 987_654_321_987_654_321 % ctx.p()] {
            assert_eq!(s.mul(x), ctx.mul(c, x));
        }
    }

    #[test]
    fn modulus_validation() {
        assert_eq!(FieldCtx::new(1), Err(Error::ModulusOutOfRange(1)));
        assert_eq!(
            FieldCtx::new(1 << 62),
            Err(Error::ModulusOutOfRange(1 << 62))
        );
        assert_eq!(FieldCtx::new(33), Err(Error::NotPrime(33)));
    }
}
