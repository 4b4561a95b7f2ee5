//! Dense univariate polynomials over `F_p`.
//!
//! Coefficients are stored in ascending degree with no trailing zeros, so the
//! zero polynomial is the empty vector. The binary operators (`&a * &b`, ...)
//! panic on a modulus mismatch; the `try_*` methods report it as an error.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::ffield::FieldCtx;
use crate::{Error, Result};

/// Below this operand length products use the schoolbook kernel.
const KARATSUBA_THRESHOLD: usize = 64;

#[derive(Clone, PartialEq, Eq)]
pub struct DensePoly {
    ctx: FieldCtx,
    coeffs: Vec<u64>,
}

impl fmt::Debug for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensePoly[p={}]({})", self.ctx.p(), self.to_text())
    }
}

impl DensePoly {
    /// Builds a polynomial from ascending coefficients, reducing each mod p.
    pub fn new(ctx: FieldCtx, coeffs: Vec<u64>) -> Self {
        let mut coeffs = coeffs;
        for c in coeffs.iter_mut() {
            *c = ctx.reduce(*c);
        }
        Self::from_reduced(ctx, coeffs)
    }

    fn from_reduced(ctx: FieldCtx, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { ctx, coeffs }
    }

    pub fn from_i64(ctx: FieldCtx, coeffs: &[i64]) -> Self {
        Self::from_reduced(ctx, coeffs.iter().map(|&c| ctx.from_i64(c)).collect())
    }

    pub fn zero(ctx: FieldCtx) -> Self {
        Self {
            ctx,
            coeffs: Vec::new(),
        }
    }

    pub fn one(ctx: FieldCtx) -> Self {
        Self::constant(ctx, 1)
    }

    pub fn constant(ctx: FieldCtx, c: u64) -> Self {
        Self::from_reduced(ctx, vec![ctx.reduce(c)])
    }

    pub fn x(ctx: FieldCtx) -> Self {
        Self::monomial(ctx, 1, 1)
    }

    /// `c * x^k`.
    pub fn monomial(ctx: FieldCtx, c: u64, k: usize) -> Self {
        let c = ctx.reduce(c);
        if c == 0 {
            return Self::zero(ctx);
        }
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self { ctx, coeffs }
    }

    /// The monic linear polynomial `x - r`.
    pub fn linear_root(ctx: FieldCtx, r: u64) -> Self {
        Self::from_reduced(ctx, vec![ctx.neg(ctx.reduce(r)), 1])
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero past the end).
    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ModulusMismatch(self.ctx.p(), other.ctx.p()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(Self::from_reduced(
            self.ctx,
            mul_slices(&self.ctx, &self.coeffs, &other.coeffs),
        ))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let ctx = self.ctx;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        let mut out = long.clone();
        for (o, &s) in out.iter_mut().zip(short.iter()) {
            *o = ctx.add(*o, s);
        }
        Self::from_reduced(ctx, out)
    }

    fn sub_unchecked(&self, other: &Self) -> Self {
        let ctx = self.ctx;
        let n = self.coeffs.len().max(other.coeffs.len());
        let out = (0..n)
            .map(|i| ctx.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Self::from_reduced(ctx, out)
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = self.ctx.reduce(c);
        if c == 0 {
            return Self::zero(self.ctx);
        }
        let m = self.ctx.shoup(c);
        Self {
            ctx: self.ctx,
            coeffs: self.coeffs.iter().map(|&a| m.mul(a)).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self {
            ctx: self.ctx,
            coeffs,
        }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut result = Self::one(self.ctx);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = &result * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn eval(&self, x: u64) -> u64 {
        let ctx = &self.ctx;
        let x = ctx.reduce(x);
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| ctx.add(ctx.mul(acc, x), c))
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_ctx(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        let ctx = self.ctx;
        let dl = divisor.coeffs.len();
        if self.coeffs.len() < dl {
            return Ok((Self::zero(ctx), self.clone()));
        }
        let lead_inv = ctx
            .inv(divisor.leading())
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dl + 1];
        for i in (0..quot.len()).rev() {
            let c = ctx.mul(rem[i + dl - 1], lead_inv);
            quot[i] = c;
            if c == 0 {
                continue;
            }
            let m = ctx.shoup(c);
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = ctx.sub(rem[i + j], m.mul(d));
            }
        }
        rem.truncate(dl - 1);
        Ok((Self::from_reduced(ctx, quot), Self::from_reduced(ctx, rem)))
    }

    /// `Some(q)` when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Self) -> Result<Option<Self>> {
        let (q, r) = self.divrem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn monic(&self) -> Self {
        match self.ctx.inv(self.leading()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn derivative(&self) -> Self {
        let ctx = self.ctx;
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, &c)| ctx.mul(ctx.reduce(j as u64), c))
            .collect();
        Self::from_reduced(ctx, out)
    }

    /// The k-th formal derivative, by iteration.
    pub fn nth_derivative(&self, k: usize) -> Self {
        let mut d = self.clone();
        for _ in 0..k {
            if d.is_zero() {
                break;
            }
            d = d.derivative();
        }
        d
    }

    /// Division by `x - c`: returns `(quotient, self(c))`.
    pub fn synthetic_div(&self, c: u64) -> (Self, u64) {
        let ctx = self.ctx;
        if self.is_zero() {
            return (self.clone(), 0);
        }
        let m = ctx.shoup(ctx.reduce(c));
        let n = self.coeffs.len();
        let mut quot = vec![0u64; n - 1];
        let mut acc = 0u64;
        for i in (0..n).rev() {
            acc = ctx.add(m.mul(acc), self.coeffs[i]);
            if i > 0 {
                quot[i - 1] = acc;
            }
        }
        (Self::from_reduced(ctx, quot), acc)
    }

    /// Largest `k` with `(x - x0)^k | self`, by repeated synthetic division.
    pub fn multiplicity_at(&self, x0: u64) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.synthetic_div(x0);
            if r != 0 {
                return Ok(k);
            }
            k += 1;
            cur = q;
        }
    }

    /// Comma-separated ascending coefficients; the zero polynomial is `"0"`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses the comma-separated form. Every coefficient must already be a
    /// residue in `[0, p)`.
    pub fn parse(ctx: FieldCtx, text: &str) -> Result<Self> {
        let err = |reason: String| Error::PolyParse {
            text: text.to_string(),
            reason,
        };
        if text.trim().is_empty() {
            return Err(err("empty coefficient list".into()));
        }
        let mut coeffs = Vec::new();
        for part in text.split(',') {
            let c: u64 = part
                .trim()
                .parse()
                .map_err(|e| err(format!("bad coefficient {part:?}: {e}")))?;
            if c >= ctx.p() {
                return Err(err(format!(
                    "coefficient {c} is not a residue mod {}",
                    ctx.p()
                )));
            }
            coeffs.push(c);
        }
        Ok(Self::from_reduced(ctx, coeffs))
    }
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{k}")?,
                _ => write!(f, "{c}x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &DensePoly {
    type Output = DensePoly;
    fn add(self, rhs: &DensePoly) -> DensePoly {
        self.try_add(rhs).expect("polynomial modulus mismatch")
    }
}

impl Sub for &DensePoly {
    type Output = DensePoly;
    fn sub(self, rhs: &DensePoly) -> DensePoly {
        self.try_sub(rhs).expect("polynomial modulus mismatch")
    }
}

impl Mul for &DensePoly {
    type Output = DensePoly;
    fn mul(self, rhs: &DensePoly) -> DensePoly {
        self.try_mul(rhs).expect("polynomial modulus mismatch")
    }
}

impl Neg for &DensePoly {
    type Output = DensePoly;
    fn neg(self) -> DensePoly {
        let ctx = self.ctx;
        DensePoly {
            ctx,
            coeffs: self.coeffs.iter().map(|&c| ctx.neg(c)).collect(),
        }
    }
}

fn schoolbook(ctx: &FieldCtx, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        let m = ctx.shoup(ai);
        for (o, &bj) in out[i..].iter_mut().zip(b) {
            *o = ctx.add(*o, m.mul(bj));
        }
    }
    out
}

fn add_into(ctx: &FieldCtx, dst: &mut [u64], src: &[u64]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = ctx.add(*d, s);
    }
}

fn sub_into(ctx: &FieldCtx, dst: &mut [u64], src: &[u64]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = ctx.sub(*d, s);
    }
}

fn add_slices(ctx: &FieldCtx, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    add_into(ctx, &mut out, short);
    out
}

/// Raw coefficient product: schoolbook below the threshold, Karatsuba above,
/// with unbalanced operands cut into blocks of the shorter length.
pub(crate) fn mul_slices(ctx: &FieldCtx, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if b.len() < KARATSUBA_THRESHOLD {
        return schoolbook(ctx, a, b);
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    if a.len() >= 2 * b.len() {
        for (i, chunk) in a.chunks(b.len()).enumerate() {
            let part = mul_slices(ctx, chunk, b);
            add_into(ctx, &mut out[i * b.len()..], &part);
        }
        return out;
    }
    // a.len() < 2 b.len(), so both high halves are nonempty.
    let h = a.len() / 2;
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let z0 = mul_slices(ctx, a0, b0);
    let z2 = mul_slices(ctx, a1, b1);
    let mut z1 = mul_slices(ctx, &add_slices(ctx, a0, a1), &add_slices(ctx, b0, b1));
    sub_into(ctx, &mut z1, &z0);
    sub_into(ctx, &mut z1, &z2);
    add_into(ctx, &mut out, &z0);
    add_into(ctx, &mut out[2 * h..], &z2);
    let end = out.len().min(h + z1.len());
    add_into(ctx, &mut out[h..end], &z1[..end - h]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> FieldCtx {
        FieldCtx::new(p).unwrap()
    }

    fn poly(p: u64, c: &[i64]) -> DensePoly {
        DensePoly::from_i64(f(p), c)
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(&poly(2, &[1, 1]) * &poly(2, &[1, 1]), poly(2, &[1, 0, 1]));
        assert!((&poly(7, &[-1, 1]) * &DensePoly::zero(f(7))).is_zero());
        assert_eq!(&poly(5, &[1, 2]) * &poly(5, &[4, 3]), poly(5, &[4, 1, 1]));
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let ctx = f(7919);
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (seed >> 33) % 7919
        };
        for (la, lb) in [
            (64, 64),
            (65, 64),
            (200, 131),
            (500, 70),
            (1000, 999),
            (127, 300),
        ] {
            let a: Vec<u64> = (0..la).map(|_| next()).collect();
            let b: Vec<u64> = (0..lb).map(|_| next()).collect();
            assert_eq!(
                mul_slices(&ctx, &a, &b),
                schoolbook(&ctx, &a, &b),
                "{la}x{lb}"
            );
        }
    }

    #[test]
    fn modulus_mismatch() {
        let a = poly(5, &[1, 1]);
        let b = poly(7, &[1, 1]);
        assert_eq!(a.try_mul(&b), Err(Error::ModulusMismatch(5, 7)));
        assert_eq!(a.divrem(&b).unwrap_err(), Error::ModulusMismatch(5, 7));
    }

    #[test]
    fn division_examples() {
        let (q, r) = poly(7, &[-1, 0, 1]).divrem(&poly(7, &[-1, 1])).unwrap();
        assert_eq!((q, r.is_zero()), (poly(7, &[1, 1]), true));
        let (q, r) = poly(7, &[0, 1]).divrem(&poly(7, &[0, 0, 1])).unwrap();
        assert_eq!((q.is_zero(), r), (true, poly(7, &[0, 1])));
        let (q, r) = poly(5, &[1, 2, 0, 1]).divrem(&poly(5, &[3, 1])).unwrap();
        assert_eq!((q, r), (poly(5, &[1, 2, 1]), poly(5, &[3])));
        assert_eq!(
            poly(5, &[1]).divrem(&DensePoly::zero(f(5))),
            Err(Error::DivisionByZeroPoly)
        );
    }

    #[test]
    fn gcd_examples() {
        let g = poly(7, &[-1, 0, 1]).gcd(&poly(7, &[-1, 1])).unwrap();
        assert_eq!(g, poly(7, &[6, 1]));
        assert_eq!(
            poly(7, &[0, 1]).gcd(&poly(7, &[1, 1])).unwrap(),
            poly(7, &[1])
        );
        let a = &(&poly(11, &[-1, 1]) * &poly(11, &[-1, 1])) * &poly(11, &[-2, 1]);
        let b = &poly(11, &[-1, 1]) * &poly(11, &[-3, 1]);
        assert_eq!(a.gcd(&b).unwrap(), poly(11, &[10, 1]));
        let z = DensePoly::zero(f(11));
        assert_eq!(z.gcd(&z), Err(Error::BothZero));
        assert_eq!(z.gcd(&poly(11, &[2, 4])).unwrap(), poly(11, &[6, 1]));
    }

    #[test]
    fn derivative_examples() {
        assert!(poly(3, &[0, 0, 0, 1]).derivative().is_zero());
        assert!(poly(7, &[5]).derivative().is_zero());
        assert_eq!(poly(7, &[1, 3, 1]).derivative(), poly(7, &[3, 2]));
        assert_eq!(poly(7, &[1, 1, 1, 1]).nth_derivative(2), poly(7, &[2, 6]));
    }

    #[test]
    fn multiplicity_examples() {
        let ctx = f(31);
        let a = &DensePoly::linear_root(ctx, 2).pow(3) * &DensePoly::linear_root(ctx, 1);
        assert_eq!(a.multiplicity_at(2), Ok(3));
        assert_eq!(a.multiplicity_at(5), Ok(0));
        let xp = &DensePoly::monomial(f(5), 1, 5) - &DensePoly::x(f(5));
        assert_eq!(xp.multiplicity_at(3), Ok(1));
        assert_eq!(
            DensePoly::zero(ctx).multiplicity_at(0),
            Err(Error::ZeroPolynomial)
        );
        // Multiplicity p is invisible to derivatives but not to division.
        let hi = DensePoly::linear_root(f(5), 1).pow(7);
        assert_eq!(hi.multiplicity_at(1), Ok(7));
    }

    #[test]
    fn eval_and_synthetic_division_agree() {
        let a = poly(97, &[3, 0, 5, 7, 1]);
        for x in 0..97 {
            let (q, r) = a.synthetic_div(x);
            assert_eq!(r, a.eval(x));
            let back = &(&q * &DensePoly::linear_root(f(97), x)) + &DensePoly::constant(f(97), r);
            assert_eq!(back, a);
        }
    }

    #[test]
    fn text_form() {
        let ctx = f(31);
        let a = DensePoly::parse(ctx, "1,0,1").unwrap();
        assert_eq!(a, poly(31, &[1, 0, 1]));
        assert_eq!(a.to_text(), "1,0,1");
        assert_eq!(DensePoly::parse(ctx, "0").unwrap().to_text(), "0");
        assert_eq!(
            DensePoly::parse(ctx, "30,1").unwrap(),
            DensePoly::linear_root(ctx, 1)
        );
        assert!(DensePoly::parse(ctx, "31").is_err());
        assert!(DensePoly::parse(ctx, "1,,2").is_err());
        assert!(DensePoly::parse(ctx, "").is_err());
        assert_eq!(a.to_string(), "x^2 + 1");
    }
}
