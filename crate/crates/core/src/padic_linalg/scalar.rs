use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Default number of ℓ-adic digits carried by every computation.
pub const DEFAULT_PRECISION: u32 = 16;

/// The coefficient ring ℤ/ℓ^N.
///
/// `modulus` is cached; it must fit in a `u64` so that products fit in `u128`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicContext {
    prime: u64,
    precision: u32,
    modulus: u64,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PadicContext {
    pub fn new(prime: u64, precision: u32) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::InvalidContext(format!("{prime} is not prime")));
        }
        if precision == 0 {
            return Err(Error::InvalidContext("precision must be at least 1".into()));
        }
        let modulus = prime
            .checked_pow(precision)
            .filter(|m| *m <= i64::MAX as u64)
            .ok_or_else(|| {
                Error::InvalidContext(format!("{prime}^{precision} does not fit in 63 bits"))
            })?;
        Ok(PadicContext { prime, precision, modulus })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// ℓ^k for k ≤ N.
    pub fn prime_power(&self, k: u32) -> u64 {
        debug_assert!(k <= self.precision);
        self.prime.pow(k)
    }

    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.modulus as i64) as u64
    }

    pub fn reduce_bigint(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.modulus)).to_u64().expect("residue fits in u64")
    }

    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    pub(crate) fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    pub(crate) fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    /// Largest k ≤ N with ℓ^k dividing `a`.
    pub(crate) fn valuation(&self, a: u64) -> u32 {
        if a == 0 {
            return self.precision;
        }
        let mut v = 0;
        let mut a = a;
        while a % self.prime == 0 {
            a /= self.prime;
            v += 1;
        }
        v
    }

    pub(crate) fn inverse(&self, a: u64) -> Option<u64> {
        let (mut old_r, mut r) = (a as i128, self.modulus as i128);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        if old_r != 1 {
            return None;
        }
        Some(old_s.rem_euclid(self.modulus as i128) as u64)
    }

    /// Splits a nonzero residue as ℓ^v · u with u a unit; returns (v, u).
    pub(crate) fn split(&self, a: u64) -> (u32, u64) {
        let v = self.valuation(a);
        if v == self.precision {
            return (v, 0);
        }
        (v, a / self.prime.pow(v))
    }

    /// Signed representative in (-m/2, m/2], for display.
    pub fn signed(&self, a: u64) -> i64 {
        if a > self.modulus / 2 {
            a as i64 - self.modulus as i64
        } else {
            a as i64
        }
    }
}

impl fmt::Display for PadicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}^{}", self.prime, self.precision)
    }
}

/// An element of ℤ/ℓ^N together with its context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicScalar {
    residue: u64,
    ctx: PadicContext,
}

impl PadicScalar {
    pub fn new(ctx: PadicContext, residue: u64) -> Self {
        PadicScalar { residue: residue % ctx.modulus, ctx }
    }

    pub fn from_i64(ctx: PadicContext, v: i64) -> Self {
        PadicScalar { residue: ctx.reduce_i64(v), ctx }
    }

    pub fn from_bigint(ctx: PadicContext, v: &BigInt) -> Self {
        PadicScalar { residue: ctx.reduce_bigint(v), ctx }
    }

    pub fn zero(ctx: PadicContext) -> Self {
        PadicScalar { residue: 0, ctx }
    }

    pub fn one(ctx: PadicContext) -> Self {
        PadicScalar { residue: 1 % ctx.modulus, ctx }
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn context(&self) -> PadicContext {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }

    /// valuation(0) = N.
    pub fn valuation(&self) -> u32 {
        self.ctx.valuation(self.residue)
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == 0
    }

    pub fn inverse(&self) -> Result<Self> {
        self.ctx
            .inverse(self.residue)
            .map(|r| PadicScalar { residue: r, ctx: self.ctx })
            .ok_or(Error::NotAUnit)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(format!("{} vs {}", self.ctx, other.ctx)));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(PadicScalar { residue: self.ctx.add(self.residue, other.residue), ctx: self.ctx })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(PadicScalar { residue: self.ctx.sub(self.residue, other.residue), ctx: self.ctx })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(PadicScalar { residue: self.ctx.mul(self.residue, other.residue), ctx: self.ctx })
    }

    pub fn signed(&self) -> i64 {
        self.ctx.signed(self.residue)
    }
}

// Operator forms panic on mismatched contexts; use the `checked_*` methods
// when the operands come from unrelated sources.
impl Add for PadicScalar {
    type Output = PadicScalar;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).unwrap()
    }
}

impl Sub for PadicScalar {
    type Output = PadicScalar;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).unwrap()
    }
}

impl Mul for PadicScalar {
    type Output = PadicScalar;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).unwrap()
    }
}

impl Neg for PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> Self {
        PadicScalar { residue: self.ctx.neg(self.residue), ctx: self.ctx }
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signed())
    }
}
