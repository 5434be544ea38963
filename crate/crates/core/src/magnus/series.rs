use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::padic_linalg::PadicScalar;

use super::context::RingContext;
use super::word::{GroupWord, Monomial};

/// An element of ℤ/ℓ^N⟨⟨x₁,…,x_r⟩⟩ modulo words of length ≥ d, or of its
/// quotient by the surface relation (kept in pivot-free normal form).
///
/// Only nonzero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    ctx: RingContext,
    coeffs: BTreeMap<Monomial, u64>,
}

impl TruncatedSeries {
    pub fn zero(ctx: RingContext) -> Self {
        TruncatedSeries { ctx, coeffs: BTreeMap::new() }
    }

    pub fn one(ctx: RingContext) -> Self {
        Self::constant(ctx, 1)
    }

    pub fn constant(ctx: RingContext, c: i64) -> Self {
        Self::from_terms(ctx, [(Monomial::one(), c)])
    }

    /// The augmentation-ideal generator x_i = g_i − 1.
    pub fn generator(ctx: RingContext, index: usize) -> Result<Self> {
        ctx.check_generator(index)?;
        Ok(Self::from_terms(ctx, [(Monomial::from_indices(&[index]), 1)]))
    }

    /// Builds a series from signed integer coefficients, reducing to normal form.
    pub fn from_terms(ctx: RingContext, terms: impl IntoIterator<Item = (Monomial, i64)>) -> Self {
        let p = ctx.padic();
        let mut coeffs = BTreeMap::new();
        for (m, c) in terms {
            ctx.accumulate(&mut coeffs, m.letters(), p.reduce_i64(c));
        }
        Self::from_map(ctx, coeffs)
    }

    pub(crate) fn from_residues(ctx: RingContext, terms: impl IntoIterator<Item = (Monomial, u64)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (m, c) in terms {
            ctx.accumulate(&mut coeffs, m.letters(), c % ctx.padic().modulus());
        }
        Self::from_map(ctx, coeffs)
    }

    fn from_map(ctx: RingContext, mut coeffs: BTreeMap<Monomial, u64>) -> Self {
        coeffs.retain(|_, c| *c != 0);
        TruncatedSeries { ctx, coeffs }
    }

    pub fn context(&self) -> RingContext {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> PadicScalar {
        PadicScalar::new(self.ctx.padic(), self.coeffs.get(m).copied().unwrap_or(0))
    }

    pub(crate) fn raw_coefficient(&self, m: &Monomial) -> u64 {
        self.coeffs.get(m).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> PadicScalar {
        self.coefficient(&Monomial::one())
    }

    /// Nonzero terms in degree-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, PadicScalar)> + '_ {
        let p = self.ctx.padic();
        self.coeffs.iter().map(move |(m, &c)| (m, PadicScalar::new(p, c)))
    }

    pub(crate) fn raw_terms(&self) -> impl Iterator<Item = (&Monomial, u64)> + '_ {
        self.coeffs.iter().map(|(m, &c)| (m, c))
    }

    /// Smallest length of a word with nonzero coefficient; d for the zero series.
    pub fn filtration_degree(&self) -> usize {
        self.coeffs.keys().next().map_or(self.ctx.degree(), Monomial::len)
    }

    /// The homogeneous component of word length `k`.
    pub fn homogeneous_part(&self, k: usize) -> Self {
        let coeffs = self.coeffs.iter().filter(|(m, _)| m.len() == k).map(|(m, &c)| (m.clone(), c)).collect();
        TruncatedSeries { ctx: self.ctx, coeffs }
    }

    /// Drops every word of length ≥ `k` (the image modulo 𝓘^k).
    pub fn truncate(&self, k: usize) -> Self {
        let coeffs = self.coeffs.iter().filter(|(m, _)| m.len() < k).map(|(m, &c)| (m.clone(), c)).collect();
        TruncatedSeries { ctx: self.ctx, coeffs }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(format!("{} vs {}", self.ctx, other.ctx)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let p = self.ctx.padic();
        let mut coeffs = self.coeffs.clone();
        for (m, &c) in &other.coeffs {
            let e = coeffs.entry(m.clone()).or_insert(0);
            *e = p.add(*e, c);
        }
        Ok(Self::from_map(self.ctx, coeffs))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    fn neg_ref(&self) -> Self {
        let p = self.ctx.padic();
        TruncatedSeries { ctx: self.ctx, coeffs: self.coeffs.iter().map(|(m, &c)| (m.clone(), p.neg(c))).collect() }
    }

    pub fn scale(&self, s: PadicScalar) -> Result<Self> {
        if s.context() != self.ctx.padic() {
            return Err(Error::ContextMismatch(format!("{} vs {}", s.context(), self.ctx.padic())));
        }
        Ok(self.scale_raw(s.residue()))
    }

    pub(crate) fn scale_raw(&self, s: u64) -> Self {
        let p = self.ctx.padic();
        Self::from_map(self.ctx, self.coeffs.iter().map(|(m, &c)| (m.clone(), p.mul(c, s))).collect())
    }

    /// Truncated convolution: coefficient of w is Σ_{uv=w} a_u b_v.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let p = self.ctx.padic();
        let d = self.ctx.degree();
        let mut out = BTreeMap::new();
        let mut buf = Vec::with_capacity(d);
        for (u, &a) in &self.coeffs {
            for (v, &b) in &other.coeffs {
                if u.len() + v.len() >= d {
                    // Terms are sorted by length, so the rest of `other` is too long.
                    break;
                }
                buf.clear();
                buf.extend_from_slice(u.letters());
                buf.extend_from_slice(v.letters());
                self.ctx.accumulate(&mut out, &buf, p.mul(a, b));
            }
        }
        Ok(Self::from_map(self.ctx, out))
    }

    /// Power series (1 + x_i)^e = Σ_k C(e, k) x_i^k with exact binomials.
    fn generator_power(ctx: RingContext, index: usize, exponent: &BigInt) -> Self {
        let p = ctx.padic();
        let mut coeffs = BTreeMap::new();
        let mut binom = BigInt::one();
        for k in 0..ctx.degree() {
            if k > 0 {
                // C(e, k) = C(e, k-1) · (e - k + 1) / k, exact at every step.
                binom = binom * (exponent - BigInt::from(k - 1)) / BigInt::from(k);
            }
            if binom.is_zero() {
                break;
            }
            ctx.accumulate(&mut coeffs, &vec![index as u16; k], p.reduce_bigint(&binom));
        }
        Self::from_map(ctx, coeffs)
    }

    /// Image of a group element: the product of (1 + x_i)^e over its letters.
    pub fn from_word(word: &GroupWord, ctx: RingContext) -> Result<Self> {
        let mut acc = Self::one(ctx);
        for (g, e) in word.letters() {
            ctx.check_generator(*g)?;
            acc = acc.multiply(&Self::generator_power(ctx, *g, e))?;
        }
        Ok(acc)
    }

    /// Inverse of a series with unit constant term, via the geometric series.
    pub fn invert_unit(&self) -> Result<Self> {
        let c = self.constant_term().inverse()?;
        // self = c0 (1 + n) with n in the augmentation ideal.
        let normalized = self.scale_raw(c.residue());
        let n = normalized.try_sub(&Self::one(self.ctx))?;
        let minus_n = n.neg_ref();
        let mut result = Self::one(self.ctx);
        let mut power = Self::one(self.ctx);
        for _ in 1..self.ctx.degree() {
            power = power.multiply(&minus_n)?;
            if power.is_zero() {
                break;
            }
            result = result.try_add(&power)?;
        }
        Ok(result.scale_raw(c.residue()))
    }

    fn fmt_term(&self, m: &Monomial) -> String {
        m.letters().iter().map(|&i| self.ctx.generator_label(i as usize)).collect::<Vec<_>>().join("")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let p = self.ctx.padic();
        for (idx, (m, &c)) in self.coeffs.iter().enumerate() {
            let s = p.signed(c);
            let (sign, mag) = if s < 0 { ("-", s.unsigned_abs()) } else { ("+", s as u64) };
            if idx == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (m.is_empty(), mag) {
                (true, _) => write!(f, "{mag}")?,
                (false, 1) => write!(f, "{}", self.fmt_term(m))?,
                (false, _) => write!(f, "{mag}*{}", self.fmt_term(m))?,
            }
        }
        Ok(())
    }
}

// Operators panic on context mismatch; `multiply`/`try_add`/`try_sub` return errors.
impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        self.try_add(rhs).expect("series contexts differ")
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        self.try_sub(rhs).expect("series contexts differ")
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        self.multiply(rhs).expect("series contexts differ")
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.neg_ref()
    }
}
