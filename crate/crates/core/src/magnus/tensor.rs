use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::padic_linalg::PadicScalar;

use super::context::RingContext;
use super::series::TruncatedSeries;
use super::word::Monomial;

/// Element of the completed tensor square, truncated at total word length d.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TensorSquareElement {
    ctx: RingContext,
    coeffs: BTreeMap<(Monomial, Monomial), u64>,
}

impl TensorSquareElement {
    pub fn zero(ctx: RingContext) -> Self {
        TensorSquareElement { ctx, coeffs: BTreeMap::new() }
    }

    pub fn one(ctx: RingContext) -> Self {
        let mut t = Self::zero(ctx);
        t.add_term(Monomial::one(), Monomial::one(), 1 % ctx.padic().modulus());
        t
    }

    fn add_term(&mut self, u: Monomial, v: Monomial, c: u64) {
        if c == 0 || u.len() + v.len() >= self.ctx.degree() {
            return;
        }
        let p = self.ctx.padic();
        let key = (u, v);
        let entry = self.coeffs.entry(key.clone()).or_insert(0);
        *entry = p.add(*entry, c);
        if *entry == 0 {
            self.coeffs.remove(&key);
        }
    }

    pub fn from_terms(ctx: RingContext, terms: impl IntoIterator<Item = (Monomial, Monomial, i64)>) -> Self {
        let mut t = Self::zero(ctx);
        for (u, v, c) in terms {
            t.add_term(u, v, ctx.padic().reduce_i64(c));
        }
        t
    }

    /// a ⊗ b, truncated.
    pub fn outer(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<Self> {
        if a.context() != b.context() {
            return Err(Error::ContextMismatch(format!("{} vs {}", a.context(), b.context())));
        }
        let ctx = a.context();
        let p = ctx.padic();
        let mut t = Self::zero(ctx);
        for (u, ca) in a.raw_terms() {
            for (v, cb) in b.raw_terms() {
                t.add_term(u.clone(), v.clone(), p.mul(ca, cb));
            }
        }
        Ok(t)
    }

    pub fn context(&self) -> RingContext {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, u: &Monomial, v: &Monomial) -> PadicScalar {
        let key = (u.clone(), v.clone());
        PadicScalar::new(self.ctx.padic(), self.coeffs.get(&key).copied().unwrap_or(0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Monomial, PadicScalar)> + '_ {
        let p = self.ctx.padic();
        self.coeffs.iter().map(move |((u, v), &c)| (u, v, PadicScalar::new(p, c)))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(format!("{} vs {}", self.ctx, other.ctx)));
        }
        let mut t = self.clone();
        for ((u, v), &c) in &other.coeffs {
            t.add_term(u.clone(), v.clone(), c);
        }
        Ok(t)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let p = self.ctx.padic();
        let neg = TensorSquareElement {
            ctx: other.ctx,
            coeffs: other.coeffs.iter().map(|(k, &c)| (k.clone(), p.neg(c))).collect(),
        };
        self.try_add(&neg)
    }

    /// (u ⊗ v)(u' ⊗ v') = uu' ⊗ vv'.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(format!("{} vs {}", self.ctx, other.ctx)));
        }
        let p = self.ctx.padic();
        let d = self.ctx.degree();
        let mut t = Self::zero(self.ctx);
        for ((u, v), &a) in &self.coeffs {
            for ((u2, v2), &b) in &other.coeffs {
                if u.len() + v.len() + u2.len() + v2.len() >= d {
                    continue;
                }
                t.add_term(u.concat(u2), v.concat(v2), p.mul(a, b));
            }
        }
        Ok(t)
    }

    /// Applies f ⊗ f termwise, where `image` sends a monomial to f(monomial).
    pub(crate) fn map_both(
        &self,
        mut image: impl FnMut(&Monomial) -> Result<TruncatedSeries>,
    ) -> Result<Self> {
        let p = self.ctx.padic();
        let mut t = Self::zero(self.ctx);
        for ((u, v), &c) in &self.coeffs {
            let fu = image(u)?;
            let fv = image(v)?;
            let prod = Self::outer(&fu, &fv)?;
            for ((a, b), &k) in &prod.coeffs {
                t.add_term(a.clone(), b.clone(), p.mul(k, c));
            }
        }
        Ok(t)
    }
}

impl fmt::Display for TensorSquareElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let p = self.ctx.padic();
        let label = |m: &Monomial| {
            if m.is_empty() {
                "1".to_string()
            } else {
                m.letters().iter().map(|&i| self.ctx.generator_label(i as usize)).collect::<String>()
            }
        };
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|((u, v), &c)| format!("{}*{}⊗{}", p.signed(c), label(u), label(v)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Δ(x_i) = x_i ⊗ x_i + 1 ⊗ x_i + x_i ⊗ 1.
fn delta_generator(ctx: RingContext, i: usize) -> TensorSquareElement {
    let x = Monomial::from_indices(&[i]);
    TensorSquareElement::from_terms(
        ctx,
        [(x.clone(), x.clone(), 1), (Monomial::one(), x.clone(), 1), (x, Monomial::one(), 1)],
    )
}

/// The comultiplication Δ(g) = g ⊗ g, extended to the unique ring map.
/// Only defined for the free kind.
pub fn comultiply(u: &TruncatedSeries) -> Result<TensorSquareElement> {
    let ctx = u.context();
    if ctx.is_surface() {
        return Err(Error::UnsupportedForSurface("comultiplication"));
    }
    let p = ctx.padic();
    let deltas: Vec<TensorSquareElement> = (0..ctx.generators()).map(|i| delta_generator(ctx, i)).collect();
    let mut out = TensorSquareElement::zero(ctx);
    for (m, c) in u.raw_terms() {
        let mut prod = TensorSquareElement::one(ctx);
        for &i in m.letters() {
            prod = prod.multiply(&deltas[i as usize])?;
        }
        for ((a, b), &k) in &prod.coeffs {
            out.add_term(a.clone(), b.clone(), p.mul(k, c));
        }
    }
    Ok(out)
}

/// Δ(u) = u ⊗ u with constant term 1.
pub fn is_grouplike(u: &TruncatedSeries) -> Result<bool> {
    let delta = comultiply(u)?;
    if u.constant_term().residue() != 1 % u.context().padic().modulus() {
        return Ok(false);
    }
    Ok(delta == TensorSquareElement::outer(u, u)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magnus::GroupWord;
    use crate::padic_linalg::PadicContext;

    fn free(rank: usize, p: u64, d: usize) -> RingContext {
        RingContext::free(rank, PadicContext::new(p, 16).unwrap(), d).unwrap()
    }

    fn m(l: &[usize]) -> Monomial {
        Monomial::from_indices(l)
    }

    #[test]
    fn delta_of_generator_and_unit() {
        let ctx = free(2, 2, 3);
        let x1 = TruncatedSeries::generator(ctx, 0).unwrap();
        let expect = TensorSquareElement::from_terms(
            ctx,
            [(m(&[0]), m(&[0]), 1), (m(&[]), m(&[0]), 1), (m(&[0]), m(&[]), 1)],
        );
        assert_eq!(comultiply(&x1).unwrap(), expect);
        assert_eq!(comultiply(&TruncatedSeries::one(ctx)).unwrap(), TensorSquareElement::one(ctx));
    }

    #[test]
    fn delta_of_product_is_product_of_deltas() {
        let ctx = free(2, 3, 4);
        let x1 = TruncatedSeries::generator(ctx, 0).unwrap();
        let x2 = TruncatedSeries::generator(ctx, 1).unwrap();
        let lhs = comultiply(&(&x1 * &x2)).unwrap();
        let rhs = comultiply(&x1).unwrap().multiply(&comultiply(&x2).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        // Both cross terms arise: (x1 ⊗ 1)(1 ⊗ x2) and (1 ⊗ x1)(x2 ⊗ 1).
        assert_eq!(lhs.coefficient(&m(&[0, 1]), &m(&[])).residue(), 1);
        assert_eq!(lhs.coefficient(&m(&[]), &m(&[0, 1])).residue(), 1);
        assert_eq!(lhs.coefficient(&m(&[0]), &m(&[1])).residue(), 1);
        assert_eq!(lhs.coefficient(&m(&[1]), &m(&[0])).residue(), 1);
    }

    #[test]
    fn group_elements_are_grouplike() {
        let ctx = free(3, 2, 3);
        let w = GroupWord::new([(0, 2), (2, -1), (1, 5)]);
        assert!(is_grouplike(&TruncatedSeries::from_word(&w, ctx).unwrap()).unwrap());
    }

    #[test]
    fn sum_of_generators_is_not_grouplike() {
        let ctx = free(2, 3, 3);
        let u = TruncatedSeries::from_terms(ctx, [(m(&[]), 1), (m(&[0]), 1), (m(&[1]), 1)]);
        assert!(!is_grouplike(&u).unwrap());
        let diff = comultiply(&u).unwrap().try_sub(&TensorSquareElement::outer(&u, &u).unwrap()).unwrap();
        assert_eq!(diff.coefficient(&m(&[0]), &m(&[1])).signed(), -1);
    }

    #[test]
    fn truncated_exponential_is_not_grouplike() {
        // 1 + x + x²/2 at ℓ = 3: by hand, Δ has x ⊗ x coefficient 2 (one from Δ(x),
        // one from ½·2·(x ⊗ 1)(1 ⊗ x)), while u ⊗ u has coefficient 1.
        let ctx = free(1, 3, 3);
        let p = ctx.padic();
        let half = PadicScalar::from_i64(p, 2).inverse().unwrap();
        let u = TruncatedSeries::from_residues(
            ctx,
            [(m(&[]), 1), (m(&[0]), 1), (m(&[0, 0]), half.residue())],
        );
        let delta = comultiply(&u).unwrap();
        assert_eq!(delta.coefficient(&m(&[0]), &m(&[0])).residue(), 2);
        assert_eq!(TensorSquareElement::outer(&u, &u).unwrap().coefficient(&m(&[0]), &m(&[0])).residue(), 1);
        assert!(!is_grouplike(&u).unwrap());
    }

    #[test]
    fn surface_comultiplication_is_rejected() {
        let ctx = RingContext::surface(1, PadicContext::new(2, 8).unwrap(), 3).unwrap();
        assert!(matches!(
            comultiply(&TruncatedSeries::one(ctx)),
            Err(Error::UnsupportedForSurface(_))
        ));
    }
}
