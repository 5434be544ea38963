//! The mod-𝓘³ identities behind the two descriptions of m and the comparison
//! with the Magnus-type cocycle, as residuals that must vanish below degree 3.

use crate::endo::EndoSpec;
use crate::error::{Error, Result};
use crate::magnus::{GroupWord, RingContext, TruncatedSeries};

fn require_degree(ctx: RingContext) -> Result<()> {
    if ctx.degree() < 3 {
        return Err(Error::DegreeTooSmall(ctx.degree()));
    }
    Ok(())
}

/// (g s g⁻¹ − s) − (g s − s g) with s = x_j, truncated below degree 3.
pub fn verify_m1_equals_m2(ctx: RingContext, g: &GroupWord, j: usize) -> Result<TruncatedSeries> {
    require_degree(ctx)?;
    let s = TruncatedSeries::generator(ctx, j)?;
    let gs = TruncatedSeries::from_word(g, ctx)?;
    let g_inv = gs.invert_unit()?;
    let conj = gs.multiply(&s)?.multiply(&g_inv)?.try_sub(&s)?;
    let bracket = gs.multiply(&s)?.try_sub(&s.multiply(&gs)?)?;
    Ok(conj.try_sub(&bracket)?.truncate(3))
}

/// (σ(u)·u⁻¹ − 1) − (σ(u) − u) for u the Magnus image of `h`, truncated below degree 3.
pub fn verify_magnus_identity(e: &EndoSpec, h: &GroupWord) -> Result<TruncatedSeries> {
    let ctx = e.context();
    require_degree(ctx)?;
    if !e.in_torelli() {
        return Err(Error::NotTorelli);
    }
    let u = TruncatedSeries::from_word(h, ctx)?;
    let image = e.apply(&u)?;
    let quotient = image.multiply(&u.invert_unit()?)?.try_sub(&TruncatedSeries::one(ctx))?;
    let difference = image.try_sub(&u)?;
    Ok(quotient.try_sub(&difference)?.truncate(3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic_linalg::PadicContext;

    fn free(rank: usize, d: usize) -> RingContext {
        RingContext::free(rank, PadicContext::new(2, 16).unwrap(), d).unwrap()
    }

    #[test]
    fn m1_equals_m2_examples() {
        let ctx = free(2, 3);
        assert!(verify_m1_equals_m2(ctx, &GroupWord::generator(0), 1).unwrap().is_zero());
        assert!(verify_m1_equals_m2(ctx, &GroupWord::identity(), 1).unwrap().is_zero());
        let g = GroupWord::new([(0, 1), (1, -1)]);
        assert!(verify_m1_equals_m2(ctx, &g, 0).unwrap().is_zero());
    }

    #[test]
    fn m1_equals_m2_fails_in_degree_three() {
        // The identity is only claimed modulo 𝓘³; at d = 4 the untruncated
        // difference is nonzero for g = g1, s = x2.
        let ctx = free(2, 4);
        let s = TruncatedSeries::generator(ctx, 1).unwrap();
        let gs = TruncatedSeries::from_word(&GroupWord::generator(0), ctx).unwrap();
        let conj = gs.multiply(&s).unwrap().multiply(&gs.invert_unit().unwrap()).unwrap().try_sub(&s).unwrap();
        let bracket = gs.multiply(&s).unwrap().try_sub(&s.multiply(&gs).unwrap()).unwrap();
        assert!(!conj.try_sub(&bracket).unwrap().is_zero());
        assert!(verify_m1_equals_m2(ctx, &GroupWord::generator(0), 1).unwrap().is_zero());
    }

    #[test]
    fn magnus_identity_examples() {
        let ctx = free(2, 3);
        let h = GroupWord::generator(0);
        assert!(verify_magnus_identity(&EndoSpec::identity(ctx), &h).unwrap().is_zero());
        let g1 = GroupWord::generator(0);
        let g2 = GroupWord::generator(1);
        let t = EndoSpec::new(ctx, vec![g1.mul(&GroupWord::commutator(&g1, &g2)), g2]).unwrap();
        assert!(verify_magnus_identity(&t, &h).unwrap().is_zero());
        assert_eq!(
            verify_magnus_identity(&EndoSpec::inversion(ctx).unwrap(), &h),
            Err(Error::NotTorelli)
        );
    }
}
