//! Endomorphisms of the free or surface pro-ℓ group, given by the images of
//! the generators, and the ring maps they induce on the truncated group ring.

use std::ops::Deref;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::magnus::{GroupWord, Monomial, RingContext, TruncatedSeries};
use crate::padic_linalg::PadicMatrix;

/// Matrix of the induced map on 𝓘/𝓘²; column i holds the exponent sums of
/// the image of generator i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianizationMatrix(PadicMatrix);

impl AbelianizationMatrix {
    pub fn into_inner(self) -> PadicMatrix {
        self.0
    }
}

impl Deref for AbelianizationMatrix {
    type Target = PadicMatrix;
    fn deref(&self) -> &PadicMatrix {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoSpec {
    ctx: RingContext,
    images: Vec<GroupWord>,
}

impl EndoSpec {
    /// Validates image count and generator indices. For the surface kind the
    /// images must also send ω into the relation ideal modulo 𝓘^d, otherwise
    /// the map does not descend to the quotient ring.
    pub fn new(ctx: RingContext, images: Vec<GroupWord>) -> Result<Self> {
        let n = ctx.generators();
        if images.len() != n {
            return Err(Error::WrongImageCount { expected: n, got: images.len() });
        }
        for w in &images {
            if let Some(g) = w.max_generator() {
                ctx.check_generator(g)?;
            }
        }
        let spec = EndoSpec { ctx, images };
        if ctx.is_surface() && !spec.relation_image()?.is_zero() {
            return Err(Error::RelationNotPreserved);
        }
        Ok(spec)
    }

    pub fn identity(ctx: RingContext) -> Self {
        let images = (0..ctx.generators()).map(GroupWord::generator).collect();
        EndoSpec { ctx, images }
    }

    /// g_i ↦ g_i⁻¹ for all i.
    pub fn inversion(ctx: RingContext) -> Result<Self> {
        let images = (0..ctx.generators()).map(|i| GroupWord::power_of_generator(i, -1)).collect();
        Self::new(ctx, images)
    }

    /// The inner automorphism g_i ↦ g g_i g⁻¹.
    pub fn conjugation(ctx: RingContext, g: &GroupWord) -> Result<Self> {
        let images = (0..ctx.generators()).map(|i| GroupWord::generator(i).conjugate_by(g)).collect();
        Self::new(ctx, images)
    }

    pub fn context(&self) -> RingContext {
        self.ctx
    }

    pub fn images(&self) -> &[GroupWord] {
        &self.images
    }

    /// y_i = (image of g_i) − 1 in the truncated ring.
    pub fn generator_images(&self) -> Result<Vec<TruncatedSeries>> {
        let one = TruncatedSeries::one(self.ctx);
        self.images.iter().map(|w| Ok(&TruncatedSeries::from_word(w, self.ctx)? - &one)).collect()
    }

    /// Σ_i (y_{a_i} y_{b_i} − y_{b_i} y_{a_i}); zero iff the surface relation is respected.
    fn relation_image(&self) -> Result<TruncatedSeries> {
        let ys = self.generator_images()?;
        let mut acc = TruncatedSeries::zero(self.ctx);
        for pair in ys.chunks(2) {
            let (a, b) = (&pair[0], &pair[1]);
            acc = &acc + &(&(a * b) - &(b * a));
        }
        Ok(acc)
    }

    pub fn abelianization_matrix(&self) -> AbelianizationMatrix {
        let n = self.ctx.generators();
        let p = self.ctx.padic();
        let columns: Vec<Vec<u64>> = self
            .images
            .iter()
            .map(|w| w.exponent_sums(n).iter().map(|e| p.reduce_bigint(e)).collect())
            .collect();
        AbelianizationMatrix(PadicMatrix::from_columns(p, n, &columns))
    }

    /// An endomorphism is an automorphism iff it is one on the abelianization,
    /// i.e. the abelianization matrix is invertible mod ℓ.
    pub fn is_automorphism(&self) -> bool {
        self.abelianization_matrix().is_invertible()
    }

    pub fn in_torelli(&self) -> bool {
        self.abelianization_matrix().is_identity()
    }

    /// The induced continuous ring endomorphism x_i ↦ y_i.
    pub fn apply(&self, u: &TruncatedSeries) -> Result<TruncatedSeries> {
        if u.context() != self.ctx {
            return Err(Error::ContextMismatch(format!("{} vs {}", u.context(), self.ctx)));
        }
        let ys = self.generator_images()?;
        self.apply_with(&ys, u)
    }

    pub(crate) fn apply_with(&self, ys: &[TruncatedSeries], u: &TruncatedSeries) -> Result<TruncatedSeries> {
        let mut out = TruncatedSeries::zero(self.ctx);
        for (m, c) in u.raw_terms() {
            let image = image_of_monomial(self.ctx, ys, m)?;
            out = out.try_add(&image.scale_raw(c))?;
        }
        Ok(out)
    }

    /// self ∘ other: g_i ↦ self(other(g_i)).
    pub fn compose(&self, other: &EndoSpec) -> Result<EndoSpec> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(format!("{} vs {}", self.ctx, other.ctx)));
        }
        let images = other.images.iter().map(|w| w.substitute(&self.images)).collect::<Result<Vec<_>>>()?;
        EndoSpec::new(self.ctx, images)
    }
}

pub(crate) fn image_of_monomial(ctx: RingContext, ys: &[TruncatedSeries], m: &Monomial) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::one(ctx);
    for &i in m.letters() {
        acc = acc.multiply(&ys[i as usize])?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

fn random_short_word(rng: &mut ChaCha8Rng, generators: usize) -> GroupWord {
    let syllables = rng.gen_range(1..=2);
    let letters: Vec<(usize, i64)> = (0..syllables)
        .map(|_| {
            let g = rng.gen_range(0..generators);
            let e = *[-2i64, -1, 1, 2].choose(rng).expect("non-empty");
            (g, e)
        })
        .collect();
    let w = GroupWord::new(letters);
    if w.is_identity() {
        GroupWord::generator(rng.gen_range(0..generators))
    } else {
        w
    }
}

/// g_i ↦ g_i c_i, each c_i a product of `complexity` commutators of random
/// short words. Deterministic in `seed`; free kind only.
pub fn random_torelli(ctx: RingContext, seed: u64, complexity: usize) -> Result<EndoSpec> {
    if ctx.is_surface() {
        return Err(Error::UnsupportedForSurface("random Torelli generation"));
    }
    let n = ctx.generators();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let images = (0..n)
        .map(|i| {
            let mut w = GroupWord::generator(i);
            for _ in 0..complexity {
                let a = random_short_word(&mut rng, n);
                let b = random_short_word(&mut rng, n);
                w = w.mul(&GroupWord::commutator(&a, &b));
            }
            w
        })
        .collect();
    EndoSpec::new(ctx, images)
}

/// A product of `complexity` random elementary automorphisms: transvections,
/// inversions, swaps, ℓ-adic-unit powers, partial conjugations and Torelli
/// twists. Deterministic in `seed`; free kind only.
pub fn random_automorphism(ctx: RingContext, seed: u64, complexity: usize) -> Result<EndoSpec> {
    if ctx.is_surface() {
        return Err(Error::UnsupportedForSurface("random automorphism generation"));
    }
    let n = ctx.generators();
    let prime = ctx.padic().prime() as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = EndoSpec::identity(ctx);
    for _ in 0..complexity {
        let mut images: Vec<GroupWord> = (0..n).map(GroupWord::generator).collect();
        let i = rng.gen_range(0..n);
        let j = if n > 1 { (i + rng.gen_range(1..n)) % n } else { i };
        let sign: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let kind = if n > 1 { rng.gen_range(0..7) } else { rng.gen_range(0..2) };
        match kind {
            0 => images[i] = GroupWord::power_of_generator(i, -1),
            1 => {
                let mut a = rng.gen_range(2i64..=6);
                while a % prime == 0 {
                    a += 1;
                }
                images[i] = GroupWord::power_of_generator(i, a * sign);
            }
            2 => images[i] = GroupWord::new([(i, 1), (j, sign)]),
            3 => images[i] = GroupWord::new([(j, sign), (i, 1)]),
            4 => images.swap(i, j),
            5 => images[i] = images[i].conjugate_by(&random_short_word(&mut rng, n)),
            _ => {
                let c = GroupWord::commutator(&random_short_word(&mut rng, n), &random_short_word(&mut rng, n));
                images[i] = images[i].mul(&c);
            }
        }
        let step = EndoSpec::new(ctx, images)?;
        acc = acc.compose(&step)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic_linalg::PadicContext;

    fn free(rank: usize) -> RingContext {
        RingContext::free(rank, PadicContext::new(2, 16).unwrap(), 3).unwrap()
    }

    fn m(l: &[usize]) -> Monomial {
        Monomial::from_indices(l)
    }

    fn torelli_example(ctx: RingContext) -> EndoSpec {
        let g1 = GroupWord::generator(0);
        let g2 = GroupWord::generator(1);
        EndoSpec::new(ctx, vec![g1.mul(&GroupWord::commutator(&g1, &g2)), g2]).unwrap()
    }

    #[test]
    fn abelianization_examples() {
        let ctx = free(2);
        let c = ctx.padic();
        assert!(EndoSpec::identity(ctx).abelianization_matrix().is_identity());

        let e = EndoSpec::new(ctx, vec![GroupWord::new([(0, 1), (1, 1)]), GroupWord::generator(1)]).unwrap();
        let expect = PadicMatrix::from_i64_rows(c, &[vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(*e.abelianization_matrix(), expect);

        let inv = EndoSpec::inversion(ctx).unwrap();
        let minus = PadicMatrix::from_i64_rows(c, &[vec![-1, 0], vec![0, -1]]).unwrap();
        assert_eq!(*inv.abelianization_matrix(), minus);
    }

    #[test]
    fn automorphism_criterion() {
        let ctx = RingContext::free(2, PadicContext::new(3, 16).unwrap(), 3).unwrap();
        let e = EndoSpec::new(ctx, vec![GroupWord::new([(0, 1), (1, 1)]), GroupWord::generator(1)]).unwrap();
        assert!(e.is_automorphism());
        let power = EndoSpec::new(ctx, vec![GroupWord::power_of_generator(0, 3), GroupWord::generator(1)]).unwrap();
        assert!(!power.is_automorphism());
        // Exponent 2 is a 3-adic unit, so this is an automorphism of the pro-3 group.
        let unit_power = EndoSpec::new(ctx, vec![GroupWord::power_of_generator(0, 2), GroupWord::generator(1)]).unwrap();
        assert!(unit_power.is_automorphism());
        let t = torelli_example(ctx);
        assert!(t.is_automorphism());
        assert!(t.in_torelli());
    }

    #[test]
    fn torelli_membership() {
        let ctx = free(2);
        assert!(EndoSpec::identity(ctx).in_torelli());
        assert!(!EndoSpec::inversion(ctx).unwrap().in_torelli());
    }

    #[test]
    fn apply_examples() {
        let ctx = free(2);
        let x1 = TruncatedSeries::generator(ctx, 0).unwrap();
        let id = EndoSpec::identity(ctx);
        let u = TruncatedSeries::from_terms(ctx, [(m(&[]), 3), (m(&[1]), 1), (m(&[1, 0]), 5)]);
        assert_eq!(id.apply(&u).unwrap(), u);

        // Oracle: (1 + x1)(1 + x1x2 - x2x1) - 1 truncated at degree 3.
        let one = TruncatedSeries::one(ctx);
        let comm = TruncatedSeries::from_terms(ctx, [(m(&[]), 1), (m(&[0, 1]), 1), (m(&[1, 0]), -1)]);
        let oracle = &(&(&one + &x1) * &comm) - &one;
        let image = torelli_example(ctx).apply(&x1).unwrap();
        assert_eq!(image, oracle);
        assert_eq!(image, TruncatedSeries::from_terms(ctx, [(m(&[0]), 1), (m(&[0, 1]), 1), (m(&[1, 0]), -1)]));

        let inv = EndoSpec::inversion(ctx).unwrap();
        assert_eq!(inv.apply(&x1).unwrap(), TruncatedSeries::from_terms(ctx, [(m(&[0]), -1), (m(&[0, 0]), 1)]));
    }

    #[test]
    fn compose_with_identity() {
        let ctx = free(3);
        let e = random_automorphism(ctx, 7, 4).unwrap();
        assert_eq!(EndoSpec::identity(ctx).compose(&e).unwrap(), e);
        assert_eq!(e.compose(&EndoSpec::identity(ctx)).unwrap(), e);
    }

    #[test]
    fn compose_inverse_on_abelianization() {
        let ctx = free(2);
        let e = EndoSpec::new(ctx, vec![GroupWord::new([(0, 1), (1, 1)]), GroupWord::generator(1)]).unwrap();
        let f = EndoSpec::new(ctx, vec![GroupWord::new([(0, 1), (1, -1)]), GroupWord::generator(1)]).unwrap();
        assert!(e.compose(&f).unwrap().abelianization_matrix().is_identity());
    }

    #[test]
    fn wrong_image_count_and_index() {
        let ctx = free(2);
        assert_eq!(
            EndoSpec::new(ctx, vec![GroupWord::generator(0)]),
            Err(Error::WrongImageCount { expected: 2, got: 1 })
        );
        assert!(matches!(
            EndoSpec::new(ctx, vec![GroupWord::generator(0), GroupWord::generator(5)]),
            Err(Error::BadGeneratorIndex { index: 5, .. })
        ));
    }

    #[test]
    fn surface_relation_is_checked() {
        let ctx = RingContext::surface(1, PadicContext::new(3, 8).unwrap(), 3).unwrap();
        // a ↦ b, b ↦ a⁻¹ is symplectic.
        let rot = EndoSpec::new(ctx, vec![GroupWord::generator(1), GroupWord::power_of_generator(0, -1)]);
        assert!(rot.is_ok());
        // a ↦ a², b ↦ b scales ω by 2: still inside the relation ideal.
        let scale = EndoSpec::new(ctx, vec![GroupWord::power_of_generator(0, 2), GroupWord::generator(1)]);
        assert!(scale.is_ok());

        // Genus 2: swapping b1 and a2 sends ω to [a1,a2] + [b1,b2], which is not a multiple of ω.
        let ctx2 = RingContext::surface(2, PadicContext::new(3, 8).unwrap(), 3).unwrap();
        let images = [0, 2, 1, 3].into_iter().map(GroupWord::generator).collect();
        assert_eq!(EndoSpec::new(ctx2, images), Err(Error::RelationNotPreserved));
    }

    #[test]
    fn random_torelli_contract() {
        let ctx = free(3);
        assert_eq!(random_torelli(ctx, 1, 0).unwrap(), EndoSpec::identity(ctx));
        for seed in 0..20 {
            assert!(random_torelli(ctx, seed, 2).unwrap().in_torelli());
        }
        assert_eq!(random_torelli(ctx, 42, 3).unwrap(), random_torelli(ctx, 42, 3).unwrap());
    }

    #[test]
    fn random_automorphisms_are_automorphisms() {
        for rank in 1..=4 {
            let ctx = free(rank);
            for seed in 0..20 {
                assert!(random_automorphism(ctx, seed, 5).unwrap().is_automorphism());
            }
        }
    }
}
