use std::collections::BTreeMap;
use std::fmt;

use crate::endo::{image_of_monomial, EndoSpec};
use crate::error::{Error, Result};
use crate::magnus::{comultiply, Monomial, RingContext, TensorSquareElement, TruncatedSeries};
use crate::padic_linalg::{PadicMatrix, PadicScalar};

/// The reduced basis of 𝓘²/𝓘³ (length-two words, pivot-free for surfaces).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Degree2Basis {
    words: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

impl Degree2Basis {
    pub fn new(ctx: RingContext) -> Self {
        let words = ctx.basis_words(2);
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Degree2Basis { words, index }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Monomial] {
        &self.words
    }

    pub fn position(&self, w: &Monomial) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Coordinates of the degree-two part of `u`.
    pub(crate) fn coordinates(&self, u: &TruncatedSeries) -> Vec<u64> {
        self.words.iter().map(|w| u.raw_coefficient(w)).collect()
    }

    pub(crate) fn series(&self, ctx: RingContext, coords: &[u64]) -> TruncatedSeries {
        TruncatedSeries::from_residues(ctx, self.words.iter().cloned().zip(coords.iter().copied()))
    }
}

fn require_degree(ctx: RingContext) -> Result<()> {
    if ctx.degree() < 3 {
        return Err(Error::DegreeTooSmall(ctx.degree()));
    }
    Ok(())
}

/// A linear map 𝓘/𝓘² → 𝓘²/𝓘³: column j is the image of x_j in the degree-two basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleValue {
    ctx: RingContext,
    matrix: PadicMatrix,
}

impl CocycleValue {
    pub fn new(ctx: RingContext, matrix: PadicMatrix) -> Result<Self> {
        let rows = Degree2Basis::new(ctx).len();
        if matrix.rows() != rows {
            return Err(Error::DimensionMismatch { expected: rows, got: matrix.rows() });
        }
        if matrix.cols() != ctx.generators() {
            return Err(Error::DimensionMismatch { expected: ctx.generators(), got: matrix.cols() });
        }
        if matrix.context() != ctx.padic() {
            return Err(Error::ContextMismatch(format!("{} vs {}", matrix.context(), ctx.padic())));
        }
        Ok(CocycleValue { ctx, matrix })
    }

    pub fn zero(ctx: RingContext) -> Self {
        let rows = Degree2Basis::new(ctx).len();
        CocycleValue { ctx, matrix: PadicMatrix::zeros(ctx.padic(), rows, ctx.generators()) }
    }

    pub fn context(&self) -> RingContext {
        self.ctx
    }

    pub fn matrix(&self) -> &PadicMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// The image of x_j as a homogeneous degree-two series.
    pub fn column_series(&self, j: usize) -> TruncatedSeries {
        Degree2Basis::new(self.ctx).series(self.ctx, &self.matrix.column_raw(j))
    }

    /// b_i^{kl}: coefficient of x_k x_l in the image of x_i (free kind indexing).
    pub fn coefficient(&self, i: usize, k: usize, l: usize) -> PadicScalar {
        let basis = Degree2Basis::new(self.ctx);
        match basis.position(&Monomial::from_indices(&[k, l])) {
            Some(row) => self.matrix.get(row, i),
            None => PadicScalar::zero(self.ctx.padic()),
        }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(format!("{} vs {}", self.ctx, other.ctx)));
        }
        Ok(CocycleValue { ctx: self.ctx, matrix: self.matrix.sub(&other.matrix)? })
    }

    /// Column-stacked coordinates, matching the row order of [`super::commutator_map`].
    pub(crate) fn vectorize(&self) -> Vec<u64> {
        self.matrix.vectorize()
    }
}

impl fmt::Display for CocycleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.ctx.generators() {
            writeln!(f, "{} ↦ {}", self.ctx.generator_label(j), self.column_series(j))?;
        }
        Ok(())
    }
}

/// Matrix of the action of `e` on 𝓘²/𝓘³ in the degree-two basis.
pub fn degree2_action(e: &EndoSpec) -> Result<PadicMatrix> {
    let ctx = e.context();
    let basis = Degree2Basis::new(ctx);
    let ys = e.generator_images()?;
    let columns = basis
        .words()
        .iter()
        .map(|w| Ok(basis.coordinates(&image_of_monomial(ctx, &ys, w)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PadicMatrix::from_columns(ctx.padic(), basis.len(), &columns))
}

/// The modified-diagonal cocycle c(σ) = σ ∘ s ∘ σ̄⁻¹ − s, with s the lift
/// x_i ↦ x_i. Column j is the degree-two part of σ(s(σ̄⁻¹ x_j)).
///
/// On the Torelli subgroup σ̄ = 1 and column i lists the coefficients b_i^{kl}
/// of σ(x_i) = x_i + Σ b_i^{kl} x_k x_l.
pub fn md_cocycle(e: &EndoSpec) -> Result<CocycleValue> {
    let ctx = e.context();
    require_degree(ctx)?;
    if !e.is_automorphism() {
        return Err(Error::NotAnAutomorphism);
    }
    let n = ctx.generators();
    let p = ctx.padic();
    let inv = e.abelianization_matrix().inverse()?;
    let ys = e.generator_images()?;
    let basis = Degree2Basis::new(ctx);
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let lift = TruncatedSeries::from_residues(
            ctx,
            (0..n).map(|k| (Monomial::from_indices(&[k]), inv.raw(k, j))),
        );
        let image = e.apply_with(&ys, &lift)?;
        debug_assert_eq!(image.homogeneous_part(1), TruncatedSeries::generator(ctx, j)?);
        columns.push(basis.coordinates(&image));
    }
    CocycleValue::new(ctx, PadicMatrix::from_columns(p, basis.len(), &columns))
}

/// σ·f := σ₂ ∘ f ∘ σ̄⁻¹, the action on Hom(𝓘/𝓘², 𝓘²/𝓘³).
pub fn act_on_cocycle(e: &EndoSpec, c: &CocycleValue) -> Result<CocycleValue> {
    let inv = e.abelianization_matrix().inverse()?;
    let action = degree2_action(e)?;
    CocycleValue::new(c.ctx, action.mul(&c.matrix)?.mul(&inv)?)
}

/// c(e1 ∘ e2) − c(e1) − e1·c(e2); zero for every pair of automorphisms.
pub fn cocycle_residual(e1: &EndoSpec, e2: &EndoSpec) -> Result<CocycleValue> {
    let composite = e1.compose(e2)?;
    let c12 = md_cocycle(&composite)?;
    let c1 = md_cocycle(e1)?;
    let c2 = md_cocycle(e2)?;
    c12.try_sub(&c1)?.try_sub(&act_on_cocycle(e1, &c2)?)
}

/// A coefficient pair violating b_i^{kl} + b_i^{lk} = 0 (or 2b_i^{kk} = 0 when k = l).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewViolation {
    pub generator: usize,
    pub k: usize,
    pub l: usize,
    pub sum: PadicScalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewReport {
    /// All b_i^{kl} + b_i^{lk} and 2b_i^{kk} vanish mod ℓ^N.
    pub skew: bool,
    pub violations: Vec<SkewViolation>,
    /// (i, k) with 2b_i^{kk} ≡ 0 but b_i^{kk} ≢ 0: only possible at ℓ = 2,
    /// where b_i^{kk} = 2^{N−1}. Passed by the literal test, flagged here.
    pub precision_boundary_diagonals: Vec<(usize, usize)>,
    /// Δ(σ(x_i)) − (σ⊗σ)(Δ(x_i)) for each i.
    pub witness: Vec<TensorSquareElement>,
}

impl SkewReport {
    pub fn witness_is_zero(&self) -> bool {
        self.witness.iter().all(TensorSquareElement::is_zero)
    }

    pub fn passed(&self) -> bool {
        self.skew && self.witness_is_zero()
    }
}

/// Checks skew-symmetry of the cocycle coefficients of a Torelli automorphism
/// and recomputes both sides of Δ∘σ = (σ⊗σ)∘Δ on the generators.
pub fn skew_check(e: &EndoSpec) -> Result<SkewReport> {
    let ctx = e.context();
    if ctx.is_surface() {
        return Err(Error::UnsupportedForSurface("skew check uses comultiplication"));
    }
    if !e.in_torelli() {
        return Err(Error::NotTorelli);
    }
    let c = md_cocycle(e)?;
    let n = ctx.generators();
    let mut violations = Vec::new();
    let mut boundary = Vec::new();
    for i in 0..n {
        for k in 0..n {
            for l in k..n {
                let b_kl = c.coefficient(i, k, l);
                let b_lk = c.coefficient(i, l, k);
                let sum = b_kl + b_lk;
                if !sum.is_zero() {
                    violations.push(SkewViolation { generator: i, k, l, sum });
                } else if k == l && !b_kl.is_zero() {
                    boundary.push((i, k));
                }
            }
        }
    }

    let ys = e.generator_images()?;
    let witness = (0..n)
        .map(|i| {
            let x = TruncatedSeries::generator(ctx, i)?;
            let lhs = comultiply(&e.apply_with(&ys, &x)?)?;
            let rhs = comultiply(&x)?.map_both(|m| image_of_monomial(ctx, &ys, m))?;
            lhs.try_sub(&rhs)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(SkewReport { skew: violations.is_empty(), violations, precision_boundary_diagonals: boundary, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magnus::GroupWord;
    use crate::padic_linalg::PadicContext;

    fn free(rank: usize, p: u64) -> RingContext {
        RingContext::free(rank, PadicContext::new(p, 16).unwrap(), 3).unwrap()
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
    fn identity_has_zero_cocycle() {
        let ctx = free(3, 2);
        assert!(md_cocycle(&EndoSpec::identity(ctx)).unwrap().is_zero());
    }

    #[test]
    fn torelli_example_cocycle() {
        let ctx = free(2, 3);
        let c = md_cocycle(&torelli_example(ctx)).unwrap();
        let col0 = TruncatedSeries::from_terms(ctx, [(m(&[0, 1]), 1), (m(&[1, 0]), -1)]);
        assert_eq!(c.column_series(0), col0);
        assert!(c.column_series(1).is_zero());
    }

    #[test]
    fn conjugation_cocycle_is_commutator() {
        let ctx = free(3, 5);
        let c = md_cocycle(&EndoSpec::conjugation(ctx, &GroupWord::generator(0)).unwrap()).unwrap();
        for j in 0..3 {
            let expect = TruncatedSeries::from_terms(ctx, [(m(&[0, j]), 1), (m(&[j, 0]), -1)]);
            assert_eq!(c.column_series(j), expect);
        }
    }

    #[test]
    fn non_automorphism_rejected() {
        let ctx = free(2, 2);
        let e = EndoSpec::new(ctx, vec![GroupWord::power_of_generator(0, 2), GroupWord::generator(1)]).unwrap();
        assert_eq!(md_cocycle(&e), Err(Error::NotAnAutomorphism));
        let low = RingContext::free(2, PadicContext::new(2, 16).unwrap(), 2).unwrap();
        assert_eq!(md_cocycle(&EndoSpec::identity(low)), Err(Error::DegreeTooSmall(2)));
    }

    #[test]
    fn residual_with_identity_vanishes() {
        let ctx = free(2, 3);
        let e = torelli_example(ctx);
        let id = EndoSpec::identity(ctx);
        assert!(cocycle_residual(&id, &e).unwrap().is_zero());
        assert!(cocycle_residual(&e, &id).unwrap().is_zero());
    }

    #[test]
    fn residual_for_non_torelli_pair() {
        let ctx = free(2, 3);
        let t = EndoSpec::new(ctx, vec![GroupWord::new([(0, 1), (1, 1)]), GroupWord::generator(1)]).unwrap();
        let p = EndoSpec::new(ctx, vec![GroupWord::power_of_generator(0, 2), GroupWord::generator(1)]).unwrap();
        assert!(cocycle_residual(&t, &p).unwrap().is_zero());
        assert!(cocycle_residual(&p, &t).unwrap().is_zero());
    }

    #[test]
    fn skew_check_example() {
        let ctx = free(2, 2);
        let report = skew_check(&torelli_example(ctx)).unwrap();
        assert!(report.passed());
        let c = md_cocycle(&torelli_example(ctx)).unwrap();
        assert_eq!(c.coefficient(0, 0, 1).signed(), 1);
        assert_eq!(c.coefficient(0, 1, 0).signed(), -1);
        assert!(skew_check(&EndoSpec::identity(ctx)).unwrap().passed());
    }

    #[test]
    fn skew_check_requires_torelli() {
        let ctx = free(2, 2);
        assert_eq!(skew_check(&EndoSpec::inversion(ctx).unwrap()), Err(Error::NotTorelli));
    }
}
