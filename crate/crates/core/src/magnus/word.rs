use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A non-commutative monomial x_{i₁} ⋯ x_{i_k}; the empty monomial is 1.
///
/// Ordered degree-lexicographically, so iteration over a coefficient map
/// walks the filtration from the bottom up.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(letters: Vec<u16>) -> Self {
        Monomial(letters)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_indices(letters: &[usize]) -> Self {
        Monomial(letters.iter().map(|&i| i as u16).collect())
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Monomial(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of the group as a word in the topological generators,
/// with integer (possibly negative, possibly huge) exponents.
///
/// Always freely reduced: no zero exponents and no two adjacent letters
/// on the same generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    letters: Vec<(usize, BigInt)>,
}

/// Cap on the length of words produced by substitution.
pub const MAX_WORD_LETTERS: usize = 1 << 16;

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn new<E: Into<BigInt>>(letters: impl IntoIterator<Item = (usize, E)>) -> Self {
        let mut w = GroupWord::identity();
        for (g, e) in letters {
            w.push(g, e.into());
        }
        w
    }

    pub fn generator(index: usize) -> Self {
        GroupWord { letters: vec![(index, BigInt::one())] }
    }

    pub fn power_of_generator(index: usize, exponent: impl Into<BigInt>) -> Self {
        GroupWord::new([(index, exponent.into())])
    }

    fn push(&mut self, g: usize, e: BigInt) {
        if e.is_zero() {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1.is_zero() {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((g, e));
    }

    pub fn letters(&self) -> &[(usize, BigInt)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of syllables g^e.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|(g, _)| *g).max()
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut w = self.clone();
        for (g, e) in &other.letters {
            w.push(*g, e.clone());
        }
        w
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord { letters: self.letters.iter().rev().map(|(g, e)| (*g, -e)).collect() }
    }

    /// [a, b] = a b a⁻¹ b⁻¹.
    pub fn commutator(a: &GroupWord, b: &GroupWord) -> GroupWord {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    /// g w g⁻¹.
    pub fn conjugate_by(&self, g: &GroupWord) -> GroupWord {
        g.mul(self).mul(&g.inverse())
    }

    pub fn pow(&self, exponent: &BigInt) -> Result<GroupWord> {
        if exponent.is_zero() || self.is_identity() {
            return Ok(GroupWord::identity());
        }
        if self.letters.len() == 1 {
            let (g, e) = &self.letters[0];
            return Ok(GroupWord::power_of_generator(*g, e * exponent));
        }
        let reps = exponent.abs().to_usize().filter(|r| r.saturating_mul(self.len()) <= MAX_WORD_LETTERS);
        let Some(reps) = reps else {
            return Err(Error::WordTooLong(MAX_WORD_LETTERS));
        };
        let base = if exponent.is_negative() { self.inverse() } else { self.clone() };
        let mut out = GroupWord::identity();
        for _ in 0..reps {
            out = out.mul(&base);
        }
        Ok(out)
    }

    /// Replaces each generator g_i by `images[i]`.
    pub fn substitute(&self, images: &[GroupWord]) -> Result<GroupWord> {
        let mut out = GroupWord::identity();
        for (g, e) in &self.letters {
            let image = images
                .get(*g)
                .ok_or(Error::BadGeneratorIndex { index: *g, generators: images.len() })?;
            out = out.mul(&image.pow(e)?);
            if out.len() > MAX_WORD_LETTERS {
                return Err(Error::WordTooLong(out.len()));
            }
        }
        Ok(out)
    }

    /// Signed exponent sum per generator: the image in the abelianization.
    pub fn exponent_sums(&self, generators: usize) -> Vec<BigInt> {
        let mut sums = vec![BigInt::zero(); generators];
        for (g, e) in &self.letters {
            if *g < generators {
                sums[*g] += e;
            }
        }
        sums
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|(g, e)| if e.is_one() { format!("g{}", g + 1) } else { format!("g{}^{}", g + 1, e) })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_order_is_degree_first() {
        let a = Monomial::new(vec![3]);
        let b = Monomial::new(vec![0, 0]);
        assert!(a < b);
        assert!(Monomial::new(vec![0, 1]) < Monomial::new(vec![1, 0]));
    }

    #[test]
    fn words_stay_reduced() {
        let w = GroupWord::new([(0, 2), (0, -2), (1, 1)]);
        assert_eq!(w, GroupWord::generator(1));
        let g = GroupWord::new([(0, 1), (1, -3)]);
        assert!(g.mul(&g.inverse()).is_identity());
    }

    #[test]
    fn substitution_and_powers() {
        let images = vec![GroupWord::new([(0, 1), (1, 1)]), GroupWord::generator(1)];
        let w = GroupWord::new([(0, -1)]);
        assert_eq!(w.substitute(&images).unwrap(), GroupWord::new([(1, -1), (0, -1)]));
        let big = GroupWord::power_of_generator(0, BigInt::from(10).pow(30));
        assert_eq!(big.pow(&BigInt::from(2)).unwrap().letters()[0].1, BigInt::from(2) * BigInt::from(10).pow(30));
        let two = GroupWord::new([(0, 1), (1, 1)]);
        assert!(matches!(two.pow(&BigInt::from(10).pow(20)), Err(Error::WordTooLong(_))));
    }

    #[test]
    fn exponent_sums_ignore_commutators() {
        let c = GroupWord::commutator(&GroupWord::generator(0), &GroupWord::generator(1));
        assert_eq!(c.exponent_sums(2), vec![BigInt::zero(), BigInt::zero()]);
    }
}
