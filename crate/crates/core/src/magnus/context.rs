use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::padic_linalg::PadicContext;

use super::word::Monomial;

pub const DEFAULT_DEGREE: usize = 3;

/// Which group the truncated ring models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// Free pro-ℓ group on `rank` generators.
    Free { rank: usize },
    /// Pro-ℓ surface group with generators a₁, b₁, …, a_g, b_g in that order.
    Surface { genus: usize },
}

/// Parameters shared by every series in one computation: group kind,
/// coefficient ring ℤ/ℓ^N, and truncation degree d (words of length ≥ d vanish).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingContext {
    kind: GroupKind,
    padic: PadicContext,
    degree: usize,
}

impl RingContext {
    pub fn new(kind: GroupKind, padic: PadicContext, degree: usize) -> Result<Self> {
        match kind {
            GroupKind::Free { rank } if rank == 0 => {
                return Err(Error::InvalidContext("free rank must be at least 1".into()))
            }
            GroupKind::Surface { genus } if genus == 0 => {
                return Err(Error::InvalidContext("surface genus must be at least 1".into()))
            }
            _ => {}
        }
        if degree < 2 {
            return Err(Error::InvalidContext(format!("truncation degree {degree} < 2")));
        }
        let ctx = RingContext { kind, padic, degree };
        if ctx.generators() > u16::MAX as usize {
            return Err(Error::InvalidContext("too many generators".into()));
        }
        Ok(ctx)
    }

    pub fn free(rank: usize, padic: PadicContext, degree: usize) -> Result<Self> {
        Self::new(GroupKind::Free { rank }, padic, degree)
    }

    pub fn surface(genus: usize, padic: PadicContext, degree: usize) -> Result<Self> {
        Self::new(GroupKind::Surface { genus }, padic, degree)
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn padic(&self) -> PadicContext {
        self.padic
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_surface(&self) -> bool {
        matches!(self.kind, GroupKind::Surface { .. })
    }

    /// Same group and coefficients, different truncation degree.
    pub fn with_degree(&self, degree: usize) -> Result<Self> {
        Self::new(self.kind, self.padic, degree)
    }

    pub fn generators(&self) -> usize {
        match self.kind {
            GroupKind::Free { rank } => rank,
            GroupKind::Surface { genus } => 2 * genus,
        }
    }

    pub(crate) fn check_generator(&self, index: usize) -> Result<()> {
        if index >= self.generators() {
            return Err(Error::BadGeneratorIndex { index, generators: self.generators() });
        }
        Ok(())
    }

    /// The word x_{b_g} x_{a_g} eliminated by the surface relation.
    pub fn pivot(&self) -> Option<[u16; 2]> {
        match self.kind {
            GroupKind::Free { .. } => None,
            GroupKind::Surface { genus } => {
                let a = (2 * genus - 2) as u16;
                Some([a + 1, a])
            }
        }
    }

    /// The relation ω = Σ_i (x_{a_i} x_{b_i} − x_{b_i} x_{a_i}) as signed terms.
    pub fn surface_relation(&self) -> Option<Vec<(Monomial, i64)>> {
        let GroupKind::Surface { genus } = self.kind else {
            return None;
        };
        let mut terms = Vec::with_capacity(2 * genus);
        for i in 0..genus {
            let (a, b) = ((2 * i) as u16, (2 * i + 1) as u16);
            terms.push((Monomial::new(vec![a, b]), 1));
            terms.push((Monomial::new(vec![b, a]), -1));
        }
        Some(terms)
    }

    /// Right-hand side of pivot = x_{a_g}x_{b_g} + Σ_{i<g}(x_{a_i}x_{b_i} − x_{b_i}x_{a_i}).
    fn pivot_substitution(&self) -> Vec<([u16; 2], bool)> {
        let GroupKind::Surface { genus } = self.kind else {
            return Vec::new();
        };
        let g = genus - 1;
        let mut terms = vec![([(2 * g) as u16, (2 * g + 1) as u16], true)];
        for i in 0..g {
            let (a, b) = ((2 * i) as u16, (2 * i + 1) as u16);
            terms.push(([a, b], true));
            terms.push(([b, a], false));
        }
        terms
    }

    /// Adds `coeff · word` to `out`, rewriting pivot occurrences until the
    /// word is in reduced form. The rewriting strictly decreases words in
    /// degree-lexicographic order, so it terminates; the pivot has no
    /// self-overlap, so the normal form is unique.
    pub(crate) fn accumulate(&self, out: &mut BTreeMap<Monomial, u64>, word: &[u16], coeff: u64) {
        if coeff == 0 || word.len() >= self.degree {
            return;
        }
        if let Some(pivot) = self.pivot() {
            if let Some(pos) = word.windows(2).position(|w| w == pivot) {
                let mut buf = word.to_vec();
                for (rep, positive) in self.pivot_substitution() {
                    buf[pos] = rep[0];
                    buf[pos + 1] = rep[1];
                    let c = if positive { coeff } else { self.padic.neg(coeff) };
                    self.accumulate(out, &buf, c);
                }
                return;
            }
        }
        let entry = out.entry(Monomial::new(word.to_vec())).or_insert(0);
        *entry = self.padic.add(*entry, coeff);
    }

    pub(crate) fn is_reduced_word(&self, word: &[u16]) -> bool {
        match self.pivot() {
            None => true,
            Some(p) => !word.windows(2).any(|w| w == p),
        }
    }

    /// Reduced basis words of length `k`, in degree-lexicographic order.
    pub fn basis_words(&self, k: usize) -> Vec<Monomial> {
        let n = self.generators() as u16;
        let mut words: Vec<Vec<u16>> = vec![Vec::new()];
        for _ in 0..k {
            words = words
                .into_iter()
                .flat_map(|w| {
                    (0..n).map(move |i| {
                        let mut w = w.clone();
                        w.push(i);
                        w
                    })
                })
                .filter(|w| self.is_reduced_word(w))
                .collect();
        }
        words.into_iter().map(Monomial::new).collect()
    }

    pub fn generator_label(&self, index: usize) -> String {
        match self.kind {
            GroupKind::Free { .. } => format!("x{}", index + 1),
            GroupKind::Surface { .. } => {
                let letter = if index % 2 == 0 { 'a' } else { 'b' };
                format!("{}{}", letter, index / 2 + 1)
            }
        }
    }
}

impl fmt::Display for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GroupKind::Free { rank } => write!(f, "free rank {rank}")?,
            GroupKind::Surface { genus } => write!(f, "surface genus {genus}")?,
        }
        write!(f, ", {}, degree < {}", self.padic, self.degree)
    }
}
