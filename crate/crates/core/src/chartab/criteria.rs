use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::padic_linalg::is_prime;

use super::table::{CharacterTable, ClassFunction};

/// The character of a finite group B acting on V, given as an integer
/// combination of the irreducibles of its table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionCharacter {
    table: CharacterTable,
    multiplicities: Vec<BigInt>,
    values: ClassFunction,
}

impl ActionCharacter {
    pub fn from_multiplicities(table: &CharacterTable, multiplicities: Vec<BigInt>) -> Result<Self> {
        let values = table.combine(&multiplicities)?;
        Ok(ActionCharacter { table: table.clone(), multiplicities, values })
    }

    /// Parses `"2*chi_2 + chi_5"`; indices are 1-based, repeated terms add up.
    pub fn parse(table: &CharacterTable, input: &str) -> Result<Self> {
        let err = |reason: String| Error::ActionParse { input: input.to_string(), reason };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '−' { '-' } else { c }).collect();
        if s.is_empty() {
            return Err(err("empty action".into()));
        }
        let mut mult = vec![BigInt::zero(); table.irreducibles().len()];
        let mut rest = s.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let sign = match rest.as_bytes()[0] {
                b'+' => 1,
                b'-' => -1,
                _ if first => 0,
                _ => return Err(err("expected '+' or '-' between terms".into())),
            };
            if sign != 0 {
                rest = &rest[1..];
            }
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            let (coeff, chi) = match term.split_once('*') {
                Some((c, chi)) => (c.parse::<BigInt>().map_err(|_| err(format!("bad coefficient '{c}'")))?, chi),
                None => (BigInt::from(1), term),
            };
            let index: usize = chi
                .strip_prefix("chi_")
                .ok_or_else(|| err(format!("expected chi_<i>, got '{chi}'")))?
                .parse()
                .map_err(|_| err(format!("bad index in '{chi}'")))?;
            if index == 0 || index > mult.len() {
                return Err(err(format!("chi_{index} out of range 1..={}", mult.len())));
            }
            let coeff = if sign < 0 { -coeff } else { coeff };
            mult[index - 1] += coeff;
            rest = &rest[end..];
        }
        Self::from_multiplicities(table, mult)
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn multiplicities(&self) -> &[BigInt] {
        &self.multiplicities
    }

    pub fn values(&self) -> &ClassFunction {
        &self.values
    }

    pub fn dimension(&self) -> BigInt {
        self.values.degree().unwrap_or_default()
    }

    pub fn is_character(&self) -> bool {
        self.multiplicities.iter().all(|m| !m.is_negative())
    }
}

/// dim Hom(V, V ⊗ V)^B = ⟨χ_V · χ_V, χ_V⟩.
pub fn hom_invariant_dim(chi: &ActionCharacter) -> Result<BigInt> {
    let table = chi.table();
    let square = table.tensor(chi.values(), chi.values())?;
    let ip = table.inner_product(&square, chi.values())?;
    if !ip.is_integer() {
        return Err(Error::NonIntegralMultiplicity { index: 0, multiplicity: ip.to_string() });
    }
    Ok(ip.to_integer())
}

/// Fixed points of an automorphism of a curve from its trace on H¹.
pub fn lefschetz_fixed_points(trace_on_h1: i64) -> i64 {
    2 - trace_on_h1
}

/// Genus g' of the quotient by a fixed-point count f action of ℤ/p:
/// 2g − 2 = p(2g' − 2) + f(p − 1).
pub fn quotient_genus(genus: i64, p: u64, fixed_points: i64) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::NotRealizable(format!("{p} is not prime")));
    }
    if genus < 0 || fixed_points < 0 {
        return Err(Error::NotRealizable("genus and fixed-point count must be non-negative".into()));
    }
    let p = p as i64;
    let rest = 2 * genus - 2 - fixed_points * (p - 1);
    if rest % (2 * p) != 0 {
        return Err(Error::NotRealizable(format!(
            "2g - 2 - f(p - 1) = {rest} is not divisible by 2p = {}",
            2 * p
        )));
    }
    let g = rest / (2 * p) + 1;
    if g < 0 {
        return Err(Error::NotRealizable(format!("quotient genus would be {g}")));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::super::builtin;
    use super::*;

    #[test]
    fn parse_actions() {
        let t = builtin::psl2_8();
        let a = ActionCharacter::parse(&t, "2*chi_2").unwrap();
        assert_eq!(a.dimension(), BigInt::from(14));
        let b = ActionCharacter::parse(&t, "chi_2 + chi_2").unwrap();
        assert_eq!(a, b);
        let c = ActionCharacter::parse(&t, " chi_1 - chi_1 + 3*chi_6").unwrap();
        assert_eq!(c.multiplicities()[5], BigInt::from(3));
        assert!(c.is_character());
        for bad in ["", "chi_10", "chi_0", "2chi_1", "x_1", "2*chi_", "chi_1 chi_2"] {
            assert!(matches!(ActionCharacter::parse(&t, bad), Err(Error::ActionParse { .. })), "{bad}");
        }
    }

    #[test]
    fn invariant_dimensions() {
        let t = builtin::psl2_8();
        let v = ActionCharacter::parse(&t, "2*chi_2").unwrap();
        assert_eq!(hom_invariant_dim(&v).unwrap(), BigInt::zero());
        for n in 1..=5 {
            let triv = ActionCharacter::parse(&builtin::trivial(), &format!("{n}*chi_1")).unwrap();
            assert_eq!(hom_invariant_dim(&triv).unwrap(), BigInt::from(n * n * n));
        }
        let c2 = builtin::cyclic(2).unwrap();
        let sign = ActionCharacter::parse(&c2, "6*chi_2").unwrap();
        assert_eq!(hom_invariant_dim(&sign).unwrap(), BigInt::zero());
    }

    #[test]
    fn lefschetz_and_riemann_hurwitz() {
        assert_eq!(lefschetz_fixed_points(-2), 4);
        assert_eq!(lefschetz_fixed_points(0), 2);
        assert_eq!(lefschetz_fixed_points(2 * 5), 2 - 10);
        assert_eq!(quotient_genus(7, 2, 4).unwrap(), 3);
        assert_eq!(quotient_genus(2, 2, 6).unwrap(), 0);
        assert_eq!(quotient_genus(3, 2, 0).unwrap(), 2);
        assert!(matches!(quotient_genus(7, 1, 0), Err(Error::NotRealizable(_))));
        assert!(matches!(quotient_genus(7, 4, 0), Err(Error::NotRealizable(_))));
        assert!(matches!(quotient_genus(7, 2, 3), Err(Error::NotRealizable(_))));
        assert!(matches!(quotient_genus(0, 2, 4), Err(Error::NotRealizable(_))));
    }
}
