use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::cyclotomic::Cyclotomic;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub label: String,
    pub size: u64,
    pub element_order: u64,
    /// Index of the class containing g² for g in this class.
    pub square_class: usize,
}

/// A class function: one cyclotomic value per conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction(pub Vec<Cyclotomic>);

impl ClassFunction {
    pub fn values(&self) -> &[Cyclotomic] {
        &self.0
    }

    pub fn degree(&self) -> Option<BigInt> {
        self.0.first().and_then(Cyclotomic::to_integer)
    }

    pub fn conj(&self) -> ClassFunction {
        ClassFunction(self.0.iter().map(Cyclotomic::conj).collect())
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, s: &BigInt) -> ClassFunction {
        ClassFunction(self.0.iter().map(|v| v.scale(s)).collect())
    }

    pub fn is_rational(&self) -> bool {
        self.0.iter().all(Cyclotomic::is_rational)
    }
}

/// Exact character table of a finite group, validated on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    name: String,
    order: u64,
    classes: Vec<ConjugacyClass>,
    irreducibles: Vec<ClassFunction>,
}

impl CharacterTable {
    /// Checks class sizes, degrees, square classes and row orthonormality.
    pub fn new(
        name: impl Into<String>,
        order: u64,
        classes: Vec<ConjugacyClass>,
        irreducibles: Vec<ClassFunction>,
    ) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidTable(msg));
        let k = classes.len();
        if k == 0 || order == 0 {
            return invalid("empty table".into());
        }
        if irreducibles.len() != k {
            return invalid(format!("{} irreducibles for {k} classes", irreducibles.len()));
        }
        if let Some((i, row)) = irreducibles.iter().enumerate().find(|(_, r)| r.0.len() != k) {
            return invalid(format!("row {} has {} entries, expected {k}", i + 1, row.0.len()));
        }
        let size_sum: u128 = classes.iter().map(|c| c.size as u128).sum();
        if size_sum != order as u128 {
            return invalid(format!("class sizes sum to {size_sum}, group order is {order}"));
        }
        if classes[0].size != 1 || classes[0].element_order != 1 {
            return invalid("first class must be the identity".into());
        }
        for (i, c) in classes.iter().enumerate() {
            if c.size == 0 || c.element_order == 0 {
                return invalid(format!("class {} has zero size or order", c.label));
            }
            let Some(sq) = classes.get(c.square_class) else {
                return invalid(format!("class {} squares to missing class {}", c.label, c.square_class));
            };
            let expect = c.element_order / c.element_order.gcd(&2);
            if sq.element_order != expect {
                return invalid(format!(
                    "class {} (order {}) squares into class {} of order {}, expected {expect}",
                    c.label, c.element_order, sq.label, sq.element_order
                ));
            }
            if order % c.size != 0 || order % c.element_order != 0 {
                return invalid(format!("class {} has size or order not dividing {order}", i + 1));
            }
        }
        let mut degree_squares = BigInt::zero();
        for (i, row) in irreducibles.iter().enumerate() {
            match row.degree() {
                Some(d) if d > BigInt::zero() => degree_squares += &d * &d,
                _ => return invalid(format!("row {} has no positive integer degree", i + 1)),
            }
        }
        if degree_squares != BigInt::from(order) {
            return invalid(format!("squared degrees sum to {degree_squares}, group order is {order}"));
        }
        let table = CharacterTable { name: name.into(), order, classes, irreducibles };
        for i in 0..k {
            for j in i..k {
                let ip = table.inner_product(&table.irreducibles[i], &table.irreducibles[j])?;
                let expect = if i == j { BigRational::one() } else { BigRational::zero() };
                if ip != expect {
                    return invalid(format!("<chi_{}, chi_{}> = {ip}", i + 1, j + 1));
                }
            }
        }
        Ok(table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    /// χ_i with 1-based index as printed.
    pub fn irreducible(&self, index: usize) -> Option<&ClassFunction> {
        index.checked_sub(1).and_then(|i| self.irreducibles.get(i))
    }

    fn check_len(&self, f: &ClassFunction) -> Result<()> {
        if f.0.len() != self.classes.len() {
            return Err(Error::DimensionMismatch { expected: self.classes.len(), got: f.0.len() });
        }
        Ok(())
    }

    /// Σ_c |c| a(c) b̄(c), before dividing by |G|.
    pub fn weighted_sum(&self, a: &ClassFunction, b: &ClassFunction) -> Result<Cyclotomic> {
        self.check_len(a)?;
        self.check_len(b)?;
        let mut total = Cyclotomic::zero();
        for ((c, x), y) in self.classes.iter().zip(&a.0).zip(&b.0) {
            let term = (x * &y.conj()).scale(&BigInt::from(c.size));
            total = &total + &term;
        }
        Ok(total)
    }

    /// ⟨a, b⟩ = |G|⁻¹ Σ_c |c| a(c) b̄(c).
    pub fn inner_product(&self, a: &ClassFunction, b: &ClassFunction) -> Result<BigRational> {
        let total = self.weighted_sum(a, b)?;
        let num = total.to_integer().ok_or(Error::NonRationalResult)?;
        Ok(BigRational::new(num, BigInt::from(self.order)))
    }

    pub fn tensor(&self, a: &ClassFunction, b: &ClassFunction) -> Result<ClassFunction> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(ClassFunction(a.0.iter().zip(&b.0).map(|(x, y)| x * y).collect()))
    }

    fn half_square(&self, a: &ClassFunction, sign: i64) -> Result<ClassFunction> {
        self.check_len(a)?;
        let two = BigInt::from(2);
        self.classes
            .iter()
            .zip(&a.0)
            .map(|(c, x)| {
                let sq = &a.0[c.square_class];
                let v = if sign < 0 { &(x * x) - sq } else { &(x * x) + sq };
                v.div_exact(&two)
                    .ok_or_else(|| Error::InvalidTable(format!("square of class function is odd on class {}", c.label)))
            })
            .collect::<Result<Vec<_>>>()
            .map(ClassFunction)
    }

    /// Λ²χ(c) = (χ(c)² − χ(c²)) / 2.
    pub fn alt_square(&self, a: &ClassFunction) -> Result<ClassFunction> {
        self.half_square(a, -1)
    }

    /// S²χ(c) = (χ(c)² + χ(c²)) / 2.
    pub fn sym_square(&self, a: &ClassFunction) -> Result<ClassFunction> {
        self.half_square(a, 1)
    }

    /// Multiplicities ⟨a, χ_i⟩, checked to be non-negative integers that rebuild `a`.
    pub fn decompose(&self, a: &ClassFunction) -> Result<Vec<BigInt>> {
        let mut mult = Vec::with_capacity(self.irreducibles.len());
        for (i, chi) in self.irreducibles.iter().enumerate() {
            let m = self.inner_product(a, chi)?;
            if !m.is_integer() {
                return Err(Error::NonIntegralMultiplicity { index: i + 1, multiplicity: m.to_string() });
            }
            if m < BigRational::zero() {
                return Err(Error::NegativeMultiplicity { index: i + 1, multiplicity: m.to_string() });
            }
            mult.push(m.to_integer());
        }
        let rebuilt = self.combine(&mult)?;
        if &rebuilt != a {
            return Err(Error::InvalidTable("decomposition does not reconstruct the input".into()));
        }
        Ok(mult)
    }

    /// Σ m_i χ_i.
    pub fn combine(&self, multiplicities: &[BigInt]) -> Result<ClassFunction> {
        if multiplicities.len() != self.irreducibles.len() {
            return Err(Error::DimensionMismatch { expected: self.irreducibles.len(), got: multiplicities.len() });
        }
        let zero = ClassFunction(vec![Cyclotomic::zero(); self.classes.len()]);
        Ok(self.irreducibles.iter().zip(multiplicities).fold(zero, |acc, (chi, m)| acc.add(&chi.scale(m))))
    }

    /// 1-based indices of irreducibles of degree `dim` with χ + χ̄ rational-valued.
    pub fn rational_sum_filter(&self, dim: u64) -> Vec<usize> {
        let dim = BigInt::from(dim);
        self.irreducibles
            .iter()
            .enumerate()
            .filter(|(_, chi)| chi.degree().as_ref() == Some(&dim) && chi.add(&chi.conj()).is_rational())
            .map(|(i, _)| i + 1)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::builtin;
    use super::*;

    #[test]
    fn rejects_bad_tables() {
        let trivial = builtin::cyclic(1).unwrap();
        let cls = trivial.classes().to_vec();
        let bad_row = vec![ClassFunction(vec![Cyclotomic::integer(2)])];
        assert!(matches!(CharacterTable::new("x", 1, cls.clone(), bad_row), Err(Error::InvalidTable(_))));
        let mut wrong_size = cls.clone();
        wrong_size[0].size = 2;
        assert!(CharacterTable::new("x", 1, wrong_size, trivial.irreducibles().to_vec()).is_err());
        let c2 = builtin::cyclic(2).unwrap();
        let mut swapped = c2.classes().to_vec();
        swapped[1].square_class = 1;
        assert!(CharacterTable::new("C2", 2, swapped, c2.irreducibles().to_vec()).is_err());
        let mut rows = c2.irreducibles().to_vec();
        rows[1] = rows[0].clone();
        assert!(CharacterTable::new("C2", 2, c2.classes().to_vec(), rows).is_err());
    }

    #[test]
    fn cyclic_decompositions() {
        let c3 = builtin::cyclic(3).unwrap();
        let regular = ClassFunction(vec![3.into(), 0.into(), 0.into()]);
        assert_eq!(c3.decompose(&regular).unwrap(), vec![BigInt::one(); 3]);
        let not_char = ClassFunction(vec![1.into(), 0.into(), 0.into()]);
        assert!(matches!(c3.decompose(&not_char), Err(Error::NonIntegralMultiplicity { .. })));
        let c2 = builtin::cyclic(2).unwrap();
        let virtual_char = ClassFunction(vec![0.into(), 2.into()]);
        assert!(matches!(c2.decompose(&virtual_char), Err(Error::NegativeMultiplicity { index: 2, .. })));
    }
}
