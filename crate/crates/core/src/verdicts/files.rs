use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::chartab::{CharacterTable, ClassFunction, ConjugacyClass, Cyclotomic};
use crate::endo::EndoSpec;
use crate::error::{Error, Result};
use crate::magnus::{GroupKind, GroupWord, RingContext, DEFAULT_DEGREE};
use crate::padic_linalg::{PadicContext, DEFAULT_PRECISION};

pub const DEFAULT_PRIME: u64 = 2;

/// An integer that reads from a JSON number or a decimal string and is
/// always written as a string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigDecimal(pub BigInt);

impl Serialize for BigDecimal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for BigDecimal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(i) => Ok(BigDecimal(BigInt::from(i))),
            Raw::Str(s) => s
                .trim()
                .parse()
                .map(BigDecimal)
                .map_err(|_| serde::de::Error::custom(format!("invalid integer string '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindSpec {
    Free(usize),
    Surface(usize),
}

impl From<KindSpec> for GroupKind {
    fn from(k: KindSpec) -> Self {
        match k {
            KindSpec::Free(rank) => GroupKind::Free { rank },
            KindSpec::Surface(genus) => GroupKind::Surface { genus },
        }
    }
}

impl From<GroupKind> for KindSpec {
    fn from(k: GroupKind) -> Self {
        match k {
            GroupKind::Free { rank } => KindSpec::Free(rank),
            GroupKind::Surface { genus } => KindSpec::Surface(genus),
        }
    }
}

/// Generator images as lists of `[generator, exponent]` syllables (0-based generators).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutoSpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    pub kind: KindSpec,
    pub images: Vec<Vec<(usize, BigDecimal)>>,
}

/// Ring parameters with command-line values taking precedence over file values.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Overrides {
    pub prime: Option<u64>,
    pub precision: Option<u32>,
    pub degree: Option<usize>,
}

fn schema(e: impl std::fmt::Display) -> Error {
    Error::Schema(e.to_string())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

impl AutoSpecFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(schema)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&read(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn context(&self, overrides: Overrides) -> Result<RingContext> {
        let prime = overrides.prime.or(self.prime).unwrap_or(DEFAULT_PRIME);
        let precision = overrides.precision.or(self.precision).unwrap_or(DEFAULT_PRECISION);
        let degree = overrides.degree.or(self.degree).unwrap_or(DEFAULT_DEGREE);
        RingContext::new(self.kind.into(), PadicContext::new(prime, precision)?, degree)
    }

    pub fn to_endo(&self, overrides: Overrides) -> Result<EndoSpec> {
        let ctx = self.context(overrides)?;
        let images = self
            .images
            .iter()
            .map(|w| GroupWord::new(w.iter().map(|(g, e)| (*g, e.0.clone()))))
            .collect();
        EndoSpec::new(ctx, images)
    }

    pub fn from_endo(e: &EndoSpec) -> Self {
        let ctx = e.context();
        AutoSpecFile {
            prime: Some(ctx.padic().prime()),
            precision: Some(ctx.padic().precision()),
            degree: Some(ctx.degree()),
            kind: ctx.kind().into(),
            images: e
                .images()
                .iter()
                .map(|w| w.letters().iter().map(|(g, x)| (*g, BigDecimal(x.clone()))).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassEntry {
    pub label: String,
    pub size: u64,
    pub element_order: u64,
    /// 0-based index of the class of g².
    pub square_class: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharTableFile {
    pub name: String,
    pub order: u64,
    pub classes: Vec<ClassEntry>,
    /// Values in the grammar `int | int*z(n)^k`, joined by + and -.
    pub irreducibles: Vec<Vec<String>>,
}

impl CharTableFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(schema)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&read(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn to_table(&self) -> Result<CharacterTable> {
        let classes = self
            .classes
            .iter()
            .map(|c| ConjugacyClass {
                label: c.label.clone(),
                size: c.size,
                element_order: c.element_order,
                square_class: c.square_class,
            })
            .collect();
        let rows = self
            .irreducibles
            .iter()
            .map(|row| row.iter().map(|v| Cyclotomic::parse(v)).collect::<Result<Vec<_>>>().map(ClassFunction))
            .collect::<Result<Vec<_>>>()?;
        CharacterTable::new(self.name.clone(), self.order, classes, rows)
    }

    pub fn from_table(t: &CharacterTable) -> Self {
        CharTableFile {
            name: t.name().to_string(),
            order: t.order(),
            classes: t
                .classes()
                .iter()
                .map(|c| ClassEntry {
                    label: c.label.clone(),
                    size: c.size,
                    element_order: c.element_order,
                    square_class: c.square_class,
                })
                .collect(),
            irreducibles: t
                .irreducibles()
                .iter()
                .map(|row| row.values().iter().map(ToString::to_string).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::builtin;

    #[test]
    fn spec_file_round_trip() {
        let text = r#"{"prime": 3, "kind": {"free": 2},
            "images": [[[0, 1], [0, 1], [1, "1"], [0, -1], [1, "-1"]], [[1, 1]]]}"#;
        let file = AutoSpecFile::from_json(text).unwrap();
        let e = file.to_endo(Overrides::default()).unwrap();
        assert_eq!(e.context().padic().prime(), 3);
        assert_eq!(e.context().padic().precision(), DEFAULT_PRECISION);
        assert!(e.in_torelli());
        let again = AutoSpecFile::from_json(&AutoSpecFile::from_endo(&e).to_json()).unwrap();
        assert_eq!(again.to_endo(Overrides::default()).unwrap(), e);
    }

    #[test]
    fn flags_override_file() {
        let file = AutoSpecFile::from_json(r#"{"prime": 3, "degree": 4, "kind": {"free": 1}, "images": [[[0, 1]]]}"#)
            .unwrap();
        let ctx = file.context(Overrides { prime: Some(5), ..Default::default() }).unwrap();
        assert_eq!((ctx.padic().prime(), ctx.degree()), (5, 4));
    }

    #[test]
    fn huge_exponents_survive() {
        let file =
            AutoSpecFile::from_json(r#"{"kind": {"free": 1}, "images": [[[0, "100000000000000000000001"]]]}"#).unwrap();
        let json = file.to_json();
        assert!(json.contains("\"100000000000000000000001\""));
    }

    #[test]
    fn schema_errors() {
        for bad in [
            "{}",
            r#"{"kind": {"free": 2}}"#,
            r#"{"kind": {"torus": 2}, "images": []}"#,
            r#"{"kind": {"free": 1}, "images": [[[0, "x"]]]}"#,
            r#"{"kind": {"free": 1}, "images": [], "extra": 1}"#,
        ] {
            assert!(matches!(AutoSpecFile::from_json(bad), Err(Error::Schema(_))), "{bad}");
        }
    }

    #[test]
    fn table_file_round_trip() {
        for t in [builtin::psl2_8(), builtin::cyclic(5).unwrap()] {
            let file = CharTableFile::from_table(&t);
            let back = CharTableFile::from_json(&file.to_json()).unwrap().to_table().unwrap();
            assert_eq!(back, t);
        }
    }
}
