//! Torsion verdicts from the invariant-dimension criterion, the two worked
//! demos, file formats and the command-line front end.

pub mod cli;
pub mod files;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::chartab::{
    builtin, hom_invariant_dim, lefschetz_fixed_points, quotient_genus, ActionCharacter, CharacterTable,
    ClassFunction,
};
use crate::error::{Error, Result};

pub const MOD2_CAVEAT: &str = "rational certificate only; mod-2 hypothesis unchecked";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Certified,
    NotCertified,
}

/// The computation behind a verdict, kept so it can be re-checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantTrace {
    pub group: String,
    pub group_order: u64,
    pub action: String,
    pub dimension: BigInt,
    /// |B| · ⟨χ_V², χ_V⟩ as an integer.
    pub weighted_sum: BigInt,
    pub hom_invariant_dim: BigInt,
    /// Class-by-class expansion of the weighted sum for integer-valued χ_V.
    pub expansion: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionVerdict {
    pub outcome: Outcome,
    /// Present iff certified: the class has order dividing this.
    pub bound: Option<u64>,
    pub certificate: InvariantTrace,
    pub caveats: Vec<String>,
}

fn describe_action(chi: &ActionCharacter) -> String {
    let mut out = String::new();
    for (i, m) in chi.multiplicities().iter().enumerate().filter(|(_, m)| !m.is_zero()) {
        let mag = m.abs();
        match (out.is_empty(), m.is_negative()) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        if mag != BigInt::from(1) {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(&format!("chi_{}", i + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Σ_c |c| χ(c)² χ̄(c) written term by term as |χ(c)|·χ(c)²·|c|, unit
/// factors and vanishing terms dropped. None unless χ is integer-valued.
pub fn render_weighted_sum(table: &CharacterTable, chi: &ClassFunction) -> Option<String> {
    let mut out = String::new();
    let mut total = BigInt::zero();
    for (class, v) in table.classes().iter().zip(chi.values()) {
        let x = v.to_integer()?;
        if x.is_zero() {
            continue;
        }
        let sq = &x * &x;
        total += &sq * &x * BigInt::from(class.size);
        let factors: Vec<String> = [x.abs(), sq, BigInt::from(class.size)]
            .iter()
            .filter(|f| **f != BigInt::from(1))
            .map(ToString::to_string)
            .collect();
        let body = if factors.is_empty() { "1".to_string() } else { factors.join("·") };
        if x.is_negative() {
            out.push('−');
        } else if !out.is_empty() {
            out.push('+');
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    Some(format!("{out} = {total}"))
}

/// Certified with bound |B| exactly when dim Hom(V, V⊗V)^B = 0. Never claims non-torsion.
pub fn torsion_verdict(chi: &ActionCharacter, group_order: u64) -> Result<TorsionVerdict> {
    let table = chi.table();
    let dim = hom_invariant_dim(chi)?;
    let square = table.tensor(chi.values(), chi.values())?;
    let weighted = table.weighted_sum(&square, chi.values())?.to_integer().ok_or(Error::NonRationalResult)?;
    let certificate = InvariantTrace {
        group: table.name().to_string(),
        group_order: table.order(),
        action: describe_action(chi),
        dimension: chi.dimension(),
        weighted_sum: weighted,
        hom_invariant_dim: dim.clone(),
        expansion: render_weighted_sum(table, chi.values()),
    };
    let (outcome, bound) = if dim.is_zero() { (Outcome::Certified, Some(group_order)) } else { (Outcome::NotCertified, None) };
    Ok(TorsionVerdict { outcome, bound, certificate, caveats: vec![MOD2_CAVEAT.to_string()] })
}

impl TorsionVerdict {
    pub fn is_certified(&self) -> bool {
        self.outcome == Outcome::Certified
    }

    pub fn to_json(&self) -> Value {
        let c = &self.certificate;
        json!({
            "outcome": match self.outcome { Outcome::Certified => "certified", Outcome::NotCertified => "not_certified" },
            "bound": self.bound.map(|b| b.to_string()),
            "certificate": {
                "group": c.group,
                "group_order": c.group_order.to_string(),
                "action": c.action,
                "dimension": c.dimension.to_string(),
                "weighted_sum": c.weighted_sum.to_string(),
                "hom_invariant_dim": c.hom_invariant_dim.to_string(),
                "expansion": c.expansion,
            },
            "caveats": self.caveats,
        })
    }
}

impl fmt::Display for TorsionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.certificate;
        writeln!(f, "group: {} (order {})", c.group, c.group_order)?;
        writeln!(f, "action: chi_V = {} (dimension {})", c.action, c.dimension)?;
        if let Some(e) = &c.expansion {
            writeln!(f, "|B|·<chi_V^2, chi_V> = {e}")?;
        }
        writeln!(f, "dim Hom(V, V⊗V)^B = {}/{} = {}", c.weighted_sum, c.group_order, c.hom_invariant_dim)?;
        match self.outcome {
            Outcome::Certified => {
                let b = self.bound.unwrap_or_default();
                writeln!(f, "verdict: torsion, order divides {b} (bound {b})")?;
            }
            Outcome::NotCertified => writeln!(f, "verdict: not certified (invariant dimension is positive)")?,
        }
        for caveat in &self.caveats {
            writeln!(f, "caveat: {caveat}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperellipticReport {
    pub genus: usize,
    pub verdict: TorsionVerdict,
}

/// The hyperelliptic involution acts on V by −1, so χ_V = 2g·sign on C2.
pub fn demo_hyperelliptic(genus: usize) -> Result<HyperellipticReport> {
    if genus == 0 {
        return Err(Error::InvalidContext("genus must be at least 1".into()));
    }
    let c2 = builtin::cyclic(2)?;
    let chi = ActionCharacter::parse(&c2, &format!("{}*chi_2", 2 * genus))?;
    let verdict = torsion_verdict(&chi, c2.order())?;
    Ok(HyperellipticReport { genus, verdict })
}

impl HyperellipticReport {
    pub fn to_json(&self) -> Value {
        json!({ "demo": "hyperelliptic", "genus": self.genus.to_string(), "verdict": self.verdict.to_json() })
    }
}

impl fmt::Display for HyperellipticReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "hyperelliptic curve of genus {}: involution acts on H^1 by -1", self.genus)?;
        write!(f, "{}", self.verdict)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrickeMacbeathReport {
    /// 1-based indices of degree-7 irreducibles with χ + χ̄ rational.
    pub candidates: Vec<usize>,
    pub chosen: usize,
    pub arithmetic: String,
    pub inner_product: BigRational,
    pub verdict: TorsionVerdict,
    pub involution_trace: i64,
    pub fixed_points: i64,
    pub quotient_genus: i64,
}

/// Genus-7 curve with PSL₂(8) symmetry: H¹ = χ ⊕ χ̄ with rational traces
/// forces χ = χ_2, then ⟨χ_2², χ_2⟩ = 0 certifies torsion, and an
/// involution's quotient has genus 3.
pub fn demo_fricke_macbeath() -> Result<FrickeMacbeathReport> {
    let table = builtin::psl2_8();
    let candidates = table.rational_sum_filter(7);
    let [chosen] = candidates[..] else {
        return Err(Error::InvalidTable(format!("expected one rational candidate, found {candidates:?}")));
    };
    let chi = table.irreducible(chosen).expect("index from filter");
    let square = table.tensor(chi, chi)?;
    let inner_product = table.inner_product(&square, chi)?;
    let arithmetic = render_weighted_sum(&table, chi).ok_or(Error::NonRationalResult)?;

    let action = ActionCharacter::parse(&table, &format!("2*chi_{chosen}"))?;
    let verdict = torsion_verdict(&action, table.order())?;

    let involution = table.classes().iter().position(|c| c.element_order == 2).expect("PSL2(8) has involutions");
    let involution_trace = action.values().values()[involution]
        .to_integer()
        .and_then(|t| i64::try_from(t).ok())
        .ok_or(Error::NonRationalResult)?;
    let fixed_points = lefschetz_fixed_points(involution_trace);
    let quotient_genus = quotient_genus(7, 2, fixed_points)?;
    Ok(FrickeMacbeathReport {
        candidates,
        chosen,
        arithmetic,
        inner_product,
        verdict,
        involution_trace,
        fixed_points,
        quotient_genus,
    })
}

impl FrickeMacbeathReport {
    pub fn to_json(&self) -> Value {
        json!({
            "demo": "fricke-macbeath",
            "candidates": self.candidates.iter().map(|i| format!("chi_{i}")).collect::<Vec<_>>(),
            "chosen": format!("chi_{}", self.chosen),
            "arithmetic": self.arithmetic,
            "inner_product": self.inner_product.to_string(),
            "verdict": self.verdict.to_json(),
            "involution_trace": self.involution_trace.to_string(),
            "fixed_points": self.fixed_points.to_string(),
            "quotient_genus": self.quotient_genus.to_string(),
        })
    }
}

impl fmt::Display for FrickeMacbeathReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.candidates.iter().map(|i| format!("chi_{i}")).collect();
        writeln!(f, "Fricke-Macbeath curve: genus 7, automorphism group PSL2(8)")?;
        writeln!(f, "degree-7 irreducibles with rational chi + conj(chi): {}", names.join(", "))?;
        writeln!(f, "H^1 = chi_{0} + conj(chi_{0}) = 2*chi_{0}", self.chosen)?;
        writeln!(f, "504·<chi_{0}·chi_{0}, chi_{0}> = {1}", self.chosen, self.arithmetic)?;
        writeln!(f, "<chi_{0}·chi_{0}, chi_{0}> = {1}", self.chosen, self.inner_product)?;
        write!(f, "{}", self.verdict)?;
        writeln!(f, "involution trace on H^1: {}", self.involution_trace)?;
        writeln!(f, "fixed points: {}", self.fixed_points)?;
        writeln!(f, "quotient genus: {}", self.quotient_genus)
    }
}
