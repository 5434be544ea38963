//! Exact character theory over cyclotomic integers: tables, inner products,
//! tensor and exterior squares, and the invariant-dimension criterion.

pub mod builtin;
mod criteria;
mod cyclotomic;
mod table;

pub use criteria::{hom_invariant_dim, lefschetz_fixed_points, quotient_genus, ActionCharacter};
pub use cyclotomic::Cyclotomic;
pub use table::{CharacterTable, ClassFunction, ConjugacyClass};
