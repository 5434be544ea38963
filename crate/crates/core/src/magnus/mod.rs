//! The truncated completed group ring.
//!
//! For a free pro-ℓ group the completed group ring is the non-commutative
//! power series ring in x_i = g_i − 1; everything here works modulo words of
//! length ≥ d and with coefficients in ℤ/ℓ^N. The surface kind is the
//! quotient by the two-sided ideal generated by ω = Σ (x_{a_i}x_{b_i} − x_{b_i}x_{a_i}),
//! with x_{b_g}x_{a_g} rewritten away so that every element has a unique
//! normal form.

mod context;
mod series;
mod tensor;
mod word;

pub use context::{GroupKind, RingContext, DEFAULT_DEGREE};
pub use series::TruncatedSeries;
pub use tensor::{comultiply, is_grouplike, TensorSquareElement};
pub use word::{GroupWord, Monomial, MAX_WORD_LETTERS};
