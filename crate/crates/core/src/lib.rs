pub mod chartab;
pub mod endo;
pub mod error;
pub mod johnson;
pub mod magnus;
pub mod padic_linalg;
pub mod verdicts;

pub use error::{Error, Result};
