//! Exact Padé-type approximants for the p-adic polygamma series and the
//! linear-independence criteria built on them.
//!
//! Everything is exact over `Q` except the final inequality comparisons,
//! which use outward-rounded intervals.

pub mod arith;
pub mod criterion;
pub mod error;
pub mod interval;
pub mod json;
pub mod logexpr;
pub mod mu;
pub mod padic;
pub mod pade;
pub mod phi;
pub mod primes;
pub mod recurrence;
pub mod series;

pub use arith::{parse_rat, Rat};
pub use criterion::{CriterionInput, CriterionVerdict};
pub use error::{Error, Result};
pub use mu::MuValue;
pub use pade::{PadeConfig, PadeSystem};
pub use padic::PAdic;
pub use phi::{PhiFunctional, RSpec};
pub use recurrence::Recurrence;
pub use series::{LaurentSeries, Poly, PowerSeries};
