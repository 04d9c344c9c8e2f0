//! Polynomials, truncated power series in z, truncated Laurent series in
//! 1/z, Bernoulli and Stirling numbers, and the Laplace/Mellin transforms.

mod bernoulli;
mod laurent;
mod poly;
mod power;
mod transforms;

pub use bernoulli::{bernoulli_numbers, bernoulli_poly, stirling2, Bernoulli};
pub use laurent::{inv_pochhammer, LaurentSeries};
pub use poly::Poly;
pub use power::PowerSeries;
pub use transforms::{laplace, mellin_hat, mellin_inv};
