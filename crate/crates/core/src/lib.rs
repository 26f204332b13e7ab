//! Exact moment generating series for spectra of isolated hypersurface
//! singularities and Hodge data of manifolds, generalized Bernoulli
//! polynomials, and the sign checks built on top of them.

pub mod bernoulli;
pub mod bernoulli_poly;
pub mod chern;
pub mod cli;
pub mod harness;
pub mod moments;
pub mod poly;
pub mod rational;
pub mod series;
pub mod spectra;

pub use rational::Rational;
pub use series::TruncatedSeries;
pub use cli::{run_cli, run_cli_with};
