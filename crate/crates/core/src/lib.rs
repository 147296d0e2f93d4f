//! Priors for logistic-regression coefficients that induce a chosen
//! distribution (Uniform or Beta) on the Bernoulli success probability,
//! together with the machinery to check them: induced-density transforms,
//! moment matching, generating-function inversion, Bayesian fitting and
//! replicated simulation studies.

pub mod distributions;
pub mod error;
pub mod eta_moments;
pub mod genfunc;
pub mod induced;
pub mod inference;
pub mod link;
pub mod occupancy;
pub mod output;
pub mod prior;
pub mod quadrature;
pub mod rng;
pub mod sim;
pub mod special;
pub mod stats;

pub use distributions::{BetaShape, LogisticParams, NormalParams};
pub use error::{Error, Result};
pub use eta_moments::EtaMoments;
pub use prior::{PriorKind, PriorSpec};
