//! Bayesian logistic regression under independent Normal coefficient priors.

mod data;
mod mcmc;
mod mle;
mod summary;

pub use data::{standardize, Dataset, Standardization};
pub use mcmc::{mh_sample, Chains, McmcConfig, RwmState};
pub(crate) use mcmc::{chain_rng, prior_start};
pub use mle::{logistic_mle, MleFit};
pub use summary::{summarize, CoefficientSummary, PosteriorSummary};

use crate::error::{Error, Result};
use crate::link::softplus;
use crate::prior::PriorSpec;

/// Bernoulli-logit log likelihood Σ[yᵢηᵢ − ln(1 + e^{ηᵢ})], with
/// ηᵢ = β₀ + Σⱼ βⱼ xᵢⱼ and covariates stored by column.
pub fn ln_likelihood(columns: &[Vec<f64>], y: &[u8], beta: &[f64]) -> f64 {
    let mut total = 0.0;
    for (i, &yi) in y.iter().enumerate() {
        let mut eta = beta[0];
        for (col, b) in columns.iter().zip(&beta[1..]) {
            eta += b * col[i];
        }
        total += if yi == 1 { eta } else { 0.0 } - softplus(eta);
    }
    total
}

/// Log likelihood plus the Normal log prior densities.
pub fn log_posterior(beta: &[f64], data: &Dataset, prior: &PriorSpec) -> Result<f64> {
    let dim = data.p() + 1;
    if beta.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: beta.len(),
        });
    }
    if prior.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: prior.dim(),
        });
    }
    Ok(ln_likelihood(&data.columns, &data.y, beta) + prior.ln_density(beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prior::{logistic_matched_priors, vague_priors};
    use crate::rng;
    use rand::Rng;
    use std::f64::consts::PI;

    fn brute_force(beta: &[f64], data: &Dataset, prior: &PriorSpec) -> f64 {
        let mut prod = 1.0f64;
        for i in 0..data.n() {
            let mut eta = beta[0];
            for j in 0..data.p() {
                eta += beta[j + 1] * data.columns[j][i];
            }
            let th = 1.0 / (1.0 + (-eta).exp());
            prod *= if data.y[i] == 1 { th } else { 1.0 - th };
        }
        for (c, b) in prior.coefficients.iter().zip(beta) {
            let d = b - c.mean();
            prod *= (-d * d / (2.0 * c.variance())).exp() / (2.0 * PI * c.variance()).sqrt();
        }
        prod.ln()
    }

    #[test]
    fn empty_data_gives_prior_modes() {
        let data = Dataset::new(vec![vec![]], vec![]).unwrap();
        let prior = logistic_matched_priors(1);
        let lp = log_posterior(&[0.0, 0.0], &data, &prior).unwrap();
        let mode = -0.5 * (2.0 * PI * prior.coefficients[0].variance()).ln();
        assert!((lp - 2.0 * mode).abs() < 1e-14);
        assert_eq!(lp, log_posterior(&[0.0, 0.0], &data, &prior).unwrap());
    }

    #[test]
    fn matches_brute_force_product() {
        let mut r = rng::stream(99, &[]);
        for n in 0..=6usize {
            for p in 0..=2usize {
                let columns: Vec<Vec<f64>> =
                    (0..p).map(|_| (0..n).map(|_| r.random_range(-2.0..2.0)).collect()).collect();
                let y: Vec<u8> = (0..n).map(|_| r.random_range(0..2u8)).collect();
                let data = Dataset::new(columns, y).unwrap();
                for prior in [logistic_matched_priors(p), vague_priors(p, 3.0).unwrap()] {
                    for _ in 0..5 {
                        let beta: Vec<f64> = (0..=p).map(|_| r.random_range(-2.0..2.0)).collect();
                        let lp = log_posterior(&beta, &data, &prior).unwrap();
                        let bf = brute_force(&beta, &data, &prior);
                        assert!((lp - bf).abs() < 1e-12, "n={n} p={p}: {lp} vs {bf}");
                    }
                }
            }
        }
    }

    #[test]
    fn dimension_checks() {
        let data = Dataset::new(vec![vec![0.1, 0.2]], vec![0, 1]).unwrap();
        assert!(matches!(
            log_posterior(&[0.0], &data, &logistic_matched_priors(1)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(log_posterior(&[0.0, 0.0], &data, &logistic_matched_priors(2)).is_err());
    }
}
