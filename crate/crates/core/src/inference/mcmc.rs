//! Adaptive random-walk Metropolis.
//!
//! Each chain proposes a joint move with independent Normal increments
//! (diagonal proposal). During burn-in a global log-scale follows a
//! Robbins–Monro recursion toward 30% acceptance, and halfway through
//! burn-in the per-coordinate scales are reset to the empirical sds of the
//! second burn-in quarter. Everything is frozen once burn-in ends, so the
//! kept draws come from a fixed symmetric kernel.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ln_likelihood, Dataset};
use crate::error::{Error, Result};
use crate::prior::PriorSpec;
use crate::rng::{self, StreamRng};

const TARGET_ACCEPT: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McmcConfig {
    pub chains: usize,
    /// Total iterations per chain, burn-in included.
    pub iterations: usize,
    pub burnin: usize,
}

impl Default for McmcConfig {
    fn default() -> Self {
        Self {
            chains: 4,
            iterations: 5000,
            burnin: 2000,
        }
    }
}

impl McmcConfig {
    pub fn validate(&self) -> Result<()> {
        if self.chains == 0 {
            return Err(Error::Domain("at least one chain is required".into()));
        }
        if self.iterations <= self.burnin {
            return Err(Error::Domain(format!(
                "iterations ({}) must exceed burn-in ({})",
                self.iterations, self.burnin
            )));
        }
        Ok(())
    }

    pub fn kept(&self) -> usize {
        self.iterations - self.burnin
    }
}

/// State of one adaptive random-walk chain.
#[derive(Debug, Clone)]
pub struct RwmState {
    pub current: Vec<f64>,
    ln_current: f64,
    scales: Vec<f64>,
    log_factor: f64,
    burnin: usize,
    iteration: usize,
    accepted_kept: usize,
    /// Burn-in draws from the second quarter, for scale estimation.
    window: Vec<Vec<f64>>,
    proposal: Vec<f64>,
}

impl RwmState {
    pub fn new<F: Fn(&[f64]) -> f64>(init: Vec<f64>, scales: Vec<f64>, burnin: usize, target: F) -> Self {
        let d = init.len();
        let ln_current = target(&init);
        Self {
            ln_current,
            proposal: vec![0.0; d],
            current: init,
            scales,
            log_factor: (2.38 / (d as f64).sqrt()).ln(),
            burnin,
            iteration: 0,
            accepted_kept: 0,
            window: Vec::new(),
        }
    }

    /// Recompute the cached target value (after the target itself changed).
    pub fn refresh<F: Fn(&[f64]) -> f64>(&mut self, target: F) {
        self.ln_current = target(&self.current);
    }

    pub fn ln_current(&self) -> f64 {
        self.ln_current
    }

    /// One Metropolis step; returns whether the proposal was accepted.
    pub fn step<F: Fn(&[f64]) -> f64>(&mut self, target: F, rng: &mut StreamRng) -> bool {
        let factor = self.log_factor.exp();
        for ((p, c), s) in self.proposal.iter_mut().zip(&self.current).zip(&self.scales) {
            let z: f64 = rng.sample(StandardNormal);
            *p = c + factor * s * z;
        }
        let ln_prop = target(&self.proposal);
        let u: f64 = rng.random();
        let log_ratio = ln_prop - self.ln_current;
        // NaN proposals are rejected; -inf current accepts any finite proposal
        let accept = ln_prop.is_finite() && (log_ratio >= 0.0 || u.ln() < log_ratio);
        if accept {
            std::mem::swap(&mut self.current, &mut self.proposal);
            self.ln_current = ln_prop;
        }
        self.adapt(accept);
        self.iteration += 1;
        accept
    }

    fn adapt(&mut self, accept: bool) {
        let it = self.iteration;
        if it >= self.burnin {
            if accept {
                self.accepted_kept += 1;
            }
            return;
        }
        let gain = if 2 * it < self.burnin { 0.1 } else { 0.02 };
        self.log_factor += gain * (accept as u8 as f64 - TARGET_ACCEPT);
        if 4 * it >= self.burnin && 2 * it < self.burnin {
            self.window.push(self.current.clone());
        }
        if it + 1 == self.burnin / 2 && self.window.len() >= 20 {
            let d = self.current.len();
            for j in 0..d {
                let col: Vec<f64> = self.window.iter().map(|w| w[j]).collect();
                let s = crate::stats::sd(&col);
                if s.is_finite() && s > 0.0 {
                    self.scales[j] = s;
                }
            }
            self.log_factor = (2.38 / (d as f64).sqrt()).ln();
            self.window = Vec::new();
        }
    }

    /// Acceptance rate after burn-in.
    pub fn acceptance(&self) -> f64 {
        let kept = self.iteration.saturating_sub(self.burnin);
        if kept == 0 {
            0.0
        } else {
            self.accepted_kept as f64 / kept as f64
        }
    }
}

/// Draws for several chains: `draws[chain][iteration * dim + coefficient]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Chains {
    pub dim: usize,
    pub iterations: usize,
    pub burnin: usize,
    pub seed: u64,
    pub draws: Vec<Vec<f64>>,
    pub acceptance: Vec<f64>,
}

impl Chains {
    pub fn n_chains(&self) -> usize {
        self.draws.len()
    }

    pub fn draw(&self, chain: usize, iteration: usize) -> &[f64] {
        &self.draws[chain][iteration * self.dim..(iteration + 1) * self.dim]
    }

    /// Post-burn-in values of one coefficient in one chain.
    pub fn kept(&self, chain: usize, coefficient: usize) -> Vec<f64> {
        (self.burnin..self.iterations)
            .map(|i| self.draws[chain][i * self.dim + coefficient])
            .collect()
    }

    /// Post-burn-in values of one coefficient pooled over chains.
    pub fn pooled(&self, coefficient: usize) -> Vec<f64> {
        (0..self.n_chains()).flat_map(|c| self.kept(c, coefficient)).collect()
    }

    /// CSV of post-burn-in draws: `chain,iteration,b0,…,bp`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("chain,iteration");
        for j in 0..self.dim {
            out.push_str(&format!(",b{j}"));
        }
        out.push('\n');
        for c in 0..self.n_chains() {
            for i in self.burnin..self.iterations {
                out.push_str(&format!("{c},{i}"));
                for v in self.draw(c, i) {
                    out.push_str(&format!(",{v}"));
                }
                out.push('\n');
            }
        }
        out
    }
}

/// Initial state and proposal scales for a chain: a prior draw, and prior
/// sds capped at 2.
pub(crate) fn prior_start(prior: &PriorSpec, rng: &mut StreamRng) -> (Vec<f64>, Vec<f64>) {
    let init = prior.coefficients.iter().map(|c| c.sample(rng)).collect();
    let scales = prior.coefficients.iter().map(|c| c.sd().min(2.0)).collect();
    (init, scales)
}

/// Chain `c` under `seed` runs on substream `[c]`.
pub(crate) fn chain_rng(seed: u64, chain: usize) -> StreamRng {
    rng::stream(seed, &[chain as u64])
}

/// Posterior sampling for logistic regression; chains run in parallel on
/// independent substreams, so output does not depend on scheduling.
pub fn mh_sample(data: &Dataset, prior: &PriorSpec, config: &McmcConfig, seed: u64) -> Result<Chains> {
    config.validate()?;
    let dim = data.p() + 1;
    if prior.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: prior.dim(),
        });
    }
    let target = |b: &[f64]| ln_likelihood(&data.columns, &data.y, b) + prior.ln_density(b);
    let results: Vec<(Vec<f64>, f64)> = (0..config.chains)
        .into_par_iter()
        .map(|c| {
            let mut rng = chain_rng(seed, c);
            let (init, scales) = prior_start(prior, &mut rng);
            let mut state = RwmState::new(init, scales, config.burnin, target);
            let mut draws = Vec::with_capacity(config.iterations * dim);
            for _ in 0..config.iterations {
                state.step(target, &mut rng);
                draws.extend_from_slice(&state.current);
            }
            (draws, state.acceptance())
        })
        .collect();
    let (draws, acceptance) = results.into_iter().unzip();
    Ok(Chains {
        dim,
        iterations: config.iterations,
        burnin: config.burnin,
        seed,
        draws,
        acceptance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prior::logistic_matched_priors;
    use crate::stats::{ks_statistic, mean, sd};

    #[test]
    fn config_validation() {
        assert!(McmcConfig { chains: 0, ..Default::default() }.validate().is_err());
        assert!(McmcConfig { chains: 1, iterations: 10, burnin: 10 }.validate().is_err());
        assert!(McmcConfig::default().validate().is_ok());
    }

    #[test]
    fn deterministic_given_seed() {
        let data = Dataset::new(vec![vec![0.5, -1.0, 1.5]], vec![1, 0, 1]).unwrap();
        let prior = logistic_matched_priors(1);
        let cfg = McmcConfig { chains: 3, iterations: 400, burnin: 100 };
        let a = mh_sample(&data, &prior, &cfg, 5).unwrap();
        let b = mh_sample(&data, &prior, &cfg, 5).unwrap();
        assert_eq!(a, b);
        let c = mh_sample(&data, &prior, &cfg, 6).unwrap();
        assert_ne!(a.draws, c.draws);
    }

    #[test]
    fn prior_recovery_without_data() {
        let data = Dataset::new(vec![vec![]], vec![]).unwrap();
        let prior = logistic_matched_priors(1);
        let cfg = McmcConfig { chains: 4, iterations: 22_000, burnin: 2000 };
        let chains = mh_sample(&data, &prior, &cfg, 12).unwrap();
        let sd_prior = prior.coefficients[0].sd();
        for j in 0..2 {
            let xs = chains.pooled(j);
            // crude effective sample size from lag-1 autocorrelation
            let m = mean(&xs);
            let s2 = sd(&xs).powi(2);
            let rho = xs.windows(2).map(|w| (w[0] - m) * (w[1] - m)).sum::<f64>() / ((xs.len() - 1) as f64 * s2);
            let ess = xs.len() as f64 * (1.0 - rho) / (1.0 + rho);
            let mcse = sd_prior / ess.sqrt();
            assert!(m.abs() < 3.0 * mcse, "coef {j}: mean {m}, mcse {mcse}");
            assert!((sd(&xs) / sd_prior - 1.0).abs() < 0.05);
            // thinned draws against the prior cdf
            let thin: Vec<f64> = xs.iter().step_by(40).copied().collect();
            let normal = statrs::distribution::Normal::new(0.0, sd_prior).unwrap();
            use statrs::distribution::ContinuousCDF;
            let d = ks_statistic(&thin, |x| normal.cdf(x));
            assert!(d < 1.63 / (thin.len() as f64).sqrt(), "KS {d}");
        }
        for a in &chains.acceptance {
            assert!((0.15..0.5).contains(a), "acceptance {a}");
        }
    }
}
