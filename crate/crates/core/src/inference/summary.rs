use serde::{Deserialize, Serialize};
use std::fmt;

use super::Chains;
use crate::error::{Error, Result};
use crate::stats::{mean, quantile_sorted, sd, sorted, variance};

/// Minimum post-burn-in draws per chain for a summary.
pub const MIN_KEPT: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSummary {
    pub mean: f64,
    pub sd: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub map: f64,
    pub rhat: f64,
}

impl CoefficientSummary {
    pub fn covers(&self, x: f64) -> bool {
        self.ci_low <= x && x <= self.ci_high
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PosteriorSummary {
    pub coefficients: Vec<CoefficientSummary>,
}

impl PosteriorSummary {
    pub fn means(&self) -> Vec<f64> {
        self.coefficients.iter().map(|c| c.mean).collect()
    }

    pub fn max_rhat(&self) -> f64 {
        self.coefficients.iter().map(|c| c.rhat).fold(f64::NEG_INFINITY, f64::max)
    }

    /// CSV: `parameter,mean,sd,ci_low,ci_high,map,rhat`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("parameter,mean,sd,ci_low,ci_high,map,rhat\n");
        for (j, c) in self.coefficients.iter().enumerate() {
            out.push_str(&format!(
                "b{j},{},{},{},{},{},{}\n",
                c.mean, c.sd, c.ci_low, c.ci_high, c.map, c.rhat
            ));
        }
        out
    }
}

impl fmt::Display for PosteriorSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<6} {:>9} {:>9} {:>20} {:>9} {:>7}",
            "param", "mean", "sd", "95% CI", "MAP", "R-hat"
        )?;
        for (j, c) in self.coefficients.iter().enumerate() {
            writeln!(
                f,
                "{:<6} {:>9.4} {:>9.4} {:>20} {:>9.4} {:>7.4}",
                format!("b{j}"),
                c.mean,
                c.sd,
                format!("({:.3}, {:.3})", c.ci_low, c.ci_high),
                c.map,
                c.rhat
            )?;
        }
        Ok(())
    }
}

/// Mode estimate: midpoint of the fullest histogram bin, Freedman–Diaconis
/// bin width. Ties go to the leftmost bin.
pub fn histogram_mode(sorted_draws: &[f64]) -> f64 {
    let n = sorted_draws.len();
    let lo = sorted_draws[0];
    let hi = sorted_draws[n - 1];
    let iqr = quantile_sorted(sorted_draws, 0.75) - quantile_sorted(sorted_draws, 0.25);
    if !(iqr > 0.0) || hi <= lo {
        return quantile_sorted(sorted_draws, 0.5);
    }
    let width = 2.0 * iqr / (n as f64).cbrt();
    let bins = (((hi - lo) / width).ceil() as usize).clamp(1, 100_000);
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for &x in sorted_draws {
        counts[(((x - lo) / width) as usize).min(bins - 1)] += 1;
    }
    let best = counts
        .iter()
        .enumerate()
        .fold((0, 0), |acc, (i, &c)| if c > acc.1 { (i, c) } else { acc })
        .0;
    lo + (best as f64 + 0.5) * width
}

/// Split-chain potential scale reduction. Constant draws give 1.
pub fn split_rhat(chains: &[Vec<f64>]) -> f64 {
    let mut halves = Vec::with_capacity(2 * chains.len());
    for c in chains {
        let h = c.len() / 2;
        halves.push(&c[..h]);
        halves.push(&c[c.len() - h..]);
    }
    let n = halves[0].len() as f64;
    let means: Vec<f64> = halves.iter().map(|h| mean(h)).collect();
    let w = halves.iter().map(|h| variance(h)).sum::<f64>() / halves.len() as f64;
    let b = n * variance(&means);
    if !(w > 0.0) {
        return if b > 0.0 { f64::INFINITY } else { 1.0 };
    }
    let var_plus = (n - 1.0) / n * w + b / n;
    (var_plus / w).sqrt()
}

/// Posterior mean, sd, equal-tailed 95% interval, histogram MAP and split
/// R-hat for each coefficient, from post-burn-in draws.
pub fn summarize(chains: &Chains) -> Result<PosteriorSummary> {
    let kept = chains.iterations - chains.burnin;
    if kept < MIN_KEPT {
        return Err(Error::TooFewDraws {
            needed: MIN_KEPT,
            got: kept,
        });
    }
    let coefficients = (0..chains.dim)
        .map(|j| {
            let per_chain: Vec<Vec<f64>> = (0..chains.n_chains()).map(|c| chains.kept(c, j)).collect();
            let pooled: Vec<f64> = per_chain.concat();
            let s = sorted(&pooled);
            CoefficientSummary {
                mean: mean(&pooled),
                sd: sd(&pooled),
                ci_low: quantile_sorted(&s, 0.025),
                ci_high: quantile_sorted(&s, 0.975),
                map: histogram_mode(&s),
                rhat: split_rhat(&per_chain),
            }
        })
        .collect();
    Ok(PosteriorSummary { coefficients })
}
