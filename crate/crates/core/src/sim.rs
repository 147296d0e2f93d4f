//! Replicated frequentist evaluation of coefficient priors: scenario data
//! generation, MSE against the truth and against the MLE, and credible
//! interval coverage.

use rand::Rng;
use rand_distr::{Distribution, Gamma};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use crate::distributions::BetaShape;
use crate::error::{domain, Error, Result};
use crate::inference::{logistic_mle, mh_sample, standardize, summarize, Dataset, McmcConfig};
use crate::link::expit;
use crate::prior::{
    beta_matched_priors, logistic_matched_priors, vague_priors, weighted_priors, PriorSpec, VAGUE_SD,
};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioId {
    Scenario1,
    Scenario23,
}

/// How the second Gamma parameter is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaParam {
    Rate,
    Scale,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaCovariate {
    pub shape: f64,
    pub second: f64,
}

/// A prior to fit in a study; built per scenario dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PriorChoice {
    Vague { sd: f64 },
    Logistic,
    BetaMatched { target: BetaShape },
    Weighted { target: BetaShape, k: f64 },
}

impl PriorChoice {
    pub fn build(&self, p: usize) -> Result<PriorSpec> {
        match *self {
            PriorChoice::Vague { sd } => vague_priors(p, sd),
            PriorChoice::Logistic => Ok(logistic_matched_priors(p)),
            PriorChoice::BetaMatched { target } => beta_matched_priors(p, target),
            PriorChoice::Weighted { target, k } => weighted_priors(p, target, k),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            PriorChoice::Vague { .. } => "Vague",
            PriorChoice::Logistic => "Logistic",
            PriorChoice::BetaMatched { .. } => "BetaMatched",
            PriorChoice::Weighted { .. } => "Weighted",
        }
    }
}

/// Reference Beta target for the weighted prior (mean 0.7, cv 0.3).
pub fn reference_target() -> BetaShape {
    BetaShape::new(2.633, 1.129).expect("valid shape")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub id: ScenarioId,
    pub n: usize,
    pub true_betas: Vec<f64>,
    pub covariates: Vec<GammaCovariate>,
    pub gamma_param: GammaParam,
    pub priors: Vec<PriorChoice>,
    pub replicates: usize,
    pub master_seed: u64,
    pub mcmc: McmcConfig,
    /// When set, each replicate draws its generating coefficients from this
    /// prior instead of using `true_betas`.
    pub truth_prior: Option<PriorChoice>,
}

impl ScenarioSpec {
    /// One covariate from Gamma(3, 0.2), logit θ = −0.5 + 0.3x.
    pub fn scenario1(n: usize, replicates: usize, master_seed: u64) -> Self {
        Self {
            id: ScenarioId::Scenario1,
            n,
            true_betas: vec![-0.5, 0.3],
            covariates: vec![GammaCovariate { shape: 3.0, second: 0.2 }],
            gamma_param: GammaParam::Rate,
            priors: vec![PriorChoice::Vague { sd: VAGUE_SD }, PriorChoice::Logistic],
            replicates,
            master_seed,
            mcmc: McmcConfig::default(),
            truth_prior: None,
        }
    }

    /// Three covariates from Gamma(10, 2), Gamma(12, 6), Gamma(3, 3),
    /// logit θ = β₀ + 0.3x₁ − 0.6x₂ + 0.02x₃ with β₀ = 1.5 by default.
    pub fn scenario23(n: usize, replicates: usize, master_seed: u64) -> Self {
        Self {
            id: ScenarioId::Scenario23,
            n,
            true_betas: vec![1.5, 0.3, -0.6, 0.02],
            covariates: vec![
                GammaCovariate { shape: 10.0, second: 2.0 },
                GammaCovariate { shape: 12.0, second: 6.0 },
                GammaCovariate { shape: 3.0, second: 3.0 },
            ],
            gamma_param: GammaParam::Rate,
            priors: vec![
                PriorChoice::Vague { sd: VAGUE_SD },
                PriorChoice::Logistic,
                PriorChoice::Weighted {
                    target: reference_target(),
                    k: 0.4,
                },
            ],
            replicates,
            master_seed,
            mcmc: McmcConfig::default(),
            truth_prior: None,
        }
    }

    pub fn p(&self) -> usize {
        self.covariates.len()
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.p();
        if self.true_betas.len() != p + 1 {
            return Err(Error::DimensionMismatch {
                expected: p + 1,
                got: self.true_betas.len(),
            });
        }
        if self.n < p + 2 {
            return Err(domain(format!("sample size {} must be at least p + 2 = {}", self.n, p + 2)));
        }
        if self.replicates == 0 {
            return Err(domain("at least one replicate is required"));
        }
        if self.priors.is_empty() {
            return Err(domain("no priors to compare"));
        }
        for g in &self.covariates {
            if !(g.shape > 0.0 && g.second > 0.0) {
                return Err(domain(format!("invalid Gamma covariate {g:?}")));
            }
        }
        for pc in &self.priors {
            pc.build(p)?;
        }
        self.mcmc.validate()
    }

    /// Parse a flat `key = value` config. Keys: scenario, n, replicates,
    /// seed, intercept, betas, covariates (shape:second;…), gamma_param,
    /// priors (comma list of vague, logistic, beta_matched, weighted),
    /// vague_sd, target_mean + target_cv or target_alpha + target_beta, k,
    /// chains, iterations, burnin. Unset keys keep the scenario defaults.
    pub fn from_config_str(text: &str) -> Result<Self> {
        let mut kv = std::collections::BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| domain(format!("config line {}: expected key = value", lineno + 1)))?;
            kv.insert(k.trim().to_string(), v.trim().to_string());
        }
        let get = |k: &str| kv.get(k).map(String::as_str);
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
            v.parse().map_err(|_| domain(format!("config key {key}: cannot parse {v:?}")))
        }
        let n: usize = get("n").map(|v| num("n", v)).transpose()?.unwrap_or(15);
        let replicates = get("replicates").map(|v| num("replicates", v)).transpose()?.unwrap_or(100);
        let seed = get("seed").map(|v| num("seed", v)).transpose()?.unwrap_or(1);
        let mut spec = match get("scenario").unwrap_or("scenario1") {
            "scenario1" | "1" => Self::scenario1(n, replicates, seed),
            "scenario23" | "scenario2" | "scenario3" | "2" | "3" => Self::scenario23(n, replicates, seed),
            other => return Err(domain(format!("unknown scenario {other:?}"))),
        };
        if let Some(v) = get("betas") {
            spec.true_betas = v
                .split(',')
                .map(|b| num("betas", b.trim()))
                .collect::<Result<_>>()?;
        }
        if let Some(v) = get("intercept") {
            spec.true_betas[0] = num("intercept", v)?;
        }
        if let Some(v) = get("covariates") {
            spec.covariates = v
                .split(';')
                .map(|g| {
                    let (a, b) = g
                        .split_once(':')
                        .ok_or_else(|| domain(format!("covariate {g:?}: expected shape:second")))?;
                    Ok(GammaCovariate {
                        shape: num("covariates", a.trim())?,
                        second: num("covariates", b.trim())?,
                    })
                })
                .collect::<Result<_>>()?;
        }
        if let Some(v) = get("gamma_param") {
            spec.gamma_param = match v {
                "rate" => GammaParam::Rate,
                "scale" => GammaParam::Scale,
                other => return Err(domain(format!("gamma_param must be rate or scale, got {other:?}"))),
            };
        }
        let target = match (get("target_alpha"), get("target_beta"), get("target_mean"), get("target_cv")) {
            (Some(a), Some(b), _, _) => BetaShape::new(num("target_alpha", a)?, num("target_beta", b)?)?,
            (_, _, Some(m), Some(c)) => {
                crate::prior::beta_shapes_from_mean_cv(num("target_mean", m)?, num("target_cv", c)?)?
            }
            _ => reference_target(),
        };
        let k = get("k").map(|v| num("k", v)).transpose()?.unwrap_or(0.4);
        let vague_sd = get("vague_sd").map(|v| num("vague_sd", v)).transpose()?.unwrap_or(VAGUE_SD);
        if let Some(v) = get("priors") {
            spec.priors = v
                .split(',')
                .map(|name| match name.trim() {
                    "vague" => Ok(PriorChoice::Vague { sd: vague_sd }),
                    "logistic" => Ok(PriorChoice::Logistic),
                    "beta_matched" => Ok(PriorChoice::BetaMatched { target }),
                    "weighted" => Ok(PriorChoice::Weighted { target, k }),
                    other => Err(domain(format!("unknown prior kind {other:?}"))),
                })
                .collect::<Result<_>>()?;
        } else {
            for pc in spec.priors.iter_mut() {
                match pc {
                    PriorChoice::Vague { sd } => *sd = vague_sd,
                    PriorChoice::Weighted { target: t, k: kk } => {
                        *t = target;
                        *kk = k;
                    }
                    _ => {}
                }
            }
        }
        if let Some(v) = get("chains") {
            spec.mcmc.chains = num("chains", v)?;
        }
        if let Some(v) = get("iterations") {
            spec.mcmc.iterations = num("iterations", v)?;
        }
        if let Some(v) = get("burnin") {
            spec.mcmc.burnin = num("burnin", v)?;
        }
        let known = [
            "scenario", "n", "replicates", "seed", "intercept", "betas", "covariates", "gamma_param", "priors",
            "vague_sd", "target_mean", "target_cv", "target_alpha", "target_beta", "k", "chains", "iterations",
            "burnin",
        ];
        if let Some(unknown) = kv.keys().find(|k| !known.contains(&k.as_str())) {
            return Err(domain(format!("unknown config key {unknown:?}")));
        }
        spec.validate()?;
        Ok(spec)
    }
}

/// Generating coefficients for one replicate.
fn replicate_truth(spec: &ScenarioSpec, replicate: usize) -> Result<Vec<f64>> {
    match &spec.truth_prior {
        None => Ok(spec.true_betas.clone()),
        Some(pc) => {
            let prior = pc.build(spec.p())?;
            let mut r = rng::stream(spec.master_seed, &[replicate as u64, 2]);
            Ok(prior.coefficients.iter().map(|c| c.sample(&mut r)).collect())
        }
    }
}

/// Dataset for one replicate, deterministic in (master_seed, replicate).
pub fn generate_scenario(spec: &ScenarioSpec, replicate: usize) -> Result<Dataset> {
    spec.validate()?;
    let truth = replicate_truth(spec, replicate)?;
    let gammas: Vec<Gamma<f64>> = spec
        .covariates
        .iter()
        .map(|g| {
            let scale = match spec.gamma_param {
                GammaParam::Rate => 1.0 / g.second,
                GammaParam::Scale => g.second,
            };
            Gamma::new(g.shape, scale).map_err(|e| domain(format!("Gamma covariate: {e}")))
        })
        .collect::<Result<_>>()?;
    for attempt in 0u64.. {
        let mut r = rng::stream(spec.master_seed, &[replicate as u64, 0, attempt]);
        let raw: Vec<Vec<f64>> = gammas
            .iter()
            .map(|g| (0..spec.n).map(|_| g.sample(&mut r)).collect())
            .collect();
        let columns = match standardize(&raw) {
            Ok((c, _)) => c,
            Err(Error::ConstantColumn(j)) => {
                log::warn!("replicate {replicate}: covariate {j} constant on attempt {attempt}, redrawing");
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut data = Dataset::new(columns, vec![0; spec.n])?;
        for i in 0..spec.n {
            let theta = expit(data.linear_predictor(i, &truth));
            data.y[i] = (r.random::<f64>() < theta) as u8;
        }
        data.standardized = true;
        data.truth = Some(truth);
        data.seed = Some(rng::derive_key(spec.master_seed, &[replicate as u64, 0, attempt]));
        return Ok(data);
    }
    unreachable!("attempt counter is unbounded")
}

/// Comparison target for [`mse`].
#[derive(Debug, Clone, Copy)]
pub enum MseTarget<'a> {
    Value(f64),
    PerReplicate(&'a [f64]),
}

/// Mean squared deviation of per-replicate estimates from a target.
pub fn mse(estimates: &[f64], target: MseTarget<'_>) -> Result<f64> {
    if estimates.is_empty() {
        return Err(domain("mse of an empty set of estimates"));
    }
    let total: f64 = match target {
        MseTarget::Value(t) => estimates.iter().map(|e| (e - t).powi(2)).sum(),
        MseTarget::PerReplicate(ts) => {
            if ts.len() != estimates.len() {
                return Err(Error::DimensionMismatch {
                    expected: estimates.len(),
                    got: ts.len(),
                });
            }
            estimates.iter().zip(ts).map(|(e, t)| (e - t).powi(2)).sum()
        }
    };
    Ok(total / estimates.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientReport {
    /// MSE of posterior means against the MLE; None if no replicate had a
    /// converged MLE.
    pub mse_star: Option<f64>,
    pub mse: f64,
    pub coverage: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriorReport {
    pub label: String,
    pub prior: PriorChoice,
    pub coefficients: Vec<CoefficientReport>,
    pub avg_posterior_mean: Vec<f64>,
    pub max_rhat: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub scenario: ScenarioId,
    pub n: usize,
    pub replicates: usize,
    pub master_seed: u64,
    /// Generating coefficients (fixed-truth studies) or their average.
    pub truth: Vec<f64>,
    /// Replicates without a converged MLE (dropped from MSE* only).
    pub mle_excluded: usize,
    /// Average MLE over replicates with a converged fit.
    pub avg_mle: Vec<f64>,
    pub priors: Vec<PriorReport>,
}

impl SimulationReport {
    pub fn prior(&self, label: &str) -> Option<&PriorReport> {
        self.priors.iter().find(|p| p.label == label)
    }

    /// Average over coefficients of MSE(a) − MSE(b).
    pub fn mse_gap(&self, a: &str, b: &str) -> Option<f64> {
        let (ra, rb) = (self.prior(a)?, self.prior(b)?);
        let d = ra.coefficients.len() as f64;
        Some(
            ra.coefficients
                .iter()
                .zip(&rb.coefficients)
                .map(|(x, y)| x.mse - y.mse)
                .sum::<f64>()
                / d,
        )
    }

    /// Table layout: Parameter, Truth, then MSE*, MSE, Cov for each prior.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("Parameter,Truth");
        for p in &self.priors {
            write!(out, ",{0} MSE*,{0} MSE,{0} Cov", p.label).unwrap();
        }
        out.push('\n');
        for j in 0..self.truth.len() {
            write!(out, "beta{j},{}", self.truth[j]).unwrap();
            for p in &self.priors {
                let c = &p.coefficients[j];
                let star = c.mse_star.map(|v| format!("{v:.6}")).unwrap_or_else(|| "NA".into());
                write!(out, ",{star},{:.6},{:.4}", c.mse, c.coverage).unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Average MLEs and posterior means: Parameter, Truth, MLE, then one
    /// column per prior.
    pub fn summaries_csv(&self) -> String {
        let mut out = String::from("Parameter,Truth,MLE");
        for p in &self.priors {
            write!(out, ",{}", p.label).unwrap();
        }
        out.push('\n');
        for j in 0..self.truth.len() {
            write!(out, "beta{j},{},{:.6}", self.truth[j], self.avg_mle[j]).unwrap();
            for p in &self.priors {
                write!(out, ",{:.6}", p.avg_posterior_mean[j]).unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct ReplicateOutcome {
    truth: Vec<f64>,
    mle: Option<Vec<f64>>,
    /// Per prior: posterior means, interval-covers-truth flags, max R-hat.
    fits: Vec<(Vec<f64>, Vec<bool>, f64)>,
}

fn run_replicate(spec: &ScenarioSpec, priors: &[PriorSpec], replicate: usize) -> Result<ReplicateOutcome> {
    let data = generate_scenario(spec, replicate)?;
    let truth = data.truth.clone().expect("generated data carries truth");
    let mle_fit = logistic_mle(&data)?;
    if !mle_fit.converged {
        log::info!("replicate {replicate}: MLE did not converge (separation); excluded from MSE*");
    }
    let mle = mle_fit.converged.then_some(mle_fit.coefficients);
    let fits = priors
        .iter()
        .enumerate()
        .map(|(k, prior)| {
            let seed = rng::derive_key(spec.master_seed, &[replicate as u64, 1, k as u64]);
            let chains = mh_sample(&data, prior, &spec.mcmc, seed)?;
            let summary = summarize(&chains)?;
            let covers = summary
                .coefficients
                .iter()
                .zip(&truth)
                .map(|(c, t)| c.covers(*t))
                .collect();
            Ok((summary.means(), covers, summary.max_rhat()))
        })
        .collect::<Result<_>>()?;
    Ok(ReplicateOutcome { truth, mle, fits })
}

/// Fit every replicate under every prior and aggregate MSE*, MSE and
/// coverage. Replicates run in parallel; each derives its RNG from
/// (master_seed, replicate, prior index), so the report is
/// schedule-independent.
pub fn run_study(spec: &ScenarioSpec) -> Result<SimulationReport> {
    spec.validate()?;
    let p = spec.p();
    let priors: Vec<PriorSpec> = spec.priors.iter().map(|pc| pc.build(p)).collect::<Result<_>>()?;
    let outcomes: Vec<ReplicateOutcome> = (0..spec.replicates)
        .into_par_iter()
        .map(|r| run_replicate(spec, &priors, r))
        .collect::<Result<_>>()?;

    let dim = p + 1;
    let reps = outcomes.len();
    let converged: Vec<&ReplicateOutcome> = outcomes.iter().filter(|o| o.mle.is_some()).collect();
    let avg_mle = (0..dim)
        .map(|j| {
            if converged.is_empty() {
                f64::NAN
            } else {
                converged.iter().map(|o| o.mle.as_ref().unwrap()[j]).sum::<f64>() / converged.len() as f64
            }
        })
        .collect();
    let truth: Vec<f64> = match spec.truth_prior {
        None => spec.true_betas.clone(),
        Some(_) => (0..dim)
            .map(|j| outcomes.iter().map(|o| o.truth[j]).sum::<f64>() / reps as f64)
            .collect(),
    };

    let mut reports = Vec::with_capacity(priors.len());
    for (k, choice) in spec.priors.iter().enumerate() {
        let mut coefficients = Vec::with_capacity(dim);
        let mut avg_posterior_mean = Vec::with_capacity(dim);
        for j in 0..dim {
            let est: Vec<f64> = outcomes.iter().map(|o| o.fits[k].0[j]).collect();
            let tru: Vec<f64> = outcomes.iter().map(|o| o.truth[j]).collect();
            let est_conv: Vec<f64> = converged.iter().map(|o| o.fits[k].0[j]).collect();
            let mle_conv: Vec<f64> = converged.iter().map(|o| o.mle.as_ref().unwrap()[j]).collect();
            let mse_star = if est_conv.is_empty() {
                None
            } else {
                Some(mse(&est_conv, MseTarget::PerReplicate(&mle_conv))?)
            };
            let covered = outcomes.iter().filter(|o| o.fits[k].1[j]).count();
            coefficients.push(CoefficientReport {
                mse_star,
                mse: mse(&est, MseTarget::PerReplicate(&tru))?,
                coverage: covered as f64 / reps as f64,
            });
            avg_posterior_mean.push(est.iter().sum::<f64>() / reps as f64);
        }
        reports.push(PriorReport {
            label: choice.label().to_string(),
            prior: *choice,
            coefficients,
            avg_posterior_mean,
            max_rhat: outcomes.iter().map(|o| o.fits[k].2).fold(f64::NEG_INFINITY, f64::max),
        });
    }
    Ok(SimulationReport {
        scenario: spec.id,
        n: spec.n,
        replicates: reps,
        master_seed: spec.master_seed,
        truth,
        mle_excluded: reps - converged.len(),
        avg_mle,
        priors: reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(mut spec: ScenarioSpec) -> ScenarioSpec {
        spec.mcmc = McmcConfig {
            chains: 2,
            iterations: 2200,
            burnin: 1000,
        };
        spec
    }

    #[test]
    fn mse_arithmetic() {
        assert_eq!(mse(&[2.0, 2.0], MseTarget::Value(2.0)).unwrap(), 0.0);
        assert_eq!(mse(&[1.0, 3.0], MseTarget::Value(2.0)).unwrap(), 1.0);
        let m = [0.3, -1.2, 4.0];
        assert_eq!(mse(&m, MseTarget::PerReplicate(&m)).unwrap(), 0.0);
        assert!(mse(&m, MseTarget::PerReplicate(&m[..2])).is_err());
        assert!(mse(&[], MseTarget::Value(0.0)).is_err());
    }

    #[test]
    fn scenario1_dataset_shape() {
        let spec = ScenarioSpec::scenario1(15, 1, 42);
        let d = generate_scenario(&spec, 0).unwrap();
        assert_eq!((d.n(), d.p()), (15, 1));
        assert!(d.standardized);
        assert!(crate::stats::mean(&d.columns[0]).abs() < 1e-10);
        assert!((crate::stats::sd(&d.columns[0]) - 1.0).abs() < 1e-10);
        assert_eq!(d, generate_scenario(&spec, 0).unwrap());
        assert_ne!(d, generate_scenario(&spec, 1).unwrap());
    }

    #[test]
    fn scenario23_theta_band() {
        let spec = ScenarioSpec::scenario23(100, 1, 3);
        let d = generate_scenario(&spec, 0).unwrap();
        let thetas: Vec<f64> = (0..d.n()).map(|i| expit(d.linear_predictor(i, &spec.true_betas))).collect();
        let lo = thetas.iter().copied().fold(1.0, f64::min);
        let hi = thetas.iter().copied().fold(0.0, f64::max);
        assert!(lo > 0.15 && hi < 0.99, "theta range ({lo}, {hi})");
    }

    #[test]
    fn validation() {
        let mut s = ScenarioSpec::scenario1(2, 1, 0);
        assert!(s.validate().is_err());
        s.n = 3;
        assert!(s.validate().is_ok());
        s.replicates = 0;
        assert!(s.validate().is_err());
        let mut s = ScenarioSpec::scenario23(30, 1, 0);
        s.true_betas.pop();
        assert!(s.validate().is_err());
    }

    #[test]
    fn single_replicate_report() {
        let spec = quick(ScenarioSpec::scenario1(15, 1, 8));
        let r = run_study(&spec).unwrap();
        assert_eq!(r.priors.len(), 2);
        for p in &r.priors {
            for c in &p.coefficients {
                assert!(c.coverage == 0.0 || c.coverage == 1.0);
                assert!(c.mse >= 0.0);
            }
        }
        let csv = r.to_csv();
        assert!(csv.starts_with("Parameter,Truth,Vague MSE*,Vague MSE,Vague Cov,Logistic MSE*"));
        assert_eq!(csv.lines().count(), 3);
    }

    #[test]
    fn reports_are_deterministic() {
        let spec = quick(ScenarioSpec::scenario1(15, 4, 21));
        let a = run_study(&spec).unwrap().to_json();
        let b = run_study(&spec).unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn config_parsing() {
        let cfg = "# scenario 1 at n = 15\nscenario = scenario1\nn = 15\nreplicates = 100\nseed = 11\n";
        let s = ScenarioSpec::from_config_str(cfg).unwrap();
        assert_eq!((s.n, s.replicates, s.master_seed), (15, 100, 11));
        assert_eq!(s.true_betas, vec![-0.5, 0.3]);
        let s = ScenarioSpec::from_config_str("scenario = scenario23\nn = 50\nintercept = 1.1\npriors = vague,weighted\nk = 0.3\n").unwrap();
        assert_eq!(s.true_betas[0], 1.1);
        assert!(matches!(s.priors[1], PriorChoice::Weighted { k, .. } if k == 0.3));
        assert!(ScenarioSpec::from_config_str("bogus = 1").is_err());
        assert!(ScenarioSpec::from_config_str("n = abc").is_err());
        assert!(ScenarioSpec::from_config_str("priors = flat").is_err());
        let s = ScenarioSpec::from_config_str("gamma_param = scale\ncovariates = 3:5").unwrap();
        assert_eq!(s.gamma_param, GammaParam::Scale);
    }
}
