//! Single-season occupancy model on synthetic data: latent presence
//! z ~ Bernoulli(ψ), detections y | z ~ Bernoulli(p·z), both probabilities
//! logit-linear in standardized covariates.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use crate::error::{domain, Error, Result};
use crate::induced::{theta_pushforward, CovariateSource, Pushforward};
use crate::inference::{ln_likelihood, standardize, summarize, Chains, McmcConfig, PosteriorSummary, RwmState};
use crate::inference::{chain_rng, prior_start};
use crate::link::{expit, softplus};
use crate::prior::PriorSpec;
use crate::rng;

/// Prior sd of the spOcc default coefficient prior, Normal(0, 1.65²).
pub const SPOCC_PRIOR_SD: f64 = 1.65;

/// Site covariates `w` (q columns of length `sites`), visit covariates `v`
/// (r columns of length `sites·visits`, indexed `i·visits + j`), and
/// detections `y` in the same site-major layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OccupancyData {
    pub sites: usize,
    pub visits: usize,
    pub w: Vec<Vec<f64>>,
    pub v: Vec<Vec<f64>>,
    pub y: Vec<u8>,
    pub z_true: Option<Vec<u8>>,
}

impl OccupancyData {
    pub fn new(sites: usize, visits: usize, w: Vec<Vec<f64>>, v: Vec<Vec<f64>>, y: Vec<u8>) -> Result<Self> {
        if visits == 0 {
            return Err(domain("at least one visit per site is required"));
        }
        if let Some(c) = w.iter().find(|c| c.len() != sites) {
            return Err(Error::DimensionMismatch { expected: sites, got: c.len() });
        }
        let cells = sites * visits;
        if let Some(c) = v.iter().find(|c| c.len() != cells) {
            return Err(Error::DimensionMismatch { expected: cells, got: c.len() });
        }
        if y.len() != cells {
            return Err(Error::DimensionMismatch { expected: cells, got: y.len() });
        }
        if y.iter().any(|&b| b > 1) {
            return Err(domain("detections must be 0 or 1"));
        }
        Ok(Self { sites, visits, w, v, y, z_true: None })
    }

    pub fn q(&self) -> usize {
        self.w.len()
    }

    pub fn r(&self) -> usize {
        self.v.len()
    }

    pub fn detected(&self, site: usize) -> bool {
        self.y[site * self.visits..(site + 1) * self.visits].contains(&1)
    }

    /// Fraction of sites with at least one detection.
    pub fn naive_occupancy(&self) -> f64 {
        if self.sites == 0 {
            return f64::NAN;
        }
        (0..self.sites).filter(|&i| self.detected(i)).count() as f64 / self.sites as f64
    }

    pub fn site_row(&self, site: usize) -> Vec<f64> {
        self.w.iter().map(|c| c[site]).collect()
    }

    pub fn visit_row(&self, site: usize, visit: usize) -> Vec<f64> {
        self.v.iter().map(|c| c[site * self.visits + visit]).collect()
    }

    /// Sites file: `site,z_true,w1..wq` (z_true blank when unknown).
    pub fn sites_csv(&self) -> String {
        let mut out = String::from("site,z_true");
        for k in 1..=self.q() {
            write!(out, ",w{k}").unwrap();
        }
        out.push('\n');
        for i in 0..self.sites {
            let z = self.z_true.as_ref().map(|z| z[i].to_string()).unwrap_or_default();
            write!(out, "{i},{z}").unwrap();
            for c in &self.w {
                write!(out, ",{}", c[i]).unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Detections file: `site,visit,y,v1..vr`.
    pub fn detections_csv(&self) -> String {
        let mut out = String::from("site,visit,y");
        for k in 1..=self.r() {
            write!(out, ",v{k}").unwrap();
        }
        out.push('\n');
        for i in 0..self.sites {
            for j in 0..self.visits {
                let idx = i * self.visits + j;
                write!(out, "{i},{j},{}", self.y[idx]).unwrap();
                for c in &self.v {
                    write!(out, ",{}", c[idx]).unwrap();
                }
                out.push('\n');
            }
        }
        out
    }
}

fn standard_normal_columns(count: usize, len: usize, rng: &mut rng::StreamRng) -> Vec<Vec<f64>> {
    let raw: Vec<Vec<f64>> = (0..count)
        .map(|_| (0..len).map(|_| rng.sample(StandardNormal)).collect())
        .collect();
    // a single row cannot be standardized; keep the raw draws then
    match standardize(&raw) {
        Ok((cols, _)) => cols,
        Err(_) => raw,
    }
}

/// Simulate sites with standard-normal (then standardized) covariates:
/// q = psi_betas.len() − 1 site covariates and r = det_betas.len() − 1
/// visit covariates.
pub fn simulate_occupancy(
    psi_betas: &[f64],
    det_betas: &[f64],
    sites: usize,
    visits: usize,
    seed: u64,
) -> Result<OccupancyData> {
    if sites == 0 || visits == 0 {
        return Err(domain("need at least one site and one visit"));
    }
    if psi_betas.is_empty() || det_betas.is_empty() {
        return Err(domain("coefficient vectors must include an intercept"));
    }
    let mut cov_rng = rng::stream(seed, &[0]);
    let w = standard_normal_columns(psi_betas.len() - 1, sites, &mut cov_rng);
    let v = standard_normal_columns(det_betas.len() - 1, sites * visits, &mut cov_rng);
    let eta = |b: &[f64], cols: &[Vec<f64>], idx: usize| b[0] + cols.iter().zip(&b[1..]).map(|(c, b)| b * c[idx]).sum::<f64>();

    let mut z_rng = rng::stream(seed, &[1]);
    let z: Vec<u8> = (0..sites)
        .map(|i| (z_rng.random::<f64>() < expit(eta(psi_betas, &w, i))) as u8)
        .collect();
    let mut y_rng = rng::stream(seed, &[2]);
    let mut y = vec![0u8; sites * visits];
    for i in 0..sites {
        for j in 0..visits {
            let idx = i * visits + j;
            let u: f64 = y_rng.random();
            y[idx] = (z[i] == 1 && u < expit(eta(det_betas, &v, idx))) as u8;
        }
    }
    let mut data = OccupancyData::new(sites, visits, w, v, y)?;
    data.z_true = Some(z);
    Ok(data)
}

/// P(z = 1 | no detections) = ψΠ(1 − pⱼ) / (ψΠ(1 − pⱼ) + 1 − ψ).
pub fn conditional_presence_prob(psi: f64, det_probs: &[f64]) -> Result<f64> {
    if !(psi > 0.0 && psi < 1.0) {
        return Err(domain(format!("psi must lie in (0, 1), got {psi}")));
    }
    if let Some(p) = det_probs.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(domain(format!("detection probability {p} outside [0, 1]")));
    }
    let miss: f64 = det_probs.iter().map(|p| 1.0 - p).product();
    let num = psi * miss;
    Ok(num / (num + 1.0 - psi))
}

/// As [`conditional_presence_prob`] for a site with its detection record;
/// a site with any detection violates the precondition.
pub fn site_presence_prob(psi: f64, det_probs: &[f64], detections: &[u8]) -> Result<f64> {
    if detections.contains(&1) {
        return Err(Error::Precondition("site has a detection, so presence is certain".into()));
    }
    conditional_presence_prob(psi, det_probs)
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct OccupancySettings {
    /// Hold every detection probability at this value and skip the
    /// detection block.
    pub fix_detection_probability: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OccupancyFit {
    pub psi_chains: Chains,
    pub psi_summary: PosteriorSummary,
    pub det_chains: Option<Chains>,
    pub det_summary: Option<PosteriorSummary>,
    /// Posterior mean of z per site, over kept iterations and chains.
    pub z_mean: Vec<f64>,
    /// Set when the data cannot separate ψ from p (no detections at all,
    /// or every site detected) or when max R-hat exceeds 1.1.
    pub weak_identification: bool,
}

/// Detection log likelihood over occupied sites.
fn det_ln_likelihood(data: &OccupancyData, z: &[u8], beta: &[f64]) -> f64 {
    let mut total = 0.0;
    for (i, _) in z.iter().enumerate().filter(|(_, &zi)| zi == 1) {
        for j in 0..data.visits {
            let idx = i * data.visits + j;
            let mut eta = beta[0];
            for (c, b) in data.v.iter().zip(&beta[1..]) {
                eta += b * c[idx];
            }
            total += if data.y[idx] == 1 { eta } else { 0.0 } - softplus(eta);
        }
    }
    total
}

fn linear(beta: &[f64], cols: &[Vec<f64>], idx: usize) -> f64 {
    beta[0] + cols.iter().zip(&beta[1..]).map(|(c, b)| b * c[idx]).sum::<f64>()
}

struct ChainRun {
    psi: Vec<f64>,
    det: Vec<f64>,
    z_sum: Vec<f64>,
    psi_accept: f64,
    det_accept: f64,
}

/// Gibbs-within-Metropolis: z from its full conditional, then one adaptive
/// random-walk step for each coefficient block. The ψ block of chain c uses
/// the same substream and start as `mh_sample` chain c, so with detection
/// fixed at 1 (z then equals the detection indicator) the ψ draws coincide
/// with plain logistic regression on (W, z).
pub fn fit_occupancy(
    data: &OccupancyData,
    psi_prior: &PriorSpec,
    det_prior: &PriorSpec,
    config: &McmcConfig,
    settings: &OccupancySettings,
    seed: u64,
) -> Result<OccupancyFit> {
    config.validate()?;
    if psi_prior.dim() != data.q() + 1 {
        return Err(Error::DimensionMismatch { expected: data.q() + 1, got: psi_prior.dim() });
    }
    if det_prior.dim() != data.r() + 1 {
        return Err(Error::DimensionMismatch { expected: data.r() + 1, got: det_prior.dim() });
    }
    if let Some(p) = settings.fix_detection_probability {
        if !(p > 0.0 && p <= 1.0) {
            return Err(domain(format!("fixed detection probability must lie in (0, 1], got {p}")));
        }
    }
    let detected: Vec<bool> = (0..data.sites).map(|i| data.detected(i)).collect();

    let run_chain = |c: usize| -> Result<ChainRun> {
        let mut psi_rng = chain_rng(seed, c);
        let mut z_rng = rng::stream(seed, &[c as u64, 1]);
        let mut det_rng = rng::stream(seed, &[c as u64, 2]);
        let (psi_init, psi_scales) = prior_start(psi_prior, &mut psi_rng);
        let (det_init, det_scales) = prior_start(det_prior, &mut det_rng);

        let mut z: Vec<u8> = detected.iter().map(|&d| d as u8).collect();
        let psi_target = |z: &[u8], b: &[f64]| ln_likelihood(&data.w, z, b) + psi_prior.ln_density(b);
        let det_target = |z: &[u8], b: &[f64]| det_ln_likelihood(data, z, b) + det_prior.ln_density(b);
        let mut psi_state = RwmState::new(psi_init, psi_scales, config.burnin, |b| psi_target(&z, b));
        let mut det_state = RwmState::new(det_init, det_scales, config.burnin, |b| det_target(&z, b));

        let mut psi_draws = Vec::with_capacity(config.iterations * psi_prior.dim());
        let mut det_draws = Vec::with_capacity(config.iterations * det_prior.dim());
        let mut z_sum = vec![0.0; data.sites];
        let mut probs = vec![0.0; data.visits];
        for it in 0..config.iterations {
            for i in 0..data.sites {
                if detected[i] {
                    continue;
                }
                let psi = expit(linear(&psi_state.current, &data.w, i));
                for (j, p) in probs.iter_mut().enumerate() {
                    *p = match settings.fix_detection_probability {
                        Some(fixed) => fixed,
                        None => expit(linear(&det_state.current, &data.v, i * data.visits + j)),
                    };
                }
                let pr = conditional_presence_prob(psi.clamp(1e-300, 1.0 - 1e-16), &probs)?;
                z[i] = (z_rng.random::<f64>() < pr) as u8;
            }
            psi_state.refresh(|b| psi_target(&z, b));
            psi_state.step(|b| psi_target(&z, b), &mut psi_rng);
            psi_draws.extend_from_slice(&psi_state.current);
            if settings.fix_detection_probability.is_none() {
                det_state.refresh(|b| det_target(&z, b));
                det_state.step(|b| det_target(&z, b), &mut det_rng);
                det_draws.extend_from_slice(&det_state.current);
            }
            if it >= config.burnin {
                for (s, &zi) in z_sum.iter_mut().zip(&z) {
                    *s += zi as f64;
                }
            }
        }
        Ok(ChainRun {
            psi: psi_draws,
            det: det_draws,
            z_sum,
            psi_accept: psi_state.acceptance(),
            det_accept: det_state.acceptance(),
        })
    };

    use rayon::prelude::*;
    let runs: Vec<ChainRun> = (0..config.chains).into_par_iter().map(run_chain).collect::<Result<_>>()?;

    let make_chains = |dim: usize, pick: &dyn Fn(&ChainRun) -> (Vec<f64>, f64)| {
        let (draws, acceptance) = runs.iter().map(pick).unzip();
        Chains { dim, iterations: config.iterations, burnin: config.burnin, seed, draws, acceptance }
    };
    let psi_chains = make_chains(psi_prior.dim(), &|r| (r.psi.clone(), r.psi_accept));
    let psi_summary = summarize(&psi_chains)?;
    let (det_chains, det_summary) = if settings.fix_detection_probability.is_none() {
        let ch = make_chains(det_prior.dim(), &|r| (r.det.clone(), r.det_accept));
        let s = summarize(&ch)?;
        (Some(ch), Some(s))
    } else {
        (None, None)
    };
    let denom = (config.kept() * config.chains) as f64;
    let z_mean = (0..data.sites)
        .map(|i| runs.iter().map(|r| r.z_sum[i]).sum::<f64>() / denom)
        .collect();
    let naive = data.naive_occupancy();
    let max_rhat = det_summary
        .as_ref()
        .map_or(psi_summary.max_rhat(), |d| d.max_rhat().max(psi_summary.max_rhat()));
    let weak_identification = !(naive > 0.0 && naive < 1.0) || !(max_rhat <= 1.1);
    if weak_identification {
        log::warn!("occupancy fit weakly identified: naive occupancy {naive:.3}, max R-hat {max_rhat:.3}");
    }
    Ok(OccupancyFit { psi_chains, psi_summary, det_chains, det_summary, z_mean, weak_identification })
}

/// Induced priors on ψ and p. Site rows of `w` and visit rows of `v` are
/// sampled when given; otherwise covariates are standard Normal draws.
pub fn induced_occupancy_priors(
    psi_prior: &PriorSpec,
    det_prior: &PriorSpec,
    covariates: Option<&OccupancyData>,
    n_draws: usize,
    seed: u64,
) -> Result<(Pushforward, Pushforward)> {
    let (psi_src, det_src) = match covariates {
        None => (CovariateSource::StandardNormal, CovariateSource::StandardNormal),
        Some(d) => (
            CovariateSource::Rows((0..d.sites).map(|i| d.site_row(i)).collect()),
            CovariateSource::Rows(
                (0..d.sites)
                    .flat_map(|i| (0..d.visits).map(move |j| (i, j)))
                    .map(|(i, j)| d.visit_row(i, j))
                    .collect(),
            ),
        ),
    };
    let psi = theta_pushforward(psi_prior, &psi_src, n_draws, rng::derive_key(seed, &[0]))?;
    let det = theta_pushforward(det_prior, &det_src, n_draws, rng::derive_key(seed, &[1]))?;
    Ok((psi, det))
}

/// Both induced densities on a shared grid: `grid,psi,p`.
pub fn induced_densities_csv(psi: &Pushforward, det: &Pushforward) -> String {
    let mut out = String::from("grid,psi,p\n");
    for ((x, a), b) in psi.histogram.centers().iter().zip(&psi.histogram.density).zip(&det.histogram.density) {
        writeln!(out, "{x},{a},{b}").unwrap();
    }
    out
}
