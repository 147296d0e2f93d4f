//! Normal coefficient priors matched to a target induced distribution for θ.
//!
//! With standardized covariates, η = β₀ + Σ βᵢxᵢ has E[η] = E[β₀] and
//! Var[η] = Σ Var[βᵢ] under independent priors, so matching a target
//! (μ_η, σ²_η) only fixes the intercept mean and the total variance. The
//! builders below split that variance evenly (logistic, beta-matched) or
//! give the intercept a fixed share k (weighted).

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

use crate::distributions::{BetaShape, NormalParams};
use crate::error::{domain, Error, Result};
use crate::eta_moments::{eta_mean_var_analytic, EtaMoments};

/// Default standard deviation of the diffuse baseline prior.
pub const VAGUE_SD: f64 = 1000.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PriorKind {
    Vague,
    Logistic,
    BetaMatched,
    Weighted,
}

impl fmt::Display for PriorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PriorKind::Vague => "vague",
            PriorKind::Logistic => "logistic",
            PriorKind::BetaMatched => "beta_matched",
            PriorKind::Weighted => "weighted",
        })
    }
}

/// Independent Normal priors for (β₀, β₁, …, β_p), index 0 the intercept.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPriorSpec")]
pub struct PriorSpec {
    pub kind: PriorKind,
    pub p: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<BetaShape>,
    pub coefficients: Vec<NormalParams>,
}

#[derive(Deserialize)]
struct RawPriorSpec {
    kind: PriorKind,
    p: usize,
    #[serde(default)]
    k: Option<f64>,
    #[serde(default)]
    target: Option<BetaShape>,
    coefficients: Vec<NormalParams>,
}

impl TryFrom<RawPriorSpec> for PriorSpec {
    type Error = Error;

    fn try_from(raw: RawPriorSpec) -> Result<Self> {
        if raw.coefficients.len() != raw.p + 1 {
            return Err(Error::DimensionMismatch {
                expected: raw.p + 1,
                got: raw.coefficients.len(),
            });
        }
        if raw.kind == PriorKind::Weighted {
            match raw.k {
                Some(k) if k > 0.0 && k < 1.0 => {}
                other => {
                    return Err(domain(format!(
                        "weighted prior needs k in the open interval (0, 1), got {other:?}"
                    )))
                }
            }
        }
        Ok(PriorSpec {
            kind: raw.kind,
            p: raw.p,
            k: raw.k,
            target: raw.target,
            coefficients: raw.coefficients,
        })
    }
}

impl PriorSpec {
    pub fn dim(&self) -> usize {
        self.p + 1
    }

    pub fn intercept(&self) -> &NormalParams {
        &self.coefficients[0]
    }

    /// E[η] implied for standardized covariates.
    pub fn eta_mean(&self) -> f64 {
        self.coefficients[0].mean()
    }

    /// Var[β₀] + Σ Var[βᵢ]: Var[η] implied for unit-variance covariates.
    pub fn total_variance(&self) -> f64 {
        self.coefficients.iter().map(NormalParams::variance).sum()
    }

    /// Sum of Normal log densities at `beta`.
    pub fn ln_density(&self, beta: &[f64]) -> f64 {
        self.coefficients
            .iter()
            .zip(beta)
            .map(|(c, b)| c.ln_pdf(*b))
            .sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("prior spec serializes")
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Beta(α, β) with the given mean and coefficient of variation.
pub fn beta_shapes_from_mean_cv(mean: f64, cv: f64) -> Result<BetaShape> {
    if !(mean > 0.0 && mean < 1.0) {
        return Err(domain(format!("target mean must lie in (0, 1), got {mean}")));
    }
    if !(cv > 0.0 && cv.is_finite()) {
        return Err(domain(format!("target cv must be positive, got {cv}")));
    }
    let var = (mean * cv).powi(2);
    let bound = mean * (1.0 - mean);
    if var >= bound {
        return Err(Error::InfeasibleVariance {
            mean,
            cv,
            max_cv: ((1.0 - mean) / mean).sqrt(),
        });
    }
    let common = bound / var - 1.0;
    BetaShape::new(mean * common, (1.0 - mean) * common)
}

fn iid_priors(kind: PriorKind, p: usize, mean0: f64, variance: f64) -> Result<PriorSpec> {
    let mut coefficients = Vec::with_capacity(p + 1);
    coefficients.push(NormalParams::new(mean0, variance)?);
    for _ in 0..p {
        coefficients.push(NormalParams::new(0.0, variance)?);
    }
    Ok(PriorSpec {
        kind,
        p,
        k: None,
        target: None,
        coefficients,
    })
}

/// All p + 1 coefficients ~ Normal(0, π²/(3(p+1))): induced θ ≈ Uniform(0, 1).
pub fn logistic_matched_priors(p: usize) -> PriorSpec {
    iid_priors(PriorKind::Logistic, p, 0.0, PI * PI / (3.0 * (p as f64 + 1.0)))
        .expect("positive variance")
}

/// Intercept ~ Normal(μ_η, σ²_η/(p+1)), slopes ~ Normal(0, σ²_η/(p+1)).
pub fn beta_matched_priors(p: usize, target: BetaShape) -> Result<PriorSpec> {
    let EtaMoments { mu_eta, var_eta, .. } = eta_mean_var_analytic(&target)?;
    let mut spec = iid_priors(
        PriorKind::BetaMatched,
        p,
        mu_eta,
        var_eta / (p as f64 + 1.0),
    )?;
    spec.target = Some(target);
    Ok(spec)
}

/// Intercept ~ Normal(μ_η, k·σ²_η), slopes ~ Normal(0, (1 − k)·σ²_η/p).
pub fn weighted_priors(p: usize, target: BetaShape, k: f64) -> Result<PriorSpec> {
    if p == 0 {
        return Err(domain("weighted prior needs at least one covariate (p >= 1)"));
    }
    if !(k > 0.0 && k < 1.0) {
        return Err(domain(format!(
            "weight k must lie in the open interval (0, 1), got {k}"
        )));
    }
    let EtaMoments { mu_eta, var_eta, .. } = eta_mean_var_analytic(&target)?;
    let slope_var = (1.0 - k) * var_eta / p as f64;
    let mut coefficients = vec![NormalParams::new(mu_eta, k * var_eta)?];
    for _ in 0..p {
        coefficients.push(NormalParams::new(0.0, slope_var)?);
    }
    Ok(PriorSpec {
        kind: PriorKind::Weighted,
        p,
        k: Some(k),
        target: Some(target),
        coefficients,
    })
}

/// Weighted prior with the target given as (mean, cv) of θ.
pub fn weighted_priors_from_mean_cv(p: usize, mean: f64, cv: f64, k: f64) -> Result<PriorSpec> {
    weighted_priors(p, beta_shapes_from_mean_cv(mean, cv)?, k)
}

/// Diffuse baseline: all coefficients ~ Normal(0, sd²).
pub fn vague_priors(p: usize, sd: f64) -> Result<PriorSpec> {
    if !(sd > 0.0 && sd.is_finite()) {
        return Err(domain(format!("prior sd must be positive, got {sd}")));
    }
    iid_priors(PriorKind::Vague, p, 0.0, sd * sd)
}
