//! Change-of-variable transforms between coefficient-space and θ-space
//! densities, and Monte Carlo pushforwards for induced priors of arbitrary
//! functions of sampled parameters.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

use crate::distributions::{open_unit, BetaShape, GenLogistic4, LogisticParams, NormalParams};
use crate::error::{domain, ensure_finite, Error, Result};
use crate::link::{expit, logit};
use crate::prior::PriorSpec;
use crate::rng;
use crate::stats::{quantile_sorted, sorted, Histogram};

/// A density on a declared support interval; zero outside it.
#[derive(Clone)]
pub struct DensityFn {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    /// Density of logit(X) in closed form, for θ-space densities whose
    /// direct evaluation breaks down once expit saturates.
    logit_density: Option<Arc<dyn Fn(f64) -> f64 + Send + Sync>>,
    support: (f64, f64),
    label: String,
}

impl fmt::Debug for DensityFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DensityFn")
            .field("label", &self.label)
            .field("support", &self.support)
            .finish()
    }
}

impl DensityFn {
    pub fn new<F>(label: impl Into<String>, support: (f64, f64), f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            eval: Arc::new(f),
            logit_density: None,
            support,
            label: label.into(),
        }
    }

    pub fn logistic(params: LogisticParams) -> Self {
        Self::new(
            format!("logistic({},{})", params.mu(), params.s()),
            (f64::NEG_INFINITY, f64::INFINITY),
            move |x| params.pdf(x),
        )
    }

    pub fn normal(params: NormalParams) -> Self {
        Self::new(
            format!("normal({},{})", params.mean(), params.variance()),
            (f64::NEG_INFINITY, f64::INFINITY),
            move |x| params.pdf(x),
        )
    }

    pub fn uniform() -> Self {
        Self::new("uniform", (0.0, 1.0), |_| 1.0)
    }

    pub fn beta(shape: BetaShape) -> Self {
        let mut d = Self::new(
            format!("beta({},{})", shape.alpha(), shape.beta()),
            (0.0, 1.0),
            move |x| shape.pdf(x),
        );
        d.logit_density = Some(Arc::new(move |eta| GenLogistic4(shape).pdf(eta)));
        d
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x < self.support.0 || x > self.support.1 {
            0.0
        } else {
            (self.eval)(x)
        }
    }
}

/// Density of θ = expit(β) when β has density `beta_prior`.
pub fn induce_theta_density(beta_prior: &DensityFn, theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(domain(format!("theta must lie in (0, 1), got {theta}")));
    }
    Ok(beta_prior.eval(logit(theta)) / (theta * (1.0 - theta)))
}

/// Density of β = logit(θ) when θ has density `theta_prior`.
pub fn induce_beta_density(theta_prior: &DensityFn, beta: f64) -> Result<f64> {
    ensure_finite("beta", beta)?;
    if let Some(f) = &theta_prior.logit_density {
        return Ok(f(beta));
    }
    let theta = expit(beta);
    let jac = theta * expit(-beta);
    if jac == 0.0 {
        return Ok(0.0);
    }
    Ok(theta_prior.eval(theta) * jac)
}

/// How a pushforward parameter is drawn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamSampler {
    Normal(NormalParams),
    /// Normal truncated to (0, ∞), by rejection.
    PositiveNormal(NormalParams),
    Logistic(LogisticParams),
    Beta(BetaShape),
    Uniform { lo: f64, hi: f64 },
    Point(f64),
}

impl ParamSampler {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            ParamSampler::Normal(n) => n.sample(rng),
            ParamSampler::PositiveNormal(n) => {
                for _ in 0..10_000 {
                    let x = n.sample(rng);
                    if x > 0.0 {
                        return x;
                    }
                }
                f64::NAN
            }
            ParamSampler::Logistic(l) => l.sample(rng),
            ParamSampler::Beta(b) => b.sample(rng),
            ParamSampler::Uniform { lo, hi } => lo + (hi - lo) * open_unit(rng),
            ParamSampler::Point(x) => x,
        }
    }
}

/// Histogram range for a pushforward.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HistogramRange {
    /// Between two empirical quantiles of the draws.
    Quantiles(f64, f64),
    Fixed(f64, f64),
}

pub type Transform = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Named parameter samplers, a transform of the parameter vector, and the
/// number of draws.
#[derive(Clone)]
pub struct PushforwardSpec {
    pub samplers: Vec<(String, ParamSampler)>,
    pub transform: Transform,
    pub n: usize,
    pub bins: usize,
    pub range: HistogramRange,
    /// Largest tolerated fraction of non-finite transform values.
    pub max_nonfinite_fraction: f64,
}

impl PushforwardSpec {
    pub fn new<F>(samplers: Vec<(String, ParamSampler)>, n: usize, transform: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self {
            samplers,
            transform: Arc::new(transform),
            n,
            bins: 512,
            range: HistogramRange::Quantiles(0.001, 0.999),
            max_nonfinite_fraction: 0.0,
        }
    }

    pub fn with_bins(mut self, bins: usize) -> Self {
        self.bins = bins;
        self
    }

    pub fn with_range(mut self, range: HistogramRange) -> Self {
        self.range = range;
        self
    }

    pub fn with_max_nonfinite_fraction(mut self, f: f64) -> Self {
        self.max_nonfinite_fraction = f;
        self
    }
}

/// Transformed draws (finite ones, in draw order) and their histogram.
#[derive(Debug, Clone, Serialize)]
pub struct Pushforward {
    pub draws: Vec<f64>,
    pub histogram: Histogram,
    pub nonfinite: usize,
}

impl Pushforward {
    pub fn fraction_where<P: Fn(f64) -> bool>(&self, pred: P) -> f64 {
        self.draws.iter().filter(|&&x| pred(x)).count() as f64 / self.draws.len() as f64
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.histogram).expect("histogram serializes")
    }
}

/// Draws per RNG substream; fixed so results do not depend on thread count.
const CHUNK: usize = 4096;

/// Draw parameters, push them through the transform, and histogram the
/// result. Chunks of draws use disjoint substreams and are concatenated in
/// chunk order.
pub fn pushforward_sample(spec: &PushforwardSpec, seed: u64) -> Result<Pushforward> {
    if spec.n == 0 {
        return Err(domain("pushforward needs at least one draw"));
    }
    let chunks = spec.n.div_ceil(CHUNK);
    let per_chunk: Vec<(Vec<f64>, usize, Option<Vec<f64>>)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = rng::stream(seed, &[c as u64]);
            let len = CHUNK.min(spec.n - c * CHUNK);
            let mut out = Vec::with_capacity(len);
            let mut params = vec![0.0; spec.samplers.len()];
            let mut bad = 0;
            let mut first_bad = None;
            for _ in 0..len {
                for (slot, (_, s)) in params.iter_mut().zip(&spec.samplers) {
                    *slot = s.sample(&mut rng);
                }
                let v = (spec.transform)(&params);
                if v.is_finite() {
                    out.push(v);
                } else {
                    bad += 1;
                    first_bad.get_or_insert_with(|| params.clone());
                }
            }
            (out, bad, first_bad)
        })
        .collect();

    let mut draws = Vec::with_capacity(spec.n);
    let mut nonfinite = 0;
    let mut offending = None;
    for (d, bad, first) in per_chunk {
        draws.extend(d);
        nonfinite += bad;
        if offending.is_none() {
            offending = first;
        }
    }
    if nonfinite as f64 > spec.max_nonfinite_fraction * spec.n as f64 || draws.is_empty() {
        let draw = offending
            .map(|p| {
                spec.samplers
                    .iter()
                    .zip(p)
                    .map(|((name, _), v)| format!("{name}={v}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .unwrap_or_default();
        return Err(Error::NonFiniteTransform {
            count: nonfinite,
            total: spec.n,
            draw,
        });
    }
    let (lo, hi) = match spec.range {
        HistogramRange::Fixed(lo, hi) => (lo, hi),
        HistogramRange::Quantiles(a, b) => {
            let s = sorted(&draws);
            (quantile_sorted(&s, a), quantile_sorted(&s, b))
        }
    };
    let histogram = Histogram::new(&draws, lo, hi, spec.bins);
    Ok(Pushforward {
        draws,
        histogram,
        nonfinite,
    })
}

/// Covariate values used when pushing coefficient priors through to θ.
#[derive(Debug, Clone, PartialEq)]
pub enum CovariateSource {
    /// Independent standard Normal draws (standardized covariates).
    StandardNormal,
    /// Rows sampled uniformly from a fixed design, one row per draw.
    Rows(Vec<Vec<f64>>),
}

/// Induced prior on θ = expit(β₀ + Σ βⱼxⱼ) under a coefficient prior.
pub fn theta_pushforward(prior: &PriorSpec, covariates: &CovariateSource, n: usize, seed: u64) -> Result<Pushforward> {
    let p = prior.p;
    let mut samplers: Vec<(String, ParamSampler)> = prior
        .coefficients
        .iter()
        .enumerate()
        .map(|(j, c)| (format!("b{j}"), ParamSampler::Normal(*c)))
        .collect();
    let spec = match covariates {
        CovariateSource::StandardNormal => {
            for j in 1..=p {
                samplers.push((format!("x{j}"), ParamSampler::Normal(NormalParams::STANDARD)));
            }
            PushforwardSpec::new(samplers, n, move |v: &[f64]| {
                let (b, x) = v.split_at(p + 1);
                expit(b[0] + b[1..].iter().zip(x).map(|(b, x)| b * x).sum::<f64>())
            })
        }
        CovariateSource::Rows(rows) => {
            if rows.is_empty() {
                return Err(domain("covariate design has no rows"));
            }
            if let Some(bad) = rows.iter().find(|r| r.len() != p) {
                return Err(Error::DimensionMismatch {
                    expected: p,
                    got: bad.len(),
                });
            }
            let m = rows.len();
            let rows = rows.clone();
            samplers.push(("row".into(), ParamSampler::Uniform { lo: 0.0, hi: m as f64 }));
            PushforwardSpec::new(samplers, n, move |v: &[f64]| {
                let (b, r) = v.split_at(p + 1);
                let x = &rows[(r[0] as usize).min(m - 1)];
                expit(b[0] + b[1..].iter().zip(x).map(|(b, x)| b * x).sum::<f64>())
            })
        }
    };
    pushforward_sample(&spec.with_range(HistogramRange::Fixed(0.0, 1.0)).with_bins(100), seed)
}

/// Vague-prior settings for the two Ricker parameterizations:
/// Model A, N' = N·exp(a − bN), with K = a/b induced; and
/// Model B, N' = N·exp(a(1 − N/K)), with b = a/K induced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RickerPriors {
    pub a: NormalParams,
    pub b: NormalParams,
    pub k: NormalParams,
}

impl Default for RickerPriors {
    fn default() -> Self {
        Self {
            a: NormalParams::from_sd(0.0, 2.0).expect("valid"),
            b: NormalParams::from_sd(0.0, 0.1).expect("valid"),
            k: NormalParams::from_sd(0.0, 100.0).expect("valid"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RickerDemo {
    /// Induced K = a/b under Model A's explicit priors on a and b.
    pub k_model_a: Pushforward,
    /// Explicit K prior of Model B.
    pub k_model_b: Pushforward,
    /// Induced b = a/K under Model B's explicit priors on a and K.
    pub b_model_b: Pushforward,
}

pub fn ricker_demo(priors: &RickerPriors, n: usize, seed: u64) -> Result<RickerDemo> {
    let a = ("a".to_string(), ParamSampler::PositiveNormal(priors.a));
    let b = ("b".to_string(), ParamSampler::PositiveNormal(priors.b));
    let k = ("K".to_string(), ParamSampler::PositiveNormal(priors.k));
    let k_model_a = pushforward_sample(
        &PushforwardSpec::new(vec![a.clone(), b], n, |v| v[0] / v[1]),
        rng::derive_key(seed, &[0]),
    )?;
    let k_model_b = pushforward_sample(
        &PushforwardSpec::new(vec![k.clone()], n, |v| v[0]),
        rng::derive_key(seed, &[1]),
    )?;
    let b_model_b = pushforward_sample(
        &PushforwardSpec::new(vec![a, k], n, |v| v[0] / v[1]),
        rng::derive_key(seed, &[2]),
    )?;
    Ok(RickerDemo {
        k_model_a,
        k_model_b,
        b_model_b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::gen_logistic4_pdf;
    use crate::quadrature::TanhSinh;
    use crate::stats::{ks_critical_1pct, ks_statistic, mean, skewness};
    use std::f64::consts::PI;

    #[test]
    fn logistic_prior_induces_uniform() {
        let prior = DensityFn::logistic(LogisticParams::STANDARD);
        assert!((induce_theta_density(&prior, 0.37).unwrap() - 1.0).abs() < 1e-12);
        for i in 1..100 {
            let t = i as f64 / 100.0;
            assert!((induce_theta_density(&prior, t).unwrap() - 1.0).abs() < 1e-10);
        }
        assert!(induce_theta_density(&prior, 0.0).is_err());
        assert!(induce_theta_density(&prior, 1.0).is_err());
    }

    #[test]
    fn wide_normal_gives_bathtub() {
        let prior = DensityFn::normal(NormalParams::new(0.0, 9.0).unwrap());
        let mid = induce_theta_density(&prior, 0.5).unwrap();
        // 4·φ(0; 0, 3)
        let oracle = 4.0 / (3.0 * (2.0 * PI).sqrt());
        assert!((mid - oracle).abs() < 1e-12);
        assert!((mid - 0.53192).abs() < 1e-5);
        assert!(induce_theta_density(&prior, 0.01).unwrap() > mid);
        for i in 1..50 {
            let t = i as f64 / 100.0;
            let a = induce_theta_density(&prior, t).unwrap();
            let b = induce_theta_density(&prior, 1.0 - t).unwrap();
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn uniform_and_beta_targets() {
        let u = DensityFn::uniform();
        assert!((induce_beta_density(&u, 0.0).unwrap() - 0.25).abs() < 1e-15);
        let d = induce_beta_density(&u, 2.3).unwrap();
        assert!((d - induce_beta_density(&u, -2.3).unwrap()).abs() < 1e-15);
        let shape = BetaShape::new(2.633, 1.129).unwrap();
        let b = DensityFn::beta(shape);
        for eta in [-2.0, 0.0, 1.5] {
            let x = induce_beta_density(&b, eta).unwrap();
            assert!((x - gen_logistic4_pdf(eta, &shape)).abs() < 1e-12);
        }
        assert!(induce_beta_density(&u, f64::NAN).is_err());
    }

    #[test]
    fn induced_beta_density_normalizes() {
        let q = TanhSinh::with_tolerance(1e-10, 1e-10);
        for prior in [
            DensityFn::uniform(),
            DensityFn::beta(BetaShape::new(2.633, 1.129).unwrap()),
            DensityFn::beta(BetaShape::new(5.0, 2.0).unwrap()),
        ] {
            let m = q.integrate_real_line(|x| induce_beta_density(&prior, x).unwrap());
            assert!((m.value - 1.0).abs() < 1e-6, "{}: {m:?}", prior.label());
        }
    }

    #[test]
    fn pushforward_symmetry_and_determinism() {
        let n = NormalParams::new(0.0, PI * PI / 6.0).unwrap();
        let spec = PushforwardSpec::new(
            vec![("b0".into(), ParamSampler::Normal(n)), ("b1".into(), ParamSampler::Normal(n))],
            100_000,
            |v| expit(v[0] + v[1] * 0.0),
        );
        let a = pushforward_sample(&spec, 3).unwrap();
        assert!((mean(&a.draws) - 0.5).abs() < 0.01);
        let b = pushforward_sample(&spec, 3).unwrap();
        assert_eq!(a.draws, b.draws);
        assert_eq!(a.histogram.density.len(), 512);
    }

    #[test]
    fn logistic_eta_pushes_to_uniform() {
        let spec = PushforwardSpec::new(
            vec![("eta".into(), ParamSampler::Logistic(LogisticParams::STANDARD))],
            50_000,
            |v| expit(v[0]),
        );
        let pf = pushforward_sample(&spec, 11).unwrap();
        let d = ks_statistic(&pf.draws, |x| x.clamp(0.0, 1.0));
        assert!(d < ks_critical_1pct(pf.draws.len()), "KS {d}");
    }

    #[test]
    fn point_masses_are_deterministic() {
        let spec = PushforwardSpec::new(
            vec![("a".into(), ParamSampler::Point(2.0)), ("b".into(), ParamSampler::Point(0.5))],
            100,
            |v| v[0] / v[1],
        );
        let pf = pushforward_sample(&spec, 0).unwrap();
        assert!(pf.draws.iter().all(|&x| x == 4.0));
    }

    #[test]
    fn nonfinite_transform_names_the_draw() {
        let spec = PushforwardSpec::new(
            vec![("a".into(), ParamSampler::Point(1.0)), ("b".into(), ParamSampler::Point(0.0))],
            10,
            |v| v[0] / v[1],
        );
        match pushforward_sample(&spec, 0) {
            Err(Error::NonFiniteTransform { count, draw, .. }) => {
                assert_eq!(count, 10);
                assert!(draw.contains("b=0"), "{draw}");
            }
            other => panic!("{other:?}"),
        }
        assert!(pushforward_sample(&PushforwardSpec { n: 0, ..spec }, 0).is_err());
    }

    #[test]
    fn ricker_model_a_carrying_capacity_is_right_skewed() {
        let demo = ricker_demo(&RickerPriors::default(), 50_000, 5).unwrap();
        assert!(skewness(&demo.k_model_a.draws) > 0.0);
        assert!(demo.k_model_a.draws.iter().all(|&k| k > 0.0));
        assert!(skewness(&demo.k_model_a.draws) > skewness(&demo.k_model_b.draws));
    }

    #[test]
    fn logistic_matched_pushforward_is_near_uniform() {
        use crate::prior::logistic_matched_priors;
        use crate::stats::variance;
        for p in 1..=4 {
            let pf = theta_pushforward(&logistic_matched_priors(p), &CovariateSource::StandardNormal, 100_000, p as u64)
                .unwrap();
            let m = mean(&pf.draws);
            let v = variance(&pf.draws) * 12.0;
            assert!((m - 0.5).abs() < 0.01 && (v - 1.0).abs() < 0.05, "p={p}: {m} {v}");
        }
        // intercept only: η is exactly Normal(0, π²/3) and Var[θ] sits 7.7% above 1/12
        let pf = theta_pushforward(&logistic_matched_priors(0), &CovariateSource::StandardNormal, 100_000, 0).unwrap();
        let v = crate::stats::variance(&pf.draws) * 12.0;
        assert!((v - 1.0766).abs() < 0.01, "{v}");
    }

    #[test]
    fn design_rows_are_sampled() {
        use crate::prior::vague_priors;
        let prior = vague_priors(1, 1e-3).unwrap();
        let rows = vec![vec![0.0], vec![0.0]];
        let pf = theta_pushforward(&prior, &CovariateSource::Rows(rows), 1000, 1).unwrap();
        assert!(pf.draws.iter().all(|&t| (t - 0.5).abs() < 0.01));
        assert!(theta_pushforward(&prior, &CovariateSource::Rows(vec![]), 10, 1).is_err());
        assert!(theta_pushforward(&prior, &CovariateSource::Rows(vec![vec![1.0, 2.0]]), 10, 1).is_err());
    }
}
