//! The five distribution families used throughout: Logistic, Half-Logistic,
//! Type IV generalized logistic, Beta and Normal.
//!
//! Parameter structs validate on construction. Their density methods are
//! total (NaN in, NaN out) so they can be used directly as integrands; the
//! free functions are the checked entry points and reject non-finite input.

use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{domain, ensure_finite, Result};
use crate::link::softplus;
use crate::rng;
use crate::special::ln_beta;

/// Location/scale of a Logistic distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogisticParams {
    mu: f64,
    s: f64,
}

impl LogisticParams {
    pub const STANDARD: LogisticParams = LogisticParams { mu: 0.0, s: 1.0 };

    pub fn new(mu: f64, s: f64) -> Result<Self> {
        ensure_finite("logistic location", mu)?;
        if !(s > 0.0 && s.is_finite()) {
            return Err(domain(format!("logistic scale must be positive, got {s}")));
        }
        Ok(Self { mu, s })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn pdf(&self, x: f64) -> f64 {
        // symmetric form: only ever exponentiates a non-positive number
        let z = -((x - self.mu) / self.s).abs();
        let e = z.exp();
        e / (self.s * (1.0 + e) * (1.0 + e))
    }

    pub fn ln_pdf(&self, x: f64) -> f64 {
        let z = -((x - self.mu) / self.s).abs();
        z - self.s.ln() - 2.0 * softplus(z)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        crate::link::expit((x - self.mu) / self.s)
    }

    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(domain(format!("quantile level must lie in (0, 1), got {u}")));
        }
        Ok(self.mu + self.s * crate::link::logit(u))
    }

    pub fn mean(&self) -> f64 {
        self.mu
    }

    pub fn variance(&self) -> f64 {
        self.s * self.s * PI * PI / 3.0
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        // open-interval uniform; random::<f64>() may return 0
        let u = open_unit(rng);
        self.mu + self.s * crate::link::logit(u)
    }
}

/// Uniform draw on the open interval (0, 1).
pub(crate) fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return u;
        }
    }
}

/// Shape parameters (α, β) of a Beta distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBetaShape")]
pub struct BetaShape {
    alpha: f64,
    beta: f64,
}

#[derive(Deserialize)]
struct RawBetaShape {
    alpha: f64,
    beta: f64,
}

impl TryFrom<RawBetaShape> for BetaShape {
    type Error = crate::Error;
    fn try_from(raw: RawBetaShape) -> Result<Self> {
        BetaShape::new(raw.alpha, raw.beta)
    }
}

impl BetaShape {
    pub const UNIFORM: BetaShape = BetaShape {
        alpha: 1.0,
        beta: 1.0,
    };

    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite() && beta > 0.0 && beta.is_finite()) {
            return Err(domain(format!(
                "Beta shapes must be positive and finite, got ({alpha}, {beta})"
            )));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The shape with α and β exchanged (law of 1 − θ).
    pub fn swapped(&self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.alpha,
        }
    }

    pub fn mean(&self) -> f64 {
        self.alpha / (self.alpha + self.beta)
    }

    pub fn variance(&self) -> f64 {
        let t = self.alpha + self.beta;
        self.alpha * self.beta / (t * t * (t + 1.0))
    }

    pub fn ln_beta_fn(&self) -> f64 {
        ln_beta(self.alpha, self.beta)
    }

    pub fn ln_pdf(&self, x: f64) -> f64 {
        if !(0.0..=1.0).contains(&x) {
            return f64::NEG_INFINITY;
        }
        self.ln_pdf_split(x.ln(), (1.0 - x).ln())
    }

    /// Log density from ln θ and ln(1 − θ), for callers that hold both
    /// accurately near the ends of (0, 1).
    pub fn ln_pdf_split(&self, ln_x: f64, ln_1mx: f64) -> f64 {
        let a = if self.alpha == 1.0 {
            0.0
        } else {
            (self.alpha - 1.0) * ln_x
        };
        let b = if self.beta == 1.0 {
            0.0
        } else {
            (self.beta - 1.0) * ln_1mx
        };
        a + b - self.ln_beta_fn()
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        self.ln_pdf(x).exp()
    }

    /// Two gamma draws: X/(X+Y) with X ~ Γ(α), Y ~ Γ(β).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let x = Gamma::new(self.alpha, 1.0).expect("validated shape").sample(rng);
        let y = Gamma::new(self.beta, 1.0).expect("validated shape").sample(rng);
        if x + y == 0.0 {
            // both underflowed (tiny shapes): fall back on the mean
            return self.mean();
        }
        x / (x + y)
    }
}

/// Mean and variance of a Normal distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawNormal")]
pub struct NormalParams {
    mean: f64,
    variance: f64,
}

#[derive(Deserialize)]
struct RawNormal {
    mean: f64,
    variance: f64,
}

impl TryFrom<RawNormal> for NormalParams {
    type Error = crate::Error;
    fn try_from(raw: RawNormal) -> Result<Self> {
        NormalParams::new(raw.mean, raw.variance)
    }
}

impl NormalParams {
    pub const STANDARD: NormalParams = NormalParams { mean: 0.0, variance: 1.0 };

    pub fn new(mean: f64, variance: f64) -> Result<Self> {
        ensure_finite("normal mean", mean)?;
        if !(variance > 0.0 && variance.is_finite()) {
            return Err(domain(format!("normal variance must be positive, got {variance}")));
        }
        Ok(Self { mean, variance })
    }

    pub fn from_sd(mean: f64, sd: f64) -> Result<Self> {
        Self::new(mean, sd * sd)
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }

    pub fn sd(&self) -> f64 {
        self.variance.sqrt()
    }

    pub fn ln_pdf(&self, x: f64) -> f64 {
        let d = x - self.mean;
        -0.5 * (d * d / self.variance + (2.0 * PI * self.variance).ln())
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.ln_pdf(x).exp()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let z: f64 = StandardNormal.sample(rng);
        self.mean + self.sd() * z
    }
}

/// Half-Logistic(μ, s): the logistic density on x ≥ μ, doubled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfLogistic(pub LogisticParams);

impl HalfLogistic {
    pub fn pdf(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        if x < self.0.mu {
            0.0
        } else {
            2.0 * self.0.pdf(x)
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x < self.0.mu {
            0.0
        } else {
            2.0 * self.0.cdf(x) - 1.0
        }
    }

    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&u) {
            return Err(domain(format!("quantile level must lie in [0, 1), got {u}")));
        }
        Ok(self.0.mu + self.0.s * ((1.0 + u) / (1.0 - u)).ln())
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.random();
        self.0.mu + self.0.s * (u.ln_1p() - (-u).ln_1p())
    }
}

/// Type IV generalized logistic: the law of logit(θ) for θ ~ Beta(α, β).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenLogistic4(pub BetaShape);

impl GenLogistic4 {
    pub fn ln_pdf(&self, eta: f64) -> f64 {
        let (a, b) = (self.0.alpha, self.0.beta);
        a * eta - (a + b) * softplus(eta) - self.0.ln_beta_fn()
    }

    pub fn pdf(&self, eta: f64) -> f64 {
        if eta.is_infinite() {
            return 0.0;
        }
        self.ln_pdf(eta).exp()
    }
}

pub fn logistic_pdf(x: f64, params: &LogisticParams) -> Result<f64> {
    ensure_finite("x", x)?;
    Ok(params.pdf(x))
}

pub fn logistic_cdf(x: f64, params: &LogisticParams) -> Result<f64> {
    if x.is_nan() {
        return Err(domain("x must not be NaN"));
    }
    Ok(params.cdf(x))
}

pub fn logistic_quantile(u: f64, params: &LogisticParams) -> Result<f64> {
    params.quantile(u)
}

pub fn logistic_sample(params: &LogisticParams, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = rng::stream(seed, &[]);
    (0..n).map(|_| params.sample(&mut rng)).collect()
}

pub fn half_logistic_pdf(x: f64, params: &LogisticParams) -> Result<f64> {
    ensure_finite("x", x)?;
    Ok(HalfLogistic(*params).pdf(x))
}

pub fn half_logistic_sample(params: &LogisticParams, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = rng::stream(seed, &[]);
    let h = HalfLogistic(*params);
    (0..n).map(|_| h.sample(&mut rng)).collect()
}

pub fn gen_logistic4_pdf(eta: f64, shape: &BetaShape) -> f64 {
    GenLogistic4(*shape).pdf(eta)
}

pub fn beta_pdf(x: f64, shape: &BetaShape) -> Result<f64> {
    ensure_finite("x", x)?;
    Ok(shape.pdf(x))
}

pub fn beta_sample(shape: &BetaShape, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = rng::stream(seed, &[]);
    (0..n).map(|_| shape.sample(&mut rng)).collect()
}

pub fn normal_pdf(x: f64, params: &NormalParams) -> Result<f64> {
    ensure_finite("x", x)?;
    Ok(params.pdf(x))
}

pub fn normal_sample(params: &NormalParams, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = rng::stream(seed, &[]);
    (0..n).map(|_| params.sample(&mut rng)).collect()
}
