//! Generating functions of the logistic law and their (p+1)-th roots.
//!
//! If η = β₀ + … + β_p is to be Logistic(0, 1) with iid βᵢ, each βᵢ must
//! have characteristic function φ(t)^{1/(p+1)} where φ(t) = πt/sinh(πt).
//! The logistic law is infinitely divisible, so that root is itself a CF;
//! [`invert_symmetric_cf`] tabulates its density and
//! [`sample_root_logistic`] samples from the table.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

use crate::distributions::{open_unit, LogisticParams};
use crate::error::{domain, ensure_finite, Error, Result};
use crate::quadrature::TanhSinh;
use crate::rng;
use crate::special::ln_gamma;

/// M(t) = e^{μt} Γ(1 − st) Γ(1 + st), for |t| < 1/s.
pub fn logistic_mgf(t: f64, params: &LogisticParams) -> Result<f64> {
    ensure_finite("t", t)?;
    if t == 0.0 {
        return Ok(1.0);
    }
    let st = params.s() * t;
    if st.abs() >= 1.0 {
        return Err(domain(format!(
            "logistic MGF needs |t| < 1/s = {}, got t = {t}",
            1.0 / params.s()
        )));
    }
    Ok((params.mu() * t + ln_gamma(1.0 - st) + ln_gamma(1.0 + st)).exp())
}

/// ln(x / sinh x), stable for all x (even function, 0 at x = 0).
fn ln_x_over_sinh(x: f64) -> f64 {
    let x = x.abs();
    if x < 1e-4 {
        -x * x / 6.0
    } else if x < 20.0 {
        (x / x.sinh()).ln()
    } else {
        // sinh x = e^x (1 − e^{−2x}) / 2
        x.ln() + std::f64::consts::LN_2 - x - (-(-2.0 * x).exp()).ln_1p()
    }
}

/// |φ(t)| = πst / sinh(πst); the full CF is e^{itμ} times this.
pub fn logistic_cf_modulus(t: f64, params: &LogisticParams) -> f64 {
    ln_x_over_sinh(PI * params.s() * t).exp()
}

/// [Γ(1 − t) Γ(1 + t)]^{1/(p+1)}, the MGF of the root-logistic law.
pub fn root_mgf(t: f64, p: usize) -> Result<f64> {
    if t == 0.0 {
        return Ok(1.0);
    }
    let base = logistic_mgf(t, &LogisticParams::STANDARD)?;
    Ok(base.powf(1.0 / (p as f64 + 1.0)))
}

/// [πt / sinh(πt)]^{1/(p+1)}, the CF of the root-logistic law.
pub fn root_cf(t: f64, p: usize) -> f64 {
    (ln_x_over_sinh(PI * t) / (p as f64 + 1.0)).exp()
}

/// Discretization of a CF inversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionGrid {
    /// Upper limit T of the cosine integral.
    pub t_max: f64,
    /// Even number of Simpson intervals on [0, T].
    pub nodes: usize,
    /// Output grid is [−half_width, half_width].
    pub half_width: f64,
    /// Number of output grid points (odd keeps 0 on the grid).
    pub points: usize,
}

impl InversionGrid {
    /// Grid for the root-logistic law with `p` covariates: T where the CF
    /// falls below 1e−12, output over ±max(12 sd, 25).
    pub fn root_logistic(p: usize) -> Self {
        let m = p as f64 + 1.0;
        let t_max = m * 1e12f64.ln() / PI;
        let sd = PI / (3.0 * m).sqrt();
        let half_width = (12.0 * sd).max(25.0);
        let points = ((2.0 * half_width / (sd / 50.0)).ceil() as usize | 1).max(4097);
        let nodes = {
            let n = (t_max * half_width / 0.2).ceil() as usize;
            (n.max(8192) + 1) & !1
        };
        Self {
            t_max,
            nodes,
            half_width,
            points,
        }
    }
}

/// Density and distribution function tabulated on an ascending grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TabulatedDistribution {
    pub grid: Vec<f64>,
    pub pdf: Vec<f64>,
    pub cdf: Vec<f64>,
    /// Mass of the inverted density before renormalization.
    pub raw_mass: f64,
}

impl TabulatedDistribution {
    fn trapezoid(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.grid
            .windows(2)
            .zip(self.pdf.windows(2))
            .map(|(x, d)| 0.5 * (x[1] - x[0]) * (f(x[0]) * d[0] + f(x[1]) * d[1]))
            .sum()
    }

    pub fn mean(&self) -> f64 {
        self.trapezoid(|x| x)
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.trapezoid(|x| (x - m) * (x - m))
    }

    /// Linear interpolation of the tabulated pdf.
    pub fn pdf_at(&self, x: f64) -> f64 {
        interp(&self.grid, &self.pdf, x)
    }

    pub fn cdf_at(&self, x: f64) -> f64 {
        if x <= self.grid[0] {
            return 0.0;
        }
        if x >= *self.grid.last().unwrap() {
            return 1.0;
        }
        interp(&self.grid, &self.cdf, x)
    }

    /// Inverse of the piecewise-linear cdf (monotone).
    pub fn quantile(&self, u: f64) -> f64 {
        let i = self.cdf.partition_point(|&c| c < u);
        if i == 0 {
            return self.grid[0];
        }
        if i >= self.cdf.len() {
            return *self.grid.last().unwrap();
        }
        let (c0, c1) = (self.cdf[i - 1], self.cdf[i]);
        if c1 <= c0 {
            return self.grid[i];
        }
        let w = (u - c0) / (c1 - c0);
        self.grid[i - 1] + w * (self.grid[i] - self.grid[i - 1])
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.quantile(open_unit(rng))
    }

    /// CSV with columns `grid,pdf,cdf`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("grid,pdf,cdf\n");
        for ((x, d), c) in self.grid.iter().zip(&self.pdf).zip(&self.cdf) {
            out.push_str(&format!("{x},{d},{c}\n"));
        }
        out
    }
}

fn interp(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let i = xs.partition_point(|&g| g < x);
    if i == 0 {
        return ys[0];
    }
    if i >= xs.len() {
        return *ys.last().unwrap();
    }
    let w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    ys[i - 1] + w * (ys[i] - ys[i - 1])
}

/// Invert a real, even, integrable characteristic function:
/// pdf(x) = (1/π) ∫₀^T cf(t) cos(tx) dt by composite Simpson, then the cdf
/// by cumulative trapezoid, renormalized to end at 1.
pub fn invert_symmetric_cf<F>(cf: F, grid: &InversionGrid) -> Result<TabulatedDistribution>
where
    F: Fn(f64) -> f64 + Sync,
{
    let c0 = cf(0.0);
    if !((c0 - 1.0).abs() <= 1e-9) {
        return Err(Error::InvalidCf(c0));
    }
    let nodes = (grid.nodes.max(2) + 1) & !1;
    let h = grid.t_max / nodes as f64;
    // Simpson weights folded into the CF values
    let weighted: Vec<(f64, f64)> = (0..=nodes)
        .map(|j| {
            let w = if j == 0 || j == nodes {
                1.0
            } else if j % 2 == 1 {
                4.0
            } else {
                2.0
            };
            let t = j as f64 * h;
            (t, w * h / 3.0 * cf(t))
        })
        .collect();
    let points = grid.points.max(3);
    let step = 2.0 * grid.half_width / (points - 1) as f64;
    let xs: Vec<f64> = (0..points)
        .map(|i| -grid.half_width + i as f64 * step)
        .collect();
    let mut pdf: Vec<f64> = xs
        .par_iter()
        .map(|&x| weighted.iter().map(|&(t, wc)| wc * (t * x).cos()).sum::<f64>() / PI)
        .collect();

    let (worst_i, worst) = pdf
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, v)| if v < acc.1 { (i, v) } else { acc });
    if worst < -1e-8 {
        return Err(Error::InversionFailure {
            x: xs[worst_i],
            value: worst,
        });
    }
    for v in pdf.iter_mut() {
        *v = v.max(0.0);
    }
    let mut cdf = Vec::with_capacity(points);
    let mut acc = 0.0;
    cdf.push(0.0);
    for i in 1..points {
        acc += 0.5 * step * (pdf[i - 1] + pdf[i]);
        cdf.push(acc);
    }
    let raw_mass = acc;
    if (raw_mass - 1.0).abs() > 1e-4 {
        return Err(Error::Domain(format!(
            "inverted density has mass {raw_mass}; widen the grid or raise T"
        )));
    }
    for v in pdf.iter_mut() {
        *v /= raw_mass;
    }
    for v in cdf.iter_mut() {
        *v /= raw_mass;
    }
    Ok(TabulatedDistribution {
        grid: xs,
        pdf,
        cdf,
        raw_mass,
    })
}

/// Tabulated root-logistic law for `p` covariates.
pub fn root_logistic_table(p: usize) -> Result<TabulatedDistribution> {
    invert_symmetric_cf(|t| root_cf(t, p), &InversionGrid::root_logistic(p))
}

/// Draws from the root-logistic law: p + 1 iid copies sum to Logistic(0, 1).
pub fn sample_root_logistic(p: usize, n: usize, seed: u64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(domain("sample size must be at least 1"));
    }
    let table = root_logistic_table(p)?;
    Ok(sample_table(&table, n, seed))
}

pub fn sample_table(table: &TabulatedDistribution, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = rng::stream(seed, &[]);
    (0..n).map(|_| table.sample(&mut rng)).collect()
}

/// One-sided Laplace transform (lower limit 0, the transform's domain) of
/// the doubled logistic density: 2∫₀^∞ e^{−tx} f(x; μ, s) dx. For μ = 0 this
/// is E[e^{−tX}] with X ~ Half-Logistic(0, s).
pub fn half_logistic_laplace(t: f64, params: &LogisticParams) -> Result<f64> {
    Ok(2.0 * logistic_laplace_one_sided(t, params)?)
}

/// ∫₀^∞ e^{−tx} f(x; μ, s) dx, absolute error ≤ 1e−7.
pub fn logistic_laplace_one_sided(t: f64, params: &LogisticParams) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(domain(format!(
            "Laplace transform evaluated on the divergent side: t must be > 0, got {t}"
        )));
    }
    let q = TanhSinh::with_tolerance(1e-10, 1e-12);
    let e = q.integrate_half_line(|x| (-t * x).exp() * params.pdf(x), 0.0);
    if !e.converged || e.error > 1e-7 {
        return Err(Error::Quadrature {
            value: e.value,
            error: e.error,
        });
    }
    Ok(e.value)
}

/// Reflect each draw about μ (x ↦ 2μ − x) whenever `flip` returns true.
/// Maps Half-Logistic(μ, s) draws to Logistic(μ, s) draws when `flip` is a
/// fair coin.
pub fn half_to_full_logistic_with<C: FnMut() -> bool>(
    samples: &[f64],
    params: &LogisticParams,
    mut flip: C,
) -> Result<Vec<f64>> {
    let mu = params.mu();
    if let Some(bad) = samples.iter().find(|&&x| !(x >= mu)) {
        return Err(Error::Precondition(format!(
            "half-logistic draws must be >= mu = {mu}, found {bad}"
        )));
    }
    Ok(samples
        .iter()
        .map(|&x| if flip() { 2.0 * mu - x } else { x })
        .collect())
}

pub fn half_to_full_logistic(samples: &[f64], params: &LogisticParams, seed: u64) -> Result<Vec<f64>> {
    let mut rng = rng::stream(seed, &[]);
    half_to_full_logistic_with(samples, params, || rng.random::<bool>())
}

/// Central difference of the logistic MGF at t = 0, approximating E[X] = μ.
pub fn mgf_derivative_numeric(params: &LogisticParams, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 0.5 / params.s()) {
        return Err(domain(format!(
            "delta must lie in (0, 1/(2s)) = (0, {}), got {delta}",
            0.5 / params.s()
        )));
    }
    let up = logistic_mgf(delta, params)?;
    let down = logistic_mgf(-delta, params)?;
    Ok((up - down) / (2.0 * delta))
}

/// One row of the generating-function curve export.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub p: usize,
    pub t: f64,
    /// None outside the MGF strip |t| < 1.
    pub root_mgf: Option<f64>,
    pub root_cf: f64,
}

pub fn genfunc_curves(ps: &[usize], ts: &[f64]) -> Vec<CurvePoint> {
    ps.iter()
        .flat_map(|&p| {
            ts.iter().map(move |&t| CurvePoint {
                p,
                t,
                root_mgf: root_mgf(t, p).ok(),
                root_cf: root_cf(t, p),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{half_logistic_sample, HalfLogistic};
    use crate::stats::{ks_critical_1pct, ks_statistic, variance};

    fn std() -> LogisticParams {
        LogisticParams::STANDARD
    }

    #[test]
    fn mgf_values() {
        let p = LogisticParams::new(2.0, 0.5).unwrap();
        assert_eq!(logistic_mgf(0.0, &p).unwrap(), 1.0);
        assert!((logistic_mgf(0.5, &std()).unwrap() - PI / 2.0).abs() < 1e-12);
        assert!((logistic_mgf(0.3, &std()).unwrap() - logistic_mgf(-0.3, &std()).unwrap()).abs() < 1e-14);
        assert!(logistic_mgf(1.0, &std()).is_err());
        assert!(logistic_mgf(2.0, &p).is_err());
    }

    #[test]
    fn mgf_matches_quadrature() {
        let q = TanhSinh::with_tolerance(1e-11, 1e-12);
        for t in [-0.8, -0.5, -0.2, 0.2, 0.5, 0.8] {
            let direct = q.integrate_real_line(|x| (t * x + std().ln_pdf(x)).exp());
            let closed = logistic_mgf(t, &std()).unwrap();
            assert!((direct.value - closed).abs() < 1e-6, "t={t}: {} vs {closed}", direct.value);
        }
    }

    #[test]
    fn cf_modulus() {
        assert_eq!(logistic_cf_modulus(0.0, &std()), 1.0);
        let v = logistic_cf_modulus(1.0, &std());
        assert!((v - PI / PI.sinh()).abs() < 1e-15);
        assert!((v - 0.27202).abs() < 1e-5);
        // numeric Fourier integral of the pdf
        let q = TanhSinh::with_tolerance(1e-11, 1e-12);
        let f = q.integrate_real_line(|x| x.cos() * std().pdf(x));
        assert!((f.value - v).abs() < 1e-8);
        let mut last = 1.0;
        for i in 1..200 {
            let c = logistic_cf_modulus(i as f64 * 0.05, &std());
            assert!(c < last && c > 0.0);
            last = c;
        }
        assert!(logistic_cf_modulus(500.0, &std()) >= 0.0);
        assert!(logistic_cf_modulus(500.0, &std()).is_finite());
    }

    #[test]
    fn root_laws() {
        assert!((root_mgf(0.4, 0).unwrap() - logistic_mgf(0.4, &std()).unwrap()).abs() < 1e-15);
        assert!((root_cf(0.4, 0) - logistic_cf_modulus(0.4, &std())).abs() < 1e-15);
        assert!((root_mgf(0.5, 1).unwrap() - (PI / 2.0).sqrt()).abs() < 1e-12);
        let seq: Vec<f64> = [0, 1, 3, 9].iter().map(|&p| root_mgf(0.8, p).unwrap()).collect();
        assert!(seq.windows(2).all(|w| w[1] < w[0]) && seq[3] > 1.0);
        for p in [0usize, 1, 3, 7] {
            for t in [0.1, 0.5, 1.0, 3.0, 10.0] {
                let r = root_cf(t, p);
                assert!(r > 0.0 && r < 1.0);
                assert!((r.powi(p as i32 + 1) - logistic_cf_modulus(t, &std())).abs() < 1e-12);
            }
            for t in [-0.9, -0.3, 0.6, 0.95] {
                let r = root_mgf(t, p).unwrap();
                let base = logistic_mgf(t, &std()).unwrap();
                assert!((r.powi(p as i32 + 1) - base).abs() < 1e-12 * base);
            }
            assert_eq!(root_cf(0.0, p), 1.0);
            assert_eq!(root_mgf(0.0, p).unwrap(), 1.0);
        }
        assert!(root_mgf(1.0, 3).is_err());
    }

    #[test]
    fn inversion_recovers_logistic() {
        let table = root_logistic_table(0).unwrap();
        assert!((table.pdf_at(0.0) - 0.25).abs() < 1e-4);
        assert!((table.raw_mass - 1.0).abs() < 1e-4);
        let n = table.grid.len();
        for i in 0..n / 2 {
            assert!((table.pdf[i] - table.pdf[n - 1 - i]).abs() < 1e-8);
        }
        for x in [-3.0, -0.5, 1.0, 4.0] {
            assert!((table.pdf_at(x) - std().pdf(x)).abs() < 1e-5);
            assert!((table.cdf_at(x) - std().cdf(x)).abs() < 1e-5);
        }
        // re-integrate the tabulated density back to the CF
        for t in [0.5, 1.0, 2.0] {
            let back: f64 = table
                .grid
                .windows(2)
                .zip(table.pdf.windows(2))
                .map(|(x, d)| 0.5 * (x[1] - x[0]) * ((t * x[0]).cos() * d[0] + (t * x[1]).cos() * d[1]))
                .sum();
            assert!((back - logistic_cf_modulus(t, &std())).abs() < 1e-4, "t={t}");
        }
    }

    #[test]
    fn inversion_rejects_bad_cfs() {
        let grid = InversionGrid::root_logistic(0);
        assert!(matches!(invert_symmetric_cf(|t| 2.0 * root_cf(t, 0), &grid), Err(Error::InvalidCf(_))));
        // a box CF is not positive definite: its "density" is a sinc with negative lobes
        let boxed = |t: f64| if t < 1.0 { 1.0 } else { 0.0 };
        assert!(matches!(invert_symmetric_cf(boxed, &grid), Err(Error::InversionFailure { .. })));
    }

    #[test]
    fn root_table_variance() {
        let table = root_logistic_table(3).unwrap();
        let target = PI * PI / 12.0;
        assert!((table.variance() / target - 1.0).abs() < 0.01, "{}", table.variance());
        assert!(table.mean().abs() < 1e-8);
    }

    #[test]
    fn root_samples() {
        let xs = sample_root_logistic(0, 100_000, 7).unwrap();
        let d = ks_statistic(&xs, |x| std().cdf(x));
        assert!(d < ks_critical_1pct(xs.len()), "KS {d}");
        assert_eq!(xs, sample_root_logistic(0, 100_000, 7).unwrap());
        let ys = sample_root_logistic(3, 80_000, 9).unwrap();
        assert!((variance(&ys) / (PI * PI / 12.0) - 1.0).abs() < 0.02);
        let sums: Vec<f64> = ys.chunks(4).map(|c| c.iter().sum()).collect();
        let d = ks_statistic(&sums, |x| std().cdf(x));
        assert!(d < ks_critical_1pct(sums.len()), "KS {d}");
        assert!(sample_root_logistic(3, 0, 1).is_err());
    }

    #[test]
    fn laplace_values() {
        let p = LogisticParams::new(3.0, 5.0).unwrap();
        assert!((half_logistic_laplace(0.1, &p).unwrap() - 0.673972).abs() < 1e-4);
        assert!((logistic_laplace_one_sided(0.1, &p).unwrap() - 0.336986).abs() < 1e-4);
        let near_zero = half_logistic_laplace(1e-6, &LogisticParams::new(0.0, 2.0).unwrap()).unwrap();
        assert!((near_zero - 1.0).abs() < 1e-4);
        assert!(half_logistic_laplace(0.0, &p).is_err());
        assert!(half_logistic_laplace(-0.1, &p).is_err());
        // for μ = 0 it is the expectation under the half-logistic
        let h = LogisticParams::new(0.0, 1.5).unwrap();
        let q = TanhSinh::default();
        let e = q.integrate_half_line(|x| (-0.7 * x).exp() * HalfLogistic(h).pdf(x), 0.0);
        assert!((half_logistic_laplace(0.7, &h).unwrap() - e.value).abs() < 1e-9);
    }

    #[test]
    fn reflection() {
        let p = std();
        let xs = [0.5, 1.0, 2.0];
        assert_eq!(half_to_full_logistic_with(&xs, &p, || true).unwrap(), vec![-0.5, -1.0, -2.0]);
        assert_eq!(half_to_full_logistic_with(&xs, &p, || false).unwrap(), xs.to_vec());
        let shifted = LogisticParams::new(3.0, 1.0).unwrap();
        assert_eq!(half_to_full_logistic_with(&[4.0], &shifted, || true).unwrap(), vec![2.0]);
        assert!(half_to_full_logistic(&[-0.1], &p, 1).is_err());

        let half = half_logistic_sample(&p, 100_000, 21);
        let full = half_to_full_logistic(&half, &p, 22).unwrap();
        let d = ks_statistic(&full, |x| p.cdf(x));
        assert!(d < ks_critical_1pct(full.len()), "KS {d}");
    }

    #[test]
    fn mgf_derivative() {
        let p = LogisticParams::new(7.0, 3.0).unwrap();
        assert!((mgf_derivative_numeric(&p, 1e-4).unwrap() - 7.0).abs() < 0.01);
        assert!(mgf_derivative_numeric(&std(), 1e-4).unwrap().abs() < 1e-6);
        let p5 = LogisticParams::new(5.0, 3.0).unwrap();
        assert!((mgf_derivative_numeric(&p5, 1e-4).unwrap() - 5.0).abs() < 0.01);
        assert!(mgf_derivative_numeric(&p, 0.0).is_err());
        assert!(mgf_derivative_numeric(&p, 0.2).is_err());
    }

    #[test]
    fn curves_omit_points_outside_strip() {
        let rows = genfunc_curves(&[0, 1], &[0.0, 0.5, 1.2]);
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().filter(|r| r.t == 1.2).all(|r| r.root_mgf.is_none()));
        assert!(rows.iter().filter(|r| r.t < 1.0).all(|r| r.root_mgf.is_some()));
    }
}
