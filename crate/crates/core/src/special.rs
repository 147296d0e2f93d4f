//! Gamma-family special functions on the positive half-line.

pub use statrs::function::gamma::ln_gamma;

/// B_{2k} / (2k) for k = 1..8.
const DIGAMMA_ASYMP: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

/// B_{2k} for k = 1..8.
const BERNOULLI_EVEN: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

const ASYMPTOTIC_FROM: f64 = 10.0;

/// ln B(a, b) via log-gamma.
pub fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

/// Digamma ψ(x) for x > 0: upward recurrence to x ≥ 10, then the
/// asymptotic series in 1/x². Returns NaN for x ≤ 0 or NaN input.
pub fn digamma(x: f64) -> f64 {
    if !(x > 0.0) {
        return f64::NAN;
    }
    if x.is_infinite() {
        return f64::INFINITY;
    }
    let mut acc = 0.0;
    let mut x = x;
    while x < ASYMPTOTIC_FROM {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let mut term = inv2;
    let mut series = 0.0;
    for c in DIGAMMA_ASYMP {
        series += c * term;
        term *= inv2;
    }
    acc + x.ln() - 0.5 / x - series
}

/// Trigamma ψ′(x) for x > 0, same scheme as [`digamma`].
pub fn trigamma(x: f64) -> f64 {
    if !(x > 0.0) {
        return f64::NAN;
    }
    if x.is_infinite() {
        return 0.0;
    }
    let mut acc = 0.0;
    let mut x = x;
    while x < ASYMPTOTIC_FROM {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    // 1/x + 1/(2x²) + Σ B_{2k} / x^{2k+1}
    let mut term = inv * inv2;
    let mut series = 0.0;
    for b in BERNOULLI_EVEN {
        series += b * term;
        term *= inv2;
    }
    acc + inv + 0.5 * inv2 + series
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn digamma_known_values() {
        assert!((digamma(1.0) + EULER_GAMMA).abs() < 1e-14);
        assert!((digamma(0.5) + EULER_GAMMA + 2.0 * 2f64.ln()).abs() < 1e-14);
        // ψ(x+1) = ψ(x) + 1/x across the recurrence boundary
        for &x in &[0.3, 1.7, 9.5, 10.0, 25.0] {
            assert!((digamma(x + 1.0) - digamma(x) - 1.0 / x).abs() < 1e-13, "x={x}");
        }
        assert!(digamma(0.0).is_nan());
        assert!(digamma(-1.5).is_nan());
    }

    #[test]
    fn trigamma_known_values() {
        assert!(rel(trigamma(1.0), PI * PI / 6.0) < 1e-13);
        assert!(rel(trigamma(0.5), PI * PI / 2.0) < 1e-13);
        assert!(rel(trigamma(2.0), PI * PI / 6.0 - 1.0) < 1e-13);
        for &x in &[0.2, 1.129, 2.633, 9.9, 50.0] {
            let lhs = trigamma(x) - trigamma(x + 1.0);
            assert!(rel(lhs, 1.0 / (x * x)) < 1e-11, "x={x}");
        }
    }

    #[test]
    fn trigamma_matches_numeric_derivative_of_digamma() {
        for &x in &[0.7, 1.129, 2.633, 5.0, 12.0] {
            let h = 1e-5 * x;
            let fd = (digamma(x + h) - digamma(x - h)) / (2.0 * h);
            assert!(rel(trigamma(x), fd) < 1e-8, "x={x}");
        }
    }

    #[test]
    fn ln_beta_uniform() {
        assert!(ln_beta(1.0, 1.0).abs() < 1e-14);
        assert!((ln_beta(0.5, 0.5) - PI.ln()).abs() < 1e-13);
    }
}
