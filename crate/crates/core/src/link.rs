//! Numerically stable logit-link helpers, branch-split at zero.

/// Inverse logit, 1 / (1 + e^{-x}).
#[inline]
pub fn expit(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// ln(θ / (1 − θ)).
#[inline]
pub fn logit(theta: f64) -> f64 {
    if theta < 0.5 {
        (theta / (1.0 - theta)).ln()
    } else {
        -((1.0 - theta) / theta).ln()
    }
}

/// ln(1 + e^x).
#[inline]
pub fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// ln expit(x) = −softplus(−x).
#[inline]
pub fn ln_expit(x: f64) -> f64 {
    -softplus(-x)
}
