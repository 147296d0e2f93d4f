//! Moments of η = logit(θ) when θ ~ Beta(α, β).
//!
//! Two independent routes: tanh-sinh quadrature in θ-space, and the closed
//! form E[η] = ψ(α) − ψ(β), Var[η] = ψ′(α) + ψ′(β). Prior construction
//! uses the closed form; the quadrature route exists to be checked
//! against it.

use serde::{Deserialize, Serialize};

use crate::distributions::BetaShape;
use crate::error::{Error, Result};
use crate::quadrature::{Estimate, TanhSinh};
use crate::special::{digamma, trigamma};

/// Mean and variance of η, each with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EtaMoments {
    pub mu_eta: f64,
    pub var_eta: f64,
    pub mu_eta_error: f64,
    pub var_eta_error: f64,
}

/// A value paired with its absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentEstimate {
    pub value: f64,
    pub error: f64,
}

/// E[η^k] by quadrature of logit(θ)^k against the Beta density on (0, 1).
pub fn eta_moment(shape: &BetaShape, k: u32) -> Result<MomentEstimate> {
    if !(k == 1 || k == 2) {
        return Err(Error::Unsupported(format!(
            "eta moments are implemented for k = 1, 2 only (got k = {k})"
        )));
    }
    let q = TanhSinh::with_tolerance(1e-11, 1e-13);
    let Estimate {
        value,
        error,
        converged,
    } = q.integrate_with_distances(
        |_, theta, one_minus| {
            let (lt, l1t) = (theta.ln(), one_minus.ln());
            let eta = lt - l1t;
            let w = shape.ln_pdf_split(lt, l1t).exp();
            if w == 0.0 {
                0.0
            } else {
                eta.powi(k as i32) * w
            }
        },
        0.0,
        1.0,
    );
    if !converged || error > 1e-8 {
        return Err(Error::Quadrature { value, error });
    }
    Ok(MomentEstimate { value, error })
}

/// (μ_η, σ²_η) by quadrature.
pub fn eta_mean_var(shape: &BetaShape) -> Result<EtaMoments> {
    let m1 = eta_moment(shape, 1)?;
    let m2 = eta_moment(shape, 2)?;
    let var_eta = m2.value - m1.value * m1.value;
    if !(var_eta > 0.0) {
        return Err(Error::Domain(format!(
            "quadrature produced non-positive eta variance {var_eta}"
        )));
    }
    Ok(EtaMoments {
        mu_eta: m1.value,
        var_eta,
        mu_eta_error: m1.error,
        var_eta_error: m2.error + 2.0 * m1.value.abs() * m1.error,
    })
}

/// (μ_η, σ²_η) from digamma/trigamma.
pub fn eta_mean_var_analytic(shape: &BetaShape) -> Result<EtaMoments> {
    let (a, b) = (shape.alpha(), shape.beta());
    let mu_eta = digamma(a) - digamma(b);
    let var_eta = trigamma(a) + trigamma(b);
    if !(mu_eta.is_finite() && var_eta > 0.0) {
        return Err(Error::Domain(format!("eta moments undefined for Beta({a}, {b})")));
    }
    Ok(EtaMoments {
        mu_eta,
        var_eta,
        mu_eta_error: 1e-12 * (1.0 + mu_eta.abs()),
        var_eta_error: 1e-12 * var_eta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn shape(a: f64, b: f64) -> BetaShape {
        BetaShape::new(a, b).unwrap()
    }

    #[test]
    fn uniform_target() {
        let m1 = eta_moment(&BetaShape::UNIFORM, 1).unwrap();
        assert!(m1.value.abs() < 1e-8 && m1.error <= 1e-8);
        let m2 = eta_moment(&BetaShape::UNIFORM, 2).unwrap();
        assert!((m2.value - PI * PI / 3.0).abs() < 1e-6);
        let a = eta_mean_var_analytic(&BetaShape::UNIFORM).unwrap();
        assert_eq!(a.mu_eta, 0.0);
        assert!((a.var_eta - PI * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn unsupported_order() {
        assert!(matches!(eta_moment(&BetaShape::UNIFORM, 3), Err(Error::Unsupported(_))));
        assert!(matches!(eta_moment(&BetaShape::UNIFORM, 0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn reference_target() {
        let s = shape(2.633, 1.129);
        let q = eta_mean_var(&s).unwrap();
        assert!((q.mu_eta - 1.150).abs() < 0.003);
        assert!((q.var_eta - 1.843).abs() < 0.003);
        let m1 = eta_moment(&s, 1).unwrap();
        assert!((m1.value - 1.150).abs() < 0.002);
    }

    #[test]
    fn symmetric_shapes_center() {
        let s = shape(5.0, 5.0);
        assert!(eta_mean_var(&s).unwrap().mu_eta.abs() < 1e-8);
        assert_eq!(eta_mean_var_analytic(&s).unwrap().mu_eta, 0.0);
    }

    #[test]
    fn swap_negates_mean() {
        let s = shape(2.633, 1.129);
        let a = eta_mean_var_analytic(&s).unwrap();
        let b = eta_mean_var_analytic(&s.swapped()).unwrap();
        assert_eq!(a.mu_eta, -b.mu_eta);
        assert_eq!(a.var_eta, b.var_eta);
        let qa = eta_mean_var(&s).unwrap();
        let qb = eta_mean_var(&s.swapped()).unwrap();
        assert!((qa.mu_eta + qb.mu_eta).abs() < 1e-8);
    }

    #[test]
    fn routes_agree_on_grid() {
        let grid = [0.5, 1.0, 1.129, 2.0, 2.633, 5.0, 10.0];
        for &a in &grid {
            for &b in &grid {
                let s = shape(a, b);
                let q = eta_mean_var(&s).unwrap();
                let o = eta_mean_var_analytic(&s).unwrap();
                assert!((q.mu_eta - o.mu_eta).abs() < 1e-6, "({a},{b}) mean");
                assert!((q.var_eta - o.var_eta).abs() < 1e-6, "({a},{b}) var");
            }
        }
    }

    #[test]
    fn variance_shrinks_with_concentration() {
        let vs: Vec<f64> = [1.0, 2.0, 5.0, 10.0]
            .iter()
            .map(|&a| eta_mean_var(&shape(a, a)).unwrap().var_eta)
            .collect();
        assert!(vs.windows(2).all(|w| w[1] < w[0]), "{vs:?}");
    }
}
