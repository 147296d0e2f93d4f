use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::{ln_likelihood, Dataset};
use crate::error::{domain, Result};
use crate::link::expit;

const MAX_ITER: usize = 50;
const GRAD_TOL: f64 = 1e-8;
/// Any coefficient beyond this magnitude is taken as divergence (separation).
const DIVERGENCE: f64 = 30.0;
/// Fitted probabilities this close to 0 or 1 mean the likelihood has no
/// interior maximum; the score vanishes only asymptotically there.
const BOUNDARY: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MleFit {
    pub coefficients: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
    /// Max-norm of the score at the returned estimate.
    pub grad_norm: f64,
}

fn score_and_information(data: &Dataset, beta: &[f64]) -> (DVector<f64>, DMatrix<f64>) {
    let d = data.p() + 1;
    let mut g = DVector::zeros(d);
    let mut h = DMatrix::zeros(d, d);
    let mut row = vec![1.0; d];
    for i in 0..data.n() {
        for j in 0..data.p() {
            row[j + 1] = data.columns[j][i];
        }
        let prob = expit(data.linear_predictor(i, beta));
        let resid = data.y[i] as f64 - prob;
        let w = prob * (1.0 - prob);
        for a in 0..d {
            g[a] += resid * row[a];
            for b in 0..=a {
                h[(a, b)] += w * row[a] * row[b];
            }
        }
    }
    for a in 0..d {
        for b in 0..a {
            h[(b, a)] = h[(a, b)];
        }
    }
    (g, h)
}

/// Newton–Raphson with step halving. Separation shows up as diverging
/// coefficients; the fit is then flagged, not failed.
pub fn logistic_mle(data: &Dataset) -> Result<MleFit> {
    if data.n() == 0 {
        return Err(domain("maximum likelihood needs at least one observation"));
    }
    let d = data.p() + 1;
    let mut beta = vec![0.0; d];
    let mut ll = ln_likelihood(&data.columns, &data.y, &beta);
    let mut iterations = 0;
    let mut diverged = false;
    loop {
        let (g, h) = score_and_information(data, &beta);
        let grad_norm = g.amax();
        if grad_norm < GRAD_TOL || iterations >= MAX_ITER || diverged {
            let boundary = (0..data.n()).any(|i| {
                let pr = expit(data.linear_predictor(i, &beta));
                pr < BOUNDARY || pr > 1.0 - BOUNDARY
            });
            return Ok(MleFit {
                converged: grad_norm < GRAD_TOL && !diverged && !boundary,
                coefficients: beta,
                iterations,
                grad_norm,
            });
        }
        iterations += 1;
        let step = match h.clone().cholesky() {
            Some(ch) => ch.solve(&g),
            // singular information: fall back to a damped gradient step
            None => match (h + DMatrix::identity(d, d) * 1e-8).cholesky() {
                Some(ch) => ch.solve(&g),
                None => g.clone(),
            },
        };
        let mut t = 1.0;
        loop {
            let cand: Vec<f64> = beta.iter().zip(step.iter()).map(|(b, s)| b + t * s).collect();
            let cand_ll = ln_likelihood(&data.columns, &data.y, &cand);
            if cand_ll >= ll || t < 1e-10 {
                beta = cand;
                ll = cand_ll;
                break;
            }
            t *= 0.5;
        }
        diverged = beta.iter().any(|b| b.abs() > DIVERGENCE);
    }
}
