use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Covariates (by column), binary responses, and optional generating truth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub columns: Vec<Vec<f64>>,
    pub y: Vec<u8>,
    pub standardized: bool,
    pub truth: Option<Vec<f64>>,
    pub seed: Option<u64>,
}

impl Dataset {
    pub fn new(columns: Vec<Vec<f64>>, y: Vec<u8>) -> Result<Self> {
        // a single empty column is how callers spell "p = 1, n = 0"
        for (j, c) in columns.iter().enumerate() {
            if c.len() != y.len() {
                return Err(domain(format!(
                    "covariate column {j} has {} rows, responses have {}",
                    c.len(),
                    y.len()
                )));
            }
        }
        if let Some(bad) = y.iter().find(|&&v| v > 1) {
            return Err(domain(format!("responses must be 0 or 1, found {bad}")));
        }
        Ok(Self {
            columns,
            y,
            standardized: false,
            truth: None,
            seed: None,
        })
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }

    pub fn p(&self) -> usize {
        self.columns.len()
    }

    pub fn linear_predictor(&self, i: usize, beta: &[f64]) -> f64 {
        beta[0]
            + self
                .columns
                .iter()
                .zip(&beta[1..])
                .map(|(c, b)| b * c[i])
                .sum::<f64>()
    }

    pub fn successes(&self) -> usize {
        self.y.iter().filter(|&&v| v == 1).count()
    }

    /// CSV with header `y,x1,…,xp`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("y");
        for j in 0..self.p() {
            out.push_str(&format!(",x{}", j + 1));
        }
        out.push('\n');
        for i in 0..self.n() {
            out.push_str(&self.y[i].to_string());
            for c in &self.columns {
                out.push_str(&format!(",{}", c[i]));
            }
            out.push('\n');
        }
        out
    }

    /// Parse the `to_csv` layout; `#` lines are comments. The first column
    /// must be `y`.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| domain("empty dataset file"))?;
        let names: Vec<&str> = header.split(',').map(str::trim).collect();
        if names.first() != Some(&"y") {
            return Err(domain(format!("first column must be y, header was {header:?}")));
        }
        let p = names.len() - 1;
        let mut y = Vec::new();
        let mut columns = vec![Vec::new(); p];
        for (lineno, line) in lines.enumerate() {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != p + 1 {
                return Err(domain(format!(
                    "data row {} has {} fields, expected {}",
                    lineno + 1,
                    fields.len(),
                    p + 1
                )));
            }
            let yv: f64 = fields[0]
                .parse()
                .map_err(|_| domain(format!("bad response {:?}", fields[0])))?;
            y.push(match yv {
                0.0 => 0,
                1.0 => 1,
                v => return Err(domain(format!("responses must be 0 or 1, found {v}"))),
            });
            for (c, f) in columns.iter_mut().zip(&fields[1..]) {
                c.push(f.parse().map_err(|_| domain(format!("bad covariate {f:?}")))?);
            }
        }
        Dataset::new(columns, y)
    }
}

/// Column means and sample standard deviations used to standardize.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardization {
    pub means: Vec<f64>,
    pub sds: Vec<f64>,
}

impl Standardization {
    pub fn apply(&self, columns: &[Vec<f64>]) -> Vec<Vec<f64>> {
        columns
            .iter()
            .zip(self.means.iter().zip(&self.sds))
            .map(|(c, (m, s))| c.iter().map(|x| (x - m) / s).collect())
            .collect()
    }

    pub fn invert(&self, columns: &[Vec<f64>]) -> Vec<Vec<f64>> {
        columns
            .iter()
            .zip(self.means.iter().zip(&self.sds))
            .map(|(c, (m, s))| c.iter().map(|x| x * s + m).collect())
            .collect()
    }
}

/// Center each column and scale to unit sample sd (denominator n − 1).
pub fn standardize(columns: &[Vec<f64>]) -> Result<(Vec<Vec<f64>>, Standardization)> {
    let mut means = Vec::with_capacity(columns.len());
    let mut sds = Vec::with_capacity(columns.len());
    for (j, c) in columns.iter().enumerate() {
        if c.len() < 2 {
            return Err(domain(format!(
                "standardizing needs at least 2 rows, column {j} has {}",
                c.len()
            )));
        }
        let m = crate::stats::mean(c);
        let s = crate::stats::sd(c);
        if !(s > 1e-12 * (1.0 + m.abs())) {
            return Err(Error::ConstantColumn(j));
        }
        means.push(m);
        sds.push(s);
    }
    let st = Standardization { means, sds };
    Ok((st.apply(columns), st))
}
