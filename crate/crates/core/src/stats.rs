//! Correlation, ensemble summaries and least-squares fits.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};

fn check_pair(x: &[f64], y: &[f64], min: usize) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::invalid(format!(
            "sequences differ in length: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < min {
        return Err(Error::invalid(format!(
            "need at least {min} paired values, got {}",
            x.len()
        )));
    }
    Ok(())
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Pearson correlation; `None` when either input is constant.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<Option<f64>> {
    check_pair(x, y, 2)?;
    let (mx, my) = (mean(x), mean(y));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Ok(None);
    }
    Ok(Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0)))
}

/// 1-based fractional ranks; tied values share the mean of their ranks.
pub fn average_ranks(v: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut ranks = vec![0.0; v.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && v[order[end]] == v[order[start]] {
            end += 1;
        }
        // Positions start..end hold ranks start+1..=end.
        let shared = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = shared;
        }
        start = end;
    }
    ranks
}

/// Spearman's rank correlation with averaged ties; `None` for a constant input.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<Option<f64>> {
    check_pair(x, y, 2)?;
    pearson(&average_ranks(x), &average_ranks(y))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegressionFit {
    pub slope: f64,
    pub intercept: f64,
    /// Zero when `y` is constant.
    pub r: f64,
    pub r_squared: f64,
    pub sample_count: usize,
}

/// Least-squares line `y = slope * x + intercept` with its Pearson `r`.
pub fn pearson_and_fit(x: &[f64], y: &[f64]) -> Result<RegressionFit> {
    check_pair(x, y, 3)?;
    let (mx, my) = (mean(x), mean(y));
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::NoFit("x is constant".into()));
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let r = pearson(x, y)?.unwrap_or(0.0);
    Ok(RegressionFit {
        slope,
        intercept: my - slope * mx,
        r,
        r_squared: r * r,
        sample_count: x.len(),
    })
}

/// Two-sided p-value of `H0: rho = 0` from the t statistic
/// `r * sqrt((n - 2) / (1 - r^2))` with `n - 2` degrees of freedom.
pub fn correlation_p_value(r: f64, n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::invalid("correlation test needs at least 3 samples"));
    }
    if !(-1.0..=1.0).contains(&r) {
        return Err(Error::invalid(format!("{r} is not a correlation")));
    }
    if r.abs() == 1.0 {
        return Ok(0.0);
    }
    let df = (n - 2) as f64;
    let t = r * (df / (1.0 - r * r)).sqrt();
    let dist = StudentsT::new(0.0, 1.0, df).map_err(|e| Error::invalid(e.to_string()))?;
    Ok(2.0 * dist.sf(t.abs()))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnsembleSummary {
    pub sample_count: usize,
    pub mean: f64,
    /// Sample standard deviation (`n - 1`); `None` for a single value.
    pub standard_deviation: Option<f64>,
    /// Half-width of the two-sided 0.95 t-interval for the mean.
    pub confidence_half_width: Option<f64>,
}

impl EnsembleSummary {
    pub fn standard_error(&self) -> Option<f64> {
        self.standard_deviation
            .map(|sd| sd / (self.sample_count as f64).sqrt())
    }
}

pub fn summarize(values: &[f64]) -> Result<EnsembleSummary> {
    if values.is_empty() {
        return Err(Error::invalid("cannot summarize an empty group"));
    }
    let n = values.len();
    let m = mean(values);
    let (sd, half) = if n >= 2 {
        let var = values.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1) as f64;
        let sd = var.sqrt();
        let t = StudentsT::new(0.0, 1.0, (n - 1) as f64)
            .map_err(|e| Error::invalid(e.to_string()))?
            .inverse_cdf(0.975);
        (Some(sd), Some(t * sd / (n as f64).sqrt()))
    } else {
        (None, None)
    };
    Ok(EnsembleSummary {
        sample_count: n,
        mean: m,
        standard_deviation: sd,
        confidence_half_width: half,
    })
}

/// One summary per distinct key, in key order.
pub fn summarize_by<K: Ord>(
    pairs: impl IntoIterator<Item = (K, f64)>,
) -> Result<BTreeMap<K, EnsembleSummary>> {
    let mut groups: BTreeMap<K, Vec<f64>> = BTreeMap::new();
    for (k, v) in pairs {
        groups.entry(k).or_default().push(v);
    }
    groups
        .into_iter()
        .map(|(k, v)| summarize(&v).map(|s| (k, s)))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultipleFit {
    /// Intercept first, then one coefficient per predictor.
    pub coefficients: Vec<f64>,
    pub r_squared: f64,
    pub sample_count: usize,
}

/// Ordinary least squares of `y` on the given predictor columns plus an
/// intercept.
pub fn multiple_regression(predictors: &[Vec<f64>], y: &[f64]) -> Result<MultipleFit> {
    let n = y.len();
    let p = predictors.len();
    if predictors.iter().any(|c| c.len() != n) {
        return Err(Error::invalid("predictor columns differ in length from y"));
    }
    if n <= p + 1 {
        return Err(Error::NoFit(format!(
            "{n} samples cannot fit {p} predictors and an intercept"
        )));
    }
    let x = DMatrix::from_fn(
        n,
        p + 1,
        |i, j| if j == 0 { 1.0 } else { predictors[j - 1][i] },
    );
    let yv = DVector::from_column_slice(y);
    let svd = x.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let tol = smax * 1e-12 * n.max(p + 1) as f64;
    if svd.rank(tol) < p + 1 {
        return Err(Error::NoFit("predictors are collinear".into()));
    }
    let beta = svd
        .solve(&yv, tol)
        .map_err(|e| Error::NoFit(e.to_string()))?;
    let fitted = &x * &beta;
    let my = mean(y);
    let ss_tot: f64 = y.iter().map(|v| (v - my).powi(2)).sum();
    let ss_res: f64 = y
        .iter()
        .zip(fitted.iter())
        .map(|(a, b)| (a - b).powi(2))
        .sum();
    Ok(MultipleFit {
        coefficients: beta.iter().copied().collect(),
        r_squared: if ss_tot == 0.0 {
            1.0
        } else {
            1.0 - ss_res / ss_tot
        },
        sample_count: n,
    })
}
