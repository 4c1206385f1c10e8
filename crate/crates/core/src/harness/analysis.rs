use std::collections::BTreeMap;

use serde::Serialize;
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::algorithms::RunRecord;
use crate::harness::output::CsvRow;
use crate::{Error, Result};

/// The part of a run the statistics look at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunSample {
    pub n: usize,
    pub success: bool,
    pub evaluations: u64,
}

impl From<&RunRecord> for RunSample {
    fn from(r: &RunRecord) -> Self {
        RunSample {
            n: r.n,
            success: r.success,
            evaluations: r.evaluations,
        }
    }
}

impl From<&CsvRow> for RunSample {
    fn from(r: &CsvRow) -> Self {
        RunSample {
            n: r.n,
            success: r.success,
            evaluations: r.evaluations,
        }
    }
}

/// Statistics of the successful runs at one problem size.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SizeSummary {
    pub n: usize,
    pub runs: usize,
    pub successes: usize,
    pub censored: usize,
    pub mean: f64,
    pub median: f64,
    /// Sample standard deviation; 0 with a single success.
    pub std: f64,
    /// Half-width of the 95% t-interval for the mean.
    pub ci_half_width: f64,
}

impl SizeSummary {
    pub fn success_rate(&self) -> f64 {
        self.successes as f64 / self.runs as f64
    }
}

fn t_quantile(df: usize) -> f64 {
    StudentsT::new(0.0, 1.0, df as f64)
        .map(|t| t.inverse_cdf(0.975))
        .unwrap_or(f64::NAN)
}

/// Per-size statistics, ordered by `n`. Censored runs are counted but do
/// not enter the mean, median or spread.
pub fn summarize<'a, I>(samples: I) -> Vec<SizeSummary>
where
    I: IntoIterator<Item = &'a RunSample>,
{
    let mut groups: BTreeMap<usize, (usize, Vec<u64>)> = BTreeMap::new();
    for s in samples {
        let g = groups.entry(s.n).or_default();
        g.0 += 1;
        if s.success {
            g.1.push(s.evaluations);
        }
    }
    groups
        .into_iter()
        .map(|(n, (runs, mut evals))| {
            evals.sort_unstable();
            let k = evals.len();
            let (mean, median, std) = if k == 0 {
                (f64::NAN, f64::NAN, f64::NAN)
            } else {
                let mean = evals.iter().map(|&e| e as f64).sum::<f64>() / k as f64;
                let median = if k % 2 == 1 {
                    evals[k / 2] as f64
                } else {
                    (evals[k / 2 - 1] as f64 + evals[k / 2] as f64) / 2.0
                };
                let std = if k > 1 {
                    (evals.iter().map(|&e| (e as f64 - mean).powi(2)).sum::<f64>() / (k - 1) as f64).sqrt()
                } else {
                    0.0
                };
                (mean, median, std)
            };
            let ci_half_width = if k > 1 {
                t_quantile(k - 1) * std / (k as f64).sqrt()
            } else {
                f64::NAN
            };
            SizeSummary {
                n,
                runs,
                successes: k,
                censored: runs - k,
                mean,
                median,
                std,
                ci_half_width,
            }
        })
        .collect()
}

/// Least-squares line through `(ln n, ln mean)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    /// Half-width of the 95% t-interval for the slope.
    pub slope_half_width: f64,
    pub sizes: Vec<SizeSummary>,
    /// Censored runs left out, summed over all sizes.
    pub censored: usize,
}

pub const MIN_SIZES: usize = 3;
pub const MIN_SUCCESSES: usize = 10;

pub fn fit_scaling<'a, I>(samples: I) -> Result<ScalingFit>
where
    I: IntoIterator<Item = &'a RunSample>,
{
    let sizes = summarize(samples);
    if sizes.len() < MIN_SIZES {
        return Err(Error::Analysis(format!(
            "need at least {MIN_SIZES} distinct n values, got {}",
            sizes.len()
        )));
    }
    if let Some(s) = sizes.iter().find(|s| s.successes < MIN_SUCCESSES) {
        return Err(Error::Analysis(format!(
            "need at least {MIN_SUCCESSES} successful runs per n, got {} at n = {}",
            s.successes, s.n
        )));
    }
    let xs: Vec<f64> = sizes.iter().map(|s| (s.n as f64).ln()).collect();
    let ys: Vec<f64> = sizes.iter().map(|s| s.mean.ln()).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let df = xs.len() - 2;
    let se = (sse / df as f64 / sxx).sqrt();
    let censored = sizes.iter().map(|s| s.censored).sum();
    Ok(ScalingFit {
        slope,
        intercept,
        slope_half_width: t_quantile(df) * se,
        sizes,
        censored,
    })
}
