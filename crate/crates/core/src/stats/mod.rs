//! Statistics kernel: correlation and significance tests, with the
//! distribution functions behind them.

mod correlation;
mod dunnett;
mod omnibus;
mod ptukey;
mod quadrature;
pub mod ranks;
pub mod special;

use std::fmt;

use thiserror::Error;

pub use correlation::{correlation_matrix, pearson, spearman, CorrelationCell, CorrelationMatrix, Stars};
pub use dunnett::{dunnett_c, PairwiseDecision};
pub use omnibus::{kruskal_wallis, levene, one_way_anova, Center};
pub use ptukey::{studentized_range_cdf, studentized_range_quantile};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    KruskalWallis,
    Levene,
    Anova,
    PearsonT,
    SpearmanT,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::KruskalWallis => "kruskal_wallis",
            Method::Levene => "levene",
            Method::Anova => "anova",
            Method::PearsonT => "pearson",
            Method::SpearmanT => "spearman",
        })
    }
}

/// Degrees of freedom of a test statistic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Df {
    One(f64),
    Two(f64, f64),
}

impl fmt::Display for Df {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Df::One(d) => write!(f, "{d}"),
            Df::Two(a, b) => write!(f, "{a};{b}"),
        }
    }
}

/// Conditions under which a result is reported but needs a caveat.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultFlag {
    /// Within-group variance is zero while group means differ; `F` is infinite.
    ZeroWithinVariance,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestResult {
    /// The test statistic (`r` / `ρ` for correlations).
    pub statistic: f64,
    pub df: Df,
    pub p_value: f64,
    pub method: Method,
    pub flag: Option<ResultFlag>,
}

impl TestResult {
    fn new(method: Method, statistic: f64, df: Df, p_value: f64) -> Self {
        TestResult { statistic, df, p_value: p_value.clamp(0.0, 1.0), method, flag: None }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatsError {
    #[error("samples have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("need at least {needed} observations, got {got}")]
    TooFewObservations { needed: usize, got: usize },
    #[error("input is constant; correlation undefined")]
    ConstantInput,
    #[error("need at least two groups, got {0}")]
    TooFewGroups(usize),
    #[error("group {group} has {size} observations, needs at least {needed}")]
    GroupTooSmall { group: usize, size: usize, needed: usize },
    #[error("all values are tied")]
    AllValuesTied,
    #[error("absolute deviations are constant within every group; Levene's W is undefined")]
    DegenerateGroups,
    #[error("data has no variation at all")]
    NoVariation,
    #[error("non-finite value in input")]
    NonFinite,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("root finding did not converge after {iterations} iterations (bracket width {achieved:e})")]
    ConvergenceFailure { iterations: usize, achieved: f64 },
}

fn check_finite(values: &[f64]) -> Result<(), StatsError> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(StatsError::NonFinite)
    }
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Sample variance with `n − 1` denominator.
fn sample_variance(values: &[f64]) -> f64 {
    let m = mean(values);
    values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (values.len() as f64 - 1.0)
}
