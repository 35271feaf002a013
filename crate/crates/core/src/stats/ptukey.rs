//! Studentized range distribution.
//!
//! For `k` standard normals and an independent scale `s ~ χ_ν/√ν`,
//!
//! ```text
//! P(Q ≤ q) = ∫ f(s) W(q·s) ds,   W(w) = k ∫ φ(z) [Φ(z) − Φ(z − w)]^(k−1) dz
//! ```
//!
//! The outer integral is taken over `x = ln s`, where the weight
//! `exp(ν·x − ν·e^(2x)/2)` is smooth and unimodal at `x = 0`. The weight is
//! normalized numerically, which cancels most of the quadrature error.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::quadrature::composite_rule;
use super::special::{normal_cdf, normal_pdf};
use super::StatsError;

const Z_LIMIT: f64 = 8.5;
/// Outer integrand is truncated where its log weight falls this far below the peak.
const LOG_CUTOFF: f64 = 45.0;
/// Beyond this the scale variable is treated as degenerate at 1.
const DF_INFINITE: f64 = 1e7;
const MAX_ROOT_ITER: usize = 200;

struct InnerRule {
    nodes: Vec<(f64, f64)>,
    /// `w·φ(z)` and `Φ(z)` at each node.
    weighted_pdf: Vec<f64>,
    cdf: Vec<f64>,
}

fn inner_rule() -> &'static InnerRule {
    static RULE: OnceLock<InnerRule> = OnceLock::new();
    RULE.get_or_init(|| {
        let nodes = composite_rule(-Z_LIMIT, Z_LIMIT, 34, 10);
        let weighted_pdf = nodes.iter().map(|&(z, w)| w * normal_pdf(z)).collect();
        let cdf = nodes.iter().map(|&(z, _)| normal_cdf(z)).collect();
        InnerRule { nodes, weighted_pdf, cdf }
    })
}

/// Probability that the range of `k` standard normals is at most `w`.
fn range_cdf(w: f64, k: u32) -> f64 {
    if w <= 0.0 {
        return 0.0;
    }
    let rule = inner_rule();
    let mut sum = 0.0;
    for (i, &(z, _)) in rule.nodes.iter().enumerate() {
        let inner = rule.cdf[i] - normal_cdf(z - w);
        if inner > 0.0 {
            sum += rule.weighted_pdf[i] * inner.powi(k as i32 - 1);
        }
    }
    (k as f64 * sum).clamp(0.0, 1.0)
}

fn log_weight(x: f64, df: f64) -> f64 {
    // zero at the mode x = 0
    df * (x - 0.5 * ((2.0 * x).exp() - 1.0))
}

/// Point on one side of the mode where the log weight reaches `-LOG_CUTOFF`.
fn cutoff(df: f64, direction: f64) -> f64 {
    let mut far = direction;
    while log_weight(far, df) > -LOG_CUTOFF {
        far *= 2.0;
    }
    let mut near = 0.0;
    for _ in 0..80 {
        let mid = 0.5 * (near + far);
        if log_weight(mid, df) > -LOG_CUTOFF {
            near = mid;
        } else {
            far = mid;
        }
    }
    far
}

/// Quadrature nodes over `ln s` with normalized weights.
fn scale_rule(df: f64) -> Vec<(f64, f64)> {
    let (lo, hi) = (cutoff(df, -1.0), cutoff(df, 1.0));
    let spread = 1.0 / (2.0 * df).sqrt();
    let panel = spread.min(0.5);
    let panels = (((hi - lo) / panel).ceil() as usize).clamp(8, 400);
    let mut rule: Vec<(f64, f64)> = composite_rule(lo, hi, panels, 10)
        .into_iter()
        .map(|(x, w)| (x.exp(), w * log_weight(x, df).exp()))
        .collect();
    let total: f64 = rule.iter().map(|(_, w)| w).sum();
    for node in &mut rule {
        node.1 /= total;
    }
    rule.retain(|&(_, w)| w > 1e-17);
    rule
}

fn check_params(k: u32, df: f64) -> Result<(), StatsError> {
    if k < 2 {
        return Err(StatsError::InvalidParameter(format!("k must be at least 2, got {k}")));
    }
    if df.is_nan() || df <= 0.0 {
        return Err(StatsError::InvalidParameter(format!("df must be positive, got {df}")));
    }
    Ok(())
}

fn cdf_with_rule(q: f64, k: u32, rule: Option<&[(f64, f64)]>) -> f64 {
    if q <= 0.0 {
        return 0.0;
    }
    match rule {
        None => range_cdf(q, k),
        Some(rule) => rule.iter().map(|&(s, w)| w * range_cdf(q * s, k)).sum::<f64>().clamp(0.0, 1.0),
    }
}

fn rule_for(df: f64) -> Option<Vec<(f64, f64)>> {
    (df < DF_INFINITE).then(|| scale_rule(df))
}

/// `P(Q ≤ q)` for the studentized range with `k` means and `df` degrees of
/// freedom. `df = f64::INFINITY` gives the range of `k` standard normals.
pub fn studentized_range_cdf(q: f64, k: u32, df: f64) -> Result<f64, StatsError> {
    check_params(k, df)?;
    if q.is_nan() {
        return Err(StatsError::InvalidParameter("q is NaN".into()));
    }
    Ok(cdf_with_rule(q, k, rule_for(df).as_deref()))
}

/// Keyed by the bit patterns of `alpha` and `df`.
type QuantileCache = Mutex<HashMap<(u64, u32, u64), f64>>;

/// Upper `alpha` critical value: `q` with `P(Q ≤ q) = 1 − alpha`.
///
/// Results are memoized for the life of the process.
pub fn studentized_range_quantile(alpha: f64, k: u32, df: f64) -> Result<f64, StatsError> {
    static CACHE: OnceLock<QuantileCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (alpha.to_bits(), k, df.to_bits());
    if let Some(&q) = cache.lock().unwrap().get(&key) {
        return Ok(q);
    }
    let q = solve_quantile(alpha, k, df)?;
    cache.lock().unwrap().insert(key, q);
    Ok(q)
}

fn solve_quantile(alpha: f64, k: u32, df: f64) -> Result<f64, StatsError> {
    check_params(k, df)?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(StatsError::InvalidParameter(format!("alpha must be in (0, 1), got {alpha}")));
    }
    let target = 1.0 - alpha;
    let rule = rule_for(df);
    let f = |q: f64| cdf_with_rule(q, k, rule.as_deref()) - target;

    let (mut a, mut fa) = (0.0, -target);
    let mut b = 1.0;
    let mut fb = f(b);
    while fb < 0.0 {
        if b > 1e6 {
            return Err(StatsError::ConvergenceFailure { iterations: 0, achieved: f64::INFINITY });
        }
        (a, fa) = (b, fb);
        b *= 2.0;
        fb = f(b);
    }

    // Illinois variant of regula falsi
    let mut side = 0i8;
    for _ in 0..MAX_ROOT_ITER {
        let c = (a * fb - b * fa) / (fb - fa);
        let fc = f(c);
        if fc == 0.0 || (b - a).abs() < 1e-10 * c.abs() {
            return Ok(c);
        }
        if (fc < 0.0) == (fa < 0.0) {
            (a, fa) = (c, fc);
            if side == -1 {
                fb *= 0.5;
            }
            side = -1;
        } else {
            (b, fb) = (c, fc);
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        }
        if fc.abs() < 1e-13 {
            return Ok(c);
        }
    }
    Err(StatsError::ConvergenceFailure { iterations: MAX_ROOT_ITER, achieved: (b - a).abs() })
}
