use std::collections::BTreeMap;

use rayon::prelude::*;

use super::ptukey::studentized_range_quantile;
use super::{check_finite, mean, sample_variance, StatsError};

/// Dunnett's C verdict for one unordered pair, with `unit_i < unit_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseDecision {
    pub unit_i: String,
    pub unit_j: String,
    /// `mean(unit_i) − mean(unit_j)`.
    pub mean_diff: f64,
    pub critical_diff: f64,
    pub significant: bool,
    /// Both groups have zero variance; the verdict is `mean_diff ≠ 0`.
    pub zero_variance: bool,
}

/// Heteroscedastic pairwise comparisons of every pair of groups.
///
/// With `v = s²/n`, the critical difference is
/// `√((v_i + v_j)/2) · (q_i·v_i + q_j·v_j) / (v_i + v_j)` where
/// `q_i = q(alpha, k, n_i − 1)` is a studentized-range critical value.
/// Output is sorted by `(unit_i, unit_j)`.
pub fn dunnett_c(groups: &[(String, Vec<f64>)], alpha: f64) -> Result<Vec<PairwiseDecision>, StatsError> {
    let k = groups.len();
    if k < 2 {
        return Err(StatsError::TooFewGroups(k));
    }
    for (i, (_, g)) in groups.iter().enumerate() {
        if g.len() < 2 {
            return Err(StatsError::GroupTooSmall { group: i, size: g.len(), needed: 2 });
        }
        check_finite(g)?;
    }
    let mut sorted: Vec<&(String, Vec<f64>)> = groups.iter().collect();
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    if let Some(w) = sorted.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(StatsError::InvalidParameter(format!("duplicate group name {:?}", w[0].0)));
    }

    let mut dfs: Vec<usize> = sorted.iter().map(|(_, g)| g.len() - 1).collect();
    dfs.sort_unstable();
    dfs.dedup();
    let q: BTreeMap<usize, f64> = dfs
        .par_iter()
        .map(|&df| studentized_range_quantile(alpha, k as u32, df as f64).map(|q| (df, q)))
        .collect::<Result<_, _>>()?;

    let summary: Vec<(f64, f64, f64)> = sorted
        .iter()
        .map(|(_, g)| (mean(g), sample_variance(g) / g.len() as f64, q[&(g.len() - 1)]))
        .collect();

    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    Ok(pairs
        .into_par_iter()
        .map(|(i, j)| {
            let (mi, vi, qi) = summary[i];
            let (mj, vj, qj) = summary[j];
            let mean_diff = mi - mj;
            let (critical_diff, significant, zero_variance) = if vi + vj == 0.0 {
                (0.0, mean_diff != 0.0, true)
            } else {
                let crit = ((vi + vj) / 2.0).sqrt() * (qi * vi + qj * vj) / (vi + vj);
                (crit, mean_diff.abs() > crit, false)
            };
            PairwiseDecision {
                unit_i: sorted[i].0.clone(),
                unit_j: sorted[j].0.clone(),
                mean_diff,
                critical_diff,
                significant,
                zero_variance,
            }
        })
        .collect())
}
