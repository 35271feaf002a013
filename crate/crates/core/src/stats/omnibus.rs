use super::ranks::average_ranks;
use super::special::{chi2_sf, f_sf};
use super::{check_finite, mean, Df, Method, ResultFlag, StatsError, TestResult};

/// Location used to form Levene's absolute deviations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Center {
    #[default]
    Mean,
    /// Brown-Forsythe variant.
    Median,
}

fn check_groups(groups: &[Vec<f64>], min_size: usize) -> Result<usize, StatsError> {
    if groups.len() < 2 {
        return Err(StatsError::TooFewGroups(groups.len()));
    }
    for (i, g) in groups.iter().enumerate() {
        if g.len() < min_size {
            return Err(StatsError::GroupTooSmall { group: i, size: g.len(), needed: min_size });
        }
        check_finite(g)?;
    }
    Ok(groups.iter().map(Vec::len).sum())
}

/// Kruskal-Wallis H on average ranks, divided by the tie correction.
pub fn kruskal_wallis(groups: &[Vec<f64>]) -> Result<TestResult, StatsError> {
    let n = check_groups(groups, 1)?;
    if n < 3 {
        return Err(StatsError::TooFewObservations { needed: 3, got: n });
    }
    let pooled: Vec<f64> = groups.iter().flatten().copied().collect();
    let (ranks, ties) = average_ranks(&pooled);
    let nf = n as f64;
    let correction = 1.0 - ties.iter().map(|&t| (t * t * t - t) as f64).sum::<f64>() / (nf * nf * nf - nf);
    if correction <= 0.0 {
        return Err(StatsError::AllValuesTied);
    }
    let mut offset = 0;
    let mut sum = 0.0;
    for g in groups {
        let r: f64 = ranks[offset..offset + g.len()].iter().sum();
        sum += r * r / g.len() as f64;
        offset += g.len();
    }
    let h = ((12.0 / (nf * (nf + 1.0)) * sum - 3.0 * (nf + 1.0)) / correction).max(0.0);
    let df = (groups.len() - 1) as f64;
    Ok(TestResult::new(Method::KruskalWallis, h, Df::One(df), chi2_sf(h, df)))
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len().is_multiple_of(2) {
        0.5 * (v[m - 1] + v[m])
    } else {
        v[m]
    }
}

/// Levene's test for equal variances.
pub fn levene(groups: &[Vec<f64>], center: Center) -> Result<TestResult, StatsError> {
    let n = check_groups(groups, 2)?;
    let z: Vec<Vec<f64>> = groups
        .iter()
        .map(|g| {
            let c = match center {
                Center::Mean => mean(g),
                Center::Median => median(g),
            };
            g.iter().map(|x| (x - c).abs()).collect()
        })
        .collect();
    let (between, within) = sums_of_squares(&z);
    if within == 0.0 {
        return Err(StatsError::DegenerateGroups);
    }
    let k = groups.len() as f64;
    let (d1, d2) = (k - 1.0, n as f64 - k);
    let w = (d2 / d1) * between / within;
    Ok(TestResult::new(Method::Levene, w, Df::Two(d1, d2), f_sf(w, d1, d2)))
}

/// Between- and within-group sums of squares.
fn sums_of_squares(groups: &[Vec<f64>]) -> (f64, f64) {
    let n: usize = groups.iter().map(Vec::len).sum();
    let grand = groups.iter().flatten().sum::<f64>() / n as f64;
    let mut between = 0.0;
    let mut within = 0.0;
    for g in groups {
        let m = mean(g);
        between += g.len() as f64 * (m - grand) * (m - grand);
        within += g.iter().map(|x| (x - m) * (x - m)).sum::<f64>();
    }
    (between, within)
}

/// One-way ANOVA F test.
pub fn one_way_anova(groups: &[Vec<f64>]) -> Result<TestResult, StatsError> {
    let n = check_groups(groups, 1)?;
    let k = groups.len();
    if n <= k {
        return Err(StatsError::TooFewObservations { needed: k + 1, got: n });
    }
    let (d1, d2) = ((k - 1) as f64, (n - k) as f64);
    let (between, within) = sums_of_squares(groups);
    if within == 0.0 {
        if between == 0.0 {
            return Err(StatsError::NoVariation);
        }
        let mut result = TestResult::new(Method::Anova, f64::INFINITY, Df::Two(d1, d2), 0.0);
        result.flag = Some(ResultFlag::ZeroWithinVariance);
        return Ok(result);
    }
    let f = (between / d1) / (within / d2);
    Ok(TestResult::new(Method::Anova, f, Df::Two(d1, d2), f_sf(f, d1, d2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: &[&[f64]]) -> Vec<Vec<f64>> {
        v.iter().map(|x| x.to_vec()).collect()
    }

    #[test]
    fn kruskal_identical_groups() {
        let r = kruskal_wallis(&g(&[&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]])).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn kruskal_hand_ranks() {
        // R = 3, 7, 11 over N = 6: 12/42 · (9 + 49 + 121)/2 − 21
        let r = kruskal_wallis(&g(&[&[1.0, 2.0], &[3.0, 4.0], &[5.0, 6.0]])).unwrap();
        assert!((r.statistic - 32.0 / 7.0).abs() < 1e-12);
        assert_eq!(r.df, Df::One(2.0));
    }

    #[test]
    fn kruskal_errors() {
        assert_eq!(kruskal_wallis(&g(&[&[1.0, 2.0]])), Err(StatsError::TooFewGroups(1)));
        assert_eq!(kruskal_wallis(&g(&[&[1.0, 1.0], &[1.0]])), Err(StatsError::AllValuesTied));
        assert!(matches!(kruskal_wallis(&g(&[&[1.0], &[]])), Err(StatsError::GroupTooSmall { group: 1, .. })));
    }

    #[test]
    fn levene_translated_groups() {
        let r = levene(&g(&[&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]]), Center::Mean).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn levene_hand() {
        // Z = [0,0,0] and [10,0,10]; Z̄ = 0, 20/3, overall 10/3
        // between = 3·(100/9)·2 = 200/3, within = 200/3, W = 4/1 · 1 = 4
        let r = levene(&g(&[&[0.0, 0.0, 0.0], &[0.0, 10.0, 20.0]]), Center::Mean).unwrap();
        assert!((r.statistic - 4.0).abs() < 1e-12);
    }

    #[test]
    fn levene_degenerate() {
        assert_eq!(levene(&g(&[&[1.0, 2.0], &[3.0, 4.0]]), Center::Mean), Err(StatsError::DegenerateGroups));
    }

    #[test]
    fn anova_hand() {
        let r = one_way_anova(&g(&[&[1.0, 2.0, 3.0], &[2.0, 3.0, 4.0]])).unwrap();
        assert!((r.statistic - 1.5).abs() < 1e-12);
        assert_eq!(r.df, Df::Two(1.0, 4.0));
    }

    #[test]
    fn anova_zero_within_variance() {
        let r = one_way_anova(&g(&[&[1.0, 1.0], &[2.0, 2.0]])).unwrap();
        assert_eq!(r.p_value, 0.0);
        assert_eq!(r.flag, Some(ResultFlag::ZeroWithinVariance));
        assert_eq!(one_way_anova(&g(&[&[1.0, 1.0], &[1.0, 1.0]])), Err(StatsError::NoVariation));
    }

    #[test]
    fn median_center() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
        let r = levene(&g(&[&[1.0, 2.0, 9.0], &[4.0, 5.0, 6.0, 20.0]]), Center::Median).unwrap();
        assert!(r.statistic.is_finite());
    }
}
