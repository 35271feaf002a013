use super::ranks::average_ranks;
use super::special::t_two_tailed;
use super::{check_finite, Df, Method, StatsError, TestResult};

/// Pearson product-moment correlation with a two-tailed t-test (`df = n − 2`).
pub fn pearson(x: &[f64], y: &[f64]) -> Result<TestResult, StatsError> {
    let r = pearson_r(x, y)?;
    Ok(with_p_value(Method::PearsonT, r, x.len()))
}

/// Spearman rank correlation: Pearson on average ranks, same t-based p-value.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<TestResult, StatsError> {
    validate(x, y)?;
    let (rx, _) = average_ranks(x);
    let (ry, _) = average_ranks(y);
    let r = pearson_r(&rx, &ry)?;
    Ok(with_p_value(Method::SpearmanT, r, x.len()))
}

fn validate(x: &[f64], y: &[f64]) -> Result<(), StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 3 {
        return Err(StatsError::TooFewObservations { needed: 3, got: x.len() });
    }
    check_finite(x)?;
    check_finite(y)
}

fn pearson_r(x: &[f64], y: &[f64]) -> Result<f64, StatsError> {
    validate(x, y)?;
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(StatsError::ConstantInput);
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

fn with_p_value(method: Method, r: f64, n: usize) -> TestResult {
    let df = n as f64 - 2.0;
    let p = if r.abs() >= 1.0 { 0.0 } else { t_two_tailed(r * (df / (1.0 - r * r)).sqrt(), df) };
    TestResult::new(method, r, Df::One(df), p)
}

/// Two-tailed significance marks at the 0.05 and 0.01 levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stars {
    None,
    P05,
    P01,
}

impl Stars {
    pub fn from_p(p: f64) -> Self {
        if p < 0.01 {
            Stars::P01
        } else if p < 0.05 {
            Stars::P05
        } else {
            Stars::None
        }
    }

    pub fn marker(self) -> &'static str {
        match self {
            Stars::None => "",
            Stars::P05 => "*",
            Stars::P01 => "**",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationCell {
    pub r: f64,
    pub p_value: f64,
    pub stars: Stars,
}

impl CorrelationCell {
    fn from_result(t: &TestResult) -> Self {
        CorrelationCell { r: t.statistic, p_value: t.p_value, stars: Stars::from_p(t.p_value) }
    }

    fn unit() -> Self {
        CorrelationCell { r: 1.0, p_value: 0.0, stars: Stars::P01 }
    }
}

/// Pearson coefficients below the diagonal, Spearman above.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    pub labels: Vec<String>,
    /// `cells[i][j]`: Pearson when `i > j`, Spearman when `i < j`, 1 on the diagonal.
    cells: Vec<Vec<CorrelationCell>>,
}

impl CorrelationMatrix {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn cell(&self, row: usize, col: usize) -> &CorrelationCell {
        &self.cells[row][col]
    }

    /// Pearson correlation of columns `a` and `b`.
    pub fn pearson(&self, a: usize, b: usize) -> &CorrelationCell {
        &self.cells[a.max(b)][a.min(b)]
    }

    /// Spearman correlation of columns `a` and `b`.
    pub fn spearman(&self, a: usize, b: usize) -> &CorrelationCell {
        &self.cells[a.min(b)][a.max(b)]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// All pairwise correlations of `columns`, each of which must have length `n`.
pub fn correlation_matrix(columns: &[(String, Vec<f64>)], n: usize) -> Result<CorrelationMatrix, StatsError> {
    for (_, values) in columns {
        if values.len() != n {
            return Err(StatsError::LengthMismatch(values.len(), n));
        }
    }
    let k = columns.len();
    let mut cells = vec![vec![CorrelationCell::unit(); k]; k];
    for i in 0..k {
        for j in 0..i {
            let (a, b) = (&columns[i].1, &columns[j].1);
            cells[i][j] = CorrelationCell::from_result(&pearson(a, b)?);
            cells[j][i] = CorrelationCell::from_result(&spearman(a, b)?);
        }
    }
    Ok(CorrelationMatrix { labels: columns.iter().map(|(l, _)| l.clone()).collect(), cells })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_lines() {
        assert_eq!(pearson(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]).unwrap().statistic, 1.0);
        let r = pearson(&[1.0, 2.0, 3.0, 4.0], &[4.0, 3.0, 2.0, 1.0]).unwrap();
        assert_eq!(r.statistic, -1.0);
        assert_eq!(r.p_value, 0.0);
    }

    #[test]
    fn spearman_with_ties() {
        // ranks x = [1.5, 1.5, 3], y = [1, 3, 2]: centred products −½·−1 + −½·1 + 1·0 = 0
        let r = spearman(&[1.0, 1.0, 2.0], &[3.0, 5.0, 4.0]).unwrap();
        assert!(r.statistic.abs() < 1e-15);
        // ranks x = [1.5, 1.5, 3], y = [1, 2, 3]: 0.5 + 0 + 1 over √(1.5 · 2)
        let r = spearman(&[1.0, 1.0, 2.0], &[3.0, 4.0, 5.0]).unwrap();
        assert!((r.statistic - 1.5 / 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn spearman_monotone_map() {
        let x = [0.3, 1.2, 2.5, 4.0, 9.0];
        let y: Vec<f64> = x.iter().map(|v: &f64| v.exp()).collect();
        assert_eq!(spearman(&x, &y).unwrap().statistic, 1.0);
    }

    #[test]
    fn errors() {
        assert_eq!(pearson(&[1.0, 2.0, 3.0], &[1.0, 2.0]), Err(StatsError::LengthMismatch(3, 2)));
        assert_eq!(pearson(&[1.0, 1.0, 1.0], &[1.0, 1.0, 1.0]), Err(StatsError::ConstantInput));
        assert_eq!(pearson(&[1.0, 2.0], &[1.0, 2.0]), Err(StatsError::TooFewObservations { needed: 3, got: 2 }));
        assert_eq!(pearson(&[1.0, f64::NAN, 2.0], &[1.0, 2.0, 3.0]), Err(StatsError::NonFinite));
    }

    #[test]
    fn identical_columns() {
        let col = vec![1.0, 3.0, 2.0, 5.0, 4.0];
        let m = correlation_matrix(&[("a".into(), col.clone()), ("b".into(), col)], 5).unwrap();
        assert_eq!(m.pearson(0, 1).r, 1.0);
        assert_eq!(m.spearman(0, 1).r, 1.0);
        assert_eq!(m.pearson(1, 0).stars, Stars::P01);
        assert_eq!(m.spearman(0, 1).stars, Stars::P01);
    }

    #[test]
    fn matrix_length_check() {
        let err = correlation_matrix(&[("a".into(), vec![1.0, 2.0, 3.0])], 4).unwrap_err();
        assert_eq!(err, StatsError::LengthMismatch(3, 4));
    }

    #[test]
    fn star_thresholds() {
        assert_eq!(Stars::from_p(0.009), Stars::P01);
        assert_eq!(Stars::from_p(0.01), Stars::P05);
        assert_eq!(Stars::from_p(0.049), Stars::P05);
        assert_eq!(Stars::from_p(0.05), Stars::None);
    }
}
