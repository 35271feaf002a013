use fraccite::stats::special::{chi2_sf, f_sf, normal_cdf, t_two_tailed};
use fraccite::stats::{
    dunnett_c, kruskal_wallis, levene, one_way_anova, pearson, spearman, studentized_range_quantile, Center,
};
use proptest::prelude::*;

/// Quarter-integers, so ties are common.
fn value() -> impl Strategy<Value = f64> {
    (-40i32..40).prop_map(|v| v as f64 / 4.0)
}

fn paired() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (3usize..30).prop_flat_map(|n| (prop::collection::vec(value(), n), prop::collection::vec(value(), n)))
}

fn groups(min_size: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(value(), min_size..12), 2..6)
}

fn increasing(x: f64) -> f64 {
    x * x * x + 3.0 * x
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #[test]
    fn correlations_bounded_and_symmetric((x, y) in paired()) {
        if let (Ok(p), Ok(q)) = (pearson(&x, &y), pearson(&y, &x)) {
            prop_assert!((-1.0..=1.0).contains(&p.statistic));
            prop_assert!((0.0..=1.0).contains(&p.p_value));
            prop_assert!(rel_close(p.statistic, q.statistic, 1e-12));
        }
        if let Ok(s) = spearman(&x, &y) {
            prop_assert!((-1.0..=1.0).contains(&s.statistic));
        }
    }

    #[test]
    fn spearman_invariant_under_increasing_maps((x, y) in paired()) {
        let tx: Vec<f64> = x.iter().map(|&v| increasing(v)).collect();
        let ty: Vec<f64> = y.iter().map(|&v| v.exp()).collect();
        match (spearman(&x, &y), spearman(&tx, &ty)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a.statistic, b.statistic),
            (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
        }
    }

    #[test]
    fn kruskal_wallis_rank_based(g in groups(1)) {
        let t: Vec<Vec<f64>> = g.iter().map(|v| v.iter().map(|&x| increasing(x)).collect()).collect();
        match (kruskal_wallis(&g), kruskal_wallis(&t)) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a.statistic, b.statistic);
                prop_assert!(a.statistic >= 0.0);
                prop_assert!((0.0..=1.0).contains(&a.p_value));
            }
            (a, b) => prop_assert_eq!(a, b),
        }
    }

    #[test]
    fn levene_and_anova_translation_invariant(g in groups(2), shift in -100.0f64..100.0) {
        let t: Vec<Vec<f64>> = g.iter().map(|v| v.iter().map(|&x| x + shift).collect()).collect();
        if let (Ok(a), Ok(b)) = (levene(&g, Center::Mean), levene(&t, Center::Mean)) {
            prop_assert!((a.p_value - b.p_value).abs() < 1e-8, "{} vs {}", a.p_value, b.p_value);
        }
        if let (Ok(a), Ok(b)) = (one_way_anova(&g), one_way_anova(&t)) {
            prop_assert!((a.p_value - b.p_value).abs() < 1e-8, "{} vs {}", a.p_value, b.p_value);
        }
    }

    #[test]
    fn levene_scale_invariant(g in groups(2), scale in 0.01f64..100.0) {
        let t: Vec<Vec<f64>> = g.iter().map(|v| v.iter().map(|&x| x * scale).collect()).collect();
        if let (Ok(a), Ok(b)) = (levene(&g, Center::Mean), levene(&t, Center::Mean)) {
            prop_assert!((a.p_value - b.p_value).abs() < 1e-8);
            prop_assert!(rel_close(a.statistic, b.statistic, 1e-8));
        }
    }

    #[test]
    fn distribution_tails_monotone(a in 0.0f64..50.0, b in 0.0f64..50.0, df in 1u32..60) {
        let (lo, hi) = (a.min(b), a.max(b));
        let df = df as f64;
        for (x, y) in [
            (chi2_sf(lo, df), chi2_sf(hi, df)),
            (f_sf(lo, 3.0, df), f_sf(hi, 3.0, df)),
            (t_two_tailed(lo, df), t_two_tailed(hi, df)),
            (1.0 - normal_cdf(lo - 25.0), 1.0 - normal_cdf(hi - 25.0)),
        ] {
            prop_assert!((0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y));
            prop_assert!(x >= y, "survival not monotone: {} < {}", x, y);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dunnett_scale_invariant_and_symmetric(g in prop::collection::vec(prop::collection::vec(value(), 3..6), 3), power in -3i32..4) {
        let named: Vec<(String, Vec<f64>)> = g.iter().enumerate().map(|(i, v)| (format!("u{i}"), v.clone())).collect();
        // powers of two keep every intermediate exact up to the scale
        let c = 2f64.powi(power);
        let scaled: Vec<(String, Vec<f64>)> =
            named.iter().map(|(n, v)| (n.clone(), v.iter().map(|x| x * c).collect())).collect();
        let mut reversed = named.clone();
        reversed.reverse();

        let base = dunnett_c(&named, 0.05).unwrap();
        let verdicts = |d: &[fraccite::stats::PairwiseDecision]| d.iter().map(|p| p.significant).collect::<Vec<_>>();
        prop_assert_eq!(verdicts(&base), verdicts(&dunnett_c(&scaled, 0.05).unwrap()));
        prop_assert_eq!(&base, &dunnett_c(&reversed, 0.05).unwrap());
        for d in &base {
            prop_assert!(d.critical_diff >= 0.0);
            prop_assert_eq!(d.significant, d.mean_diff.abs() > d.critical_diff);
        }
    }
}

#[test]
fn quantile_monotone_over_grid() {
    for df in [3.0, 10.0, 40.0] {
        let qs: Vec<f64> = (2..=8).map(|k| studentized_range_quantile(0.05, k, df).unwrap()).collect();
        assert!(qs.windows(2).all(|w| w[0] < w[1]), "q not increasing in k at df {df}: {qs:?}");
    }
    for k in [2, 5, 27] {
        let qs: Vec<f64> =
            [2.0, 5.0, 15.0, 60.0, f64::INFINITY].iter().map(|&df| studentized_range_quantile(0.05, k, df).unwrap()).collect();
        assert!(qs.windows(2).all(|w| w[0] > w[1]), "q not decreasing in df at k {k}: {qs:?}");
    }
}
