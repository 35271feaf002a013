//! Statistics kernel checks against values frozen from an independent
//! high-precision reference (see `fixtures/gen_stats_oracle.py`).
//! Each check panics on the first mismatch.

#![allow(dead_code)]

use fraccite::stats::special::*;
use fraccite::stats::{
    dunnett_c, kruskal_wallis, levene, one_way_anova, pearson, spearman, studentized_range_cdf,
    studentized_range_quantile, Center, StatsError,
};
use serde_json::Value;

fn oracle() -> Value {
    serde_json::from_str(include_str!("../fixtures/stats_oracle.json")).unwrap()
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(f).collect()
}

fn groups(v: &Value) -> Vec<Vec<f64>> {
    v.as_array().unwrap().iter().map(floats).collect()
}

fn named(groups: &[Vec<f64>]) -> Vec<(String, Vec<f64>)> {
    groups.iter().enumerate().map(|(i, g)| (format!("g{i:02}"), g.clone())).collect()
}

fn close(actual: f64, expected: f64, tol: f64, what: &str) {
    assert!((actual - expected).abs() <= tol, "{what}: got {actual}, expected {expected}");
}

pub fn special_functions_match_reference() {
    let o = oracle();
    let s = &o["special"];
    type Case = (&'static str, fn(&[f64]) -> f64);
    let cases: [Case; 8] = [
        ("reg_lower_gamma", |a| reg_lower_gamma(a[0], a[1])),
        ("reg_upper_gamma", |a| reg_upper_gamma(a[0], a[1])),
        ("reg_inc_beta", |a| reg_inc_beta(a[0], a[1], a[2])),
        ("ln_gamma", |a| ln_gamma(a[0])),
        ("normal_cdf", |a| normal_cdf(a[0])),
        ("chi2_sf", |a| chi2_sf(a[0], a[1])),
        ("f_sf", |a| f_sf(a[0], a[1], a[2])),
        ("t_two_tailed", |a| t_two_tailed(a[0], a[1])),
    ];
    for (name, func) in cases {
        let points = s[name].as_array().unwrap();
        assert!(!points.is_empty());
        for p in points {
            let p = floats(p);
            let (args, expected) = p.split_at(p.len() - 1);
            let tol = if name == "ln_gamma" { 1e-10 * expected[0].abs().max(1.0) } else { 1e-8 };
            close(func(args), expected[0], tol, &format!("{name}{args:?}"));
        }
    }
}

pub fn studentized_range_quantile_grid() {
    let o = oracle();
    for row in o["ptukey"]["quantile_grid"].as_array().unwrap() {
        let r = floats(row);
        let q = studentized_range_quantile(r[0], r[1] as u32, r[2]).unwrap();
        assert!((q - r[3]).abs() <= 5e-3, "q({}, {}, {}) = {q}, expected {}", r[0], r[1], r[2], r[3]);
        assert!((q - r[3]).abs() / r[3] <= 1e-4, "relative error at {r:?}: {q}");
    }
}

pub fn studentized_range_cdf_points() {
    let o = oracle();
    for row in o["ptukey"]["cdf"].as_array().unwrap() {
        let r = floats(row);
        let p = studentized_range_cdf(r[0], r[1] as u32, r[2]).unwrap();
        close(p, r[3], 1e-7, &format!("ptukey{r:?}"));
    }
}

pub fn studentized_range_reference_values() {
    let q = studentized_range_quantile(0.05, 2, f64::INFINITY).unwrap();
    close(q, 2.7718, 1e-3, "k = 2, df = inf");
    let q = studentized_range_quantile(0.05, 3, 10.0).unwrap();
    close(q, 3.877, 5e-3, "k = 3, df = 10");
}

pub fn omnibus_fixture_suite() {
    let o = oracle();
    let cases = o["omnibus"].as_array().unwrap();
    assert_eq!(cases.len(), 20);
    for case in cases {
        let name = case["name"].as_str().unwrap();
        let g = groups(&case["groups"]);

        let kw = kruskal_wallis(&g).unwrap();
        let expected = floats(&case["kruskal"]);
        close(kw.statistic, expected[0], 1e-6, &format!("{name} H"));
        close(kw.p_value, expected[1], 1e-6, &format!("{name} H p"));

        match &case["levene"] {
            Value::Null => assert_eq!(levene(&g, Center::Mean), Err(StatsError::DegenerateGroups), "{name}"),
            v => {
                let expected = floats(v);
                let w = levene(&g, Center::Mean).unwrap();
                close(w.statistic, expected[0], 1e-6, &format!("{name} W"));
                close(w.p_value, expected[1], 1e-6, &format!("{name} W p"));
            }
        }

        let expected = floats(&case["anova"]);
        let a = one_way_anova(&g).unwrap();
        close(a.statistic, expected[0], 1e-6 * expected[0].abs().max(1.0), &format!("{name} F"));
        close(a.p_value, expected[1], 1e-6, &format!("{name} F p"));

        check_dunnett(name, &g, &case["dunnett_c"]);
    }
}

fn check_dunnett(label: &str, g: &[Vec<f64>], expected: &Value) {
    let decisions = dunnett_c(&named(g), 0.05).unwrap();
    let expected = expected.as_array().unwrap();
    assert_eq!(decisions.len(), expected.len());
    for (d, e) in decisions.iter().zip(expected) {
        let e = e.as_array().unwrap();
        let (i, j) = (e[0].as_u64().unwrap(), e[1].as_u64().unwrap());
        assert_eq!((d.unit_i.clone(), d.unit_j.clone()), (format!("g{i:02}"), format!("g{j:02}")));
        close(d.mean_diff, f(&e[2]), 1e-9, &format!("{label} diff {i}-{j}"));
        close(d.critical_diff, f(&e[3]), 1e-6 * f(&e[3]).max(1.0), &format!("{label} crit {i}-{j}"));
        assert_eq!(d.significant, e[4].as_bool().unwrap(), "{label} verdict {i}-{j}");
    }
}

pub fn dunnett_random_datasets() {
    let o = oracle();
    let sets = o["dunnett_random"].as_array().unwrap();
    assert_eq!(sets.len(), 50);
    for (n, set) in sets.iter().enumerate() {
        check_dunnett(&format!("random {n}"), &groups(&set["groups"]), &set["decisions"]);
    }
}

pub fn correlation_cases() {
    let o = oracle();
    for (n, case) in o["correlation"]["cases"].as_array().unwrap().iter().enumerate() {
        let (x, y) = (floats(&case["x"]), floats(&case["y"]));
        for (which, result) in [("pearson", pearson(&x, &y).unwrap()), ("spearman", spearman(&x, &y).unwrap())] {
            let e = floats(&case[which]);
            close(result.statistic, e[0], 1e-10, &format!("case {n} {which} r"));
            close(result.p_value, e[1], 1e-9, &format!("case {n} {which} p"));
        }
    }
}

pub fn critical_r_at_27_units() {
    // |r| just below the critical value is unstarred; just above, starred
    let o = oracle();
    let crit = &o["correlation"]["critical_r_n27"];
    for (level, key) in [(0.05, "0.05"), (0.01, "0.01")] {
        let r = f(&crit[key]);
        let p_at = |r: f64| t_two_tailed(r * (25.0 / (1.0 - r * r)).sqrt(), 25.0);
        close(p_at(r), level, 1e-10, key);
        assert!(p_at(r - 1e-4) > level);
        assert!(p_at(r + 1e-4) < level);
    }
}
