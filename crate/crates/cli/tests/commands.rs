mod common;

use std::fs;
use std::path::Path;

use common::*;

const GOOD: &str = "PT J\nC1 Tsinghua Univ, Dep Phys, Beijing, Peoples R China.\nNR 3\nPY 2005\nDT Article\nUT WOS:1\nER\n";
const BAD: &str = "PT J\nPY 20x5\nUT WOS:2\nER\n";

fn toy(name: &str) -> std::path::PathBuf {
    fixture("toy").join(name)
}

fn manifest(dir: &Path) -> String {
    fs::read_to_string(dir.join("manifest.txt")).unwrap()
}

#[test]
fn ingest_writes_canonical_corpus_to_stdout() {
    let out = fraccite(["ingest".as_ref(), "--input".as_ref(), toy("cited.txt").as_os_str()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(r#"{"format":"fraccite-corpus","version":1}"#));
    assert_eq!(lines.count(), 46);
}

#[test]
fn missing_input_exits_2() {
    for cmd in ["ingest", "stats", "evaluate"] {
        let out = fraccite([cmd, "--input", "/definitely/not/here.txt", "--out", "/tmp/unused", "--py", "2005", "--units", "/nope"]);
        assert_eq!(out.status.code(), Some(2), "{cmd}: {}", stderr(&out));
    }
}

#[test]
fn bad_record_warns_unless_strict() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("export.txt");
    fs::write(&input, format!("{GOOD}{BAD}EF\n")).unwrap();

    let out = fraccite(["ingest".as_ref(), "--input".as_ref(), input.as_os_str()]);
    assert_eq!(out.status.code(), Some(0));
    let err = stderr(&out);
    assert_eq!(err.matches("warning:").count(), 1, "{err}");
    assert!(err.contains("line 9"), "{err}");
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 2);

    let out = fraccite(["ingest".as_ref(), "--strict".as_ref(), "--input".as_ref(), input.as_os_str()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    let table = fixture("table1.csv");
    let cited = toy("cited.txt");
    let cases: Vec<Vec<&std::ffi::OsStr>> = vec![
        vec!["report".as_ref(), "--aggregate-table".as_ref(), table.as_os_str()],
        vec!["report".as_ref(), "--aggregate-table".as_ref(), table.as_os_str(), "--out".as_ref(), "/tmp/x".as_ref(), "--alpha".as_ref(), "0".as_ref()],
        vec!["report".as_ref(), "--aggregate-table".as_ref(), table.as_os_str(), "--out".as_ref(), "/tmp/x".as_ref(), "--workers".as_ref(), "0".as_ref()],
        vec!["report".as_ref(), "--out".as_ref(), "/tmp/x".as_ref()],
        vec!["count".as_ref(), "--input".as_ref(), cited.as_os_str(), "--out".as_ref(), "/tmp/x".as_ref()],
    ];
    for args in cases {
        let out = fraccite(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn config_values_apply_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.conf");
    fs::write(
        &config,
        format!(
            "# toy run\ninput = {}\nciting = {}\nunits = {}\npy = 2005\nalpha = 0.01\nmin_pubs = 9\nout = out\n",
            toy("cited.txt").display(),
            toy("citing.txt").display(),
            toy("units.txt").display()
        ),
    )
    .unwrap();

    let out = fraccite(["count".as_ref(), "--config".as_ref(), config.as_os_str()]);
    assert!(out.status.success(), "{}", stderr(&out));
    // relative `out` resolves next to the config file
    let m = manifest(&dir.path().join("out"));
    assert!(m.contains("setting.alpha = 0.01\n") && m.contains("setting.min_pubs = 9\n"), "{m}");
    let skipped = read_csv(&dir.path().join("out/skipped_units.csv"));
    assert_eq!(skipped.len(), 3, "{skipped:?}");

    let flag_out = dir.path().join("flags");
    let out = fraccite([
        "count".as_ref(),
        "--config".as_ref(),
        config.as_os_str(),
        "--alpha".as_ref(),
        "0.1".as_ref(),
        "--min-pubs".as_ref(),
        "5".as_ref(),
        "--out".as_ref(),
        flag_out.as_os_str(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let m = manifest(&flag_out);
    assert!(m.contains("setting.alpha = 0.1\n") && m.contains("setting.min_pubs = 5\n"), "{m}");
    assert_eq!(read_csv(&flag_out.join("skipped_units.csv")), vec![vec!["unit", "p"], vec!["Dep Econ", "3"]]);

    fs::write(&config, "colour = red\n").unwrap();
    let out = fraccite(["count".as_ref(), "--config".as_ref(), config.as_os_str()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn count_then_stats_on_emitted_scores() {
    let dir = tempfile::tempdir().unwrap();
    let counted = dir.path().join("count");
    let out = fraccite([
        "count".as_ref(),
        "--input".as_ref(),
        toy("cited.txt").as_os_str(),
        "--citing".as_ref(),
        toy("citing.txt").as_os_str(),
        "--units".as_ref(),
        toy("units.txt").as_os_str(),
        "--window".as_ref(),
        "2005:2009".as_ref(),
        "--py".as_ref(),
        "2005".as_ref(),
        "--out".as_ref(),
        counted.as_os_str(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let indicators = read_csv(&counted.join("indicators.csv"));
    assert_eq!(indicators.len(), 5);
    assert!(indicators[0].contains(&"fcp_2005-2009_exact".to_string()));

    let stats = dir.path().join("stats");
    let out = fraccite([
        "stats".as_ref(),
        "--input".as_ref(),
        counted.join("scores_2005-2009.csv").as_os_str(),
        "--out".as_ref(),
        stats.as_os_str(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let omnibus = read_csv(&stats.join("omnibus.csv"));
    assert_eq!(omnibus.iter().map(|r| r[0].as_str()).collect::<Vec<_>>(), ["test", "kruskal_wallis", "levene", "anova"]);
    assert_eq!(omnibus[1][2], "3");
    let pairwise = read_csv(&stats.join("pairwise.csv"));
    assert_eq!(pairwise.len(), 1 + 6);
    let dot = fs::read_to_string(stats.join("homogeneity.dot")).unwrap();
    assert!(dot.starts_with("// density: "));
}

#[test]
fn assign_lists_unit_members() {
    let out = fraccite([
        "assign".as_ref(),
        "--input".as_ref(),
        toy("cited.txt").as_os_str(),
        "--units".as_ref(),
        toy("units.txt").as_os_str(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("unit,paper_id\n"));
    // the shared paper appears under both of its departments
    assert!(text.contains("Dep Math,WOS:T0004\n") && text.contains("Dep Phys,WOS:T0004\n"));
}
