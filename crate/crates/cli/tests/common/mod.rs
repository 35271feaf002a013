#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn core_fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

pub fn fraccite<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_fraccite")).args(args).output().expect("binary runs")
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Rows of a CSV file, header first, skipping `#` comment lines.
pub fn read_csv(path: &Path) -> Vec<Vec<String>> {
    let text = std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    let mut reader = csv::ReaderBuilder::new().has_headers(false).from_reader(body.as_bytes());
    reader.records().map(|r| r.unwrap().iter().map(str::to_string).collect()).collect()
}

/// Runs `report` on the published aggregate table into `dir`.
pub fn report_table1(dir: &Path) -> Output {
    fraccite([
        "report".as_ref(),
        "--aggregate-table".as_ref(),
        fixture("table1.csv").as_os_str(),
        "--out".as_ref(),
        dir.as_os_str(),
    ])
}

/// `(indicator, rank, unit)` rows of the five-year window.
pub fn five_year_rankings(dir: &Path) -> Vec<(String, usize, String)> {
    read_csv(&dir.join("rankings.csv"))
        .into_iter()
        .skip(1)
        .filter(|r| r[1] == "5y")
        .map(|r| (r[0].clone(), r[2].parse().unwrap(), r[3].clone()))
        .collect()
}

/// Golden rows missing from (or differing in) the emitted output.
pub fn golden_mismatches(dir: &Path) -> Vec<String> {
    let mut bad = Vec::new();
    let ranked = five_year_rankings(dir);
    for row in read_csv(&fixture("rankings_golden.csv")).into_iter().skip(1) {
        let want = (row[0].clone(), row[1].parse::<usize>().unwrap(), row[2].clone());
        if !ranked.contains(&want) {
            bad.push(format!("ranking {want:?}"));
        }
    }
    let changes: Vec<(String, String, String)> = read_csv(&dir.join("rank_changes.csv"))
        .into_iter()
        .skip(1)
        .filter(|r| r[1] == "5y")
        .map(|r| (r[0].clone(), r[2].clone(), r[5].clone()))
        .collect();
    for row in read_csv(&fixture("rank_changes_golden.csv")).into_iter().skip(1) {
        let want = (row[0].clone(), row[1].clone(), row[2].clone());
        if !changes.contains(&want) {
            bad.push(format!("rank change {want:?}"));
        }
    }
    bad
}
