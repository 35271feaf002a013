use std::collections::BTreeMap;
use std::path::Path;

use fraccite::corpus::write_canonical;
use fraccite::counting::{aggregate_units, paper_scores, per_paper_samples, write_scores_csv, PaperScores};
use fraccite::exact::{parse_ratio, to_f64};
use fraccite::report::{
    build_homogeneity_graph, emit_graph_dot, emit_tables, omnibus_csv, pairwise_csv, IndicatorTable, OutputFile,
};
use fraccite::stats::{correlation_matrix, dunnett_c, kruskal_wallis, levene, one_way_anova, Center, CorrelationMatrix};
use fraccite::unitquery::{assign_units, UnitAssignment};
use fraccite::Window;

use crate::manifest::{write_outputs, Manifest};
use crate::run::{load_aggregate, load_corpus, load_units, read_text, LoadedCorpus, RunConfig};
use crate::{CliError, Format, RunArgs};

fn file(name: impl Into<String>, contents: String) -> OutputFile {
    OutputFile { name: name.into(), contents }
}

fn record_settings(m: &mut Manifest, cfg: &RunConfig) {
    m.setting("alpha", cfg.alpha);
    m.setting("min_pubs", cfg.min_pubs);
    m.setting("doctypes", cfg.doctypes.iter().map(|d| d.label().to_string()).collect::<Vec<_>>().join(";"));
    if !cfg.py.is_empty() {
        m.setting("py", cfg.py.iter().map(i32::to_string).collect::<Vec<_>>().join(","));
    }
}

fn record_corpus_inputs(m: &mut Manifest, cfg: &RunConfig) -> Result<(), CliError> {
    m.input("corpus", cfg.require_input()?)?;
    for (i, p) in cfg.citing.iter().enumerate() {
        m.input(&format!("citing.{}", i + 1), p)?;
    }
    Ok(())
}

fn loaded(cfg: &RunConfig) -> Result<LoadedCorpus, CliError> {
    let l = load_corpus(cfg)?;
    eprintln!(
        "loaded {} cited and {} citing records, {} links; {} rejected",
        l.corpus.cited().len(),
        l.corpus.citing().len(),
        l.corpus.links().len(),
        l.rejected
    );
    Ok(l)
}

pub fn ingest(args: RunArgs) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(args)?;
    if cfg.input_format()? == Format::Aggregate {
        return Err(CliError::Usage("ingest reads tagged or canonical input".into()));
    }
    let l = loaded(&cfg)?;
    let text = write_canonical(&l.corpus);
    match &cfg.out {
        None => print!("{text}"),
        Some(dir) => {
            let mut m = Manifest::new("ingest");
            record_corpus_inputs(&mut m, &cfg)?;
            m.summary("rejected", l.rejected);
            write_outputs(dir, vec![file("corpus.jsonl", text)], &m)?;
        }
    }
    Ok(())
}

fn assignment_csv(assignment: &UnitAssignment) -> String {
    let mut out = String::from("unit,paper_id\n");
    for (unit, papers) in assignment.units() {
        for p in papers {
            push_row(&mut out, &[unit, p]);
        }
    }
    out
}

/// Appends one quoted CSV row.
fn push_row(out: &mut String, cells: &[&str]) {
    let quoted: Vec<String> = cells
        .iter()
        .map(|c| {
            if c.contains([',', '"', '\n', '\r']) {
                format!("\"{}\"", c.replace('"', "\"\""))
            } else {
                c.to_string()
            }
        })
        .collect();
    out.push_str(&quoted.join(","));
    out.push('\n');
}

fn assigned(cfg: &RunConfig, l: &LoadedCorpus) -> Result<UnitAssignment, CliError> {
    let defs = load_units(cfg)?;
    let assignment = assign_units(&l.corpus, &defs).map_err(|e| CliError::Input(e.to_string()))?;
    eprintln!("assigned {} units", assignment.len());
    Ok(assignment)
}

pub fn assign(args: RunArgs) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(args)?;
    let l = loaded(&cfg)?;
    let assignment = assigned(&cfg, &l)?;
    let text = assignment_csv(&assignment);
    match &cfg.out {
        None => print!("{text}"),
        Some(dir) => {
            let mut m = Manifest::new("assign");
            record_corpus_inputs(&mut m, &cfg)?;
            m.input("units", cfg.units.as_deref().expect("checked by load_units"))?;
            write_outputs(dir, vec![file("assignment.csv", text)], &m)?;
        }
    }
    Ok(())
}

struct Counted {
    table: IndicatorTable,
    scores: Vec<PaperScores>,
    skipped: Vec<(String, u64)>,
    files: Vec<OutputFile>,
}

fn count_windows(cfg: &RunConfig, l: &LoadedCorpus, assignment: &UnitAssignment) -> Result<Counted, CliError> {
    let windows = cfg.resolved_windows()?;
    let options = cfg.counting_options();
    let mut files = Vec::new();
    let mut per_window = Vec::new();
    let mut scores = Vec::new();
    let mut skipped = Vec::new();
    for w in &windows {
        let s = paper_scores(&l.corpus, *w, &options);
        for id in &s.skipped_citing {
            eprintln!("warning: citing record {id} has no references and was skipped");
        }
        files.push(file(format!("scores_{w}.csv"), write_scores_csv(assignment, &s)));
        let outcome = aggregate_units(assignment, &s, cfg.min_pubs);
        skipped = outcome.skipped;
        per_window.push((w.to_string(), outcome.included));
        scores.push(s);
    }
    let table = IndicatorTable::from_unit_aggregates(&per_window).map_err(|e| CliError::Internal(e.to_string()))?;
    let mut skipped_csv = String::from("unit,p\n");
    for (unit, p) in &skipped {
        push_row(&mut skipped_csv, &[unit, &p.to_string()]);
    }
    files.push(file("skipped_units.csv", skipped_csv));
    eprintln!("{} units included, {} below --min-pubs {}", table.rows().len(), skipped.len(), cfg.min_pubs);
    Ok(Counted { table, scores, skipped, files })
}

fn count_manifest(command: &str, cfg: &RunConfig) -> Result<Manifest, CliError> {
    let mut m = Manifest::new(command);
    record_corpus_inputs(&mut m, cfg)?;
    m.input("units", cfg.units.as_deref().ok_or_else(|| CliError::Usage("no unit definitions; pass --units".into()))?)?;
    record_settings(&mut m, cfg);
    let windows = cfg.resolved_windows()?;
    m.setting("windows", windows.iter().map(Window::to_string).collect::<Vec<_>>().join(","));
    Ok(m)
}

pub fn count(args: RunArgs) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(args)?;
    let out = cfg.require_out()?.to_path_buf();
    let l = loaded(&cfg)?;
    let assignment = assigned(&cfg, &l)?;
    let counted = count_windows(&cfg, &l, &assignment)?;
    let mut files = counted.files;
    files.push(file("indicators.csv", fraccite::report::indicators_csv(&counted.table).map_err(internal)?));
    let mut m = count_manifest("count", &cfg)?;
    m.summary("units_included", counted.table.rows().len());
    m.summary("units_skipped", counted.skipped.len());
    write_outputs(&out, files, &m)
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

/// Reads per-paper samples: either the `scores_*.csv` layout written by `count`
/// (`unit`, `fc_num`, `fc_den`) or a plain `unit,value` table.
fn load_samples(path: &Path) -> Result<Vec<(String, Vec<f64>)>, CliError> {
    let text = read_text(path)?;
    let bad = |msg: String| CliError::Input(format!("{}: {msg}", path.display()));
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| bad(e.to_string()))?.clone();
    let col = |name: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(name));
    let unit_col = col("unit").ok_or_else(|| bad("missing column unit".into()))?;
    enum Value {
        Ratio(usize, usize),
        Plain(usize),
    }
    let value = match (col("fc_num"), col("fc_den"), col("value")) {
        (Some(n), Some(d), _) => Value::Ratio(n, d),
        (_, _, Some(v)) => Value::Plain(v),
        _ => return Err(bad("expected columns fc_num and fc_den, or value".into())),
    };
    let mut groups: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| bad(e.to_string()))?;
        let unit = record.get(unit_col).unwrap_or("");
        if unit.is_empty() {
            continue;
        }
        let cell = |c: usize| record.get(c).unwrap_or("");
        let x = match value {
            Value::Ratio(n, d) => parse_ratio(cell(n), cell(d)).map(|r| to_f64(&r)),
            Value::Plain(v) => cell(v).parse::<f64>().ok().filter(|x| x.is_finite()),
        }
        .ok_or_else(|| bad(format!("row {}: unreadable value", i + 2)))?;
        groups.entry(unit.to_string()).or_default().push(x);
    }
    Ok(groups.into_iter().collect())
}

/// Omnibus tests plus the pairwise homogeneity graph.
fn stats_files(groups: Vec<(String, Vec<f64>)>, cfg: &RunConfig, m: &mut Manifest) -> Result<Vec<OutputFile>, CliError> {
    let (kept, dropped): (Vec<_>, Vec<_>) = groups.into_iter().partition(|(_, g)| g.len() as u64 >= cfg.min_pubs);
    for (unit, g) in &dropped {
        eprintln!("note: {unit} has {} samples, below --min-pubs {}; left out of the tests", g.len(), cfg.min_pubs);
    }
    let values: Vec<Vec<f64>> = kept.iter().map(|(_, g)| g.clone()).collect();
    let mut results = Vec::new();
    for (name, outcome) in [
        ("kruskal_wallis", kruskal_wallis(&values)),
        ("levene", levene(&values, Center::Mean)),
        ("anova", one_way_anova(&values)),
    ] {
        match outcome {
            Ok(r) => results.push(r),
            Err(e) => {
                eprintln!("warning: {name}: {e}");
                m.summary(&format!("{name}_error"), e);
            }
        }
    }
    let decisions = dunnett_c(&kept, cfg.alpha).map_err(|e| CliError::Input(format!("dunnett_c: {e}")))?;
    let graph = build_homogeneity_graph(&decisions).map_err(internal)?;
    m.summary("groups", kept.len());
    m.summary("graph_edges", graph.edges().len());
    m.summary("graph_components", graph.components().len());
    Ok(vec![
        file("omnibus.csv", omnibus_csv(&results)),
        file("pairwise.csv", pairwise_csv(&decisions)),
        file("homogeneity.dot", emit_graph_dot(&graph)),
    ])
}

pub fn stats(args: RunArgs) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(args)?;
    let out = cfg.require_out()?.to_path_buf();
    let input = cfg.require_input()?;
    let groups = load_samples(input)?;
    let mut m = Manifest::new("stats");
    m.input("samples", input)?;
    m.setting("alpha", cfg.alpha);
    m.setting("min_pubs", cfg.min_pubs);
    let files = stats_files(groups, &cfg, &mut m)?;
    write_outputs(&out, files, &m)
}

fn try_correlations(table: &IndicatorTable) -> Option<CorrelationMatrix> {
    let columns = table.correlation_columns().ok()?;
    match correlation_matrix(&columns, table.rows().len()) {
        Ok(m) => Some(m),
        Err(e) => {
            eprintln!("warning: correlation matrix skipped: {e}");
            None
        }
    }
}

/// Window labels for a two-window aggregate table.
fn aggregate_labels(cfg: &RunConfig) -> (String, String) {
    if let [a, b] = cfg.windows.as_slice() {
        return (a.to_string(), b.to_string());
    }
    if let [y] = cfg.py.as_slice() {
        return (format!("{y}-{}", y + 2), format!("{y}-{}", y + 4));
    }
    ("3y".into(), "5y".into())
}

fn report_from_table(command: &str, cfg: &RunConfig, path: &Path) -> Result<(), CliError> {
    let out = cfg.require_out()?.to_path_buf();
    let rows = load_aggregate(path)?;
    let (short, long) = aggregate_labels(cfg);
    let table = IndicatorTable::from_aggregate_rows(&rows, &short, &long).map_err(|e| CliError::Input(e.to_string()))?;
    let matrix = try_correlations(&table);
    let files = emit_tables(&table, matrix.as_ref()).map_err(internal)?;
    let mut m = Manifest::new(command);
    m.input("aggregate_table", path)?;
    m.setting("windows", format!("{short},{long}"));
    m.summary("units", table.rows().len());
    write_outputs(&out, files, &m)
}

pub fn report(args: RunArgs) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(args)?;
    let path = cfg
        .aggregate_source()?
        .ok_or_else(|| CliError::Usage("report needs --aggregate-table or --input with --format aggregate".into()))?
        .to_path_buf();
    report_from_table("report", &cfg, &path)
}

pub fn evaluate(args: RunArgs) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(args)?;
    if let Some(path) = cfg.aggregate_source()? {
        return report_from_table("evaluate", &cfg, path);
    }
    let out = cfg.require_out()?.to_path_buf();
    let mut m = count_manifest("evaluate", &cfg)?;
    let l = loaded(&cfg)?;
    let assignment = assigned(&cfg, &l)?;
    let counted = count_windows(&cfg, &l, &assignment)?;

    let mut files = counted.files;
    files.push(file("assignment.csv", assignment_csv(&assignment)));
    let matrix = try_correlations(&counted.table);
    files.extend(emit_tables(&counted.table, matrix.as_ref()).map_err(internal)?);

    // tests run on the per-paper fractional counts of the widest window
    let (widest, _) = counted
        .scores
        .iter()
        .enumerate()
        .max_by_key(|(_, s)| (s.window.end() - s.window.start(), s.window.end()))
        .ok_or_else(|| CliError::Usage("no citation window".into()))?;
    let scores = &counted.scores[widest];
    m.setting("stats_window", scores.window);
    let groups = counted
        .table
        .rows()
        .iter()
        .map(|r| Ok((r.unit.clone(), per_paper_samples(&assignment, scores, &r.unit).map_err(internal)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    m.summary("units_included", counted.table.rows().len());
    m.summary("units_skipped", counted.skipped.len());
    m.summary("rejected_records", l.rejected);
    if groups.len() >= 2 {
        files.extend(stats_files(groups, &cfg, &mut m)?);
    } else {
        eprintln!("warning: fewer than two units; significance tests skipped");
    }
    write_outputs(&out, files, &m)
}
