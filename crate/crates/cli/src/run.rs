//! Resolved run configuration and input loading.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use fraccite::corpus::{load_aggregate_table, load_canonical, parse_tagged, AggregateRow};
use fraccite::counting::CountingOptions;
use fraccite::unitquery::{parse_definitions, UnitDefinition};
use fraccite::{Corpus, DocType, Window};

use crate::config::{pick, pick_list, ConfigFile};
use crate::{CliError, Format, RunArgs};

pub const DEFAULT_ALPHA: f64 = 0.05;
pub const DEFAULT_MIN_PUBS: u64 = 5;

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    pub citing: Vec<PathBuf>,
    pub format: Option<Format>,
    pub units: Option<PathBuf>,
    pub py: Vec<i32>,
    pub windows: Vec<Window>,
    pub min_pubs: u64,
    pub alpha: f64,
    pub out: Option<PathBuf>,
    pub strict: bool,
    pub aggregate_table: Option<PathBuf>,
    pub doctypes: BTreeSet<DocType>,
}

fn parse_windows(texts: &[String]) -> Result<Vec<Window>, CliError> {
    let mut windows = Vec::new();
    for t in texts {
        let w: Window = t.parse().map_err(|e| CliError::Usage(format!("--window: {e}")))?;
        if !windows.contains(&w) {
            windows.push(w);
        }
    }
    Ok(windows)
}

fn parse_doctypes(text: &str) -> BTreeSet<DocType> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(DocType::from_label).collect()
}

impl RunConfig {
    /// Merges flags over the config file and validates the result.
    pub fn resolve(args: RunArgs) -> Result<Self, CliError> {
        let cfg = match &args.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        let format = match args.format {
            Some(f) => Some(f),
            None => cfg
                .get("format")
                .map(|v| {
                    <Format as clap::ValueEnum>::from_str(v, true)
                        .map_err(|_| CliError::Usage(format!("config format = {v:?}: expected tagged, canonical or aggregate")))
                })
                .transpose()?,
        };
        let py_config: Vec<i32> = cfg
            .list("py")
            .iter()
            .map(|v| v.parse().map_err(|_| CliError::Usage(format!("config py = {v:?}: not a year"))))
            .collect::<Result<_, _>>()?;
        let strict = args.strict
            || match cfg.get("strict") {
                None => false,
                Some(v) => matches!(v.to_ascii_lowercase().as_str(), "true" | "yes" | "1"),
            };
        let workers = pick(args.workers, cfg.parsed("workers"))?;
        if let Some(n) = workers {
            if n == 0 {
                return Err(CliError::Usage("--workers must be at least 1".into()));
            }
            // a pool may already exist when called twice in one process; the first one wins
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }

        let config = RunConfig {
            input: args.input.or_else(|| cfg.path("input")),
            citing: pick_list(args.citing, cfg.paths("citing")),
            format,
            units: args.units.or_else(|| cfg.path("units")),
            py: pick_list(args.py, py_config),
            windows: parse_windows(&pick_list(args.window, cfg.list("window")))?,
            min_pubs: pick(args.min_pubs, cfg.parsed("min-pubs"))?.unwrap_or(DEFAULT_MIN_PUBS),
            alpha: pick(args.alpha, cfg.parsed("alpha"))?.unwrap_or(DEFAULT_ALPHA),
            out: args.out.or_else(|| cfg.path("out")),
            strict,
            aggregate_table: args.aggregate_table.or_else(|| cfg.path("aggregate-table")),
            doctypes: args
                .doctypes
                .or_else(|| cfg.get("doctypes").map(str::to_string))
                .map(|t| parse_doctypes(&t))
                .unwrap_or_else(DocType::evaluated),
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), CliError> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(CliError::Usage(format!("--alpha must be strictly between 0 and 1, got {}", self.alpha)));
        }
        if self.min_pubs == 0 {
            return Err(CliError::Usage("--min-pubs must be at least 1".into()));
        }
        if self.doctypes.is_empty() {
            return Err(CliError::Usage("--doctypes is empty".into()));
        }
        Ok(())
    }

    pub fn require_input(&self) -> Result<&Path, CliError> {
        self.input.as_deref().ok_or_else(|| CliError::Usage("no input given; pass --input".into()))
    }

    pub fn require_out(&self) -> Result<&Path, CliError> {
        self.out.as_deref().ok_or_else(|| CliError::Usage("no output directory given; pass --out".into()))
    }

    pub fn input_format(&self) -> Result<Format, CliError> {
        if let Some(f) = self.format {
            return Ok(f);
        }
        let input = self.require_input()?;
        Ok(match input.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
            Some("jsonl") | Some("json") => Format::Canonical,
            Some("csv") => Format::Aggregate,
            _ => Format::Tagged,
        })
    }

    /// Explicit windows, or the three- and five-year windows starting at a single `--py`.
    pub fn resolved_windows(&self) -> Result<Vec<Window>, CliError> {
        if !self.windows.is_empty() {
            return Ok(self.windows.clone());
        }
        match self.py.as_slice() {
            [y] => Ok(vec![
                Window::new(*y, y + 2).map_err(|e| CliError::Usage(e.to_string()))?,
                Window::new(*y, y + 4).map_err(|e| CliError::Usage(e.to_string()))?,
            ]),
            _ => Err(CliError::Usage("no citation window; pass --window START:END or a single --py".into())),
        }
    }

    pub fn counting_options(&self) -> CountingOptions {
        CountingOptions {
            cited_doctypes: self.doctypes.clone(),
            publication_years: (!self.py.is_empty()).then(|| self.py.iter().copied().collect()),
            citing_doctypes: None,
        }
    }

    /// The aggregate table, from `--aggregate-table` or an `aggregate`-format `--input`.
    pub fn aggregate_source(&self) -> Result<Option<&Path>, CliError> {
        if let Some(p) = &self.aggregate_table {
            return Ok(Some(p));
        }
        if self.input.is_some() && self.input_format()? == Format::Aggregate {
            return Ok(self.input.as_deref());
        }
        Ok(None)
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

/// Loaded corpus plus the number of rejected tagged records.
pub struct LoadedCorpus {
    pub corpus: Corpus,
    pub rejected: usize,
}

pub fn load_corpus(cfg: &RunConfig) -> Result<LoadedCorpus, CliError> {
    let input = cfg.require_input()?;
    match cfg.input_format()? {
        Format::Canonical => {
            if !cfg.citing.is_empty() {
                return Err(CliError::Usage("--citing applies to tagged input only".into()));
            }
            let corpus = load_canonical(&read_text(input)?)
                .map_err(|e| CliError::Input(format!("{}: {e}", input.display())))?;
            Ok(LoadedCorpus { corpus, rejected: 0 })
        }
        Format::Tagged => {
            let mut rejected = 0;
            let mut parse = |path: &Path| -> Result<Vec<fraccite::PublicationRecord>, CliError> {
                let parsed = parse_tagged(&read_text(path)?);
                for e in &parsed.errors {
                    eprintln!("warning: {}: {e}", path.display());
                }
                if cfg.strict && !parsed.errors.is_empty() {
                    return Err(CliError::Input(format!(
                        "{}: {} record(s) rejected in strict mode",
                        path.display(),
                        parsed.errors.len()
                    )));
                }
                rejected += parsed.errors.len();
                Ok(parsed.records)
            };
            let cited = parse(input)?;
            let mut citing = Vec::new();
            for path in &cfg.citing {
                citing.extend(parse(path)?);
            }
            let corpus = Corpus::new(cited, citing).map_err(|e| CliError::Input(e.to_string()))?;
            Ok(LoadedCorpus { corpus, rejected })
        }
        Format::Aggregate => Err(CliError::Usage("this command needs a corpus, not an aggregate table".into())),
    }
}

pub fn load_units(cfg: &RunConfig) -> Result<Vec<UnitDefinition>, CliError> {
    let path = cfg.units.as_deref().ok_or_else(|| CliError::Usage("no unit definitions; pass --units".into()))?;
    parse_definitions(&read_text(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_aggregate(path: &Path) -> Result<Vec<AggregateRow>, CliError> {
    load_aggregate_table(&read_text(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
