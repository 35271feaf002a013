//! Flat `key = value` run configuration, merged under command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::CliError;

/// Keys accepted in a config file. Each mirrors the long flag of the same name.
const KEYS: &[&str] = &[
    "input",
    "citing",
    "format",
    "units",
    "py",
    "window",
    "min-pubs",
    "alpha",
    "out",
    "strict",
    "aggregate-table",
    "doctypes",
    "workers",
];

/// Parsed config file. Repeated keys accumulate, in file order.
#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    values: BTreeMap<String, Vec<String>>,
    /// Relative paths in the file resolve against this directory.
    base: PathBuf,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
        let mut cfg = Self::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        cfg.base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(cfg)
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut values: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| format!("line {}: expected `key = value`", idx + 1))?;
            let key = key.trim().replace('_', "-");
            if !KEYS.contains(&key.as_str()) {
                return Err(format!("line {}: unknown key {key:?}", idx + 1));
            }
            values.entry(key).or_default().push(value.trim().to_string());
        }
        Ok(ConfigFile { values, base: PathBuf::new() })
    }

    /// Last value given for `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).and_then(|v| v.last()).map(String::as_str)
    }

    /// Every value for `key`, with comma-separated entries split out.
    pub fn list(&self, key: &str) -> Vec<String> {
        self.values
            .get(key)
            .into_iter()
            .flatten()
            .flat_map(|v| v.split(','))
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect()
    }

    pub fn path(&self, key: &str) -> Option<PathBuf> {
        self.get(key).map(|p| self.base.join(p))
    }

    pub fn paths(&self, key: &str) -> Vec<PathBuf> {
        self.list(key).into_iter().map(|p| self.base.join(p)).collect()
    }

    pub fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        self.get(key)
            .map(|v| v.parse::<T>().map_err(|e| CliError::Usage(format!("config {key} = {v:?}: {e}"))))
            .transpose()
    }
}

/// Flag value if given, otherwise the config value.
pub fn pick<T>(flag: Option<T>, config: Result<Option<T>, CliError>) -> Result<Option<T>, CliError> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => config,
    }
}

/// Flag list if non-empty, otherwise the config list.
pub fn pick_list<T>(flag: Vec<T>, config: Vec<T>) -> Vec<T> {
    if flag.is_empty() {
        config
    } else {
        flag
    }
}
