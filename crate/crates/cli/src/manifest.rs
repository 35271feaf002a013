//! Output directory writing and the run manifest.
//!
//! The manifest holds settings and content digests but no paths or worker
//! counts, so identical runs produce identical manifests.

use std::fmt::Write as _;
use std::path::Path;

use fraccite::report::OutputFile;
use sha2::{Digest, Sha256};

use crate::CliError;

pub const MANIFEST_NAME: &str = "manifest.txt";

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Default)]
pub struct Manifest {
    command: String,
    inputs: Vec<(String, String)>,
    settings: Vec<(String, String)>,
    summary: Vec<(String, String)>,
}

impl Manifest {
    pub fn new(command: &str) -> Self {
        Manifest { command: command.to_string(), ..Default::default() }
    }

    /// Records the digest of an input file under `role`.
    pub fn input(&mut self, role: &str, path: &Path) -> Result<(), CliError> {
        let bytes =
            std::fs::read(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        self.inputs.push((role.to_string(), sha256_hex(&bytes)));
        Ok(())
    }

    pub fn setting(&mut self, key: &str, value: impl ToString) {
        self.settings.push((key.to_string(), value.to_string()));
    }

    pub fn summary(&mut self, key: &str, value: impl ToString) {
        self.summary.push((key.to_string(), value.to_string()));
    }

    fn render(&self, files: &[OutputFile]) -> String {
        let mut out = String::from("# fraccite run manifest\n");
        let _ = writeln!(out, "command = {}", self.command);
        let sections = [("input", &self.inputs), ("setting", &self.settings), ("summary", &self.summary)];
        for (prefix, entries) in sections {
            for (k, v) in entries {
                let _ = writeln!(out, "{prefix}.{k} = {v}");
            }
        }
        for f in files {
            let _ = writeln!(out, "output.{} = {}", f.name, sha256_hex(f.contents.as_bytes()));
        }
        out
    }
}

/// Writes `files` (sorted by name) and the manifest into `dir`.
pub fn write_outputs(dir: &Path, mut files: Vec<OutputFile>, manifest: &Manifest) -> Result<(), CliError> {
    files.sort_by(|a, b| a.name.cmp(&b.name));
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Internal(format!("cannot create {}: {e}", dir.display())))?;
    let text = manifest.render(&files);
    for f in files.iter().chain(std::iter::once(&OutputFile { name: MANIFEST_NAME.into(), contents: text })) {
        let path = dir.join(&f.name);
        std::fs::write(&path, &f.contents)
            .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}
