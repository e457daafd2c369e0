//! Atomic file output and the checksum manifest.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};
use crate::formats;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub sha256: String,
    pub bytes: usize,
}

/// Checksums of every deterministic output. Timings live elsewhere so that
/// equal inputs give byte-identical manifests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub command: String,
    pub files: Vec<ManifestEntry>,
}

/// Run metadata written next to the manifest. Timings make it
/// non-deterministic, so it is not listed in the manifest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    /// Cells of the constructed Δ-set per dimension.
    pub cells: Vec<usize>,
    pub critical_values: Option<usize>,
    pub timings_ms: BTreeMap<String, f64>,
    pub manifest_sha256: String,
    pub manifest: Manifest,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Writes through a temporary file in the same directory, then renames.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.as_file()
        .sync_all()
        .map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

pub struct OutputDir {
    dir: PathBuf,
    files: Vec<ManifestEntry>,
}

impl OutputDir {
    pub fn create(dir: &Path) -> Result<Self> {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        Ok(OutputDir {
            dir: dir.to_path_buf(),
            files: Vec::new(),
        })
    }

    pub fn path(&self) -> &Path {
        &self.dir
    }

    pub fn write(&mut self, name: &str, contents: &str) -> Result<()> {
        atomic_write(&self.dir.join(name), contents.as_bytes())?;
        self.files.push(ManifestEntry {
            name: name.to_string(),
            sha256: sha256_hex(contents.as_bytes()),
            bytes: contents.len(),
        });
        Ok(())
    }

    /// Writes `manifest.json` and `run_report.json`.
    pub fn finish(
        mut self,
        command: &str,
        cells: Vec<usize>,
        critical_values: Option<usize>,
        timings_ms: BTreeMap<String, f64>,
    ) -> Result<RunReport> {
        self.files.sort_by(|a, b| a.name.cmp(&b.name));
        let manifest = Manifest {
            command: command.to_string(),
            files: self.files,
        };
        let text = formats::to_json(&manifest)?;
        atomic_write(&self.dir.join("manifest.json"), text.as_bytes())?;
        let report = RunReport {
            command: command.to_string(),
            cells,
            critical_values,
            timings_ms,
            manifest_sha256: sha256_hex(text.as_bytes()),
            manifest,
        };
        atomic_write(
            &self.dir.join("run_report.json"),
            formats::to_json(&report)?.as_bytes(),
        )?;
        Ok(report)
    }
}
