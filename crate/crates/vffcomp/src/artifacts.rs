//! In-memory artifact sets committed atomically, plus the run manifest.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Small CSV builder; every field is numeric or a bare identifier.
#[derive(Clone, Debug)]
pub struct Csv {
    text: String,
    columns: usize,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Csv { text: header.join(",") + "\n", columns: header.len() }
    }

    pub fn row(&mut self, fields: &[String]) {
        debug_assert_eq!(fields.len(), self.columns);
        let _ = writeln!(self.text, "{}", fields.join(","));
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.text.into_bytes()
    }
}

/// Shortest round-trip formatting, identical across runs.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

#[derive(Debug, Default)]
pub struct ArtifactSet {
    files: Vec<(String, Vec<u8>)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArtifactRecord {
    pub file: String,
    pub sha256: String,
    pub bytes: usize,
}

impl ArtifactSet {
    pub fn add(&mut self, name: &str, bytes: Vec<u8>) {
        self.files.push((name.to_owned(), bytes));
    }

    pub fn add_csv(&mut self, name: &str, csv: Csv) {
        self.add(name, csv.into_bytes());
    }

    pub fn add_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let mut bytes = serde_json::to_vec_pretty(value)?;
        bytes.push(b'\n');
        self.add(name, bytes);
        Ok(())
    }

    pub fn records(&self) -> Vec<ArtifactRecord> {
        self.files.iter().map(|(f, b)| ArtifactRecord { file: f.clone(), sha256: sha256_hex(b), bytes: b.len() }).collect()
    }

    /// Write every file next to its destination, then rename them all into place.
    pub fn commit(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let mut staged: Vec<(PathBuf, PathBuf)> = Vec::new();
        for (name, bytes) in &self.files {
            let dest = dir.join(name);
            let tmp = dir.join(format!(".{name}.tmp-{}", std::process::id()));
            let written = (|| -> std::io::Result<()> {
                let mut f = fs::File::create(&tmp)?;
                f.write_all(bytes)?;
                f.sync_all()
            })();
            if let Err(e) = written {
                let _ = fs::remove_file(&tmp);
                for (t, _) in &staged {
                    let _ = fs::remove_file(t);
                }
                return Err(e).with_context(|| format!("writing {}", tmp.display()));
            }
            staged.push((tmp, dest));
        }
        for (tmp, dest) in &staged {
            fs::rename(tmp, dest).with_context(|| format!("renaming into {}", dest.display()))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Versions {
    pub vffcomp: &'static str,
    pub vffcomp_core: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub command: String,
    pub schema_version: u32,
    pub config_sha256: String,
    pub seed: u64,
    pub versions: Versions,
    pub workers: usize,
    pub wall_time_s: f64,
    pub dry_run: bool,
    /// `false` when an optimizer stopped above its cost tolerance; absent when no
    /// optimizer ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
    pub artifacts: Vec<ArtifactRecord>,
}

impl Manifest {
    pub fn versions() -> Versions {
        Versions { vffcomp: env!("CARGO_PKG_VERSION"), vffcomp_core: vffcomp_core::VERSION }
    }
}

pub const MANIFEST_FILE: &str = "manifest.json";
