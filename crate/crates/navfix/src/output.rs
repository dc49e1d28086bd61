//! CSV emission and file hashing.

use crate::RunError;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

/// 17 significant digits, enough to round-trip any f64.
pub fn fmt(v: f64) -> String {
    if v == 0.0 {
        // one spelling for both signed zeros
        return "0".to_string();
    }
    format!("{v:.16e}")
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileEntry {
    /// Path relative to the manifest's directory.
    pub name: String,
    pub sha256: String,
    pub bytes: u64,
}

/// Rows of numbers rendered into an in-memory CSV.
pub struct Table {
    writer: csv::Writer<Vec<u8>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        writer.write_record(header).expect("in-memory write");
        Self { writer }
    }

    pub fn row(&mut self, values: &[f64]) {
        self.writer.write_record(values.iter().map(|v| fmt(*v))).expect("in-memory write");
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.writer.into_inner().expect("in-memory flush")
    }
}

pub fn write_file(dir: &Path, name: &str, bytes: &[u8]) -> Result<FileEntry, RunError> {
    let path = dir.join(name);
    std::fs::write(&path, bytes).map_err(|e| RunError::io(&path, e))?;
    Ok(FileEntry { name: name.to_string(), sha256: sha256_hex(bytes), bytes: bytes.len() as u64 })
}
