use crate::config::{ModelKind, Scenario, ScenarioConfig};
use crate::output::{sha256_hex, FileEntry};
use crate::{RunData, RunError};
use quadrature::PrecisionPolicy;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use verify::CheckReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    CheckFailure,
    QuadratureFailure,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::CheckFailure => 2,
            Status::QuadratureFailure => 3,
        }
    }
}

/// Self-contained record of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub scenario: String,
    pub model: ModelKind,
    /// SHA-256 of the config with `output_dir` cleared.
    pub scenario_hash: String,
    pub config: ScenarioConfig,
    pub policy: Option<PrecisionPolicy>,
    pub navfix_version: String,
    /// Wall-clock seconds; the only entries that differ between reruns.
    pub timings: BTreeMap<String, f64>,
    pub checks: Vec<CheckReport>,
    pub convergence_ratios: BTreeMap<String, f64>,
    pub tail_verification: BTreeMap<String, bool>,
    pub files: Vec<FileEntry>,
    pub status: Status,
}

pub fn scenario_hash(cfg: &ScenarioConfig) -> String {
    let canonical = ScenarioConfig { output_dir: None, ..cfg.clone() };
    sha256_hex(serde_json::to_string(&canonical).expect("config serializes").as_bytes())
}

/// Checks whose failure means the quadrature could not be verified.
fn is_quadrature_check(name: &str) -> bool {
    matches!(name, "refinement_inner" | "refinement_middle" | "refinement_outer")
}

fn status_of(checks: &[CheckReport]) -> Status {
    if checks.iter().any(|c| !c.pass && is_quadrature_check(&c.check)) {
        Status::QuadratureFailure
    } else if checks.iter().any(|c| !c.pass) {
        Status::CheckFailure
    } else {
        Status::Pass
    }
}

impl RunManifest {
    pub(crate) fn assemble(cfg: &ScenarioConfig, scenario: &Scenario, data: RunData) -> Self {
        let policy = match scenario {
            Scenario::Ns { policy, .. } => Some(*policy),
            _ => None,
        };
        let status = status_of(&data.checks);
        Self {
            scenario: cfg.name.clone(),
            model: cfg.model,
            scenario_hash: scenario_hash(cfg),
            config: cfg.clone(),
            policy,
            navfix_version: env!("CARGO_PKG_VERSION").to_string(),
            timings: data.timings,
            checks: data.checks,
            convergence_ratios: data.convergence_ratios,
            tail_verification: data.tail_verification,
            files: data.files,
            status,
        }
    }

    pub fn file_name(scenario: &str) -> String {
        format!("manifest_{scenario}.json")
    }

    pub(crate) fn write(&self, dir: &Path) -> Result<PathBuf, RunError> {
        let path = dir.join(Self::file_name(&self.scenario));
        let text = serde_json::to_string_pretty(self).expect("manifest serializes");
        std::fs::write(&path, text).map_err(|e| RunError::io(&path, e))?;
        Ok(path)
    }

    pub fn load(path: &Path) -> Result<Self, RunError> {
        let text = std::fs::read_to_string(path).map_err(|e| RunError::io(path, e))?;
        serde_json::from_str(&text)
            .map_err(|e| RunError::Manifest { path: path.display().to_string(), message: e.to_string() })
    }
}

/// Result of re-checking a manifest against the files next to it.
#[derive(Debug, Clone, PartialEq)]
pub struct ManifestCheck {
    pub manifest: RunManifest,
    /// Files whose hash or size no longer matches, or that are missing.
    pub mismatched: Vec<String>,
    pub failed_checks: Vec<String>,
}

impl ManifestCheck {
    /// 0 when everything matches and passed, 3 for failed quadrature
    /// verification, 2 for any other failure.
    pub fn exit_code(&self) -> u8 {
        if !self.mismatched.is_empty() {
            return 2;
        }
        status_of(&self.manifest.checks).exit_code()
    }
}

pub fn verify_manifest(path: &Path) -> Result<ManifestCheck, RunError> {
    let manifest = RunManifest::load(path)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut mismatched = Vec::new();
    for f in &manifest.files {
        match std::fs::read(dir.join(&f.name)) {
            Ok(bytes) if bytes.len() as u64 == f.bytes && sha256_hex(&bytes) == f.sha256 => {}
            _ => mismatched.push(f.name.clone()),
        }
    }
    if scenario_hash(&manifest.config) != manifest.scenario_hash {
        mismatched.push("scenario_hash".into());
    }
    let failed_checks = manifest
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{} ({})", c.check, c.scenario))
        .collect();
    Ok(ManifestCheck { manifest, mismatched, failed_checks })
}
