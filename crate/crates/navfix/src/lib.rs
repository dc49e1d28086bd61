//! Scenario runner behind the `navfix` binary.
//!
//! A run validates one `ScenarioConfig`, evaluates the selected backend,
//! writes CSV data and a JSON manifest into a directory of its own, and
//! reports a `Status` that maps onto the process exit code.

pub mod config;
mod grid_run;
mod manifest;
mod modal_run;
pub mod output;
pub mod presets;

pub use config::{ConfigError, ModelKind, Scenario, ScenarioConfig};
pub use manifest::{verify_manifest, ManifestCheck, RunManifest, Status};
pub use presets::{find_preset, presets, Family};

use rayon::prelude::*;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::time::Instant;
use thiserror::Error;

/// Environment variable that overrides the output root.
pub const OUT_ROOT_ENV: &str = "NAVFIX_OUT_ROOT";
const DEFAULT_OUT_ROOT: &str = "navfix_out";

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("manifest {path}: {message}")]
    Manifest { path: String, message: String },

    #[error(transparent)]
    Euler(#[from] euler2d_modal::EulerError),

    #[error(transparent)]
    Ns(#[from] ns2d_modal::NsError),

    #[error(transparent)]
    Grid(#[from] spectral_grid::GridError),

    #[error(transparent)]
    Verify(#[from] verify::VerifyError),
}

impl RunError {
    pub(crate) fn io(path: &Path, e: impl std::fmt::Display) -> Self {
        RunError::Io { path: path.display().to_string(), message: e.to_string() }
    }

    /// 1 for configuration problems, 3 for quadrature failures, 2 otherwise.
    pub fn exit_code(&self) -> u8 {
        use ns2d_modal::NsError;
        match self {
            RunError::Config(_) => 1,
            RunError::Ns(NsError::Quadrature(_)) | RunError::Euler(euler2d_modal::EulerError::Quadrature(_)) => 3,
            RunError::Grid(spectral_grid::GridError::Quadrature(_)) => 3,
            _ => 2,
        }
    }
}

/// Output root: explicit flag, then the environment, then the config, then a default.
pub fn resolve_out_root(flag: Option<&Path>, config_dir: Option<&str>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Some(v) = std::env::var_os(OUT_ROOT_ENV).filter(|v| !v.is_empty()) {
        return PathBuf::from(v);
    }
    config_dir.map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_ROOT))
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub manifest: RunManifest,
    pub manifest_path: PathBuf,
}

impl RunOutcome {
    pub fn status(&self) -> Status {
        self.manifest.status
    }
}

/// Run one scenario into `out_root/<name>/`.
pub fn run_config(cfg: &ScenarioConfig, out_root: &Path) -> Result<RunOutcome, RunError> {
    let scenario = cfg.validate()?;
    let dir = out_root.join(&cfg.name);
    std::fs::create_dir_all(&dir).map_err(|e| RunError::io(&dir, e))?;
    let start = Instant::now();
    let mut result = match &scenario {
        Scenario::Euler { forcing, layout } => modal_run::run_euler(&cfg.name, forcing, layout, &dir)?,
        Scenario::Ns { forcing, layout, policy, refinement_radii } => {
            modal_run::run_ns(&cfg.name, forcing, layout, policy, refinement_radii, &dir)?
        }
        Scenario::Grid { dim, nu, settings } => grid_run::run_grid(&cfg.name, *dim, *nu, settings, &dir)?,
    };
    result.timings.insert("total_seconds".into(), start.elapsed().as_secs_f64());
    let manifest = RunManifest::assemble(cfg, &scenario, result);
    let manifest_path = manifest.write(&dir)?;
    Ok(RunOutcome { manifest, manifest_path })
}

/// What a backend run hands back for the manifest.
#[derive(Debug, Clone, Default)]
pub(crate) struct RunData {
    pub checks: Vec<verify::CheckReport>,
    pub convergence_ratios: std::collections::BTreeMap<String, f64>,
    pub tail_verification: std::collections::BTreeMap<String, bool>,
    pub timings: std::collections::BTreeMap<String, f64>,
    pub files: Vec<output::FileEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteEntry {
    pub scenario: String,
    pub status: Option<Status>,
    pub exit_code: u8,
    pub manifest: Option<String>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteSummary {
    pub family: String,
    pub entries: Vec<SuiteEntry>,
    /// Largest exit code over all scenarios.
    pub exit_code: u8,
}

/// Run every preset of a family on a pool of `jobs` workers.
pub fn run_suite(family: Family, out_root: &Path, jobs: usize) -> Result<SuiteSummary, RunError> {
    let configs = presets(family);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| RunError::Io { path: "thread pool".into(), message: e.to_string() })?;
    let results: Vec<(String, Result<RunOutcome, RunError>)> =
        pool.install(|| configs.par_iter().map(|c| (c.name.clone(), run_config(c, out_root))).collect());
    let entries: Vec<SuiteEntry> = results
        .into_iter()
        .map(|(scenario, r)| match r {
            Ok(o) => SuiteEntry {
                scenario,
                status: Some(o.status()),
                exit_code: o.status().exit_code(),
                manifest: Some(o.manifest_path.display().to_string()),
                error: None,
            },
            Err(e) => SuiteEntry { scenario, status: None, exit_code: e.exit_code(), manifest: None, error: Some(e.to_string()) },
        })
        .collect();
    let exit_code = entries.iter().map(|e| e.exit_code).max().unwrap_or(0);
    let name = format!("{family:?}").to_lowercase();
    let summary = SuiteSummary { family: name.clone(), entries, exit_code };
    std::fs::create_dir_all(out_root).map_err(|e| RunError::io(out_root, e))?;
    let path = out_root.join(format!("suite_{name}.json"));
    let text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    std::fs::write(&path, text).map_err(|e| RunError::io(&path, e))?;
    Ok(summary)
}
