//! Scenario configuration files (TOML) and their validation.
//!
//! Every field is explicit. Unknown keys are rejected so that a typo can
//! not silently fall back to some default.

use euler2d_modal::EulerForcing;
use ns2d_modal::NsForcing;
use quadrature::PrecisionPolicy;
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },

    #[error("cannot parse config: {0}")]
    Parse(String),

    #[error("field `{field}`: {message}")]
    Field { field: &'static str, message: String },
}

fn field(field: &'static str, message: impl Into<String>) -> ConfigError {
    ConfigError::Field { field, message: message.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Euler,
    Ns,
    Grid2d,
    Grid3d,
}

/// Inclusive uniform axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let h = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.max } else { self.min + i as f64 * h })
            .collect()
    }

    fn check(&self, name: &'static str, lo: f64) -> Result<(), ConfigError> {
        if !(self.min.is_finite() && self.max.is_finite()) || self.min > self.max {
            return Err(field(name, format!("need finite min <= max, got [{}, {}]", self.min, self.max)));
        }
        if self.min < lo {
            return Err(field(name, format!("min must be >= {lo}, got {}", self.min)));
        }
        if self.count == 0 || (self.count == 1 && self.min != self.max) {
            return Err(field(name, "count must be >= 1, and 1 only when min == max"));
        }
        Ok(())
    }
}

/// Overrides of the triple-integral precision policy. Absent keys keep the
/// shipped protocol values.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolicyOverrides {
    pub inner_limit: Option<f64>,
    pub inner_panels: Option<usize>,
    pub inner_tol: Option<f64>,
    pub middle_limit: Option<f64>,
    pub middle_panels: Option<usize>,
    pub middle_tol: Option<f64>,
    pub outer_panels: Option<usize>,
    pub outer_tol: Option<f64>,
    pub refine_factor: Option<f64>,
}

impl PolicyOverrides {
    pub fn apply(&self, mut p: PrecisionPolicy) -> PrecisionPolicy {
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = self.$f { p.$f = v; } )* };
        }
        set!(inner_limit, inner_panels, inner_tol, middle_limit, middle_panels, middle_tol, outer_panels, outer_tol, refine_factor);
        p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fixture {
    /// Unforced Taylor–Green initial data.
    TaylorGreen,
    /// Constant-in-time single-mode forcing from rest.
    SingleMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSettings {
    pub fixture: Fixture,
    /// Points per axis.
    pub points: usize,
    /// Box half-width L of [−L, L]^dim.
    pub half_width: f64,
    pub t_final: f64,
    pub time_nodes: usize,
    pub j_max: usize,
    pub tol: f64,
    /// Forcing amplitude (single mode only).
    pub amplitude: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    pub model: ModelKind,
    pub n: Option<u32>,
    /// F_n.
    pub amplitude: Option<f64>,
    pub mu: Option<f64>,
    pub sigma: Option<f64>,
    pub nu: Option<f64>,
    /// Radii of the field CSV.
    pub r: Option<Axis>,
    /// Angles of the field CSV, radians.
    pub phi: Option<Axis>,
    /// Times of the field CSV.
    pub t: Option<Axis>,
    /// Time of the comparison and dotted-curve outputs.
    pub display_time: Option<f64>,
    /// Number of radii on [0, 50] in the comparison output.
    pub compare_radii: Option<usize>,
    /// Number of rays on [0, π] in the comparison output.
    pub compare_rays: Option<usize>,
    /// Radii at which the triple-integral refinement protocol is run.
    pub refinement_radii: Option<Vec<f64>>,
    pub policy: Option<PolicyOverrides>,
    pub grid: Option<GridSettings>,
    /// Output directory when neither `--out` nor the environment override is set.
    pub output_dir: Option<String>,
}

/// Sampling layout shared by both modal models.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalLayout {
    pub r: Vec<f64>,
    pub phi: Vec<f64>,
    pub t: Vec<f64>,
    pub display_time: f64,
    pub compare_r: Vec<f64>,
    pub compare_phi: Vec<f64>,
}

/// Radii of the dotted-curve output.
pub const DOTTED_RADII: [f64; 5] = [1.0, 2.0, 3.0, 5.0, 7.0];
/// Angles per dotted curve, on [0, 2π).
pub const DOTTED_ANGLES: usize = 72;
pub const COMPARE_R_MAX: f64 = 50.0;

#[derive(Debug, Clone, PartialEq)]
pub enum Scenario {
    Euler { forcing: EulerForcing, layout: ModalLayout },
    Ns { forcing: NsForcing, layout: ModalLayout, policy: PrecisionPolicy, refinement_radii: Vec<f64> },
    Grid { dim: usize, nu: f64, settings: GridSettings },
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Read {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<Scenario, ConfigError> {
        if self.name.is_empty() || !self.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.') {
            return Err(field("name", "must be non-empty and use only [A-Za-z0-9_.-]"));
        }
        match self.model {
            ModelKind::Euler | ModelKind::Ns => self.validate_modal(),
            ModelKind::Grid2d | ModelKind::Grid3d => self.validate_grid(),
        }
    }

    fn layout(&self) -> Result<ModalLayout, ConfigError> {
        let r = self.r.ok_or_else(|| field("r", "required for modal models"))?;
        let phi = self.phi.ok_or_else(|| field("phi", "required for modal models"))?;
        let t = self.t.ok_or_else(|| field("t", "required for modal models"))?;
        r.check("r", 0.0)?;
        phi.check("phi", f64::NEG_INFINITY)?;
        t.check("t", 0.0)?;
        let display_time = self.display_time.ok_or_else(|| field("display_time", "required for modal models"))?;
        if !(display_time > 0.0 && display_time.is_finite()) {
            return Err(field("display_time", format!("must be positive, got {display_time}")));
        }
        let nr = self.compare_radii.ok_or_else(|| field("compare_radii", "required for modal models"))?;
        let nphi = self.compare_rays.ok_or_else(|| field("compare_rays", "required for modal models"))?;
        if nr < 2 {
            return Err(field("compare_radii", "must be >= 2"));
        }
        if nphi < 2 {
            return Err(field("compare_rays", "must be >= 2"));
        }
        let compare_r = Axis { min: 0.0, max: COMPARE_R_MAX, count: nr }.values();
        let compare_phi = Axis { min: 0.0, max: std::f64::consts::PI, count: nphi }.values();
        Ok(ModalLayout { r: r.values(), phi: phi.values(), t: t.values(), display_time, compare_r, compare_phi })
    }

    fn validate_modal(&self) -> Result<Scenario, ConfigError> {
        if self.grid.is_some() {
            return Err(field("grid", "only allowed for grid2d/grid3d"));
        }
        let n = self.n.ok_or_else(|| field("n", "required"))?;
        let amplitude = self.amplitude.ok_or_else(|| field("amplitude", "required"))?;
        let mu = self.mu.ok_or_else(|| field("mu", "required"))?;
        let layout = self.layout()?;
        if self.model == ModelKind::Euler {
            let sigma = self.sigma.ok_or_else(|| field("sigma", "required for euler"))?;
            if !(sigma > 0.0) {
                return Err(field("sigma", format!("must be > 0, got {sigma}")));
            }
            if let Some(nu) = self.nu {
                if nu != 0.0 {
                    return Err(field("nu", format!("euler is inviscid; nu must be absent or 0, got {nu}")));
                }
            }
            if self.policy.is_some() || self.refinement_radii.is_some() {
                return Err(field("policy", "triple-integral settings only apply to ns"));
            }
            let forcing = EulerForcing::new(n, amplitude, mu, sigma).map_err(|e| field("n", e.to_string()))?;
            return Ok(Scenario::Euler { forcing, layout });
        }
        if self.sigma.is_some() {
            return Err(field("sigma", "ns forcing has no sigma"));
        }
        let nu = self.nu.ok_or_else(|| field("nu", "required for ns"))?;
        if !(nu > 0.0 && nu.is_finite()) {
            return Err(field("nu", format!("must be > 0 for ns, got {nu}")));
        }
        let forcing = NsForcing::new(n, amplitude, mu, nu).map_err(|e| field("n", e.to_string()))?;
        let policy = self.policy.unwrap_or_default().apply(PrecisionPolicy::default());
        policy.validate().map_err(|e| field("policy", e.to_string()))?;
        let refinement_radii = self.refinement_radii.clone().ok_or_else(|| field("refinement_radii", "required for ns"))?;
        if refinement_radii.is_empty() || refinement_radii.iter().any(|r| !(*r >= 0.0 && r.is_finite())) {
            return Err(field("refinement_radii", "need at least one finite radius >= 0"));
        }
        Ok(Scenario::Ns { forcing, layout, policy, refinement_radii })
    }

    fn validate_grid(&self) -> Result<Scenario, ConfigError> {
        for (name, present) in [
            ("n", self.n.is_some()),
            ("amplitude", self.amplitude.is_some()),
            ("mu", self.mu.is_some()),
            ("sigma", self.sigma.is_some()),
            ("r", self.r.is_some()),
            ("phi", self.phi.is_some()),
            ("t", self.t.is_some()),
            ("display_time", self.display_time.is_some()),
            ("compare_radii", self.compare_radii.is_some()),
            ("compare_rays", self.compare_rays.is_some()),
            ("refinement_radii", self.refinement_radii.is_some()),
            ("policy", self.policy.is_some()),
        ] {
            if present {
                return Err(ConfigError::Field { field: name, message: "not used by grid models".into() });
            }
        }
        let settings = self.grid.ok_or_else(|| field("grid", "required for grid models"))?;
        let nu = self.nu.ok_or_else(|| field("nu", "required for grid models"))?;
        if !(nu > 0.0 && nu.is_finite()) {
            return Err(field("nu", format!("must be > 0, got {nu}")));
        }
        if settings.points < 4 || settings.points % 2 == 1 {
            return Err(field("grid.points", "must be even and >= 4"));
        }
        if !(settings.half_width > 0.0) {
            return Err(field("grid.half_width", "must be > 0"));
        }
        if !(settings.t_final > 0.0) {
            return Err(field("grid.t_final", "must be > 0"));
        }
        if settings.time_nodes < 5 {
            return Err(field("grid.time_nodes", "must be >= 5"));
        }
        if settings.j_max == 0 {
            return Err(field("grid.j_max", "must be >= 1"));
        }
        if !(settings.tol > 0.0) {
            return Err(field("grid.tol", "must be > 0"));
        }
        match (settings.fixture, settings.amplitude) {
            (Fixture::SingleMode, None) => return Err(field("grid.amplitude", "required for single_mode")),
            (Fixture::TaylorGreen, Some(_)) => return Err(field("grid.amplitude", "not used by taylor_green")),
            _ => {}
        }
        let dim = if self.model == ModelKind::Grid2d { 2 } else { 3 };
        Ok(Scenario::Grid { dim, nu, settings })
    }
}
