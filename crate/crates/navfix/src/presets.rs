//! Shipped scenarios: the five inviscid scenarios, the fifteen viscous
//! scenarios and four periodic grid fixtures.

use crate::config::{Axis, Fixture, GridSettings, ModelKind, ScenarioConfig};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    All,
    Euler,
    Ns,
    Grid,
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(Family::All),
            "euler" => Ok(Family::Euler),
            "ns" => Ok(Family::Ns),
            "grid" => Ok(Family::Grid),
            other => Err(format!("unknown family `{other}` (expected all, euler, ns or grid)")),
        }
    }
}

/// μ_n of the inviscid scenarios, n = 1..5.
pub const EULER_MU: [f64; 5] = [1.0, 1.0, 1.3, 1.5, 1.7];
pub const EULER_SIGMA: f64 = 10.0;
/// ν of the viscous scenarios, in preset order within each n.
pub const NS_NU: [f64; 3] = [1.5, 1.0, 0.75];

fn modal_base(name: String, model: ModelKind, n: u32, r_count: usize, t_count: usize) -> ScenarioConfig {
    ScenarioConfig {
        name,
        model,
        n: Some(n),
        amplitude: Some(1.0 / n as f64),
        mu: None,
        sigma: None,
        nu: None,
        r: Some(Axis { min: 0.0, max: 50.0, count: r_count }),
        phi: Some(Axis { min: 0.0, max: PI, count: 5 }),
        t: Some(Axis { min: 0.0, max: 10.0, count: t_count }),
        display_time: Some(10.0),
        compare_radii: Some(101),
        compare_rays: Some(5),
        refinement_radii: None,
        policy: None,
        grid: None,
        output_dir: None,
    }
}

pub fn euler_presets() -> Vec<ScenarioConfig> {
    (1..=5u32)
        .map(|n| ScenarioConfig {
            mu: Some(EULER_MU[n as usize - 1]),
            sigma: Some(EULER_SIGMA),
            ..modal_base(format!("fig_4_{n}"), ModelKind::Euler, n, 51, 11)
        })
        .collect()
}

pub fn ns_presets() -> Vec<ScenarioConfig> {
    let mut out = Vec::new();
    for n in 1..=5u32 {
        for (k, &nu) in NS_NU.iter().enumerate() {
            let fig = 3 * (n - 1) + k as u32 + 1;
            out.push(ScenarioConfig {
                mu: Some(1.0),
                nu: Some(nu),
                refinement_radii: Some(vec![0.5, 2.0, 7.0]),
                ..modal_base(format!("fig_5_1_{fig}"), ModelKind::Ns, n, 26, 5)
            });
        }
    }
    out
}

fn grid_base(name: &str, model: ModelKind, nu: f64, settings: GridSettings) -> ScenarioConfig {
    ScenarioConfig {
        name: name.to_string(),
        model,
        n: None,
        amplitude: None,
        mu: None,
        sigma: None,
        nu: Some(nu),
        r: None,
        phi: None,
        t: None,
        display_time: None,
        compare_radii: None,
        compare_rays: None,
        refinement_radii: None,
        policy: None,
        grid: Some(settings),
        output_dir: None,
    }
}

pub fn grid_presets() -> Vec<ScenarioConfig> {
    let s = |fixture, points, t_final, time_nodes, tol, amplitude| GridSettings {
        fixture,
        points,
        half_width: PI,
        t_final,
        time_nodes,
        j_max: 30,
        tol,
        amplitude,
    };
    vec![
        grid_base("taylor_green_2d", ModelKind::Grid2d, 0.1, s(Fixture::TaylorGreen, 128, 0.5, 11, 1e-10, None)),
        grid_base("taylor_green_3d", ModelKind::Grid3d, 0.5, s(Fixture::TaylorGreen, 16, 0.5, 81, 1e-7, None)),
        grid_base("single_mode_2d", ModelKind::Grid2d, 1.0, s(Fixture::SingleMode, 16, 1.0, 81, 1e-10, Some(0.2))),
        grid_base("single_mode_3d", ModelKind::Grid3d, 1.0, s(Fixture::SingleMode, 16, 1.0, 81, 1e-8, Some(0.5))),
    ]
}

pub fn presets(family: Family) -> Vec<ScenarioConfig> {
    match family {
        Family::Euler => euler_presets(),
        Family::Ns => ns_presets(),
        Family::Grid => grid_presets(),
        Family::All => {
            let mut all = euler_presets();
            all.extend(ns_presets());
            all.extend(grid_presets());
            all
        }
    }
}

pub fn find_preset(name: &str) -> Option<ScenarioConfig> {
    presets(Family::All).into_iter().find(|c| c.name == name)
}
