//! Versioned defaults loaded from `config/defaults.toml`.

use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

pub const DEFAULTS_TOML: &str = include_str!("../../../config/defaults.toml");

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Defaults {
    pub version: u32,
    pub raster: RasterDefaults,
    pub smear: SmearDefaults,
    pub mapping: MappingDefaults,
    pub mission: MissionDefaults,
    pub detector: DetectorDefaults,
    pub servo: ServoDefaults,
    pub entry: EntryDefaults,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RasterDefaults {
    pub px_per_cm: f64,
    pub ink_rgb: [u8; 3],
    pub ink_jitter: u8,
    pub deposition_density: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SmearDefaults {
    pub hue_ranges: Vec<(f64, f64)>,
    pub min_saturation: f64,
    pub min_value: f64,
    pub min_area_fraction: f64,
    pub ambiguity_fraction: f64,
    pub line_tolerance_deg: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MappingDefaults {
    pub bearing_sigma_deg: f64,
    pub range_sigma_frac: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MissionDefaults {
    pub camera_fov_deg: f64,
    pub frame_width_px: u32,
    pub frame_height_px: u32,
    pub rotation_step_deg: f64,
    pub waypoint_spacing_m: f64,
    pub cruise_altitude_m: f64,
    pub speed_m_s: f64,
    pub yaw_rate_deg_s: f64,
    pub takeoff_s: f64,
    pub frame_period_s: f64,
    pub landing_s: f64,
    pub servo_iteration_s: f64,
    pub gather_cost_s: f64,
    pub pass_budget_s: f64,
    pub dedupe_radius_m: f64,
    pub localization_sigma_m: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DetectorDefaults {
    pub miss_rate: f64,
    pub false_positive_rate: f64,
    pub pixel_noise_sigma: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ServoDefaults {
    pub gain: f64,
    pub convergence_px: f64,
    pub max_iterations: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntryDefaults {
    pub drone_mass_kg: f64,
    pub accel_m_s2: f64,
    pub window_width_m: f64,
    pub required_force_n: f64,
    pub knockaway_midpoint_cm: f64,
    pub knockaway_slope_per_cm: f64,
    pub aim_noise_sigma_m: f64,
}

static DEFAULTS: LazyLock<Defaults> =
    LazyLock::new(|| toml::from_str(DEFAULTS_TOML).expect("bundled defaults.toml is valid"));

pub fn defaults() -> &'static Defaults {
    &DEFAULTS
}
