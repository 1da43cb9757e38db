//! Flight simulation: the two-pass mapping and evidence mission with a
//! visual-servo centering loop, and window-entry physics with Monte-Carlo
//! approach trials.

mod detector;
mod entry;
mod evidence_pass;
mod log;
mod mapping_pass;
mod run;
mod scene;
mod servo;

pub use detector::{Detection, Detector, DetectorModel, DetectorStats};
pub use entry::{
    calibrate_aim_noise, entry_feasibility, knockaway_probability, simulate_entry_trials, EntryError, EntryModel,
    EntryTrials, Feasibility,
};
pub use evidence_pass::{run_evidence_pass, EvidencePassOutcome};
pub use log::{DroneState, EventKind, LogEvent, MissionLog, PassKind};
pub use mapping_pass::run_mapping_pass;
pub use run::{run_mission, truth_report, MissionConfig, MissionOutcome, DOWNWASH_ADVISORY};
pub use scene::{SceneTruth, TruthEvidence, TruthMarker};
pub use servo::{run_servo, servo_iteration_bound, ServoConfig, ServoOutcome};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::defaults::defaults;
use crate::mapping::MappingError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MissionError {
    #[error("mapping failed: no marker visible after a full rotation")]
    MappingFailed,
    #[error("evidence pass needs at least two mapped markers, found {0}")]
    NotEnoughMarkers(usize),
    #[error("invalid scene: {0}")]
    InvalidScene(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Mapping(#[from] MappingError),
}

/// Timing, optics and flight-envelope parameters shared by both passes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FlightParams {
    pub camera_fov_deg: f64,
    pub frame_width_px: u32,
    pub rotation_step_deg: f64,
    pub waypoint_spacing_m: f64,
    pub cruise_altitude_m: f64,
    pub speed_m_s: f64,
    pub yaw_rate_deg_s: f64,
    pub takeoff_s: f64,
    pub landing_s: f64,
    pub frame_period_s: f64,
    pub servo_iteration_s: f64,
    pub gather_cost_s: f64,
    /// Battery available per pass, seconds.
    pub pass_budget_s: f64,
    pub dedupe_radius_m: f64,
    pub localization_sigma_m: f64,
}

impl Default for FlightParams {
    fn default() -> Self {
        let d = &defaults().mission;
        Self {
            camera_fov_deg: d.camera_fov_deg,
            frame_width_px: d.frame_width_px,
            rotation_step_deg: d.rotation_step_deg,
            waypoint_spacing_m: d.waypoint_spacing_m,
            cruise_altitude_m: d.cruise_altitude_m,
            speed_m_s: d.speed_m_s,
            yaw_rate_deg_s: d.yaw_rate_deg_s,
            takeoff_s: d.takeoff_s,
            landing_s: d.landing_s,
            frame_period_s: d.frame_period_s,
            servo_iteration_s: d.servo_iteration_s,
            gather_cost_s: d.gather_cost_s,
            pass_budget_s: d.pass_budget_s,
            dedupe_radius_m: d.dedupe_radius_m,
            localization_sigma_m: d.localization_sigma_m,
        }
    }
}

impl FlightParams {
    pub fn validate(&self) -> Result<(), MissionError> {
        let positive = [
            ("camera_fov_deg", self.camera_fov_deg),
            ("rotation_step_deg", self.rotation_step_deg),
            ("waypoint_spacing_m", self.waypoint_spacing_m),
            ("cruise_altitude_m", self.cruise_altitude_m),
            ("speed_m_s", self.speed_m_s),
            ("yaw_rate_deg_s", self.yaw_rate_deg_s),
            ("frame_period_s", self.frame_period_s),
            ("pass_budget_s", self.pass_budget_s),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(MissionError::InvalidConfig(format!("{name} must be positive")));
            }
        }
        if self.camera_fov_deg >= 180.0 || self.frame_width_px == 0 {
            return Err(MissionError::InvalidConfig("camera field of view must be in (0, 180)".into()));
        }
        let non_negative = [
            self.takeoff_s,
            self.landing_s,
            self.servo_iteration_s,
            self.gather_cost_s,
            self.dedupe_radius_m,
            self.localization_sigma_m,
        ];
        if non_negative.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(MissionError::InvalidConfig("durations and sigmas must be non-negative".into()));
        }
        Ok(())
    }

    /// Ground footprint side of the downward camera at `height_above` meters.
    pub fn footprint_side_m(&self, height_above: f64) -> f64 {
        2.0 * height_above * (self.camera_fov_deg.to_radians() / 2.0).tan()
    }

    pub fn meters_per_px(&self, height_above: f64) -> f64 {
        self.footprint_side_m(height_above) / f64::from(self.frame_width_px)
    }
}
