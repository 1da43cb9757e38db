//! Config documents. Every field is optional; anything left out falls back
//! to the frozen defaults.

use std::path::{Path, PathBuf};

use dronecsa::mapping::ObservationNoise;
use dronecsa::mission::{DetectorModel, FlightParams, MissionConfig, SceneTruth, ServoConfig};
use dronecsa::smear::HueRange;
use dronecsa::EntryModel;
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::args::{ContinuityArg, StampArg};
use crate::error::CliError;

/// Reads JSON, or TOML when the extension is `.toml`.
pub fn load_document<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
    let is_toml = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("toml"));
    let parsed = if is_toml {
        toml::from_str(&text).map_err(|e| e.to_string())
    } else {
        serde_json::from_str(&text).map_err(|e| e.to_string())
    };
    parsed.map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SmearSettings {
    pub stamp: Option<StampArg>,
    pub continuity: Option<ContinuityArg>,
    pub interval: Option<f64>,
    pub direction_deg: Option<f64>,
    pub depletion: Option<f64>,
    pub length: Option<f64>,
    pub stamp_size: Option<f64>,
    pub start: Option<[f64; 2]>,
    pub width: Option<usize>,
    pub height: Option<usize>,
    pub seed: Option<u64>,
    pub dataset: Option<bool>,
    pub name: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyzerSettings {
    pub hue_ranges: Option<Vec<HueRange>>,
    pub min_saturation: Option<f64>,
    pub min_value: Option<f64>,
    pub min_area_fraction: Option<f64>,
    pub ambiguity_fraction: Option<f64>,
    pub line_tolerance_deg: Option<f64>,
}

/// Mission document shared by `run-mission` and `entry-sim`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    /// Scene file, relative to the document.
    pub scene: Option<PathBuf>,
    pub seed: Option<u64>,
    pub noise: Option<ObservationNoise>,
    pub detector: Option<DetectorModel>,
    pub servo: Option<ServoConfig>,
    pub flight: Option<FlightParams>,
    pub entry: Option<EntryModel>,
    /// Monte-Carlo trials for `entry-sim`.
    pub trials: Option<u64>,
    #[serde(skip)]
    base_dir: PathBuf,
}

impl ConfigDocument {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let mut doc: Self = load_document(path)?;
        doc.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(doc)
    }

    pub fn load_scene(&self) -> Result<SceneTruth, CliError> {
        match &self.scene {
            Some(p) => load_document(&self.base_dir.join(p)),
            None => Ok(SceneTruth::demo()),
        }
    }

    pub fn mission_config(&self) -> MissionConfig {
        let d = MissionConfig::default();
        MissionConfig {
            seed: self.seed.unwrap_or(d.seed),
            noise: self.noise.unwrap_or(d.noise),
            detector: self.detector.unwrap_or(d.detector),
            servo: self.servo.unwrap_or(d.servo),
            flight: self.flight.clone().unwrap_or(d.flight),
            entry: self.entry.unwrap_or(d.entry),
        }
    }
}
