use serde::{Deserialize, Serialize};

use super::{
    estimate_direction, extract_contours, fit_line, segment_red, DirectionEstimate, FittedLine, HueRangeSet, SmearError,
};
use crate::defaults::defaults;
use crate::raster::Raster;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzerConfig {
    pub hue: HueRangeSet,
    pub min_area_fraction: f64,
    pub ambiguity_fraction: f64,
    pub line_tolerance_deg: f64,
}

impl Default for AnalyzerConfig {
    fn default() -> Self {
        let d = &defaults().smear;
        Self {
            hue: HueRangeSet::default(),
            min_area_fraction: d.min_area_fraction,
            ambiguity_fraction: d.ambiguity_fraction,
            line_tolerance_deg: d.line_tolerance_deg,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmearAnalysis {
    pub red_pixels: usize,
    pub contours: usize,
    pub line: FittedLine<f64>,
    pub estimate: DirectionEstimate<f64>,
}

/// Full raster-to-estimate pipeline in `f64`.
#[derive(Debug, Clone, Default)]
pub struct SmearAnalyzer {
    pub config: AnalyzerConfig,
}

impl SmearAnalyzer {
    pub fn new(config: AnalyzerConfig) -> Self {
        Self { config }
    }

    pub fn analyze(&self, raster: &Raster) -> Result<SmearAnalysis, SmearError> {
        let mask = segment_red(raster, &self.config.hue);
        let contours = extract_contours::<f64>(&mask, self.config.min_area_fraction);
        let line = fit_line(&contours)?;
        let estimate = estimate_direction(&line, &mask, self.config.ambiguity_fraction)?;
        Ok(SmearAnalysis { red_pixels: mask.count(), contours: contours.len(), line, estimate })
    }
}
