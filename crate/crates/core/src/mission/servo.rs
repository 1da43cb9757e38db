use serde::{Deserialize, Serialize};

use super::MissionError;
use crate::defaults::defaults;

/// Proportional image-space centering loop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ServoConfig {
    /// Fraction of the measured offset corrected per iteration, in `(0, 1]`.
    pub gain: f64,
    pub convergence_px: f64,
    pub max_iterations: u32,
}

impl Default for ServoConfig {
    fn default() -> Self {
        let d = &defaults().servo;
        Self { gain: d.gain, convergence_px: d.convergence_px, max_iterations: d.max_iterations }
    }
}

impl ServoConfig {
    pub fn validate(&self) -> Result<(), MissionError> {
        if !(self.gain > 0.0 && self.gain <= 1.0) {
            return Err(MissionError::InvalidConfig("servo gain must lie in (0, 1]".into()));
        }
        if !(self.convergence_px.is_finite() && self.convergence_px > 0.0) {
            return Err(MissionError::InvalidConfig("convergence threshold must be positive".into()));
        }
        if self.max_iterations == 0 {
            return Err(MissionError::InvalidConfig("max_iterations must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ServoOutcome {
    pub converged: bool,
    /// Set when the target disappeared from view.
    pub lost: bool,
    /// Corrective moves made.
    pub iterations: u32,
    /// Norm of every measured offset, starting with the first re-measure.
    pub measured_px: Vec<f64>,
    /// Cumulative commanded displacement after each move, pixels.
    pub path_px: Vec<[f64; 2]>,
    /// Total commanded displacement, pixels.
    pub moved_px: [f64; 2],
    /// Last measured offset.
    pub final_offset_px: [f64; 2],
}

/// Runs the loop from a true offset. `sense` maps the current true offset
/// to a measurement, or `None` when the target is gone.
pub fn run_servo(
    initial_offset_px: [f64; 2],
    config: &ServoConfig,
    mut sense: impl FnMut([f64; 2]) -> Option<[f64; 2]>,
) -> ServoOutcome {
    let mut offset = initial_offset_px;
    let mut out = ServoOutcome {
        converged: false,
        lost: false,
        iterations: 0,
        measured_px: Vec::new(),
        path_px: Vec::new(),
        moved_px: [0.0, 0.0],
        final_offset_px: initial_offset_px,
    };
    loop {
        let Some(m) = sense(offset) else {
            out.lost = true;
            return out;
        };
        let norm = m[0].hypot(m[1]);
        out.measured_px.push(norm);
        out.final_offset_px = m;
        if norm < config.convergence_px {
            out.converged = true;
            return out;
        }
        if out.iterations >= config.max_iterations {
            return out;
        }
        let step = [config.gain * m[0], config.gain * m[1]];
        offset = [offset[0] - step[0], offset[1] - step[1]];
        out.moved_px = [out.moved_px[0] + step[0], out.moved_px[1] + step[1]];
        out.path_px.push(out.moved_px);
        out.iterations += 1;
    }
}

/// Iterations a noiseless loop needs: ⌈ln(c / e0) / ln(1 - gain)⌉, with a
/// unit-gain loop finishing in one move.
pub fn servo_iteration_bound(initial_px: f64, convergence_px: f64, gain: f64) -> u32 {
    if initial_px < convergence_px {
        return 0;
    }
    if gain >= 1.0 {
        return 1;
    }
    ((convergence_px / initial_px).ln() / (1.0 - gain).ln()).ceil().max(1.0) as u32
}
