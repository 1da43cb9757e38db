use std::io::Write;

use dronecsa::mission::{calibrate_aim_noise, entry_feasibility, simulate_entry_trials, EntryTrials};
use dronecsa::{EntryModel, Feasibility};
use serde::{Deserialize, Serialize};

use super::say;
use crate::error::CliError;
use crate::manifest::Outputs;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntrySimConfig {
    pub model: EntryModel,
    pub trials: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub calibrate_target: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryReport {
    pub model: EntryModel,
    pub feasibility: Feasibility,
    pub monte_carlo: EntryTrials,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub calibrated_aim_noise_sigma_m: Option<f64>,
}

pub fn run(cfg: &EntrySimConfig, outputs: &mut Outputs, stdout: &mut dyn Write) -> Result<Option<CliError>, CliError> {
    let m = &cfg.model;
    let feasibility = entry_feasibility(m);
    let trials = simulate_entry_trials(m, cfg.trials, cfg.seed).map_err(CliError::data)?;
    let calibrated = match cfg.calibrate_target {
        Some(t) => Some(calibrate_aim_noise(m, t, cfg.trials, cfg.seed).map_err(CliError::data)?),
        None => None,
    };
    say(stdout, format!("thrust: {:.3} N", feasibility.thrust_n))?;
    say(
        stdout,
        format!(
            "required torque: {:.4} N·m ({:.3} N at {:.3} m)",
            feasibility.required_torque_nm, m.required_force_n, m.window_width_m
        ),
    )?;
    say(stdout, format!("feasible: {}", if feasibility.feasible { "yes" } else { "no" }))?;
    say(stdout, format!("trials: {} (seed {}, aim noise {:.4} m)", trials.trials, cfg.seed, m.aim_noise_sigma_m))?;
    say(stdout, format!("success rate: {:.4}", trials.success_rate))?;
    say(stdout, format!("  insufficient torque: {}", trials.insufficient_torque))?;
    say(stdout, format!("  knocked away: {}", trials.knocked_away))?;
    if let (Some(t), Some(s)) = (cfg.calibrate_target, calibrated) {
        say(stdout, format!("calibrated aim noise for {t:.3}: {s:.5} m"))?;
    }
    let report = EntryReport { model: *m, feasibility, monte_carlo: trials, calibrated_aim_noise_sigma_m: calibrated };
    outputs.write_json("entry.json", &report)?;
    Ok(None)
}
