use std::io::Write;

use dronecsa::mapping::DistancePair;
use dronecsa::mission::{run_mission, DetectorStats, LogEvent, MissionConfig, PassKind, SceneTruth, DOWNWASH_ADVISORY};
use dronecsa::EvidenceItem;
use serde::{Deserialize, Serialize};

use super::say;
use crate::error::CliError;
use crate::manifest::Outputs;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMissionConfig {
    pub scene: SceneTruth,
    pub mission: MissionConfig,
}

/// `distances.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MissionReport {
    pub units: String,
    pub evidence: Vec<EvidenceItem>,
    pub pairs: Vec<DistancePair<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notice: Option<String>,
    /// Mean and population SD of |estimated - true| over pairs of real items.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_discrepancy_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sd_discrepancy_m: Option<f64>,
    pub truth_matches: Vec<Option<usize>>,
    pub detector: DetectorStats,
    pub aborted: bool,
    pub advisory: String,
}

#[derive(Serialize)]
struct PassEvent<'a> {
    flight: PassKind,
    #[serde(flatten)]
    event: &'a LogEvent,
}

pub fn run(
    cfg: &RunMissionConfig,
    outputs: &mut Outputs,
    stdout: &mut dyn Write,
) -> Result<Option<CliError>, CliError> {
    let out = run_mission(&cfg.scene, &cfg.mission)?;
    let mut lines = String::new();
    for (pass, log) in [(PassKind::Mapping, &out.mapping_log), (PassKind::Evidence, &out.evidence_log)] {
        for event in log.events() {
            lines.push_str(&serde_json::to_string(&PassEvent { flight: pass, event }).expect("serializable event"));
            lines.push('\n');
        }
    }
    let report = MissionReport {
        units: out.report.units.clone(),
        evidence: out.map.evidence.clone(),
        pairs: out.report.pairs.clone(),
        notice: out.report.notice.clone(),
        mean_discrepancy_m: out.report.mean_discrepancy_m,
        sd_discrepancy_m: out.report.sd_discrepancy_m,
        truth_matches: out.truth_matches.clone(),
        detector: out.detector,
        aborted: out.aborted,
        advisory: DOWNWASH_ADVISORY.to_string(),
    };
    let table = format!("{}# advisory: {DOWNWASH_ADVISORY}\n", out.report.to_table());
    outputs.write_json("map.json", &out.map)?;
    outputs.write_json("distances.json", &report)?;
    outputs.write("distances.txt", table.as_bytes())?;
    outputs.write("mission.jsonl", lines.as_bytes())?;
    let status = if out.aborted { "aborted on battery" } else { "complete" };
    say(
        stdout,
        format!("mission {status}: {} markers, {} evidence items", out.map.markers.len(), out.map.evidence.len()),
    )?;
    stdout.write_all(table.as_bytes()).map_err(CliError::io("stdout"))?;
    Ok(None)
}
