use serde::{Deserialize, Serialize};

use super::{
    run_evidence_pass, run_mapping_pass, DetectorModel, DetectorStats, EntryModel, FlightParams, MissionError,
    MissionLog, SceneTruth, ServoConfig,
};
use crate::mapping::{discrepancy_stats, DistancePair, DistanceReport, ObservationNoise, SceneMap};

pub const DOWNWASH_ADVISORY: &str = "rotor downwash and landings may disturb trace evidence (fibers, hairs, \
particles); fly only after its absence is verified or the risk is accepted";

/// Everything that determines a mission run besides the scene.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MissionConfig {
    pub seed: u64,
    pub noise: ObservationNoise,
    pub detector: DetectorModel,
    pub servo: ServoConfig,
    pub flight: FlightParams,
    pub entry: EntryModel<f64>,
}

impl MissionConfig {
    /// Noise-free sensing and a perfect detector.
    pub fn noiseless(seed: u64) -> Self {
        Self {
            seed,
            noise: ObservationNoise::NONE,
            detector: DetectorModel::PERFECT,
            flight: FlightParams { localization_sigma_m: 0.0, ..FlightParams::default() },
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct MissionOutcome {
    pub map: SceneMap<f64>,
    /// Pairwise distances, with discrepancy against ground truth filled in
    /// when at least one pair of real items was gathered.
    pub report: DistanceReport<f64>,
    pub mapping_log: MissionLog,
    pub evidence_log: MissionLog,
    pub truth_matches: Vec<Option<usize>>,
    pub detector: DetectorStats,
    pub aborted: bool,
}

/// Ground-truth distances over exactly the pairs of `estimated` whose items
/// both came from real scene items.
pub fn truth_report(
    estimated: &DistanceReport<f64>,
    matches: &[Option<usize>],
    scene: &SceneTruth,
) -> (DistanceReport<f64>, DistanceReport<f64>) {
    let est = estimated.remap(|i| matches.get(i).copied().flatten().map(|_| i));
    let truth = scene.truth_positions();
    let pairs = est
        .pairs
        .iter()
        .map(|p| {
            let (a, b) = (matches[p.item_a].unwrap(), matches[p.item_b].unwrap());
            DistancePair { item_a: p.item_a, item_b: p.item_b, distance_m: truth[a].distance(truth[b]) }
        })
        .collect();
    let t = DistanceReport { units: "m".into(), pairs, notice: None, mean_discrepancy_m: None, sd_discrepancy_m: None };
    (est, t)
}

/// Mapping pass with `seed`, evidence pass with `seed + 1`.
pub fn run_mission(scene: &SceneTruth, config: &MissionConfig) -> Result<MissionOutcome, MissionError> {
    let (map, mapping_log) = run_mapping_pass(scene, &config.noise, &config.flight, config.seed)?;
    let ev =
        run_evidence_pass(&map, scene, &config.detector, &config.servo, &config.flight, config.seed.wrapping_add(1))?;
    let mut report = ev.report.clone();
    let (est, truth) = truth_report(&ev.report, &ev.truth_matches, scene);
    if !est.pairs.is_empty() {
        let (mean, sd) = discrepancy_stats(&est, &truth)?;
        report.mean_discrepancy_m = Some(mean);
        report.sd_discrepancy_m = Some(sd);
    }
    Ok(MissionOutcome {
        map: ev.map,
        report,
        mapping_log,
        evidence_log: ev.log,
        truth_matches: ev.truth_matches,
        detector: ev.detector,
        aborted: ev.aborted,
    })
}
