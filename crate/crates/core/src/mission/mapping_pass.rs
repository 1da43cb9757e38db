use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::log::FlightClock;
use super::{DroneState, EventKind, FlightParams, MissionError, MissionLog, PassKind, SceneTruth};
use crate::geometry::Point3;
use crate::mapping::{init_map, MarkerObservation, ObservationNoise, SceneMap};
use crate::scalar::wrap_degrees;

/// Signed angle difference in `(-180, 180]`.
fn signed_delta_deg(a: f64, b: f64) -> f64 {
    let d = wrap_degrees(a - b);
    if d > 180.0 {
        d - 360.0
    } else {
        d
    }
}

/// Takes off, turns a full circle in place and maps every marker that
/// enters the side camera's field of view.
pub fn run_mapping_pass(
    scene: &SceneTruth,
    noise: &ObservationNoise,
    params: &FlightParams,
    seed: u64,
) -> Result<(SceneMap<f64>, MissionLog), MissionError> {
    scene.validate()?;
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut log = MissionLog::new();
    let mut clock = FlightClock::new(params.pass_budget_s, params.frame_period_s, params.landing_s);
    let start = scene.drone_start;
    let altitude = params.cruise_altitude_m;
    let mut state =
        DroneState { position: Point3::new(start.x, 0.0, start.z), yaw_deg: 0.0, altitude_m: 0.0, battery_s: 0.0 };
    let mut map: Option<SceneMap<f64>> = None;

    // the map frame is unknown until the first marker; log world coordinates
    // until then and map coordinates afterwards
    let to_map = |map: &Option<SceneMap<f64>>, s: DroneState| -> DroneState {
        match map {
            Some(m) => DroneState { position: Point3::new(m.drone_position.x, s.altitude_m, m.drone_position.y), ..s },
            None => s,
        }
    };

    clock.log(&mut log, EventKind::Takeoff { pass: PassKind::Mapping }, state);
    clock.advance(params.takeoff_s);
    state.altitude_m = altitude;
    state.position.y = altitude;

    let steps = (360.0 / params.rotation_step_deg).round().max(1.0) as usize;
    let step_time = params.rotation_step_deg / params.yaw_rate_deg_s;
    let mut markers: Vec<_> = scene.markers.clone();
    markers.sort_by_key(|m| m.id);
    let mut aborted = false;

    'rotation: for k in 0..steps {
        if k > 0 {
            if !clock.affords(step_time) {
                aborted = true;
                break;
            }
            clock.advance(step_time);
        }
        let yaw = wrap_degrees(k as f64 * 360.0 / steps as f64);
        state.yaw_deg = yaw;
        for m in &markers {
            let (dx, dz) = (m.position.x - start.x, m.position.z - start.z);
            let range = dx.hypot(dz);
            if range <= 0.0 {
                continue;
            }
            let bearing = signed_delta_deg(dz.atan2(dx).to_degrees(), yaw);
            if bearing.abs() > params.camera_fov_deg / 2.0 {
                continue;
            }
            let truth = MarkerObservation {
                marker_id: m.id,
                bearing_deg: wrap_degrees(bearing),
                range_m: range,
                drone_yaw_deg: yaw,
                drone_altitude_m: altitude,
            };
            let obs = noise.perturb(&truth, &mut rng);
            match map.as_mut() {
                Some(existing) => existing.localize_marker(&obs)?,
                None => map = Some(init_map(&obs)?),
            }
            if !clock.affords(0.0) {
                aborted = true;
                break 'rotation;
            }
            let kind =
                EventKind::MarkerDetected { marker_id: m.id, bearing_deg: obs.bearing_deg, range_m: obs.range_m };
            clock.log(&mut log, kind, to_map(&map, state));
        }
    }

    if aborted {
        clock.log(&mut log, EventKind::Aborted { reason: "battery exhausted".into() }, to_map(&map, state));
    } else {
        clock.log(&mut log, EventKind::PassComplete { pass: PassKind::Mapping }, to_map(&map, state));
    }
    clock.advance(params.landing_s);
    state.altitude_m = 0.0;
    state.position.y = 0.0;
    clock.log(&mut log, EventKind::Landing, to_map(&map, state));

    map.map(|m| (m, log)).ok_or(MissionError::MappingFailed)
}
