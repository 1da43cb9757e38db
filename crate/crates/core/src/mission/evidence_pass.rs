use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::log::FlightClock;
use super::{
    run_servo, DetectorModel, DetectorStats, DroneState, EventKind, FlightParams, MissionError, MissionLog, PassKind,
    SceneTruth, ServoConfig,
};
use crate::geometry::{Point2, Point3};
use crate::mapping::{DistanceReport, SceneMap};

#[derive(Debug, Clone)]
pub struct EvidencePassOutcome {
    pub map: SceneMap<f64>,
    pub report: DistanceReport<f64>,
    pub log: MissionLog,
    /// Ground-truth item behind each recorded evidence entry; `None` when a
    /// spurious detection was gathered.
    pub truth_matches: Vec<Option<usize>>,
    pub detector: DetectorStats,
    pub aborted: bool,
}

/// Waypoints every `spacing` meters along the closed loop through the
/// markers in detection order.
fn waypoints(map: &SceneMap<f64>, spacing: f64) -> Vec<Point2<f64>> {
    let ids = &map.detection_order;
    let mut out = Vec::new();
    for (i, &a) in ids.iter().enumerate() {
        let b = ids[(i + 1) % ids.len()];
        if ids.len() == 2 && i == 1 {
            break;
        }
        let (pa, pb) = (map.markers[&a].position.ground(), map.markers[&b].position.ground());
        let seg = pb.sub(pa);
        let len = seg.norm();
        let n = (len / spacing).ceil().max(1.0) as usize;
        for k in 0..n {
            let f = k as f64 / n as f64;
            out.push(Point2::new(pa.x + seg.x * f, pa.y + seg.y * f));
        }
    }
    if ids.len() == 2 {
        out.push(map.markers[&ids[1]].position.ground());
    }
    out
}

/// Flies between mapped markers, centers over each detection, lands on it to
/// gather, records it in the map and finally reports pairwise distances.
pub fn run_evidence_pass(
    map: &SceneMap<f64>,
    scene: &SceneTruth,
    detector: &DetectorModel,
    servo: &ServoConfig,
    params: &FlightParams,
    seed: u64,
) -> Result<EvidencePassOutcome, MissionError> {
    scene.validate()?;
    params.validate()?;
    detector.validate()?;
    servo.validate()?;
    if map.markers.len() < 2 {
        return Err(MissionError::NotEnoughMarkers(map.markers.len()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut det = detector.with_seed(rng.random());
    let std_normal = Normal::new(0.0, 1.0).unwrap();
    let mut map = map.clone();
    let mut log = MissionLog::new();
    let mut clock = FlightClock::new(params.pass_budget_s, params.frame_period_s, params.landing_s);
    let mut truth_matches = Vec::new();

    // world = map + frame_shift on the floor plane
    let frame_shift = scene.drone_start.ground().sub(map.drone_position);
    let to_map = |w: Point2<f64>| w.sub(frame_shift);
    let altitude = params.cruise_altitude_m;
    let mut world = scene.drone_start.ground();
    let snapshot = |w: Point2<f64>, alt: f64| {
        let m = to_map(w);
        DroneState { position: Point3::new(m.x, alt, m.y), yaw_deg: 0.0, altitude_m: alt, battery_s: 0.0 }
    };

    clock.log(&mut log, EventKind::Takeoff { pass: PassKind::Evidence }, snapshot(world, 0.0));
    clock.advance(params.takeoff_s);

    let route = waypoints(&map, params.waypoint_spacing_m);
    let spurious_chance = detector.false_positive_rate / route.len().max(1) as f64;
    let half_frame = f64::from(params.frame_width_px) / 2.0;
    let worst_servo = f64::from(servo.max_iterations + 1) * (params.servo_iteration_s + params.frame_period_s);
    let mut aborted = false;

    'route: for wp in route {
        let target = Point2::new(wp.x + frame_shift.x, wp.y + frame_shift.y);
        let travel = target.sub(world).norm() / params.speed_m_s;
        if !clock.affords(travel) {
            aborted = true;
            break;
        }
        clock.advance(travel);
        world = target;

        let in_view: Vec<_> = scene
            .evidence
            .iter()
            .enumerate()
            .filter_map(|(i, e)| {
                let above = altitude - e.position.y;
                if above <= 0.0 {
                    return None;
                }
                let half = params.footprint_side_m(above) / 2.0;
                let d = e.position.ground().sub(world);
                (d.x.abs() <= half && d.y.abs() <= half).then(|| {
                    let mpp = params.meters_per_px(above);
                    (i, e.class, [d.x / mpp, d.y / mpp])
                })
            })
            .collect();

        let viewpoint = world;
        for d in det.observe(&in_view, spurious_chance, half_frame) {
            let height = d.truth.map_or(0.0, |i| scene.evidence[i].position.y);
            let above = altitude - height;
            let mpp = params.meters_per_px(above);
            let seen_at = to_map(Point2::new(viewpoint.x + d.offset_px[0] * mpp, viewpoint.y + d.offset_px[1] * mpp));
            let known = map
                .evidence
                .iter()
                .any(|e| e.class == d.class && e.position.ground().sub(seen_at).norm() <= params.dedupe_radius_m);
            if known {
                continue;
            }
            // offsets were measured from the viewpoint, so return there first
            let back = viewpoint.sub(world).norm() / params.speed_m_s;
            if !clock.affords(back + worst_servo + params.gather_cost_s) {
                aborted = true;
                break 'route;
            }
            clock.advance(back);
            world = viewpoint;
            let kind = EventKind::EvidenceDetected { class: d.class, confidence: d.confidence, offset_px: d.offset_px };
            clock.log(&mut log, kind, snapshot(world, altitude));

            let true_offset = match d.truth {
                Some(i) => {
                    let g = scene.evidence[i].position.ground().sub(world);
                    [g.x / mpp, g.y / mpp]
                }
                None => d.offset_px,
            };
            let outcome = run_servo(true_offset, servo, |e| d.truth.map(|_| det.measure(e)));
            let shifted = |px: [f64; 2]| Point2::new(world.x + px[0] * mpp, world.y + px[1] * mpp);
            for (k, moved) in outcome.path_px.iter().enumerate() {
                clock.advance(params.servo_iteration_s);
                let kind = EventKind::ServoIteration { iteration: k as u32 + 1, offset_px: outcome.measured_px[k] };
                clock.log(&mut log, kind, snapshot(shifted(*moved), altitude));
            }
            world = shifted(outcome.moved_px);

            if !outcome.converged {
                let reason = if outcome.lost { "target lost" } else { "servo did not converge" };
                clock.log(
                    &mut log,
                    EventKind::DetectedNotGathered { class: d.class, reason: reason.into() },
                    snapshot(world, altitude),
                );
                continue;
            }

            // descend onto the measured center, then re-ascend
            let landing =
                Point2::new(world.x + outcome.final_offset_px[0] * mpp, world.y + outcome.final_offset_px[1] * mpp);
            let s = params.localization_sigma_m;
            let believed = to_map(landing);
            let zx: f64 = std_normal.sample(&mut rng);
            let zz: f64 = std_normal.sample(&mut rng);
            let estimate = Point2::new(believed.x + zx * s, believed.y + zz * s);
            let index = map.add_evidence(d.class, estimate, altitude, above, d.confidence)?;
            truth_matches.push(d.truth);
            clock.advance(params.gather_cost_s);
            world = landing;
            clock.log(
                &mut log,
                EventKind::GatherLanding { class: d.class, evidence_index: index },
                snapshot(world, height),
            );
        }
    }

    let end = snapshot(world, altitude);
    if aborted {
        clock.log(&mut log, EventKind::Aborted { reason: "battery exhausted".into() }, end);
    } else {
        clock.log(&mut log, EventKind::PassComplete { pass: PassKind::Evidence }, end);
    }
    clock.advance(params.landing_s);
    clock.log(&mut log, EventKind::Landing, snapshot(world, 0.0));
    let report = map.pairwise_distances();
    clock.log(&mut log, EventKind::ReportEmitted { pairs: report.pairs.len() }, snapshot(world, 0.0));

    Ok(EvidencePassOutcome { map, report, log, truth_matches, detector: det.stats(), aborted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping::{init_map, MarkerObservation};

    #[test]
    fn loop_covers_every_segment() {
        let obs = |id, bearing: f64| MarkerObservation {
            marker_id: id,
            bearing_deg: bearing,
            range_m: 1.0,
            drone_yaw_deg: 0.0,
            drone_altitude_m: 1.5,
        };
        let mut map = init_map(&obs(1, 0.0)).unwrap();
        map.localize_marker(&obs(2, 90.0)).unwrap();
        let two = waypoints(&map, 0.25);
        // one segment of length √2: 6 steps plus the far end
        assert_eq!(two.len(), 7);
        map.localize_marker(&obs(3, 180.0)).unwrap();
        assert_eq!(waypoints(&map, 0.25).len(), 6 + 8 + 6);
    }
}
