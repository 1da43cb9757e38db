use dronecsa::mapping::{init_map, pairwise_distances_of, EvidenceClass, MarkerObservation, ObservationNoise};
use dronecsa::mission::{run_mission, MissionConfig, SceneTruth, TruthEvidence, TruthMarker};
use dronecsa::Point3;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rotation about the vertical axis followed by a floor translation.
fn rigid(p: Point3, angle: f64, tx: f64, tz: f64) -> Point3 {
    let (s, c) = angle.sin_cos();
    Point3::new(c * p.x - s * p.z + tx, p.y, s * p.x + c * p.z + tz)
}

fn transformed(scene: &SceneTruth, angle: f64, tx: f64, tz: f64) -> SceneTruth {
    SceneTruth {
        units: scene.units.clone(),
        drone_start: rigid(scene.drone_start, angle, tx, tz),
        markers: scene
            .markers
            .iter()
            .map(|m| TruthMarker { position: rigid(m.position, angle, tx, tz), ..*m })
            .collect(),
        evidence: scene
            .evidence
            .iter()
            .map(|e| TruthEvidence { position: rigid(e.position, angle, tx, tz), ..*e })
            .collect(),
    }
}

#[test]
fn rigid_motion_preserves_every_distance() {
    let demo = SceneTruth::demo();
    let base = pairwise_distances_of(&demo.truth_positions());
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..100 {
        let (a, tx, tz) =
            (rng.random_range(0.0..std::f64::consts::TAU), rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        let moved = transformed(&demo, a, tx, tz);
        let truth = pairwise_distances_of(&moved.truth_positions());
        let mission = run_mission(&moved, &MissionConfig::noiseless(3)).unwrap();
        assert_eq!(mission.map.evidence.len(), 3);
        for p in &base.pairs {
            assert!((truth.get(p.item_a, p.item_b).unwrap() - p.distance_m).abs() < 1e-9);
        }
        assert!(mission.report.mean_discrepancy_m.unwrap() <= 1e-9);
    }
}

/// Square room of side `side` with a marker on each wall at eye level and
/// random floor items.
fn random_scene(rng: &mut ChaCha8Rng) -> SceneTruth {
    let side = rng.random_range(1.5..3.0);
    let h = side / 2.0;
    let eye = 1.5;
    let markers = [(side, h), (h, side), (0.0, h), (h, 0.0)]
        .iter()
        .enumerate()
        .map(|(i, &(x, z))| TruthMarker { id: i as u32 + 1, position: Point3::new(x, eye, z) })
        .collect();
    let n = rng.random_range(2..6);
    let evidence = (0..n)
        .map(|i| TruthEvidence {
            class: EvidenceClass::ALL[i % 3],
            position: Point3::new(rng.random_range(0.2..side - 0.2), 0.0, rng.random_range(0.2..side - 0.2)),
        })
        .collect();
    SceneTruth { units: "m".into(), drone_start: Point3::new(h, 0.0, h), markers, evidence }
}

#[test]
fn noiseless_discrepancy_vanishes_on_generated_scenes() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut scored = 0;
    for seed in 0..40 {
        let scene = random_scene(&mut rng);
        let out = run_mission(&scene, &MissionConfig::noiseless(seed)).unwrap();
        for (item, truth) in out.map.evidence.iter().zip(&out.truth_matches) {
            let t = truth.expect("perfect detector reports only real items");
            assert_eq!(item.class, scene.evidence[t].class);
        }
        if let Some(m) = out.report.mean_discrepancy_m {
            assert!(m <= 1e-9, "seed {seed}: {m}");
            scored += 1;
        }
    }
    assert!(scored >= 30);
}

fn observation(id: u32, truth_offset: (f64, f64), yaw: f64) -> MarkerObservation<f64> {
    let heading = truth_offset.1.atan2(truth_offset.0).to_degrees();
    MarkerObservation {
        marker_id: id,
        bearing_deg: (heading - yaw).rem_euclid(360.0),
        range_m: truth_offset.0.hypot(truth_offset.1),
        drone_yaw_deg: yaw,
        drone_altitude_m: 1.5,
    }
}

#[test]
fn repeated_observations_reduce_marker_error() {
    let noise = ObservationNoise { bearing_sigma_deg: 2.0, range_sigma_frac: 0.05 };
    // drone at the origin of the world, anchor marker to the east, target to the north-east
    let anchor = (1.0, 0.0);
    let target = (1.0, 1.2);
    let truth_in_map = (target.0 - anchor.0, target.1 - anchor.1);
    let (mut after_one, mut after_ten) = (0.0, 0.0);
    for seed in 0..50 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut map = init_map(&observation(1, anchor, 0.0)).unwrap();
        for k in 0..10 {
            map.localize_marker(&noise.perturb(&observation(2, target, 30.0), &mut rng)).unwrap();
            let p = map.marker(2).unwrap().position;
            let err = (p.x - truth_in_map.0).hypot(p.z - truth_in_map.1);
            if k == 0 {
                after_one += err;
            }
            if k == 9 {
                after_ten += err;
            }
        }
    }
    assert!(after_ten < after_one, "{after_ten} vs {after_one}");
}

proptest! {
    #[test]
    fn report_is_a_metric(pts in prop::collection::vec((-5.0f64..5.0, 0.0f64..2.0, -5.0f64..5.0), 0..8)) {
        let pts: Vec<_> = pts.into_iter().map(|(x, y, z)| Point3::new(x, y, z)).collect();
        let r = pairwise_distances_of(&pts);
        prop_assert_eq!(r.pairs.len(), pts.len() * pts.len().saturating_sub(1) / 2);
        prop_assert_eq!(r.notice.is_some(), pts.len() < 2);
        for i in 0..pts.len() {
            for j in 0..pts.len() {
                if i == j {
                    continue;
                }
                prop_assert_eq!(r.get(i, j), r.get(j, i));
                for k in 0..pts.len() {
                    if k != i && k != j {
                        prop_assert!(r.get(i, j).unwrap() <= r.get(i, k).unwrap() + r.get(k, j).unwrap() + 1e-12);
                    }
                }
            }
        }
    }
}
