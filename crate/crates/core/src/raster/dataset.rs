//! Synthetic twenty-sample transfer-stain set: five hand-staccato, five
//! shoe-staccato, five hand-legato and five zero-depletion blobs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Continuity, StampShape, StrokeSpec};
use crate::defaults::defaults;

pub const FRAME_WIDTH: usize = 320;
pub const FRAME_HEIGHT: usize = 240;

/// Stroke travel in pixels (about 70 cm at the default scale).
const STROKE_LENGTH: f64 = 140.0;
const HAND_LENGTH_CM: f64 = 19.5;
/// EU size 43 outsole.
const SHOE_LENGTH_CM: f64 = 28.0;
/// Soaked tissue, roughly palm sized.
const BLOB_SIZE_CM: f64 = 12.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleKind {
    HandStaccato,
    ShoeStaccato,
    HandLegato,
    Blob,
}

impl SampleKind {
    pub const ALL: [SampleKind; 4] =
        [SampleKind::HandStaccato, SampleKind::ShoeStaccato, SampleKind::HandLegato, SampleKind::Blob];

    pub fn is_directional(self) -> bool {
        self != SampleKind::Blob
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetSample {
    pub name: String,
    pub kind: SampleKind,
    pub spec: StrokeSpec,
}

/// A centered stroke of the given kind moving along `direction_deg`.
pub fn sample_spec(kind: SampleKind, direction_deg: f64, depletion: f64, seed: u64) -> StrokeSpec {
    let px_per_cm = defaults().raster.px_per_cm;
    let (stamp, size_cm, continuity) = match kind {
        SampleKind::HandStaccato => {
            (StampShape::Hand, HAND_LENGTH_CM, Continuity::Staccato { interval: 0.9 * HAND_LENGTH_CM * px_per_cm })
        }
        SampleKind::ShoeStaccato => {
            (StampShape::Shoe, SHOE_LENGTH_CM, Continuity::Staccato { interval: 0.82 * SHOE_LENGTH_CM * px_per_cm })
        }
        SampleKind::HandLegato => (StampShape::Hand, HAND_LENGTH_CM, Continuity::Legato),
        SampleKind::Blob => (StampShape::Blob, BLOB_SIZE_CM, Continuity::Legato),
    };
    let stamp_size = size_cm * px_per_cm;
    let length = match kind {
        // longest shoe stroke that still fits vertically in a 240 px frame
        SampleKind::ShoeStaccato => STROKE_LENGTH - 10.0,
        _ => STROKE_LENGTH,
    };
    let r = direction_deg.to_radians();
    let (cx, cy) = (FRAME_WIDTH as f64 / 2.0, FRAME_HEIGHT as f64 / 2.0);
    StrokeSpec {
        start: [cx - r.cos() * length / 2.0, cy + r.sin() * length / 2.0],
        direction_deg,
        length,
        stamp,
        stamp_size,
        continuity,
        depletion,
        seed,
    }
}

/// Twenty samples; directions cycle through the four cardinal views with a
/// seeded jitter of up to ±8°.
pub fn standard_dataset(seed: u64) -> Vec<DatasetSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(20);
    for kind in SampleKind::ALL {
        for i in 0..5 {
            let direction = (i as f64 * 90.0 + rng.random_range(-8.0..8.0)).rem_euclid(360.0);
            let depletion = if kind.is_directional() { rng.random_range(0.3..0.5) } else { 0.0 };
            let stroke_seed = rng.random::<u64>();
            out.push(DatasetSample {
                name: format!("{}-{:02}", serde_json::to_value(kind).unwrap().as_str().unwrap(), i),
                kind,
                spec: sample_spec(kind, direction, depletion, stroke_seed),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raster::{generate_smear, Raster};

    #[test]
    fn composition_and_fit() {
        let set = standard_dataset(7);
        assert_eq!(set.len(), 20);
        for kind in SampleKind::ALL {
            assert_eq!(set.iter().filter(|s| s.kind == kind).count(), 5);
        }
        let canvas = Raster::white(FRAME_WIDTH, FRAME_HEIGHT).unwrap();
        for seed in 0..5 {
            for s in standard_dataset(seed) {
                generate_smear(&canvas, &s.spec).unwrap_or_else(|e| panic!("{}: {e}", s.name));
            }
        }
        assert!(set.iter().filter(|s| s.kind == SampleKind::Blob).all(|s| s.spec.depletion == 0.0));
    }
}
