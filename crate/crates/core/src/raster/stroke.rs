//! Synthetic transfer-stain generator.
//!
//! A stroke is a straight run of stamps. Each canvas pixel is decided once,
//! by the first stamp whose footprint covers it: it turns red with the
//! stamp's coverage probability. Coverage decays as `(1 - depletion)^k`
//! where `k` is the distance travelled measured in stamp lengths, so the
//! start of a depleting stroke carries more dye than its end.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Raster, RasterError};
use crate::defaults::defaults;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StampShape {
    Hand,
    Shoe,
    Blob,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Continuity {
    /// Constant contact; a stamp every pixel of travel.
    Legato,
    /// Periodic contact every `interval` pixels.
    Staccato { interval: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrokeSpec {
    /// Stroke start in image coordinates (pixels, y down).
    pub start: [f64; 2],
    /// Motion direction, degrees counter-clockwise from +x with y up.
    pub direction_deg: f64,
    /// Travel length in pixels.
    pub length: f64,
    pub stamp: StampShape,
    /// Footprint length along the stroke, in pixels.
    pub stamp_size: f64,
    pub continuity: Continuity,
    /// Fraction of coverage lost per stamp length of travel.
    pub depletion: f64,
    pub seed: u64,
}

impl StrokeSpec {
    pub fn validate(&self) -> Result<(), RasterError> {
        let bad = |m: &str| Err(RasterError::InvalidStroke(m.to_string()));
        if !(self.length.is_finite() && self.length > 0.0) {
            return bad("length must be positive");
        }
        if !(self.stamp_size.is_finite() && self.stamp_size >= 2.0) {
            return bad("stamp size must be at least 2 px");
        }
        if !(0.0..=1.0).contains(&self.depletion) {
            return bad("depletion must lie in [0, 1]");
        }
        if !self.direction_deg.is_finite() || !self.start.iter().all(|v| v.is_finite()) {
            return bad("start and direction must be finite");
        }
        if let Continuity::Staccato { interval } = self.continuity {
            if !(interval.is_finite() && interval >= 1.0) {
                return bad("staccato interval must be at least 1 px");
            }
        }
        Ok(())
    }

    /// Unit motion vector in image coordinates (y down).
    pub fn image_direction(&self) -> [f64; 2] {
        let r = self.direction_deg.to_radians();
        [r.cos(), -r.sin()]
    }

    /// Distances along the stroke at which stamps are placed.
    pub fn stamp_offsets(&self) -> Vec<f64> {
        let step = match self.continuity {
            Continuity::Legato => 1.0,
            Continuity::Staccato { interval } => interval,
        };
        let n = (self.length / step).floor() as usize;
        (0..=n).map(|k| k as f64 * step).collect()
    }

    pub fn end(&self) -> [f64; 2] {
        let d = self.image_direction();
        [self.start[0] + d[0] * self.length, self.start[1] + d[1] * self.length]
    }
}

/// Integer pixel offsets covered by one stamp, oriented along the stroke.
fn footprint(spec: &StrokeSpec, rng: &mut ChaCha8Rng) -> Vec<(i64, i64)> {
    let [ux, uy] = spec.image_direction();
    let size = spec.stamp_size;
    let (a2, p2, a3, p3) = (
        rng.random_range(0.0..0.15),
        rng.random_range(0.0..std::f64::consts::TAU),
        rng.random_range(0.0..0.1),
        rng.random_range(0.0..std::f64::consts::TAU),
    );
    let inside = |along: f64, across: f64| -> bool {
        let ell = |c: f64, a: f64, b: f64| ((along - c) / a).powi(2) + (across / b).powi(2) <= 1.0;
        match spec.stamp {
            StampShape::Hand => ell(0.0, 0.5 * size, 0.27 * size),
            // forefoot ahead of a narrower heel
            StampShape::Shoe => ell(0.18 * size, 0.32 * size, 0.19 * size) || ell(-0.3 * size, 0.2 * size, 0.15 * size),
            StampShape::Blob => {
                let phi = across.atan2(along);
                let r = 0.5 * size * (1.0 + a2 * (2.0 * phi + p2).cos() + a3 * (3.0 * phi + p3).cos());
                along.hypot(across) <= r
            }
        }
    };
    let reach = (0.75 * size).ceil() as i64;
    let mut out = Vec::new();
    for dy in -reach..=reach {
        for dx in -reach..=reach {
            let (fx, fy) = (dx as f64, dy as f64);
            let along = fx * ux + fy * uy;
            let across = -fx * uy + fy * ux;
            if inside(along, across) {
                out.push((dx, dy));
            }
        }
    }
    if out.is_empty() {
        out.push((0, 0));
    }
    out
}

/// Renders `spec` onto a copy of the white `canvas`.
pub fn generate_smear(canvas: &Raster, spec: &StrokeSpec) -> Result<Raster, RasterError> {
    spec.validate()?;
    if !canvas.pixels().all(|p| p == [255, 255, 255]) {
        return Err(RasterError::CanvasNotWhite);
    }
    let cfg = &defaults().raster;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let shape = footprint(spec, &mut rng);
    let [ux, uy] = spec.image_direction();
    let (w, h) = (canvas.width() as i64, canvas.height() as i64);

    let lateral = match (spec.stamp, spec.continuity) {
        (StampShape::Blob, _) | (_, Continuity::Legato) => 0.0,
        (_, Continuity::Staccato { .. }) => 0.08 * spec.stamp_size,
    };
    let centers: Vec<(f64, (i64, i64))> = spec
        .stamp_offsets()
        .into_iter()
        .enumerate()
        .map(|(k, t)| {
            let side = if k % 2 == 0 { lateral } else { -lateral };
            let cx = spec.start[0] + ux * t - uy * side;
            let cy = spec.start[1] + uy * t + ux * side;
            (t, (cx.round() as i64, cy.round() as i64))
        })
        .collect();

    for (k, &(_, (cx, cy))) in centers.iter().enumerate() {
        let escapes = shape.iter().any(|&(dx, dy)| {
            let (x, y) = (cx + dx, cy + dy);
            x < 0 || y < 0 || x >= w || y >= h
        });
        if escapes {
            return Err(RasterError::StrokeOutOfBounds { stamp_index: k });
        }
    }

    let mut out = canvas.clone();
    let mut decided = vec![false; canvas.width() * canvas.height()];
    let jitter = i16::from(cfg.ink_jitter);
    for &(t, (cx, cy)) in &centers {
        let coverage = cfg.deposition_density * (1.0 - spec.depletion).powf(t / spec.stamp_size);
        for &(dx, dy) in &shape {
            let (x, y) = ((cx + dx) as usize, (cy + dy) as usize);
            let idx = y * canvas.width() + x;
            if decided[idx] {
                continue;
            }
            decided[idx] = true;
            if rng.random::<f64>() < coverage {
                let rgb = cfg.ink_rgb.map(|c| {
                    let v = i16::from(c) + rng.random_range(-jitter..=jitter);
                    v.clamp(0, 255) as u8
                });
                out.set_pixel(x, y, rgb);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn is_red(p: [u8; 3]) -> bool {
        p != [255, 255, 255]
    }

    fn spec(stamp: StampShape, continuity: Continuity, depletion: f64, seed: u64) -> StrokeSpec {
        StrokeSpec {
            start: [60.0, 120.0],
            direction_deg: 0.0,
            length: 200.0,
            stamp,
            stamp_size: 30.0,
            continuity,
            depletion,
            seed,
        }
    }

    fn half_counts(r: &Raster, split_x: usize) -> (usize, usize) {
        let mut left = 0;
        let mut right = 0;
        for y in 0..r.height() {
            for x in 0..r.width() {
                if is_red(r.pixel(x, y)) {
                    if x < split_x {
                        left += 1;
                    } else {
                        right += 1;
                    }
                }
            }
        }
        (left, right)
    }

    #[test]
    fn depletion_front_loads_left_to_right_stroke() {
        let canvas = Raster::white(320, 240).unwrap();
        let s = spec(StampShape::Hand, Continuity::Legato, 0.3, 4);
        let r = generate_smear(&canvas, &s).unwrap();
        let (left, right) = half_counts(&r, 160);
        assert!(left > right, "left {left} right {right}");
        assert!(canvas.pixels().all(|p| p == [255, 255, 255]));
    }

    #[test]
    fn zero_depletion_blob_is_balanced() {
        let canvas = Raster::white(320, 240).unwrap();
        for seed in 0..10 {
            let s = spec(StampShape::Blob, Continuity::Legato, 0.0, seed);
            let (a, b) = half_counts(&generate_smear(&canvas, &s).unwrap(), 160);
            let imbalance = (a as f64 - b as f64).abs() / (a + b) as f64;
            assert!(imbalance < 0.1, "seed {seed}: {imbalance}");
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let canvas = Raster::white(320, 240).unwrap();
        let s = spec(StampShape::Shoe, Continuity::Staccato { interval: 40.0 }, 0.4, 11);
        assert_eq!(generate_smear(&canvas, &s).unwrap(), generate_smear(&canvas, &s).unwrap());
        let other = StrokeSpec { seed: 12, ..s.clone() };
        assert_ne!(generate_smear(&canvas, &s).unwrap(), generate_smear(&canvas, &other).unwrap());
    }

    #[test]
    fn ink_color_stays_near_carmine() {
        let canvas = Raster::white(320, 240).unwrap();
        let r = generate_smear(&canvas, &spec(StampShape::Hand, Continuity::Legato, 0.0, 1)).unwrap();
        for p in r.pixels().filter(|p| is_red(*p)) {
            assert!((165..=195).contains(&p[0]) && p[1] <= 35 && (15..=45).contains(&p[2]), "{p:?}");
        }
    }

    #[test]
    fn out_of_bounds_names_the_stamp() {
        let canvas = Raster::white(100, 100).unwrap();
        let s = StrokeSpec {
            start: [20.0, 50.0],
            length: 100.0,
            stamp_size: 10.0,
            continuity: Continuity::Staccato { interval: 20.0 },
            ..spec(StampShape::Hand, Continuity::Legato, 0.2, 0)
        };
        // stamps at x = 20, 40, 60, 80, 100, 120; x = 100 reaches past the edge
        assert_eq!(generate_smear(&canvas, &s), Err(RasterError::StrokeOutOfBounds { stamp_index: 4 }));
    }

    #[test]
    fn rejects_invalid_specs_and_dirty_canvas() {
        let canvas = Raster::white(320, 240).unwrap();
        let mut s = spec(StampShape::Hand, Continuity::Legato, 0.2, 0);
        s.length = 0.0;
        assert!(matches!(generate_smear(&canvas, &s), Err(RasterError::InvalidStroke(_))));
        s.length = 10.0;
        s.depletion = 1.5;
        assert!(matches!(generate_smear(&canvas, &s), Err(RasterError::InvalidStroke(_))));
        let mut dirty = canvas.clone();
        dirty.set_pixel(0, 0, [0, 0, 0]);
        s.depletion = 0.2;
        assert_eq!(generate_smear(&dirty, &s), Err(RasterError::CanvasNotWhite));
    }

    #[test]
    fn staccato_stamp_count() {
        let s = spec(StampShape::Shoe, Continuity::Staccato { interval: 40.0 }, 0.4, 0);
        assert_eq!(s.stamp_offsets(), vec![0.0, 40.0, 80.0, 120.0, 160.0, 200.0]);
        assert_eq!(spec(StampShape::Hand, Continuity::Legato, 0.0, 0).stamp_offsets().len(), 201);
    }

    fn arb_spec() -> impl Strategy<Value = StrokeSpec> {
        (
            prop_oneof![Just(StampShape::Hand), Just(StampShape::Shoe), Just(StampShape::Blob)],
            prop::bool::ANY,
            0.21f64..0.8,
            0u64..10_000,
            0usize..4,
            -12.0f64..12.0,
            8.0f64..14.0,
        )
            .prop_map(|(stamp, legato, depletion, seed, quadrant, jitter, size)| {
                let direction_deg = (quadrant as f64 * 90.0 + jitter).rem_euclid(360.0);
                let length = 10.0 * size + 20.0;
                let r = direction_deg.to_radians();
                let start = [200.0 - r.cos() * length / 2.0, 200.0 + r.sin() * length / 2.0];
                let continuity = if legato { Continuity::Legato } else { Continuity::Staccato { interval: size } };
                StrokeSpec { start, direction_deg, length, stamp, stamp_size: size, continuity, depletion, seed }
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn red_mass_sits_on_the_start_side(s in arb_spec()) {
            let canvas = Raster::white(400, 400).unwrap();
            let r = generate_smear(&canvas, &s).unwrap();
            let [ux, uy] = s.image_direction();
            let (mut sum, mut n) = (0.0, 0usize);
            for y in 0..r.height() {
                for x in 0..r.width() {
                    if is_red(r.pixel(x, y)) {
                        sum += (x as f64 - s.start[0]) * ux + (y as f64 - s.start[1]) * uy;
                        n += 1;
                    }
                }
            }
            prop_assert!(n > 0);
            prop_assert!(sum / (n as f64) < s.length / 2.0);
        }

        #[test]
        fn never_paints_outside_footprint_span(s in arb_spec()) {
            // canvas sized so that every stamp fits; nothing may land beyond the stamp reach
            let canvas = Raster::white(400, 400).unwrap();
            let r = generate_smear(&canvas, &s).unwrap();
            prop_assert_eq!(r.as_bytes().len(), 400 * 400 * 3);
            let reach = 0.75 * s.stamp_size + 2.0;
            let [ux, uy] = s.image_direction();
            for y in 0..r.height() {
                for x in 0..r.width() {
                    if is_red(r.pixel(x, y)) {
                        let (px, py) = (x as f64 - s.start[0], y as f64 - s.start[1]);
                        let along = px * ux + py * uy;
                        let across = (-px * uy + py * ux).abs();
                        prop_assert!(along >= -reach && along <= s.length + reach && across <= reach);
                    }
                }
            }
        }
    }
}
