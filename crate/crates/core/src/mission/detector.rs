use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::MissionError;
use crate::defaults::defaults;
use crate::mapping::EvidenceClass;

/// Stand-in for the downward-camera object detector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DetectorModel {
    /// Probability that an item in view is not reported in a frame.
    pub miss_rate: f64,
    /// Expected spurious detections over one pass.
    pub false_positive_rate: f64,
    /// Gaussian scatter of measured item offsets, pixels per axis.
    pub pixel_noise_sigma: f64,
}

impl Default for DetectorModel {
    fn default() -> Self {
        let d = &defaults().detector;
        Self {
            miss_rate: d.miss_rate,
            false_positive_rate: d.false_positive_rate,
            pixel_noise_sigma: d.pixel_noise_sigma,
        }
    }
}

impl DetectorModel {
    pub const PERFECT: Self = Self { miss_rate: 0.0, false_positive_rate: 0.0, pixel_noise_sigma: 0.0 };

    pub fn validate(&self) -> Result<(), MissionError> {
        let rate = |v: f64| (0.0..=1.0).contains(&v);
        if !rate(self.miss_rate) || !rate(self.false_positive_rate) {
            return Err(MissionError::InvalidConfig("detector rates must lie in [0, 1]".into()));
        }
        if !(self.pixel_noise_sigma.is_finite() && self.pixel_noise_sigma >= 0.0) {
            return Err(MissionError::InvalidConfig("pixel noise sigma must be non-negative".into()));
        }
        Ok(())
    }

    pub fn with_seed(self, seed: u64) -> Detector {
        Detector { model: self, rng: ChaCha8Rng::seed_from_u64(seed), stats: DetectorStats::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Detection {
    /// Index of the ground-truth item, `None` for a spurious detection.
    pub truth: Option<usize>,
    pub class: EvidenceClass,
    pub confidence: f64,
    /// Measured offset from the frame center, pixels (ground `x`, `z`).
    pub offset_px: [f64; 2],
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectorStats {
    /// Frames in which a real item was in view, summed over items.
    pub encounters: u64,
    /// Encounters that produced a detection.
    pub detections: u64,
    pub spurious: u64,
}

impl DetectorStats {
    pub fn detection_rate(&self) -> Option<f64> {
        (self.encounters > 0).then(|| self.detections as f64 / self.encounters as f64)
    }

    pub fn merge(&mut self, other: &DetectorStats) {
        self.encounters += other.encounters;
        self.detections += other.detections;
        self.spurious += other.spurious;
    }
}

/// Seeded detector instance.
#[derive(Debug, Clone)]
pub struct Detector {
    model: DetectorModel,
    rng: ChaCha8Rng,
    stats: DetectorStats,
}

impl Detector {
    pub fn model(&self) -> &DetectorModel {
        &self.model
    }

    pub fn stats(&self) -> DetectorStats {
        self.stats
    }

    /// Adds measurement noise to a true pixel offset.
    pub fn measure(&mut self, true_offset_px: [f64; 2]) -> [f64; 2] {
        let n = Normal::new(0.0, 1.0).unwrap();
        let (a, b): (f64, f64) = (n.sample(&mut self.rng), n.sample(&mut self.rng));
        let s = self.model.pixel_noise_sigma;
        [true_offset_px[0] + a * s, true_offset_px[1] + b * s]
    }

    /// One frame. `in_view` holds `(truth index, class, true offset px)`;
    /// `spurious_chance` is the per-frame false-positive probability and
    /// `half_frame_px` bounds where a spurious box can appear.
    pub fn observe(
        &mut self,
        in_view: &[(usize, EvidenceClass, [f64; 2])],
        spurious_chance: f64,
        half_frame_px: f64,
    ) -> Vec<Detection> {
        let mut out = Vec::new();
        for &(truth, class, offset) in in_view {
            self.stats.encounters += 1;
            let hit = self.rng.random::<f64>() >= self.model.miss_rate;
            let confidence = self.rng.random_range(0.6..0.99);
            let measured = self.measure(offset);
            if hit {
                self.stats.detections += 1;
                out.push(Detection { truth: Some(truth), class, confidence, offset_px: measured });
            }
        }
        if self.rng.random::<f64>() < spurious_chance {
            self.stats.spurious += 1;
            let class = EvidenceClass::ALL[self.rng.random_range(0..EvidenceClass::ALL.len())];
            let offset_px = [
                self.rng.random_range(-half_frame_px..half_frame_px),
                self.rng.random_range(-half_frame_px..half_frame_px),
            ];
            out.push(Detection { truth: None, class, confidence: self.rng.random_range(0.3..0.7), offset_px });
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn miss_rate_extremes() {
        let items = [(0, EvidenceClass::Gun, [1.0, 2.0])];
        let mut blind = DetectorModel { miss_rate: 1.0, ..DetectorModel::PERFECT }.with_seed(1);
        let mut sharp = DetectorModel::PERFECT.with_seed(1);
        for _ in 0..50 {
            assert!(blind.observe(&items, 0.0, 160.0).is_empty());
            let d = sharp.observe(&items, 0.0, 160.0);
            assert_eq!(d.len(), 1);
            assert_eq!(d[0].offset_px, [1.0, 2.0]);
        }
        assert_eq!(blind.stats().detection_rate(), Some(0.0));
        assert_eq!(sharp.stats().detection_rate(), Some(1.0));
    }

    #[test]
    fn seeded_and_validated() {
        let items = [(0, EvidenceClass::Blood, [0.0, 0.0]), (1, EvidenceClass::Casing, [5.0, 5.0])];
        let run = |seed| {
            let mut d = DetectorModel::default().with_seed(seed);
            (0..20).map(|_| d.observe(&items, 0.1, 160.0).len()).collect::<Vec<_>>()
        };
        assert_eq!(run(9), run(9));
        assert!(DetectorModel { miss_rate: 1.2, ..DetectorModel::PERFECT }.validate().is_err());
        assert!(DetectorModel { pixel_noise_sigma: -1.0, ..DetectorModel::PERFECT }.validate().is_err());
        assert!(DetectorModel::default().validate().is_ok());
    }

    #[test]
    fn spurious_detections_have_no_truth() {
        let mut d = DetectorModel::PERFECT.with_seed(3);
        let out = d.observe(&[], 1.0, 100.0);
        assert_eq!(out.len(), 1);
        assert!(out[0].truth.is_none());
        assert!(out[0].offset_px.iter().all(|v| v.abs() < 100.0));
    }
}
