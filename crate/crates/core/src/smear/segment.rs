use serde::{Deserialize, Serialize};

use crate::defaults::defaults;
use crate::raster::{rgb_to_hsv, Raster};

/// Closed hue interval `[low, high]` in degrees; `low > high` wraps
/// through 0. Hues never reach 360, so `[345, 360]` behaves as `[345, 360)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HueRange {
    pub low: f64,
    pub high: f64,
}

impl HueRange {
    pub fn contains(&self, hue: f64) -> bool {
        if self.low <= self.high {
            hue >= self.low && hue <= self.high
        } else {
            hue >= self.low || hue <= self.high
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HueRangeSet {
    pub ranges: Vec<HueRange>,
    pub min_saturation: f64,
    pub min_value: f64,
}

impl Default for HueRangeSet {
    /// Two red intervals, [345°, 360°) and [0°, 10°]; excludes orange-red.
    fn default() -> Self {
        let d = &defaults().smear;
        Self {
            ranges: d.hue_ranges.iter().map(|&(low, high)| HueRange { low, high }).collect(),
            min_saturation: d.min_saturation,
            min_value: d.min_value,
        }
    }
}

impl HueRangeSet {
    pub fn matches(&self, rgb: [u8; 3]) -> bool {
        let hsv = rgb_to_hsv(rgb);
        hsv.saturation >= self.min_saturation
            && hsv.value >= self.min_value
            && self.ranges.iter().any(|r| r.contains(hsv.hue))
    }
}

/// Binary image, row-major, storage coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct Mask {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl std::fmt::Debug for Mask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Mask({}x{}, {} set)", self.width, self.height, self.count())
    }
}

impl Mask {
    pub fn new(width: usize, height: usize) -> Self {
        Self { width, height, bits: vec![false; width * height] }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::new(width, height);
        for y in 0..height {
            for x in 0..width {
                m.bits[y * width + x] = f(x, y);
            }
        }
        m
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, on: bool) {
        self.bits[y * self.width + x] = on;
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|b| *b)
    }

    /// Set pixels as `(column, row)` in row-major order.
    pub fn iter_set(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.bits.iter().enumerate().filter(|(_, b)| **b).map(move |(i, _)| (i % self.width, i / self.width))
    }

    /// Math-frame coordinates of a storage pixel.
    pub fn math_point(&self, x: usize, y: usize) -> (i64, i64) {
        (x as i64, (self.height - 1 - y) as i64)
    }

    /// Rotates the mask 90° counter-clockwise as seen on screen.
    pub fn rotate_ccw(&self) -> Self {
        let mut out = Self::new(self.height, self.width);
        for (x, y) in self.iter_set() {
            out.set(y, self.width - 1 - x, true);
        }
        out
    }

    pub fn flip_horizontal(&self) -> Self {
        let mut out = Self::new(self.width, self.height);
        for (x, y) in self.iter_set() {
            out.set(self.width - 1 - x, y, true);
        }
        out
    }

    /// Nearest-neighbour upscale by an integer factor.
    pub fn upscale(&self, factor: usize) -> Self {
        Self::from_fn(self.width * factor, self.height * factor, |x, y| self.get(x / factor, y / factor))
    }
}

pub fn segment_red(raster: &Raster, ranges: &HueRangeSet) -> Mask {
    let mut mask = Mask::new(raster.width(), raster.height());
    for (i, p) in raster.pixels().enumerate() {
        mask.bits[i] = ranges.matches(p);
    }
    mask
}
