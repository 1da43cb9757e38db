use serde::{Deserialize, Serialize};

use super::{FittedLine, Mask, SmearError};
use crate::geometry::Point2;
use crate::scalar::{wrap_degrees, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DirectionLabel {
    Right,
    Up,
    Left,
    Down,
}

impl DirectionLabel {
    pub fn angle_deg(self) -> f64 {
        match self {
            DirectionLabel::Right => 0.0,
            DirectionLabel::Up => 90.0,
            DirectionLabel::Left => 180.0,
            DirectionLabel::Down => 270.0,
        }
    }

    pub fn is_horizontal(self) -> bool {
        matches!(self, DirectionLabel::Right | DirectionLabel::Left)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DirectionLabel::Right => "right",
            DirectionLabel::Up => "up",
            DirectionLabel::Left => "left",
            DirectionLabel::Down => "down",
        }
    }
}

impl std::str::FromStr for DirectionLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "right" => Ok(Self::Right),
            "up" => Ok(Self::Up),
            "left" => Ok(Self::Left),
            "down" => Ok(Self::Down),
            other => Err(format!("unknown direction label {other:?}")),
        }
    }
}

impl std::fmt::Display for DirectionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The four view directions as unit vectors (math convention).
#[derive(Debug, Clone, Copy, Default)]
pub struct Codebook;

impl Codebook {
    pub const LABELS: [DirectionLabel; 4] =
        [DirectionLabel::Right, DirectionLabel::Up, DirectionLabel::Left, DirectionLabel::Down];

    pub fn vector<T: Real>(label: DirectionLabel) -> Point2<T> {
        match label {
            DirectionLabel::Right => Point2::new(T::one(), T::zero()),
            DirectionLabel::Up => Point2::new(T::zero(), T::one()),
            DirectionLabel::Left => Point2::new(-T::one(), T::zero()),
            DirectionLabel::Down => Point2::new(T::zero(), -T::one()),
        }
    }

    /// Label with the largest dot product. Diagonal ties go to the
    /// horizontal label.
    pub fn classify<T: Real>(angle_deg: T) -> DirectionLabel {
        let v = Point2::<T>::from_angle_deg(angle_deg);
        let tie = T::lit(1e-9);
        let mut best = DirectionLabel::Right;
        let mut best_dot = -T::infinity();
        for label in Self::LABELS {
            let d = v.dot(Self::vector(label));
            let better =
                d > best_dot + tie || ((d - best_dot).abs() <= tie && label.is_horizontal() && !best.is_horizontal());
            if better {
                best = label;
                best_dot = d;
            }
        }
        best
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectionEstimate<T> {
    /// Inferred motion direction in `[0, 360)`.
    pub angle_deg: T,
    pub label: DirectionLabel,
    pub ambiguous: bool,
    /// Signed offset of the blood-mass midpoint from the extent midpoint,
    /// along the line direction (pixels).
    pub offset_magnitude: T,
    /// Projection extent of the mask along the line (pixels).
    pub extent: T,
}

/// Motion points away from the blood-heavy end of the line.
pub fn estimate_direction<T: Real>(
    line: &FittedLine<T>,
    mask: &Mask,
    ambiguity_fraction: T,
) -> Result<DirectionEstimate<T>, SmearError> {
    let u = line.direction;
    let mut t_min = T::infinity();
    let mut t_max = -T::infinity();
    let mut sum = T::zero();
    let mut n = 0usize;
    for (x, y) in mask.iter_set() {
        let (mx, my) = mask.math_point(x, y);
        let p = Point2::new(T::from_i64(mx).unwrap(), T::from_i64(my).unwrap());
        let t = p.sub(line.anchor).dot(u);
        t_min = t_min.min(t);
        t_max = t_max.max(t);
        sum = sum + t;
        n += 1;
    }
    if n == 0 {
        return Err(SmearError::NoBloodDetected);
    }
    let extent = t_max - t_min;
    if extent < T::lit(2.0) {
        return Err(SmearError::InsufficientExtent { extent: extent.to_f64_lossy() });
    }
    let t_bary = sum / T::from_usize(n).unwrap();
    let t_mid = (t_min + t_max) / T::lit(2.0);
    let s = t_bary - t_mid;
    let motion = if s > T::zero() { u.scale(-T::one()) } else { u };
    let angle_deg = wrap_degrees(motion.y.atan2(motion.x).to_degrees());
    Ok(DirectionEstimate {
        angle_deg,
        label: Codebook::classify(angle_deg),
        ambiguous: s.abs() < ambiguity_fraction * extent,
        offset_magnitude: s,
        extent,
    })
}

/// Smallest absolute difference between two headings, in `[0, 180]`.
pub fn angular_error<T: Real>(predicted_deg: T, truth_deg: T) -> T {
    let full = T::lit(360.0);
    let d = (predicted_deg - truth_deg).abs() % full;
    d.min(full - d)
}
