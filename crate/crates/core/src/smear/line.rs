use serde::{Deserialize, Serialize};

use super::{Contour, SmearError};
use crate::geometry::Point2;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LineSource {
    MultiContourFit,
    SingleContourMoments,
}

/// Undirected line; `direction` is a unit vector with angle in `[0°, 180°)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FittedLine<T> {
    pub anchor: Point2<T>,
    pub direction: Point2<T>,
    pub source: LineSource,
}

impl<T: Real> FittedLine<T> {
    pub fn from_angle(anchor: Point2<T>, angle_rad: T, source: LineSource) -> Self {
        let pi = T::PI();
        let mut a = angle_rad % pi;
        if a < T::zero() {
            a = a + pi;
        }
        // a hair below π is the same undirected line as 0
        if pi - a <= T::epsilon() * T::lit(16.0) {
            a = T::zero();
        }
        Self { anchor, direction: Point2::new(a.cos(), a.sin()), source }
    }

    pub fn angle_deg(&self) -> T {
        self.direction.angle_deg()
    }

    /// Perpendicular squared distance of `points` to a line through the
    /// anchor at `angle_rad`.
    pub fn perpendicular_sse(anchor: Point2<T>, angle_rad: T, points: &[Point2<T>]) -> T {
        let normal = Point2::new(-angle_rad.sin(), angle_rad.cos());
        points.iter().fold(T::zero(), |acc, p| {
            let d = p.sub(anchor).dot(normal);
            acc + d * d
        })
    }
}

/// Major-axis angle of a second-moment tensor.
fn principal_angle<T: Real>(sxx: T, syy: T, sxy: T) -> T {
    let two = T::lit(2.0);
    (two * sxy).atan2(sxx - syy) / two
}

/// Principal axis through equally weighted contour centroids, or the
/// moment orientation of a lone contour.
pub fn fit_line<T: Real>(contours: &[Contour<T>]) -> Result<FittedLine<T>, SmearError> {
    match contours {
        [] => Err(SmearError::NoBloodDetected),
        [only] => Ok(FittedLine::from_angle(
            only.centroid,
            principal_angle(only.mu20, only.mu02, only.mu11),
            LineSource::SingleContourMoments,
        )),
        many => {
            let centroids: Vec<_> = many.iter().map(|c| c.centroid).collect();
            Ok(fit_points(&centroids))
        }
    }
}

/// Total-least-squares line through at least two points.
pub(crate) fn fit_points<T: Real>(points: &[Point2<T>]) -> FittedLine<T> {
    let n = T::from_usize(points.len()).expect("count fits scalar");
    let mean = points
        .iter()
        .fold(Point2::new(T::zero(), T::zero()), |acc, p| Point2::new(acc.x + p.x, acc.y + p.y))
        .scale(T::one() / n);
    let (mut sxx, mut syy, mut sxy) = (T::zero(), T::zero(), T::zero());
    for p in points {
        let d = p.sub(mean);
        sxx = sxx + d.x * d.x;
        syy = syy + d.y * d.y;
        sxy = sxy + d.x * d.y;
    }
    FittedLine::from_angle(mean, principal_angle(sxx, syy, sxy), LineSource::MultiContourFit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smear::{extract_contours, Mask, PixelBox};

    fn at(x: f64, y: f64) -> Contour<f64> {
        Contour {
            pixel_count: 50,
            centroid: Point2::new(x, y),
            mu20: 0.0,
            mu02: 0.0,
            mu11: 0.0,
            bounding_box: PixelBox { min_col: 0, min_row: 0, max_col: 0, max_row: 0 },
        }
    }

    #[test]
    fn collinear_horizontal() {
        let line = fit_line(&[at(0.0, 0.0), at(10.0, 0.0), at(20.0, 0.0)]).unwrap();
        assert_eq!(line.source, LineSource::MultiContourFit);
        assert!(line.angle_deg().abs() < 1e-12);
        assert_eq!(line.anchor, Point2::new(10.0, 0.0));
    }

    #[test]
    fn single_rectangle_uses_long_axis() {
        let mut m = Mask::new(40, 20);
        for y in 8..12 {
            for x in 10..30 {
                m.set(x, y, true);
            }
        }
        let c = extract_contours::<f64>(&m, 0.0);
        let line = fit_line(&c).unwrap();
        assert_eq!(line.source, LineSource::SingleContourMoments);
        assert!(line.angle_deg().abs() < 1e-12);
        let tall = fit_line(&extract_contours::<f64>(&m.rotate_ccw(), 0.0)).unwrap();
        assert!((tall.angle_deg() - 90.0).abs() < 1e-9);
    }

    #[test]
    fn perturbed_diagonal() {
        // closed-form 2x2 PCA for (0,0), (10,10.8), (20,20):
        // sxx = 200, syy = 200.4267, sxy = 200 → θ = ½·atan2(400, -0.4267) = 45.0306°
        let line = fit_line(&[at(0.0, 0.0), at(10.0, 10.8), at(20.0, 20.0)]).unwrap();
        assert!((line.angle_deg() - 45.0306).abs() < 1e-3, "{}", line.angle_deg());
        assert!((line.angle_deg() - 45.0).abs() <= 3.0);
        let off = fit_line(&[at(0.0, 0.0), at(10.0, 10.0), at(21.0, 20.0)]).unwrap();
        assert!((off.angle_deg() - 45.0).abs() <= 3.0);
    }

    #[test]
    fn direction_is_unit_and_half_turn_normalized() {
        for k in 0..72 {
            let a = (k as f64 * 5.0).to_radians();
            let l = FittedLine::from_angle(Point2::new(0.0, 0.0), a, LineSource::MultiContourFit);
            assert!((l.direction.norm() - 1.0).abs() < 1e-9);
            let deg = l.angle_deg();
            assert!((0.0..180.0).contains(&deg), "{deg}");
        }
    }

    #[test]
    fn empty_is_no_blood() {
        assert_eq!(fit_line::<f64>(&[]), Err(SmearError::NoBloodDetected));
    }

    #[test]
    fn works_in_single_precision() {
        let pts = [Point2::new(0.0f32, 0.0), Point2::new(5.0, 5.0), Point2::new(10.0, 10.0)];
        assert!((fit_points(&pts).angle_deg() - 45.0).abs() < 1e-3);
    }
}
