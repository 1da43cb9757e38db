use serde::{Deserialize, Serialize};

use super::Mask;
use crate::geometry::Point2;
use crate::scalar::{from_i64, Scalar};

/// Inclusive bounding box in storage coordinates (columns and rows).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PixelBox {
    pub min_col: usize,
    pub min_row: usize,
    pub max_col: usize,
    pub max_row: usize,
}

/// Integer raw moments over math-frame pixel coordinates.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RawMoments {
    pub m00: i64,
    pub m10: i64,
    pub m01: i64,
    pub m20: i128,
    pub m02: i128,
    pub m11: i128,
}

impl RawMoments {
    pub fn add(&mut self, x: i64, y: i64) {
        self.m00 += 1;
        self.m10 += x;
        self.m01 += y;
        self.m20 += i128::from(x) * i128::from(x);
        self.m02 += i128::from(y) * i128::from(y);
        self.m11 += i128::from(x) * i128::from(y);
    }
}

/// 8-connected red region with its centroid and second-order central moments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Contour<T> {
    pub pixel_count: usize,
    pub centroid: Point2<T>,
    pub mu20: T,
    pub mu02: T,
    pub mu11: T,
    pub bounding_box: PixelBox,
}

fn from_i128<T: Scalar>(v: i128) -> T {
    T::from_i128(v).expect("moment representable in scalar type")
}

impl<T: Scalar> Contour<T> {
    pub fn from_moments(m: &RawMoments, bounding_box: PixelBox) -> Self {
        let n: T = from_i64(m.m00);
        let sx: T = from_i64(m.m10);
        let sy: T = from_i64(m.m01);
        let cx = sx / n;
        let cy = sy / n;
        Self {
            pixel_count: m.m00 as usize,
            centroid: Point2::new(cx, cy),
            mu20: from_i128::<T>(m.m20) - sx * cx,
            mu02: from_i128::<T>(m.m02) - sy * cy,
            mu11: from_i128::<T>(m.m11) - sx * cy,
            bounding_box,
        }
    }
}

/// Labels 8-connected components and keeps those with at least
/// `min_area_fraction × width × height` pixels, largest first.
pub fn extract_contours<T: Scalar>(mask: &Mask, min_area_fraction: f64) -> Vec<Contour<T>> {
    let (w, h) = (mask.width(), mask.height());
    let min_area = min_area_fraction * (w * h) as f64;
    let mut seen = vec![false; w * h];
    let mut stack = Vec::new();
    let mut found = Vec::new();

    for start in 0..w * h {
        if seen[start] || !mask.get(start % w, start / w) {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        let mut moments = RawMoments::default();
        let mut bbox = PixelBox { min_col: w, min_row: h, max_col: 0, max_row: 0 };
        while let Some(i) = stack.pop() {
            let (x, y) = (i % w, i / w);
            let (mx, my) = mask.math_point(x, y);
            moments.add(mx, my);
            bbox.min_col = bbox.min_col.min(x);
            bbox.max_col = bbox.max_col.max(x);
            bbox.min_row = bbox.min_row.min(y);
            bbox.max_row = bbox.max_row.max(y);
            for ny in y.saturating_sub(1)..=(y + 1).min(h - 1) {
                for nx in x.saturating_sub(1)..=(x + 1).min(w - 1) {
                    let j = ny * w + nx;
                    if !seen[j] && mask.get(nx, ny) {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        if (moments.m00 as f64) >= min_area {
            found.push((moments, bbox));
        }
    }

    found.sort_by(|(a, ab), (b, bb)| b.m00.cmp(&a.m00).then((ab.min_row, ab.min_col).cmp(&(bb.min_row, bb.min_col))));
    found.into_iter().map(|(m, b)| Contour::from_moments(&m, b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    fn fill(mask: &mut Mask, x0: usize, y0: usize, w: usize, h: usize) {
        for y in y0..y0 + h {
            for x in x0..x0 + w {
                mask.set(x, y, true);
            }
        }
    }

    #[test]
    fn area_threshold_drops_specks() {
        // 320×240 at 0.05% is 38.4 px: the 10×10 blobs stay, 2-px specks go
        let mut m = Mask::new(320, 240);
        fill(&mut m, 20, 20, 10, 10);
        fill(&mut m, 200, 100, 10, 10);
        for k in 0..5 {
            fill(&mut m, 50 + 30 * k, 200, 2, 1);
        }
        let all = extract_contours::<f64>(&m, 0.0);
        assert_eq!(all.len(), 7);
        let kept = extract_contours::<f64>(&m, 0.0005);
        assert_eq!(kept.len(), 2);
        assert!(kept.iter().all(|c| c.pixel_count == 100));
        // equal areas: the box with the smaller origin row comes first
        assert_eq!(kept[0].bounding_box.min_row, 20);
    }

    #[test]
    fn empty_and_full_masks() {
        assert!(extract_contours::<f64>(&Mask::new(30, 20), 0.0).is_empty());
        let full = Mask::from_fn(31, 21, |_, _| true);
        let c = extract_contours::<f64>(&full, 0.0005);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].centroid, Point2::new(15.0, 10.0));
        assert_eq!(c[0].mu11, 0.0);
    }

    #[test]
    fn diagonal_pixels_join_under_eight_connectivity() {
        let mut m = Mask::new(5, 5);
        m.set(0, 0, true);
        m.set(1, 1, true);
        m.set(2, 2, true);
        m.set(4, 0, true);
        let c = extract_contours::<f64>(&m, 0.0);
        assert_eq!(c.iter().map(|c| c.pixel_count).collect::<Vec<_>>(), vec![3, 1]);
        // math frame: storage diagonal going down-right is y decreasing, so μ11 < 0
        assert!(c[0].mu11 < 0.0);
    }

    #[test]
    fn exact_rational_moments_for_l_shape() {
        let mut m = Mask::new(6, 6);
        fill(&mut m, 1, 1, 1, 4);
        fill(&mut m, 2, 4, 3, 1);
        let c = &extract_contours::<Ratio<i128>>(&m, 0.0)[0];
        // math-frame points: (1,1..4) and (2..4,1); n = 7
        // Σx = 1*4 + 9 = 13, Σy = (1+2+3+4) + 3 = 13
        assert_eq!(c.centroid, Point2::new(Ratio::new(13, 7), Ratio::new(13, 7)));
        // Σx² = 4 + 29 = 33 → μ20 = 33 - 169/7 = 62/7
        assert_eq!(c.mu20, Ratio::new(62, 7));
        assert_eq!(c.mu02, Ratio::new(62, 7));
        // Σxy = (1+2+3+4) + (2+3+4) = 19 → μ11 = 19 - 169/7 = -36/7
        assert_eq!(c.mu11, Ratio::new(-36, 7));
    }
}
