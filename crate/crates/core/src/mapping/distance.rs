use serde::{Deserialize, Serialize};

use super::MappingError;
use crate::geometry::Point3;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistancePair<T> {
    pub item_a: usize,
    pub item_b: usize,
    pub distance_m: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport<T> {
    pub units: String,
    pub pairs: Vec<DistancePair<T>>,
    /// Set when fewer than two items were available.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notice: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_discrepancy_m: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sd_discrepancy_m: Option<T>,
}

impl<T: Real> DistanceReport<T> {
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn get(&self, a: usize, b: usize) -> Option<T> {
        let (a, b) = (a.min(b), a.max(b));
        self.pairs.iter().find(|p| p.item_a == a && p.item_b == b).map(|p| p.distance_m)
    }

    /// Keeps pairs whose two items both map to `Some` under `rename`.
    pub fn remap(&self, mut rename: impl FnMut(usize) -> Option<usize>) -> Self {
        let pairs = self
            .pairs
            .iter()
            .filter_map(|p| {
                let (a, b) = (rename(p.item_a)?, rename(p.item_b)?);
                Some(DistancePair { item_a: a.min(b), item_b: a.max(b), distance_m: p.distance_m })
            })
            .collect();
        Self { units: self.units.clone(), pairs, notice: None, mean_discrepancy_m: None, sd_discrepancy_m: None }
    }

    /// Fixed-width table in meters and centimeters.
    pub fn to_table(&self) -> String {
        let mut out = String::from("item_a  item_b  distance_m  distance_cm\n");
        for p in &self.pairs {
            let d = p.distance_m.to_f64_lossy();
            out.push_str(&format!("{:>6}  {:>6}  {:>10.4}  {:>11.2}\n", p.item_a, p.item_b, d, d * 100.0));
        }
        if let Some(n) = &self.notice {
            out.push_str(&format!("# {n}\n"));
        }
        if let (Some(m), Some(s)) = (self.mean_discrepancy_m, self.sd_discrepancy_m) {
            let (m, s) = (m.to_f64_lossy(), s.to_f64_lossy());
            out.push_str(&format!("# discrepancy mean {:.2} cm, sd {:.2} cm\n", m * 100.0, s * 100.0));
        }
        out
    }
}

/// Every unordered pair `(i, j)` with `i < j`, in index order.
pub fn pairwise_distances_of<T: Real>(positions: &[Point3<T>]) -> DistanceReport<T> {
    let mut pairs = Vec::new();
    for (i, a) in positions.iter().enumerate() {
        for (j, b) in positions.iter().enumerate().skip(i + 1) {
            pairs.push(DistancePair { item_a: i, item_b: j, distance_m: a.distance(*b) });
        }
    }
    let notice =
        (positions.len() < 2).then(|| format!("{} evidence item(s) detected; no distances to report", positions.len()));
    DistanceReport { units: "m".to_string(), pairs, notice, mean_discrepancy_m: None, sd_discrepancy_m: None }
}

/// Mean and population standard deviation of `|estimated - truth|`.
pub fn discrepancy_stats<T: Real>(
    estimated: &DistanceReport<T>,
    truth: &DistanceReport<T>,
) -> Result<(T, T), MappingError> {
    let same = estimated.pairs.len() == truth.pairs.len()
        && estimated.pairs.iter().zip(&truth.pairs).all(|(e, t)| (e.item_a, e.item_b) == (t.item_a, t.item_b));
    if !same || estimated.pairs.is_empty() {
        return Err(MappingError::MismatchedPairs);
    }
    let errs: Vec<T> =
        estimated.pairs.iter().zip(&truth.pairs).map(|(e, t)| (e.distance_m - t.distance_m).abs()).collect();
    let n = T::from_usize(errs.len()).unwrap();
    let mean = errs.iter().fold(T::zero(), |a, &e| a + e) / n;
    let var = errs.iter().fold(T::zero(), |a, &e| a + (e - mean) * (e - mean)) / n;
    Ok((mean, var.sqrt()))
}
