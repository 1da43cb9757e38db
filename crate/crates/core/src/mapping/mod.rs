//! Marker-anchored scene map, evidence recording and pairwise distances.
//!
//! The map frame puts the first detected marker at `x = z = 0`; `x` and `z`
//! span the floor and `y` is height. Yaw and bearing are measured from +x
//! toward +z, so a heading `α` points along `(cos α, sin α)` in `(x, z)`.

mod distance;
mod noise;

pub use distance::{discrepancy_stats, pairwise_distances_of, DistancePair, DistanceReport};
pub use noise::ObservationNoise;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Point2, Point3};
use crate::scalar::{wrap_degrees, Real};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MappingError {
    #[error("observation of marker {marker_id} has non-finite or non-positive fields")]
    InvalidObservation { marker_id: u32 },
    #[error("downward range {range_m} m exceeds drone altitude {altitude_m} m")]
    InconsistentSensor { range_m: f64, altitude_m: f64 },
    #[error("evidence position is not finite")]
    NonFiniteEvidence,
    #[error("distance reports cover different item pairs")]
    MismatchedPairs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvidenceClass {
    Gun,
    Blood,
    Casing,
}

impl EvidenceClass {
    pub const ALL: [EvidenceClass; 3] = [EvidenceClass::Gun, EvidenceClass::Blood, EvidenceClass::Casing];
}

impl std::fmt::Display for EvidenceClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EvidenceClass::Gun => "gun",
            EvidenceClass::Blood => "blood",
            EvidenceClass::Casing => "casing",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarkerObservation<T> {
    pub marker_id: u32,
    /// Marker direction relative to the drone heading, degrees in `[0, 360)`.
    pub bearing_deg: T,
    /// Horizontal range to the marker, meters.
    pub range_m: T,
    /// Drone heading in the map frame, degrees in `[0, 360)`.
    pub drone_yaw_deg: T,
    /// Downward range-sensor reading, meters.
    pub drone_altitude_m: T,
}

impl<T: Real> MarkerObservation<T> {
    fn validate(&self) -> Result<(), MappingError> {
        let ok = self.bearing_deg.is_finite()
            && self.drone_yaw_deg.is_finite()
            && self.drone_altitude_m.is_finite()
            && self.range_m.is_finite()
            && self.range_m > T::zero();
        if ok {
            Ok(())
        } else {
            Err(MappingError::InvalidObservation { marker_id: self.marker_id })
        }
    }

    /// World heading to the marker.
    pub fn heading_deg(&self) -> T {
        wrap_degrees(self.drone_yaw_deg + self.bearing_deg)
    }

    /// Marker offset from the drone on the floor plane.
    pub fn ground_offset(&self) -> Point2<T> {
        Point2::from_angle_deg(self.heading_deg()).scale(self.range_m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapMarker<T> {
    pub position: Point3<T>,
    pub observations: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvidenceItem<T> {
    pub class: EvidenceClass,
    pub position: Point3<T>,
    pub source_confidence: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneMap<T> {
    pub units: String,
    pub anchor_id: u32,
    pub markers: BTreeMap<u32, MapMarker<T>>,
    /// Marker ids in first-detection order.
    pub detection_order: Vec<u32>,
    pub evidence: Vec<EvidenceItem<T>>,
    /// Drone position on the floor plane during the mapping pass, as `(x, z)`.
    pub drone_position: Point2<T>,
}

/// Starts a map at the first detected marker. The drone is placed so that
/// the observation is reproduced exactly.
pub fn init_map<T: Real>(first: &MarkerObservation<T>) -> Result<SceneMap<T>, MappingError> {
    first.validate()?;
    let mut markers = BTreeMap::new();
    markers.insert(
        first.marker_id,
        MapMarker { position: Point3::new(T::zero(), first.drone_altitude_m, T::zero()), observations: 1 },
    );
    Ok(SceneMap {
        units: "m".to_string(),
        anchor_id: first.marker_id,
        markers,
        detection_order: vec![first.marker_id],
        evidence: Vec::new(),
        drone_position: first.ground_offset().scale(-T::one()),
    })
}

impl<T: Real> SceneMap<T> {
    pub fn set_drone_position(&mut self, position: Point2<T>) {
        self.drone_position = position;
    }

    pub fn marker(&self, id: u32) -> Option<&MapMarker<T>> {
        self.markers.get(&id)
    }

    /// Places a marker relative to the current drone position; known markers
    /// keep a running mean. The anchor stays pinned at the origin.
    pub fn localize_marker(&mut self, obs: &MarkerObservation<T>) -> Result<(), MappingError> {
        obs.validate()?;
        let off = obs.ground_offset();
        let seen = Point3::new(self.drone_position.x + off.x, obs.drone_altitude_m, self.drone_position.y + off.y);
        match self.markers.get_mut(&obs.marker_id) {
            Some(m) if obs.marker_id == self.anchor_id => {
                m.observations += 1;
            }
            Some(m) => {
                m.observations += 1;
                let k = T::one() / T::from_u32(m.observations).unwrap();
                m.position = Point3::new(
                    m.position.x + (seen.x - m.position.x) * k,
                    m.position.y + (seen.y - m.position.y) * k,
                    m.position.z + (seen.z - m.position.z) * k,
                );
            }
            None => {
                self.markers.insert(obs.marker_id, MapMarker { position: seen, observations: 1 });
                self.detection_order.push(obs.marker_id);
            }
        }
        Ok(())
    }

    /// Records an item under a centered drone at `drone_position` (`x`, `z`).
    pub fn add_evidence(
        &mut self,
        class: EvidenceClass,
        drone_position: Point2<T>,
        drone_altitude_m: T,
        downward_range_m: T,
        confidence: T,
    ) -> Result<usize, MappingError> {
        if downward_range_m > drone_altitude_m {
            return Err(MappingError::InconsistentSensor {
                range_m: downward_range_m.to_f64_lossy(),
                altitude_m: drone_altitude_m.to_f64_lossy(),
            });
        }
        let position = Point3::new(drone_position.x, drone_altitude_m - downward_range_m, drone_position.y);
        if !position.is_finite() {
            return Err(MappingError::NonFiniteEvidence);
        }
        let conf = confidence.max(T::zero()).min(T::one());
        self.evidence.push(EvidenceItem { class, position, source_confidence: conf });
        Ok(self.evidence.len() - 1)
    }

    pub fn pairwise_distances(&self) -> DistanceReport<T> {
        let positions: Vec<_> = self.evidence.iter().map(|e| e.position).collect();
        pairwise_distances_of(&positions)
    }
}
