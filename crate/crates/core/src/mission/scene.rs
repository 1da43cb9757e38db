use serde::{Deserialize, Serialize};

use super::MissionError;
use crate::geometry::Point3;
use crate::mapping::EvidenceClass;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruthMarker {
    pub id: u32,
    pub position: Point3<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruthEvidence {
    pub class: EvidenceClass,
    pub position: Point3<f64>,
}

/// Ground truth for a simulated room, in meters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneTruth {
    pub units: String,
    /// Takeoff spot; only `x` and `z` are used.
    pub drone_start: Point3<f64>,
    pub markers: Vec<TruthMarker>,
    pub evidence: Vec<TruthEvidence>,
}

impl SceneTruth {
    /// 2 m × 2 m room, one marker per wall at drone eye level, a gun photo on
    /// a 0.75 m table and blood and casing photos on the floor.
    pub fn demo() -> Self {
        let eye = 1.5;
        Self {
            units: "m".into(),
            drone_start: Point3::new(1.0, 0.0, 1.0),
            markers: vec![
                TruthMarker { id: 1, position: Point3::new(2.0, eye, 1.0) },
                TruthMarker { id: 2, position: Point3::new(1.0, eye, 2.0) },
                TruthMarker { id: 3, position: Point3::new(0.0, eye, 1.0) },
                TruthMarker { id: 4, position: Point3::new(1.0, eye, 0.0) },
            ],
            evidence: vec![
                TruthEvidence { class: EvidenceClass::Gun, position: Point3::new(0.55, 0.75, 1.45) },
                TruthEvidence { class: EvidenceClass::Blood, position: Point3::new(1.45, 0.0, 0.6) },
                TruthEvidence { class: EvidenceClass::Casing, position: Point3::new(1.3, 0.0, 1.4) },
            ],
        }
    }

    pub fn validate(&self) -> Result<(), MissionError> {
        if self.units != "m" {
            return Err(MissionError::InvalidScene(format!("units must be \"m\", got {:?}", self.units)));
        }
        let finite = self.drone_start.is_finite()
            && self.markers.iter().all(|m| m.position.is_finite())
            && self.evidence.iter().all(|e| e.position.is_finite() && e.position.y >= 0.0);
        if !finite {
            return Err(MissionError::InvalidScene("positions must be finite, evidence at y >= 0".into()));
        }
        let mut ids: Vec<_> = self.markers.iter().map(|m| m.id).collect();
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(MissionError::InvalidScene("duplicate marker id".into()));
        }
        Ok(())
    }

    pub fn truth_positions(&self) -> Vec<Point3<f64>> {
        self.evidence.iter().map(|e| e.position).collect()
    }
}
