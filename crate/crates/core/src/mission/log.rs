use serde::{Deserialize, Serialize};

use crate::geometry::Point3;
use crate::mapping::EvidenceClass;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DroneState {
    /// Estimated position in the map frame (`y` is altitude).
    pub position: Point3<f64>,
    pub yaw_deg: f64,
    pub altitude_m: f64,
    pub battery_s: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PassKind {
    Mapping,
    Evidence,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "kebab-case")]
pub enum EventKind {
    Takeoff { pass: PassKind },
    MarkerDetected { marker_id: u32, bearing_deg: f64, range_m: f64 },
    PassComplete { pass: PassKind },
    EvidenceDetected { class: EvidenceClass, confidence: f64, offset_px: [f64; 2] },
    ServoIteration { iteration: u32, offset_px: f64 },
    GatherLanding { class: EvidenceClass, evidence_index: usize },
    DetectedNotGathered { class: EvidenceClass, reason: String },
    Landing,
    Aborted { reason: String },
    ReportEmitted { pairs: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogEvent {
    pub t_s: f64,
    #[serde(flatten)]
    pub kind: EventKind,
    pub state: DroneState,
}

/// Append-only, strictly time-ordered event log.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MissionLog {
    events: Vec<LogEvent>,
}

impl MissionLog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Panics if `t_s` does not move strictly forward.
    pub fn push(&mut self, t_s: f64, kind: EventKind, state: DroneState) {
        if let Some(last) = self.events.last() {
            assert!(t_s > last.t_s, "log time must increase: {} after {}", t_s, last.t_s);
        }
        self.events.push(LogEvent { t_s, kind, state });
    }

    pub fn events(&self) -> &[LogEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.events.last().map_or(0.0, |e| e.t_s)
    }

    /// One JSON object per line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for e in &self.events {
            out.push_str(&serde_json::to_string(e).expect("log events serialize"));
            out.push('\n');
        }
        out
    }

    pub fn from_json_lines(text: &str) -> Result<Self, serde_json::Error> {
        let events =
            text.lines().filter(|l| !l.trim().is_empty()).map(serde_json::from_str).collect::<Result<_, _>>()?;
        Ok(Self { events })
    }

    pub fn count(&self, pred: impl Fn(&EventKind) -> bool) -> usize {
        self.events.iter().filter(|e| pred(&e.kind)).count()
    }
}

/// Mission clock with a battery budget. Every logged event costs one
/// camera frame so timestamps are strictly increasing.
pub(crate) struct FlightClock {
    pub t: f64,
    budget: f64,
    frame: f64,
    reserve: f64,
}

impl FlightClock {
    pub fn new(budget: f64, frame: f64, landing: f64) -> Self {
        // landing plus the frames of the abort, landing and report events
        Self { t: 0.0, budget, frame, reserve: landing + 4.0 * frame }
    }

    pub fn battery(&self) -> f64 {
        (self.budget - self.t).max(0.0)
    }

    /// Whether `dt` can be spent and still leave enough to land.
    pub fn affords(&self, dt: f64) -> bool {
        self.t + dt + self.frame + self.reserve <= self.budget
    }

    pub fn advance(&mut self, dt: f64) {
        self.t += dt;
    }

    pub fn log(&mut self, log: &mut MissionLog, kind: EventKind, mut state: DroneState) {
        state.battery_s = self.battery();
        log.push(self.t, kind, state);
        self.t += self.frame;
    }
}
