//! Simulation and analysis toolkit for nano-drone indoor crime-scene work.
//!
//! * [`raster`]: RGB8 images, PPM I/O and a synthetic transfer-stain generator.
//! * [`smear`]: stain direction inference from red-pixel geometry.
//! * [`mapping`]: marker-anchored scene map, evidence and pairwise distances.
//! * [`mission`]: two-pass mapping/evidence flights, servoing and window entry.
//!
//! Geometric code is generic over the scalar type; the aliases below fix it
//! to `f64`, which is what the simulator and CLI use.

pub mod defaults;
pub mod geometry;
pub mod mapping;
pub mod mission;
pub mod raster;
pub mod scalar;
pub mod smear;

pub use scalar::{Real, Scalar};

pub type Point2 = geometry::Point2<f64>;
pub type Point3 = geometry::Point3<f64>;
pub type Contour = smear::Contour<f64>;
pub type FittedLine = smear::FittedLine<f64>;
pub type DirectionEstimate = smear::DirectionEstimate<f64>;
pub type EvaluationReport = smear::EvaluationReport<f64>;
pub type ScoredSample = smear::ScoredSample<f64>;
pub type SceneMap = mapping::SceneMap<f64>;
pub type MarkerObservation = mapping::MarkerObservation<f64>;
pub type EvidenceItem = mapping::EvidenceItem<f64>;
pub type DistanceReport = mapping::DistanceReport<f64>;
pub type EntryModel = mission::EntryModel<f64>;
pub type Feasibility = mission::Feasibility<f64>;
