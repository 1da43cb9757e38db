//! Transfer-stain direction inference.
//!
//! segmentation → contours → line fit → direction → codebook label → scoring.
//!
//! Geometry works in the image-plane math frame: `x` is the pixel column and
//! `y = height - 1 - row`, so angles read counter-clockwise with y up.

mod contour;
mod direction;
mod evaluate;
mod line;
mod pipeline;
mod segment;

pub use contour::{extract_contours, Contour, PixelBox, RawMoments};
pub use direction::{angular_error, estimate_direction, Codebook, DirectionEstimate, DirectionLabel};
pub use evaluate::{evaluate_dataset, line_of_motion_error, EvaluationReport, ScoredSample};
pub use line::{fit_line, FittedLine, LineSource};
pub use pipeline::{AnalyzerConfig, SmearAnalysis, SmearAnalyzer};
pub use segment::{segment_red, HueRange, HueRangeSet, Mask};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SmearError {
    #[error("no blood detected")]
    NoBloodDetected,
    #[error("blood extent along the fitted line is {extent:.2} px, need at least 2")]
    InsufficientExtent { extent: f64 },
    #[error("dataset contains no samples")]
    EmptyDataset,
}
