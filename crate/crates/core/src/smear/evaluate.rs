use serde::{Deserialize, Serialize};

use super::{angular_error, DirectionLabel, SmearError};
use crate::scalar::Real;

/// One scored prediction. `predicted == None` records a failed analysis,
/// which counts as a wrong label, a wrong line and a 180° error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScoredSample<T> {
    pub predicted: Option<(T, DirectionLabel)>,
    pub truth_deg: T,
    pub truth_label: DirectionLabel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport<T> {
    pub samples: usize,
    pub failures: usize,
    pub label_accuracy: T,
    pub mean_angular_error_deg: T,
    /// Mean error over samples whose label was right; `None` if there were none.
    pub mean_error_correct_deg: Option<T>,
    pub line_of_motion_accuracy: T,
    pub line_tolerance_deg: T,
}

/// Angular error with heading sign ignored, in `[0, 90]`.
pub fn line_of_motion_error<T: Real>(predicted_deg: T, truth_deg: T) -> T {
    let e = angular_error(predicted_deg, truth_deg);
    e.min(T::lit(180.0) - e)
}

pub fn evaluate_dataset<T: Real>(
    samples: &[ScoredSample<T>],
    line_tolerance_deg: T,
) -> Result<EvaluationReport<T>, SmearError> {
    if samples.is_empty() {
        return Err(SmearError::EmptyDataset);
    }
    let n = T::from_usize(samples.len()).unwrap();
    let (mut correct, mut line_ok, mut failures) = (0usize, 0usize, 0usize);
    let mut err_sum = T::zero();
    let mut correct_err_sum = T::zero();
    for s in samples {
        let Some((deg, label)) = s.predicted else {
            failures += 1;
            err_sum = err_sum + T::lit(180.0);
            continue;
        };
        let e = angular_error(deg, s.truth_deg);
        err_sum = err_sum + e;
        if label == s.truth_label {
            correct += 1;
            correct_err_sum = correct_err_sum + e;
        }
        if line_of_motion_error(deg, s.truth_deg) <= line_tolerance_deg {
            line_ok += 1;
        }
    }
    let frac = |k: usize| T::from_usize(k).unwrap() / n;
    Ok(EvaluationReport {
        samples: samples.len(),
        failures,
        label_accuracy: frac(correct),
        mean_angular_error_deg: err_sum / n,
        mean_error_correct_deg: (correct > 0).then(|| correct_err_sum / T::from_usize(correct).unwrap()),
        line_of_motion_accuracy: frac(line_ok),
        line_tolerance_deg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smear::Codebook;

    fn sample(pred: f64, truth: f64) -> ScoredSample<f64> {
        ScoredSample {
            predicted: Some((pred, Codebook::classify(pred))),
            truth_deg: truth,
            truth_label: Codebook::classify(truth),
        }
    }

    #[test]
    fn sixteen_of_twenty() {
        let mut v: Vec<_> = (0..16).map(|i| sample(f64::from(i % 4) * 90.0, f64::from(i % 4) * 90.0)).collect();
        v.extend((0..4).map(|_| sample(180.0, 0.0)));
        let r = evaluate_dataset(&v, 30.0).unwrap();
        assert!((r.label_accuracy - 0.8).abs() < 1e-12);
        assert!((r.mean_angular_error_deg - 36.0).abs() < 1e-12);
        assert_eq!(r.mean_error_correct_deg, Some(0.0));
        assert_eq!(r.line_of_motion_accuracy, 1.0);
    }

    #[test]
    fn perfect_and_reversed() {
        let perfect: Vec<_> = [0.0, 90.0, 180.0, 270.0].iter().map(|&a| sample(a, a)).collect();
        let r = evaluate_dataset(&perfect, 30.0).unwrap();
        assert_eq!((r.label_accuracy, r.mean_angular_error_deg), (1.0, 0.0));

        let reversed: Vec<_> = [0.0, 90.0, 180.0, 270.0].iter().map(|&a| sample(a + 180.0, a)).collect();
        let r = evaluate_dataset(&reversed, 30.0).unwrap();
        assert_eq!(r.label_accuracy, 0.0);
        assert_eq!(r.line_of_motion_accuracy, 1.0);
        assert_eq!(r.mean_error_correct_deg, None);
        assert_eq!(r.mean_angular_error_deg, 180.0);
    }

    #[test]
    fn failures_and_empty() {
        let v =
            [sample(10.0, 0.0), ScoredSample { predicted: None, truth_deg: 0.0, truth_label: DirectionLabel::Right }];
        let r = evaluate_dataset(&v, 30.0).unwrap();
        assert_eq!(r.failures, 1);
        assert_eq!(r.label_accuracy, 0.5);
        assert_eq!(r.mean_angular_error_deg, 95.0);
        assert_eq!(r.line_of_motion_accuracy, 0.5);
        assert_eq!(evaluate_dataset::<f64>(&[], 30.0), Err(SmearError::EmptyDataset));
        assert_eq!(line_of_motion_error(100.0, 270.0), 10.0);
    }
}
