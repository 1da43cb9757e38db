use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::MarkerObservation;
use crate::defaults::defaults;
use crate::scalar::{wrap_degrees, Real};

/// Gaussian bearing error and multiplicative Gaussian range error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ObservationNoise {
    pub bearing_sigma_deg: f64,
    pub range_sigma_frac: f64,
}

impl Default for ObservationNoise {
    fn default() -> Self {
        let d = &defaults().mapping;
        Self { bearing_sigma_deg: d.bearing_sigma_deg, range_sigma_frac: d.range_sigma_frac }
    }
}

impl ObservationNoise {
    pub const NONE: Self = Self { bearing_sigma_deg: 0.0, range_sigma_frac: 0.0 };

    /// Always draws two normals so the stream does not depend on the sigmas.
    pub fn perturb<T: Real, R: Rng + ?Sized>(&self, obs: &MarkerObservation<T>, rng: &mut R) -> MarkerObservation<T> {
        let std = Normal::new(0.0, 1.0).unwrap();
        let zb: f64 = std.sample(rng);
        let zr: f64 = std.sample(rng);
        let bearing = obs.bearing_deg + T::lit(zb * self.bearing_sigma_deg);
        let range = obs.range_m * T::lit((1.0 + zr * self.range_sigma_frac).max(1e-6));
        MarkerObservation { bearing_deg: wrap_degrees(bearing), range_m: range, ..*obs }
    }
}
