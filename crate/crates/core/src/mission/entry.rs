//! Pushing open a hinged window: thrust versus opening torque, and a
//! Monte-Carlo model of imperfect approach control.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::defaults::defaults;
use crate::scalar::Real;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EntryError {
    #[error("invalid entry model: {0}")]
    InvalidModel(String),
}

/// Casement window hinged at one edge, opened by a push of
/// `required_force_n` at the far edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EntryModel<T> {
    pub drone_mass_kg: T,
    pub accel_m_s2: T,
    pub window_width_m: T,
    pub required_force_n: T,
    /// Contact-point scatter across the panel, meters.
    pub aim_noise_sigma_m: T,
    /// Lateral offset from the midline where knock-away odds reach one half
    /// of their logistic rise, centimeters.
    pub knockaway_midpoint_cm: T,
    pub knockaway_slope_per_cm: T,
}

impl Default for EntryModel<f64> {
    fn default() -> Self {
        let d = &defaults().entry;
        Self {
            drone_mass_kg: d.drone_mass_kg,
            accel_m_s2: d.accel_m_s2,
            window_width_m: d.window_width_m,
            required_force_n: d.required_force_n,
            aim_noise_sigma_m: d.aim_noise_sigma_m,
            knockaway_midpoint_cm: d.knockaway_midpoint_cm,
            knockaway_slope_per_cm: d.knockaway_slope_per_cm,
        }
    }
}

impl<T: Real> EntryModel<T> {
    pub fn validate(&self) -> Result<(), EntryError> {
        let bad = |m: &str| Err(EntryError::InvalidModel(m.to_string()));
        let pos = |v: T| v.is_finite() && v > T::zero();
        let nonneg = |v: T| v.is_finite() && v >= T::zero();
        if !pos(self.drone_mass_kg) || !pos(self.accel_m_s2) || !pos(self.window_width_m) {
            return bad("mass, acceleration and window width must be positive");
        }
        if !nonneg(self.required_force_n) || !nonneg(self.aim_noise_sigma_m) {
            return bad("required force and aim noise must be non-negative");
        }
        if !pos(self.knockaway_slope_per_cm) || !nonneg(self.knockaway_midpoint_cm) {
            return bad("knock-away slope must be positive and midpoint non-negative");
        }
        Ok(())
    }

    pub fn thrust_n(&self) -> T {
        self.drone_mass_kg * self.accel_m_s2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Feasibility<T> {
    pub thrust_n: T,
    pub required_torque_nm: T,
    pub feasible: bool,
}

/// `F = m·a` at the far edge against the torque the window needs.
pub fn entry_feasibility<T: Real>(model: &EntryModel<T>) -> Feasibility<T> {
    let thrust_n = model.thrust_n();
    let required_torque_nm = model.required_force_n * model.window_width_m;
    Feasibility { thrust_n, required_torque_nm, feasible: thrust_n * model.window_width_m >= required_torque_nm }
}

/// Logistic in the lateral offset from the midline, shifted and rescaled
/// so a dead-center push is never knocked away.
pub fn knockaway_probability<T: Real>(model: &EntryModel<T>, offset_cm: T) -> T {
    let sig = |x: T| T::one() / (T::one() + (-x).exp());
    let k = model.knockaway_slope_per_cm;
    let m = model.knockaway_midpoint_cm;
    let base = sig(-k * m);
    let p = (sig(k * (offset_cm.abs() - m)) - base) / (T::one() - base);
    p.max(T::zero()).min(T::one())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntryTrials {
    pub trials: u64,
    pub successes: u64,
    pub insufficient_torque: u64,
    pub knocked_away: u64,
    pub success_rate: f64,
}

/// Each trial aims at the window midline. The contact point misses by a
/// Gaussian draw; a contact off the panel or a knock-away event counts as
/// knocked away, a contact too close to the hinge as insufficient torque.
/// Every trial consumes the same two draws, so runs with equal seeds share
/// random numbers across parameter changes.
pub fn simulate_entry_trials<T: Real>(
    model: &EntryModel<T>,
    n_trials: u64,
    seed: u64,
) -> Result<EntryTrials, EntryError> {
    model.validate()?;
    if n_trials == 0 {
        return Err(EntryError::InvalidModel("at least one trial is required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let std = Normal::new(0.0, 1.0).unwrap();
    let width = model.window_width_m;
    let aim = width / T::lit(2.0);
    let thrust = model.thrust_n();
    let needed = model.required_force_n * width;
    let mut out =
        EntryTrials { trials: n_trials, successes: 0, insufficient_torque: 0, knocked_away: 0, success_rate: 0.0 };
    for _ in 0..n_trials {
        let z: f64 = std.sample(&mut rng);
        let u: f64 = rng.random();
        let contact = aim + model.aim_noise_sigma_m * T::lit(z);
        if contact < T::zero() || contact > width {
            out.knocked_away += 1;
        } else if thrust * contact < needed {
            out.insufficient_torque += 1;
        } else if T::lit(u) < knockaway_probability(model, (contact - aim) * T::lit(100.0)) {
            out.knocked_away += 1;
        } else {
            out.successes += 1;
        }
    }
    out.success_rate = out.successes as f64 / n_trials as f64;
    Ok(out)
}

/// Bisects the aim noise that yields `target` success over `n_trials`.
pub fn calibrate_aim_noise(model: &EntryModel<f64>, target: f64, n_trials: u64, seed: u64) -> Result<f64, EntryError> {
    let rate = |sigma: f64| {
        simulate_entry_trials(&EntryModel { aim_noise_sigma_m: sigma, ..*model }, n_trials, seed)
            .map(|t| t.success_rate)
    };
    let (mut lo, mut hi) = (0.0, model.window_width_m);
    if rate(hi)? > target {
        return Err(EntryError::InvalidModel("target success rate unreachable within one window width".into()));
    }
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if rate(mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
