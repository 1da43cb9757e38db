use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dronecsa::mission::MissionConfig;
use dronecsa::raster::dataset::{sample_spec, SampleKind, FRAME_HEIGHT, FRAME_WIDTH};
use dronecsa::raster::{Continuity, StampShape};
use dronecsa::smear::{AnalyzerConfig, HueRange};

use crate::commands::{
    AnalyzeConfig, EntrySimConfig, EvaluateConfig, GenSceneConfig, GenSmearConfig, RunMissionConfig, ScenePreset,
    SmearJob,
};
use crate::error::CliError;
use crate::manifest::Invocation;
use crate::settings::{load_document, AnalyzerSettings, ConfigDocument, SmearSettings};

#[derive(Debug, Parser)]
#[command(name = "dronecsa", version, about = "Nano-drone crime-scene simulator and transfer-stain analyzer")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render a synthetic transfer stain (or the 20-sample dataset) as PPM with truth sidecars.
    GenSmear(GenSmearArgs),
    /// Infer motion direction for PPM images or directories of them.
    AnalyzeSmear(AnalyzeArgs),
    /// Score the analyzer against a dataset manifest.
    Evaluate(EvaluateArgs),
    /// Write a ground-truth scene file.
    GenScene(GenSceneArgs),
    /// Fly the mapping and evidence passes and report pairwise distances.
    RunMission(RunMissionArgs),
    /// Window-entry feasibility and Monte-Carlo approach trials.
    EntrySim(EntrySimArgs),
    /// Re-run the invocation recorded in a manifest.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StampArg {
    Hand,
    Shoe,
    Blob,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ContinuityArg {
    Legato,
    Staccato,
}

#[derive(Debug, Args)]
pub struct GenSmearArgs {
    /// Stroke settings file (JSON or TOML); flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub stamp: Option<StampArg>,
    #[arg(long, value_enum)]
    pub continuity: Option<ContinuityArg>,
    /// Staccato contact spacing, pixels.
    #[arg(long)]
    pub interval: Option<f64>,
    /// Motion direction, degrees counter-clockwise from +x.
    #[arg(long, allow_hyphen_values = true)]
    pub direction: Option<f64>,
    #[arg(long)]
    pub depletion: Option<f64>,
    /// Stroke travel, pixels.
    #[arg(long)]
    pub length: Option<f64>,
    /// Footprint length, pixels.
    #[arg(long)]
    pub stamp_size: Option<f64>,
    /// Stroke start as X,Y image pixels; centered by default.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub start: Option<[f64; 2]>,
    #[arg(long)]
    pub width: Option<usize>,
    #[arg(long)]
    pub height: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Generate the 20-sample dataset instead of a single stroke.
    #[arg(long)]
    pub dataset: bool,
    /// Output file stem for a single stroke.
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long, default_value = ".")]
    pub out: Option<PathBuf>,
}

impl GenSmearArgs {
    pub fn resolve(&self) -> Result<Invocation, CliError> {
        let file: SmearSettings = match &self.config {
            Some(p) => load_document(p)?,
            None => SmearSettings::default(),
        };
        let seed = self.seed.or(file.seed).unwrap_or(0);
        if self.dataset || file.dataset.unwrap_or(false) {
            return Ok(Invocation::GenSmear(GenSmearConfig { job: SmearJob::Dataset { seed } }));
        }
        let stamp = self.stamp.or(file.stamp).unwrap_or(StampArg::Hand);
        let default_continuity = if stamp == StampArg::Blob { ContinuityArg::Legato } else { ContinuityArg::Staccato };
        let continuity = self.continuity.or(file.continuity).unwrap_or(default_continuity);
        let kind = match (stamp, continuity) {
            (StampArg::Hand, ContinuityArg::Staccato) => SampleKind::HandStaccato,
            (StampArg::Hand, ContinuityArg::Legato) => SampleKind::HandLegato,
            (StampArg::Shoe, _) => SampleKind::ShoeStaccato,
            (StampArg::Blob, _) => SampleKind::Blob,
        };
        let direction = self.direction.or(file.direction_deg).unwrap_or(0.0);
        let default_depletion = if kind.is_directional() { 0.4 } else { 0.0 };
        let depletion = self.depletion.or(file.depletion).unwrap_or(default_depletion);
        let mut spec = sample_spec(kind, direction, depletion, seed);
        spec.stamp = match stamp {
            StampArg::Hand => StampShape::Hand,
            StampArg::Shoe => StampShape::Shoe,
            StampArg::Blob => StampShape::Blob,
        };
        if let Some(v) = self.length.or(file.length) {
            spec.length = v;
        }
        if let Some(v) = self.stamp_size.or(file.stamp_size) {
            spec.stamp_size = v;
        }
        let preset_interval = match spec.continuity {
            Continuity::Staccato { interval } => interval,
            Continuity::Legato => 0.9 * spec.stamp_size,
        };
        spec.continuity = match continuity {
            ContinuityArg::Legato => Continuity::Legato,
            ContinuityArg::Staccato => {
                Continuity::Staccato { interval: self.interval.or(file.interval).unwrap_or(preset_interval) }
            }
        };
        let width = self.width.or(file.width).unwrap_or(FRAME_WIDTH);
        let height = self.height.or(file.height).unwrap_or(FRAME_HEIGHT);
        let start = match (&self.start, file.start) {
            (Some(v), _) => *v,
            (None, Some(s)) => s,
            (None, None) => {
                let r = direction.to_radians();
                [width as f64 / 2.0 - r.cos() * spec.length / 2.0, height as f64 / 2.0 + r.sin() * spec.length / 2.0]
            }
        };
        spec.start = start;
        let name = self.name.clone().or(file.name).unwrap_or_else(|| "smear".into());
        if name.is_empty() || name.contains(['/', '\\']) {
            return Err(CliError::Usage(format!("invalid output name {name:?}")));
        }
        Ok(Invocation::GenSmear(GenSmearConfig { job: SmearJob::Single { name, width, height, spec } }))
    }
}

#[derive(Debug, Args)]
pub struct AnalyzerFlags {
    /// Analyzer settings file (JSON or TOML); flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Red hue interval LOW:HIGH in degrees; repeat for several.
    #[arg(long = "hue-range", value_parser = parse_hue_range)]
    pub hue_ranges: Vec<HueRange>,
    #[arg(long)]
    pub min_saturation: Option<f64>,
    #[arg(long)]
    pub min_value: Option<f64>,
    #[arg(long)]
    pub min_area_fraction: Option<f64>,
    #[arg(long)]
    pub ambiguity_fraction: Option<f64>,
    #[arg(long)]
    pub line_tolerance: Option<f64>,
}

fn parse_point(s: &str) -> Result<[f64; 2], String> {
    let (x, y) = s.split_once(',').ok_or("expected X,Y")?;
    let parse = |v: &str| v.trim().parse::<f64>().map_err(|e| e.to_string());
    Ok([parse(x)?, parse(y)?])
}

fn parse_hue_range(s: &str) -> Result<HueRange, String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LOW:HIGH")?;
    let parse = |v: &str| v.trim().parse::<f64>().map_err(|e| e.to_string());
    let range = HueRange { low: parse(lo)?, high: parse(hi)? };
    if !(0.0..=360.0).contains(&range.low) || !(0.0..=360.0).contains(&range.high) {
        return Err("hues must lie in [0, 360]".into());
    }
    Ok(range)
}

impl AnalyzerFlags {
    pub fn resolve(&self) -> Result<AnalyzerConfig, CliError> {
        let file: AnalyzerSettings = match &self.config {
            Some(p) => load_document(p)?,
            None => AnalyzerSettings::default(),
        };
        let mut cfg = AnalyzerConfig::default();
        if !self.hue_ranges.is_empty() {
            cfg.hue.ranges = self.hue_ranges.clone();
        } else if let Some(r) = file.hue_ranges {
            cfg.hue.ranges = r;
        }
        cfg.hue.min_saturation = self.min_saturation.or(file.min_saturation).unwrap_or(cfg.hue.min_saturation);
        cfg.hue.min_value = self.min_value.or(file.min_value).unwrap_or(cfg.hue.min_value);
        cfg.min_area_fraction = self.min_area_fraction.or(file.min_area_fraction).unwrap_or(cfg.min_area_fraction);
        cfg.ambiguity_fraction = self.ambiguity_fraction.or(file.ambiguity_fraction).unwrap_or(cfg.ambiguity_fraction);
        cfg.line_tolerance_deg = self.line_tolerance.or(file.line_tolerance_deg).unwrap_or(cfg.line_tolerance_deg);
        let unit = |v: f64| (0.0..=1.0).contains(&v);
        if !unit(cfg.hue.min_saturation)
            || !unit(cfg.hue.min_value)
            || !unit(cfg.min_area_fraction)
            || !unit(cfg.ambiguity_fraction)
        {
            return Err(CliError::data("saturation, value and fractions must lie in [0, 1]"));
        }
        if !(0.0..=90.0).contains(&cfg.line_tolerance_deg) {
            return Err(CliError::data("line tolerance must lie in [0, 90] degrees"));
        }
        if cfg.hue.ranges.is_empty() {
            return Err(CliError::data("at least one hue range is required"));
        }
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// PPM files or directories, searched recursively.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    #[command(flatten)]
    pub analyzer: AnalyzerFlags,
    /// Also write analysis.json and a manifest here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl AnalyzeArgs {
    pub fn resolve(&self) -> Result<Invocation, CliError> {
        Ok(Invocation::AnalyzeSmear(AnalyzeConfig { inputs: self.inputs.clone(), analyzer: self.analyzer.resolve()? }))
    }
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Dataset manifest written by `gen-smear --dataset`.
    pub dataset: PathBuf,
    #[command(flatten)]
    pub analyzer: AnalyzerFlags,
    /// Also write evaluation.json and a manifest here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl EvaluateArgs {
    pub fn resolve(&self) -> Result<Invocation, CliError> {
        Ok(Invocation::Evaluate(EvaluateConfig { dataset: self.dataset.clone(), analyzer: self.analyzer.resolve()? }))
    }
}

#[derive(Debug, Args)]
pub struct GenSceneArgs {
    /// Random room from this seed; the bundled demo room otherwise.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Side of the square room, meters (random rooms only).
    #[arg(long, requires = "seed")]
    pub room_size: Option<f64>,
    /// Number of evidence items (random rooms only).
    #[arg(long, requires = "seed")]
    pub items: Option<usize>,
    #[arg(long, default_value = ".")]
    pub out: Option<PathBuf>,
}

impl GenSceneArgs {
    pub fn resolve(&self) -> Result<Invocation, CliError> {
        let preset = match self.seed {
            None => ScenePreset::Demo,
            Some(seed) => {
                let room_size_m = self.room_size.unwrap_or(2.0);
                let items = self.items.unwrap_or(3);
                if !(room_size_m.is_finite() && room_size_m >= 1.0) {
                    return Err(CliError::data("room size must be at least 1 m"));
                }
                ScenePreset::Random { seed, room_size_m, items }
            }
        };
        Ok(Invocation::GenScene(GenSceneConfig { preset }))
    }
}

#[derive(Debug, Args)]
pub struct RunMissionArgs {
    /// Mission document (JSON or TOML); flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Scene file; overrides the document's `scene`. Defaults to the demo room.
    #[arg(long)]
    pub scene: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Zero sensing noise and a perfect detector, before other flags apply.
    #[arg(long)]
    pub noiseless: bool,
    #[arg(long)]
    pub bearing_sigma: Option<f64>,
    #[arg(long)]
    pub range_sigma: Option<f64>,
    #[arg(long)]
    pub miss_rate: Option<f64>,
    #[arg(long)]
    pub false_positive_rate: Option<f64>,
    #[arg(long)]
    pub pixel_noise: Option<f64>,
    #[arg(long)]
    pub localization_sigma: Option<f64>,
    #[arg(long)]
    pub gain: Option<f64>,
    #[arg(long)]
    pub convergence_px: Option<f64>,
    #[arg(long)]
    pub max_iterations: Option<u32>,
    /// Battery per pass, seconds.
    #[arg(long)]
    pub pass_budget: Option<f64>,
    #[arg(long, default_value = ".")]
    pub out: Option<PathBuf>,
}

impl RunMissionArgs {
    pub fn resolve(&self) -> Result<Invocation, CliError> {
        let doc = match &self.config {
            Some(p) => ConfigDocument::load(p)?,
            None => ConfigDocument::default(),
        };
        let scene = match &self.scene {
            Some(p) => load_document(p)?,
            None => doc.load_scene()?,
        };
        let mut m = doc.mission_config();
        if self.noiseless {
            m = MissionConfig { seed: m.seed, servo: m.servo, entry: m.entry, ..MissionConfig::noiseless(m.seed) };
        }
        set(&mut m.seed, self.seed);
        set(&mut m.noise.bearing_sigma_deg, self.bearing_sigma);
        set(&mut m.noise.range_sigma_frac, self.range_sigma);
        set(&mut m.detector.miss_rate, self.miss_rate);
        set(&mut m.detector.false_positive_rate, self.false_positive_rate);
        set(&mut m.detector.pixel_noise_sigma, self.pixel_noise);
        set(&mut m.flight.localization_sigma_m, self.localization_sigma);
        set(&mut m.servo.gain, self.gain);
        set(&mut m.servo.convergence_px, self.convergence_px);
        set(&mut m.servo.max_iterations, self.max_iterations);
        set(&mut m.flight.pass_budget_s, self.pass_budget);
        if !(m.noise.bearing_sigma_deg >= 0.0 && m.noise.range_sigma_frac >= 0.0) {
            return Err(CliError::data("observation noise sigmas must be non-negative"));
        }
        Ok(Invocation::RunMission(RunMissionConfig { scene, mission: m }))
    }
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

#[derive(Debug, Args)]
pub struct EntrySimArgs {
    /// Mission document (JSON or TOML); only `entry`, `trials` and `seed` are read.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Drone mass, kg.
    #[arg(long)]
    pub mass: Option<f64>,
    /// Forward acceleration, m/s².
    #[arg(long)]
    pub accel: Option<f64>,
    /// Window width from hinge to free edge, meters.
    #[arg(long)]
    pub width: Option<f64>,
    /// Opening force needed at the free edge, newtons.
    #[arg(long)]
    pub force: Option<f64>,
    /// Contact-point scatter, meters.
    #[arg(long)]
    pub aim_noise: Option<f64>,
    #[arg(long)]
    pub knockaway_midpoint: Option<f64>,
    #[arg(long)]
    pub knockaway_slope: Option<f64>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Bisect the aim noise that reaches this success rate.
    #[arg(long)]
    pub calibrate: Option<f64>,
    /// Also write entry.json and a manifest here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl EntrySimArgs {
    pub fn resolve(&self) -> Result<Invocation, CliError> {
        let doc = match &self.config {
            Some(p) => ConfigDocument::load(p)?,
            None => ConfigDocument::default(),
        };
        let mut model = doc.entry.unwrap_or_default();
        set(&mut model.drone_mass_kg, self.mass);
        set(&mut model.accel_m_s2, self.accel);
        set(&mut model.window_width_m, self.width);
        set(&mut model.required_force_n, self.force);
        set(&mut model.aim_noise_sigma_m, self.aim_noise);
        set(&mut model.knockaway_midpoint_cm, self.knockaway_midpoint);
        set(&mut model.knockaway_slope_per_cm, self.knockaway_slope);
        model.validate().map_err(CliError::data)?;
        let trials = self.trials.or(doc.trials).unwrap_or(10_000);
        if trials == 0 {
            return Err(CliError::data("at least one trial is required"));
        }
        if let Some(t) = self.calibrate {
            if !(t > 0.0 && t < 1.0) {
                return Err(CliError::data("calibration target must lie in (0, 1)"));
            }
        }
        let seed = self.seed.or(doc.seed).unwrap_or(0);
        Ok(Invocation::EntrySim(EntrySimConfig { model, trials, seed, calibrate_target: self.calibrate }))
    }
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}
