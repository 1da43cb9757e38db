use std::io::Write;
use std::path::{Path, PathBuf};

use dronecsa::raster::dataset::{standard_dataset, SampleKind, FRAME_HEIGHT, FRAME_WIDTH};
use dronecsa::raster::{encode_ppm, generate_smear, read_image, Raster, StrokeSpec};
use dronecsa::smear::{
    evaluate_dataset, AnalyzerConfig, Codebook, DirectionLabel, EvaluationReport, ScoredSample, SmearAnalyzer,
};
use dronecsa::DirectionEstimate;
use serde::{Deserialize, Serialize};
use walkdir::WalkDir;

use super::say;
use crate::error::CliError;
use crate::manifest::{to_json_pretty, Outputs};
use crate::settings::load_document;

pub const DATASET_FILE: &str = "dataset.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSmearConfig {
    pub job: SmearJob,
}

impl GenSmearConfig {
    pub fn seed(&self) -> u64 {
        match &self.job {
            SmearJob::Single { spec, .. } => spec.seed,
            SmearJob::Dataset { seed } => *seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum SmearJob {
    Single { name: String, width: usize, height: usize, spec: StrokeSpec },
    Dataset { seed: u64 },
}

/// Truth sidecar written next to every generated image.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub image: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<SampleKind>,
    pub truth_deg: f64,
    pub truth_label: DirectionLabel,
    pub spec: StrokeSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetEntry {
    /// Relative to the dataset file.
    pub image: String,
    pub truth_deg: f64,
    pub truth_label: DirectionLabel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub samples: Vec<DatasetEntry>,
}

fn truth_of(spec: &StrokeSpec) -> (f64, DirectionLabel) {
    let deg = spec.direction_deg.rem_euclid(360.0);
    (deg, Codebook::classify(deg))
}

fn render(
    name: &str,
    kind: Option<SampleKind>,
    width: usize,
    height: usize,
    spec: &StrokeSpec,
    outputs: &mut Outputs,
) -> Result<DatasetEntry, CliError> {
    let canvas = Raster::white(width, height).map_err(CliError::data)?;
    let image = generate_smear(&canvas, spec).map_err(CliError::data)?;
    let (truth_deg, truth_label) = truth_of(spec);
    let file = format!("{name}.ppm");
    outputs.write(&file, &encode_ppm(&image))?;
    let sidecar = Sidecar { image: file.clone(), kind, truth_deg, truth_label, spec: spec.clone() };
    outputs.write_json(&format!("{name}.json"), &sidecar)?;
    Ok(DatasetEntry { image: file, truth_deg, truth_label })
}

pub fn gen_smear(
    cfg: &GenSmearConfig,
    outputs: &mut Outputs,
    stdout: &mut dyn Write,
) -> Result<Option<CliError>, CliError> {
    match &cfg.job {
        SmearJob::Single { name, width, height, spec } => {
            let e = render(name, None, *width, *height, spec, outputs)?;
            say(stdout, format!("{}  truth {:.1}° {}", e.image, e.truth_deg, e.truth_label))?;
        }
        SmearJob::Dataset { seed } => {
            let mut samples = Vec::new();
            for s in standard_dataset(*seed) {
                let e = render(&s.name, Some(s.kind), FRAME_WIDTH, FRAME_HEIGHT, &s.spec, outputs)?;
                say(stdout, format!("{}  truth {:.1}° {}", e.image, e.truth_deg, e.truth_label))?;
                samples.push(e);
            }
            outputs.write_json(DATASET_FILE, &DatasetManifest { samples })?;
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeConfig {
    pub inputs: Vec<PathBuf>,
    pub analyzer: AnalyzerConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryStatus {
    /// An estimate was produced (possibly flagged ambiguous).
    Ok,
    /// The image decoded but no estimate could be made.
    NoEstimate,
    /// The file could not be read or decoded.
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisEntry {
    pub path: String,
    pub status: EntryStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub red_pixels: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contours: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line_angle_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<DirectionEstimate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truth_deg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truth_label: Option<DirectionLabel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub files: usize,
    pub analyzed: usize,
    pub unreadable: usize,
    pub entries: Vec<AnalysisEntry>,
    /// Scored over entries that have a truth sidecar.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evaluation: Option<EvaluationReport<f64>>,
}

fn is_ppm(p: &Path) -> bool {
    p.extension().is_some_and(|e| e.eq_ignore_ascii_case("ppm"))
}

/// Directories expand to their PPM files in sorted order; other paths are
/// kept as given, in argument order.
fn expand_inputs(inputs: &[PathBuf]) -> Vec<PathBuf> {
    let mut out = Vec::new();
    for input in inputs {
        if input.is_dir() {
            let walk = WalkDir::new(input).sort_by_file_name().into_iter().filter_map(Result::ok);
            out.extend(walk.filter(|e| e.file_type().is_file() && is_ppm(e.path())).map(|e| e.into_path()));
        } else {
            out.push(input.clone());
        }
    }
    out
}

fn read_sidecar(image: &Path) -> Option<Sidecar> {
    let text = std::fs::read_to_string(image.with_extension("json")).ok()?;
    serde_json::from_str(&text).ok()
}

fn analyze_one(analyzer: &SmearAnalyzer, path: &Path) -> AnalysisEntry {
    let mut entry = AnalysisEntry {
        path: path.to_string_lossy().replace('\\', "/"),
        status: EntryStatus::Error,
        red_pixels: None,
        contours: None,
        line_angle_deg: None,
        estimate: None,
        truth_deg: None,
        truth_label: None,
        error: None,
    };
    if let Some(s) = read_sidecar(path) {
        entry.truth_deg = Some(s.truth_deg);
        entry.truth_label = Some(s.truth_label);
    }
    let image = match read_image(path) {
        Ok(img) => img,
        Err(e) => {
            entry.error = Some(e.to_string());
            return entry;
        }
    };
    match analyzer.analyze(&image) {
        Ok(a) => {
            entry.status = EntryStatus::Ok;
            entry.red_pixels = Some(a.red_pixels);
            entry.contours = Some(a.contours);
            entry.line_angle_deg = Some(a.line.angle_deg());
            entry.estimate = Some(a.estimate);
        }
        Err(e) => {
            entry.status = EntryStatus::NoEstimate;
            entry.error = Some(e.to_string());
        }
    }
    entry
}

fn scored(entry: &AnalysisEntry) -> Option<ScoredSample<f64>> {
    Some(ScoredSample {
        predicted: entry.estimate.map(|e| (e.angle_deg, e.label)),
        truth_deg: entry.truth_deg?,
        truth_label: entry.truth_label?,
    })
}

pub fn analyze(
    cfg: &AnalyzeConfig,
    outputs: &mut Outputs,
    stdout: &mut dyn Write,
) -> Result<Option<CliError>, CliError> {
    let files = expand_inputs(&cfg.inputs);
    if files.is_empty() {
        return Err(CliError::data("no PPM images found in the given inputs"));
    }
    let analyzer = SmearAnalyzer::new(cfg.analyzer.clone());
    let entries: Vec<_> = files.iter().map(|p| analyze_one(&analyzer, p)).collect();
    let samples: Vec<_> = entries.iter().filter_map(scored).collect();
    let evaluation = if samples.is_empty() {
        None
    } else {
        Some(evaluate_dataset(&samples, cfg.analyzer.line_tolerance_deg).map_err(CliError::data)?)
    };
    let unreadable = entries.iter().filter(|e| e.status == EntryStatus::Error).count();
    let report = AnalysisReport {
        files: entries.len(),
        analyzed: entries.iter().filter(|e| e.status == EntryStatus::Ok).count(),
        unreadable,
        entries,
        evaluation,
    };
    let bytes = to_json_pretty(&report);
    stdout.write_all(&bytes).map_err(CliError::io("stdout"))?;
    outputs.write("analysis.json", &bytes)?;
    Ok((unreadable == report.files).then(|| CliError::data("no input could be read")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluateConfig {
    pub dataset: PathBuf,
    pub analyzer: AnalyzerConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationOutput {
    pub dataset: String,
    pub report: EvaluationReport<f64>,
    pub samples: Vec<AnalysisEntry>,
}

pub fn evaluate(
    cfg: &EvaluateConfig,
    outputs: &mut Outputs,
    stdout: &mut dyn Write,
) -> Result<Option<CliError>, CliError> {
    let manifest: DatasetManifest = load_document(&cfg.dataset)?;
    if manifest.samples.is_empty() {
        return Err(CliError::data(format!("{}: dataset has no samples", cfg.dataset.display())));
    }
    let base = cfg.dataset.parent().unwrap_or(Path::new(""));
    let analyzer = SmearAnalyzer::new(cfg.analyzer.clone());
    let samples: Vec<_> = manifest
        .samples
        .iter()
        .map(|s| AnalysisEntry {
            path: s.image.clone(),
            truth_deg: Some(s.truth_deg),
            truth_label: Some(s.truth_label),
            ..analyze_one(&analyzer, &base.join(&s.image))
        })
        .collect();
    let scored: Vec<_> = samples.iter().filter_map(scored).collect();
    let report = evaluate_dataset(&scored, cfg.analyzer.line_tolerance_deg).map_err(CliError::data)?;
    let out = EvaluationOutput { dataset: cfg.dataset.to_string_lossy().replace('\\', "/"), report, samples };
    let bytes = to_json_pretty(&out);
    stdout.write_all(&bytes).map_err(CliError::io("stdout"))?;
    outputs.write("evaluation.json", &bytes)?;
    Ok(None)
}
