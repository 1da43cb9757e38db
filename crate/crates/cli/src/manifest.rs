use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::commands::{
    AnalyzeConfig, EntrySimConfig, EvaluateConfig, GenSceneConfig, GenSmearConfig, RunMissionConfig,
};
use crate::error::CliError;
use crate::settings::load_document;

pub const MANIFEST_FILE: &str = "manifest.json";

/// A fully resolved command: everything needed to reproduce its outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", content = "config", rename_all = "kebab-case")]
#[allow(clippy::large_enum_variant)]
pub enum Invocation {
    GenSmear(GenSmearConfig),
    AnalyzeSmear(AnalyzeConfig),
    Evaluate(EvaluateConfig),
    GenScene(GenSceneConfig),
    RunMission(RunMissionConfig),
    EntrySim(EntrySimConfig),
}

impl Invocation {
    pub fn seed(&self) -> Option<u64> {
        match self {
            Invocation::GenSmear(c) => Some(c.seed()),
            Invocation::GenScene(c) => c.seed(),
            Invocation::RunMission(c) => Some(c.mission.seed),
            Invocation::EntrySim(c) => Some(c.seed),
            Invocation::AnalyzeSmear(_) | Invocation::Evaluate(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    /// Relative to the output directory, `/`-separated.
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub tool_version: String,
    #[serde(flatten)]
    pub invocation: Invocation,
    pub seed: Option<u64>,
    pub outputs: Vec<OutputRecord>,
}

impl RunManifest {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        load_document(path)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("serializable output");
    bytes.push(b'\n');
    bytes
}

/// Output directory that records every file it writes. Without a root
/// nothing is written.
pub struct Outputs {
    root: Option<PathBuf>,
    records: Vec<OutputRecord>,
}

impl Outputs {
    pub fn new(root: Option<&Path>) -> Result<Self, CliError> {
        if let Some(r) = root {
            std::fs::create_dir_all(r).map_err(CliError::io(r))?;
        }
        Ok(Self { root: root.map(Path::to_path_buf), records: Vec::new() })
    }

    pub fn write(&mut self, rel: &str, bytes: &[u8]) -> Result<(), CliError> {
        let Some(root) = &self.root else {
            return Ok(());
        };
        let path = root.join(rel);
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent).map_err(CliError::io(parent))?;
        }
        std::fs::write(&path, bytes).map_err(CliError::io(&path))?;
        self.records.push(OutputRecord { path: rel.to_string(), sha256: sha256_hex(bytes), bytes: bytes.len() as u64 });
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, rel: &str, value: &T) -> Result<(), CliError> {
        self.write(rel, &to_json_pretty(value))
    }

    /// Writes the manifest next to the outputs.
    pub fn finish(self, invocation: &Invocation) -> Result<(), CliError> {
        let Some(root) = &self.root else {
            return Ok(());
        };
        let manifest = RunManifest {
            tool: "dronecsa".into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            invocation: invocation.clone(),
            seed: invocation.seed(),
            outputs: self.records,
        };
        let path = root.join(MANIFEST_FILE);
        std::fs::write(&path, to_json_pretty(&manifest)).map_err(CliError::io(&path))
    }
}
