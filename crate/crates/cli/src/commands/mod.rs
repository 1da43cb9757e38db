mod entry;
mod mission;
mod scene;
mod smear;

use std::io::Write;
use std::path::Path;

pub use entry::EntrySimConfig;
pub use mission::RunMissionConfig;
pub use scene::{GenSceneConfig, ScenePreset};
pub use smear::{AnalyzeConfig, EvaluateConfig, GenSmearConfig, SmearJob};

use crate::error::CliError;
use crate::manifest::{Invocation, Outputs};

/// Writes to stdout never fail a command's data semantics, so they map to
/// a data error only when the stream itself breaks.
pub(crate) fn say(out: &mut dyn Write, text: impl std::fmt::Display) -> Result<(), CliError> {
    writeln!(out, "{text}").map_err(CliError::io("stdout"))
}

/// Runs a resolved invocation. Outputs and the manifest go under `out_dir`
/// when given. A command may finish its outputs and still fail, which is
/// reported after the manifest is written.
pub fn execute(invocation: &Invocation, out_dir: Option<&Path>, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut outputs = Outputs::new(out_dir)?;
    let late_failure = match invocation {
        Invocation::GenSmear(c) => smear::gen_smear(c, &mut outputs, stdout)?,
        Invocation::AnalyzeSmear(c) => smear::analyze(c, &mut outputs, stdout)?,
        Invocation::Evaluate(c) => smear::evaluate(c, &mut outputs, stdout)?,
        Invocation::GenScene(c) => scene::gen_scene(c, &mut outputs, stdout)?,
        Invocation::RunMission(c) => mission::run(c, &mut outputs, stdout)?,
        Invocation::EntrySim(c) => entry::run(c, &mut outputs, stdout)?,
    };
    outputs.finish(invocation)?;
    late_failure.map_or(Ok(()), Err)
}
