use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Mission(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Mission(_) => 3,
        }
    }

    pub fn data(msg: impl std::fmt::Display) -> Self {
        CliError::Data(msg.to_string())
    }

    /// Maps an I/O error on `what` to a data error.
    pub fn io(what: impl AsRef<Path>) -> impl FnOnce(std::io::Error) -> CliError {
        let what = what.as_ref().display().to_string();
        move |e| CliError::Data(format!("{what}: {e}"))
    }
}

impl From<dronecsa::mission::MissionError> for CliError {
    fn from(e: dronecsa::mission::MissionError) -> Self {
        use dronecsa::mission::MissionError as M;
        match e {
            M::InvalidScene(_) | M::InvalidConfig(_) => CliError::Data(e.to_string()),
            M::MappingFailed | M::NotEnoughMarkers(_) | M::Mapping(_) => CliError::Mission(e.to_string()),
        }
    }
}
