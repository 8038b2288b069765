use perfmatch::{ClaimError, CountError, RegionError, SpectraError, TransferError};
use thiserror::Error;

/// Every failure of the command-line front end. All map to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed region JSON: {0}")]
    MalformedJson(String),
    #[error("unknown region kind '{0}' (expected hexagon, aztec_diamond, aztec_rectangle, aztec_window or hypercube)")]
    UnknownKind(String),
    #[error("missing parameter '{name}' for {kind}")]
    MissingParam { kind: &'static str, name: &'static str },
    #[error("parameter '{name}' for {kind} must be {expected}")]
    BadParam {
        kind: &'static str,
        name: &'static str,
        expected: &'static str,
    },
    #[error("unknown parameter '{name}' for {kind}")]
    UnknownParam { kind: &'static str, name: String },
    #[error("holes are only supported for hexagons, not {0}")]
    HolesNotSupported(&'static str),
    #[error("hole orientation must be \"up\" or \"down\", got \"{0}\"")]
    BadHole(String),
    #[error("edge selector must be 'central' or 'I-J' with vertex indices, got '{0}'")]
    BadEdgeSelector(String),
    #[error("invalid region: {0}")]
    Region(#[from] RegionError),
    #[error("counting failed: {0}")]
    Count(#[from] CountError),
    #[error("transfer failed: {0}")]
    Transfer(#[from] TransferError),
    #[error("spectral computation failed: {0}")]
    Spectra(#[from] SpectraError),
    #[error("claim check failed to run: {0}")]
    Claim(#[from] ClaimError),
    #[error("cannot format output: {0}")]
    Format(String),
}
