//! Crate-wide error type. Constructors validate their defining constraints
//! and refuse to build ill-formed values, so downstream code can assume every
//! `StateVector`, `ModeUnitary` or parameter set it holds is consistent.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("mode count must be positive")]
    EmptyModeList,

    #[error("mode count mismatch: expected {expected}, found {found}")]
    ModeCountMismatch { expected: usize, found: usize },

    #[error("occupation list has {found} entries, expected {expected}")]
    OccupationLength { expected: usize, found: usize },

    #[error("mode index {mode} out of range for {mode_count} modes")]
    ModeOutOfRange { mode: usize, mode_count: usize },

    #[error("mode index {mode} listed twice")]
    DuplicateMode { mode: usize },

    #[error("partial trace must keep at least one mode and discard at least one")]
    InvalidTraceSubset,

    #[error("mode {mode} is not among the kept modes of this reduced state")]
    UnknownKeptMode { mode: usize },

    #[error("matrix has {rows} rows but row {index} has {cols} entries")]
    NotSquare { rows: usize, index: usize, cols: usize },

    #[error("matrix is not unitary (deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("beam splitter violates {constraint} (deviation {deviation:e})")]
    InvalidBeamSplitter {
        constraint: &'static str,
        deviation: f64,
    },

    #[error("parameter {name} = {value} lies outside [0, 1]")]
    ParameterOutOfRange { name: &'static str, value: f64 },

    #[error("phase must be finite, got {value}")]
    NonFinitePhase { value: f64 },

    #[error("state mixes several total photon numbers")]
    MixedPhotonNumber,

    #[error("expected a two-photon state, found total photon number {found}")]
    UnsupportedPhotonNumber { found: u32 },

    #[error("unknown detector label {found}, expected 4, 5, 6 or 7")]
    InvalidDetectorLabel { found: u8 },

    #[error("coincidence detectors must be distinct, got D{0} twice")]
    DuplicateDetector(u8),

    #[error("need at least {required} samples, found {found}")]
    InsufficientSamples { required: usize, found: usize },

    #[error("fringe contrast is undefined for an all-zero curve")]
    UndefinedContrast,

    #[error("sample contains a non-finite value")]
    NonFiniteSample,

    #[error("grid must not be empty")]
    EmptyGrid,
}
