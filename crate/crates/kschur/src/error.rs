//! Error and anomaly types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong, split into ordinary input/contract errors
/// and [`Anomaly`] conditions.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed partition data (increasing parts, zero parts, ...).
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    /// A cell was addressed outside the shape that owns it.
    #[error("cell ({row},{col}) lies outside the shape {shape}")]
    OutOfShape { row: u32, col: u32, shape: String },

    /// Two partitions were expected to have the same size.
    #[error("size mismatch: |{0}| != |{1}|")]
    SizeMismatch(String, String),

    /// A shape that was required to be a p-core is not one.
    #[error("{shape} is not a {p}-core")]
    InvalidCore { shape: String, p: u32 },

    /// A k-bounded partition was required (first part at most k).
    #[error("partition {shape} violates the bound: first part exceeds k = {k}")]
    BoundViolation { shape: String, k: u32 },

    /// Operands live over different core parameters.
    #[error("core parameter mismatch: p = {0} vs p = {1}")]
    ParameterMismatch(u32, u32),

    /// A skew component is not a ribbon (contains a 2x2 square).
    #[error("skew component is not a ribbon: {0}")]
    NotARibbon(String),

    /// A weight entry is out of range or the weight fails to be a partition.
    #[error("invalid weight: {0}")]
    WeightError(String),

    /// Catch-all for malformed user input (words, flags, JSON payloads).
    #[error("invalid input: {0}")]
    InputError(String),

    /// A matrix handed to the inverter is not unitriangular.
    #[error("matrix structure error: {0}")]
    StructureError(String),

    /// An internal contradiction with the combinatorial model. These are the
    /// conditions the implementation treats as impossible-by-theory; seeing
    /// one means either a bug or a genuine counterexample, so they are kept
    /// distinct from plain input errors.
    #[error("anomaly: {0}")]
    Anomaly(Anomaly),
}

/// Theory-contradiction conditions, surfaced on their own channel (exit
/// code 3 in the CLI) so they are never mistaken for bad input.
#[derive(Debug, Error)]
pub enum Anomaly {
    /// Two distinct saturated chains satisfied the bottom-strip conditions.
    #[error("bottom strong strip admits {count} distinct chains from {nu} to {target}")]
    ChainNotUnique {
        nu: String,
        target: String,
        count: usize,
    },

    /// An E-set seed cell is absent from the available marked cells.
    #[error("E-set seed (1,{col}) for r = {r} is not an available marked cell")]
    SeedMissing { r: u32, col: u32 },

    /// Two candidate cells tie in the E-set minimization.
    #[error("E-set extension for r = {r} at row {row} has a tied minimum")]
    EsetTie { r: u32, row: u32 },

    /// The insertion reading word and the column statistic disagree on charge.
    #[error("charge mismatch for word {r}: insertion gives {insertion}, column statistic gives {column}")]
    ChargeMismatch { r: u32, insertion: u64, column: u64 },

    /// A k-charge came out negative.
    #[error("negative k-charge: {0}")]
    NegativeKCharge(i64),

    /// A k-Kostka matrix failed the unitriangularity requirement.
    #[error("k-Kostka matrix is not unitriangular: {0}")]
    NotUnitriangular(String),

    /// The extension ribbon split left fewer than one appended ribbon cell.
    #[error("extension ribbon split out of range in row {row}: {value}")]
    ExtensionSplit { row: u32, value: i64 },
}

impl Error {
    /// True for the anomaly channel.
    pub fn is_anomaly(&self) -> bool {
        matches!(self, Error::Anomaly(_))
    }
}
