//! Error types for every pipeline stage.

use thiserror::Error;

/// Input could not be turned into a valid abstract description.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("no sets declared")]
    NoSets,
    #[error("no zones listed")]
    NoZones,
    #[error("too many sets ({0}); at most 32 are supported")]
    TooManySets(usize),
    #[error("invalid set name {0:?}")]
    InvalidSetName(String),
    #[error("duplicate set name {0:?}")]
    DuplicateSetName(String),
    #[error("set code {0:?} is shared by several sets; use the structured format")]
    AmbiguousSetCode(char),
    #[error("duplicate zone {0:?}")]
    DuplicateZone(String),
    #[error("unknown set label {0:?}")]
    UnknownSetLabel(String),
    #[error("zone {0:?} names a set twice")]
    InvalidZone(String),
    #[error("the empty zone is missing")]
    MissingEmptyZone,
    #[error("set {0:?} does not appear in any zone")]
    UnusedSet(String),
    #[error("syntax error: {0}")]
    Syntax(String),
}

/// The dual cannot be constructed for this description.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    /// The super dual over the zones is disconnected.
    #[error("description is disconnected: {0}")]
    DisconnectedDescription(String),
    /// A zone cannot be attached to any lower-rank zone.
    #[error("zone {0} cannot be linked to a lower-rank zone")]
    UnlinkedZone(String),
    /// Insertion order reached a node before any of its parents.
    #[error("no parent of zone {0} has been placed")]
    NoParentPlaced(String),
    /// Requested Venn size outside the supported range.
    #[error("venn size {0} out of range 1..=8")]
    VennOutOfRange(usize),
}

/// A set curve could not be traced through the dual.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RenderError {
    #[error("curve for set {0} does not close")]
    OpenPath(String),
    #[error("dual is inconsistent: {0}")]
    InconsistentDual(String),
}

/// Geometric arrangement could not be extracted.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("numeric degeneracy in arrangement: {0}")]
    Degenerate(String),
}

/// Any failure of the end-to-end pipeline.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PipelineError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Render(#[from] RenderError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}
