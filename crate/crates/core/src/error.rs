use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library reports. The `Display` form always starts with
/// the variant name so command-line output can be matched on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ZeroDimBoundary: the boundary of a 0-chain is not defined")]
    ZeroDimBoundary,
    #[error("NotACycle: {0}")]
    NotACycle(String),
    #[error("NonGenericRadius: vertex {0} lies on the level set")]
    NonGenericRadius(String),
    #[error("NotCellular: {0}")]
    NotCellular(String),
    #[error("DimensionOutOfRange: dimension {k} outside 0..={top}")]
    DimensionOutOfRange { k: usize, top: usize },
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    #[error("SubNotContained: cell {0} of the subcomplex is not in the ambient complex")]
    SubNotContained(String),
    #[error("NotFaceClosed: face {0} is missing")]
    NotFaceClosed(String),
    #[error("ArityMismatch: expected {expected} coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("EmptyBBox: bounding box has no volume")]
    EmptyBBox,
    #[error("BBoxOverflow: thickening leaves the bounding box")]
    BBoxOverflow,
    #[error("EmptySet: the rasterized set is empty")]
    EmptySet,
    #[error("CenterSingularity: point coincides with a face center")]
    CenterSingularity,
    #[error("OutsideCube: point does not lie in the closed cube")]
    OutsideCube,
    #[error("OffsetSearchExhausted: no admissible offset after {0} attempts")]
    OffsetSearchExhausted(usize),
    #[error("OffsetConflict: support cell {0} meets the dual skeleton")]
    OffsetConflict(String),
    #[error("NotSubcomplex: {0}")]
    NotSubcomplex(String),
    #[error("NotFull: subcomplex is not full")]
    NotFull,
    #[error("NotSimplicial: operation requires a simplicial complex")]
    NotSimplicial,
    #[error("NotCubical: operation requires a cubical complex")]
    NotCubical,
    #[error("OutsideNeighborhood: point has zero barycentric mass on the subcomplex")]
    OutsideNeighborhood,
    #[error("SupportEscapesNeighborhood: cell {0} is outside the regular neighborhood")]
    SupportEscapesNeighborhood(String),
    #[error("SubdivisionCapExceeded: no simplicial approximation within {0} subdivisions")]
    SubdivisionCapExceeded(usize),
    #[error("DegenerateSimplex: vertices of {0} are affinely dependent")]
    DegenerateSimplex(String),
    #[error("IrrationalVolume: volume of {0} is not rational")]
    IrrationalVolume(String),
    #[error("SolverLimit: node budget of {budget} exhausted (incumbent mass {incumbent})")]
    SolverLimit { budget: usize, incumbent: String },
    #[error("Infeasible: {0}")]
    Infeasible(String),
    #[error("Parse: line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// Variant name, e.g. `"NotACycle"`.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroDimBoundary => "ZeroDimBoundary",
            Error::NotACycle(_) => "NotACycle",
            Error::NonGenericRadius(_) => "NonGenericRadius",
            Error::NotCellular(_) => "NotCellular",
            Error::DimensionOutOfRange { .. } => "DimensionOutOfRange",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::SubNotContained(_) => "SubNotContained",
            Error::NotFaceClosed(_) => "NotFaceClosed",
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::EmptyBBox => "EmptyBBox",
            Error::BBoxOverflow => "BBoxOverflow",
            Error::EmptySet => "EmptySet",
            Error::CenterSingularity => "CenterSingularity",
            Error::OutsideCube => "OutsideCube",
            Error::OffsetSearchExhausted(_) => "OffsetSearchExhausted",
            Error::OffsetConflict(_) => "OffsetConflict",
            Error::NotSubcomplex(_) => "NotSubcomplex",
            Error::NotFull => "NotFull",
            Error::NotSimplicial => "NotSimplicial",
            Error::NotCubical => "NotCubical",
            Error::OutsideNeighborhood => "OutsideNeighborhood",
            Error::SupportEscapesNeighborhood(_) => "SupportEscapesNeighborhood",
            Error::SubdivisionCapExceeded(_) => "SubdivisionCapExceeded",
            Error::DegenerateSimplex(_) => "DegenerateSimplex",
            Error::IrrationalVolume(_) => "IrrationalVolume",
            Error::SolverLimit { .. } => "SolverLimit",
            Error::Infeasible(_) => "Infeasible",
            Error::Parse { .. } => "Parse",
        }
    }
}
