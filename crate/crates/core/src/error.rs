use thiserror::Error;

/// Errors shared across the crate. Checks that report rather than fail
/// (polyhedrality, template validation) return report types instead.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge {{{0}, {1}}} occurs in more than two face cycles")]
    EdgeUsedThrice(usize, usize),
    #[error("degenerate face cycle: {0}")]
    DegenerateFace(String),
    #[error("vertex ids must be 0..n without gaps (got {0})")]
    InvalidVertexIds(String),
    #[error("operation requires a closed map, but the map has boundary")]
    BoundaryNotSupported,
    #[error("vertex {0} lies on the boundary")]
    BoundaryVertex(usize),
    #[error("face-size sequence too short (need length >= 3, got {0})")]
    TooShort(usize),
    #[error("map is not polyhedral: {0}")]
    NotPolyhedral(String),
    #[error("unknown tiling id: {0}")]
    UnknownTiling(String),
    #[error("no polyhedral quotient found up to index {0}")]
    SearchBudgetExceeded(usize),
    #[error("map has no face of size {0}")]
    NoSuchFaceSize(usize),
    #[error("map type {found} does not match required type {required}")]
    WrongType { required: String, found: String },
    #[error("growth stuck: boundary vertex {0} admits no consistent completion")]
    GrowthStuck(usize),
    #[error("boundary parameter l={l} outside window [{lo}, {hi}]")]
    RangeViolation { l: i64, lo: i64, hi: i64 },
    #[error("marked subset requires a host generated from the triangular tiling: {0}")]
    WrongHost(String),
    #[error("subset does not satisfy the unique-neighbour property")]
    PropertyFails,
    #[error("invalid sublattice basis: {0}")]
    InvalidBasis(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
