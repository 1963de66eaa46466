use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("generator {index} is not a permutation of 0..{degree}")]
    BadPermutation { index: usize, degree: usize },
    #[error("multiplication table is not a group: {0}")]
    BadTable(String),
    #[error("group order {0} exceeds the supported bound of 64")]
    UnsupportedOrder(usize),
    #[error("element set is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("map is not a homomorphism")]
    NotAHomomorphism,
    #[error("homomorphism is not injective")]
    NotInjective,
    #[error("source and target groups do not match for composition")]
    GroupMismatch,
    #[error("no component subgroup designated")]
    MissingComponentSubgroup,
    #[error("component subgroup is not normal")]
    ComponentNotNormal,
    #[error("element index {0} is out of range for group of order {1}")]
    UnknownElement(usize, usize),
    #[error("vertex {vertex} out of range (vertex_count = {count})")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("facet {0} contains a duplicate vertex")]
    DuplicateVertex(usize),
    #[error("generator {index} does not act simplicially: image of simplex {simplex:?} is not in the complex")]
    NotSimplicial { index: usize, simplex: Vec<usize> },
    #[error("vertex maps do not define a group action")]
    NotAnAction,
    #[error("action is still irregular after {0} barycentric subdivisions")]
    RegularizationFailed(usize),
    #[error("operation requires a regular action")]
    IrregularAction,
    #[error("frontier condition fails; closure decomposition refused: {0}")]
    FrontierViolated(String),
    #[error("scenario validation failed at {path}: {message}")]
    Validation { path: String, message: String },
    #[error("unknown builtin example: {0}")]
    UnknownExample(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("scenario parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
