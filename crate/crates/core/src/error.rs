use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("complex has no facets")]
    EmptyFacetList,
    #[error("empty facet")]
    EmptyFacet,
    #[error("vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid dimension parameter {0}")]
    InvalidDimension(usize),
    #[error("{0:?} is not a facet")]
    NotAFacet(Vec<usize>),
    #[error("{0:?} is not a face")]
    NotAFace(Vec<usize>),
    #[error("complex is not pure")]
    NotPure,
    #[error("complex is not a pseudomanifold: {0}")]
    NotPseudomanifold(String),
    #[error("complex is not orientable over this field")]
    NonOrientable,
    #[error("operands live over different coefficient fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("evaluated denominator vanishes")]
    DenominatorVanishes,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("not a linear system of parameters: bracket of facet {0:?} vanishes")]
    NotLsop(Vec<usize>),
    #[error("size-{expected} subset {got:?} is a facet; punctured system is not a parameter system")]
    PuncturedAtFacet { expected: usize, got: Vec<usize> },
    #[error("auxiliary variables did not cancel from a degree value")]
    ExtendedResidue,
    #[error("polynomial is not homogeneous of degree {0}")]
    Inhomogeneous(usize),
    #[error("multiplication by l^(d-2q) is not an isomorphism in degree {0}")]
    LefschetzFailure(usize),
    #[error("power-series precision exhausted")]
    PrecisionExhausted,
    #[error("operation requires {0}")]
    Unsupported(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("symbolic size budget exceeded ({0} terms)")]
    Budget(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
