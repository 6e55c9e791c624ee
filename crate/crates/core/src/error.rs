use thiserror::Error;

use crate::foldable::OddCycle;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point {index} has {found} coordinates, expected {expected}")]
    PointDimension {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("points {first} and {second} coincide")]
    RepeatedPoint { first: usize, second: usize },
    #[error("ambient dimension must be positive")]
    ZeroDimension,
    #[error("{what}: expected length {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("convex hull is not full-dimensional")]
    NonFullDimensional,
    #[error("dimension {0} is not supported by this operation")]
    UnsupportedDimension(usize),
    #[error("cell {0:?} is not a simplex; the lifting is not generic")]
    NonSimplicialCell(Vec<usize>),
    #[error("facet {facet:?} is invalid: {reason}")]
    InvalidFacet { facet: Vec<usize>, reason: String },
    #[error("simplicial complex has no facets")]
    EmptyComplex,
    #[error("complex is not foldable (odd dual cycle {:?})", .0.facets)]
    NotFoldable(OddCycle),
    #[error("vertex {vertex} cannot be colored consistently")]
    ColoringConflict { vertex: usize },
    #[error("dual graph of the complex is disconnected")]
    DisconnectedComplex,
    #[error("point {0} is not a vertex of any facet, so it has no color")]
    UncoloredPoint(usize),
    #[error("coloring uses {found} colors, expected {expected}")]
    ColorCount { expected: usize, found: usize },
    #[error("negative exponent {value} at point {index}")]
    NegativeExponent { index: usize, value: i64 },
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomials are over different variable lists")]
    VariableMismatch,
    #[error("polynomial system is empty")]
    EmptySystem,
    #[error("system is not square: {polys} polynomials in {vars} variables")]
    NotSquare { polys: usize, vars: usize },
    #[error("polynomial {0} has total degree zero")]
    ZeroDegreePolynomial(usize),
    #[error("coefficient is not finite in double precision")]
    NonFiniteCoefficient,
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("invalid tracker settings: {0}")]
    Settings(String),
    #[error("plot window is degenerate")]
    BadWindow,
}

impl From<OddCycle> for Error {
    fn from(cycle: OddCycle) -> Self {
        Error::NotFoldable(cycle)
    }
}
