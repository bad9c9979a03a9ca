use thiserror::Error;

use crate::geometry::Point2;
use crate::singularity::QuotientSingularity;

/// Problems reading the JSON interchange formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed rational {0:?}")]
    BadRational(String),
    #[error("rational {0:?} has zero denominator")]
    ZeroDenominator(String),
    #[error("rational {0:?} is not in lowest terms")]
    NotLowestTerms(String),
    #[error("malformed json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        // serde_json wraps our own rational errors; keep the message intact.
        FormatError::Json(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("repeated vertex {0}")]
    RepeatedVertex(Box<Point2>),
    #[error("vertex {0} is collinear with its neighbours")]
    CollinearVertex(Box<Point2>),
    #[error("vertex list is not a convex cycle")]
    NotConvex,
    #[error("polygon is not full dimensional")]
    NotFullDimensional,
    #[error("origin is not in the strict interior")]
    OriginNotInterior,
    #[error("vertex {0} is not integral")]
    NonIntegralVertex(Box<Point2>),
    #[error("vertex {0} is not primitive")]
    NonPrimitiveVertex(Box<Point2>),
    #[error("coordinate of {0} is too large for lattice computations")]
    CoordinateOverflow(Box<Point2>),
    #[error("matrix has determinant {0}, expected +1 or -1")]
    NotUnimodular(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EhrhartError {
    #[error("fitted constituent for class {class} predicts {predicted} at k={k}, counted {counted}")]
    InconsistentFit {
        class: u64,
        k: u64,
        predicted: String,
        counted: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularityError {
    #[error("cone generators {0:?} and {1:?} are linearly dependent")]
    DegenerateCone([i64; 2], [i64; 2]),
    #[error("cone generator {0:?} is not a primitive lattice point")]
    NonPrimitiveGenerator([i64; 2]),
    #[error("residue weight of {0} is not integral")]
    NonIntegralResidue(QuotientSingularity),
    #[error("{0} is not an R-singularity")]
    NotR(QuotientSingularity),
    #[error("order and weight of 1/{0}({1}) are not coprime")]
    NotWellFormed(u64, u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MutationError {
    #[error("covector ({0}, {1}) is not primitive")]
    NonPrimitiveCovector(i64, i64),
    #[error("factor direction ({0}, {1}) is not primitive")]
    NonPrimitiveDirection(i64, i64),
    #[error("factor direction is not orthogonal to the covector")]
    DirectionNotOrthogonal,
    #[error("factor length must be positive")]
    ZeroLength,
    #[error("factor too long at height {0}")]
    FactorTooLong(i64),
    #[error("vertex {1:?} at height {0} is not covered by the factor witness")]
    VertexNotCovered(i64, [i64; 2]),
    #[error("witness has no entry for height {0}")]
    MissingWitness(i64),
    #[error("image under the piecewise map is not convex")]
    NonConvexImage,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CollapseError {
    #[error("2 * leading coefficient {leading} does not match K^2 = {degree}")]
    LeadingCoefficientMismatch { leading: String, degree: String },
    #[error("correction function is not periodic with period {0}")]
    NotPeriodic(u64),
    #[error(transparent)]
    Ehrhart(#[from] EhrhartError),
    #[error(transparent)]
    Singularity(#[from] SingularityError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MarkovError {
    #[error("({0}, {1}, {2}) is not a Markov triple")]
    NotReachable(u64, u64, u64),
    #[error("no mutation of the current triangle reaches ({0}, {1}, {2})")]
    ReplayFailed(u64, u64, u64),
    #[error("Markov number {0} divisible by three")]
    InvariantViolation(u64),
    #[error(transparent)]
    Collapse(#[from] CollapseError),
    #[error(transparent)]
    Mutation(#[from] MutationError),
    #[error(transparent)]
    Ehrhart(#[from] EhrhartError),
    #[error(transparent)]
    Singularity(#[from] SingularityError),
}

/// Crate-wide error, used by the CLI and FFI layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Ehrhart(#[from] EhrhartError),
    #[error(transparent)]
    Singularity(#[from] SingularityError),
    #[error(transparent)]
    Mutation(#[from] MutationError),
    #[error(transparent)]
    Collapse(#[from] CollapseError),
    #[error(transparent)]
    Markov(#[from] MarkovError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
