use crate::geom::Geometry;
use thiserror::Error;

/// Crate-wide error type. Variants mirror the failure modes of the
/// individual pipelines so callers can match on them directly.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("matrix shape {rows}x{cols} does not match geometry {geometry:?}")]
    Shape {
        geometry: Geometry,
        rows: usize,
        cols: usize,
    },

    #[error("group element failed validation: {0}")]
    Validation(String),

    #[error("degenerate ray: normalization component vanished under projection")]
    DegenerateRay,

    #[error("singular matrix")]
    SingularMatrix,

    #[error("stereographic projection undefined at the pole")]
    Pole,

    #[error("jet order {requested} unavailable (backing supports order {max})")]
    OrderUnavailable { requested: usize, max: usize },

    #[error("parameter {value} outside usable domain [{min}, {max}]")]
    OutOfDomain { value: f64, min: f64, max: f64 },

    #[error("density vanishes on [{0}, {1}]")]
    DensityVanishes(f64, f64),

    #[error("irregular point at parameter {0}")]
    IrregularPoint(f64),

    #[error("inflection point at parameter {0}")]
    InflectionPoint(f64),

    #[error("circle-degenerate point at parameter {0}: conformal arclength density below threshold")]
    CircleDegeneracy(f64),

    #[error("umbilic point at (u, v) = ({0}, {1})")]
    UmbilicPoint(f64, f64),

    #[error("ill-conditioned coframe at (u, v) = ({0}, {1}): condition number {2:.3e}")]
    Conditioning(f64, f64, f64),

    #[error("incompatible signature geometries: {0:?} vs {1:?}")]
    IncompatibleTags(Geometry, Geometry),

    #[error("insufficient overlap between signatures")]
    InsufficientOverlap,

    #[error("integration tolerance failure: {0}")]
    ToleranceFailure(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that report a genericity violation of the input
    /// geometry (as opposed to malformed input or numerical failure).
    pub fn is_genericity(&self) -> bool {
        matches!(
            self,
            Error::IrregularPoint(_)
                | Error::InflectionPoint(_)
                | Error::CircleDegeneracy(_)
                | Error::UmbilicPoint(_, _)
                | Error::DensityVanishes(_, _)
        )
    }
}
