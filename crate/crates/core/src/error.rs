use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("vector has non-positive Minkowski norm {0:e}")]
    NonPositiveNorm(f64),

    #[error(
        "unsupported table parameters ({0}, {1}, {2}): need 0 < a0 < a1 < a2 or a1 < 0 < a0 < a2"
    )]
    UnsupportedParameters(f64, f64, f64),

    #[error("parameter {0} coincides with a pole of the confocal family")]
    PoleParameter(f64),

    #[error("point is projected to infinity (x0 = {0:e})")]
    AtInfinity(f64),

    #[error("direction is not tangent to the hyperboloid (<x,v> = {0:e})")]
    NotTangent(f64),

    #[error("geodesic never returns to the boundary")]
    NoHit,

    #[error("degenerate tangency: geodesic is tangent to the boundary to second order")]
    DegenerateTangency,

    #[error("boundary point is singular (<n,n> = {0:e})")]
    SingularPoint(f64),

    #[error("reflection is undefined: boundary normal is light-like (<n,n> = {0:e})")]
    DegenerateReflection(f64),

    #[error("chord {0} is light-like; wedge norm vanishes")]
    DegenerateChord(usize),

    #[error("operation requires a collared table")]
    UnsupportedTable,

    #[error("series constant term vanishes")]
    ZeroConstantTerm,

    #[error("no direction at this point is tangent to the requested caustic")]
    NoTangentDirection,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
