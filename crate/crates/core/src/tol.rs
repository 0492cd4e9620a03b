//! Numerical thresholds shared across the crate.

/// Relative threshold on `<v,v> / |v|^2` below which a vector counts as light-like.
pub const CAUSAL: f64 = 1e-10;

/// Minimum separation of the table parameters, relative to `max |a_i|`.
pub const SEPARATION: f64 = 1e-9;

/// Relative threshold on the discriminant for a repeated Jacobi root.
pub const DOUBLE_ROOT: f64 = 1e-10;

/// Distance from a pole `a_i` (relative to the table scale) treated as hitting it.
pub const POLE: f64 = 1e-12;

/// `|x0|` below which the Klein projection is at infinity.
pub const KLEIN_INFINITY: f64 = 1e-12;

/// Absolute tolerance for tangency `<x,v> = 0` and on-boundary tests.
pub const TANGENT: f64 = 1e-9;

/// Closure: point distance and direction angle both below this.
pub const CLOSURE: f64 = 1e-6;

/// Tolerance used for "same point" tests such as antipodality.
pub const SAME_POINT: f64 = 1e-9;
