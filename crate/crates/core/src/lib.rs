//! Billiards inside confocal conics on the hyperboloid of one sheet
//! `<x,x> = 1` in Minkowski space `M^3` with form `-x0 y0 + x1 y1 + x2 y2`.
//!
//! The two compact tables are the *collared* (`0 < a0 < a1 < a2`) and
//! *transverse* (`a1 < 0 < a0 < a2`) H-ellipses cut out by the cone
//! `-x0^2/a0 + x1^2/a1 + x2^2/a2 = 0`.
//!
//! Modules, bottom up:
//!
//! - [`mink`]: inner product, causal classes, bivectors.
//! - [`confocal`]: table classification, Jacobi coordinates, foci, Klein projection.
//! - [`geodesic`]: geodesic flow on the hyperboloid and the boundary chord map.
//! - [`billiard`]: reflection, trajectories, integrals, caustics, Lax matrices, the
//!   alternating antipodal map.
//! - [`cayley`]: square-root power series, Hankel determinant conditions for periodic
//!   trajectories and their numeric root isolation.

pub mod billiard;
pub mod cayley;
pub mod confocal;
pub mod error;
pub mod geodesic;
pub mod mink;
pub mod tol;

pub use confocal::{TableKind, TableParams};
pub use error::{Error, Result};
pub use mink::{CausalClass, MVec};
