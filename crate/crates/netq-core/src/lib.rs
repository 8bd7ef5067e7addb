//! Exact decision procedures for the GIT stability of nets of quadric
//! surfaces in P³, plane quartics, and nets of plane cubics, over exact
//! rational (and quadratic-extension) arithmetic.
//!
//! The pipeline runs: symmetric-matrix nets → discriminant quartic →
//! singularity classification → stability verdict, with Hilbert–Mumford
//! certificates and the full catalog of maximally destabilized support
//! families available for cross-checks.

pub mod num;
pub mod multipoly;
pub mod unipoly;
pub mod linalg;
pub mod factor;
pub mod local;

pub use num::{Rat, Scalar};
