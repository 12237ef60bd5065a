//! Numerical toolkit for a three-parameter family of piecewise-affine
//! plane homeomorphisms with hyperbolic attractors.
//!
//! The family `(x, y) -> (1 + y - a|x| - cx, bx)` folds the plane along the
//! `y`-axis; for suitable parameters it carries a strange attractor equal to
//! the closure of the unstable manifold of the right-branch fixed point.
//! This crate verifies the parameter assumptions and the geometric
//! constructions behind that picture, grows the unstable manifold exactly
//! (it is piecewise straight), computes kneading sequences of the turning
//! points, and solves the two-equation kneading system that pins `(a, b)`
//! for a given asymmetry `c`.
//!
//! Modules follow the pipeline:
//!
//! * [`scalar`] - precision profiles (`f64` and double-double).
//! * [`map`] - the map family, branches, inverse, fixed points.
//! * [`cones`] - invariant cone pair and sampled expansion checks.
//! * [`conditions`] - assumptions (A1)-(A3), derived conditions (C1)-(C5),
//!   slope formulas and the geometric conditions (L3)/(L4).
//! * [`geometry`] - distinguished points, the trapping triangle, polygon
//!   images, unstable-manifold polylines, turning points, orbits.
//! * [`symbolic`] - itineraries and kneading sequences.
//! * [`solver`] - kneading-equation residuals, sign grids, 2-d root finder.
//! * [`emit`] - CSV/SVG/PPM output.

pub mod cones;
pub mod conditions;
pub mod emit;
pub mod error;
pub mod geometry;
pub mod map;
pub mod report;
pub mod scalar;
pub mod solver;
pub mod symbolic;

pub use error::{Error, Result};
pub use map::{Branch, Params, PlanePoint, PlaneVector, ValidParams};
pub use report::{ConditionEntry, ConditionReport};
pub use scalar::{DoubleDouble, Real};
