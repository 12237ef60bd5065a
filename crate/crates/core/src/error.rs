//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A named parameter assumption or derived condition failed.
    #[error("condition {condition} violated (margin {margin:.6e})")]
    ConditionViolated { condition: String, margin: f64 },

    /// A precondition on an operation's inputs failed; the message names
    /// the offending radicand, denominator or argument.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Degenerate geometric input (zero-area polygon, zero vector, ...).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A geometric construction could not be completed.
    #[error("construction failed: {0}")]
    Construction(String),

    /// The unstable-manifold polyline would exceed the vertex budget.
    #[error("vertex cap {cap} exceeded while growing the manifold (needed {needed})")]
    VertexCap { cap: usize, needed: usize },

    /// An orbit left the radius-1000 disc.
    #[error("orbit diverged at iterate {index}; check parameters and seed")]
    OrbitDiverged { index: usize },

    /// Turning-point enumeration hit the growth budget first.
    #[error("turning-point enumeration found only {found} of {requested} points before hitting the growth cap")]
    TurningPointBudget { found: usize, requested: usize },

    /// The two-parameter solver ran out of iterations. Carries the best
    /// iterate seen.
    #[error("solver did not converge in {iterations} iterations; best (a, b) = ({a:.16}, {b:.16}) with residuals ({r1:.3e}, {r2:.3e})")]
    NonConvergence {
        iterations: usize,
        a: f64,
        b: f64,
        r1: f64,
        r2: f64,
    },

    /// The search region contains no cell where both residuals change sign.
    #[error("no sign-change bracket for the residual pair inside the region")]
    NoBracket,

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
