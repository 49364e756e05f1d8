use thiserror::Error;

use crate::dziobek::Pair;

/// Failures raised by the geometric and solver routines.
///
/// Numeric payloads are reported as `f64` regardless of the working scalar.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A mass is zero, negative or not finite. `index` is 1-based.
    #[error("mass {index} must be positive and finite, got {value}")]
    InvalidMass { index: usize, value: f64 },

    /// A weighted area vanishes: the direction lies on a collinearity great circle.
    #[error("direction is degenerate: weighted area A{particle} vanishes")]
    DegenerateDirection { particle: usize },

    /// `1 + lambda * A_j * A_k` is not positive for some pair.
    #[error("lambda = {lambda} is outside the admissible interval (pair {pair})")]
    LambdaOutOfDomain { lambda: f64, pair: Pair },

    /// A triangle inequality fails, so the distances have no planar realization.
    #[error("distances are not realizable: triangle {0:?} violates the triangle inequality")]
    NotRealizable([usize; 3]),

    /// The distances are realizable but not coplanar within tolerance.
    #[error("distances are not planar: normalized Cayley-Menger residual {residual:e}")]
    NotPlanar { residual: f64 },

    /// Directed areas and weighted areas disagree in sign, so no positive masses exist.
    #[error("directed and weighted areas have inconsistent orientation")]
    InconsistentOrientation,

    /// Kite reduction needs `m3 == m4`.
    #[error("kite reduction needs m3 = m4, got m3 = {m3}, m4 = {m4}")]
    UnequalKiteMasses { m3: f64, m4: f64 },

    /// A solver setting is not strictly positive.
    #[error("invalid solver setting `{0}`")]
    InvalidSetting(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
