//! Planar central configurations of the Newtonian four-body problem.
//!
//! For four given masses the solver builds an orthocentric tetrahedron whose
//! vertices carry the masses, rotates it by two angles, reads the weighted
//! directed areas off the rotated third axis, solves Dziobek's equations for
//! the distances, and tunes the angles until the masses implied by the planar
//! configuration match the given ones.

pub mod atlas;
pub mod dziobek;
pub mod error;
pub mod roots;
pub mod scalar;
pub mod simplex;
pub mod solver;
pub mod tetra;

pub use error::{Error, Result};
pub use scalar::Real;

/// Double-precision names for the common types.
pub type MassVector = tetra::MassVector<f64>;
pub type Tetrahedron = tetra::Tetrahedron<f64>;
pub type Direction = dziobek::Direction<f64>;
pub type DistanceSet = dziobek::DistanceSet<f64>;
pub type WeightedAreas = dziobek::WeightedAreas<f64>;
pub type PlanarConfig = dziobek::PlanarConfig<f64>;
pub type SolverSettings = solver::SolverSettings<f64>;
pub type CentralConfiguration = solver::CentralConfiguration<f64>;
pub type Residuals = solver::Residuals<f64>;
pub type RegionSample = atlas::RegionSample<f64>;

pub use dziobek::{ConfigurationType, Pair, Pattern};
