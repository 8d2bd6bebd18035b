//! Classical orbits, action-angle spectra and quantum bound states for the
//! non-central cotangent and Makarov-Kibler potentials.
//!
//! Both potentials separate in spherical coordinates. The radial motion is the
//! Kepler ellipse in its anomaly ψ; the angular motion is solved in closed form
//! and cross-checked against the numerical machinery in [`oracle`].

pub mod actions;
pub mod config;
pub mod cotangent;
pub mod error;
pub mod kibler;
pub mod model;
pub mod oracle;
pub mod polynomial;
pub mod quantum;
pub mod radial;
pub mod trajectory;

pub use actions::{ActionSet, Frequencies, SpectrumEntry};
pub use cotangent::{CotangentOrbit, CotangentOrbitConstants, EllipticCone};
pub use error::{Error, Result};
pub use kibler::{KiblerOrbit, KiblerOrbitConstants, QuadricKind, QuadricSurface};
pub use model::{
    Constraint, PhysicalParams, PotentialKind, QuantumNumbers, SeparationConstants,
    ValidationReport,
};
pub use polynomial::Polynomial;
pub use radial::RadialOrbit;
pub use trajectory::{OrbitSample, Trajectory};
