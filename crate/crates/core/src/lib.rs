//! Merit-factor toolkit for binary and ternary arrays: finite-field
//! constructions, aperiodic autocorrelation, closed-form asymptotics under
//! rotation, identity checks and small exhaustive searches.

pub mod arrays;
pub mod asymptotics;
pub mod correlation;
pub mod error;
pub mod finite_field;
pub mod identities;
pub mod search;
pub mod transform;

pub use arrays::{Rotation, SignPattern, TernaryArray};
pub use asymptotics::{Family, Rational};
pub use correlation::{merit_factor, CorrelationSpectrum, Engine, EngineChoice, MeritReport};
pub use error::{Error, Result};
pub use finite_field::{ExtFieldElement, ExtFieldSpec, PrimeModulus};
