//! Vacuum-fluctuation-induced entanglement between two two-level atoms.
//!
//! The crate evaluates the concurrence and entanglement of formation of the
//! dressed ground state of two atoms coupled to the electromagnetic vacuum,
//! together with the Casimir-Polder interaction energy of the same pair.
//! Every closed form is paired with a slow, independent quadrature in
//! [`oracle`].
//!
//! Units are Hartree atomic units with Gaussian electromagnetism
//! (ħ = e = mₑ = 1, c = 1/α). Most routines work on the reduced description
//! in [`model::PairConfiguration`]: separation `x = k₀R`, unit dipole
//! orientations and the coupling `μ = |dᴬ||dᴮ|k₀³/(ħω₀)`.

pub mod casimir;
pub mod cli;
pub mod entanglement;
pub mod error;
pub mod kernel;
pub mod model;
pub mod oracle;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};
