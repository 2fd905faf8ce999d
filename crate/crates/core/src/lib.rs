//! Dressed atoms in a perfectly reflecting spherical cavity: normal modes,
//! exact amplitudes, and the entanglement of a two-atom superposition.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub use bipartite::{ReducedAtomPairMatrix, SingleAtomReducedMatrix, SuperpositionSpec};
pub use coupling::{ModeIndex, TransformMatrix};
pub use dynamics::{AmplitudeMethod, AmplitudeTrace, FreeSpaceParams};
pub use error::{Error, Result};
pub use oracle::{Decomposition, QuadraticForm};
pub use params::DressedAtomParams;
pub use quadrature::QuadratureConfig;
pub use spectrum::{ModeSpectrum, SecularForm, SolverConfig, SpectrumMethod};

pub mod bipartite;
pub mod coupling;
pub mod dynamics;
pub mod error;
pub mod oracle;
pub mod params;
pub mod quadrature;
pub mod roots;
pub mod spectrum;
