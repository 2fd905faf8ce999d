//! Shared fixtures for the criterion benches.

use dressed_core::DressedAtomParams;

/// The figure parameters (`wbar = 1`, `g = 0.5`, `delta = 0.1`) with `n` modes.
pub fn figure_params(n_modes: usize) -> DressedAtomParams {
    DressedAtomParams::from_delta(1.0, 0.5, 0.1, 1.0, n_modes).expect("valid figure parameters")
}
