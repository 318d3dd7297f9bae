//! Minimal measurement entropy for multipartite pure states.
//!
//! The quantity computed here, `E_Hmin`, is the minimum over all local
//! (per-subsystem) unitary basis changes of the Shannon entropy of
//! computational-basis measurement outcomes. It is additive, invariant
//! under local unitaries, and equals the reduced von Neumann entropy on
//! bipartite states, which makes it usable as an entanglement measure
//! for systems where no Schmidt decomposition exists.
//!
//! The minimization itself is a multimodal global optimization over
//! `3n` (qubits) or `n d^2` (qudits) real parameters and is carried out
//! by an island-model genetic algorithm ([`ga`]). Analytic reference
//! values for bipartite, GHZ and W states live in [`oracles`], and the
//! same machinery is extended to fermionic states on the Slater
//! determinant basis in [`fermion`].
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats and the
//! command line front end live in the companion `ehmin-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cmatrix;
pub mod fermion;
pub mod ga;
pub mod objective;
pub mod oracles;
mod rng;
pub mod state;
pub mod unitary;

pub use cmatrix::{CMatrix, C64};
pub use ga::{Chromosome, GaConfig, OptimizationReport};
pub use objective::{ehmin, EhminResult, Objective};
pub use state::{DensityMatrix, PureState};
pub use unitary::UnitaryMatrix;
