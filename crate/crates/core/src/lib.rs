//! Exact dynamics of two dipole-coupled two-level atoms driven through
//! non-degenerate two-photon transitions in a lossless two-mode cavity.
//!
//! The excitation number `n + (excited atoms)` is conserved, so the W-like
//! initial states live in invariant blocks of dimension 3 and 4. The crate
//! evolves those blocks with closed-form kernels ([`kernels`], [`dynamics`]),
//! measures atom-atom entanglement ([`entanglement`]) and checks every closed
//! form against a brute-force `exp(-iHt)` ([`oracle`]).

pub mod cli;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod grid;
pub mod kernels;
pub mod oracle;

pub use dynamics::{AmplitudeVector, AtomicState, BlockBasis, Family, WStateSpec};
pub use entanglement::{AtomicDensityMatrix, ConcurrenceSeries, EsdReport};
pub use error::{Error, Result};
pub use kernels::{FockPair, MiddleTerm, ModelParams, ScalarKernels};
pub use oracle::BlockHamiltonian;

pub use num_complex::Complex64;
