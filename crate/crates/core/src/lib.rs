//! Spectral laboratory for Erdős–Rényi random graphs.
//!
//! The crate is `no_std` (with `alloc`) and purely computational:
//!
//! - [`rgraph`] samples `G(n, p)` and builds the dense symmetric matrices
//!   studied here (adjacency, Laplacian, the trace-free Laplacian, the
//!   centered adjacency and the two Markov-type shifts).
//! - [`eigensym`] computes full spectra by Householder tridiagonalization
//!   followed by implicit-shift QL.
//! - [`energy`] turns spectra into matrix, graph and Laplacian energies.
//! - [`specdist`] handles empirical spectral distributions and the
//!   semicircle reference law.
//! - [`freeconv`] is an exact rational engine for moments, free cumulants
//!   and free convolution.
//!
//! IO, experiment campaigns and the command-line front end live in the
//! companion `rgspectra` crate.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod eigensym;
pub mod energy;
mod error;
pub mod freeconv;
pub mod rgraph;
pub mod specdist;

pub use eigensym::{eigenvalues, scaled_spectrum, Spectrum};
pub use energy::{
    energy_sandwich, graph_energy, kyfan_check, laplacian_energy, matrix_energy, Bracket,
    EnergyReport, KyFanCheck,
};
pub use error::{Error, Result};
pub use freeconv::{MomentSequence, TruncatedSeries};
pub use rgraph::{GraphSample, SymMatrix};
pub use specdist::{EmpiricalDist, SemicircleLaw};
