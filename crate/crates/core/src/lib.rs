//! Desk-scale quantum information toolkit.
//!
//! A self-contained library for the numerics of classical and quantum
//! information: dense complex linear algebra, states and ensembles, Shannon
//! and von Neumann entropies, typical-set compression, noisy-channel bounds,
//! erasure thermodynamics, the Holevo quantity, toy block compression of
//! qubit sources, and single-pair entanglement distillation. A report module
//! recomputes the reference values the rest of the crate is checked against.

pub mod classical;
pub mod cmatrix;
pub mod entangle;
pub mod entropy;
pub mod erasure;
pub mod error;
pub mod holevo;
pub mod io;
pub mod qcompress;
pub mod qstate;
pub mod report;

pub use cmatrix::{CMatrix, CVector, Complex, HermitianEig};
pub use error::{Error, Result};
pub use qstate::{DensityOperator, Ensemble, EnsembleMember, Observable, PureState};
