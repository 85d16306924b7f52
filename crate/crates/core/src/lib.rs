//! Numerical toolkit for intrinsic metrological resolution of quantum probes.
//!
//! The central quantity is the probe-generator functional
//! `Λ²(ρ, G) = tr(ρ²G²) − tr(ρGρG)`, the small-signal limit of the
//! Hilbert-Schmidt distance between a probe `ρ` and its image under the
//! signal-encoding unitary `exp(iχG)`. The crate provides:
//!
//! - validated complex Hermitian matrix algebra ([`hermitian`]),
//! - truncated Fock-space state and operator builders ([`fock`]),
//! - resolution and distance measures with cross-checking forms ([`measures`]),
//! - classical coherent mixtures and nonclassicality witnesses ([`pmix`]),
//! - closed forms and optimizers for axis-aligned Gaussian probes ([`gaussian`]),
//! - optimum-generator construction for a fixed probe ([`probe_design`]),
//! - the reproduction check suite behind the CLI ([`suite`]).

pub mod error;
pub mod fock;
pub mod gaussian;
pub mod hermitian;
pub mod measures;
pub mod pmix;
pub mod probe_design;
pub mod sample;
pub mod suite;

pub use fock::{FockSpace, TruncationReport};
pub use pmix::{CoherentMixture, Verdict};
pub use error::{Error, Result};


pub use hermitian::{ComplexMatrix, DensityMatrix, Observable, Spectrum, Tolerances};


/// Complex scalar used throughout the crate.
pub type Complex = num_complex::Complex64;
