//! Optical response of a magnetoelectric (topological-insulator) nanoparticle
//! coupled to a two-level quantum dot.
//!
//! The library computes, from first principles and in SI units throughout:
//!
//! * the exact quasistatic electromagnetic response of a magnetoelectric
//!   sphere in a uniform drive field, together with its high-Q Lorentzian
//!   approximation and localized (impulse-response) modes — [`quasistatics`];
//! * frequency-dependent material models and the rescaled magnetoelectric
//!   polarizability entering every downstream formula — [`materials`];
//! * mode-quantization constants (normalization factor, energy density, mode
//!   volume), the dipole coupling strength, and all reservoir decay rates —
//!   [`quantization`];
//! * the closed-form Fano absorption line shape obtained from the
//!   equation-of-motion chain of retarded Green functions, plus sweep and
//!   line-shape analysis machinery — [`spectrum`];
//! * independent brute-force validators (Legendre-series boundary-value
//!   solver, boundary-condition residuals, quadrature energy integrals) that
//!   establish ground truth for the closed forms — [`oracle`].
//!
//! All value types are immutable after construction and safe to share across
//! threads; the operations are pure functions.

pub mod diagnostics;
pub mod error;
pub mod materials;
pub mod oracle;
pub mod quadrature;
pub mod quantization;
pub mod quasistatics;
pub mod report;
pub mod spectrum;
pub mod units;
pub mod vec3;

pub use diagnostics::{Diagnostic, Diagnostics, Severity};
pub use error::PhysicsError;
pub use materials::{DielectricModel, HostMedium, PhysicalConstants, TIMaterial};
pub use quantization::{HybridScenario, Orientation, QuantizationConstants, QuantumDot};
pub use quasistatics::{DerivedFrequencies, DipoleMoments, FieldSample, SphereGeometry};
pub use spectrum::{FanoParameters, ReservoirCouplings, Spectrum};
