//! Error types shared across the physics modules.

use thiserror::Error;

/// Errors raised by the physics layer.
#[derive(Debug, Clone, Error)]
pub enum PhysicsError {
    /// The single-oscillator dielectric was evaluated exactly at its undamped
    /// resonance (gamma_0 = 0 and omega = omega_R).
    #[error("undamped resonance singularity: epsilon_1 diverges at omega = omega_R = {omega_r} rad/s with gamma_0 = 0")]
    UndampedResonance { omega_r: f64 },

    /// The quasistatic denominator 2*eps2 + eps1(omega) + mu_e*alpha_tilde^2
    /// vanished; the sphere response is singular at the plasmon pole.
    #[error("plasmon pole: quasistatic denominator vanishes at omega = {omega} rad/s")]
    PlasmonPole { omega: f64 },

    /// eps1(0) = 1 (zero oscillator strength); the normalization constants and
    /// radiative rate are undefined.
    #[error("degenerate permittivity: eps1(0) = 1 (zero oscillator strength)")]
    DegeneratePermittivity,

    /// A spectral denominator vanished exactly; only possible in fully
    /// lossless configurations. Add nonzero decay.
    #[error("lossless spectrum singularity at omega = {omega} rad/s: add nonzero decay")]
    LosslessSingularity { omega: f64 },

    /// Adaptive quadrature hit its subdivision budget before reaching the
    /// requested tolerance.
    #[error("quadrature did not converge: achieved error estimate {achieved:e} > requested {requested:e}")]
    QuadratureNonConvergence { achieved: f64, requested: f64 },

    /// Dipole separation must exceed the nanoparticle radius.
    #[error("separation inside nanoparticle: r = {separation} m <= R = {radius} m")]
    SeparationInsideParticle { separation: f64, radius: f64 },

    /// A constructor or operation precondition failed.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A sweep propagates a per-point failure with the offending value.
    #[error("sweep failed at {axis} = {value}: {source}")]
    SweepPoint {
        axis: &'static str,
        value: f64,
        #[source]
        source: Box<PhysicsError>,
    },
}

impl PhysicsError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        PhysicsError::InvalidParameter(msg.into())
    }
}
