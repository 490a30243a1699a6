//! Frequency-dependent material models and the magnetoelectric parameters
//! entering every downstream formula.
//!
//! The nanoparticle bulk is a single-oscillator dielectric
//!
//! ```text
//! eps1(w) = 1 + we^2 / (wR^2 - w(w + i*g0))
//! ```
//!
//! and carries a magnetoelectric polarizability theta that enters only
//! through the rescaled combination alpha_tilde = alpha_fs * (theta/pi).
//! For a gapped topological surface theta/pi is an odd integer; the same
//! formulas apply to linear magnetoelectrics with a free real theta/pi.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::PhysicsError;

/// Vacuum constants in SI. `epsilon_0` is derived from `mu_0` and `c` so the
/// identity c = 1/sqrt(mu_0 eps_0) holds to rounding.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Vacuum permittivity (F/m).
    pub epsilon_0: f64,
    /// Vacuum permeability (H/m).
    pub mu_0: f64,
    /// Speed of light in vacuum (m/s).
    pub c: f64,
    /// Reduced Planck constant (J·s).
    pub hbar: f64,
    /// Fine-structure constant e^2 / (2 eps_0 h c).
    pub alpha_fs: f64,
}

impl PhysicalConstants {
    /// CODATA-consistent SI values.
    pub fn si() -> Self {
        let c = 299_792_458.0;
        let mu_0 = 4.0e-7 * std::f64::consts::PI;
        PhysicalConstants {
            epsilon_0: 1.0 / (mu_0 * c * c),
            mu_0,
            c,
            hbar: crate::units::HBAR,
            alpha_fs: 7.297_352_569_3e-3,
        }
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::si()
    }
}

/// Single-oscillator permittivity parameters of the nanoparticle bulk.
///
/// All three fields are angular frequencies in rad/s: `omega_e` is the
/// oscillator strength, `omega_r` the resonance, `gamma_0` the ohmic damping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DielectricModel {
    pub omega_e: f64,
    pub omega_r: f64,
    pub gamma_0: f64,
}

impl DielectricModel {
    pub fn new(omega_e: f64, omega_r: f64, gamma_0: f64) -> Result<Self, PhysicsError> {
        if !(omega_e > 0.0) || !omega_e.is_finite() {
            return Err(PhysicsError::invalid("omega_e must be positive and finite"));
        }
        if !(omega_r > 0.0) || !omega_r.is_finite() {
            return Err(PhysicsError::invalid("omega_r must be positive and finite"));
        }
        if !(gamma_0 >= 0.0) || !gamma_0.is_finite() {
            return Err(PhysicsError::invalid("gamma_0 must be >= 0 and finite"));
        }
        Ok(DielectricModel {
            omega_e,
            omega_r,
            gamma_0,
        })
    }

    /// True when the oscillator is in the high-Q regime gamma_0 < omega_R/10.
    pub fn is_high_q(&self) -> bool {
        self.gamma_0 < self.omega_r / 10.0
    }

    /// Complex relative permittivity at angular frequency `omega`.
    ///
    /// Fails only on the exact undamped pole (gamma_0 = 0, omega = omega_R).
    pub fn epsilon(&self, omega: f64) -> Result<Complex64, PhysicsError> {
        if self.gamma_0 == 0.0 && omega == self.omega_r {
            return Err(PhysicsError::UndampedResonance {
                omega_r: self.omega_r,
            });
        }
        let denom = Complex64::new(
            self.omega_r * self.omega_r - omega * omega,
            -omega * self.gamma_0,
        );
        Ok(1.0 + self.omega_e * self.omega_e / denom)
    }

    /// Static permittivity eps1(0) = 1 + (omega_e/omega_R)^2.
    pub fn epsilon_static(&self) -> f64 {
        let r = self.omega_e / self.omega_r;
        1.0 + r * r
    }
}

/// Magnetoelectric nanoparticle material: bulk dielectric, relative
/// permeability, and theta/pi.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TIMaterial {
    pub dielectric: DielectricModel,
    pub mu_1: f64,
    /// theta expressed in units of pi. Odd integers for a gapped topological
    /// surface; any real for linear-magnetoelectric emulation.
    pub theta_over_pi: f64,
    /// When set, `theta_over_pi` must be an odd integer.
    pub quantized_theta: bool,
}

impl TIMaterial {
    pub fn new(
        dielectric: DielectricModel,
        mu_1: f64,
        theta_over_pi: f64,
        quantized_theta: bool,
    ) -> Result<Self, PhysicsError> {
        if !(mu_1 > 0.0) || !mu_1.is_finite() {
            return Err(PhysicsError::invalid("mu_1 must be positive and finite"));
        }
        if !theta_over_pi.is_finite() {
            return Err(PhysicsError::invalid("theta_over_pi must be finite"));
        }
        if quantized_theta && !is_odd_integer(theta_over_pi) {
            return Err(PhysicsError::invalid(format!(
                "quantized theta requires theta/pi to be an odd integer, got {theta_over_pi}"
            )));
        }
        Ok(TIMaterial {
            dielectric,
            mu_1,
            theta_over_pi,
            quantized_theta,
        })
    }

    /// Rescaled magnetoelectric polarizability alpha_tilde = alpha_fs * theta/pi.
    pub fn alpha_tilde(&self, consts: &PhysicalConstants) -> f64 {
        consts.alpha_fs * self.theta_over_pi
    }
}

fn is_odd_integer(x: f64) -> bool {
    let r = x.round();
    (x - r).abs() < 1e-9 && (r.rem_euclid(2.0) - 1.0).abs() < 1e-9
}

/// Host medium surrounding the nanoparticle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HostMedium {
    pub epsilon_2: f64,
    pub mu_2: f64,
}

impl HostMedium {
    pub fn new(epsilon_2: f64, mu_2: f64) -> Result<Self, PhysicsError> {
        if !(epsilon_2 >= 1.0) || !epsilon_2.is_finite() {
            return Err(PhysicsError::invalid("epsilon_2 must be >= 1 and finite"));
        }
        if !(mu_2 > 0.0) || !mu_2.is_finite() {
            return Err(PhysicsError::invalid("mu_2 must be positive and finite"));
        }
        Ok(HostMedium { epsilon_2, mu_2 })
    }
}

/// Effective permeability mu_e = 2 mu_1 mu_2 / (mu_1 + 2 mu_2) of the
/// sphere/host pair; multiplies every alpha_tilde^2 term.
pub fn effective_permeability(ti: &TIMaterial, host: &HostMedium) -> f64 {
    2.0 * ti.mu_1 * host.mu_2 / (ti.mu_1 + 2.0 * host.mu_2)
}
