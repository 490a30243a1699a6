//! Scenario file schema: a TOML document with explicit unit tags on every
//! dimensioned quantity (energies in eV, lengths in nm, rates in 1/s or as
//! lifetimes in ns). Unknown keys are rejected.

use serde::{Deserialize, Serialize};

use tinp_core::materials::{DielectricModel, HostMedium, TIMaterial};
use tinp_core::quantization::{
    dielectric_from_pinned_mode, HybridScenario, Orientation, PinnedMode, QuantumDot,
};
use tinp_core::quasistatics::SphereGeometry;
use tinp_core::materials::PhysicalConstants;
use tinp_core::units;

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema_version: u32,
    pub ti: TiSection,
    pub host: HostSection,
    pub geometry: GeometrySection,
    pub qd: QdSection,
    pub coupling: CouplingSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TiSection {
    pub mu1: f64,
    pub theta_over_pi: f64,
    pub quantized_theta: bool,
    pub dielectric: DielectricSection,
}

/// Exactly one of `pinned_mode` / `oscillator` must be present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DielectricSection {
    #[serde(default)]
    pub gamma0_per_s: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pinned_mode: Option<PinnedModeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oscillator: Option<OscillatorSpec>,
}

/// Pin the mode energy and the static permittivity; the oscillator pair
/// (omega_e, omega_R) is reconstructed per scenario so both constraints hold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PinnedModeSpec {
    pub hbar_omega_ev: f64,
    pub epsilon1_static: f64,
}

/// Explicit oscillator pair, either as photon energies (eV) or directly as
/// angular frequencies (rad/s); mixing the two unit systems is rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OscillatorSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hbar_omega_e_ev: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hbar_omega_r_ev: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_e_rad_per_s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_r_rad_per_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HostSection {
    pub epsilon2: f64,
    pub mu2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySection {
    pub radius_nm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QdSection {
    pub hbar_omega_a_ev: f64,
    pub dipole_c_m: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_s_per_s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_s_lifetime_ns: Option<f64>,
    /// Quadratic Stark polarizability as a CGS polarizability volume in
    /// cubic angstroms; converted internally to C·m^2/V via 4 pi eps0.
    pub polarizability_angstrom3: f64,
    pub n_excitation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingSection {
    pub separation_nm: f64,
    pub orientation: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub start_ev: f64,
    pub stop_ev: f64,
    pub points: usize,
}

impl GridSection {
    pub fn to_omegas(self) -> Result<Vec<f64>, CliError> {
        if self.points < 2 {
            return Err(CliError::schema(
                "grid.points must be >= 2 (empty or single-point grids are rejected)",
            ));
        }
        if !(self.stop_ev > self.start_ev) {
            return Err(CliError::schema("grid.stop_ev must exceed grid.start_ev"));
        }
        let n = self.points;
        Ok((0..n)
            .map(|k| {
                units::ev_to_rad_per_s(
                    self.start_ev + (self.stop_ev - self.start_ev) * k as f64 / (n - 1) as f64,
                )
            })
            .collect())
    }
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: ScenarioFile = toml::from_str(text)
            .map_err(|e| CliError::schema(format!("scenario file: {e}")))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(CliError::schema(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                file.schema_version
            )));
        }
        Ok(file)
    }

    /// Build the physical scenario. Structural problems map to schema
    /// errors; physical-regime violations keep their physics error type.
    pub fn to_scenario(&self, consts: &PhysicalConstants) -> Result<HybridScenario, CliError> {
        let host = HostMedium::new(self.host.epsilon2, self.host.mu2)
            .map_err(CliError::schema_from_physics)?;
        let geometry = SphereGeometry::new(units::nm_to_m(self.geometry.radius_nm))
            .map_err(CliError::schema_from_physics)?;

        let d = &self.ti.dielectric;
        let (dielectric, pinned) = match (&d.pinned_mode, &d.oscillator) {
            (Some(p), None) => {
                let pinned = PinnedMode {
                    omega_mode: units::ev_to_rad_per_s(p.hbar_omega_ev),
                    epsilon1_static: p.epsilon1_static,
                };
                let model = dielectric_from_pinned_mode(
                    pinned,
                    &host,
                    self.ti.mu1,
                    self.ti.theta_over_pi,
                    d.gamma0_per_s,
                    consts,
                )
                .map_err(CliError::Physics)?;
                (model, Some(pinned))
            }
            (None, Some(o)) => {
                let pair = match (
                    o.hbar_omega_e_ev,
                    o.hbar_omega_r_ev,
                    o.omega_e_rad_per_s,
                    o.omega_r_rad_per_s,
                ) {
                    (Some(e), Some(r), None, None) => {
                        (units::ev_to_rad_per_s(e), units::ev_to_rad_per_s(r))
                    }
                    (None, None, Some(e), Some(r)) => (e, r),
                    _ => {
                        return Err(CliError::schema(
                            "ti.dielectric.oscillator requires exactly one complete unit pair: \
                             (hbar_omega_e_ev, hbar_omega_r_ev) or (omega_e_rad_per_s, omega_r_rad_per_s)",
                        ))
                    }
                };
                (
                    DielectricModel::new(pair.0, pair.1, d.gamma0_per_s)
                        .map_err(CliError::schema_from_physics)?,
                    None,
                )
            }
            (Some(_), Some(_)) => {
                return Err(CliError::schema(
                    "ti.dielectric: pinned_mode and oscillator are mutually exclusive",
                ))
            }
            (None, None) => {
                return Err(CliError::schema(
                    "ti.dielectric: one of pinned_mode or oscillator is required",
                ))
            }
        };

        let ti = TIMaterial::new(
            dielectric,
            self.ti.mu1,
            self.ti.theta_over_pi,
            self.ti.quantized_theta,
        )
        .map_err(CliError::schema_from_physics)?;

        let gamma_s = match (self.qd.gamma_s_per_s, self.qd.gamma_s_lifetime_ns) {
            (Some(rate), None) => rate,
            (None, Some(tau_ns)) => {
                if !(tau_ns > 0.0) {
                    return Err(CliError::schema("qd.gamma_s_lifetime_ns must be positive"));
                }
                1.0 / (tau_ns * 1e-9)
            }
            _ => {
                return Err(CliError::schema(
                    "qd requires exactly one of gamma_s_per_s or gamma_s_lifetime_ns",
                ))
            }
        };
        if !(self.qd.polarizability_angstrom3 > 0.0) {
            return Err(CliError::schema("qd.polarizability_angstrom3 must be positive"));
        }
        let polarizability =
            4.0 * std::f64::consts::PI * consts.epsilon_0 * self.qd.polarizability_angstrom3 * 1e-30;
        let qd = QuantumDot::new(
            units::ev_to_rad_per_s(self.qd.hbar_omega_a_ev),
            self.qd.dipole_c_m,
            gamma_s,
            polarizability,
            self.qd.n_excitation,
        )
        .map_err(CliError::schema_from_physics)?;

        let orientation = match self.coupling.orientation.as_str() {
            "longitudinal" => Orientation::Longitudinal,
            "transverse" => Orientation::Transverse,
            other => {
                return Err(CliError::schema(format!(
                    "coupling.orientation must be 'longitudinal' or 'transverse', got '{other}'"
                )))
            }
        };

        Ok(HybridScenario {
            ti,
            host,
            geometry,
            qd,
            separation: units::nm_to_m(self.coupling.separation_nm),
            orientation,
            pinned,
        })
    }

    /// Canonical TOML rendering, used for output headers.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario file serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
schema_version = 1

[ti]
mu1 = 1.0
theta_over_pi = 1.0
quantized_theta = true

[ti.dielectric]
gamma0_per_s = 0.0

[ti.dielectric.pinned_mode]
hbar_omega_ev = 2.2
epsilon1_static = 4.0

[host]
epsilon2 = 1.5
mu2 = 1.0

[geometry]
radius_nm = 5.0

[qd]
hbar_omega_a_ev = 2.2
dipole_c_m = 7.2e-28
gamma_s_lifetime_ns = 10.0
polarizability_angstrom3 = 1.5e5
n_excitation = 0.495

[coupling]
separation_nm = 7.0
orientation = "longitudinal"
"#;

    #[test]
    fn parses_and_converts() {
        let c = PhysicalConstants::si();
        let file = ScenarioFile::parse(MINIMAL).unwrap();
        let scenario = file.to_scenario(&c).unwrap();
        assert_eq!(scenario.geometry.radius, units::nm_to_m(5.0));
        assert_eq!(scenario.separation, units::nm_to_m(7.0));
        assert_eq!(scenario.qd.gamma_s, 1e8);
        assert!(scenario.pinned.is_some());
    }

    #[test]
    fn rejects_unknown_keys() {
        let text = MINIMAL.replace("mu2 = 1.0", "mu2 = 1.0\nbogus_key = 3");
        let err = ScenarioFile::parse(&text).unwrap_err();
        assert!(err.to_string().contains("bogus_key"));
    }

    #[test]
    fn rejects_missing_dipole() {
        let text = MINIMAL.replace("dipole_c_m = 7.2e-28\n", "");
        assert!(ScenarioFile::parse(&text).is_err());
    }

    #[test]
    fn rejects_double_gamma_s() {
        let text = MINIMAL.replace(
            "gamma_s_lifetime_ns = 10.0",
            "gamma_s_lifetime_ns = 10.0\ngamma_s_per_s = 1e8",
        );
        let file = ScenarioFile::parse(&text).unwrap();
        assert!(file.to_scenario(&PhysicalConstants::si()).is_err());
    }

    #[test]
    fn toml_round_trip() {
        let file = ScenarioFile::parse(MINIMAL).unwrap();
        let rendered = file.to_toml();
        let again = ScenarioFile::parse(&rendered).unwrap();
        assert_eq!(file, again);
    }
}
