//! Derived-constants report consumed by the command-line layer and the test
//! harness.

use serde::{Deserialize, Serialize};

use crate::diagnostics::Diagnostics;
use crate::error::PhysicsError;
use crate::materials::{effective_permeability, PhysicalConstants};
use crate::quantization::{
    coupling_strength, normalization_constants, radiative_decay_rate, stark_shift_bound,
    HybridScenario, StarkAdvisory,
};
use crate::units;

/// Stark advisory evaluated at the single-photon field amplitude seen by the
/// dot (the same field that sets the coupling strength).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct StarkReport {
    pub probe_field_v_per_m: f64,
    pub shift_j: f64,
    pub shift_ev: f64,
    pub threshold_field_v_per_m: f64,
    pub admissible: bool,
}

/// All derived constants of one scenario, SI plus eV convenience values.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamsReport {
    pub schema_version: u32,
    // scenario echo
    pub radius_m: f64,
    pub separation_m: f64,
    pub orientation: String,
    pub theta_over_pi: f64,
    pub alpha_tilde: f64,
    pub mu_e: f64,
    pub epsilon1_static: f64,
    pub epsilon_2: f64,
    pub n_excitation: f64,
    // oscillator reconstruction (authoritative for round-trips)
    pub omega_e_rad_per_s: f64,
    pub omega_r_rad_per_s: f64,
    // mode frequencies
    pub omega_0_rad_per_s: f64,
    pub eta: f64,
    pub omega_mode_rad_per_s: f64,
    pub omega_mode_ev: f64,
    pub omega_a_rad_per_s: f64,
    pub omega_a_ev: f64,
    // quantization constants
    pub norm_sq_inv_f_m2_per_j: f64,
    pub u0: f64,
    pub mode_volume_m3: f64,
    pub field_amp_v_per_m: f64,
    // coupling and rates
    pub coupling_g_rad_per_s: f64,
    pub coupling_g_ev: f64,
    pub gamma_r_per_s: f64,
    pub gamma_0_per_s: f64,
    pub gamma_s_per_s: f64,
    pub stark: StarkReport,
}

/// Derive every reported constant from scratch for one scenario.
pub fn params_report(
    scenario: &HybridScenario,
    consts: &PhysicalConstants,
    diags: &mut Diagnostics,
) -> Result<ParamsReport, PhysicsError> {
    scenario.validate(consts, diags)?;
    let derived = scenario.derived_frequencies(consts);
    let q = normalization_constants(
        &scenario.ti,
        &scenario.host,
        &scenario.geometry,
        derived.omega_mode,
        consts,
    )?;
    let gamma_r = radiative_decay_rate(
        &scenario.ti,
        &scenario.host,
        &scenario.geometry,
        derived.omega_mode,
        consts,
    )?;
    let g = coupling_strength(scenario, &q, derived.omega_mode, consts);

    // single-photon field at the dot: orientation factor times the vacuum
    // amplitude of the rescaled mode profile, diluted by (R/r)^3
    let vacuum_field = (consts.hbar * derived.omega_mode
        / (2.0 * consts.epsilon_0 * q.mode_volume * q.u0))
        .sqrt();
    let probe_field = scenario.orientation.coupling_factor().abs()
        * vacuum_field
        * (scenario.geometry.radius / scenario.separation).powi(3);
    let StarkAdvisory {
        shift,
        threshold_field,
        admissible,
    } = stark_shift_bound(&scenario.qd, probe_field);
    if !admissible {
        diags.warn(
            "stark-shift",
            format!(
                "field {probe_field:.3e} V/m is not far below the Stark threshold {threshold_field:.3e} V/m"
            ),
        );
    }

    Ok(ParamsReport {
        schema_version: 1,
        radius_m: scenario.geometry.radius,
        separation_m: scenario.separation,
        orientation: scenario.orientation.to_string(),
        theta_over_pi: scenario.ti.theta_over_pi,
        alpha_tilde: scenario.ti.alpha_tilde(consts),
        mu_e: effective_permeability(&scenario.ti, &scenario.host),
        epsilon1_static: scenario.ti.dielectric.epsilon_static(),
        epsilon_2: scenario.host.epsilon_2,
        n_excitation: scenario.qd.n_excitation,
        omega_e_rad_per_s: scenario.ti.dielectric.omega_e,
        omega_r_rad_per_s: scenario.ti.dielectric.omega_r,
        omega_0_rad_per_s: derived.omega_0,
        eta: derived.eta,
        omega_mode_rad_per_s: derived.omega_mode,
        omega_mode_ev: units::rad_per_s_to_ev(derived.omega_mode),
        omega_a_rad_per_s: scenario.qd.omega_a,
        omega_a_ev: units::rad_per_s_to_ev(scenario.qd.omega_a),
        norm_sq_inv_f_m2_per_j: q.norm_sq_inv,
        u0: q.u0,
        mode_volume_m3: q.mode_volume,
        field_amp_v_per_m: q.field_amp,
        coupling_g_rad_per_s: g,
        coupling_g_ev: units::rad_per_s_to_ev(g),
        gamma_r_per_s: gamma_r,
        gamma_0_per_s: scenario.ti.dielectric.gamma_0,
        gamma_s_per_s: scenario.qd.gamma_s,
        stark: StarkReport {
            probe_field_v_per_m: probe_field,
            shift_j: shift,
            shift_ev: units::j_to_ev(shift),
            threshold_field_v_per_m: threshold_field,
            admissible,
        },
    })
}
