//! Unit conversions between the SI internals and the eV/nm interface layer.
//!
//! Every formula in the physics modules is written in SI (rad/s, m, C·m,
//! V/m). The conversions here are the single place where electron-volts and
//! nanometres enter.

/// Reduced Planck constant (J·s), 2019 SI exact-derived value. Fixed so that
/// eV <-> rad/s conversions are bit-reproducible across builds.
pub const HBAR: f64 = 1.054571817e-34;

/// Electron-volt in joules (exact since the 2019 SI redefinition).
pub const EV: f64 = 1.602176634e-19;

/// Angular frequency (rad/s) of a photon with the given energy in eV.
pub fn ev_to_rad_per_s(energy_ev: f64) -> f64 {
    energy_ev * EV / HBAR
}

/// Photon energy in eV for an angular frequency in rad/s.
pub fn rad_per_s_to_ev(omega: f64) -> f64 {
    omega * HBAR / EV
}

pub fn nm_to_m(nm: f64) -> f64 {
    nm * 1e-9
}

pub fn m_to_nm(m: f64) -> f64 {
    m * 1e9
}

/// Joules to eV.
pub fn j_to_ev(energy_j: f64) -> f64 {
    energy_j / EV
}
