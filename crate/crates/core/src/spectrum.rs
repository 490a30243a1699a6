//! Closed-form absorption spectrum of the hybrid with reservoir
//! self-energies, plus sweep and line-shape analysis machinery.
//!
//! The retarded Green function of the sphere mode, after eliminating the
//! reservoir and dipole functions from the equation-of-motion chain and
//! truncating <sigma_+ sigma_-> -> n, gives
//!
//! ```text
//! sigma(w) ~ Im [ w - W_ti - Gamma / (w - W_qd) ]^-1
//! W_ti  = Omega + varpi_11 + varpi_22
//! W_qd  = omega_a + (1 - 2n) varpi_33
//! Gamma = (1 - 2n) (g + varpi_13)(g + varpi_31)
//! ```
//!
//! The reservoirs are flat-band: the couplings T_i = sqrt(gamma_i / 2 pi)
//! are frequency independent, the Cauchy principal-value part of the
//! self-energy vanishes, and varpi_ij = i sqrt(gamma_i gamma_j) / 2 is a
//! pure decay with no Lamb shift. The overall proportionality constant of
//! sigma is not fixed; spectra are reported in arbitrary units.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagnostics::{Diagnostic, Diagnostics};
use crate::error::PhysicsError;
use crate::materials::PhysicalConstants;
use crate::quantization::{
    coupling_strength, dielectric_from_pinned_mode, normalization_constants,
    radiative_decay_rate, HybridScenario, Orientation,
};
use crate::materials::TIMaterial;

/// Reservoir channels of the open system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    /// Sphere mode scattering into free-space photons (gamma_r).
    ModeRadiative,
    /// Ohmic losses of the sphere mode (gamma_0).
    ModeOhmic,
    /// Spontaneous emission of the dot into the radiative bath (gamma_s).
    DotRadiative,
}

/// Decay rates of the three reservoir channels (1/s).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReservoirCouplings {
    pub gamma_r: f64,
    pub gamma_0: f64,
    pub gamma_s: f64,
}

impl ReservoirCouplings {
    pub fn rate(&self, channel: Channel) -> f64 {
        match channel {
            Channel::ModeRadiative => self.gamma_r,
            Channel::ModeOhmic => self.gamma_0,
            Channel::DotRadiative => self.gamma_s,
        }
    }

    /// Flat-band coupling amplitude T_i = sqrt(gamma_i / 2 pi).
    pub fn t_coupling(&self, channel: Channel) -> f64 {
        (self.rate(channel) / (2.0 * std::f64::consts::PI)).sqrt()
    }
}

/// Flat-band reservoir self-energy varpi_ij = i pi T_i T_j =
/// i sqrt(gamma_i gamma_j) / 2. The principal-value shift vanishes for
/// constant couplings, so the result is independent of `omega` and purely
/// imaginary (decay, no Lamb shift).
pub fn varpi(
    couplings: &ReservoirCouplings,
    i: Channel,
    j: Channel,
    _omega: f64,
) -> Complex64 {
    Complex64::new(
        0.0,
        (couplings.rate(i) * couplings.rate(j)).sqrt() / 2.0,
    )
}

/// The three complex constants of the closed-form line shape.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FanoParameters {
    /// Dressed sphere-mode pole W_ti = Omega + i (gamma_r + gamma_0) / 2 (rad/s).
    pub ti_pole: Complex64,
    /// Dressed dot pole W_qd = omega_a + i (1 - 2n) gamma_s / 2 (rad/s).
    pub qd_pole: Complex64,
    /// Interference strength Gamma = (1-2n)(g + i sqrt(gamma_r gamma_s)/2)^2
    /// ((rad/s)^2).
    pub mixing: Complex64,
}

pub fn fano_parameters(
    omega_mode: f64,
    omega_a: f64,
    n_excitation: f64,
    g: f64,
    couplings: &ReservoirCouplings,
) -> FanoParameters {
    let pop = 1.0 - 2.0 * n_excitation;
    let w11 = varpi(couplings, Channel::ModeRadiative, Channel::ModeRadiative, 0.0);
    let w22 = varpi(couplings, Channel::ModeOhmic, Channel::ModeOhmic, 0.0);
    let w33 = varpi(couplings, Channel::DotRadiative, Channel::DotRadiative, 0.0);
    let w13 = varpi(couplings, Channel::ModeRadiative, Channel::DotRadiative, 0.0);
    FanoParameters {
        ti_pole: omega_mode + w11 + w22,
        qd_pole: omega_a + pop * w33,
        mixing: pop * (g + w13) * (g + w13),
    }
}

/// Absorption at `omega` (arbitrary units, >= 0 for passive configurations).
///
/// Exactly on the dot pole (reachable only when its channel is lossless) the
/// interference term diverges and the line shape takes its limiting value 0,
/// the perfect Fano zero. Fails only when the outer denominator vanishes
/// exactly, which requires a fully lossless configuration; add nonzero decay.
pub fn absorption(omega: f64, fano: &FanoParameters) -> Result<f64, PhysicsError> {
    let mut denom = Complex64::from(omega) - fano.ti_pole;
    if fano.mixing != Complex64::from(0.0) {
        let qd_det = Complex64::from(omega) - fano.qd_pole;
        if qd_det.norm() == 0.0 {
            return Ok(0.0);
        }
        denom -= fano.mixing / qd_det;
    }
    if denom.norm() == 0.0 {
        return Err(PhysicsError::LosslessSingularity { omega });
    }
    Ok((1.0 / denom).im)
}

/// Ratio of the dot and mode Green functions,
/// (1 - 2n)(g + varpi_31) / (w - W_qd). Poles only in the lossless limit.
pub fn zg_sigma_ratio(
    omega: f64,
    fano: &FanoParameters,
    g: f64,
    couplings: &ReservoirCouplings,
    n_excitation: f64,
) -> Result<Complex64, PhysicsError> {
    let det = Complex64::from(omega) - fano.qd_pole;
    if det.norm() == 0.0 {
        return Err(PhysicsError::LosslessSingularity { omega });
    }
    let w31 = varpi(couplings, Channel::DotRadiative, Channel::ModeRadiative, omega);
    Ok((1.0 - 2.0 * n_excitation) * (g + w31) / det)
}

/// Absorption assembled through the mode equation of motion with the dot
/// function substituted via [`zg_sigma_ratio`]; algebraically identical to
/// [`absorption`] and used as its consistency check.
pub fn absorption_from_eom_chain(
    omega: f64,
    fano: &FanoParameters,
    g: f64,
    couplings: &ReservoirCouplings,
    n_excitation: f64,
) -> Result<f64, PhysicsError> {
    let ratio = zg_sigma_ratio(omega, fano, g, couplings, n_excitation)?;
    let w13 = varpi(couplings, Channel::ModeRadiative, Channel::DotRadiative, omega);
    let denom = Complex64::from(omega) - fano.ti_pole - (g + w13) * ratio;
    if denom.norm() == 0.0 {
        return Err(PhysicsError::LosslessSingularity { omega });
    }
    Ok((1.0 / denom).im)
}

/// Kind of annotated spectral feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureKind {
    Peak,
    Dip,
}

/// One annotated extremum, refined by quadratic interpolation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Annotation {
    pub kind: FeatureKind,
    /// Refined location (rad/s).
    pub omega: f64,
    /// Spectrum value at the refined location.
    pub sigma: f64,
    /// Height above the higher flanking saddle (peaks) or depth below the
    /// lower flanking maximum (dips).
    pub prominence: f64,
}

/// Derived scalars recorded next to each sampled spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumMeta {
    pub omega_mode: f64,
    pub coupling_g: f64,
    pub gamma_r: f64,
    pub gamma_0: f64,
    pub gamma_s: f64,
    pub n_excitation: f64,
    pub orientation: Orientation,
}

/// Sampled absorption curve with metadata and feature annotations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// Sample frequencies (rad/s), strictly increasing.
    pub omegas: Vec<f64>,
    /// Absorption in arbitrary units.
    pub sigma: Vec<f64>,
    pub meta: SpectrumMeta,
    pub scenario: HybridScenario,
    pub annotations: Vec<Annotation>,
}

/// Fraction of the global maximum a dip's flanking maxima must clear.
const PROMINENCE_THRESHOLD: f64 = 0.01;

/// Locate local extrema of `sigma`, refine each by one quadratic
/// interpolation through its three-point neighbourhood, and classify dips
/// (a local minimum flanked by two maxima above the prominence threshold).
///
/// `reevaluate` supplies the exact curve value at a refined abscissa; when
/// it declines, the parabola vertex value is used.
pub fn annotate(
    omegas: &[f64],
    sigma: &[f64],
    reevaluate: impl Fn(f64) -> Option<f64>,
) -> Vec<Annotation> {
    assert_eq!(omegas.len(), sigma.len());
    if sigma.len() < 3 {
        return Vec::new();
    }
    let global_max = sigma.iter().cloned().fold(f64::MIN, f64::max);

    #[derive(Clone, Copy)]
    struct Extremum {
        idx: usize,
        is_max: bool,
    }
    let mut extrema = Vec::new();
    for k in 1..sigma.len() - 1 {
        if sigma[k] > sigma[k - 1] && sigma[k] > sigma[k + 1] {
            extrema.push(Extremum { idx: k, is_max: true });
        } else if sigma[k] < sigma[k - 1] && sigma[k] < sigma[k + 1] {
            extrema.push(Extremum { idx: k, is_max: false });
        }
    }

    // saddle levels: previous/next opposite extremum, else the window edge
    let level = |e: Option<&Extremum>, edge: f64| e.map(|x| sigma[x.idx]).unwrap_or(edge);

    let mut out = Vec::new();
    for (pos, e) in extrema.iter().enumerate() {
        let k = e.idx;
        // quadratic refinement on the (possibly non-uniform) neighbourhood
        let (x0, x1, x2) = (omegas[k - 1], omegas[k], omegas[k + 1]);
        let (y0, y1, y2) = (sigma[k - 1], sigma[k], sigma[k + 1]);
        let d01 = (x1 - x0) * (y1 - y2);
        let d21 = (x1 - x2) * (y1 - y0);
        let denom = d01 - d21;
        let x_ref = if denom != 0.0 {
            x1 - 0.5 * ((x1 - x0) * d01 - (x1 - x2) * d21) / denom
        } else {
            x1
        };
        let x_ref = x_ref.clamp(x0, x2);
        let y_ref = reevaluate(x_ref).unwrap_or(y1).max(f64::MIN);

        let prev = extrema[..pos].iter().rev().find(|x| x.is_max != e.is_max);
        let next = extrema[pos + 1..].iter().find(|x| x.is_max != e.is_max);
        if e.is_max {
            let saddle = level(prev, sigma[0]).max(level(next, sigma[sigma.len() - 1]));
            out.push(Annotation {
                kind: FeatureKind::Peak,
                omega: x_ref,
                sigma: y_ref,
                prominence: y_ref - saddle,
            });
        } else {
            // only a minimum flanked by two sufficiently prominent maxima
            // counts as a dip
            let flanked = prev.is_some() && next.is_some();
            if flanked {
                let lo = level(prev, 0.0).min(level(next, 0.0));
                let prominence = lo - y_ref;
                if prominence >= PROMINENCE_THRESHOLD * global_max {
                    out.push(Annotation {
                        kind: FeatureKind::Dip,
                        omega: x_ref,
                        sigma: y_ref,
                        prominence,
                    });
                }
            }
        }
    }
    out
}

fn check_grid(omegas: &[f64]) -> Result<(), PhysicsError> {
    if omegas.is_empty() {
        return Err(PhysicsError::invalid("frequency grid is empty"));
    }
    if omegas.iter().any(|w| !w.is_finite()) {
        return Err(PhysicsError::invalid("frequency grid contains non-finite values"));
    }
    if omegas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(PhysicsError::invalid("frequency grid must be strictly increasing"));
    }
    Ok(())
}

/// Compute the absorption spectrum of a scenario on a strictly increasing
/// frequency grid (rad/s). Derives Omega, gamma_r, the quantization
/// constants and the coupling from scratch.
pub fn compute_spectrum(
    scenario: &HybridScenario,
    omegas: &[f64],
    consts: &PhysicalConstants,
    diags: &mut Diagnostics,
) -> Result<Spectrum, PhysicsError> {
    check_grid(omegas)?;
    scenario.validate(consts, diags)?;

    let derived = scenario.derived_frequencies(consts);
    let qconsts = normalization_constants(
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
    let couplings = ReservoirCouplings {
        gamma_r,
        gamma_0: scenario.ti.dielectric.gamma_0,
        gamma_s: scenario.qd.gamma_s,
    };
    let g = coupling_strength(scenario, &qconsts, derived.omega_mode, consts);
    let fano = fano_parameters(
        derived.omega_mode,
        scenario.qd.omega_a,
        scenario.qd.n_excitation,
        g,
        &couplings,
    );

    let sigma = omegas
        .iter()
        .map(|&w| absorption(w, &fano))
        .collect::<Result<Vec<f64>, _>>()?;
    let annotations = annotate(omegas, &sigma, |w| absorption(w, &fano).ok());

    Ok(Spectrum {
        omegas: omegas.to_vec(),
        sigma,
        meta: SpectrumMeta {
            omega_mode: derived.omega_mode,
            coupling_g: g,
            gamma_r,
            gamma_0: couplings.gamma_0,
            gamma_s: couplings.gamma_s,
            n_excitation: scenario.qd.n_excitation,
            orientation: scenario.orientation,
        },
        scenario: scenario.clone(),
        annotations,
    })
}

/// Sweep axes. `AlphaTilde` values are theta/pi; scenarios carrying a pinned
/// mode re-derive their oscillator pair per value so the pinned (Omega,
/// eps1(0)) constraints keep holding.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepSpec {
    /// Dot transition frequencies (rad/s).
    OmegaA(Vec<f64>),
    /// Center-to-center separations (m).
    Separation(Vec<f64>),
    /// theta/pi values (alpha_tilde in units of the fine-structure constant).
    AlphaTilde(Vec<f64>),
    /// Dot excitation n.
    Excitation(Vec<f64>),
    Orientation(Vec<Orientation>),
}

impl SweepSpec {
    pub fn axis_name(&self) -> &'static str {
        match self {
            SweepSpec::OmegaA(_) => "omega_a",
            SweepSpec::Separation(_) => "r",
            SweepSpec::AlphaTilde(_) => "alpha_tilde",
            SweepSpec::Excitation(_) => "n",
            SweepSpec::Orientation(_) => "orientation",
        }
    }

    pub fn len(&self) -> usize {
        match self {
            SweepSpec::OmegaA(v)
            | SweepSpec::Separation(v)
            | SweepSpec::AlphaTilde(v)
            | SweepSpec::Excitation(v) => v.len(),
            SweepSpec::Orientation(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// One sweep output: the applied value (as a deterministic label plus the
/// raw scalar when applicable), the spectrum, and per-point diagnostics.
#[derive(Debug, Clone)]
pub struct SweepEntry {
    pub label: String,
    pub scalar: Option<f64>,
    pub spectrum: Spectrum,
    pub diagnostics: Vec<Diagnostic>,
}

fn apply_scalar(
    base: &HybridScenario,
    axis: &SweepSpec,
    value: f64,
    consts: &PhysicalConstants,
) -> Result<HybridScenario, PhysicsError> {
    let mut s = base.clone();
    match axis {
        SweepSpec::OmegaA(_) => s.qd.omega_a = value,
        SweepSpec::Separation(_) => s.separation = value,
        SweepSpec::AlphaTilde(_) => {
            let dielectric = match s.pinned {
                Some(pinned) => dielectric_from_pinned_mode(
                    pinned,
                    &s.host,
                    s.ti.mu_1,
                    value,
                    s.ti.dielectric.gamma_0,
                    consts,
                )?,
                None => s.ti.dielectric,
            };
            s.ti = TIMaterial::new(dielectric, s.ti.mu_1, value, s.ti.quantized_theta)?;
        }
        SweepSpec::Excitation(_) => {
            s.qd = crate::quantization::QuantumDot::new(
                s.qd.omega_a,
                s.qd.dipole,
                s.qd.gamma_s,
                s.qd.polarizability,
                value,
            )?;
        }
        SweepSpec::Orientation(_) => unreachable!("orientation handled separately"),
    }
    Ok(s)
}

/// Run one spectrum per sweep value, in parallel, with deterministic
/// ordering. Per-point failures carry the offending axis value.
pub fn sweep(
    base: &HybridScenario,
    omegas: &[f64],
    spec: &SweepSpec,
    consts: &PhysicalConstants,
) -> Result<Vec<SweepEntry>, PhysicsError> {
    check_grid(omegas)?;
    if spec.is_empty() {
        return Err(PhysicsError::invalid("sweep value list is empty"));
    }

    let run = |scenario: HybridScenario, label: String, scalar: Option<f64>| {
        let mut diags = Diagnostics::new();
        let spectrum = compute_spectrum(&scenario, omegas, consts, &mut diags)?;
        Ok(SweepEntry {
            label,
            scalar,
            spectrum,
            diagnostics: diags.into_vec(),
        })
    };

    match spec {
        SweepSpec::Orientation(values) => values
            .par_iter()
            .map(|&o| {
                let mut s = base.clone();
                s.orientation = o;
                run(s, o.to_string(), None).map_err(|e| PhysicsError::SweepPoint {
                    axis: spec.axis_name(),
                    value: f64::NAN,
                    source: Box::new(e),
                })
            })
            .collect(),
        SweepSpec::OmegaA(values)
        | SweepSpec::Separation(values)
        | SweepSpec::AlphaTilde(values)
        | SweepSpec::Excitation(values) => values
            .par_iter()
            .map(|&v| {
                apply_scalar(base, spec, v, consts)
                    .and_then(|s| run(s, format!("{v:e}"), Some(v)))
                    .map_err(|e| PhysicsError::SweepPoint {
                        axis: spec.axis_name(),
                        value: v,
                        source: Box::new(e),
                    })
            })
            .collect(),
    }
}
