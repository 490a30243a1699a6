//! Independent brute-force validators for the closed-form implementations.
//!
//! Everything here takes a deliberately different derivation path from the
//! main modules: the sphere response is re-solved as a Legendre-polynomial
//! expansion of the scalar potentials with fields reconstructed by analytic
//! gradients; the interface conditions are checked as raw residuals at
//! near-surface sample points; the quantization integrals are evaluated by
//! quadrature with a numerically differentiated dispersive-energy weight;
//! and the radiative rate is rebuilt from radiated dipole power over stored
//! energy. None of the field or energy formulas are shared with the modules
//! under test.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::PhysicsError;
use crate::materials::{effective_permeability, HostMedium, PhysicalConstants, TIMaterial};
use crate::quadrature::{integrate_adaptive, sphere_rule, QuadratureSpec};
use crate::quantization::{
    coupling_strength, normalization_constants, radiative_decay_rate, HybridScenario,
};
use crate::quasistatics::{
    derived_frequencies, g_vector, solve_sphere_response, xi, Axis, Branch, SphereGeometry,
    SphereResponse,
};
use crate::spectrum::{
    absorption, absorption_from_eom_chain, fano_parameters, ReservoirCouplings,
};
use crate::vec3::{self, CVec3, Vec3};

/// Anything that can report fields on a chosen side of the interface.
pub trait BranchFieldSolution {
    fn radius(&self) -> f64;
    /// (E, B) phasors at `position`, forced onto the given branch.
    fn eval(&self, position: Vec3, branch: Branch) -> (CVec3, CVec3);
}

impl BranchFieldSolution for SphereResponse {
    fn radius(&self) -> f64 {
        self.sphere_radius()
    }

    fn eval(&self, position: Vec3, branch: Branch) -> (CVec3, CVec3) {
        let s = self.field_at_branch(position, branch);
        (s.e, s.b)
    }
}

/// Legendre expansion coefficients of the electric and magnetic scalar
/// potentials, one entry per multipole order starting at l = 1.
///
/// For a uniform drive every order above the dipole vanishes; the solver
/// keeps them anyway so that the purity claim is checked, not assumed.
#[derive(Debug, Clone)]
pub struct LegendreSeriesSolution {
    pub ell_max: usize,
    /// phi_in coefficients A_l (V/m^l).
    pub coeff_a: Vec<Complex64>,
    /// phi_out coefficients C_l (V·m^(l+1)).
    pub coeff_c: Vec<Complex64>,
    /// psi_in coefficients D_l (T/m^(l-1)).
    pub coeff_d: Vec<Complex64>,
    /// psi_out coefficients F_l (T·m^(l+2)).
    pub coeff_f: Vec<Complex64>,
    /// Drive direction (unit vector).
    pub axis: Vec3,
    /// Drive magnitude (V/m).
    pub e0: f64,
    pub radius: f64,
}

/// Solve the boundary value problem as per-order 4x4 linear systems over the
/// potential expansions. Orders are decoupled; only l = 1 is driven.
pub fn solve_legendre_series(
    ti: &TIMaterial,
    host: &HostMedium,
    geom: &SphereGeometry,
    e0: Vec3,
    omega: f64,
    ell_max: usize,
    consts: &PhysicalConstants,
) -> Result<LegendreSeriesSolution, PhysicsError> {
    if ell_max < 1 {
        return Err(PhysicsError::invalid("ell_max must be >= 1"));
    }
    let e0_mag = vec3::norm(e0);
    let axis = if e0_mag > 0.0 {
        vec3::scale(e0, 1.0 / e0_mag)
    } else {
        [0.0, 0.0, 1.0]
    };
    let eps1 = ti.dielectric.epsilon(omega)?;
    let eps2 = Complex64::from(host.epsilon_2);
    let a_t = Complex64::from(ti.alpha_tilde(consts));
    let zero = Complex64::from(0.0);
    let one = Complex64::from(1.0);

    let radius = geom.radius;
    let mut coeff_a = Vec::with_capacity(ell_max);
    let mut coeff_c = Vec::with_capacity(ell_max);
    let mut coeff_d = Vec::with_capacity(ell_max);
    let mut coeff_f = Vec::with_capacity(ell_max);

    for ell in 1..=ell_max {
        let lf = ell as f64;
        // unknowns: (A_l, C_l / R^(2l+1), c D_l, c F_l / R^(2l+1)); the
        // rescaling keeps every matrix entry of comparable size.
        //   row 1: potential continuity (tangential E)
        //   row 2: normal B continuity
        //   row 3: normal D jump sourced by alpha_tilde c B_n
        //   row 4: tangential H jump sourced by (alpha_tilde / c) E_t
        let m = Matrix4::new(
            one,
            -one,
            zero,
            zero,
            zero,
            zero,
            Complex64::from(lf),
            Complex64::from(lf + 1.0),
            eps1 * lf,
            eps2 * (lf + 1.0),
            a_t * lf,
            zero,
            a_t,
            zero,
            Complex64::from(-1.0 / ti.mu_1),
            Complex64::from(1.0 / host.mu_2),
        );
        let drive = if ell == 1 { e0_mag } else { 0.0 };
        let rhs = Vector4::new(
            Complex64::from(-drive),
            zero,
            -eps2 * drive,
            zero,
        );
        let solution = m
            .lu()
            .solve(&rhs)
            .ok_or(PhysicsError::PlasmonPole { omega })?;

        let scale_out = radius.powi(2 * ell as i32 + 1);
        coeff_a.push(solution[0]);
        coeff_c.push(solution[1] * scale_out);
        coeff_d.push(solution[2] / consts.c);
        coeff_f.push(solution[3] * scale_out / consts.c);
    }

    Ok(LegendreSeriesSolution {
        ell_max,
        coeff_a,
        coeff_c,
        coeff_d,
        coeff_f,
        axis,
        e0: e0_mag,
        radius,
    })
}

/// Legendre polynomials P_0..P_n and derivatives at `x`, by the three-term
/// recurrence and P_l' = P_{l-1}' + (2l - 1) P_{l-1} (stable at |x| = 1).
fn legendre_with_derivative(n: usize, x: f64) -> (Vec<f64>, Vec<f64>) {
    let mut p = vec![0.0; n + 1];
    let mut dp = vec![0.0; n + 1];
    p[0] = 1.0;
    if n >= 1 {
        p[1] = x;
        dp[1] = 1.0;
    }
    for l in 1..n {
        let lf = l as f64;
        p[l + 1] = ((2.0 * lf + 1.0) * x * p[l] - lf * p[l - 1]) / (lf + 1.0);
        dp[l + 1] = dp[l] + (2.0 * lf + 1.0) * p[l];
    }
    (p, dp)
}

impl LegendreSeriesSolution {
    /// Return a copy with the dipole coefficient of phi_out multiplied by
    /// `factor`. Test hook for the residual detector.
    pub fn with_perturbed_c1(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.coeff_c[0] *= Complex64::from(factor);
        out
    }

    fn gradient_sum(
        &self,
        coeff_regular: &[Complex64],
        coeff_decaying: &[Complex64],
        position: Vec3,
        branch: Branch,
    ) -> CVec3 {
        let r = vec3::norm(position);
        if r == 0.0 {
            // smooth interior limit: only the uniform l = 1 term survives
            return vec3::cscale(vec3::c_from_real(self.axis), -coeff_regular[0]);
        }
        let rhat = vec3::scale(position, 1.0 / r);
        let x = vec3::dot(rhat, self.axis).clamp(-1.0, 1.0);
        let (p, dp) = legendre_with_derivative(self.ell_max, x);
        let tangent = vec3::sub(self.axis, vec3::scale(rhat, x));

        let mut field = vec3::ZERO_C;
        for ell in 1..=self.ell_max {
            let lf = ell as f64;
            let (coeff, radial, radial_d) = match branch {
                Branch::Interior => (
                    coeff_regular[ell - 1],
                    r.powi(ell as i32 - 1),
                    lf * r.powi(ell as i32 - 1),
                ),
                Branch::Exterior => (
                    coeff_decaying[ell - 1],
                    r.powi(-(ell as i32) - 2),
                    -(lf + 1.0) * r.powi(-(ell as i32) - 2),
                ),
            };
            // -grad[f(r) P_l(cos t)] = -[f' P_l rhat + (f/r) P_l' (u - x rhat)]
            let geometric = vec3::add(
                vec3::scale(rhat, radial_d * p[ell]),
                vec3::scale(tangent, radial * dp[ell]),
            );
            field = vec3::cadd(field, vec3::cscale(vec3::c_from_real(geometric), -coeff));
        }
        field
    }

    /// Electric field on the requested branch; the exterior includes the
    /// uniform drive.
    pub fn electric_field(&self, position: Vec3, branch: Branch) -> CVec3 {
        let mut e = self.gradient_sum(&self.coeff_a, &self.coeff_c, position, branch);
        if branch == Branch::Exterior {
            e = vec3::cadd(e, vec3::c_from_real(vec3::scale(self.axis, self.e0)));
        }
        e
    }

    /// Induced magnetic field on the requested branch.
    pub fn magnetic_field(&self, position: Vec3, branch: Branch) -> CVec3 {
        self.gradient_sum(&self.coeff_d, &self.coeff_f, position, branch)
    }

    /// Largest |coefficient| of any order l >= 2, relative to the dipole
    /// magnitude; certifies multipole purity for uniform drive.
    pub fn higher_order_ratio(&self) -> f64 {
        let dipole_scale = self.coeff_a[0]
            .norm()
            .max(self.coeff_c[0].norm() / self.radius.powi(3))
            .max(1e-300);
        let mut worst: f64 = 0.0;
        for ell in 2..=self.ell_max {
            let s = self.radius.powi(2 * ell as i32 + 1);
            worst = worst
                .max(self.coeff_a[ell - 1].norm() / dipole_scale)
                .max(self.coeff_c[ell - 1].norm() / s / dipole_scale)
                .max(self.coeff_d[ell - 1].norm() * 3e8 / dipole_scale)
                .max(self.coeff_f[ell - 1].norm() * 3e8 / s / dipole_scale);
        }
        worst
    }
}

impl BranchFieldSolution for LegendreSeriesSolution {
    fn radius(&self) -> f64 {
        self.radius
    }

    fn eval(&self, position: Vec3, branch: Branch) -> (CVec3, CVec3) {
        (
            self.electric_field(position, branch),
            self.magnetic_field(position, branch),
        )
    }
}

/// Maximum relative residual of each interface condition over the sampled
/// surface points.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ResidualReport {
    /// [n·(eps E)] - alpha_tilde c B·n
    pub normal_d: f64,
    /// [E x n]
    pub tangential_e: f64,
    /// [B·n]
    pub normal_b: f64,
    /// [n x (B/mu)] - (alpha_tilde/c) E x n
    pub tangential_h: f64,
}

impl ResidualReport {
    pub fn worst(&self) -> f64 {
        self.normal_d
            .max(self.tangential_e)
            .max(self.normal_b)
            .max(self.tangential_h)
    }
}

/// Fractional offset used to select a branch just off the interface; small
/// enough that the O(offset) truncation stays far below the residual
/// tolerances, large enough to be representable.
pub const SURFACE_OFFSET: f64 = 1e-13;

/// Evaluate all four interface conditions at `n_points` random surface
/// directions, sampling each side at r = R (1 +- SURFACE_OFFSET), and return
/// the worst relative residual per condition.
#[allow(clippy::too_many_arguments)]
pub fn boundary_residuals(
    solution: &dyn BranchFieldSolution,
    ti: &TIMaterial,
    host: &HostMedium,
    omega: f64,
    n_points: usize,
    seed: u64,
    consts: &PhysicalConstants,
) -> Result<ResidualReport, PhysicsError> {
    let eps1 = ti.dielectric.epsilon(omega)?;
    let eps2 = Complex64::from(host.epsilon_2);
    let a_t = ti.alpha_tilde(consts);
    let radius = solution.radius();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut report = ResidualReport {
        normal_d: 0.0,
        tangential_e: 0.0,
        normal_b: 0.0,
        tangential_h: 0.0,
    };

    let rel = |num: f64, scale: f64| if scale > 0.0 { num / scale } else { 0.0 };

    for _ in 0..n_points {
        let z: f64 = rng.gen_range(-1.0..1.0);
        let phi: f64 = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
        let s = (1.0 - z * z).sqrt();
        let n = [s * phi.cos(), s * phi.sin(), z];

        let inside = vec3::scale(n, radius * (1.0 - SURFACE_OFFSET));
        let outside = vec3::scale(n, radius * (1.0 + SURFACE_OFFSET));
        let (e_in, b_in) = solution.eval(inside, Branch::Interior);
        let (e_out, b_out) = solution.eval(outside, Branch::Exterior);

        // normal D with the magnetoelectric source term
        let t1 = eps2 * vec3::cdot_rn(n, e_out);
        let t2 = eps1 * vec3::cdot_rn(n, e_in);
        let t3 = Complex64::from(a_t * consts.c) * vec3::cdot_rn(n, b_in);
        report.normal_d = report.normal_d.max(rel(
            (t1 - t2 - t3).norm(),
            t1.norm().max(t2.norm()).max(t3.norm()),
        ));

        // tangential E continuity
        let jump_e = vec3::csub(cross_nc(n, e_out), cross_nc(n, e_in));
        report.tangential_e = report.tangential_e.max(rel(
            vec3::cnorm(jump_e),
            vec3::cnorm(e_out).max(vec3::cnorm(e_in)),
        ));

        // normal B continuity
        let jump_b = vec3::cdot_rn(n, b_out) - vec3::cdot_rn(n, b_in);
        report.normal_b = report.normal_b.max(rel(
            jump_b.norm(),
            vec3::cnorm(b_out).max(vec3::cnorm(b_in)),
        ));

        // tangential H with the magnetoelectric source term
        let u1 = vec3::cscale(cross_nc(n, b_out), (1.0 / host.mu_2).into());
        let u2 = vec3::cscale(cross_nc(n, b_in), (1.0 / ti.mu_1).into());
        let u3 = vec3::cscale(
            vec3::ccross(e_in, vec3::c_from_real(n)),
            (a_t / consts.c).into(),
        );
        let lhs = vec3::csub(vec3::csub(u1, u2), u3);
        report.tangential_h = report.tangential_h.max(rel(
            vec3::cnorm(lhs),
            vec3::cnorm(u1).max(vec3::cnorm(u2)).max(vec3::cnorm(u3)),
        ));
    }
    Ok(report)
}

fn cross_nc(n: Vec3, v: CVec3) -> CVec3 {
    vec3::cross_rn(n, v)
}

/// Quadrature evaluation of the quantization integrals.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EnergyIntegrals {
    /// 1/N^2 via quadrature (F·m^2/J).
    pub norm_sq_inv: f64,
    /// Mode volume via quadrature over the published peak-density convention.
    pub mode_volume: f64,
    /// Bare interior profile integral, integral of |G|^2 over r < R (m^3).
    pub interior_profile: f64,
    /// Bare exterior profile integral (m^3).
    pub exterior_profile: f64,
    /// Peak energy density factor evaluated from its pointwise definition
    /// with the numerically differentiated dispersive weight.
    pub u0_definition: f64,
    /// Peak energy density factor in the published closed-form convention
    /// (shared with the closed-form mode volume so the two V_m values are
    /// comparable).
    pub u0_published: f64,
    /// Central-difference d[Re(w eps1)]/dw at Omega.
    pub dispersive_derivative: f64,
}

/// Integrate the defining mode-energy integrals by product-Gauss x adaptive
/// Gauss-Kronrod quadrature (exterior truncated with its analytic r^-4
/// tail), with the dispersive-energy weight obtained by numerical
/// differentiation rather than the analytic high-Q closed form.
pub fn numeric_energy_integral(
    ti: &TIMaterial,
    host: &HostMedium,
    geom: &SphereGeometry,
    omega_mode: f64,
    consts: &PhysicalConstants,
    spec: &QuadratureSpec,
) -> Result<EnergyIntegrals, PhysicsError> {
    let radius = geom.radius;
    let a_t = ti.alpha_tilde(consts);
    let mu_e = effective_permeability(ti, host);

    // d[Re(w eps1)]/dw at Omega by Richardson-extrapolated central
    // differences; the function is smooth there (the dielectric pole sits at
    // omega_R, not Omega)
    let h = 1e-4 * omega_mode;
    let f = |w: f64| -> Result<f64, PhysicsError> {
        Ok(w * ti.dielectric.epsilon(w)?.re)
    };
    let central = |h: f64| -> Result<f64, PhysicsError> {
        Ok((f(omega_mode + h)? - f(omega_mode - h)?) / (2.0 * h))
    };
    let dispersive = (4.0 * central(h / 2.0)? - central(h)?) / 3.0;

    let weight_in = dispersive + mu_e * mu_e * a_t * a_t / ti.mu_1;
    let weight_out = host.epsilon_2 + mu_e * mu_e * a_t * a_t / (4.0 * host.mu_2);

    // bare |G_z|^2 volume integrals, direction by direction
    let nodes = sphere_rule(spec.n_theta, spec.n_phi);
    let mut interior = 0.0;
    let mut exterior = 0.0;
    for node in &nodes {
        let radial = |r: f64| -> f64 {
            let g = g_vector(Axis::Z, vec3::scale(node.dir, r), radius);
            vec3::dot(g, g) * r * r
        };
        interior += node.weight * integrate_adaptive(radial, 0.0, radius, spec)?.value;
        let r_max = spec.r_max_factor * radius;
        let trunk = integrate_adaptive(radial, radius, r_max, spec)?.value;
        let tail = radial(r_max) * r_max / 3.0;
        exterior += node.weight * (trunk + tail);
    }

    let total_weighted = weight_in * interior + weight_out * exterior;
    let norm_sq_inv = consts.epsilon_0 / (2.0 * consts.hbar * omega_mode) * total_weighted;

    let eps1_0 = ti.dielectric.epsilon_static();
    if eps1_0 - 1.0 < 1e-12 {
        return Err(PhysicsError::DegeneratePermittivity);
    }
    let s = 2.0 * host.epsilon_2 + 1.0 + mu_e * a_t * a_t;
    let u0_published = 2.0 * (host.epsilon_2 + 1.0)
        + mu_e * a_t * a_t * (1.0 + mu_e / ti.mu_1)
        + 2.0 * s / (eps1_0 - 1.0);
    let u0_definition = weight_in;

    Ok(EnergyIntegrals {
        norm_sq_inv,
        mode_volume: total_weighted / u0_published,
        interior_profile: interior,
        exterior_profile: exterior,
        u0_definition,
        u0_published,
        dispersive_derivative: dispersive,
    })
}

/// Radiative decay rebuilt from radiated power over stored energy.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EnergyBalance {
    /// Closed-form rate (1/s).
    pub gamma_r_closed: f64,
    /// Larmor power of the mode dipoles divided by the cycle-averaged
    /// stored energy, with the stored energy taken from quadrature.
    pub gamma_r_energy_ratio: f64,
    pub rel_err: f64,
}

/// Check the identity P = gamma_r <U> between the dipole radiation of the
/// localized mode and its stored energy.
pub fn energy_balance(
    ti: &TIMaterial,
    host: &HostMedium,
    geom: &SphereGeometry,
    consts: &PhysicalConstants,
    spec: &QuadratureSpec,
) -> Result<EnergyBalance, PhysicsError> {
    let derived = derived_frequencies(ti, host, consts);
    let omega = derived.omega_mode;
    let integrals = numeric_energy_integral(ti, host, geom, omega, consts, spec)?;

    // unit drive impulse: mode amplitude and its dipole pair
    let lambda = derived.eta * derived.omega_0 * derived.omega_0 / (2.0 * omega);
    let stored = 0.5 * consts.hbar * omega * lambda * lambda * integrals.norm_sq_inv;

    let a_t = ti.alpha_tilde(consts);
    let mu_e = effective_permeability(ti, host);
    let p = 4.0 * std::f64::consts::PI * consts.epsilon_0 * host.epsilon_2 * lambda
        * geom.radius.powi(3);
    let m = mu_e * a_t * consts.c / (2.0 * host.epsilon_2 * host.mu_2) * p;
    let power = consts.mu_0 * host.mu_2 * omega.powi(4) * (p * p + m * m / (consts.c * consts.c))
        / (12.0 * std::f64::consts::PI * consts.c);

    let ratio = power / stored;
    let closed = radiative_decay_rate(ti, host, geom, omega, consts)?;
    Ok(EnergyBalance {
        gamma_r_closed: closed,
        gamma_r_energy_ratio: ratio,
        rel_err: (ratio - closed).abs() / closed,
    })
}

/// Named tolerances for the validation suite.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ToleranceProfile {
    pub name: &'static str,
    pub boundary: f64,
    pub legendre_fields: f64,
    pub multipole_purity: f64,
    pub quadrature_norm: f64,
    pub quadrature_mode_volume: f64,
    pub profile_integrals: f64,
    pub energy_balance: f64,
    pub zg_consistency: f64,
}

impl ToleranceProfile {
    pub fn default_profile() -> Self {
        ToleranceProfile {
            name: "default",
            boundary: 1e-10,
            legendre_fields: 1e-10,
            multipole_purity: 1e-12,
            quadrature_norm: 1e-6,
            quadrature_mode_volume: 1e-6,
            profile_integrals: 1e-7,
            energy_balance: 1e-9,
            zg_consistency: 1e-12,
        }
    }

    pub fn strict() -> Self {
        ToleranceProfile {
            name: "strict",
            boundary: 1e-11,
            legendre_fields: 1e-11,
            multipole_purity: 1e-13,
            quadrature_norm: 1e-7,
            quadrature_mode_volume: 1e-7,
            profile_integrals: 1e-8,
            energy_balance: 1e-10,
            zg_consistency: 1e-13,
        }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "default" => Some(Self::default_profile()),
            "strict" => Some(Self::strict()),
            _ => None,
        }
    }
}

/// Test hooks that deliberately break a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaultInjection {
    None,
    /// Multiply the exterior dipole potential coefficient by 1.01 before the
    /// residual checks; the tangential-E detector must fire.
    PerturbC1,
}

/// One validation check outcome.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub tolerance: f64,
    /// Worst observed metric (relative).
    pub observed: f64,
    pub pass: bool,
    pub detail: String,
}

/// Informational measurements that are reported, not gated.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportNote {
    pub code: String,
    pub value: f64,
    pub detail: String,
}

/// Machine-readable validation report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub schema_version: u32,
    pub profile: String,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub notes: Vec<ReportNote>,
    pub pass: bool,
}

fn check(name: &str, tolerance: f64, observed: f64, detail: String) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        tolerance,
        observed,
        pass: observed <= tolerance,
        detail,
    }
}

/// Run the full validation suite for one scenario: boundary residuals of the
/// closed form, Legendre cross-check, multipole purity, quadrature vs closed
/// forms, the radiated-power identity, and the internal consistency of the
/// spectral Green-function chain.
pub fn validate_scenario(
    scenario: &HybridScenario,
    consts: &PhysicalConstants,
    profile: &ToleranceProfile,
    seed: u64,
    fault: FaultInjection,
) -> Result<ValidationReport, PhysicsError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let ti = &scenario.ti;
    let host = &scenario.host;
    let geom = &scenario.geometry;
    let derived = derived_frequencies(ti, host, consts);
    let mut checks = Vec::new();
    let mut notes = Vec::new();

    // sample frequencies safely below the lossless plasmon pole at Omega
    let omegas: Vec<f64> = (0..3)
        .map(|_| rng.gen_range(0.2..0.8) * derived.omega_mode)
        .collect();

    // boundary residuals of the closed-form response
    let mut worst_boundary: f64 = 0.0;
    for &w in &omegas {
        let e0 = random_direction(&mut rng);
        let resp = solve_sphere_response(ti, host, geom, e0, w, consts)?;
        let rep = boundary_residuals(&resp, ti, host, w, 100, rng.gen(), consts)?;
        worst_boundary = worst_boundary.max(rep.worst());
    }
    checks.push(check(
        "boundary-residuals",
        profile.boundary,
        worst_boundary,
        "four interface conditions at 100 random surface points per frequency".into(),
    ));

    // Legendre series cross-check against the closed form
    let mut worst_field: f64 = 0.0;
    let mut worst_purity: f64 = 0.0;
    for &w in &omegas {
        let e0 = random_direction(&mut rng);
        let series = solve_legendre_series(ti, host, geom, e0, w, 4, consts)?;
        let series = match fault {
            FaultInjection::None => series,
            FaultInjection::PerturbC1 => series.with_perturbed_c1(1.01),
        };
        worst_purity = worst_purity.max(series.higher_order_ratio());
        let closed = solve_sphere_response(ti, host, geom, e0, w, consts)?;
        for _ in 0..20 {
            let dir = random_direction(&mut rng);
            let radial = rng.gen_range(0.1..3.0) * geom.radius;
            let pos = vec3::scale(dir, radial);
            let branch = if radial < geom.radius {
                Branch::Interior
            } else {
                Branch::Exterior
            };
            let (e_series, b_series) = series.eval(pos, branch);
            let closed_sample = closed.field_at_branch(pos, branch);
            let scale_e = vec3::cnorm(closed_sample.e);
            worst_field =
                worst_field.max(vec3::cnorm(vec3::csub(e_series, closed_sample.e)) / scale_e);
            let scale_b = vec3::cnorm(closed_sample.b);
            if scale_b > 0.0 {
                worst_field = worst_field
                    .max(vec3::cnorm(vec3::csub(b_series, closed_sample.b)) / scale_b);
            }
        }
        if fault == FaultInjection::PerturbC1 {
            let rep = boundary_residuals(&series, ti, host, w, 100, rng.gen(), consts)?;
            worst_boundary = worst_boundary.max(rep.worst());
            // overwrite the boundary check with the injected-fault result
            checks[0] = check(
                "boundary-residuals",
                profile.boundary,
                worst_boundary,
                "fault injected: exterior dipole coefficient scaled by 1.01".into(),
            );
        }
    }
    checks.push(check(
        "legendre-cross-check",
        profile.legendre_fields,
        worst_field,
        "series fields vs closed form at 20 random points per frequency".into(),
    ));
    checks.push(check(
        "legendre-multipole-purity",
        profile.multipole_purity,
        worst_purity,
        "orders l >= 2 must vanish for uniform drive".into(),
    ));

    // quadrature vs closed forms
    let quad_spec = QuadratureSpec::default();
    let integrals = numeric_energy_integral(ti, host, geom, derived.omega_mode, consts, &quad_spec)?;
    let qconsts = normalization_constants(ti, host, geom, derived.omega_mode, consts)?;
    checks.push(check(
        "quadrature-normalization",
        profile.quadrature_norm,
        (integrals.norm_sq_inv - qconsts.norm_sq_inv).abs() / qconsts.norm_sq_inv,
        format!(
            "1/N^2 quadrature {:e} vs closed form {:e}",
            integrals.norm_sq_inv, qconsts.norm_sq_inv
        ),
    ));
    checks.push(check(
        "quadrature-mode-volume",
        profile.quadrature_mode_volume,
        (integrals.mode_volume - qconsts.mode_volume).abs() / qconsts.mode_volume,
        format!(
            "V_m quadrature {:e} vs closed form {:e}",
            integrals.mode_volume, qconsts.mode_volume
        ),
    ));
    let pi = std::f64::consts::PI;
    let interior_exact = 4.0 * pi * geom.radius.powi(3) / 3.0;
    let exterior_exact = 8.0 * pi * geom.radius.powi(3) / 3.0;
    checks.push(check(
        "profile-integral-interior",
        profile.profile_integrals,
        (integrals.interior_profile - interior_exact).abs() / interior_exact,
        "interior |G|^2 integral vs 4 pi R^3 / 3".into(),
    ));
    checks.push(check(
        "profile-integral-exterior",
        profile.profile_integrals,
        (integrals.exterior_profile - exterior_exact).abs() / exterior_exact,
        "exterior |G|^2 integral vs 8 pi R^3 / 3".into(),
    ));

    // radiated power over stored energy
    let balance = energy_balance(ti, host, geom, consts, &quad_spec)?;
    checks.push(check(
        "energy-balance",
        profile.energy_balance,
        balance.rel_err,
        format!(
            "gamma_r closed {:e} vs power/energy {:e}",
            balance.gamma_r_closed, balance.gamma_r_energy_ratio
        ),
    ));

    // spectral chain consistency at 100 random frequencies
    let gamma_r = radiative_decay_rate(ti, host, geom, derived.omega_mode, consts)?;
    let couplings = ReservoirCouplings {
        gamma_r,
        gamma_0: ti.dielectric.gamma_0,
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
    let mut worst_zg: f64 = 0.0;
    for _ in 0..100 {
        let w = rng.gen_range(0.9..1.1) * derived.omega_mode;
        let direct = absorption(w, &fano)?;
        let chained = absorption_from_eom_chain(
            w,
            &fano,
            g,
            &couplings,
            scenario.qd.n_excitation,
        )?;
        worst_zg = worst_zg.max((direct - chained).abs() / direct.abs().max(1e-300));
    }
    checks.push(check(
        "zg-consistency",
        profile.zg_consistency,
        worst_zg,
        "direct line shape vs equation-of-motion substitution at 100 frequencies".into(),
    ));

    // reported-only measurements
    let a_t = ti.alpha_tilde(consts);
    if a_t == 0.0 {
        notes.push(ReportNote {
            code: "magnetoelectric-terms-trivial".into(),
            value: 0.0,
            detail: "theta = 0: induced magnetic response and all cross terms vanish identically; \
                     the magnetoelectric parts of every check pass trivially"
                .into(),
        });
    }
    if a_t != 0.0 {
        // unified-expression interior B reconstruction vs the exact interior
        // field; the measured factor exposes the sign convention of the
        // piecewise xi form
        let w = omegas[0];
        let resp = solve_sphere_response(ti, host, geom, [0.0, 0.0, 1.0], w, consts)?;
        let eps1 = ti.dielectric.epsilon(w)?;
        let mu_e = effective_permeability(ti, host);
        let denom = 2.0 * host.epsilon_2 + eps1 + mu_e * a_t * a_t;
        let unified = Complex64::from(xi(0.5 * geom.radius, geom.radius))
            * (3.0 * host.epsilon_2 * mu_e * a_t / (2.0 * consts.c))
            / denom;
        let factor = unified / resp.b_interior[2];
        notes.push(ReportNote {
            code: "interior-b-unified-form-factor".into(),
            value: factor.re,
            detail: format!(
                "piecewise xi reconstruction over exact interior B = {:.6e}{:+.6e}i; \
                 the unified interior expression carries the opposite sign",
                factor.re, factor.im
            ),
        });
    }
    notes.push(ReportNote {
        code: "peak-density-definition-ratio".into(),
        value: integrals.u0_definition / integrals.u0_published,
        detail: format!(
            "pointwise peak energy density {:.6e} over published closed-form value {:.6e}; \
             only their product with the mode volume enters observables",
            integrals.u0_definition, integrals.u0_published
        ),
    });

    let pass = checks.iter().all(|c| c.pass);
    Ok(ValidationReport {
        schema_version: 1,
        profile: profile.name.to_string(),
        seed,
        checks,
        notes,
        pass,
    })
}

fn random_direction(rng: &mut ChaCha8Rng) -> Vec3 {
    let z: f64 = rng.gen_range(-1.0..1.0);
    let phi: f64 = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
    let s = (1.0 - z * z).sqrt();
    [s * phi.cos(), s * phi.sin(), z]
}
