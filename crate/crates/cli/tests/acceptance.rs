//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Run with `cargo test -p tinp-cli --test acceptance -- --nocapture` to see
//! the per-criterion lines.

use std::process::Command;
use std::time::Instant;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tinp_cli::scenario_file::ScenarioFile;
use tinp_core::materials::{DielectricModel, HostMedium, PhysicalConstants, TIMaterial};
use tinp_core::oracle::{
    boundary_residuals, energy_balance, numeric_energy_integral, solve_legendre_series,
    BranchFieldSolution,
};
use tinp_core::quadrature::QuadratureSpec;
use tinp_core::quantization::{
    coupling_strength, normalization_constants, HybridScenario, Orientation,
};
use tinp_core::quasistatics::{derived_frequencies, solve_sphere_response, Branch, SphereGeometry};
use tinp_core::spectrum::{
    absorption, absorption_from_eom_chain, fano_parameters, sweep, Annotation, FanoParameters,
    FeatureKind, ReservoirCouplings, SweepSpec,
};
use tinp_core::units::{ev_to_rad_per_s, nm_to_m, rad_per_s_to_ev};
use tinp_core::vec3::{self, Vec3};
use tinp_core::Diagnostics;

const SEED: u64 = 0x7a11_5eed;

fn consts() -> PhysicalConstants {
    PhysicalConstants::si()
}

fn preset(name: &str) -> ScenarioFile {
    let text = match name {
        "tlbise2-cdse" => include_str!("../../../presets/tlbise2-cdse.toml"),
        "tlbise2-cdse-detuned" => include_str!("../../../presets/tlbise2-cdse-detuned.toml"),
        other => panic!("unknown preset {other}"),
    };
    ScenarioFile::parse(text).unwrap()
}

fn preset_scenario(name: &str) -> HybridScenario {
    preset(name).to_scenario(&consts()).unwrap()
}

fn grid_ev(start: f64, stop: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| ev_to_rad_per_s(start + (stop - start) * k as f64 / (n - 1) as f64))
        .collect()
}

/// One random material/host/geometry draw in the acceptance parameter box.
struct Draw {
    ti: TIMaterial,
    host: HostMedium,
    geom: SphereGeometry,
    omega: f64,
}

/// `with_damping` draws exercise complex permittivity (criteria 1-2); the
/// energy-quantization criteria (4, 6) describe the undamped mode that gets
/// quantized, so they draw gamma_0 = 0.
fn random_draw(rng: &mut ChaCha8Rng, with_damping: bool) -> Draw {
    let eps1_static: f64 = rng.gen_range(2.0..10.0);
    let eps2: f64 = rng.gen_range(1.0..3.0);
    let theta_over_pi = [0.0, 1.0, 11.0, 95.0][rng.gen_range(0..4)];
    let omega_r = 1e15;
    let omega_e = omega_r * (eps1_static - 1.0).sqrt();
    let gamma_0 = if with_damping && rng.gen_bool(0.5) {
        1e12
    } else {
        0.0
    };
    let d = DielectricModel::new(omega_e, omega_r, gamma_0).unwrap();
    let ti = TIMaterial::new(d, 1.0, theta_over_pi, false).unwrap();
    let host = HostMedium::new(eps2, 1.0).unwrap();
    let geom = SphereGeometry::new(rng.gen_range(2.0..20.0) * 1e-9).unwrap();
    let derived = derived_frequencies(&ti, &host, &consts());
    let omega = rng.gen_range(0.2..0.8) * derived.omega_mode;
    Draw {
        ti,
        host,
        geom,
        omega,
    }
}

fn random_direction(rng: &mut ChaCha8Rng) -> Vec3 {
    let z: f64 = rng.gen_range(-1.0..1.0);
    let phi: f64 = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
    let s = (1.0 - z * z).sqrt();
    [s * phi.cos(), s * phi.sin(), z]
}

#[test]
fn criterion_01_boundary_condition_residuals() {
    let started = Instant::now();
    let c = consts();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    for k in 0..10 {
        let draw = random_draw(&mut rng, true);
        let e0 = random_direction(&mut rng);
        let resp =
            solve_sphere_response(&draw.ti, &draw.host, &draw.geom, e0, draw.omega, &c).unwrap();
        let report =
            boundary_residuals(&resp, &draw.ti, &draw.host, draw.omega, 100, SEED + k, &c)
                .unwrap();
        worst = worst.max(report.worst());
    }
    let elapsed = started.elapsed();
    assert!(worst < 1e-10, "worst boundary residual {worst:e}");
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 1 boundary-condition residuals: PASS (worst {worst:.3e} < 1e-10, {} ms)",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_02_oracle_equivalence() {
    let started = Instant::now();
    let c = consts();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut worst_field: f64 = 0.0;
    let mut worst_purity: f64 = 0.0;
    for _ in 0..10 {
        let draw = random_draw(&mut rng, true);
        let e0 = random_direction(&mut rng);
        let series =
            solve_legendre_series(&draw.ti, &draw.host, &draw.geom, e0, draw.omega, 5, &c)
                .unwrap();
        worst_purity = worst_purity.max(series.higher_order_ratio());
        let closed =
            solve_sphere_response(&draw.ti, &draw.host, &draw.geom, e0, draw.omega, &c).unwrap();
        for _ in 0..20 {
            let dir = random_direction(&mut rng);
            let r = rng.gen_range(0.05..4.0) * draw.geom.radius;
            let pos = vec3::scale(dir, r);
            let branch = if r < draw.geom.radius {
                Branch::Interior
            } else {
                Branch::Exterior
            };
            let (es, bs) = series.eval(pos, branch);
            let sample = closed.field_at_branch(pos, branch);
            worst_field = worst_field
                .max(vec3::cnorm(vec3::csub(es, sample.e)) / vec3::cnorm(sample.e));
            let b_scale = vec3::cnorm(sample.b);
            if b_scale > 0.0 {
                worst_field =
                    worst_field.max(vec3::cnorm(vec3::csub(bs, sample.b)) / b_scale);
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(worst_field < 1e-10, "worst field mismatch {worst_field:e}");
    assert!(worst_purity < 1e-12, "l >= 2 leakage {worst_purity:e}");
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 2 oracle equivalence: PASS (fields {worst_field:.3e} < 1e-10, \
         multipole leakage {worst_purity:.3e} < 1e-12, {} ms)",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_03_classical_limit() {
    let c = consts();
    let d = DielectricModel::new(2.0e15, 1e15, 0.0).unwrap();
    let ti = TIMaterial::new(d, 1.0, 0.0, false).unwrap();
    let host = HostMedium::new(1.5, 1.0).unwrap();
    let geom = SphereGeometry::new(5e-9).unwrap();
    let e0 = [0.0, 0.0, 1.0];
    let mut worst: f64 = 0.0;
    for omega in [0.0, 0.4e15] {
        let resp = solve_sphere_response(&ti, &host, &geom, e0, omega, &c).unwrap();
        let eps1 = ti.dielectric.epsilon(omega).unwrap();
        let cm = 4.0 * std::f64::consts::PI * c.epsilon_0 * host.epsilon_2
            * geom.radius.powi(3)
            * (eps1 - host.epsilon_2)
            / (eps1 + 2.0 * host.epsilon_2);
        let rel = (resp.moments().p[2] - cm).norm() / cm.norm();
        worst = worst.max(rel);
        for comp in resp.moments().m {
            assert_eq!(comp, num_complex::Complex64::from(0.0), "m must vanish");
        }
    }
    assert!(worst < 1e-12, "Clausius-Mossotti deviation {worst:e}");
    println!(
        "ACCEPTANCE 3 classical limit: PASS (Clausius-Mossotti deviation {worst:.3e} < 1e-12, m = 0)"
    );
}

#[test]
fn criterion_04_quadrature_vs_closed_forms() {
    let c = consts();
    let spec = QuadratureSpec::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut worst_norm: f64 = 0.0;
    let mut worst_vm: f64 = 0.0;
    let mut worst_profile: f64 = 0.0;
    for _ in 0..10 {
        let draw = random_draw(&mut rng, false);
        let derived = derived_frequencies(&draw.ti, &draw.host, &c);
        let num = numeric_energy_integral(
            &draw.ti,
            &draw.host,
            &draw.geom,
            derived.omega_mode,
            &c,
            &spec,
        )
        .unwrap();
        let closed = normalization_constants(
            &draw.ti,
            &draw.host,
            &draw.geom,
            derived.omega_mode,
            &c,
        )
        .unwrap();
        worst_norm =
            worst_norm.max((num.norm_sq_inv - closed.norm_sq_inv).abs() / closed.norm_sq_inv);
        worst_vm =
            worst_vm.max((num.mode_volume - closed.mode_volume).abs() / closed.mode_volume);
        let pi = std::f64::consts::PI;
        let interior = 4.0 * pi * draw.geom.radius.powi(3) / 3.0;
        let exterior = 8.0 * pi * draw.geom.radius.powi(3) / 3.0;
        worst_profile = worst_profile
            .max((num.interior_profile - interior).abs() / interior)
            .max((num.exterior_profile - exterior).abs() / exterior);
    }
    assert!(worst_norm < 1e-6, "1/N^2 mismatch {worst_norm:e}");
    assert!(worst_vm < 1e-6, "V_m mismatch {worst_vm:e}");
    assert!(worst_profile < 1e-7, "profile integral mismatch {worst_profile:e}");
    println!(
        "ACCEPTANCE 4 quadrature vs closed forms: PASS (1/N^2 {worst_norm:.3e} < 1e-6, \
         V_m {worst_vm:.3e} < 1e-6, profile integrals {worst_profile:.3e} < 1e-7)"
    );
}

#[test]
fn criterion_05_coupling_ratios() {
    let c = consts();
    let long = preset_scenario("tlbise2-cdse");
    let derived = long.derived_frequencies(&c);
    let q = normalization_constants(&long.ti, &long.host, &long.geometry, derived.omega_mode, &c)
        .unwrap();
    let mut trans = long.clone();
    trans.orientation = Orientation::Transverse;

    let g_long = coupling_strength(&long, &q, derived.omega_mode, &c);
    let g_trans = coupling_strength(&trans, &q, derived.omega_mode, &c);
    assert_eq!(g_long / g_trans, -2.0, "orientation ratio");

    let mut near = long.clone();
    near.separation = 2.0 * long.geometry.radius;
    let mut far = long.clone();
    far.separation = 4.0 * long.geometry.radius;
    let ratio = coupling_strength(&near, &q, derived.omega_mode, &c)
        / coupling_strength(&far, &q, derived.omega_mode, &c);
    assert!(
        (ratio - 8.0).abs() <= 8.0 * 4.0 * f64::EPSILON,
        "r^-3 ratio {ratio}"
    );
    println!(
        "ACCEPTANCE 5 coupling ratios: PASS (longitudinal/transverse = -2 exactly, \
         g(2R)/g(4R) = 8 to machine precision)"
    );
}

#[test]
fn criterion_06_energy_balance() {
    let c = consts();
    let spec = QuadratureSpec::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let draw = random_draw(&mut rng, false);
        let balance = energy_balance(&draw.ti, &draw.host, &draw.geom, &c, &spec).unwrap();
        worst = worst.max(balance.rel_err);
    }
    assert!(worst < 1e-9, "energy balance deviation {worst:e}");
    println!(
        "ACCEPTANCE 6 radiated power / stored energy identity: PASS (worst {worst:.3e} < 1e-9)"
    );
}

/// Test-local numeric fit machinery for the Lorentzian limit.
fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    for _ in 0..200 {
        if f(c) > f(d) {
            b = d;
            d = c;
            c = b - phi * (b - a);
        } else {
            a = c;
            c = d;
            d = a + phi * (b - a);
        }
    }
    0.5 * (a + b)
}

fn bisect_level(f: impl Fn(f64) -> f64, level: f64, mut lo: f64, mut hi: f64) -> f64 {
    // f(lo) > level > f(hi)
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > level {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn criterion_07_fano_limits() {
    let couplings = ReservoirCouplings {
        gamma_r: 2.7915562378829553e11,
        gamma_0: 0.7e11,
        gamma_s: 1e8,
    };
    let omega_mode = ev_to_rad_per_s(2.2);
    let gamma_tot = couplings.gamma_r + couplings.gamma_0;

    // Gamma = 0 through n = 1/2: numeric fit of center and width
    let f = fano_parameters(omega_mode, ev_to_rad_per_s(2.4), 0.5, 2e14, &couplings);
    let sigma = |w: f64| absorption(w, &f).unwrap();
    let center = golden_section_max(sigma, omega_mode - 30.0 * gamma_tot, omega_mode + 30.0 * gamma_tot);
    let center_err = (center - omega_mode).abs() / omega_mode;
    assert!(center_err < 1e-9, "fitted center off by {center_err:e}");

    let half = sigma(center) / 2.0;
    let hi = bisect_level(sigma, half, center, center + 10.0 * gamma_tot);
    let lo = 2.0 * center - bisect_level(|w| sigma(2.0 * center - w), half, center, center + 10.0 * gamma_tot);
    let fwhm = hi - lo;
    let width_err = (fwhm - gamma_tot).abs() / gamma_tot;
    assert!(width_err < 1e-9, "fitted width off by {width_err:e}");

    // n = 1/2 removes every trace of g
    let f1 = fano_parameters(omega_mode, ev_to_rad_per_s(2.21), 0.5, 2e14, &couplings);
    let f2 = fano_parameters(omega_mode, ev_to_rad_per_s(2.21), 0.5, -9e13, &couplings);
    for k in 0..5000 {
        let w = omega_mode + (k as f64 - 2500.0) * 1e11;
        assert_eq!(
            absorption(w, &f1).unwrap(),
            absorption(w, &f2).unwrap(),
            "spectrum depends on g at n = 1/2"
        );
    }
    println!(
        "ACCEPTANCE 7 Fano limits: PASS (center {center_err:.3e} < 1e-9, \
         FWHM {width_err:.3e} < 1e-9, n = 1/2 independent of g)"
    );
}

fn significant_peaks(annotations: &[Annotation], sigma_max: f64) -> Vec<Annotation> {
    annotations
        .iter()
        .filter(|a| a.kind == FeatureKind::Peak && a.prominence > 0.01 * sigma_max)
        .cloned()
        .collect()
}

fn two_peak_separation_ev(annotations: &[Annotation]) -> f64 {
    let mut peaks: Vec<&Annotation> = annotations
        .iter()
        .filter(|a| a.kind == FeatureKind::Peak)
        .collect();
    peaks.sort_by(|a, b| b.sigma.total_cmp(&a.sigma));
    assert!(peaks.len() >= 2, "expected a resolved doublet");
    (rad_per_s_to_ev(peaks[0].omega) - rad_per_s_to_ev(peaks[1].omega)).abs()
}

#[test]
fn criterion_08_figure_shapes() {
    let started = Instant::now();
    let c = consts();

    // (a) resonant hybrid: two peaks with one interference dip between them
    let resonant = preset_scenario("tlbise2-cdse");
    let grid_a = preset("tlbise2-cdse").grid.unwrap();
    let omegas_a = grid_ev(grid_a.start_ev, grid_a.stop_ev, grid_a.points);
    let mut diags = Diagnostics::new();
    let spectrum_a =
        tinp_core::spectrum::compute_spectrum(&resonant, &omegas_a, &c, &mut diags).unwrap();
    let sigma_max = spectrum_a.sigma.iter().cloned().fold(f64::MIN, f64::max);
    let peaks = significant_peaks(&spectrum_a.annotations, sigma_max);
    let dips: Vec<&Annotation> = spectrum_a
        .annotations
        .iter()
        .filter(|a| a.kind == FeatureKind::Dip)
        .collect();
    assert_eq!(peaks.len(), 2, "expected exactly two significant peaks");
    assert_eq!(dips.len(), 1, "expected exactly one dip");
    assert!(
        peaks[0].omega.min(peaks[1].omega) < dips[0].omega
            && dips[0].omega < peaks[0].omega.max(peaks[1].omega),
        "dip must sit between the peaks"
    );

    // (b) detuned dot: the interference feature fades monotonically with r
    let detuned = preset_scenario("tlbise2-cdse-detuned");
    let window = grid_ev(2.8995, 2.9005, 400_001);
    let r_values: Vec<f64> = [8.0, 9.0, 10.0, 11.0].iter().map(|&r| nm_to_m(r)).collect();
    let entries = sweep(&detuned, &window, &SweepSpec::Separation(r_values), &c).unwrap();
    let mut prominences = Vec::new();
    for e in &entries {
        let tallest = e
            .spectrum
            .annotations
            .iter()
            .filter(|a| a.kind == FeatureKind::Peak)
            .max_by(|a, b| a.sigma.total_cmp(&b.sigma))
            .expect("dot feature must be resolved");
        prominences.push(tallest.prominence);
    }
    for pair in prominences.windows(2) {
        assert!(
            pair[1] < pair[0],
            "dot-feature prominence not decreasing: {prominences:?}"
        );
    }

    // (c) magnetoelectric sweep at matched theta/pi: both doublets tighten
    // as alpha_tilde grows and the transverse pair is always the narrower,
    // further-collapsed one
    let base = preset_scenario("tlbise2-cdse");
    let grid_c = grid_ev(2.15, 2.25, 200_001);
    let alpha_values = vec![1.0, 11.0, 95.0];
    let mut separations = Vec::new();
    for orientation in [Orientation::Longitudinal, Orientation::Transverse] {
        let mut scenario = base.clone();
        scenario.orientation = orientation;
        let entries = sweep(
            &scenario,
            &grid_c,
            &SweepSpec::AlphaTilde(alpha_values.clone()),
            &c,
        )
        .unwrap();
        let seps: Vec<f64> = entries
            .iter()
            .map(|e| two_peak_separation_ev(&e.spectrum.annotations))
            .collect();
        for pair in seps.windows(2) {
            assert!(
                pair[1] < pair[0],
                "{orientation} separation not shrinking: {seps:?}"
            );
        }
        separations.push(seps);
    }
    for (k, alpha) in alpha_values.iter().enumerate() {
        assert!(
            separations[1][k] < separations[0][k],
            "at theta/pi = {alpha}: transverse separation {} must lie below longitudinal {}",
            separations[1][k],
            separations[0][k]
        );
    }

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!(
        "ACCEPTANCE 8 figure shapes: PASS (two-peak/one-dip profile; dot feature fades with r: \
         {prominences:?}; doublet separations shrink with alpha_tilde and transverse < longitudinal \
         at matched values: long {:?} meV, trans {:?} meV; {} ms)",
        separations[0].iter().map(|s| s * 1e3).collect::<Vec<_>>(),
        separations[1].iter().map(|s| s * 1e3).collect::<Vec<_>>(),
        elapsed.as_millis()
    );
}

#[test]
fn criterion_09_zg_internal_consistency() {
    let c = consts();
    let scenario = preset_scenario("tlbise2-cdse");
    let derived = scenario.derived_frequencies(&c);
    let q = normalization_constants(
        &scenario.ti,
        &scenario.host,
        &scenario.geometry,
        derived.omega_mode,
        &c,
    )
    .unwrap();
    let gamma_r = tinp_core::quantization::radiative_decay_rate(
        &scenario.ti,
        &scenario.host,
        &scenario.geometry,
        derived.omega_mode,
        &c,
    )
    .unwrap();
    let couplings = ReservoirCouplings {
        gamma_r,
        gamma_0: scenario.ti.dielectric.gamma_0,
        gamma_s: scenario.qd.gamma_s,
    };
    let g = coupling_strength(&scenario, &q, derived.omega_mode, &c);
    let fano: FanoParameters = fano_parameters(
        derived.omega_mode,
        scenario.qd.omega_a,
        scenario.qd.n_excitation,
        g,
        &couplings,
    );

    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let w = rng.gen_range(0.9..1.1) * derived.omega_mode;
        let direct = absorption(w, &fano).unwrap();
        let chained =
            absorption_from_eom_chain(w, &fano, g, &couplings, scenario.qd.n_excitation).unwrap();
        worst = worst.max((direct - chained).abs() / direct.abs());
    }
    assert!(worst < 1e-12, "chain mismatch {worst:e}");
    println!(
        "ACCEPTANCE 9 spectral chain consistency: PASS (worst {worst:.3e} < 1e-12 \
         at 100 random frequencies)"
    );
}

#[test]
fn criterion_10_byte_determinism() {
    let bin = env!("CARGO_BIN_EXE_tinp");
    let dir = tempfile::tempdir().unwrap();
    let run = |tag: &str| -> (Vec<u8>, Vec<u8>, Vec<u8>, Vec<u8>) {
        let csv = dir.path().join(format!("spectrum-{tag}.csv"));
        let json = dir.path().join(format!("spectrum-{tag}.json"));
        let params = dir.path().join(format!("params-{tag}.json"));
        let sweep_dir = dir.path().join(format!("sweep-{tag}"));
        for (args, out) in [
            (vec!["spectrum", "--preset", "tlbise2-cdse", "--grid", "2.18,2.22,2001"], &csv),
            (
                vec![
                    "spectrum",
                    "--preset",
                    "tlbise2-cdse",
                    "--grid",
                    "2.18,2.22,2001",
                    "--format",
                    "json",
                ],
                &json,
            ),
        ] {
            let status = Command::new(bin)
                .args(&args)
                .arg("--out")
                .arg(out)
                .status()
                .unwrap();
            assert!(status.success());
        }
        let status = Command::new(bin)
            .args(["params", "--preset", "tlbise2-cdse", "--out"])
            .arg(&params)
            .status()
            .unwrap();
        assert!(status.success());
        let status = Command::new(bin)
            .args([
                "sweep",
                "--preset",
                "tlbise2-cdse",
                "--axis",
                "r",
                "--values",
                "8,9",
                "--grid",
                "2.18,2.22,501",
                "--out-dir",
            ])
            .arg(&sweep_dir)
            .status()
            .unwrap();
        assert!(status.success());
        (
            std::fs::read(&csv).unwrap(),
            std::fs::read(&json).unwrap(),
            std::fs::read(&params).unwrap(),
            std::fs::read(sweep_dir.join("manifest.json"))
                .into_iter()
                .chain(std::fs::read(sweep_dir.join("spectrum_r-8.csv")))
                .chain(std::fs::read(sweep_dir.join("spectrum_r-9.csv")))
                .flatten()
                .collect(),
        )
    };
    let first = run("a");
    let second = run("b");
    assert_eq!(first.0, second.0, "spectrum CSV bytes differ");
    assert_eq!(first.1, second.1, "spectrum JSON bytes differ");
    assert_eq!(first.2, second.2, "params JSON bytes differ");
    assert_eq!(first.3, second.3, "sweep output bytes differ");
    assert!(!first.0.is_empty() && !first.3.is_empty());
    println!(
        "ACCEPTANCE 10 byte determinism: PASS (spectrum CSV/JSON, params report and sweep \
         outputs identical across runs)"
    );
}
