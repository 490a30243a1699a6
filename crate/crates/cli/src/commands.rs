//! Implementations of the subcommands.

use std::fs;
use std::path::{Path, PathBuf};

use tinp_core::diagnostics::{Diagnostic, Diagnostics};
use tinp_core::materials::PhysicalConstants;
use tinp_core::oracle::{validate_scenario, FaultInjection, ToleranceProfile};
use tinp_core::quantization::Orientation;
use tinp_core::report::params_report;
use tinp_core::spectrum::{compute_spectrum, sweep, SweepSpec};
use tinp_core::units;

use crate::output::{
    manifest_json, spectrum_csv, spectrum_json, Manifest, ManifestEntry, Normalization,
    OutputFormat,
};
use crate::presets;
use crate::scenario_file::{GridSection, ScenarioFile};
use crate::CliError;

/// Where a scenario comes from: a file path or a named preset.
pub struct ScenarioSource {
    pub file: ScenarioFile,
    pub label: String,
}

pub fn load_scenario(
    scenario_path: Option<&Path>,
    preset_name: Option<&str>,
) -> Result<ScenarioSource, CliError> {
    match (scenario_path, preset_name) {
        (Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|e| {
                CliError::schema(format!("cannot read scenario file {}: {e}", path.display()))
            })?;
            Ok(ScenarioSource {
                file: ScenarioFile::parse(&text)?,
                label: path.display().to_string(),
            })
        }
        (None, Some(name)) => {
            let preset = presets::find(name).ok_or_else(|| {
                let known: Vec<&str> = presets::PRESETS.iter().map(|p| p.name).collect();
                CliError::schema(format!(
                    "unknown preset '{name}'; available: {}",
                    known.join(", ")
                ))
            })?;
            Ok(ScenarioSource {
                file: ScenarioFile::parse(preset.toml)?,
                label: format!("preset:{name}"),
            })
        }
        (Some(_), Some(_)) => Err(CliError::schema(
            "--scenario and --preset are mutually exclusive",
        )),
        (None, None) => Err(CliError::schema("one of --scenario or --preset is required")),
    }
}

pub fn parse_grid_flag(grid: &str) -> Result<GridSection, CliError> {
    let parts: Vec<&str> = grid.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::schema(
            "--grid expects start_ev,stop_ev,points (e.g. 2.0,2.4,2001)",
        ));
    }
    let start_ev: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| CliError::schema("--grid start is not a number"))?;
    let stop_ev: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| CliError::schema("--grid stop is not a number"))?;
    let points: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| CliError::schema("--grid point count is not a non-negative integer"))?;
    Ok(GridSection {
        start_ev,
        stop_ev,
        points,
    })
}

fn resolve_grid(
    flag: Option<&str>,
    file: &ScenarioFile,
) -> Result<Vec<f64>, CliError> {
    let section = match flag {
        Some(text) => parse_grid_flag(text)?,
        None => file.grid.ok_or_else(|| {
            CliError::schema("no frequency grid: give --grid or a [grid] table in the scenario")
        })?,
    };
    section.to_omegas()
}

fn emit_diagnostics(diags: &[Diagnostic]) {
    for d in diags {
        eprintln!("{}", serde_json::to_string(d).expect("diagnostic serializes"));
    }
}

fn write_output(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(path, contents)?;
    Ok(())
}

pub struct SpectrumArgs<'a> {
    pub scenario: Option<&'a Path>,
    pub preset: Option<&'a str>,
    pub grid: Option<&'a str>,
    pub out: &'a Path,
    pub format: OutputFormat,
    pub normalization: Normalization,
}

pub fn cmd_spectrum(args: SpectrumArgs<'_>) -> Result<(), CliError> {
    let consts = PhysicalConstants::si();
    let source = load_scenario(args.scenario, args.preset)?;
    let scenario = source.file.to_scenario(&consts)?;
    let omegas = resolve_grid(args.grid, &source.file)?;

    let mut diags = Diagnostics::new();
    let spectrum = compute_spectrum(&scenario, &omegas, &consts, &mut diags)?;
    emit_diagnostics(diags.entries());

    let rendered = match args.format {
        OutputFormat::Csv => spectrum_csv(&spectrum, &source.file, args.normalization),
        OutputFormat::Json => spectrum_json(&spectrum, &source.file, args.normalization),
    };
    write_output(args.out, &rendered)
}

pub struct SweepArgs<'a> {
    pub scenario: Option<&'a Path>,
    pub preset: Option<&'a str>,
    pub axis: &'a str,
    pub values: &'a str,
    pub grid: Option<&'a str>,
    pub out_dir: &'a Path,
    pub format: OutputFormat,
    pub normalization: Normalization,
}

/// Value tokens as given on the command line, kept for labels/filenames.
struct ParsedValues {
    tokens: Vec<String>,
    spec: SweepSpec,
    unit: &'static str,
}

fn parse_values(axis: &str, values: &str) -> Result<ParsedValues, CliError> {
    let tokens: Vec<String> = values
        .split(',')
        .map(|t| t.trim().to_string())
        .filter(|t| !t.is_empty())
        .collect();
    if tokens.is_empty() {
        return Err(CliError::schema("--values is empty"));
    }
    let scalars = |unit: &str| -> Result<Vec<f64>, CliError> {
        tokens
            .iter()
            .map(|t| {
                t.parse::<f64>().map_err(|_| {
                    CliError::schema(format!("sweep value '{t}' is not a number ({unit})"))
                })
            })
            .collect()
    };
    let (spec, unit) = match axis {
        "omega_a" => (
            SweepSpec::OmegaA(scalars("eV")?.into_iter().map(units::ev_to_rad_per_s).collect()),
            "eV",
        ),
        "r" => (
            SweepSpec::Separation(scalars("nm")?.into_iter().map(units::nm_to_m).collect()),
            "nm",
        ),
        "alpha_tilde" => (SweepSpec::AlphaTilde(scalars("theta/pi")?), "theta_over_pi"),
        "n" => (SweepSpec::Excitation(scalars("dimensionless")?), "dimensionless"),
        "orientation" => {
            let orientations = tokens
                .iter()
                .map(|t| match t.as_str() {
                    "longitudinal" => Ok(Orientation::Longitudinal),
                    "transverse" => Ok(Orientation::Transverse),
                    other => Err(CliError::schema(format!(
                        "orientation value must be longitudinal or transverse, got '{other}'"
                    ))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            (SweepSpec::Orientation(orientations), "orientation")
        }
        other => {
            return Err(CliError::schema(format!(
                "unknown sweep axis '{other}'; expected omega_a, r, alpha_tilde, n or orientation"
            )))
        }
    };
    Ok(ParsedValues { tokens, spec, unit })
}

fn sanitize_token(token: &str) -> String {
    token
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || matches!(c, '.' | '-' | '+') {
                c
            } else {
                '_'
            }
        })
        .collect()
}

pub fn cmd_sweep(args: SweepArgs<'_>) -> Result<(), CliError> {
    let consts = PhysicalConstants::si();
    let source = load_scenario(args.scenario, args.preset)?;
    let scenario = source.file.to_scenario(&consts)?;
    let omegas = resolve_grid(args.grid, &source.file)?;
    let parsed = parse_values(args.axis, args.values)?;

    let entries = sweep(&scenario, &omegas, &parsed.spec, &consts)?;

    fs::create_dir_all(args.out_dir)?;
    let mut manifest_entries = Vec::with_capacity(entries.len());
    for (entry, token) in entries.iter().zip(parsed.tokens.iter()) {
        emit_diagnostics(&entry.diagnostics);
        let file_name = format!(
            "spectrum_{}-{}.{}",
            args.axis,
            sanitize_token(token),
            args.format.extension()
        );
        let path = args.out_dir.join(&file_name);

        // the per-value scenario is echoed in each file's header
        let mut file_echo = source.file.clone();
        patch_scenario_echo(&mut file_echo, &parsed.spec, entry.scalar, token);
        let rendered = match args.format {
            OutputFormat::Csv => spectrum_csv(&entry.spectrum, &file_echo, args.normalization),
            OutputFormat::Json => spectrum_json(&entry.spectrum, &file_echo, args.normalization),
        };
        write_output(&path, &rendered)?;
        manifest_entries.push(ManifestEntry {
            value: token.clone(),
            path: file_name,
            diagnostics: entry.diagnostics.clone(),
        });
    }

    let manifest = Manifest {
        schema_version: 1,
        axis: args.axis.to_string(),
        unit: parsed.unit.to_string(),
        format: args.format.extension().to_string(),
        entries: manifest_entries,
    };
    write_output(&args.out_dir.join("manifest.json"), &manifest_json(&manifest))
}

/// Keep the scenario echo in sweep outputs consistent with the applied value.
fn patch_scenario_echo(
    echo: &mut ScenarioFile,
    spec: &SweepSpec,
    scalar: Option<f64>,
    token: &str,
) {
    match spec {
        SweepSpec::OmegaA(_) => {
            if let Some(v) = scalar {
                echo.qd.hbar_omega_a_ev = units::rad_per_s_to_ev(v);
            }
        }
        SweepSpec::Separation(_) => {
            if let Some(v) = scalar {
                echo.coupling.separation_nm = units::m_to_nm(v);
            }
        }
        SweepSpec::AlphaTilde(_) => {
            if let Some(v) = scalar {
                echo.ti.theta_over_pi = v;
            }
        }
        SweepSpec::Excitation(_) => {
            if let Some(v) = scalar {
                echo.qd.n_excitation = v;
            }
        }
        SweepSpec::Orientation(_) => {
            echo.coupling.orientation = token.to_string();
        }
    }
}

pub struct ParamsArgs<'a> {
    pub scenario: Option<&'a Path>,
    pub preset: Option<&'a str>,
    pub out: Option<&'a Path>,
}

pub fn cmd_params(args: ParamsArgs<'_>) -> Result<(), CliError> {
    let consts = PhysicalConstants::si();
    let source = load_scenario(args.scenario, args.preset)?;
    let scenario = source.file.to_scenario(&consts)?;
    let mut diags = Diagnostics::new();
    let report = params_report(&scenario, &consts, &mut diags)?;
    emit_diagnostics(diags.entries());
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    match args.out {
        Some(path) => write_output(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub struct ValidateArgs<'a> {
    pub scenario: Option<&'a Path>,
    pub preset: Option<&'a str>,
    pub profile: &'a str,
    pub seed: u64,
    pub out: Option<&'a Path>,
    pub inject_fault: Option<&'a str>,
}

pub fn cmd_validate(args: ValidateArgs<'_>) -> Result<(), CliError> {
    let consts = PhysicalConstants::si();
    let source = load_scenario(args.scenario, args.preset)?;
    let scenario = source.file.to_scenario(&consts)?;
    let profile = ToleranceProfile::by_name(args.profile).ok_or_else(|| {
        CliError::schema(format!(
            "unknown tolerance profile '{}'; expected default or strict",
            args.profile
        ))
    })?;
    let fault = match args.inject_fault {
        None => FaultInjection::None,
        Some("perturb-c1") => FaultInjection::PerturbC1,
        Some(other) => {
            return Err(CliError::schema(format!(
                "unknown fault '{other}'; the only test hook is perturb-c1"
            )))
        }
    };

    let mut diags = Diagnostics::new();
    scenario.validate(&consts, &mut diags)?;
    emit_diagnostics(diags.entries());

    let report = validate_scenario(&scenario, &consts, &profile, args.seed, fault)?;
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    match args.out {
        Some(path) => write_output(path, &text)?,
        None => print!("{text}"),
    }
    if report.pass {
        Ok(())
    } else {
        let failed: Vec<String> = report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| format!("{} (observed {:e} > tolerance {:e})", c.name, c.observed, c.tolerance))
            .collect();
        Err(CliError::Validation(failed.join("; ")))
    }
}

pub fn cmd_presets_list() {
    for p in presets::PRESETS {
        println!("{:<28} {}", p.name, p.summary);
    }
}

pub fn cmd_presets_show(name: &str, out: Option<&Path>) -> Result<(), CliError> {
    let preset = presets::find(name).ok_or_else(|| {
        CliError::schema(format!("unknown preset '{name}'"))
    })?;
    match out {
        Some(path) => write_output(path, preset.toml),
        None => {
            print!("{}", preset.toml);
            Ok(())
        }
    }
}

/// Default seed for the validation RNG; override with --seed.
pub const DEFAULT_SEED: u64 = 112_358;

pub fn default_out_dir() -> PathBuf {
    PathBuf::from("sweep-out")
}
