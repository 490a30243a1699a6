use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tinp_cli::commands::{
    self, ParamsArgs, SpectrumArgs, SweepArgs, ValidateArgs, DEFAULT_SEED,
};
use tinp_cli::output::{Normalization, OutputFormat};
use tinp_cli::CliError;

/// Absorption spectra of a magnetoelectric-nanoparticle / quantum-dot hybrid.
#[derive(Parser)]
#[command(name = "tinp", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one absorption spectrum and write it to a file.
    Spectrum {
        /// Scenario TOML file.
        #[arg(long)]
        scenario: Option<PathBuf>,
        /// Built-in preset name (see `presets list`).
        #[arg(long)]
        preset: Option<String>,
        /// Frequency grid override: start_ev,stop_ev,points.
        #[arg(long)]
        grid: Option<String>,
        /// Output path.
        #[arg(long)]
        out: PathBuf,
        /// Output format: csv or json.
        #[arg(long, default_value = "csv")]
        format: String,
        /// Normalize sigma to its maximum: none or peak.
        #[arg(long, default_value = "none")]
        normalize: String,
    },
    /// Compute one spectrum per sweep value plus a manifest.
    Sweep {
        #[arg(long)]
        scenario: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        /// Sweep axis: omega_a (eV), r (nm), alpha_tilde (theta/pi), n,
        /// orientation.
        #[arg(long)]
        axis: String,
        /// Comma-separated sweep values in the axis unit.
        #[arg(long)]
        values: String,
        #[arg(long)]
        grid: Option<String>,
        /// Output directory; one file per value plus manifest.json.
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long, default_value = "none")]
        normalize: String,
    },
    /// Print the derived-constants report as JSON.
    Params {
        #[arg(long)]
        scenario: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the brute-force validation suite against the closed forms.
    Validate {
        #[arg(long)]
        scenario: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        /// Tolerance profile: default or strict.
        #[arg(long, default_value = "default")]
        profile: String,
        /// Seed for the randomized sample points.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Documented test hook; `perturb-c1` scales the exterior dipole
        /// coefficient by 1.01 so the residual detector must fire.
        #[arg(long)]
        inject_fault: Option<String>,
    },
    /// List or print the built-in presets.
    Presets {
        #[command(subcommand)]
        action: PresetsAction,
    },
}

#[derive(Subcommand)]
enum PresetsAction {
    /// List preset names and summaries.
    List,
    /// Print one preset's scenario TOML.
    Show {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_format(s: &str) -> Result<OutputFormat, CliError> {
    OutputFormat::parse(s)
        .ok_or_else(|| CliError::schema(format!("unknown format '{s}'; expected csv or json")))
}

fn parse_normalize(s: &str) -> Result<Normalization, CliError> {
    match s {
        "none" => Ok(Normalization::None),
        "peak" => Ok(Normalization::Peak),
        other => Err(CliError::schema(format!(
            "unknown normalization '{other}'; expected none or peak"
        ))),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Spectrum {
            scenario,
            preset,
            grid,
            out,
            format,
            normalize,
        } => commands::cmd_spectrum(SpectrumArgs {
            scenario: scenario.as_deref(),
            preset: preset.as_deref(),
            grid: grid.as_deref(),
            out: &out,
            format: parse_format(&format)?,
            normalization: parse_normalize(&normalize)?,
        }),
        Command::Sweep {
            scenario,
            preset,
            axis,
            values,
            grid,
            out_dir,
            format,
            normalize,
        } => commands::cmd_sweep(SweepArgs {
            scenario: scenario.as_deref(),
            preset: preset.as_deref(),
            axis: &axis,
            values: &values,
            grid: grid.as_deref(),
            out_dir: &out_dir,
            format: parse_format(&format)?,
            normalization: parse_normalize(&normalize)?,
        }),
        Command::Params { scenario, preset, out } => commands::cmd_params(ParamsArgs {
            scenario: scenario.as_deref(),
            preset: preset.as_deref(),
            out: out.as_deref(),
        }),
        Command::Validate {
            scenario,
            preset,
            profile,
            seed,
            out,
            inject_fault,
        } => commands::cmd_validate(ValidateArgs {
            scenario: scenario.as_deref(),
            preset: preset.as_deref(),
            profile: &profile,
            seed,
            out: out.as_deref(),
            inject_fault: inject_fault.as_deref(),
        }),
        Command::Presets { action } => match action {
            PresetsAction::List => {
                commands::cmd_presets_list();
                Ok(())
            }
            PresetsAction::Show { name, out } => commands::cmd_presets_show(&name, out.as_deref()),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
