//! Deterministic output writers: CSV spectra with a scenario-echo comment
//! header, JSON documents mirroring the spectrum type, and sweep manifests.
//!
//! CSV floats carry 17 significant digits in lowercase scientific notation,
//! enough for lossless round-trips; JSON uses the serializer's shortest
//! round-trip encoding. Both are byte-deterministic for a fixed input.

use serde::Serialize;

use tinp_core::diagnostics::Diagnostic;
use tinp_core::spectrum::{Annotation, Spectrum};
use tinp_core::units;

use crate::scenario_file::ScenarioFile;

/// 17 significant digits, lowercase scientific notation.
pub fn fmt_f64(x: f64) -> String {
    format!("{:.16e}", x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(OutputFormat::Csv),
            "json" => Some(OutputFormat::Json),
            _ => None,
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

/// Peak normalization mode for figure-style comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    None,
    Peak,
}

fn normalized_sigma(spectrum: &Spectrum, normalization: Normalization) -> (Vec<f64>, f64) {
    match normalization {
        Normalization::None => (spectrum.sigma.clone(), 1.0),
        Normalization::Peak => {
            let max = spectrum.sigma.iter().cloned().fold(f64::MIN, f64::max);
            let scale = if max > 0.0 { 1.0 / max } else { 1.0 };
            (spectrum.sigma.iter().map(|s| s * scale).collect(), scale)
        }
    }
}

#[derive(Debug, Serialize)]
struct AnnotationDoc {
    kind: String,
    omega_ev: f64,
    sigma_arb: f64,
    prominence: f64,
}

fn annotation_docs(annotations: &[Annotation], scale: f64) -> Vec<AnnotationDoc> {
    annotations
        .iter()
        .map(|a| AnnotationDoc {
            kind: match a.kind {
                tinp_core::spectrum::FeatureKind::Peak => "peak".into(),
                tinp_core::spectrum::FeatureKind::Dip => "dip".into(),
            },
            omega_ev: units::rad_per_s_to_ev(a.omega),
            sigma_arb: a.sigma * scale,
            prominence: a.prominence * scale,
        })
        .collect()
}

#[derive(Debug, Serialize)]
struct MetaDoc {
    omega_mode_ev: f64,
    coupling_g_ev: f64,
    gamma_r_per_s: f64,
    gamma_0_per_s: f64,
    gamma_s_per_s: f64,
    n_excitation: f64,
    orientation: String,
}

fn meta_doc(spectrum: &Spectrum) -> MetaDoc {
    MetaDoc {
        omega_mode_ev: units::rad_per_s_to_ev(spectrum.meta.omega_mode),
        coupling_g_ev: units::rad_per_s_to_ev(spectrum.meta.coupling_g),
        gamma_r_per_s: spectrum.meta.gamma_r,
        gamma_0_per_s: spectrum.meta.gamma_0,
        gamma_s_per_s: spectrum.meta.gamma_s,
        n_excitation: spectrum.meta.n_excitation,
        orientation: spectrum.meta.orientation.to_string(),
    }
}

/// CSV rendering: `# key=value` scenario/meta header, then omega_eV rows.
pub fn spectrum_csv(
    spectrum: &Spectrum,
    scenario_file: &ScenarioFile,
    normalization: Normalization,
) -> String {
    let (sigma, scale) = normalized_sigma(spectrum, normalization);
    let meta = meta_doc(spectrum);
    let mut out = String::new();
    out.push_str("# schema_version=1\n");
    out.push_str("# generator=tinp\n");
    for line in scenario_file.to_toml().lines() {
        if line.is_empty() {
            continue;
        }
        out.push_str("# scenario ");
        out.push_str(line);
        out.push('\n');
    }
    out.push_str(&format!("# meta omega_mode_ev={}\n", fmt_f64(meta.omega_mode_ev)));
    out.push_str(&format!("# meta coupling_g_ev={}\n", fmt_f64(meta.coupling_g_ev)));
    out.push_str(&format!("# meta gamma_r_per_s={}\n", fmt_f64(meta.gamma_r_per_s)));
    out.push_str(&format!("# meta gamma_0_per_s={}\n", fmt_f64(meta.gamma_0_per_s)));
    out.push_str(&format!("# meta gamma_s_per_s={}\n", fmt_f64(meta.gamma_s_per_s)));
    out.push_str(&format!("# meta n_excitation={}\n", fmt_f64(meta.n_excitation)));
    out.push_str(&format!("# meta orientation={}\n", meta.orientation));
    for a in annotation_docs(&spectrum.annotations, scale) {
        out.push_str(&format!(
            "# annotation kind={} omega_ev={} sigma_arb={} prominence={}\n",
            a.kind,
            fmt_f64(a.omega_ev),
            fmt_f64(a.sigma_arb),
            fmt_f64(a.prominence)
        ));
    }
    out.push_str("omega_ev,sigma_arb\n");
    for (w, s) in spectrum.omegas.iter().zip(sigma.iter()) {
        out.push_str(&fmt_f64(units::rad_per_s_to_ev(*w)));
        out.push(',');
        out.push_str(&fmt_f64(*s));
        out.push('\n');
    }
    out
}

#[derive(Debug, Serialize)]
struct SpectrumDoc<'a> {
    schema_version: u32,
    scenario: &'a ScenarioFile,
    meta: MetaDoc,
    annotations: Vec<AnnotationDoc>,
    omega_ev: Vec<f64>,
    sigma_arb: Vec<f64>,
}

/// JSON rendering mirroring the spectrum type (frequencies in eV).
pub fn spectrum_json(
    spectrum: &Spectrum,
    scenario_file: &ScenarioFile,
    normalization: Normalization,
) -> String {
    let (sigma, scale) = normalized_sigma(spectrum, normalization);
    let doc = SpectrumDoc {
        schema_version: 1,
        scenario: scenario_file,
        meta: meta_doc(spectrum),
        annotations: annotation_docs(&spectrum.annotations, scale),
        omega_ev: spectrum
            .omegas
            .iter()
            .map(|&w| units::rad_per_s_to_ev(w))
            .collect(),
        sigma_arb: sigma,
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("spectrum serializes");
    text.push('\n');
    text
}

#[derive(Debug, Serialize)]
pub struct ManifestEntry {
    pub value: String,
    pub path: String,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Debug, Serialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub axis: String,
    pub unit: String,
    pub format: String,
    pub entries: Vec<ManifestEntry>,
}

pub fn manifest_json(manifest: &Manifest) -> String {
    let mut text = serde_json::to_string_pretty(manifest).expect("manifest serializes");
    text.push('\n');
    text
}
