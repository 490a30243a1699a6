//! Built-in scenario presets, embedded from the files under `presets/`.

pub struct Preset {
    pub name: &'static str,
    pub summary: &'static str,
    pub toml: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "tlbise2-cdse",
        summary: "TlBiSe2 sphere (R=5nm, 2.2 eV mode) + CdSe dot at 2.2 eV, r=7nm, longitudinal",
        toml: include_str!("../../../presets/tlbise2-cdse.toml"),
    },
    Preset {
        name: "tlbise2-cdse-transverse",
        summary: "same hybrid, transverse drive polarization",
        toml: include_str!("../../../presets/tlbise2-cdse-transverse.toml"),
    },
    Preset {
        name: "tlbise2-cdse-detuned",
        summary: "dot detuned to 2.9 eV at r=8nm; grid zooms on the interference feature",
        toml: include_str!("../../../presets/tlbise2-cdse-detuned.toml"),
    },
    Preset {
        name: "trivial-insulator",
        summary: "theta = 0 control: plain dielectric sphere, no magnetoelectric response",
        toml: include_str!("../../../presets/trivial-insulator.toml"),
    },
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}
