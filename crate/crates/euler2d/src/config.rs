//! Run configuration: defaults per experiment, flat `key=value` config
//! files, and override handling.
//!
//! CLI flags override file values; the fully resolved configuration is
//! embedded as a `#`-comment header in every CSV the run writes, so an
//! output file always records exactly how it was produced.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::flux::FluxKind;
use crate::reconstruct::ReconstructionScheme;

/// The experiments the CLI knows how to set up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    SoundWave,
    Contact,
    PureContact,
    Gresho,
}

impl Experiment {
    pub fn parse(name: &str) -> Result<Experiment> {
        match name {
            "sound-wave" => Ok(Experiment::SoundWave),
            "contact" => Ok(Experiment::Contact),
            "pure-contact" => Ok(Experiment::PureContact),
            "gresho" => Ok(Experiment::Gresho),
            _ => Err(Error::InvalidConfig(format!(
                "unknown experiment '{name}' (expected sound-wave, contact, pure-contact, gresho)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Experiment::SoundWave => "sound-wave",
            Experiment::Contact => "contact",
            Experiment::PureContact => "pure-contact",
            Experiment::Gresho => "gresho",
        }
    }
}

/// Time of 0.1 revolutions of the Gresho vortex core (angular velocity 5).
pub const GRESHO_TENTH_REVOLUTION: f64 = 0.1 * 2.0 * std::f64::consts::PI / 5.0;

/// Fully resolved run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub flux: FluxKind,
    pub m_cut: f64,
    pub nx: usize,
    pub ny: usize,
    pub reconstruction: ReconstructionScheme,
    pub cfl: f64,
    pub t_end: f64,
    pub gamma: f64,
    pub gas_constant: f64,
    pub output_dir: PathBuf,
    /// Steps between diagnostics rows (the initial and final states are
    /// always recorded).
    pub output_stride: usize,
    /// Maximal initial Mach number parameter of the Gresho vortex.
    pub mach_ref: f64,
}

impl RunConfig {
    /// Paper defaults for the given experiment: Riemann problems run on
    /// 100x1 cells with constant reconstruction to t = 0.2, the Gresho
    /// vortex on 32x32 with limited linear reconstruction for 0.1
    /// revolutions; gamma = 1.4, R = 1, M_cut = 0 everywhere.
    pub fn defaults(experiment: Experiment) -> RunConfig {
        let riemann = !matches!(experiment, Experiment::Gresho);
        RunConfig {
            experiment,
            flux: FluxKind::EsKesLm { m_cut: 0.0 },
            m_cut: 0.0,
            nx: if riemann { 100 } else { 32 },
            ny: if riemann { 1 } else { 32 },
            reconstruction: if riemann {
                ReconstructionScheme::Constant
            } else {
                ReconstructionScheme::LimitedLinear
            },
            cfl: 0.4,
            t_end: if riemann { 0.2 } else { GRESHO_TENTH_REVOLUTION },
            gamma: 1.4,
            gas_constant: 1.0,
            output_dir: PathBuf::from("out"),
            output_stride: 1,
            mach_ref: 0.1,
        }
    }

    /// Reads a flat `key=value` file ('#' starts a comment). The file must
    /// name the experiment; all other keys default per experiment.
    pub fn from_file(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)?;
        let mut entries = BTreeMap::new();
        for (line_no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidConfig(format!(
                    "{}:{}: expected key=value, got '{line}'",
                    path.display(),
                    line_no + 1
                ))
            })?;
            entries.insert(key.trim().to_string(), value.trim().to_string());
        }
        let experiment = entries
            .remove("experiment")
            .ok_or_else(|| Error::InvalidConfig("config file must set 'experiment'".into()))?;
        let mut config = RunConfig::defaults(Experiment::parse(&experiment)?);
        for (key, value) in entries {
            config.apply_override(&key, &value)?;
        }
        Ok(config)
    }

    /// Applies one `key=value` override.
    pub fn apply_override(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| Error::InvalidConfig(format!("{key}: invalid {what} '{value}'"));
        match key {
            "experiment" => {
                self.experiment = Experiment::parse(value)?;
            }
            "flux" => {
                self.flux = FluxKind::parse(value, self.m_cut)?;
            }
            "m_cut" => {
                self.m_cut = value.parse().map_err(|_| bad("number"))?;
                self.flux = FluxKind::parse(self.flux.name(), self.m_cut)?;
            }
            "nx" => self.nx = value.parse().map_err(|_| bad("cell count"))?,
            "ny" => self.ny = value.parse().map_err(|_| bad("cell count"))?,
            "reconstruction" => {
                self.reconstruction = ReconstructionScheme::parse(value).ok_or_else(|| {
                    Error::InvalidConfig(format!(
                        "unknown reconstruction '{value}' (expected constant, limited-linear)"
                    ))
                })?;
            }
            "cfl" => self.cfl = value.parse().map_err(|_| bad("number"))?,
            "t_end" => self.t_end = value.parse().map_err(|_| bad("number"))?,
            "gamma" => self.gamma = value.parse().map_err(|_| bad("number"))?,
            "gas_constant" => self.gas_constant = value.parse().map_err(|_| bad("number"))?,
            "output_dir" => self.output_dir = PathBuf::from(value),
            "output_stride" => self.output_stride = value.parse().map_err(|_| bad("stride"))?,
            "mach_ref" => self.mach_ref = value.parse().map_err(|_| bad("number"))?,
            _ => {
                return Err(Error::InvalidConfig(format!("unknown key '{key}'")));
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidConfig(msg));
        if self.nx < 2 {
            return fail(format!("nx must be at least 2, got {}", self.nx));
        }
        if self.ny < 1 {
            return fail(format!("ny must be at least 1, got {}", self.ny));
        }
        if self.experiment == Experiment::Gresho && self.ny < 2 {
            return fail("gresho needs a 2-d grid (ny >= 2)".into());
        }
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return fail(format!("cfl must lie in (0, 1], got {}", self.cfl));
        }
        if !(0.0..=1.0).contains(&self.m_cut) {
            return fail(format!("m_cut must lie in [0, 1], got {}", self.m_cut));
        }
        if !(self.gamma > 1.0) {
            return fail(format!("gamma must exceed 1, got {}", self.gamma));
        }
        if !(self.gas_constant > 0.0) {
            return fail(format!("gas_constant must be positive, got {}", self.gas_constant));
        }
        if !(self.t_end >= 0.0) {
            return fail(format!("t_end must be non-negative, got {}", self.t_end));
        }
        if self.output_stride == 0 {
            return fail("output_stride must be at least 1".into());
        }
        if !(self.mach_ref > 0.0) {
            return fail(format!("mach_ref must be positive, got {}", self.mach_ref));
        }
        Ok(())
    }

    /// Key-value view of the resolved configuration, embedded as the comment
    /// header of every output CSV.
    pub fn header_entries(&self) -> Vec<(String, String)> {
        vec![
            ("experiment".into(), self.experiment.name().into()),
            ("flux".into(), self.flux.name().into()),
            ("m_cut".into(), self.m_cut.to_string()),
            ("nx".into(), self.nx.to_string()),
            ("ny".into(), self.ny.to_string()),
            ("reconstruction".into(), self.reconstruction.name().into()),
            ("cfl".into(), self.cfl.to_string()),
            ("t_end".into(), self.t_end.to_string()),
            ("gamma".into(), self.gamma.to_string()),
            ("gas_constant".into(), self.gas_constant.to_string()),
            ("output_dir".into(), self.output_dir.display().to_string()),
            ("output_stride".into(), self.output_stride.to_string()),
            ("mach_ref".into(), self.mach_ref.to_string()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn defaults_match_the_experiment() {
        let c = RunConfig::defaults(Experiment::SoundWave);
        assert_eq!((c.nx, c.ny), (100, 1));
        assert_eq!(c.t_end, 0.2);
        assert_eq!(c.reconstruction, ReconstructionScheme::Constant);

        let c = RunConfig::defaults(Experiment::Gresho);
        assert_eq!((c.nx, c.ny), (32, 32));
        assert_eq!(c.reconstruction, ReconstructionScheme::LimitedLinear);
        assert!((c.t_end - 0.12566370614359174).abs() < 1e-16);
    }

    #[test]
    fn file_parsing_and_overrides() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        let mut f = std::fs::File::create(&path).unwrap();
        writeln!(f, "# gresho at low mach").unwrap();
        writeln!(f, "experiment = gresho").unwrap();
        writeln!(f, "flux = es-lm   # low-Mach entropy stable").unwrap();
        writeln!(f, "mach_ref = 0.01").unwrap();
        drop(f);

        let mut config = RunConfig::from_file(&path).unwrap();
        assert_eq!(config.experiment, Experiment::Gresho);
        assert_eq!(config.flux.name(), "es-lm");
        assert_eq!(config.mach_ref, 0.01);

        config.apply_override("m_cut", "0.05").unwrap();
        assert_eq!(config.flux, FluxKind::EsLm { m_cut: 0.05 });
        assert!(config.apply_override("fluxx", "roe").is_err());
        config.validate().unwrap();
    }

    #[test]
    fn validation_rejects_bad_values() {
        let mut c = RunConfig::defaults(Experiment::SoundWave);
        c.cfl = 0.0;
        assert!(c.validate().is_err());
        let mut c = RunConfig::defaults(Experiment::Gresho);
        c.ny = 1;
        assert!(c.validate().is_err());
        let mut c = RunConfig::defaults(Experiment::SoundWave);
        c.gamma = 1.0;
        assert!(c.validate().is_err());
    }
}
