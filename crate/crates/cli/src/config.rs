//! Run configuration: a TOML document with one table per physical block.
//!
//! Loading applies defaults, validates every block and reports problems by
//! their dotted key (`cpb.E_C`). The canonical form is the fully resolved
//! config re-serialized, and its SHA-256 is the config hash stamped into
//! every output file.

use std::path::Path;

use qcnr_core::composite::{CouplingParams, ModeKind, OscillatorParams};
use qcnr_core::mechanics::{BeamSpec, BiasCircuit, Material, ShapeNormalization};
use qcnr_core::qubit::{ChargeBasis, CpbParams};
use qcnr_core::spectroscopy::ProbeConfig;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, ConfigError};
use crate::sweep::Operation;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cpb: Option<CpbBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oscillator: Option<OscillatorBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coupling: Option<CouplingBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beam: Option<BeamBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circuit: Option<CircuitBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub environment: Option<EnvironmentBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe: Option<ProbeBlock>,
    #[serde(default, skip_serializing_if = "OutputBlock::is_empty")]
    pub output: OutputBlock,
}

/// Cooper-pair box. Energies are `E/h` in Hz.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CpbBlock {
    #[serde(rename = "E_C")]
    pub e_c: f64,
    #[serde(rename = "E_J0")]
    pub e_j0: f64,
    #[serde(default)]
    pub flux: f64,
    #[serde(default)]
    pub n_sigma: f64,
    #[serde(default)]
    pub asymmetry: f64,
    #[serde(default = "default_n_max")]
    pub n_max: usize,
}

fn default_n_max() -> usize {
    ChargeBasis::DEFAULT_N_MAX
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeKindName {
    Nanoresonator,
    LcCavity,
    CpwCavity,
}

impl From<ModeKindName> for ModeKind {
    fn from(k: ModeKindName) -> Self {
        match k {
            ModeKindName::Nanoresonator => ModeKind::Nanoresonator,
            ModeKindName::LcCavity => ModeKind::LcCavity,
            ModeKindName::CpwCavity => ModeKind::CpwCavity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OscillatorBlock {
    /// Hz
    pub omega: f64,
    pub kind: ModeKindName,
    #[serde(default = "default_n_fock")]
    pub n_fock: usize,
    /// Hz
    #[serde(default)]
    pub kappa: f64,
}

fn default_n_fock() -> usize {
    OscillatorParams::DEFAULT_N_FOCK
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CouplingBlock {
    /// Hz
    pub lambda: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaterialName {
    Aluminum,
    Niobium,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalizationName {
    #[default]
    MaxDeflection,
    CenterOfMass,
    ElectrodeAverage,
}

/// Beam geometry in metres. Either `material` or both `rho` and `youngs_e`
/// must be given; the canonical form always carries the explicit pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BeamBlock {
    pub w: f64,
    pub t: f64,
    pub l: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_e: Option<f64>,
    pub d: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub material: Option<MaterialName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub youngs_e: Option<f64>,
    #[serde(default = "default_beta")]
    pub beta: f64,
    #[serde(default)]
    pub normalization: NormalizationName,
}

fn default_beta() -> f64 {
    1.0
}

/// Bias network: capacitances in F, impedance in Ω, voltage in V.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitBlock {
    pub c_nr: f64,
    pub c_cpb: f64,
    pub c_q: f64,
    pub c_t: f64,
    #[serde(default = "default_z0")]
    pub z0: f64,
    #[serde(default)]
    pub v_nr: f64,
}

fn default_z0() -> f64 {
    50.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvironmentBlock {
    /// K
    pub temperature: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operation: Option<String>,
    /// Dotted parameter path, e.g. `cpb.flux`.
    pub axis: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    #[serde(default)]
    pub spacing: Spacing,
    /// Levels reported by the spectrum operations.
    #[serde(default = "default_levels")]
    pub levels: usize,
    /// Polarization charges of the transition overlay.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_g: Option<Vec<f64>>,
}

fn default_levels() -> usize {
    4
}

/// Probe grid and line model, frequencies in Hz.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeBlock {
    pub omega_start: f64,
    pub omega_stop: f64,
    pub omega_count: usize,
    #[serde(default = "default_eta")]
    pub eta: f64,
    #[serde(default)]
    pub n_bar: f64,
    #[serde(default)]
    pub qp_average: bool,
}

fn default_eta() -> f64 {
    ProbeConfig::DEFAULT_ETA
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    JsonMap,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct OutputBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

impl OutputBlock {
    fn is_empty(&self) -> bool {
        self.path.is_none() && self.format.is_none()
    }
}

/// A parsed config plus the keys the schema did not recognise.
#[derive(Debug, Clone, PartialEq)]
pub struct Loaded {
    pub config: RunConfig,
    pub unknown_keys: Vec<String>,
}

/// Reads and validates a config file. With `strict`, unknown keys are an
/// error; otherwise they are returned for the caller to warn about.
pub fn load_config(path: &Path, strict: bool) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    Ok(parse_config(&text, strict)?)
}

pub fn parse_config(text: &str, strict: bool) -> Result<Loaded, ConfigError> {
    let de = toml::Deserializer::parse(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
    let mut unknown_keys = Vec::new();
    let config: RunConfig = serde_ignored::deserialize(de, |path| unknown_keys.push(dotted(&path)))
        .map_err(|e| ConfigError::Parse(e.to_string()))?;
    if strict {
        if let Some(key) = unknown_keys.first() {
            return Err(ConfigError::UnknownKey(key.clone()));
        }
    }
    let config = config.resolved()?;
    config.validate()?;
    Ok(Loaded { config, unknown_keys })
}

/// `cpb.?.colour` → `cpb.colour`: drops the markers for optional blocks.
fn dotted(path: &serde_ignored::Path) -> String {
    path.to_string().split('.').filter(|s| *s != "?").collect::<Vec<_>>().join(".")
}

fn invalid(key: impl Into<String>, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { key: key.into(), reason: reason.into() }
}

/// Converts a core validation error into one naming the config key.
fn rename(block: &str, err: qcnr_core::Error, key_of: fn(&str) -> &str) -> ConfigError {
    use qcnr_core::Error;
    match err {
        Error::NonFinite(name) => invalid(format!("{block}.{}", key_of(name)), "must be finite"),
        Error::OutOfRange { name, reason } => invalid(format!("{block}.{}", key_of(name)), reason),
        other => invalid(block, other.to_string()),
    }
}

fn same(name: &str) -> &str {
    name
}

fn cpb_key(name: &str) -> &str {
    match name {
        "e_c" => "E_C",
        "e_j0" => "E_J0",
        "junction_asymmetry" => "asymmetry",
        other => other,
    }
}

fn oscillator_key(name: &str) -> &str {
    match name {
        "linewidth_kappa" => "kappa",
        other => other,
    }
}

fn probe_key(name: &str) -> &str {
    match name {
        "omega_grid" => "omega_start",
        other => other,
    }
}

/// `count` points from `start` to `stop` inclusive; a single point sits at `start`.
pub fn axis_points(start: f64, stop: f64, count: usize, spacing: Spacing) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    let last = (count - 1) as f64;
    match spacing {
        Spacing::Linear => (0..count).map(|i| start + (stop - start) * i as f64 / last).collect(),
        Spacing::Log => {
            let (a, b) = (start.ln(), stop.ln());
            (0..count).map(|i| (a + (b - a) * i as f64 / last).exp()).collect()
        }
    }
}

impl RunConfig {
    /// Fills every defaulted or derived field so that serialization is canonical.
    fn resolved(mut self) -> Result<Self, ConfigError> {
        if let Some(beam) = &mut self.beam {
            let preset = beam.material.map(|m| match m {
                MaterialName::Aluminum => Material::ALUMINUM,
                MaterialName::Niobium => Material::NIOBIUM,
            });
            match (preset, beam.rho, beam.youngs_e) {
                (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
                    return Err(invalid("beam.material", "conflicts with explicit rho/youngs_e"));
                }
                (Some(m), None, None) => {
                    beam.rho = Some(m.density);
                    beam.youngs_e = Some(m.youngs_modulus);
                    beam.material = None;
                }
                (None, Some(_), Some(_)) => {}
                (None, None, _) => return Err(invalid("beam.rho", "required when beam.material is absent")),
                (None, _, None) => return Err(invalid("beam.youngs_e", "required when beam.material is absent")),
            }
            beam.l_e.get_or_insert(beam.l);
        }
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if let Some(b) = &self.cpb {
            b.params().validate().map_err(|e| rename("cpb", e, cpb_key))?;
            if b.n_max < 1 {
                return Err(invalid("cpb.n_max", "must be >= 1"));
            }
        }
        if let Some(o) = &self.oscillator {
            o.params().validate().map_err(|e| rename("oscillator", e, oscillator_key))?;
        }
        if let Some(c) = &self.coupling {
            if !c.lambda.is_finite() {
                return Err(invalid("coupling.lambda", "must be finite"));
            }
        }
        if let Some(b) = &self.beam {
            b.spec().validate().map_err(|e| rename("beam", e, same))?;
        }
        if let Some(c) = &self.circuit {
            c.circuit().validate().map_err(|e| rename("circuit", e, same))?;
        }
        if let Some(env) = &self.environment {
            if !(env.temperature.is_finite() && env.temperature >= 0.0) {
                return Err(invalid("environment.temperature", "must be finite and >= 0"));
            }
        }
        if let Some(p) = &self.probe {
            if p.omega_count < 1 {
                return Err(invalid("probe.omega_count", "must be >= 1"));
            }
            if p.omega_count > 1 && (p.omega_stop <= p.omega_start || p.omega_stop.is_nan()) {
                return Err(invalid("probe.omega_stop", "must exceed probe.omega_start"));
            }
            p.config().validate().map_err(|e| rename("probe", e, probe_key))?;
        }
        if let Some(s) = &self.sweep {
            self.validate_sweep(s)?;
        }
        Ok(())
    }

    fn validate_sweep(&self, s: &SweepBlock) -> Result<(), ConfigError> {
        if s.count < 1 {
            return Err(invalid("sweep.count", "must be >= 1"));
        }
        if !(s.start.is_finite() && s.stop.is_finite()) {
            return Err(invalid("sweep.start", "start and stop must be finite"));
        }
        if s.spacing == Spacing::Log && !(s.start > 0.0 && s.stop > 0.0) {
            return Err(invalid("sweep.spacing", "log spacing needs positive start and stop"));
        }
        if s.levels < 1 {
            return Err(invalid("sweep.levels", "must be >= 1"));
        }
        // the axis must name a parameter of a block that is present
        self.clone().set_axis(&s.axis, s.start)?;
        if let Some(op) = &s.operation {
            Operation::parse(op)?.check_requirements(self)?;
        }
        Ok(())
    }

    /// Overwrites the parameter at the dotted path `axis` with `value`.
    pub fn set_axis(&mut self, axis: &str, value: f64) -> Result<(), ConfigError> {
        let (block, key) = axis.split_once('.').ok_or_else(|| invalid("sweep.axis", format!("`{axis}` is not block.key")))?;
        let missing = || invalid("sweep.axis", format!("`{axis}` refers to absent block [{block}]"));
        let unknown = || invalid("sweep.axis", format!("`{axis}` is not a sweepable parameter"));
        let slot: &mut f64 = match block {
            "cpb" => {
                let b = self.cpb.as_mut().ok_or_else(missing)?;
                match key {
                    "E_C" => &mut b.e_c,
                    "E_J0" => &mut b.e_j0,
                    "flux" => &mut b.flux,
                    "n_sigma" => &mut b.n_sigma,
                    "asymmetry" => &mut b.asymmetry,
                    _ => return Err(unknown()),
                }
            }
            "oscillator" => {
                let b = self.oscillator.as_mut().ok_or_else(missing)?;
                match key {
                    "omega" => &mut b.omega,
                    "kappa" => &mut b.kappa,
                    _ => return Err(unknown()),
                }
            }
            "coupling" => match key {
                "lambda" => &mut self.coupling.as_mut().ok_or_else(missing)?.lambda,
                _ => return Err(unknown()),
            },
            "beam" => {
                let b = self.beam.as_mut().ok_or_else(missing)?;
                match key {
                    "w" => &mut b.w,
                    "t" => &mut b.t,
                    "d" => &mut b.d,
                    "beta" => &mut b.beta,
                    // the electrode follows the beam unless it was set shorter
                    "l" => {
                        if b.l_e == Some(b.l) {
                            b.l_e = Some(value);
                        }
                        &mut b.l
                    }
                    "l_e" => b.l_e.get_or_insert(0.0),
                    "rho" => b.rho.get_or_insert(0.0),
                    "youngs_e" => b.youngs_e.get_or_insert(0.0),
                    _ => return Err(unknown()),
                }
            }
            "circuit" => {
                let b = self.circuit.as_mut().ok_or_else(missing)?;
                match key {
                    "c_nr" => &mut b.c_nr,
                    "c_cpb" => &mut b.c_cpb,
                    "c_q" => &mut b.c_q,
                    "c_t" => &mut b.c_t,
                    "z0" => &mut b.z0,
                    "v_nr" => &mut b.v_nr,
                    _ => return Err(unknown()),
                }
            }
            "environment" => match key {
                "temperature" => &mut self.environment.as_mut().ok_or_else(missing)?.temperature,
                _ => return Err(unknown()),
            },
            "probe" => {
                let b = self.probe.as_mut().ok_or_else(missing)?;
                match key {
                    "eta" => &mut b.eta,
                    "n_bar" => &mut b.n_bar,
                    _ => return Err(unknown()),
                }
            }
            _ => return Err(unknown()),
        };
        *slot = value;
        Ok(())
    }

    /// The canonical TOML text: resolved, defaults explicit, fixed key order.
    pub fn canonical(&self) -> String {
        toml::to_string(self).expect("config types always serialize")
    }

    /// Lowercase hex SHA-256 of [`RunConfig::canonical`].
    pub fn hash(&self) -> String {
        Sha256::digest(self.canonical().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn require_cpb(&self) -> Result<&CpbBlock, ConfigError> {
        self.cpb.as_ref().ok_or(ConfigError::MissingBlock("cpb"))
    }

    pub fn require_oscillator(&self) -> Result<&OscillatorBlock, ConfigError> {
        self.oscillator.as_ref().ok_or(ConfigError::MissingBlock("oscillator"))
    }

    pub fn require_coupling(&self) -> Result<&CouplingBlock, ConfigError> {
        self.coupling.as_ref().ok_or(ConfigError::MissingBlock("coupling"))
    }

    pub fn require_beam(&self) -> Result<&BeamBlock, ConfigError> {
        self.beam.as_ref().ok_or(ConfigError::MissingBlock("beam"))
    }

    pub fn require_circuit(&self) -> Result<&CircuitBlock, ConfigError> {
        self.circuit.as_ref().ok_or(ConfigError::MissingBlock("circuit"))
    }

    pub fn require_environment(&self) -> Result<&EnvironmentBlock, ConfigError> {
        self.environment.as_ref().ok_or(ConfigError::MissingBlock("environment"))
    }

    pub fn require_sweep(&self) -> Result<&SweepBlock, ConfigError> {
        self.sweep.as_ref().ok_or(ConfigError::MissingBlock("sweep"))
    }

    pub fn require_probe(&self) -> Result<&ProbeBlock, ConfigError> {
        self.probe.as_ref().ok_or(ConfigError::MissingBlock("probe"))
    }
}

impl CpbBlock {
    pub fn params(&self) -> CpbParams {
        CpbParams::new(self.e_c, self.e_j0)
            .with_flux(self.flux)
            .with_n_sigma(self.n_sigma)
            .with_asymmetry(self.asymmetry)
    }

    pub fn basis(&self) -> ChargeBasis {
        ChargeBasis::new(self.n_max)
    }
}

impl OscillatorBlock {
    pub fn params(&self) -> OscillatorParams {
        let mut p = OscillatorParams::new(self.omega, self.kind.into()).with_n_fock(self.n_fock);
        p.linewidth_kappa = self.kappa;
        p
    }
}

impl CouplingBlock {
    pub fn params(&self) -> CouplingParams {
        CouplingParams::new(self.lambda)
    }
}

impl BeamBlock {
    /// Only meaningful after resolution, which fills `l_e`, `rho` and `youngs_e`.
    pub fn spec(&self) -> BeamSpec {
        BeamSpec {
            w: self.w,
            t: self.t,
            l: self.l,
            l_e: self.l_e.unwrap_or(self.l),
            d: self.d,
            rho: self.rho.unwrap_or(f64::NAN),
            youngs_e: self.youngs_e.unwrap_or(f64::NAN),
            beta: self.beta,
        }
    }

    pub fn normalization(&self) -> ShapeNormalization {
        match self.normalization {
            NormalizationName::MaxDeflection => ShapeNormalization::MaxDeflection,
            NormalizationName::CenterOfMass => ShapeNormalization::CenterOfMass,
            NormalizationName::ElectrodeAverage => ShapeNormalization::ElectrodeAverage,
        }
    }
}

impl CircuitBlock {
    pub fn circuit(&self) -> BiasCircuit {
        BiasCircuit { c_nr: self.c_nr, c_cpb: self.c_cpb, c_q: self.c_q, c_t: self.c_t, z0: self.z0, v_nr: self.v_nr }
    }
}

impl ProbeBlock {
    pub fn config(&self) -> ProbeConfig {
        ProbeConfig::new(axis_points(self.omega_start, self.omega_stop, self.omega_count, Spacing::Linear))
            .with_eta(self.eta)
            .with_n_bar(self.n_bar)
            .with_qp_average(self.qp_average)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "[cpb]\nE_C = 1.3e9\nE_J0 = 12.7e9\n";

    #[test]
    fn defaults_applied() {
        let text = format!(
            "{MINIMAL}[probe]\nomega_start = 1e9\nomega_stop = 2e9\nomega_count = 3\n\
             [beam]\nw = 2e-7\nt = 1e-7\nl = 1.8e-6\nd = 7e-8\nmaterial = \"aluminum\"\n"
        );
        let c = parse_config(&text, true).unwrap().config;
        assert_eq!(c.cpb.as_ref().unwrap().n_max, 7);
        assert_eq!(c.probe.as_ref().unwrap().eta, 5e6);
        let beam = c.beam.unwrap();
        assert_eq!(beam.beta, 1.0);
        assert_eq!(beam.l_e, Some(1.8e-6));
        assert_eq!(beam.rho, Some(2700.0));
    }

    #[test]
    fn negative_charging_energy_names_key() {
        let err = parse_config("[cpb]\nE_C = -1e9\nE_J0 = 1e9\n", true).unwrap_err();
        assert!(matches!(&err, ConfigError::Invalid { key, .. } if key == "cpb.E_C"), "{err}");
        assert!(err.to_string().contains("E_C"));
    }

    #[test]
    fn unknown_keys_strict_and_lax() {
        let text = format!("{MINIMAL}colour = 3\n");
        assert_eq!(parse_config(&text, true).unwrap_err(), ConfigError::UnknownKey("cpb.colour".into()));
        assert_eq!(parse_config(&text, false).unwrap().unknown_keys, ["cpb.colour"]);
    }

    #[test]
    fn parse_error_reports_position() {
        let err = parse_config("[cpb]\nE_C = = 3\n", true).unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn canonical_round_trip() {
        let text = format!("{MINIMAL}flux = 0.25\n[sweep]\naxis = \"cpb.flux\"\nstart = 0\nstop = 1\ncount = 11\n");
        let c = parse_config(&text, true).unwrap().config;
        let canon = c.canonical();
        let again = parse_config(&canon, true).unwrap().config;
        assert_eq!(again, c);
        assert_eq!(again.canonical(), canon);
        assert_eq!(again.hash(), c.hash());
    }

    #[test]
    fn hash_tracks_content() {
        let a = parse_config(MINIMAL, true).unwrap().config;
        let b = parse_config(&format!("{MINIMAL}flux = 0.1\n"), true).unwrap().config;
        // whitespace and key order do not matter, values do
        let c = parse_config("[cpb]\nE_J0 = 12.7e9\n  E_C = 1.3e9\n", true).unwrap().config;
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.hash(), c.hash());
        assert_eq!(a.hash().len(), 64);
    }

    #[test]
    fn sweep_axis_must_exist() {
        let text = format!("{MINIMAL}[sweep]\naxis = \"beam.l\"\nstart = 1\nstop = 2\ncount = 2\n");
        let err = parse_config(&text, true).unwrap_err();
        assert!(matches!(&err, ConfigError::Invalid { key, .. } if key == "sweep.axis"), "{err}");
        let text = format!("{MINIMAL}[sweep]\naxis = \"cpb.flux\"\nstart = 0\nstop = 1\ncount = 0\n");
        assert!(matches!(parse_config(&text, true), Err(ConfigError::Invalid { key, .. }) if key == "sweep.count"));
    }

    #[test]
    fn axis_spacing() {
        assert_eq!(axis_points(0.0, 1.0, 1, Spacing::Linear), [0.0]);
        assert_eq!(axis_points(0.0, 1.0, 3, Spacing::Linear), [0.0, 0.5, 1.0]);
        let log = axis_points(1.0, 100.0, 3, Spacing::Log);
        assert!((log[1] - 10.0).abs() < 1e-12);
    }
}
