//! Linear-response spectroscopy of the composite system.
//!
//! The probe couples to the oscillator quadrature `a + a†`. The complex
//! response at probe frequency `ω` is
//!
//! `R(ω) = Σ_i p_i Σ_f |⟨f|a + a†|i⟩|² / ((E_f − E_i) − ω − iη)`
//!
//! and the reported amplitude is `η · Im R`, a sum of Lorentzians of
//! half-width `η`. Populations are thermal at the effective temperature that
//! reproduces the requested mean photon number. Both amplitude and `R` are
//! normalized so the uncoupled oscillator peaks at 1.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // supplies libm-backed float methods when std is absent
use num_traits::Float;

use crate::composite::{composite_spectrum, CompositeSpectrum, CouplingParams, OscillatorParams};
use crate::error::{finite, Error, Result};
use crate::linalg::inner;
use crate::optimize::bisect;
use crate::qubit::{qubit_spectrum, transition_energy_curve, ChargeBasis, CpbParams};

/// Relative weight below which a population or transition is dropped.
const WEIGHT_CUTOFF: f64 = 1e-15;

/// Probe frequencies and line model.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeConfig {
    /// Strictly increasing probe frequencies, Hz.
    pub omega_grid: Vec<f64>,
    /// Lorentzian half-width, Hz.
    pub eta: f64,
    /// Mean oscillator photon number.
    pub n_bar: f64,
    /// Average the response over `n_Σ` and `n_Σ + 1/2`.
    pub qp_average: bool,
}

impl ProbeConfig {
    pub const DEFAULT_ETA: f64 = 5e6;

    pub fn new(omega_grid: Vec<f64>) -> Self {
        Self { omega_grid, eta: Self::DEFAULT_ETA, n_bar: 0.0, qp_average: false }
    }

    pub fn with_eta(self, eta: f64) -> Self {
        Self { eta, ..self }
    }

    pub fn with_n_bar(self, n_bar: f64) -> Self {
        Self { n_bar, ..self }
    }

    pub fn with_qp_average(self, qp_average: bool) -> Self {
        Self { qp_average, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.omega_grid.is_empty() {
            return Err(Error::OutOfRange { name: "omega_grid", reason: "must not be empty" });
        }
        for &w in &self.omega_grid {
            finite("omega_grid", w)?;
        }
        if self.omega_grid.windows(2).any(|p| p[1] <= p[0]) {
            return Err(Error::OutOfRange { name: "omega_grid", reason: "must be strictly increasing" });
        }
        finite("eta", self.eta)?;
        if self.eta <= 0.0 {
            return Err(Error::OutOfRange { name: "eta", reason: "must be > 0" });
        }
        finite("n_bar", self.n_bar)?;
        if self.n_bar < 0.0 {
            return Err(Error::OutOfRange { name: "n_bar", reason: "must be >= 0" });
        }
        Ok(())
    }
}

/// Normalized response along the probe grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseTrace {
    /// `η · Im R(ω)`, dimensionless, ≥ 0.
    pub amplitude: Vec<f64>,
    /// `arg R(ω)`, radians.
    pub phase: Vec<f64>,
}

impl ResponseTrace {
    fn from_complex(response: &[Complex64], eta: f64) -> Self {
        Self {
            amplitude: response.iter().map(|r| eta * r.im).collect(),
            phase: response.iter().map(|r| r.arg()).collect(),
        }
    }

    fn missing(len: usize) -> Self {
        Self { amplitude: vec![f64::NAN; len], phase: vec![f64::NAN; len] }
    }
}

/// Thermal populations over a spectrum with mean photon number `n_bar`.
///
/// `energies` must be ascending. For `n_bar = 0` the (possibly degenerate)
/// ground manifold is weighted equally. Otherwise `T_eff` is bisected on a
/// log scale until `Σ p_i N_i = n_bar`.
pub fn thermal_populations(energies: &[f64], photons: &[f64], n_bar: f64) -> Result<Vec<f64>> {
    finite("n_bar", n_bar)?;
    if energies.is_empty() || energies.len() != photons.len() {
        return Err(Error::OutOfRange { name: "energies", reason: "must be nonempty and match photon numbers" });
    }
    let e0 = energies[0];
    let spread = energies[energies.len() - 1] - e0;
    let degenerate = 1e-10 * spread.max(e0.abs()).max(f64::MIN_POSITIVE);
    let ground = energies.iter().take_while(|&&e| e - e0 <= degenerate).count();

    let mean_at = |beta: f64| -> (Vec<f64>, f64) {
        let w: Vec<f64> = energies.iter().map(|&e| (-(e - e0) * beta).exp()).collect();
        let z: f64 = w.iter().sum();
        let p: Vec<f64> = w.into_iter().map(|x| x / z).collect();
        let n = p.iter().zip(photons).map(|(p, n)| p * n).sum();
        (p, n)
    };
    let ground_mean = photons[..ground].iter().sum::<f64>() / ground as f64;
    let top_mean = photons.iter().sum::<f64>() / photons.len() as f64;

    if n_bar == 0.0 {
        let mut p = vec![0.0; energies.len()];
        p[..ground].fill(1.0 / ground as f64);
        return Ok(p);
    }
    let tol = 1e-12 * top_mean.max(1.0);
    if (n_bar - ground_mean).abs() <= tol {
        return Ok(mean_at(f64::INFINITY).0);
    }
    if ground == energies.len() || n_bar < ground_mean || n_bar >= top_mean {
        return Err(Error::PopulationUnreachable { target: n_bar, min: ground_mean, max: top_mean });
    }

    // beta = exp(-u); u ranges from far above the spread (hot) to far below
    // the first excitation gap (cold).
    let gap = energies[ground] - e0;
    let (u_cold, u_hot) = ((gap / 700.0).ln(), (spread * 1e6).ln());
    let root = bisect(|u| Ok(mean_at((-u).exp()).1 - n_bar), u_cold, u_hot, 1e-13)?;
    match root {
        Some(u) => Ok(mean_at((-u).exp()).0),
        None => Err(Error::PopulationUnreachable { target: n_bar, min: ground_mean, max: top_mean }),
    }
}

/// A single allowed transition: weight `p_i |M_fi|²` and frequency `E_f − E_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Line {
    weight: f64,
    frequency: f64,
}

fn evaluate(lines: &[Line], probe: &ProbeConfig) -> Vec<Complex64> {
    probe
        .omega_grid
        .iter()
        .map(|&w| {
            lines
                .iter()
                .map(|l| Complex64::new(l.weight, 0.0) / Complex64::new(l.frequency - w, -probe.eta))
                .sum()
        })
        .collect()
}

fn composite_lines(spectrum: &CompositeSpectrum, n_bar: f64) -> Result<Vec<Line>> {
    let energies = spectrum.eigenvalues();
    let photons: Vec<f64> = (0..spectrum.dim()).map(|i| spectrum.photon_number(i)).collect();
    let pops = thermal_populations(energies, &photons, n_bar)?;
    let p_max = pops.iter().cloned().fold(0.0, f64::max);
    let mut lines = Vec::new();
    for (i, &p) in pops.iter().enumerate() {
        if p <= WEIGHT_CUTOFF * p_max {
            continue;
        }
        let x_i = spectrum.apply_quadrature(spectrum.eigenvector(i));
        for f in 0..spectrum.dim() {
            let weight = p * inner(spectrum.eigenvector(f), &x_i).norm_sqr();
            if weight > WEIGHT_CUTOFF * p_max {
                lines.push(Line { weight, frequency: energies[f] - energies[i] });
            }
        }
    }
    Ok(lines)
}

fn bare_lines(osc: &OscillatorParams, n_bar: f64) -> Result<Vec<Line>> {
    let nf = osc.fock_dimension();
    let energies: Vec<f64> = (0..nf).map(|k| osc.omega * (k as f64 + 0.5)).collect();
    let photons: Vec<f64> = (0..nf).map(|k| k as f64).collect();
    let pops = thermal_populations(&energies, &photons, n_bar)?;
    let mut lines = Vec::new();
    for (k, &p) in pops.iter().enumerate() {
        if k + 1 < nf {
            lines.push(Line { weight: p * (k + 1) as f64, frequency: osc.omega });
        }
        if k > 0 {
            lines.push(Line { weight: p * k as f64, frequency: -osc.omega });
        }
    }
    Ok(lines)
}

/// Peak amplitude `η · Im R(ω_osc)` of the uncoupled oscillator with the same
/// truncation and photon number; the normalization constant for all traces.
pub fn reference_peak(osc: &OscillatorParams, probe: &ProbeConfig) -> Result<f64> {
    osc.validate()?;
    probe.validate()?;
    let lines = bare_lines(osc, probe.n_bar)?;
    let at = ProbeConfig { omega_grid: vec![osc.omega], ..probe.clone() };
    Ok(probe.eta * evaluate(&lines, &at)[0].im)
}

/// Normalized complex response `R(ω)` of one composite spectrum.
pub fn complex_response(spectrum: &CompositeSpectrum, probe: &ProbeConfig) -> Result<Vec<Complex64>> {
    let reference = reference_peak(&spectrum.oscillator, probe)?;
    let lines = composite_lines(spectrum, probe.n_bar)?;
    Ok(evaluate(&lines, probe).into_iter().map(|r| r / reference).collect())
}

/// Normalized amplitude and phase of one composite spectrum.
pub fn linear_response(spectrum: &CompositeSpectrum, probe: &ProbeConfig) -> Result<ResponseTrace> {
    Ok(ResponseTrace::from_complex(&complex_response(spectrum, probe)?, probe.eta))
}

/// Normalized amplitude `Σ_i p_i Σ_f |M_fi|² η² / ((ω − ω_fi)² + η²)`.
pub fn linear_response_spectrum(spectrum: &CompositeSpectrum, probe: &ProbeConfig) -> Result<Vec<f64>> {
    linear_response(spectrum, probe).map(|t| t.amplitude)
}

/// Response at the flux and polarization charge stored in `cpb`, averaged
/// over `n_Σ` and `n_Σ + 1/2` when `probe.qp_average` is set.
pub fn single_tone_column(
    cpb: &CpbParams,
    osc: &OscillatorParams,
    g: &CouplingParams,
    basis: &ChargeBasis,
    probe: &ProbeConfig,
) -> Result<ResponseTrace> {
    let reference = reference_peak(osc, probe)?;
    single_tone_column_with_reference(cpb, osc, g, basis, probe, reference)
}

fn single_tone_column_with_reference(
    cpb: &CpbParams,
    osc: &OscillatorParams,
    g: &CouplingParams,
    basis: &ChargeBasis,
    probe: &ProbeConfig,
    reference: f64,
) -> Result<ResponseTrace> {
    let response_at = |n_sigma: f64| -> Result<Vec<Complex64>> {
        let spectrum = composite_spectrum(&cpb.with_n_sigma(n_sigma), osc, g, basis)?;
        let lines = composite_lines(&spectrum, probe.n_bar)?;
        Ok(evaluate(&lines, probe))
    };
    let mut r = response_at(cpb.n_sigma)?;
    if probe.qp_average {
        let shifted = response_at(cpb.n_sigma + 0.5)?;
        for (a, b) in r.iter_mut().zip(shifted) {
            *a = (*a + b) * 0.5;
        }
    }
    for a in &mut r {
        *a /= reference;
    }
    Ok(ResponseTrace::from_complex(&r, probe.eta))
}

/// Parameter echo attached to a map.
#[derive(Debug, Clone, PartialEq)]
pub struct MapMetadata {
    pub cpb: CpbParams,
    pub oscillator: OscillatorParams,
    pub coupling: CouplingParams,
    pub basis: ChargeBasis,
    pub eta: f64,
    pub n_bar: f64,
    pub qp_average: bool,
}

/// Response over a (flux, frequency) grid.
///
/// Matrices are row-major with one row per frequency: element `(ix, iy)`
/// lives at `iy * x_axis.len() + ix`. Columns whose computation failed are
/// filled with NaN and listed in `missing`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectroscopyMap {
    /// Flux, `Φ/Φ0`.
    pub x_axis: Vec<f64>,
    /// Probe frequency, Hz.
    pub y_axis: Vec<f64>,
    pub amplitude: Vec<f64>,
    pub phase: Option<Vec<f64>>,
    pub missing: Vec<(usize, Error)>,
    pub metadata: MapMetadata,
}

impl SpectroscopyMap {
    /// Assembles a map from per-flux columns, in `x_axis` order.
    pub fn from_columns(
        x_axis: Vec<f64>,
        y_axis: Vec<f64>,
        columns: Vec<Result<ResponseTrace>>,
        metadata: MapMetadata,
    ) -> Self {
        let (nx, ny) = (x_axis.len(), y_axis.len());
        debug_assert_eq!(columns.len(), nx);
        let mut amplitude = vec![0.0; nx * ny];
        let mut phase = vec![0.0; nx * ny];
        let mut missing = Vec::new();
        for (ix, col) in columns.into_iter().enumerate() {
            let col = col.unwrap_or_else(|e| {
                missing.push((ix, e));
                ResponseTrace::missing(ny)
            });
            for iy in 0..ny {
                amplitude[iy * nx + ix] = col.amplitude[iy];
                phase[iy * nx + ix] = col.phase[iy];
            }
        }
        Self { x_axis, y_axis, amplitude, phase: Some(phase), missing, metadata }
    }

    pub fn amplitude_at(&self, ix: usize, iy: usize) -> f64 {
        self.amplitude[iy * self.x_axis.len() + ix]
    }

    /// Amplitude along the frequency axis at flux index `ix`.
    pub fn column(&self, ix: usize) -> Vec<f64> {
        (0..self.y_axis.len()).map(|iy| self.amplitude_at(ix, iy)).collect()
    }
}

/// Everything needed to compute single-tone columns independently, so
/// callers can distribute them across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleTonePlan {
    pub cpb: CpbParams,
    pub oscillator: OscillatorParams,
    pub coupling: CouplingParams,
    pub basis: ChargeBasis,
    pub probe: ProbeConfig,
    reference: f64,
}

impl SingleTonePlan {
    pub fn new(
        cpb: &CpbParams,
        osc: &OscillatorParams,
        g: &CouplingParams,
        basis: &ChargeBasis,
        probe: &ProbeConfig,
    ) -> Result<Self> {
        cpb.validate()?;
        finite("lambda", g.lambda)?;
        let reference = reference_peak(osc, probe)?;
        Ok(Self { cpb: *cpb, oscillator: *osc, coupling: *g, basis: *basis, probe: probe.clone(), reference })
    }

    /// Column at one flux value.
    pub fn column(&self, flux: f64) -> Result<ResponseTrace> {
        finite("flux", flux)?;
        single_tone_column_with_reference(
            &self.cpb.with_flux(flux),
            &self.oscillator,
            &self.coupling,
            &self.basis,
            &self.probe,
            self.reference,
        )
    }

    pub fn metadata(&self) -> MapMetadata {
        MapMetadata {
            cpb: self.cpb,
            oscillator: self.oscillator,
            coupling: self.coupling,
            basis: self.basis,
            eta: self.probe.eta,
            n_bar: self.probe.n_bar,
            qp_average: self.probe.qp_average,
        }
    }
}

/// Single-tone map over `flux_grid`, one column per flux point, computed in
/// order. A failing column is recorded in [`SpectroscopyMap::missing`].
pub fn single_tone_map(
    cpb: &CpbParams,
    osc: &OscillatorParams,
    g: &CouplingParams,
    basis: &ChargeBasis,
    flux_grid: &[f64],
    probe: &ProbeConfig,
) -> Result<SpectroscopyMap> {
    if flux_grid.is_empty() {
        return Err(Error::OutOfRange { name: "flux_grid", reason: "must not be empty" });
    }
    let plan = SingleTonePlan::new(cpb, osc, g, basis, probe)?;
    let columns = flux_grid.iter().map(|&f| plan.column(f)).collect();
    Ok(SpectroscopyMap::from_columns(flux_grid.to_vec(), probe.omega_grid.clone(), columns, plan.metadata()))
}

/// Fluxes where `ΔE_CPB(Φ) = ω` at the polarization charge in `cpb`, found
/// by bisecting every sign change along `flux_grid`.
pub fn bare_resonance_fluxes(cpb: &CpbParams, basis: &ChargeBasis, omega: f64, flux_grid: &[f64]) -> Result<Vec<f64>> {
    finite("omega", omega)?;
    let detuning = |flux: f64| qubit_spectrum(&cpb.with_flux(flux), basis, 2).map(|s| s.lowest_transition() - omega);
    let values: Vec<f64> = flux_grid.iter().map(|&f| detuning(f)).collect::<Result<_>>()?;
    let mut roots = Vec::new();
    for i in 1..flux_grid.len() {
        if values[i - 1] == 0.0 {
            roots.push(flux_grid[i - 1]);
        } else if values[i - 1].signum() != values[i].signum() && values[i] != 0.0 {
            if let Some(r) = bisect(&detuning, flux_grid[i - 1], flux_grid[i], 1e-13)? {
                roots.push(r);
            }
        }
    }
    if values.last() == Some(&0.0) {
        roots.push(flux_grid[flux_grid.len() - 1]);
    }
    Ok(roots)
}

/// Bare-qubit transition curves for co-plotting with a [`SpectroscopyMap`].
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionOverlay {
    /// Flux, `Φ/Φ0`; the same axis as the map.
    pub x_axis: Vec<f64>,
    pub n_g: Vec<f64>,
    /// `curves[k][ix]` is `ΔE_CPB` in Hz at `n_g[k]` and `x_axis[ix]`.
    pub curves: Vec<Vec<f64>>,
}

pub fn two_tone_overlay(
    cpb: &CpbParams,
    basis: &ChargeBasis,
    flux_grid: &[f64],
    n_g_list: &[f64],
) -> Result<TransitionOverlay> {
    if n_g_list.is_empty() {
        return Err(Error::OutOfRange { name: "n_g_list", reason: "must not be empty" });
    }
    let curves = n_g_list
        .iter()
        .map(|&n_g| transition_energy_curve(cpb, basis, flux_grid, n_g))
        .collect::<Result<_>>()?;
    Ok(TransitionOverlay { x_axis: flux_grid.to_vec(), n_g: n_g_list.to_vec(), curves })
}
