//! Cooper-pair box in the truncated charge basis.
//!
//! `H/h = 4 E_C Σ (n − n_Σ)² |n⟩⟨n| − (E_J(Φ)/2) Σ (|n⟩⟨n+1| + h.c.)`
//!
//! with a real, flux-tuned SQUID Josephson energy. All energies are in Hz.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // supplies libm-backed float methods when std is absent
use num_traits::Float;

use crate::constants::ELEMENTARY_CHARGE;
use crate::error::{finite, Error, Result};
use crate::linalg::{eigh, Eigensystem, HermitianMatrix};

/// Charging and Josephson energies, flux bias and polarization charge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpbParams {
    /// Charging energy `E_C/h`, Hz.
    pub e_c: f64,
    /// Maximum SQUID Josephson energy `E_J0/h`, Hz.
    pub e_j0: f64,
    /// Applied flux in units of the flux quantum.
    pub flux: f64,
    /// Polarization charge `n_Σ` in Cooper pairs.
    pub n_sigma: f64,
    /// SQUID junction asymmetry `d ∈ [0, 1)`.
    pub junction_asymmetry: f64,
}

impl CpbParams {
    pub fn new(e_c: f64, e_j0: f64) -> Self {
        Self { e_c, e_j0, flux: 0.0, n_sigma: 0.0, junction_asymmetry: 0.0 }
    }

    pub fn with_flux(self, flux: f64) -> Self {
        Self { flux, ..self }
    }

    pub fn with_n_sigma(self, n_sigma: f64) -> Self {
        Self { n_sigma, ..self }
    }

    pub fn with_asymmetry(self, junction_asymmetry: f64) -> Self {
        Self { junction_asymmetry, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        finite("e_c", self.e_c)?;
        finite("e_j0", self.e_j0)?;
        finite("flux", self.flux)?;
        finite("n_sigma", self.n_sigma)?;
        finite("junction_asymmetry", self.junction_asymmetry)?;
        if self.e_c <= 0.0 {
            return Err(Error::OutOfRange { name: "e_c", reason: "must be > 0" });
        }
        if self.e_j0 < 0.0 {
            return Err(Error::OutOfRange { name: "e_j0", reason: "must be >= 0" });
        }
        if !(0.0..1.0).contains(&self.junction_asymmetry) {
            return Err(Error::OutOfRange { name: "junction_asymmetry", reason: "must lie in [0, 1)" });
        }
        Ok(())
    }

    /// Flux-tuned Josephson energy at the current bias.
    pub fn josephson_energy(&self) -> f64 {
        josephson_energy(self.e_j0, self.flux, self.junction_asymmetry)
    }
}

/// `E_J(Φ) = E_J0 · sqrt(cos²(πΦ) + d² sin²(πΦ))`, flux in units of `Φ0`.
pub fn josephson_energy(e_j0: f64, flux: f64, asymmetry: f64) -> f64 {
    let (s, c) = (PI * flux).sin_cos();
    e_j0 * (c * c + asymmetry * asymmetry * s * s).sqrt()
}

/// Polarization charge `Σ C_k V_k / 2e` from `(capacitance [F], voltage [V])` pairs.
pub fn polarization_charge(terms: &[(f64, f64)]) -> f64 {
    terms.iter().map(|&(c, v)| c * v).sum::<f64>() / (2.0 * ELEMENTARY_CHARGE)
}

/// Truncation of the charge basis to `2·n_max + 1` consecutive charge states.
///
/// The window is centred on the integer nearest to `n_Σ`, so shifting `n_Σ`
/// by a whole Cooper pair shifts the window with it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChargeBasis {
    pub n_max: usize,
}

impl Default for ChargeBasis {
    fn default() -> Self {
        Self { n_max: Self::DEFAULT_N_MAX }
    }
}

impl ChargeBasis {
    pub const DEFAULT_N_MAX: usize = 7;

    pub fn new(n_max: usize) -> Self {
        Self { n_max }
    }

    pub fn dimension(&self) -> usize {
        2 * self.n_max + 1
    }

    /// Integer charge state at the centre of the window for `n_sigma`.
    pub fn center(n_sigma: f64) -> i64 {
        n_sigma.round() as i64
    }

    /// Charge numbers `n` of the basis states, ascending.
    pub fn charge_states(&self, n_sigma: f64) -> impl Iterator<Item = i64> {
        let lo = Self::center(n_sigma) - self.n_max as i64;
        (0..self.dimension() as i64).map(move |i| lo + i)
    }

    /// Diagonal of the operator `n̂ − n_Σ`.
    pub fn charge_offsets(&self, n_sigma: f64) -> Vec<f64> {
        self.charge_states(n_sigma).map(|n| n as f64 - n_sigma).collect()
    }
}

/// Lowest eigenpairs of the Cooper-pair-box Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitSpectrum {
    pub params: CpbParams,
    pub basis: ChargeBasis,
    eigen: Eigensystem,
}

impl QubitSpectrum {
    /// Ascending eigenvalues, Hz.
    pub fn eigenvalues(&self) -> &[f64] {
        self.eigen.values()
    }

    /// Eigenvector `k` in the charge basis (ascending `n`).
    pub fn eigenvector(&self, k: usize) -> &[Complex64] {
        self.eigen.vector(k)
    }

    pub fn len(&self) -> usize {
        self.eigen.values().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `E_k − E_j`, Hz.
    pub fn transition(&self, j: usize, k: usize) -> f64 {
        self.eigen.values()[k] - self.eigen.values()[j]
    }

    /// Lowest transition energy `ΔE_CPB = E_1 − E_0`.
    pub fn lowest_transition(&self) -> f64 {
        self.transition(0, 1)
    }

    /// `⟨j| n̂ − n_Σ |k⟩`.
    pub fn charge_matrix_element(&self, j: usize, k: usize) -> Complex64 {
        let offsets = self.basis.charge_offsets(self.params.n_sigma);
        self.eigenvector(j)
            .iter()
            .zip(self.eigenvector(k))
            .zip(&offsets)
            .map(|((a, b), &q)| a.conj() * b * q)
            .sum()
    }
}

/// Charge-basis Hamiltonian `H/h` in Hz.
pub fn build_cpb_hamiltonian(params: &CpbParams, basis: &ChargeBasis) -> Result<HermitianMatrix> {
    params.validate()?;
    let dim = basis.dimension();
    if dim < 3 {
        return Err(Error::BasisTooSmall(dim));
    }
    let charging: Vec<f64> = basis
        .charge_offsets(params.n_sigma)
        .into_iter()
        .map(|q| 4.0 * params.e_c * q * q)
        .collect();
    let mut h = HermitianMatrix::from_diagonal(&charging);
    let tunnel = Complex64::new(-0.5 * params.josephson_energy(), 0.0);
    for i in 0..dim - 1 {
        h.set(i, i + 1, tunnel);
    }
    Ok(h)
}

/// Lowest `n_levels` eigenpairs of the Cooper-pair box.
pub fn qubit_spectrum(params: &CpbParams, basis: &ChargeBasis, n_levels: usize) -> Result<QubitSpectrum> {
    let h = build_cpb_hamiltonian(params, basis)?;
    if n_levels > h.dim() {
        return Err(Error::TooManyLevels { requested: n_levels, available: h.dim() });
    }
    let mut eigen = eigh(&h).map_err(|e| {
        Error::NoConvergence(format!(
            "{e} (E_C={} Hz, E_J0={} Hz, flux={}, n_sigma={}, n_max={})",
            params.e_c, params.e_j0, params.flux, params.n_sigma, basis.n_max
        ))
    })?;
    eigen.truncate(n_levels);
    Ok(QubitSpectrum { params: *params, basis: *basis, eigen })
}

/// `ΔE_CPB(Φ) = E_1 − E_0` along a flux grid at fixed polarization charge.
pub fn transition_energy_curve(
    params: &CpbParams,
    basis: &ChargeBasis,
    flux_grid: &[f64],
    n_sigma: f64,
) -> Result<Vec<f64>> {
    if flux_grid.is_empty() {
        return Err(Error::OutOfRange { name: "flux_grid", reason: "must not be empty" });
    }
    flux_grid
        .iter()
        .map(|&flux| {
            let p = params.with_flux(flux).with_n_sigma(n_sigma);
            qubit_spectrum(&p, basis, 2).map(|s| s.lowest_transition())
        })
        .collect()
}
