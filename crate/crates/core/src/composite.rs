//! Cooper-pair box ⊗ harmonic mode.
//!
//! `H/h = H_CPB ⊗ 1 + 1 ⊗ ω (a†a + 1/2) + λ (n̂ − n_Σ) ⊗ (a† + a)`
//!
//! Product states are indexed `charge · (n_fock + 1) + photons`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // supplies libm-backed float methods when std is absent
use num_traits::Float;

use crate::error::{finite, Error, Result};
use crate::linalg::{eigh, Eigensystem, HermitianMatrix};
use crate::optimize::golden_section;
use crate::qubit::{build_cpb_hamiltonian, qubit_spectrum, ChargeBasis, CpbParams, QubitSpectrum};

/// Largest product-space dimension accepted by default.
pub const DEFAULT_DIMENSION_CAP: usize = 4096;

/// Guaranteed flux resolution of the avoided-crossing search; a minimum
/// closer than twice this to the window edge counts as no crossing.
pub const CROSSING_FLUX_TOLERANCE: f64 = 1e-5;

/// Bracket width at which the golden-section refinement stops. Finer than
/// the guaranteed resolution so that the cusp-shaped minimum of an uncoupled
/// system is located to well below a kHz in `E_2 − E_1`.
const REFINE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeKind {
    Nanoresonator,
    LcCavity,
    CpwCavity,
}

/// A single harmonic mode with its Fock-space truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    /// Mode frequency `ω/2π`, Hz.
    pub omega: f64,
    /// Highest photon (phonon) number kept.
    pub n_fock: usize,
    /// Energy decay rate `κ/2π`, Hz.
    pub linewidth_kappa: f64,
    pub label: ModeKind,
}

impl OscillatorParams {
    pub const DEFAULT_N_FOCK: usize = 10;

    pub fn new(omega: f64, label: ModeKind) -> Self {
        Self { omega, n_fock: Self::DEFAULT_N_FOCK, linewidth_kappa: 0.0, label }
    }

    pub fn with_n_fock(self, n_fock: usize) -> Self {
        Self { n_fock, ..self }
    }

    pub fn fock_dimension(&self) -> usize {
        self.n_fock + 1
    }

    pub fn validate(&self) -> Result<()> {
        finite("omega", self.omega)?;
        finite("linewidth_kappa", self.linewidth_kappa)?;
        if self.omega <= 0.0 {
            return Err(Error::OutOfRange { name: "omega", reason: "must be > 0" });
        }
        if self.n_fock < 1 {
            return Err(Error::OutOfRange { name: "n_fock", reason: "must be >= 1" });
        }
        if self.linewidth_kappa < 0.0 {
            return Err(Error::OutOfRange { name: "linewidth_kappa", reason: "must be >= 0" });
        }
        Ok(())
    }
}

/// Charge–mode coupling `λ/2π` in Hz; the sign is physical.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingParams {
    pub lambda: f64,
}

impl CouplingParams {
    pub fn new(lambda: f64) -> Self {
        Self { lambda }
    }
}

/// Assignment of a dressed state to a product state `|qubit⟩ ⊗ |photons⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BareLabel {
    pub qubit: usize,
    pub photons: usize,
    /// `|⟨bare|dressed⟩|²`.
    pub overlap: f64,
}

/// Full eigendecomposition of the composite Hamiltonian.
#[derive(Debug, Clone)]
pub struct CompositeSpectrum {
    pub cpb: CpbParams,
    pub oscillator: OscillatorParams,
    pub coupling: CouplingParams,
    pub basis: ChargeBasis,
    eigen: Eigensystem,
    qubit: QubitSpectrum,
}

impl CompositeSpectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        self.eigen.values()
    }

    pub fn eigenvector(&self, i: usize) -> &[Complex64] {
        self.eigen.vector(i)
    }

    pub fn dim(&self) -> usize {
        self.eigen.dim()
    }

    /// Bare qubit eigenstates used for labeling.
    pub fn qubit(&self) -> &QubitSpectrum {
        &self.qubit
    }

    fn fock_dim(&self) -> usize {
        self.oscillator.fock_dimension()
    }

    /// `(a + a†)|v⟩` on the product space.
    pub fn apply_quadrature(&self, v: &[Complex64]) -> Vec<Complex64> {
        let nf = self.fock_dim();
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        for (block_in, block_out) in v.chunks_exact(nf).zip(out.chunks_exact_mut(nf)) {
            for k in 0..nf - 1 {
                let s = ((k + 1) as f64).sqrt();
                block_out[k] += block_in[k + 1] * s;
                block_out[k + 1] += block_in[k] * s;
            }
        }
        out
    }

    /// `⟨i|a†a|i⟩`.
    pub fn photon_number(&self, i: usize) -> f64 {
        let nf = self.fock_dim();
        self.eigenvector(i)
            .iter()
            .enumerate()
            .map(|(idx, z)| (idx % nf) as f64 * z.norm_sqr())
            .sum()
    }

    /// `|⟨q_j ⊗ k | ψ_i⟩|²`.
    pub fn bare_overlap(&self, i: usize, qubit: usize, photons: usize) -> f64 {
        let nf = self.fock_dim();
        let psi = self.eigenvector(i);
        let q = self.qubit.eigenvector(qubit);
        let amp: Complex64 = q.iter().enumerate().map(|(c, qc)| qc.conj() * psi[c * nf + photons]).sum();
        amp.norm_sqr()
    }

    /// Nearest product state of dressed state `i`, if its overlap exceeds 1/2.
    pub fn label(&self, i: usize) -> Option<BareLabel> {
        let mut best = BareLabel { qubit: 0, photons: 0, overlap: -1.0 };
        for j in 0..self.qubit.len() {
            for k in 0..self.fock_dim() {
                let ov = self.bare_overlap(i, j, k);
                if ov > best.overlap {
                    best = BareLabel { qubit: j, photons: k, overlap: ov };
                }
            }
        }
        (best.overlap > 0.5).then_some(best)
    }

    /// Index of the dressed state that best represents `|q_j⟩ ⊗ |k⟩`.
    pub fn find_dressed(&self, qubit: usize, photons: usize) -> Result<usize> {
        let (mut best, mut best_ov) = (0, -1.0);
        for i in 0..self.dim() {
            let ov = self.bare_overlap(i, qubit, photons);
            if ov > best_ov {
                best = i;
                best_ov = ov;
            }
        }
        if best_ov > 0.5 {
            Ok(best)
        } else {
            Err(Error::Labeling { qubit, photons, overlap: best_ov })
        }
    }

    /// Dressed energy of the state adiabatically connected to `|q_j⟩ ⊗ |k⟩`.
    pub fn dressed_energy(&self, qubit: usize, photons: usize) -> Result<f64> {
        self.find_dressed(qubit, photons).map(|i| self.eigenvalues()[i])
    }
}

fn check_dimension(basis: &ChargeBasis, osc: &OscillatorParams, cap: usize) -> Result<usize> {
    let dim = basis.dimension() * osc.fock_dimension();
    if dim > cap {
        Err(Error::DimensionCap { dim, cap })
    } else {
        Ok(dim)
    }
}

/// Composite Hamiltonian with the default dimension cap.
pub fn build_composite_hamiltonian(
    cpb: &CpbParams,
    osc: &OscillatorParams,
    g: &CouplingParams,
    basis: &ChargeBasis,
) -> Result<HermitianMatrix> {
    build_composite_hamiltonian_capped(cpb, osc, g, basis, DEFAULT_DIMENSION_CAP)
}

pub fn build_composite_hamiltonian_capped(
    cpb: &CpbParams,
    osc: &OscillatorParams,
    g: &CouplingParams,
    basis: &ChargeBasis,
    cap: usize,
) -> Result<HermitianMatrix> {
    osc.validate()?;
    finite("lambda", g.lambda)?;
    let hq = build_cpb_hamiltonian(cpb, basis)?;
    let dim = check_dimension(basis, osc, cap)?;
    let nq = basis.dimension();
    let nf = osc.fock_dimension();
    let offsets = basis.charge_offsets(cpb.n_sigma);

    let mut h = HermitianMatrix::zeros(dim);
    for (c, &offset) in offsets.iter().enumerate() {
        for c2 in c..nq {
            let v = hq.get(c, c2);
            if v.re == 0.0 && v.im == 0.0 {
                continue;
            }
            for k in 0..nf {
                h.set(c * nf + k, c2 * nf + k, v);
            }
        }
        for k in 0..nf {
            let i = c * nf + k;
            h.add(i, i, Complex64::new(osc.omega * (k as f64 + 0.5), 0.0));
            if k + 1 < nf {
                let amp = g.lambda * offset * ((k + 1) as f64).sqrt();
                h.set(i, i + 1, Complex64::new(amp, 0.0));
            }
        }
    }
    Ok(h)
}

/// Diagonalizes the composite Hamiltonian and the bare qubit alongside it.
pub fn composite_spectrum(
    cpb: &CpbParams,
    osc: &OscillatorParams,
    g: &CouplingParams,
    basis: &ChargeBasis,
) -> Result<CompositeSpectrum> {
    let h = build_composite_hamiltonian(cpb, osc, g, basis)?;
    let eigen = eigh(&h)?;
    let qubit = qubit_spectrum(cpb, basis, basis.dimension())?;
    Ok(CompositeSpectrum { cpb: *cpb, oscillator: *osc, coupling: *g, basis: *basis, eigen, qubit })
}

fn lowest_levels(
    cpb: &CpbParams,
    osc: &OscillatorParams,
    g: &CouplingParams,
    basis: &ChargeBasis,
    count: usize,
    cap: usize,
) -> Result<Vec<f64>> {
    let h = build_composite_hamiltonian_capped(cpb, osc, g, basis, cap)?;
    let mut es = eigh(&h)?;
    es.truncate(count);
    Ok(es.values().to_vec())
}

/// Minimum splitting between the first and second excited composite levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingGap {
    /// `min (E_2 − E_1)`, Hz.
    pub gap: f64,
    /// Flux at the minimum, in units of `Φ0`.
    pub flux_at_min: f64,
}

/// Locates the avoided crossing inside `flux_window` by golden-section
/// refinement of `E_2 − E_1` to at least [`CROSSING_FLUX_TOLERANCE`].
pub fn avoided_crossing_gap(
    cpb: &CpbParams,
    osc: &OscillatorParams,
    g: &CouplingParams,
    basis: &ChargeBasis,
    flux_window: (f64, f64),
) -> Result<CrossingGap> {
    let (lo, hi) = flux_window;
    finite("flux_window.lo", lo)?;
    finite("flux_window.hi", hi)?;
    if hi <= lo {
        return Err(Error::OutOfRange { name: "flux_window", reason: "upper bound must exceed lower bound" });
    }
    let splitting = |flux: f64| -> Result<f64> {
        let e = lowest_levels(&cpb.with_flux(flux), osc, g, basis, 3, DEFAULT_DIMENSION_CAP)?;
        Ok(e[2] - e[1])
    };
    let (flux, gap) = golden_section(splitting, lo, hi, REFINE_TOLERANCE)?;
    if flux - lo < 2.0 * CROSSING_FLUX_TOLERANCE || hi - flux < 2.0 * CROSSING_FLUX_TOLERANCE {
        return Err(Error::NoCrossing { lo, hi });
    }
    Ok(CrossingGap { gap, flux_at_min: flux })
}

/// Dispersive shift from its closed form, all inputs in Hz:
///
/// `χ/2π = λ² E_J² / (ΔE (ΔE² − ω²))`
///
/// `χ` is the change of the qubit transition frequency per added quantum in
/// the mode. Positive below the qubit, negative above it.
pub fn dispersive_chi_closed_form(lambda: f64, e_j: f64, delta_e: f64, omega: f64) -> Result<f64> {
    if (delta_e - omega).abs() < 1e-3 * omega.abs() {
        return Err(Error::Resonance { delta_e, omega });
    }
    Ok(lambda * lambda * e_j * e_j / (delta_e * (delta_e * delta_e - omega * omega)))
}

/// Closed-form dispersive shift with `ΔE_CPB` taken from the numerical
/// qubit spectrum and `E_J` at the supplied flux.
pub fn dispersive_chi_formula(
    cpb: &CpbParams,
    osc: &OscillatorParams,
    g: &CouplingParams,
    basis: &ChargeBasis,
) -> Result<f64> {
    osc.validate()?;
    finite("lambda", g.lambda)?;
    let delta_e = qubit_spectrum(cpb, basis, 2)?.lowest_transition();
    dispersive_chi_closed_form(g.lambda, cpb.josephson_energy(), delta_e, osc.omega)
}

/// Dispersive shift from labeled composite eigenvalues:
/// `[E(e,1) − E(e,0)] − [E(g,1) − E(g,0)]`.
///
/// Meaningful in the dispersive regime, where every dressed state keeps more
/// than half of its weight on one product state.
pub fn dispersive_chi_numeric(
    cpb: &CpbParams,
    osc: &OscillatorParams,
    g: &CouplingParams,
    basis: &ChargeBasis,
) -> Result<f64> {
    if g.lambda == 0.0 {
        // uncoupled: every dressed level is a bare sum
        osc.validate()?;
        cpb.validate()?;
        return Ok(0.0);
    }
    let spec = composite_spectrum(cpb, osc, g, basis)?;
    let e = |q, k| spec.dressed_energy(q, k);
    Ok((e(1, 1)? - e(1, 0)?) - (e(0, 1)? - e(0, 0)?))
}

/// Truncations at which the tracked composite levels are converged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationReport {
    pub n_max: usize,
    pub n_fock: usize,
}

/// Number of composite levels tracked by [`convergence_report`].
pub const TRACKED_LEVELS: usize = 6;

/// Smallest truncations for which the lowest [`TRACKED_LEVELS`] composite
/// eigenvalues move by less than `1e-6 · E_C` when either `n_max` or
/// `n_fock` is increased by 2.
///
/// Both truncations start at 1 and are raised independently while their own
/// increment still moves the tracked levels.
pub fn convergence_report(
    cpb: &CpbParams,
    osc: &OscillatorParams,
    g: &CouplingParams,
    cap: usize,
) -> Result<TruncationReport> {
    cpb.validate()?;
    osc.validate()?;
    let tol = 1e-6 * cpb.e_c;
    let (mut n_max, mut n_fock) = (1_usize, 1_usize);
    loop {
        let probe_dim = ChargeBasis::new(n_max + 2).dimension() * (n_fock + 3);
        if probe_dim > cap {
            return Err(Error::TruncationCap { cap });
        }
        let levels = |nm: usize, nf: usize| {
            lowest_levels(cpb, &osc.with_n_fock(nf), g, &ChargeBasis::new(nm), TRACKED_LEVELS, cap)
        };
        let base = levels(n_max, n_fock)?;
        let moved = |other: Vec<f64>| base.iter().zip(&other).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let charge_move = moved(levels(n_max + 2, n_fock)?);
        let fock_move = moved(levels(n_max, n_fock + 2)?);
        if charge_move < tol && fock_move < tol {
            return Ok(TruncationReport { n_max, n_fock });
        }
        if charge_move >= tol {
            n_max += 1;
        }
        if fock_move >= tol {
            n_fock += 1;
        }
    }
}
