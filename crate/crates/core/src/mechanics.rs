//! Closed-form design formulas for doubly clamped beams, electrostatic
//! coupling, pull-in, radiative damping and thermal occupation.
//!
//! Inputs and outputs use SI units except frequencies and energies, which
//! are in Hz (`ω/2π`, `E/h`).

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // supplies libm-backed float methods when std is absent
use num_traits::Float;

use crate::constants::{BOLTZMANN, ELEMENTARY_CHARGE, HBAR, PLANCK, VACUUM_PERMITTIVITY};
use crate::error::{finite, Error, Result};

/// Clamped-clamped eigenvalues `a_i` used in the flexural frequency formula.
pub const FREQUENCY_COEFFICIENTS: [f64; 3] = [4.73, 7.89, 10.99];

/// Roots of `cos a · cosh a = 1`, used for the mode shapes.
const CLAMPED_ROOTS: [f64; 3] = [4.730_040_744_862_704, 7.853_204_624_095_838, 10.995_607_838_001_671];

/// Tabulated points of the mode shape; odd so Simpson's rule applies.
pub const SHAPE_SAMPLES: usize = 2001;

/// Mass density and Young's modulus of a beam material.
///
/// The presets are handbook room-temperature values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Material {
    /// kg/m³
    pub density: f64,
    /// Pa
    pub youngs_modulus: f64,
}

impl Material {
    pub const ALUMINUM: Material = Material { density: 2700.0, youngs_modulus: 70e9 };
    pub const NIOBIUM: Material = Material { density: 8570.0, youngs_modulus: 105e9 };
}

/// Geometry and material of a doubly clamped beam facing a bias electrode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSpec {
    /// In-plane width (the bending direction), m.
    pub w: f64,
    /// Out-of-plane thickness, m.
    pub t: f64,
    /// Length, m.
    pub l: f64,
    /// Electrode overlap length, centred on the beam, m.
    pub l_e: f64,
    /// Beam–electrode gap, m.
    pub d: f64,
    /// kg/m³
    pub rho: f64,
    /// Pa
    pub youngs_e: f64,
    /// Multiplicative correction to the parallel-plate `dC/dx`, in (0, 1].
    pub beta: f64,
}

impl BeamSpec {
    /// Beam with the electrode spanning its full length and `beta = 1`.
    pub fn new(w: f64, t: f64, l: f64, d: f64, material: Material) -> Self {
        Self { w, t, l, l_e: l, d, rho: material.density, youngs_e: material.youngs_modulus, beta: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("w", self.w),
            ("t", self.t),
            ("l", self.l),
            ("l_e", self.l_e),
            ("d", self.d),
            ("rho", self.rho),
            ("youngs_e", self.youngs_e),
            ("beta", self.beta),
        ] {
            finite(name, v)?;
            if v <= 0.0 {
                return Err(Error::OutOfRange { name, reason: "must be > 0" });
            }
        }
        if self.l_e > self.l {
            return Err(Error::OutOfRange { name: "l_e", reason: "must not exceed l" });
        }
        if self.beta > 1.0 {
            return Err(Error::OutOfRange { name: "beta", reason: "must be <= 1" });
        }
        Ok(())
    }
}

/// What a unit modal coordinate `x` means physically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ShapeNormalization {
    /// `max |U| = 1`: `x` is the peak deflection.
    #[default]
    MaxDeflection,
    /// `(1/L) ∫ U dz = 1`: `x` is the centre-of-mass displacement.
    CenterOfMass,
    /// `(1/L_e) ∫_{L_e} U dz = 1`: `x` is the mean displacement under the electrode.
    ElectrodeAverage,
}

/// One flexural mode of a clamped-clamped beam.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeResult {
    pub mode_index: usize,
    /// `ω/2π`, Hz.
    pub omega: f64,
    /// `(1/L) ∫ U² dz`.
    pub alpha: f64,
    /// `α ρ w L t`, kg.
    pub m_eff: f64,
    /// `sqrt(ħ / 2 m_eff ω)`, m.
    pub x_zp: f64,
    /// `(z, U(z))` on `z ∈ [−L/2, L/2]`.
    pub shape: Vec<(f64, f64)>,
    length: f64,
    root: f64,
    scale: f64,
}

impl ModeResult {
    /// Normalized mode shape at `z ∈ [−L/2, L/2]`.
    pub fn displacement(&self, z: f64) -> f64 {
        self.scale * raw_shape(self.root, z / self.length + 0.5)
    }

    /// `∫_{−a/2}^{a/2} U dz` by composite Simpson.
    pub fn integral_over(&self, a: f64) -> f64 {
        simpson(|z| self.displacement(z), -0.5 * a, 0.5 * a, SHAPE_SAMPLES)
    }

    /// Effective spring constant `m_eff (2π f)²`, N/m.
    pub fn spring_constant(&self) -> f64 {
        let w = 2.0 * PI * self.omega;
        self.m_eff * w * w
    }
}

/// Clamped-clamped Euler–Bernoulli shape on the unit interval `s ∈ [0, 1]`.
fn raw_shape(a: f64, s: f64) -> f64 {
    let sigma = (a.cosh() - a.cos()) / (a.sinh() - a.sin());
    let x = a * s;
    x.cosh() - x.cos() - sigma * (x.sinh() - x.sin())
}

fn simpson<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, samples: usize) -> f64 {
    debug_assert!(samples >= 3 && samples % 2 == 1);
    let n = samples - 1;
    let h = (hi - lo) / n as f64;
    let mut acc = f(lo) + f(hi);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(lo + i as f64 * h);
    }
    acc * h / 3.0
}

fn peak_magnitude(a: f64) -> f64 {
    let n = SHAPE_SAMPLES - 1;
    let (mut best_i, mut best) = (0, 0.0);
    for i in 0..=n {
        let v = raw_shape(a, i as f64 / n as f64).abs();
        if v > best {
            best = v;
            best_i = i;
        }
    }
    // refine inside the neighbouring grid cells
    let h = 1.0 / n as f64;
    let (mut lo, mut hi) = ((best_i as f64 - 1.0) * h, (best_i as f64 + 1.0) * h);
    for _ in 0..80 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if raw_shape(a, m1).abs() < raw_shape(a, m2).abs() {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    best.max(raw_shape(a, 0.5 * (lo + hi)).abs())
}

/// Flexural mode `mode ∈ {1, 2, 3}` with max-deflection normalization.
pub fn beam_mode(spec: &BeamSpec, mode: usize) -> Result<ModeResult> {
    beam_mode_normalized(spec, mode, ShapeNormalization::MaxDeflection)
}

/// Flexural mode with an explicit shape normalization.
///
/// The frequency is `f = a_i² (w / L²) sqrt(E / 12ρ) / 2π`.
pub fn beam_mode_normalized(spec: &BeamSpec, mode: usize, norm: ShapeNormalization) -> Result<ModeResult> {
    spec.validate()?;
    if !(1..=3).contains(&mode) {
        return Err(Error::UnsupportedMode(mode));
    }
    let a_freq = FREQUENCY_COEFFICIENTS[mode - 1];
    let root = CLAMPED_ROOTS[mode - 1];
    let angular = a_freq * a_freq * spec.w / (spec.l * spec.l) * (spec.youngs_e / (12.0 * spec.rho)).sqrt();
    let omega = angular / (2.0 * PI);

    let unit_integral = |a: f64| simpson(|s| raw_shape(root, s + 0.5 - 0.5 * a), 0.0, a, SHAPE_SAMPLES);
    let scale = match norm {
        ShapeNormalization::MaxDeflection => 1.0 / peak_magnitude(root),
        ShapeNormalization::CenterOfMass => 1.0 / unit_integral(1.0),
        ShapeNormalization::ElectrodeAverage => {
            let frac = spec.l_e / spec.l;
            frac / unit_integral(frac)
        }
    };
    if !scale.is_finite() {
        return Err(Error::OutOfRange { name: "mode", reason: "shape normalization is singular for this mode" });
    }

    let alpha = scale * scale * simpson(|s| raw_shape(root, s).powi(2), 0.0, 1.0, SHAPE_SAMPLES);
    let m_eff = alpha * spec.rho * spec.w * spec.l * spec.t;
    let x_zp = (HBAR / (2.0 * m_eff * angular)).sqrt();
    let n = SHAPE_SAMPLES - 1;
    let shape = (0..=n)
        .map(|i| {
            let s = i as f64 / n as f64;
            ((s - 0.5) * spec.l, scale * raw_shape(root, s))
        })
        .collect();
    Ok(ModeResult { mode_index: mode, omega, alpha, m_eff, x_zp, shape, length: spec.l, root, scale })
}

/// Parallel-plate capacitance and its gradient with respect to the modal
/// coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacitanceGradient {
    /// `β (ε0 t / d²) ∫_{L_e} U dz`, F/m.
    pub dc_dx: f64,
    /// `ε0 t L_e / d`, F.
    pub c_nr_pp: f64,
}

pub fn capacitance_gradient(spec: &BeamSpec, mode: &ModeResult) -> Result<CapacitanceGradient> {
    spec.validate()?;
    let overlap = mode.integral_over(spec.l_e);
    let dc_dx = spec.beta * VACUUM_PERMITTIVITY * spec.t / (spec.d * spec.d) * overlap;
    let c_nr_pp = VACUUM_PERMITTIVITY * spec.t * spec.l_e / spec.d;
    Ok(CapacitanceGradient { dc_dx, c_nr_pp })
}

/// The `β` to pass to [`lambda_max`] so that it equals [`coupling_lambda`]
/// evaluated at the pull-in voltage with `C_NR = C_NR_pp`.
///
/// With this crate's gradient convention the two differ by the mean mode
/// displacement under the electrode `ū_e`, giving `(β ū_e)²`.
pub fn effective_beta(spec: &BeamSpec, mode: &ModeResult) -> f64 {
    let mean = mode.integral_over(spec.l_e) / spec.l_e;
    (spec.beta * mean).powi(2)
}

/// `λ/2π = −4 E_C (dC/dx) V_NR x_zp / e`, with `E_C` in Hz. Returns Hz.
pub fn coupling_lambda(e_c: f64, dc_dx: f64, v_nr: f64, x_zp: f64) -> f64 {
    -4.0 * e_c * dc_dx * v_nr * x_zp / ELEMENTARY_CHARGE
}

/// Magnitude of `λ_max/2π = (8 E_C/h) sqrt(β h f_NR C_NR / 27 e²)`; the
/// coupling itself carries a negative sign. `e_c` and `omega_nr` in Hz.
pub fn lambda_max(e_c: f64, omega_nr: f64, c_nr: f64, beta: f64) -> f64 {
    8.0 * e_c * (beta * PLANCK * omega_nr * c_nr / (27.0 * ELEMENTARY_CHARGE * ELEMENTARY_CHARGE)).sqrt()
}

/// `λ_LC/2π = 4 E_C C_Q V_zp / e` with `V_zp = sqrt(h f_LC / 2 C_T)`.
pub fn lambda_lc(e_c: f64, c_q: f64, omega_lc: f64, c_t: f64) -> f64 {
    let v_zp = (PLANCK * omega_lc / (2.0 * c_t)).sqrt();
    4.0 * e_c * c_q * v_zp / ELEMENTARY_CHARGE
}

/// Pull-in voltage `sqrt(8 k d² / 27 C_NR)`, V.
pub fn pullin_voltage(k_eff: f64, d: f64, c_nr: f64) -> f64 {
    (8.0 * k_eff * d * d / (27.0 * c_nr)).sqrt()
}

/// Capacitances and impedance of the qubit's bias network.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiasCircuit {
    /// Beam–island capacitance, F.
    pub c_nr: f64,
    /// Total island capacitance, F.
    pub c_cpb: f64,
    /// Island–resonator coupling capacitance, F.
    pub c_q: f64,
    /// Total resonator capacitance, F.
    pub c_t: f64,
    /// Bias-line impedance, Ω.
    pub z0: f64,
    /// Beam bias voltage, V.
    pub v_nr: f64,
}

impl BiasCircuit {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("c_nr", self.c_nr), ("c_cpb", self.c_cpb), ("c_q", self.c_q), ("c_t", self.c_t)] {
            finite(name, v)?;
            if v <= 0.0 {
                return Err(Error::OutOfRange { name, reason: "must be > 0" });
            }
        }
        finite("z0", self.z0)?;
        finite("v_nr", self.v_nr)?;
        if self.z0 < 0.0 {
            return Err(Error::OutOfRange { name: "z0", reason: "must be >= 0" });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiativeDamping {
    /// 1/s
    pub gamma: f64,
    /// `1/Γ`, s; infinite for a lossless line.
    pub t1: f64,
    /// `2 T1`, s.
    pub t2_max: f64,
}

/// Radiative decay through the bias line, `Γ = ΔE² C_NR² Z0 / ħ² C_CPB`,
/// with `delta_e` in Hz.
pub fn radiative_damping(delta_e: f64, circuit: &BiasCircuit) -> RadiativeDamping {
    let de = PLANCK * delta_e;
    let gamma = de * de * circuit.c_nr * circuit.c_nr * circuit.z0 / (HBAR * HBAR * circuit.c_cpb);
    let t1 = if gamma > 0.0 { 1.0 / gamma } else { f64::INFINITY };
    RadiativeDamping { gamma, t1, t2_max: 2.0 * t1 }
}

/// Bose–Einstein occupation of a mode at `omega` Hz and temperature `t` K.
pub fn thermal_occupation(omega: f64, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    1.0 / (PLANCK * omega / (BOLTZMANN * t)).exp_m1()
}
