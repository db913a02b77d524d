//! Named operations evaluated over a one-dimensional parameter sweep.
//!
//! Points are independent and may run on any number of threads; results are
//! collected in grid order, so the output never depends on scheduling.
//! A point that fails leaves NaN values and a message in the failure column.

use qcnr_core::composite::{composite_spectrum, dispersive_chi_formula, dispersive_chi_numeric};
use qcnr_core::mechanics::{
    beam_mode_normalized, capacitance_gradient, coupling_lambda, lambda_lc, lambda_max, pullin_voltage,
    radiative_damping, thermal_occupation,
};
use qcnr_core::qubit::qubit_spectrum;
use qcnr_core::spectroscopy::{two_tone_overlay, SingleTonePlan, SpectroscopyMap};
use rayon::prelude::*;

use crate::config::{axis_points, RunConfig};
use crate::error::{CliError, ConfigError};
use crate::export::{Axis, Column, MapResult, Output, Provenance, ResultTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operation {
    /// Flux-tuned `E_J`.
    JosephsonEnergy,
    /// Lowest `sweep.levels` CPB eigenvalues.
    QubitLevels,
    /// `ΔE` and `|⟨e|n̂ − n_Σ|g⟩|`.
    QubitTransition,
    /// Lowest `sweep.levels` composite eigenvalues.
    CompositeLevels,
    /// Dispersive shift from labeled eigenvalues and from the closed form.
    DispersiveChi,
    /// Beam, coupling and coherence figures of merit.
    Design,
    /// Single-tone response map; the axis must be `cpb.flux`.
    SingleToneMap,
    /// CPB transition energy at each `sweep.n_g`.
    TwoToneOverlay,
}

const OPERATIONS: [(&str, Operation); 8] = [
    ("josephson_energy", Operation::JosephsonEnergy),
    ("qubit_levels", Operation::QubitLevels),
    ("qubit_transition", Operation::QubitTransition),
    ("composite_levels", Operation::CompositeLevels),
    ("dispersive_chi", Operation::DispersiveChi),
    ("design", Operation::Design),
    ("single_tone_map", Operation::SingleToneMap),
    ("two_tone_overlay", Operation::TwoToneOverlay),
];

impl Operation {
    pub fn parse(name: &str) -> Result<Self, ConfigError> {
        OPERATIONS
            .iter()
            .find(|(n, _)| *n == name)
            .map(|&(_, op)| op)
            .ok_or_else(|| ConfigError::UnknownOperation(name.to_owned()))
    }

    pub fn name(self) -> &'static str {
        OPERATIONS.iter().find(|(_, op)| *op == self).map(|(n, _)| *n).expect("every operation is listed")
    }

    pub fn names() -> impl Iterator<Item = &'static str> {
        OPERATIONS.iter().map(|(n, _)| *n)
    }

    /// Checks that every block the operation reads is present.
    pub fn check_requirements(self, cfg: &RunConfig) -> Result<(), ConfigError> {
        match self {
            Operation::JosephsonEnergy | Operation::QubitLevels | Operation::QubitTransition => {
                cfg.require_cpb()?;
            }
            Operation::TwoToneOverlay => {
                cfg.require_cpb()?;
                if cfg.sweep.as_ref().and_then(|s| s.n_g.as_ref()).is_some_and(Vec::is_empty) {
                    return Err(ConfigError::Invalid { key: "sweep.n_g".into(), reason: "must not be empty".into() });
                }
            }
            Operation::CompositeLevels | Operation::DispersiveChi => {
                cfg.require_cpb()?;
                cfg.require_oscillator()?;
                cfg.require_coupling()?;
            }
            Operation::Design => {
                cfg.require_cpb()?;
                cfg.require_oscillator()?;
                cfg.require_beam()?;
                cfg.require_circuit()?;
                cfg.require_environment()?;
            }
            Operation::SingleToneMap => {
                cfg.require_cpb()?;
                cfg.require_oscillator()?;
                cfg.require_coupling()?;
                cfg.require_probe()?;
                if cfg.require_sweep()?.axis != "cpb.flux" {
                    return Err(ConfigError::Invalid {
                        key: "sweep.axis".into(),
                        reason: "single_tone_map sweeps cpb.flux".into(),
                    });
                }
            }
        }
        Ok(())
    }

    fn levels(cfg: &RunConfig) -> usize {
        cfg.sweep.as_ref().map_or(4, |s| s.levels)
    }

    fn n_g_list(cfg: &RunConfig) -> Vec<f64> {
        match cfg.sweep.as_ref().and_then(|s| s.n_g.clone()) {
            Some(list) => list,
            None => vec![cfg.cpb.as_ref().map_or(0.0, |c| c.n_sigma)],
        }
    }

    /// Output columns of a tabular operation, excluding the sweep axis.
    fn columns(self, cfg: &RunConfig) -> Vec<Column> {
        let hz = |name: String| Column::new(name, "Hz");
        match self {
            Operation::JosephsonEnergy => vec![hz("E_J".into())],
            Operation::QubitLevels | Operation::CompositeLevels => {
                (0..Self::levels(cfg)).map(|k| hz(format!("E_{k}"))).collect()
            }
            Operation::QubitTransition => vec![hz("delta_E".into()), Column::new("charge_element", "1")],
            Operation::DispersiveChi => vec![hz("chi_numeric".into()), hz("chi_formula".into())],
            Operation::Design => DesignReport::columns(),
            Operation::TwoToneOverlay => Self::n_g_list(cfg).iter().map(|g| hz(format!("delta_E(n_g={g})"))).collect(),
            Operation::SingleToneMap => unreachable!("maps have no row columns"),
        }
    }

    /// One row of a tabular operation at the parameters in `cfg`.
    fn evaluate(self, cfg: &RunConfig) -> Result<Vec<f64>, qcnr_core::Error> {
        let cpb_block = cfg.cpb.as_ref().expect("checked by check_requirements");
        let (cpb, basis) = (cpb_block.params(), cpb_block.basis());
        let composite = || {
            let osc = cfg.oscillator.as_ref().expect("checked").params();
            (osc, cfg.coupling.as_ref().expect("checked").params())
        };
        Ok(match self {
            Operation::JosephsonEnergy => {
                cpb.validate()?;
                vec![cpb.josephson_energy()]
            }
            Operation::QubitLevels => qubit_spectrum(&cpb, &basis, Self::levels(cfg))?.eigenvalues().to_vec(),
            Operation::QubitTransition => {
                let q = qubit_spectrum(&cpb, &basis, 2)?;
                vec![q.lowest_transition(), q.charge_matrix_element(1, 0).norm()]
            }
            Operation::CompositeLevels => {
                let (osc, g) = composite();
                let s = composite_spectrum(&cpb, &osc, &g, &basis)?;
                let n = Self::levels(cfg);
                if s.eigenvalues().len() < n {
                    return Err(qcnr_core::Error::TooManyLevels { requested: n, available: s.eigenvalues().len() });
                }
                s.eigenvalues()[..n].to_vec()
            }
            Operation::DispersiveChi => {
                let (osc, g) = composite();
                vec![dispersive_chi_numeric(&cpb, &osc, &g, &basis)?, dispersive_chi_formula(&cpb, &osc, &g, &basis)?]
            }
            Operation::Design => DesignReport::compute(cfg)?.values().to_vec(),
            Operation::TwoToneOverlay => {
                let o = two_tone_overlay(&cpb, &basis, &[cpb.flux], &Self::n_g_list(cfg))?;
                o.curves.iter().map(|c| c[0]).collect()
            }
            Operation::SingleToneMap => unreachable!("maps are evaluated column by column"),
        })
    }
}

/// Figures of merit for a beam, its bias network and the LC mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignReport {
    /// Fundamental beam frequency, Hz.
    pub omega_nr: f64,
    /// Zero-point motion, m.
    pub x_zp: f64,
    /// Beam–qubit coupling at the configured bias, Hz.
    pub lambda: f64,
    /// Coupling at the pull-in voltage, Hz.
    pub lambda_max: f64,
    /// Qubit–LC coupling, Hz.
    pub lambda_lc: f64,
    /// V
    pub v_pullin: f64,
    /// Radiative limit through the beam bias line, s.
    pub t1: f64,
    /// Thermal phonon number of the beam.
    pub n_th: f64,
}

impl DesignReport {
    const FIELDS: [(&'static str, &'static str); 8] = [
        ("omega_nr", "Hz"),
        ("x_zp", "m"),
        ("lambda", "Hz"),
        ("lambda_max", "Hz"),
        ("lambda_lc", "Hz"),
        ("v_pullin", "V"),
        ("t1", "s"),
        ("n_th", "1"),
    ];

    pub(crate) fn columns() -> Vec<Column> {
        Self::FIELDS.iter().map(|(n, u)| Column::new(*n, *u)).collect()
    }

    pub fn values(&self) -> [f64; 8] {
        [self.omega_nr, self.x_zp, self.lambda, self.lambda_max, self.lambda_lc, self.v_pullin, self.t1, self.n_th]
    }

    /// Uses the circuit's `c_nr` (not the parallel-plate estimate) for the
    /// pull-in voltage and `λ_max`.
    pub fn compute(cfg: &RunConfig) -> Result<Self, qcnr_core::Error> {
        let (cpb, beam, circuit) = (
            cfg.cpb.as_ref().expect("checked"),
            cfg.beam.as_ref().expect("checked"),
            cfg.circuit.as_ref().expect("checked").circuit(),
        );
        let osc = cfg.oscillator.as_ref().expect("checked");
        let temperature = cfg.environment.as_ref().expect("checked").temperature;
        let spec = beam.spec();
        circuit.validate()?;
        let mode = beam_mode_normalized(&spec, 1, beam.normalization())?;
        let grad = capacitance_gradient(&spec, &mode)?;
        let delta_e = qubit_spectrum(&cpb.params(), &cpb.basis(), 2)?.lowest_transition();
        Ok(Self {
            omega_nr: mode.omega,
            x_zp: mode.x_zp,
            lambda: coupling_lambda(cpb.e_c, grad.dc_dx, circuit.v_nr, mode.x_zp),
            lambda_max: lambda_max(cpb.e_c, mode.omega, circuit.c_nr, spec.beta),
            lambda_lc: lambda_lc(cpb.e_c, circuit.c_q, osc.omega, circuit.c_t),
            v_pullin: pullin_voltage(mode.spring_constant(), spec.d, circuit.c_nr),
            t1: radiative_damping(delta_e, &circuit).t1,
            n_th: thermal_occupation(mode.omega, temperature),
        })
    }

    pub fn render(&self) -> String {
        format!(
            "beam frequency      {:.6} MHz\n\
             zero-point motion   {:.4e} m\n\
             coupling lambda     {:.6} MHz\n\
             lambda_max          {:.6} MHz\n\
             lambda_LC           {:.6} MHz\n\
             pull-in voltage     {:.4} V\n\
             radiative T1        {:.4e} s\n\
             thermal occupation  {:.4}\n",
            self.omega_nr / 1e6,
            self.x_zp,
            self.lambda / 1e6,
            self.lambda_max / 1e6,
            self.lambda_lc / 1e6,
            self.v_pullin,
            self.t1,
            self.n_th,
        )
    }
}

fn axis_unit(axis: &str) -> &'static str {
    match axis.split_once('.').map_or("", |(_, k)| k) {
        "E_C" | "E_J0" | "omega" | "kappa" | "lambda" | "eta" => "Hz",
        "flux" => "Phi0",
        "n_sigma" => "2e",
        "w" | "t" | "l" | "l_e" | "d" => "m",
        "rho" => "kg/m^3",
        "youngs_e" => "Pa",
        "c_nr" | "c_cpb" | "c_q" | "c_t" => "F",
        "z0" => "Ohm",
        "v_nr" => "V",
        "temperature" => "K",
        _ => "1",
    }
}

/// Runs `f` on a pool of `threads` workers (0 picks the rayon default).
fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool").install(f)
}

/// Evaluates `op` over the configured sweep.
pub fn run_operation(cfg: &RunConfig, op: Operation, threads: usize) -> Result<Output, CliError> {
    op.check_requirements(cfg)?;
    let sweep = cfg.require_sweep()?;
    let points = axis_points(sweep.start, sweep.stop, sweep.count, sweep.spacing);
    let provenance = Provenance::new(cfg.hash(), op.name());

    if op == Operation::SingleToneMap {
        return single_tone(cfg, &points, provenance, threads);
    }

    let mut table = ResultTable::new(provenance, vec![Column::new(sweep.axis.clone(), axis_unit(&sweep.axis))]);
    let columns = op.columns(cfg);
    let width = columns.len();
    table.columns.extend(columns);

    let rows: Vec<(Vec<f64>, Option<String>)> = with_threads(threads, || {
        points
            .par_iter()
            .map(|&v| {
                let mut point = cfg.clone();
                let result = point
                    .set_axis(&sweep.axis, v)
                    .and_then(|()| point.validate())
                    .map_err(|e| e.to_string())
                    .and_then(|()| op.evaluate(&point).map_err(|e| e.to_string()));
                match result {
                    Ok(values) => (values, None),
                    Err(e) => (vec![f64::NAN; width], Some(format!("{}={v:e}: {e}", sweep.axis))),
                }
            })
            .collect()
    });
    for ((values, failure), v) in rows.into_iter().zip(&points) {
        let mut row = vec![*v];
        row.extend(values);
        table.push(row, failure);
    }
    Ok(Output::Table(table))
}

fn single_tone(cfg: &RunConfig, flux: &[f64], provenance: Provenance, threads: usize) -> Result<Output, CliError> {
    let cpb = cfg.require_cpb()?;
    let probe = cfg.require_probe()?.config();
    let plan = SingleTonePlan::new(
        &cpb.params(),
        &cfg.require_oscillator()?.params(),
        &cfg.require_coupling()?.params(),
        &cpb.basis(),
        &probe,
    )?;
    let columns = with_threads(threads, || flux.par_iter().map(|&x| plan.column(x)).collect());
    let map = SpectroscopyMap::from_columns(flux.to_vec(), probe.omega_grid.clone(), columns, plan.metadata());
    Ok(Output::Map(MapResult {
        provenance,
        x: Axis { name: "cpb.flux".into(), unit: "Phi0".into(), values: map.x_axis },
        y: Axis { name: "omega".into(), unit: "Hz".into(), values: map.y_axis },
        amplitude: map.amplitude,
        phase: map.phase,
        missing: map.missing.into_iter().map(|(ix, e)| (ix, format!("cpb.flux={:e}: {e}", flux[ix]))).collect(),
    }))
}

/// Evaluates the operation named in `[sweep] operation`.
pub fn run_sweep(cfg: &RunConfig, threads: usize) -> Result<Output, CliError> {
    let name = cfg.require_sweep()?.operation.as_deref().ok_or(ConfigError::Invalid {
        key: "sweep.operation".into(),
        reason: "required by the sweep command".into(),
    })?;
    run_operation(cfg, Operation::parse(name)?, threads)
}
