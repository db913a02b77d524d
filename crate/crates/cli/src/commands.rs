//! Subcommands that evaluate a single configuration point.

use std::path::Path;

use qcnr_core::fit::{fit_resonance, ResonanceModel};
use qcnr_core::qubit::qubit_spectrum as spectrum;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::export::{Column, Output, Provenance, ResultTable};
use crate::sweep::{DesignReport, Operation};
use crate::trace::read_trace;

/// Lowest `levels` CPB eigenvalues at the configured bias, one row each.
pub fn qubit_spectrum(cfg: &RunConfig, levels: usize) -> Result<Output, CliError> {
    let cpb = cfg.require_cpb()?;
    let q = spectrum(&cpb.params(), &cpb.basis(), levels)?;
    let mut table = ResultTable::new(
        Provenance::new(cfg.hash(), "qubit_spectrum"),
        vec![
            Column::new("level", "1"),
            Column::new("energy", "Hz"),
            Column::new("transition", "Hz"),
            Column::new("charge_element", "1"),
        ],
    );
    for k in 0..q.len() {
        let row = vec![k as f64, q.eigenvalues()[k], q.transition(0, k), q.charge_matrix_element(k, 0).norm()];
        table.push(row, None);
    }
    Ok(Output::Table(table))
}

pub fn design(cfg: &RunConfig) -> Result<(DesignReport, Output), CliError> {
    Operation::Design.check_requirements(cfg)?;
    let report = DesignReport::compute(cfg)?;
    let mut table = ResultTable::new(Provenance::new(cfg.hash(), "design"), DesignReport::columns());
    table.push(report.values().to_vec(), None);
    Ok((report, Output::Table(table)))
}

/// Fits a trace file; `Q_i`, `Q_c` and the background are NaN where the
/// model does not define them.
pub fn fit(cfg: &RunConfig, trace: &Path, model: ResonanceModel) -> Result<Output, CliError> {
    let (omega, amplitude) = read_trace(trace)?;
    let f = fit_resonance(&omega, &amplitude, model)?;
    let name = match model {
        ResonanceModel::Hanger => "fit_hanger",
        ResonanceModel::Lorentzian => "fit_lorentzian",
    };
    let mut table = ResultTable::new(
        Provenance::new(cfg.hash(), name),
        vec![
            Column::new("f0", "Hz"),
            Column::new("Q_L", "1"),
            Column::new("Q_i", "1"),
            Column::new("Q_c", "1"),
            Column::new("amplitude", "1"),
            Column::new("background", "1"),
            Column::new("residual_norm", "1"),
            Column::new("iterations", "1"),
        ],
    );
    let nan = f64::NAN;
    table.push(
        vec![
            f.f0,
            f.q_l,
            f.q_i.unwrap_or(nan),
            f.q_c.unwrap_or(nan),
            f.amplitude,
            f.background.unwrap_or(nan),
            f.residual_norm,
            f.iterations as f64,
        ],
        None,
    );
    Ok(Output::Table(table))
}
