use alloc::string::String;

/// Errors raised by the model builders, solvers and fitters.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("parameter `{0}` is not finite")]
    NonFinite(&'static str),

    #[error("parameter `{name}` out of range: {reason}")]
    OutOfRange { name: &'static str, reason: &'static str },

    #[error("charge basis dimension {0} is below the minimum of 3")]
    BasisTooSmall(usize),

    #[error("requested {requested} levels but the basis only holds {available}")]
    TooManyLevels { requested: usize, available: usize },

    #[error("Hilbert space dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("eigensolver failed to converge: {0}")]
    NoConvergence(String),

    #[error("qubit transition {delta_e} Hz is within 0.1% of the mode frequency {omega} Hz")]
    Resonance { delta_e: f64, omega: f64 },

    #[error("no avoided crossing inside flux window [{lo}, {hi}]: minimum sits on the boundary")]
    NoCrossing { lo: f64, hi: f64 },

    #[error("dressed state (qubit {qubit}, photons {photons}) has maximum bare overlap {overlap:.3} <= 0.5")]
    Labeling { qubit: usize, photons: usize, overlap: f64 },

    #[error("mean photon number {target} unreachable: accessible range is [{min}, {max}]")]
    PopulationUnreachable { target: f64, min: f64, max: f64 },

    #[error("least-squares fit did not converge after {0} iterations")]
    FitNoConvergence(usize),

    #[error("ill-conditioned trace: {0}")]
    IllConditioned(&'static str),

    #[error("unsupported beam mode index {0} (expected 1, 2 or 3)")]
    UnsupportedMode(usize),

    #[error("truncation did not converge below the dimension cap of {cap}")]
    TruncationCap { cap: usize },
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite(name))
    }
}
