use thiserror::Error;

/// Errors raised by state construction, propagation and the analytic catalog.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("number of atoms {got} outside supported range {min}..={max}")]
    AtomCount { got: usize, min: usize, max: usize },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error(
        "Fock truncation too small: tail mass {tail_mass:.3e} above n_max - 10 with n_max = {n_max}; \
         use n_max >= {required}"
    )]
    Truncation {
        n_max: usize,
        tail_mass: f64,
        required: usize,
    },

    #[error("propagator did not converge: {0}")]
    NonConvergence(String),

    #[error("invalid angular momentum j = {twice_j}/2 for {n_atoms} atoms")]
    InvalidMultiplet { n_atoms: usize, twice_j: u32 },

    #[error("minimizer bracket [{lo}, {hi}] has no interior decrease")]
    BadBracket { lo: f64, hi: f64 },

    #[error("resource guard: {0}")]
    ResourceGuard(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite",
        })
    }
}
