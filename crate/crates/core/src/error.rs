use thiserror::Error;

/// Errors raised by the lattice, oracle and asymptotic evaluators.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("branch-1 derivative requested at p = {p}, where the acoustic branch has a kink")]
    AcousticKink { p: f64 },

    #[error("root not bracketed on [{lo}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}")]
    RootNotBracketed { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("momentum p = {p} lies outside the Brillouin zone [-{half_width}, {half_width}]")]
    OutsideBrillouinZone { p: f64, half_width: f64 },

    #[error("profile has no significant samples for delta = {delta} (decay radius {radius})")]
    NoSignificantSamples { delta: f64, radius: f64 },

    #[error("quadrature did not converge: error estimate {estimate:e} exceeds tolerance {tolerance:e} after {panels} panels")]
    QuadratureNotConverged { estimate: f64, tolerance: f64, panels: usize },

    #[error("lattice too short: the wave reaches the boundary; at least {required} sites per species are needed (got {given})")]
    LatticeTooShort { required: usize, given: usize },

    #[error("time t = {t} is not allowed here: {reason}")]
    InvalidTime { t: f64, reason: &'static str },

    #[error("position x = {x} is outside the validity region [{lo}, {hi}] of {what}")]
    OutsideValidity { x: f64, lo: f64, hi: f64, what: &'static str },

    #[error("wave fields are not comparable: {0}")]
    MismatchedFields(String),

    #[error("sample table: {0}")]
    SampleTable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}
