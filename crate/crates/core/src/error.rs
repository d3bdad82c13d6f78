use thiserror::Error;

/// Errors raised by the link model, allocation and sweep layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("distance {distance} m is below the 1 m reference distance of the path-loss model")]
    BelowReferenceDistance { distance: f64 },

    #[error("dimension mismatch: {left} vs {right} elements")]
    Dimension { left: usize, right: usize },

    #[error(
        "passive system infeasible: budget {q_tot} W does not cover switch power {switch_power} W"
    )]
    InfeasiblePassive { q_tot: f64, switch_power: f64 },

    #[error("power split violates the budget: P_BS = {p_bs} W exceeds C = {c} W")]
    ConstraintViolation { p_bs: f64, c: f64 },

    #[error("active system has no power left for the BS and RIS (C = {c} W)")]
    InfeasibleActive { c: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("budget grid has {switches} active/passive switches, expected one passive-to-active crossover at most")]
    MultipleCrossovers { switches: usize },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
