//! Power-budget analysis of active and passive reconfigurable intelligent
//! surfaces (RIS).
//!
//! Both systems draw from the same total budget `Q_tot`. The passive surface
//! spends `N * P_SW` on its phase-shift circuits and gives the rest to the
//! base station (BS). The active surface additionally pays `N * P_DC` to bias
//! its amplifiers, and the remainder `C` is split between the BS transmit
//! power and the RIS output power. This crate computes the SNR-optimal split
//! in closed form, the resulting rates, and the analytic conditions that
//! decide which surface wins.
//!
//! All arithmetic is in linear watts; dBm only appears at the configuration
//! and CLI boundary (see [`units`]).
//!
//! ```
//! use ris_budget::{compare, SystemParams, Winner};
//!
//! let verdict = compare(&SystemParams::default()).unwrap();
//! assert_eq!(verdict.winner, Winner::Active);
//! assert!((verdict.rate_act - 17.67).abs() < 0.05);
//! ```

// `!(x > 0.0)` is used deliberately so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod allocation;
pub mod channel;
pub mod comparison;
pub mod config;
pub mod error;
pub mod power;
pub mod sweep;
pub mod units;

pub use allocation::{
    optimal_p_bs, oracle_grid_search, AllocationResult, Branch, GridSearchResult,
};
pub use channel::{ChannelGains, LosChannel, PhaseProfile};
pub use comparison::{compare, compare_with_gains, ComparisonVerdict, Winner};
pub use error::{Error, Result};
pub use power::{rate, snr_active, snr_passive, PowerSplit};
pub use sweep::{run_sweep, SweepAxis, SweepRow, SweepSpec};
pub use units::{dbm_to_watts, watts_to_dbm, SystemParams};
