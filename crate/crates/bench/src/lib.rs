//! Shared fixtures for the criterion benchmarks.

use ris_budget::power::available_power_c;
use ris_budget::{ChannelGains, SystemParams};

/// Default parameters, their channel gains and the available power `C`.
pub fn default_scenario() -> (SystemParams, ChannelGains, f64) {
    let params = SystemParams::default();
    let gains = ChannelGains::from_params(&params).expect("default geometry is valid");
    let c = available_power_c(&params);
    (params, gains, c)
}
