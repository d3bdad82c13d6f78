//! Power consumption, the amplification constraint and SNR/rate formulas.

use crate::channel::{cascaded_gain, reflected_norm_sqr, ChannelGains, LosChannel, PhaseProfile};
use crate::error::{Error, Result};
use crate::units::SystemParams;

/// Total consumption of the active system: BS, RIS output and element hardware.
pub fn q_active(p_bs: f64, p_ris: f64, params: &SystemParams) -> f64 {
    p_bs + p_ris + params.n() * (params.p_sw + params.p_dc)
}

/// Total consumption of the passive system.
pub fn q_passive(p_bs: f64, params: &SystemParams) -> f64 {
    p_bs + params.n() * params.p_sw
}

/// Power `C` left for the BS and the RIS amplifiers once the active
/// hardware is supplied. Non-positive values mean the active system cannot
/// transmit at all.
pub fn available_power_c(params: &SystemParams) -> f64 {
    params.q_tot - params.n() * (params.p_sw + params.p_dc)
}

/// BS power of the passive system, `Q_tot - N P_SW`.
pub fn p_bs_passive(params: &SystemParams) -> Result<f64> {
    let switch_power = params.n() * params.p_sw;
    if params.q_tot <= switch_power {
        return Err(Error::InfeasiblePassive {
            q_tot: params.q_tot,
            switch_power,
        });
    }
    Ok(params.q_tot - switch_power)
}

/// Largest `ρ²` the RIS output budget `C - P_BS` can sustain:
/// `(C - P_BS) / (N (P_BS h_sr² + σ_r²))`.
pub fn rho2_from_split(
    p_bs: f64,
    c: f64,
    params: &SystemParams,
    gains: &ChannelGains,
) -> Result<f64> {
    if p_bs > c {
        return Err(Error::ConstraintViolation { p_bs, c });
    }
    if p_bs < 0.0 {
        return Err(Error::Domain(format!("negative BS power {p_bs} W")));
    }
    Ok((c - p_bs) / (params.n() * (p_bs * gains.h_sr2 + params.sigma_r2)))
}

/// Active SNR with phase-aligned reflection:
/// `N² P_BS h_sr² h_rd² / (N σ_r² h_rd² + σ²/ρ²)`.
///
/// `rho2 == 0` means the RIS forwards nothing and the SNR is zero.
pub fn snr_active(p_bs: f64, rho2: f64, gains: &ChannelGains, params: &SystemParams) -> f64 {
    if rho2 <= 0.0 || p_bs <= 0.0 {
        return 0.0;
    }
    let n = params.n();
    n * n * p_bs * gains.h_sr2 * gains.h_rd2
        / (n * params.sigma_r2 * gains.h_rd2 + params.sigma2 / rho2)
}

/// Passive SNR `N² P_BS h_sr² h_rd² / σ²`.
pub fn snr_passive(p_bs: f64, gains: &ChannelGains, params: &SystemParams) -> f64 {
    let n = params.n();
    n * n * p_bs * gains.h_sr2 * gains.h_rd2 / params.sigma2
}

/// Active SNR as a function of the BS power alone, with `ρ²` already
/// eliminated through the RIS power constraint:
///
/// `N h_sr² h_rd² (C P - P²) / (σ_r² h_rd² (C - P) + σ² (P h_sr² + σ_r²))`.
///
/// Exactly zero at both ends of `[0, C]`.
pub fn snr_active_objective(p_bs: f64, c: f64, params: &SystemParams, gains: &ChannelGains) -> f64 {
    // P (C - P) rather than C P - P², which cancels when P is close to C
    let num = params.n() * gains.h_sr2 * gains.h_rd2 * p_bs * (c - p_bs);
    let den = params.sigma_r2 * gains.h_rd2 * (c - p_bs)
        + params.sigma2 * (p_bs * gains.h_sr2 + params.sigma_r2);
    num / den
}

/// Active SNR evaluated from explicit channel vectors and reflection phases:
/// `P ρ² |h_rd^H Φ h_sr|² / (ρ² σ_r² ‖h_rd^H Φ‖² + σ²)`.
pub fn snr_active_vector(
    p_bs: f64,
    rho2: f64,
    h_sr: &LosChannel,
    h_rd: &LosChannel,
    phases: &PhaseProfile,
    params: &SystemParams,
) -> Result<f64> {
    let g = cascaded_gain(h_sr, h_rd, phases)?.norm_sqr();
    let noise = reflected_norm_sqr(h_rd, phases)?;
    Ok(p_bs * rho2 * g / (rho2 * params.sigma_r2 * noise + params.sigma2))
}

/// Passive SNR from explicit vectors, `P |h_rd^H Φ h_sr|² / σ²`.
pub fn snr_passive_vector(
    p_bs: f64,
    h_sr: &LosChannel,
    h_rd: &LosChannel,
    phases: &PhaseProfile,
    params: &SystemParams,
) -> Result<f64> {
    Ok(p_bs * cascaded_gain(h_sr, h_rd, phases)?.norm_sqr() / params.sigma2)
}

/// Achievable rate `log₂(1 + snr)` in bps/Hz.
pub fn rate(snr: f64) -> f64 {
    (1.0 + snr).log2()
}

/// One operating point: BS power, RIS output power and amplification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSplit {
    pub p_bs: f64,
    pub p_ris: f64,
    pub rho2: f64,
    /// Power available to the BS and RIS amplifiers (active systems only).
    pub c: f64,
}

impl PowerSplit {
    /// Active split with `P_RIS = C - P_BS` and the matching `ρ²`.
    pub fn active(p_bs: f64, c: f64, params: &SystemParams, gains: &ChannelGains) -> Result<Self> {
        let rho2 = rho2_from_split(p_bs, c, params, gains)?;
        Ok(PowerSplit {
            p_bs,
            p_ris: c - p_bs,
            rho2,
            c,
        })
    }

    /// The passive system: all non-switch power to the BS, unit reflection.
    pub fn passive(params: &SystemParams) -> Result<Self> {
        let p_bs = p_bs_passive(params)?;
        Ok(PowerSplit {
            p_bs,
            p_ris: 0.0,
            rho2: 1.0,
            c: available_power_c(params),
        })
    }

    /// Power drawn by the RIS amplifiers: `ρ² N (P_BS h_sr² + σ_r²)`.
    pub fn ris_output_power(&self, params: &SystemParams, gains: &ChannelGains) -> f64 {
        self.rho2 * params.n() * (self.p_bs * gains.h_sr2 + params.sigma_r2)
    }
}
