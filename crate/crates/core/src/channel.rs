//! Line-of-sight ULA channels, path loss and RIS phase alignment.
//!
//! The BS-RIS channel `h_sr` and the RIS-user channel `h_rd` are modelled as
//! uniform linear array responses scaled by a distance-dependent amplitude.
//! A [`LosChannel`] always stores the column vector; the RIS-user row vector
//! used in the received signal is its Hermitian transpose.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::units::{link_distances, SystemParams};

/// Carrier wavelength used when none is given. It never affects a rate:
/// only the modulus of the phase-aligned cascaded channel enters the SNR.
pub const DEFAULT_WAVELENGTH: f64 = 0.1;

/// Squared path-loss amplitudes of the two hops.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelGains {
    /// `h_sr² = β₀ d_sr^(-α_sr)`
    pub h_sr2: f64,
    /// `h_rd² = β₀ d_rd^(-α_rd)`
    pub h_rd2: f64,
}

impl ChannelGains {
    pub fn new(h_sr2: f64, h_rd2: f64) -> Result<Self> {
        for (name, v) in [("h_sr2", h_sr2), ("h_rd2", h_rd2)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("channel gain must be positive, got {v}"),
                });
            }
        }
        Ok(ChannelGains { h_sr2, h_rd2 })
    }

    /// Path gains for the geometry and exponents in `params`.
    pub fn from_params(params: &SystemParams) -> Result<Self> {
        let (d_sr, d_rd) = link_distances(params)?;
        Ok(ChannelGains {
            h_sr2: path_gain(params.beta0, d_sr, params.alpha_sr)?,
            h_rd2: path_gain(params.beta0, d_rd, params.alpha_rd)?,
        })
    }
}

/// `β₀ d^(-α)`, valid from the 1 m reference distance outwards.
pub fn path_gain(beta0: f64, d: f64, alpha: f64) -> Result<f64> {
    if !(beta0 > 0.0) {
        return Err(Error::InvalidParameter {
            name: "beta0",
            reason: format!("must be positive, got {beta0}"),
        });
    }
    if !(alpha > 0.0) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            reason: format!("must be positive, got {alpha}"),
        });
    }
    if !(d >= 1.0) {
        return Err(Error::BelowReferenceDistance { distance: d });
    }
    Ok(beta0 * d.powf(-alpha))
}

/// A ULA line-of-sight channel: entry `k` is `amplitude * exp(-j 2π k angle / λ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LosChannel {
    pub amplitude: f64,
    pub angle: f64,
    pub wavelength: f64,
    entries: Vec<Complex64>,
}

impl LosChannel {
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn los_vector(amplitude: f64, angle: f64, wavelength: f64, n: usize) -> Result<LosChannel> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n_elements",
            reason: "array needs at least one element".into(),
        });
    }
    if !(wavelength > 0.0) {
        return Err(Error::InvalidParameter {
            name: "wavelength",
            reason: format!("must be positive, got {wavelength}"),
        });
    }
    let step = -2.0 * PI * angle / wavelength;
    let entries = (0..n)
        .map(|k| Complex64::from_polar(amplitude, step * k as f64))
        .collect();
    Ok(LosChannel {
        amplitude,
        angle,
        wavelength,
        entries,
    })
}

/// Both hop channels for `params`, with arrival/departure angles drawn
/// uniformly from `[0, 1)`.
pub fn random_los_pair<R: Rng + ?Sized>(
    params: &SystemParams,
    wavelength: f64,
    rng: &mut R,
) -> Result<(LosChannel, LosChannel)> {
    let gains = ChannelGains::from_params(params)?;
    let n = params.n_elements as usize;
    let h_sr = los_vector(gains.h_sr2.sqrt(), rng.gen::<f64>(), wavelength, n)?;
    let h_rd = los_vector(gains.h_rd2.sqrt(), rng.gen::<f64>(), wavelength, n)?;
    Ok((h_sr, h_rd))
}

/// Diagonal of the unit-modulus reflection matrix Φ.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseProfile {
    thetas: Vec<f64>,
}

impl PhaseProfile {
    /// Wraps every phase into `[0, 2π)`.
    pub fn new(thetas: impl IntoIterator<Item = f64>) -> Self {
        PhaseProfile {
            thetas: thetas.into_iter().map(wrap_phase).collect(),
        }
    }

    pub fn zeros(n: usize) -> Self {
        PhaseProfile {
            thetas: vec![0.0; n],
        }
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn rotated(&self, offset: f64) -> Self {
        PhaseProfile::new(self.thetas.iter().map(|t| t + offset))
    }
}

fn wrap_phase(theta: f64) -> f64 {
    let w = theta.rem_euclid(2.0 * PI);
    // rem_euclid can round up to exactly 2π for tiny negative inputs
    if w >= 2.0 * PI {
        0.0
    } else {
        w
    }
}

fn check_len(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::Dimension { left, right });
    }
    Ok(())
}

/// Per-element phases `θ_n = arg [h_rd]_n - arg [h_sr]_n` that make every
/// cascaded term real and positive.
pub fn optimal_phases(h_sr: &LosChannel, h_rd: &LosChannel) -> Result<PhaseProfile> {
    check_len(h_sr.len(), h_rd.len())?;
    Ok(PhaseProfile::new(
        h_sr.entries
            .iter()
            .zip(&h_rd.entries)
            .map(|(s, r)| r.arg() - s.arg()),
    ))
}

/// `h_rd^H Φ h_sr = Σ conj([h_rd]_n) e^{jθ_n} [h_sr]_n`.
pub fn cascaded_gain(
    h_sr: &LosChannel,
    h_rd: &LosChannel,
    phases: &PhaseProfile,
) -> Result<Complex64> {
    check_len(h_sr.len(), h_rd.len())?;
    check_len(h_sr.len(), phases.len())?;
    Ok(h_sr
        .entries
        .iter()
        .zip(&h_rd.entries)
        .zip(&phases.thetas)
        .map(|((s, r), &t)| r.conj() * Complex64::from_polar(1.0, t) * s)
        .sum())
}

/// `‖h_rd^H Φ‖²`.
pub fn reflected_norm_sqr(h_rd: &LosChannel, phases: &PhaseProfile) -> Result<f64> {
    check_len(h_rd.len(), phases.len())?;
    Ok(h_rd
        .entries
        .iter()
        .zip(&phases.thetas)
        .map(|(r, &t)| (r.conj() * Complex64::from_polar(1.0, t)).norm_sqr())
        .sum())
}

/// `‖Φ h_sr‖²`, the power impinging on the RIS per unit transmit power.
pub fn incident_norm_sqr(h_sr: &LosChannel, phases: &PhaseProfile) -> Result<f64> {
    check_len(h_sr.len(), phases.len())?;
    Ok(h_sr
        .entries
        .iter()
        .zip(&phases.thetas)
        .map(|(s, &t)| (Complex64::from_polar(1.0, t) * s).norm_sqr())
        .sum())
}
