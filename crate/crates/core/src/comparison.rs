//! Active versus passive: superiority conditions and the budget-ratio
//! function `g(C) = P_BS^act* / P_BS^pas`.
//!
//! Writing `x = N h_rd² σ_r² / σ²`, the active SNR beats the passive one
//! exactly when `g > x + 1/ρ*²`. So the passive surface wins whenever
//! `x ≥ g`, and otherwise the active one wins iff `ρ*² > 1/(g - x)`.

use crate::allocation::{f4, f4_at_infinity, large_c_slope, optimal_p_bs, NoiseProducts};
use crate::channel::ChannelGains;
use crate::error::{Error, Result};
use crate::power::{available_power_c, p_bs_passive, rate, snr_passive};
use crate::units::SystemParams;

/// Relative SNR gap below which the two systems are declared tied.
pub const TIE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Winner {
    Active,
    Passive,
    Tie,
}

impl std::fmt::Display for Winner {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Winner::Active => "active",
            Winner::Passive => "passive",
            Winner::Tie => "tie",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonVerdict {
    pub winner: Winner,
    pub gamma_act: f64,
    pub gamma_pas: f64,
    pub rate_act: f64,
    pub rate_pas: f64,
    /// `N h_rd² σ_r²/σ² > g(C)`: passive is guaranteed better.
    pub passive_guaranteed: bool,
    /// The passive guarantee fails and `ρ*² > 1/(g - N h_rd² σ_r²/σ²)`.
    pub active_guaranteed: bool,
    pub g_of_c: f64,
    pub c: f64,
}

impl ComparisonVerdict {
    /// No analytic condition contradicts the direct SNR comparison.
    pub fn is_consistent(&self) -> bool {
        !(self.passive_guaranteed && self.gamma_act > self.gamma_pas)
            && !(self.active_guaranteed && self.gamma_act <= self.gamma_pas)
    }
}

/// `N h_rd² σ_r² / σ²`, RIS noise relative to receiver noise at the user.
pub fn ris_noise_ratio(params: &SystemParams, gains: &ChannelGains) -> f64 {
    params.n() * gains.h_rd2 * params.sigma_r2 / params.sigma2
}

/// Compares both systems for the geometry in `params`.
pub fn compare(params: &SystemParams) -> Result<ComparisonVerdict> {
    let gains = ChannelGains::from_params(params)?;
    compare_with_gains(params, &gains)
}

pub fn compare_with_gains(
    params: &SystemParams,
    gains: &ChannelGains,
) -> Result<ComparisonVerdict> {
    let p_pas = p_bs_passive(params)?;
    let c = available_power_c(params);
    let alloc = optimal_p_bs(c, params, gains);
    let gamma_act = alloc.snr_star;
    let gamma_pas = snr_passive(p_pas, gains, params);

    let g = alloc.p_bs_star / p_pas;
    let x = ris_noise_ratio(params, gains);
    let passive_guaranteed = x > g;
    let active_guaranteed = !passive_guaranteed && g > x && alloc.rho2_star > 1.0 / (g - x);

    let winner = if (gamma_act - gamma_pas).abs() <= TIE_TOL * gamma_act.max(gamma_pas) {
        Winner::Tie
    } else if gamma_act > gamma_pas {
        Winner::Active
    } else {
        Winner::Passive
    };

    Ok(ComparisonVerdict {
        winner,
        gamma_act,
        gamma_pas,
        rate_act: rate(gamma_act),
        rate_pas: rate(gamma_pas),
        passive_guaranteed,
        active_guaranteed,
        g_of_c: g,
        c,
    })
}

/// `g(C) = P*(C) / (C + N P_DC)`, zero for `C <= 0`.
pub fn g_ratio(c: f64, params: &SystemParams, gains: &ChannelGains) -> f64 {
    if !(c > 0.0) {
        return 0.0;
    }
    optimal_p_bs(c, params, gains).p_bs_star / (c + params.n() * params.p_dc)
}

/// `lim_{C→∞} g(C) = (a - √(ab)) / (a - b)`, always in `(0, 1)`.
pub fn g_ratio_limit(params: &SystemParams, gains: &ChannelGains) -> f64 {
    large_c_slope(params, gains)
}

/// `∂g/∂C = f₄(C) / (C + N P_DC)²`.
pub fn g_ratio_derivative(c: f64, params: &SystemParams, gains: &ChannelGains) -> f64 {
    let pas = c + params.n() * params.p_dc;
    f4(c, params, gains) / (pas * pas)
}

/// Shape of `g` over `C > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GShape {
    Increasing,
    /// Rises to a single peak, then decreases towards its limit.
    Unimodal,
}

/// Increasing when `σ_r² h_rd² ≥ σ² h_sr²`; otherwise decided by the sign
/// of `f₄(∞)`, since `f₄` then decreases from `N P_DC / 2`.
pub fn g_shape(params: &SystemParams, gains: &ChannelGains) -> GShape {
    let np = NoiseProducts::new(params, gains);
    if np.gap() >= 0.0 || np.is_degenerate() || f4_at_infinity(params, gains) >= 0.0 {
        GShape::Increasing
    } else {
        GShape::Unimodal
    }
}

/// Upper bound of the active-wins amplification test with `P_BS = C/2`;
/// missing when its denominator is not positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EqualSplitBounds {
    /// `ρ²_sub = C / (C N h_sr² + 2 N σ_r²)`
    pub lhs_lower: f64,
    /// `1 / (C / (2 (C + N P_DC)) - N h_rd² σ_r²/σ²)`
    pub rhs_upper: Option<f64>,
}

impl EqualSplitBounds {
    /// Active wins already at the equal split, hence also at the optimum.
    pub fn active_wins(&self) -> bool {
        self.rhs_upper.is_some_and(|rhs| self.lhs_lower > rhs)
    }
}

pub fn equal_split_bounds(params: &SystemParams, gains: &ChannelGains) -> Result<EqualSplitBounds> {
    let c = available_power_c(params);
    if !(c > 0.0) {
        return Err(Error::InfeasibleActive { c });
    }
    let n = params.n();
    let lhs_lower = c / (c * n * gains.h_sr2 + 2.0 * n * params.sigma_r2);
    let den = c / (2.0 * (c + n * params.p_dc)) - ris_noise_ratio(params, gains);
    Ok(EqualSplitBounds {
        lhs_lower,
        rhs_upper: (den > 0.0).then(|| 1.0 / den),
    })
}

/// Thresholds used to read the "≈" and "≪" premises of the equal-split
/// superiority result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PremiseTolerance {
    /// `σ² ≈ σ_r²` means their ratio lies in `[1/noise_ratio, noise_ratio]`.
    pub noise_ratio: f64,
    /// `x ≪ y` means `x ≤ much_less * y`.
    pub much_less: f64,
}

impl Default for PremiseTolerance {
    fn default() -> Self {
        PremiseTolerance {
            noise_ratio: 2.0,
            much_less: 1e-2,
        }
    }
}

/// `σ² ≈ σ_r² ≪ P_DC`, `N h_sr² ≪ 1`, `N h_rd² ≪ 1` and `C ≥ N P_DC`.
pub fn equal_split_premises(
    params: &SystemParams,
    gains: &ChannelGains,
    tol: PremiseTolerance,
) -> bool {
    let n = params.n();
    let ratio = params.sigma2 / params.sigma_r2;
    let close = ratio <= tol.noise_ratio && ratio >= 1.0 / tol.noise_ratio;
    let small = |x: f64, y: f64| x <= tol.much_less * y;
    close
        && small(params.sigma2.max(params.sigma_r2), params.p_dc)
        && small(n * gains.h_sr2, 1.0)
        && small(n * gains.h_rd2, 1.0)
        && available_power_c(params) >= n * params.p_dc
}

/// The budget at which active starts to win on an ascending grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossover {
    pub index: usize,
    pub q_tot: f64,
}

/// Scans ascending budgets `q_grid` (watts) and returns the first one where
/// the active system wins. Budgets that cannot even feed the passive switch
/// circuits are skipped. Errors unless the winner changes at most once, from
/// passive to active.
pub fn budget_crossover(template: &SystemParams, q_grid: &[f64]) -> Result<Option<Crossover>> {
    if q_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Config(
            "budget grid must be strictly ascending".into(),
        ));
    }
    let gains = ChannelGains::from_params(template)?;
    let mut first: Option<Crossover> = None;
    let mut switches = 0;
    let mut prev: Option<bool> = None;
    for (index, &q_tot) in q_grid.iter().enumerate() {
        let verdict = match compare_with_gains(&template.with_q_tot(q_tot), &gains) {
            Ok(v) => v,
            Err(Error::InfeasiblePassive { .. }) => continue,
            Err(e) => return Err(e),
        };
        let active = verdict.winner == Winner::Active;
        if prev.is_some_and(|was| was != active) {
            switches += 1;
        }
        if active && first.is_none() {
            first = Some(Crossover { index, q_tot });
        }
        prev = Some(active);
    }
    // a single switch must go from passive to active
    if switches > 1 || (switches == 1 && prev == Some(false)) {
        return Err(Error::MultipleCrossovers { switches });
    }
    Ok(first)
}
