//! Optimal BS/RIS power split for the active system.
//!
//! With `a = σ_r² h_rd²`, `b = σ² h_sr²` and `s = σ² σ_r²`, the active SNR
//! over `P ∈ [0, C]` has a single stationary point, the root in `(0, C)` of
//!
//! `f₁(P) = (a - b) P² - 2 (C a + s) P + C (C a + s)`.
//!
//! The textbook root `(C a + s - √((C b + s)(C a + s))) / (a - b)` is a
//! 0/0 form when `a ≈ b` and cancels badly when the two products differ by
//! orders of magnitude. Multiplying through by the conjugate gives the
//! equivalent
//!
//! `P* = C / (1 + √((C b + s) / (C a + s)))`
//!
//! which is what [`optimal_p_bs`] evaluates. The literal form is kept as
//! [`closed_form_textbook`] for cross-checking.

use crate::channel::ChannelGains;
use crate::error::{Error, Result};
use crate::power::{rho2_from_split, snr_active, snr_active_objective};
use crate::units::SystemParams;

/// Relative gap below which `σ_r² h_rd²` and `σ² h_sr²` count as equal.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Default number of intervals of the oracle's coarse grid.
pub const DEFAULT_ORACLE_RESOLUTION: usize = 100_000;

const MIN_ORACLE_RESOLUTION: usize = 1_000;
const REFINE_ROUNDS: usize = 3;
const REFINE_POINTS: usize = 20;

/// The three noise-gain products every closed form is built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseProducts {
    /// `σ_r² h_rd²`, RIS noise reaching the user per unit `ρ²`.
    pub ris: f64,
    /// `σ² h_sr²`
    pub rx: f64,
    /// `σ² σ_r²`
    pub cross: f64,
}

impl NoiseProducts {
    pub fn new(params: &SystemParams, gains: &ChannelGains) -> Self {
        NoiseProducts {
            ris: params.sigma_r2 * gains.h_rd2,
            rx: params.sigma2 * gains.h_sr2,
            cross: params.sigma2 * params.sigma_r2,
        }
    }

    /// `σ_r² h_rd² - σ² h_sr²`
    pub fn gap(&self) -> f64 {
        self.ris - self.rx
    }

    pub fn is_degenerate(&self) -> bool {
        self.gap().abs() <= DEGENERACY_TOL * self.ris.max(self.rx)
    }

    /// `√((C b + s) / (C a + s))`
    fn ratio(&self, c: f64) -> f64 {
        ((c * self.rx + self.cross) / (c * self.ris + self.cross)).sqrt()
    }
}

pub fn is_degenerate(params: &SystemParams, gains: &ChannelGains) -> bool {
    NoiseProducts::new(params, gains).is_degenerate()
}

/// Which case of the optimal split applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `σ_r² h_rd² = σ² h_sr²` (within [`DEGENERACY_TOL`]): `P* = C/2`.
    EqualSplit,
    ClosedForm,
    /// `C <= 0`, nothing to allocate.
    Infeasible,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AllocationResult {
    pub p_bs_star: f64,
    pub p_ris_star: f64,
    pub rho2_star: f64,
    pub snr_star: f64,
    pub branch: Branch,
}

impl AllocationResult {
    fn infeasible() -> Self {
        AllocationResult {
            p_bs_star: 0.0,
            p_ris_star: 0.0,
            rho2_star: 0.0,
            snr_star: 0.0,
            branch: Branch::Infeasible,
        }
    }
}

/// Closed-form optimal BS power for available power `c`.
fn p_bs_star(c: f64, np: &NoiseProducts) -> f64 {
    if np.is_degenerate() {
        c / 2.0
    } else {
        c / (1.0 + np.ratio(c))
    }
}

/// SNR-maximizing split of `c` between BS and RIS.
pub fn optimal_p_bs(c: f64, params: &SystemParams, gains: &ChannelGains) -> AllocationResult {
    if !(c > 0.0) {
        return AllocationResult::infeasible();
    }
    let np = NoiseProducts::new(params, gains);
    let branch = if np.is_degenerate() {
        Branch::EqualSplit
    } else {
        Branch::ClosedForm
    };
    let p_bs = p_bs_star(c, &np);
    debug_assert!(p_bs > 0.0 && p_bs < c);
    // p_bs < c by construction, so the split is always feasible
    let rho2 = rho2_from_split(p_bs, c, params, gains).unwrap_or(0.0);
    AllocationResult {
        p_bs_star: p_bs,
        p_ris_star: c - p_bs,
        rho2_star: rho2,
        snr_star: snr_active(p_bs, rho2, gains, params),
        branch,
    }
}

/// The unrationalized root
/// `(C a + s - √((C b + s)(C a + s))) / (a - b)`.
///
/// Returns `None` when `a == b` exactly. Loses precision close to the
/// degenerate manifold; use [`optimal_p_bs`] for anything but checks.
pub fn closed_form_textbook(c: f64, params: &SystemParams, gains: &ChannelGains) -> Option<f64> {
    let np = NoiseProducts::new(params, gains);
    let gap = np.gap();
    if gap == 0.0 {
        return None;
    }
    let b0 = c * np.ris + np.cross;
    let disc = ((c * np.rx + np.cross) * b0).sqrt();
    Some((b0 - disc) / gap)
}

/// Both roots of `f₁` in the `±` form, `(minus, plus)`.
pub fn f1_roots(c: f64, params: &SystemParams, gains: &ChannelGains) -> Option<(f64, f64)> {
    let np = NoiseProducts::new(params, gains);
    let gap = np.gap();
    if gap == 0.0 {
        return None;
    }
    let b0 = c * np.ris + np.cross;
    let disc = ((c * np.rx + np.cross) * b0).sqrt();
    Some(((b0 - disc) / gap, (b0 + disc) / gap))
}

/// Numerator polynomial of `∂γ/∂P`; positive left of the optimum and
/// negative right of it.
pub fn f1(p_bs: f64, c: f64, params: &SystemParams, gains: &ChannelGains) -> f64 {
    let np = NoiseProducts::new(params, gains);
    let b0 = c * np.ris + np.cross;
    np.gap() * p_bs * p_bs - 2.0 * b0 * p_bs + c * b0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSearchResult {
    pub p_bs: f64,
    pub snr: f64,
    /// Spacing of the initial uniform grid, `C / resolution`.
    pub coarse_step: f64,
    /// Spacing of the last refinement round.
    pub final_step: f64,
}

fn argmax_on(lo: f64, hi: f64, intervals: usize, eval: impl Fn(f64) -> f64) -> (f64, f64) {
    let width = hi - lo;
    let mut best = (lo, eval(lo));
    for i in 1..=intervals {
        let p = if i == intervals {
            hi
        } else {
            lo + width * i as f64 / intervals as f64
        };
        let v = eval(p);
        if v > best.1 {
            best = (p, v);
        }
    }
    best
}

/// Brute-force maximizer of the active SNR over `[0, C]`: a uniform grid
/// of `resolution` intervals followed by three rounds of local refinement
/// around the incumbent. Evaluates the SNR directly and knows nothing about
/// the closed form.
pub fn oracle_grid_search(
    c: f64,
    params: &SystemParams,
    gains: &ChannelGains,
    resolution: usize,
) -> Result<GridSearchResult> {
    if !(c > 0.0) {
        return Err(Error::InfeasibleActive { c });
    }
    if resolution < MIN_ORACLE_RESOLUTION {
        return Err(Error::InvalidParameter {
            name: "resolution",
            reason: format!(
                "need at least {MIN_ORACLE_RESOLUTION} grid intervals, got {resolution}"
            ),
        });
    }
    let eval = |p: f64| snr_active_objective(p, c, params, gains);
    let coarse_step = c / resolution as f64;
    let (mut p, mut v) = argmax_on(0.0, c, resolution, eval);
    let mut step = coarse_step;
    for _ in 0..REFINE_ROUNDS {
        let lo = (p - step).max(0.0);
        let hi = (p + step).min(c);
        let (rp, rv) = argmax_on(lo, hi, REFINE_POINTS, eval);
        if rv > v {
            p = rp;
            v = rv;
        }
        step = (hi - lo) / REFINE_POINTS as f64;
    }
    Ok(GridSearchResult {
        p_bs: p,
        snr: v,
        coarse_step,
        final_step: step,
    })
}

/// `f₂(C) = (2 C h_sr² h_rd² + σ² h_sr² + σ_r² h_rd²)² / (4 (C b + s)(C a + s))`.
pub fn f2(c: f64, params: &SystemParams, gains: &ChannelGains) -> f64 {
    let np = NoiseProducts::new(params, gains);
    let top = 2.0 * c * gains.h_sr2 * gains.h_rd2 + np.rx + np.ris;
    top * top / (4.0 * (c * np.rx + np.cross) * (c * np.ris + np.cross))
}

/// `∂P*/∂C`, differentiated from the rationalized root.
///
/// Tends to 1/2 as `C → 0` and to `√a / (√a + √b)` as `C → ∞`, and lies in
/// `(0, 1)` in between.
pub fn dpbs_dc(c: f64, params: &SystemParams, gains: &ChannelGains) -> f64 {
    let np = NoiseProducts::new(params, gains);
    if np.is_degenerate() {
        return 0.5;
    }
    let r = np.ratio(c);
    let ca = c * np.ris + np.cross;
    1.0 / (1.0 + r) + c * np.cross * np.gap() / (2.0 * r * (1.0 + r).powi(2) * ca * ca)
}

/// `∂P*/∂C = (σ_r² h_rd² - σ² σ_r² √f₂(C)) / (σ_r² h_rd² - σ² h_sr²)`,
/// the form obtained by differentiating the textbook root directly.
pub fn dpbs_dc_textbook(c: f64, params: &SystemParams, gains: &ChannelGains) -> f64 {
    let np = NoiseProducts::new(params, gains);
    (np.ris - np.cross * f2(c, params, gains).sqrt()) / np.gap()
}

/// `∂(P_BS* - P_RIS*)/∂C = 2 ∂P*/∂C - 1`. Positive for every `C > 0` when
/// `σ_r² h_rd² > σ² h_sr²`, negative when the inequality flips, zero in
/// the `C → 0` limit.
pub fn f3_derivative(c: f64, params: &SystemParams, gains: &ChannelGains) -> f64 {
    let np = NoiseProducts::new(params, gains);
    if np.is_degenerate() {
        return 0.0;
    }
    let r = np.ratio(c);
    let ca = c * np.ris + np.cross;
    // 2/(1+r) - 1 written without the subtraction
    (1.0 - r) / (1.0 + r) + c * np.cross * np.gap() / (r * (1.0 + r).powi(2) * ca * ca)
}

/// `(σ_r² h_rd² + σ² h_sr² - 2 σ² σ_r² √f₂(C)) / (σ_r² h_rd² - σ² h_sr²)`.
pub fn f3_derivative_textbook(c: f64, params: &SystemParams, gains: &ChannelGains) -> f64 {
    let np = NoiseProducts::new(params, gains);
    (np.ris + np.rx - 2.0 * np.cross * f2(c, params, gains).sqrt()) / np.gap()
}

/// `lim_{C→∞} ∂P*/∂C = (a - √(ab)) / (a - b) = √a / (√a + √b)`.
pub fn large_c_slope(params: &SystemParams, gains: &ChannelGains) -> f64 {
    let np = NoiseProducts::new(params, gains);
    let (sa, sb) = (np.ris.sqrt(), np.rx.sqrt());
    sa / (sa + sb)
}

/// `f₄(C) = (C + N P_DC) ∂P*/∂C - P*`, the numerator of `∂g/∂C` where
/// `g = P* / P_BS^pas`.
pub fn f4(c: f64, params: &SystemParams, gains: &ChannelGains) -> f64 {
    let np = NoiseProducts::new(params, gains);
    let p = if c > 0.0 { p_bs_star(c, &np) } else { 0.0 };
    (c + params.n() * params.p_dc) * dpbs_dc(c, params, gains) - p
}

/// Limit of `f₄` as `C → ∞`:
///
/// `s ((b + a)/(2√(ab)) - 1) / (a - b) + N P_DC (a - √(ab)) / (a - b)`.
///
/// The first term has the sign of `a - b`; the second is always positive.
pub fn f4_at_infinity(params: &SystemParams, gains: &ChannelGains) -> f64 {
    let np = NoiseProducts::new(params, gains);
    let (sa, sb) = (np.ris.sqrt(), np.rx.sqrt());
    let npdc = params.n() * params.p_dc;
    if np.is_degenerate() {
        return npdc / 2.0;
    }
    // (b + a)/(2√(ab)) - 1 = (√a - √b)² / (2√(ab)); divided by a - b
    let first = np.cross * (sa - sb) / (2.0 * sa * sb * (sa + sb));
    first + npdc * sa / (sa + sb)
}

/// Analytic limits of `P*` as `σ_r² → 0` and `σ_r² → ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RisNoiseLimits {
    /// Always zero: a noiseless RIS takes the whole budget.
    pub low: f64,
    /// `C + σ²/h_rd² - √(σ²/h_rd² (C + σ²/h_rd²))`
    pub high: f64,
}

pub fn ris_noise_limits(params: &SystemParams, gains: &ChannelGains, c: f64) -> RisNoiseLimits {
    let t = params.sigma2 / gains.h_rd2;
    // C + t - √(t(C + t)) = C √(C + t) / (√(C + t) + √t)
    let root = (c + t).sqrt();
    RisNoiseLimits {
        low: 0.0,
        high: c * root / (root + t.sqrt()),
    }
}
