//! Shared generators and numerical oracles for the integration suites.
#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ris_budget::power::available_power_c;
use ris_budget::{ChannelGains, SystemParams};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn log_uniform<R: Rng>(rng: &mut R, lo_exp: f64, hi_exp: f64) -> f64 {
    10f64.powf(rng.gen_range(lo_exp..hi_exp))
}

/// One randomized scenario with positive available power.
#[derive(Debug, Clone)]
pub struct Draw {
    pub params: SystemParams,
    pub gains: ChannelGains,
    pub c: f64,
}

/// Noise and hardware powers log-uniform over six decades, the RIS
/// uniform on `x ∈ (5, 95)` at 10 m height, and the budget chosen so that
/// `C` is itself log-uniform over six decades.
pub fn random_draw<R: Rng>(rng: &mut R) -> Draw {
    let n_elements = rng.gen_range(1..=1024u32);
    let sigma2 = log_uniform(rng, -13.0, -7.0);
    let sigma_r2 = log_uniform(rng, -13.0, -7.0);
    let p_dc = log_uniform(rng, -7.0, -1.0);
    let p_sw = log_uniform(rng, -7.0, -1.0);
    let c = log_uniform(rng, -4.0, 2.0);
    let n = f64::from(n_elements);
    let params = SystemParams {
        n_elements,
        sigma2,
        sigma_r2,
        p_dc,
        p_sw,
        q_tot: c + n * (p_sw + p_dc),
        ..SystemParams::default()
    }
    .with_x_ris(rng.gen_range(5.0..95.0));
    let gains = ChannelGains::from_params(&params).unwrap();
    let c = available_power_c(&params);
    assert!(c > 0.0);
    Draw { params, gains, c }
}

/// Draws bounded away from `σ_r² h_rd² = σ² h_sr²` by `min_gap` relative.
pub fn random_nondegenerate_draw<R: Rng>(rng: &mut R, min_gap: f64) -> Draw {
    loop {
        let d = random_draw(rng);
        let a = d.params.sigma_r2 * d.gains.h_rd2;
        let b = d.params.sigma2 * d.gains.h_sr2;
        if (a - b).abs() > min_gap * a.max(b) {
            return d;
        }
    }
}

/// Five-point central difference with Richardson extrapolation.
pub fn central_diff(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let r3 = 0.5 * (f(x + h) - f(x - h));
    let r5 = (4.0 / 3.0) * (f(x + h / 2.0) - f(x - h / 2.0)) - r3 / 3.0;
    r5 / h
}

/// `n+1` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..=n)
        .map(|i| lo + (hi - lo) * i as f64 / n as f64)
        .collect()
}

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.log10(), hi.log10());
    (0..n)
        .map(|i| 10f64.powf(a + (b - a) * i as f64 / (n - 1) as f64))
        .collect()
}
