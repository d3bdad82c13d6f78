//! Unit conversions, the scalar parameter record and deployment geometry.

use crate::error::{Error, Result};

/// A point in 3-D space, meters.
pub type Point3 = [f64; 3];

/// Converts a power in dBm to watts.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// Converts a power in watts to dBm. Fails for non-positive input.
pub fn watts_to_dbm(watts: f64) -> Result<f64> {
    if !(watts > 0.0) {
        return Err(Error::Domain(format!(
            "cannot express {watts} W in dBm, power must be positive"
        )));
    }
    Ok(10.0 * watts.log10() + 30.0)
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("cannot express {x} in dB")));
    }
    Ok(10.0 * x.log10())
}

fn distance(a: &Point3, b: &Point3) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Every scalar input of the link model. Powers in watts, gains linear.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemParams {
    /// Number of RIS elements `N`.
    pub n_elements: u32,
    /// Receiver noise power `σ²`.
    pub sigma2: f64,
    /// Thermal noise power introduced by the active RIS, `σ_r²`.
    pub sigma_r2: f64,
    /// Per-element DC biasing power of the active amplifiers.
    pub p_dc: f64,
    /// Per-element phase-shift switch and control power.
    pub p_sw: f64,
    /// Total power budget shared by both systems.
    pub q_tot: f64,
    /// Path gain at the 1 m reference distance.
    pub beta0: f64,
    pub alpha_sr: f64,
    pub alpha_rd: f64,
    pub bs_pos: Point3,
    pub user_pos: Point3,
    pub ris_pos: Point3,
}

impl Default for SystemParams {
    /// N = 256, P_DC = -5 dBm, P_SW = -10 dBm, σ² = σ_r² = -70 dBm,
    /// Q_tot = 30 dBm, β₀ = -30 dB, α = 2, BS at the origin, user at
    /// (100, 0, 0) and the RIS at (90, 0, 10).
    fn default() -> Self {
        SystemParams {
            n_elements: 256,
            sigma2: dbm_to_watts(-70.0),
            sigma_r2: dbm_to_watts(-70.0),
            p_dc: dbm_to_watts(-5.0),
            p_sw: dbm_to_watts(-10.0),
            q_tot: dbm_to_watts(30.0),
            beta0: db_to_linear(-30.0),
            alpha_sr: 2.0,
            alpha_rd: 2.0,
            bs_pos: [0.0, 0.0, 0.0],
            user_pos: [100.0, 0.0, 0.0],
            ris_pos: [90.0, 0.0, 10.0],
        }
    }
}

impl SystemParams {
    /// Checks positivity of every power and gain and `N >= 1`.
    ///
    /// Path-loss exponents outside `[2, 4]` are accepted with a warning.
    pub fn validate(&self) -> Result<()> {
        if self.n_elements == 0 {
            return Err(Error::InvalidParameter {
                name: "n_elements",
                reason: "at least one RIS element is required".into(),
            });
        }
        let positive = [
            ("sigma2", self.sigma2),
            ("sigma_r2", self.sigma_r2),
            ("p_dc", self.p_dc),
            ("p_sw", self.p_sw),
            ("q_tot", self.q_tot),
            ("beta0", self.beta0),
            ("alpha_sr", self.alpha_sr),
            ("alpha_rd", self.alpha_rd),
        ];
        for (name, value) in positive {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be finite and strictly positive, got {value}"),
                });
            }
        }
        for (name, alpha) in [("alpha_sr", self.alpha_sr), ("alpha_rd", self.alpha_rd)] {
            if !(2.0..=4.0).contains(&alpha) {
                log::warn!("{name} = {alpha} lies outside the usual range [2, 4]");
            }
        }
        let coords = self
            .bs_pos
            .iter()
            .chain(&self.user_pos)
            .chain(&self.ris_pos);
        if coords.clone().any(|x| !x.is_finite()) {
            return Err(Error::DegenerateGeometry("positions must be finite".into()));
        }
        Ok(())
    }

    pub fn n(&self) -> f64 {
        f64::from(self.n_elements)
    }

    /// Returns a copy with the RIS moved to `x` along the BS-user axis,
    /// keeping its other coordinates.
    pub fn with_x_ris(&self, x: f64) -> Self {
        let mut p = self.clone();
        p.ris_pos[0] = x;
        p
    }

    pub fn with_q_tot(&self, q_tot: f64) -> Self {
        SystemParams {
            q_tot,
            ..self.clone()
        }
    }

    pub fn with_n_elements(&self, n_elements: u32) -> Self {
        SystemParams {
            n_elements,
            ..self.clone()
        }
    }

    pub fn with_sigma_r2(&self, sigma_r2: f64) -> Self {
        SystemParams {
            sigma_r2,
            ..self.clone()
        }
    }
}

/// Euclidean BS-RIS and RIS-user distances.
pub fn link_distances(params: &SystemParams) -> Result<(f64, f64)> {
    let all = params
        .bs_pos
        .iter()
        .chain(&params.user_pos)
        .chain(&params.ris_pos);
    if all.clone().any(|x| !x.is_finite()) {
        return Err(Error::DegenerateGeometry("positions must be finite".into()));
    }
    let d_sr = distance(&params.bs_pos, &params.ris_pos);
    let d_rd = distance(&params.ris_pos, &params.user_pos);
    if d_sr == 0.0 {
        return Err(Error::DegenerateGeometry(
            "RIS coincides with the BS".into(),
        ));
    }
    if d_rd == 0.0 {
        return Err(Error::DegenerateGeometry(
            "RIS coincides with the user".into(),
        ));
    }
    Ok((d_sr, d_rd))
}
