//! Parameter sweeps over the array size, the power budget or the RIS
//! position, with CSV output.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use crate::allocation::{is_degenerate, optimal_p_bs};
use crate::channel::ChannelGains;
use crate::error::{Error, Result};
use crate::power::{
    available_power_c, p_bs_passive, rate, rho2_from_split, snr_active, snr_passive,
};
use crate::units::{dbm_to_watts, watts_to_dbm, SystemParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    NElements,
    QTotDbm,
    XRisM,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::NElements => "n_elements",
            SweepAxis::QTotDbm => "q_tot_dbm",
            SweepAxis::XRisM => "x_ris_m",
        }
    }

    /// `N ∈ {16, 32, …, 4096}`, `Q_tot ∈ {20, …, 40}` dBm in 1 dB steps,
    /// `x_RIS ∈ {10, …, 90}` m in 10 m steps.
    pub fn default_values(self) -> Vec<f64> {
        match self {
            SweepAxis::NElements => (4..=12).map(|k| f64::from(1u32 << k)).collect(),
            SweepAxis::QTotDbm => (20..=40).map(f64::from).collect(),
            SweepAxis::XRisM => (1..=9).map(|k| f64::from(10 * k)).collect(),
        }
    }

    /// `params` with the swept quantity set to `value`.
    pub fn apply(self, params: &SystemParams, value: f64) -> Result<SystemParams> {
        match self {
            SweepAxis::NElements => {
                if !(value >= 1.0 && value.fract() == 0.0 && value <= f64::from(u32::MAX)) {
                    return Err(Error::Config(format!(
                        "N must be a positive integer, got {value}"
                    )));
                }
                Ok(params.with_n_elements(value as u32))
            }
            SweepAxis::QTotDbm => Ok(params.with_q_tot(dbm_to_watts(value))),
            SweepAxis::XRisM => Ok(params.with_x_ris(value)),
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "n" | "n_elements" => Ok(SweepAxis::NElements),
            "qtot" | "q_tot" | "q_tot_dbm" => Ok(SweepAxis::QTotDbm),
            "xris" | "x_ris" | "x_ris_m" => Ok(SweepAxis::XRisM),
            other => Err(Error::Config(format!("unknown sweep axis `{other}`"))),
        }
    }
}

/// Parses `start:stop:step` into an inclusive ascending grid.
pub fn parse_values(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::Config(format!("expected start:stop:step, got `{spec}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !(step > 0.0) || !(stop >= start) || !start.is_finite() || !stop.is_finite() {
        return Err(bad());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(Error::Config(format!(
            "grid `{spec}` has {count} points, too many"
        )));
    }
    Ok((0..count).map(|i| start + step * i as f64).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: SystemParams,
    pub axis: SweepAxis,
    pub values: Vec<f64>,
    pub output_path: Option<PathBuf>,
    /// Emit the equal-allocation (`P_BS = C/2`) column.
    pub baseline: bool,
}

impl SweepSpec {
    pub fn new(base: SystemParams, axis: SweepAxis) -> Self {
        SweepSpec {
            base,
            axis,
            values: axis.default_values(),
            output_path: None,
            baseline: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::Config("sweep needs at least one value".into()));
        }
        if self.values.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Config(
                "sweep values must be strictly ascending".into(),
            ));
        }
        self.base.validate()
    }
}

/// One point of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub axis: SweepAxis,
    pub value: f64,
    /// Power left for BS and RIS amplifiers; may be non-positive.
    pub c: f64,
    pub p_bs_star: f64,
    pub p_ris_star: f64,
    pub rho2_star: f64,
    pub rate_act_opt: f64,
    /// Active rate with `P_BS = P_RIS = C/2`.
    pub rate_act_equal: f64,
    pub rate_pas: f64,
    pub p_bs_pas: f64,
    pub active_feasible: bool,
    pub passive_feasible: bool,
    pub degenerate: bool,
}

fn sweep_point(axis: SweepAxis, value: f64, params: &SystemParams) -> Result<SweepRow> {
    let gains = ChannelGains::from_params(params)?;
    let c = available_power_c(params);
    let alloc = optimal_p_bs(c, params, &gains);
    let active_feasible = c > 0.0;
    let rate_act_equal = if active_feasible {
        let rho2 = rho2_from_split(c / 2.0, c, params, &gains)?;
        rate(snr_active(c / 2.0, rho2, &gains, params))
    } else {
        0.0
    };
    let (p_bs_pas, rate_pas, passive_feasible) = match p_bs_passive(params) {
        Ok(p) => (p, rate(snr_passive(p, &gains, params)), true),
        Err(Error::InfeasiblePassive { .. }) => (0.0, 0.0, false),
        Err(e) => return Err(e),
    };
    Ok(SweepRow {
        axis,
        value,
        c,
        p_bs_star: alloc.p_bs_star,
        p_ris_star: alloc.p_ris_star,
        rho2_star: alloc.rho2_star,
        rate_act_opt: rate(alloc.snr_star),
        rate_act_equal,
        rate_pas,
        p_bs_pas,
        active_feasible,
        passive_feasible,
        degenerate: is_degenerate(params, &gains),
    })
}

/// Evaluates every grid point in order. Points where a system cannot run
/// are kept, flagged and given zero rate.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    spec.values
        .iter()
        .map(|&v| {
            let params = spec.axis.apply(&spec.base, v)?;
            sweep_point(spec.axis, v, &params)
        })
        .collect()
}

/// Fixed 12-significant-digit formatting so that output is byte-stable.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        // normalizes -0.0
        return format!("{:.11e}", 0.0);
    }
    format!("{x:.11e}")
}

fn dbm_field(w: f64) -> String {
    watts_to_dbm(w).map(format_float).unwrap_or_default()
}

pub fn csv_header(baseline: bool) -> Vec<&'static str> {
    let mut h = vec![
        "axis",
        "value",
        "c_w",
        "c_dbm",
        "p_bs_star_w",
        "p_bs_star_dbm",
        "p_ris_star_w",
        "p_ris_star_dbm",
        "rho2_star",
        "p_bs_pas_w",
        "p_bs_pas_dbm",
        "rate_act_opt",
    ];
    if baseline {
        h.push("rate_act_equal");
    }
    h.extend(["rate_pas", "active_feasible", "passive_feasible"]);
    h
}

/// Writes rows as CSV. Non-positive powers leave their dBm column empty.
pub fn write_csv<W: Write>(rows: &[SweepRow], out: W, baseline: bool) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(csv_header(baseline))?;
    for r in rows {
        let mut rec = vec![
            r.axis.name().to_string(),
            format_float(r.value),
            format_float(r.c),
            dbm_field(r.c),
            format_float(r.p_bs_star),
            dbm_field(r.p_bs_star),
            format_float(r.p_ris_star),
            dbm_field(r.p_ris_star),
            format_float(r.rho2_star),
            format_float(r.p_bs_pas),
            dbm_field(r.p_bs_pas),
            format_float(r.rate_act_opt),
        ];
        if baseline {
            rec.push(format_float(r.rate_act_equal));
        }
        rec.push(format_float(r.rate_pas));
        rec.push(r.active_feasible.to_string());
        rec.push(r.passive_feasible.to_string());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(axis: SweepAxis) -> Vec<SweepRow> {
        run_sweep(&SweepSpec::new(SystemParams::default(), axis)).unwrap()
    }

    #[test]
    fn default_grids() {
        assert_eq!(SweepAxis::NElements.default_values().first(), Some(&16.0));
        assert_eq!(SweepAxis::NElements.default_values().last(), Some(&4096.0));
        assert_eq!(SweepAxis::QTotDbm.default_values().len(), 21);
        assert_eq!(
            SweepAxis::XRisM.default_values(),
            vec![10., 20., 30., 40., 50., 60., 70., 80., 90.]
        );
    }

    #[test]
    fn location_sweep_active_always_wins() {
        let rows = run(SweepAxis::XRisM);
        assert_eq!(rows.len(), 9);
        for r in &rows {
            assert!(r.rate_act_opt > r.rate_pas, "x = {}", r.value);
        }
    }

    #[test]
    fn budget_sweep_passive_rate_increases() {
        let rows = run(SweepAxis::QTotDbm);
        for w in rows.windows(2) {
            assert!(w[1].rate_pas > w[0].rate_pas);
        }
    }

    #[test]
    fn n_sweep_hits_default_rates() {
        let rows = run(SweepAxis::NElements);
        let r = rows.iter().find(|r| r.value == 256.0).unwrap();
        assert!((r.rate_act_opt - 17.67).abs() < 0.18);
        assert!((r.rate_pas - 8.61).abs() < 0.09);
        // 4096 elements exhaust the budget for the active system
        let last = rows.last().unwrap();
        assert!(!last.active_feasible);
        assert_eq!(last.rate_act_opt, 0.0);
        assert!(last.passive_feasible);
    }

    #[test]
    fn optimal_never_loses_to_equal_split() {
        for axis in [SweepAxis::NElements, SweepAxis::QTotDbm, SweepAxis::XRisM] {
            for r in run(axis) {
                assert!(r.rate_act_opt >= r.rate_act_equal);
                if r.active_feasible && !r.degenerate {
                    assert!(r.rate_act_opt > r.rate_act_equal, "{axis} = {}", r.value);
                }
            }
        }
    }

    #[test]
    fn passive_infeasible_rows_are_flagged() {
        let spec = SweepSpec {
            values: vec![5.0, 10.0, 30.0],
            ..SweepSpec::new(SystemParams::default(), SweepAxis::QTotDbm)
        };
        let rows = run_sweep(&spec).unwrap();
        assert!(!rows[0].passive_feasible);
        assert_eq!(rows[0].rate_pas, 0.0);
        assert!(rows[2].passive_feasible);
    }

    #[test]
    fn malformed_specs() {
        let mut spec = SweepSpec::new(SystemParams::default(), SweepAxis::XRisM);
        spec.values = vec![];
        assert!(run_sweep(&spec).is_err());
        spec.values = vec![10.0, 10.0];
        assert!(run_sweep(&spec).is_err());
        let spec = SweepSpec {
            values: vec![1.5],
            ..SweepSpec::new(SystemParams::default(), SweepAxis::NElements)
        };
        assert!(run_sweep(&spec).is_err());
    }

    #[test]
    fn value_ranges() {
        assert_eq!(parse_values("10:90:10").unwrap().len(), 9);
        assert_eq!(parse_values("20:40:0.5").unwrap().len(), 41);
        assert_eq!(parse_values("1:1:1").unwrap(), vec![1.0]);
        assert!(parse_values("1:2").is_err());
        assert!(parse_values("5:1:1").is_err());
        assert!(parse_values("1:5:0").is_err());
        assert!(parse_values("a:b:c").is_err());
    }

    #[test]
    fn axis_names_parse() {
        assert_eq!("n".parse::<SweepAxis>().unwrap(), SweepAxis::NElements);
        assert_eq!("qtot".parse::<SweepAxis>().unwrap(), SweepAxis::QTotDbm);
        assert_eq!("xris".parse::<SweepAxis>().unwrap(), SweepAxis::XRisM);
        assert!("y".parse::<SweepAxis>().is_err());
    }

    #[test]
    fn csv_layout() {
        let rows = run(SweepAxis::XRisM);
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf, true).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 10);
        assert!(lines[0].starts_with("axis,value,c_w,c_dbm"));
        assert!(lines[0].contains("rate_act_equal"));
        assert_eq!(lines[1].split(',').count(), csv_header(true).len());

        let mut buf = Vec::new();
        write_csv(&rows, &mut buf, false).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(!text.contains("rate_act_equal"));
    }

    #[test]
    fn float_format_is_fixed() {
        assert_eq!(format_float(17.5), "1.75000000000e1");
        assert_eq!(format_float(-0.0), format_float(0.0));
    }
}
