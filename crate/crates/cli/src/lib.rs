//! Argument handling for the `ris-budget` binary, kept in a library so the
//! whole command can be driven from tests.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use ris_budget::allocation::Branch;
use ris_budget::comparison::equal_split_bounds;
use ris_budget::config::load_params;
use ris_budget::power::available_power_c;
use ris_budget::sweep::{parse_values, write_csv};
use ris_budget::{
    compare, optimal_p_bs, rate, run_sweep, watts_to_dbm, ChannelGains, SweepAxis, SweepSpec,
    SystemParams,
};

#[derive(Debug, Parser)]
#[command(
    name = "ris-budget",
    version,
    about = "Active vs. passive RIS under a shared power budget"
)]
struct Cli {
    /// Key/value (TOML) or JSON file overriding the default scenario.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimal BS/RIS power split for the configured scenario.
    Allocate,
    /// Active vs. passive verdict with both rates.
    Compare,
    /// Evaluate a parameter grid and write CSV.
    Sweep {
        #[arg(long, value_enum)]
        axis: AxisArg,
        /// Grid as start:stop:step; defaults depend on the axis.
        #[arg(long, value_name = "A:B:STEP")]
        values: Option<String>,
        /// Output file; stdout when absent.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Toggle::On)]
        baseline: Toggle,
    },
    /// Equal-split sufficient condition: print both sides.
    Verify,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AxisArg {
    N,
    Qtot,
    Xris,
}

impl From<AxisArg> for SweepAxis {
    fn from(a: AxisArg) -> Self {
        match a {
            AxisArg::N => SweepAxis::NElements,
            AxisArg::Qtot => SweepAxis::QTotDbm,
            AxisArg::Xris => SweepAxis::XRisM,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Toggle {
    On,
    Off,
}

/// Runs the command line `argv` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn cli_main<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            1
        }
    }
}

fn load(cli: &Cli) -> anyhow::Result<SystemParams> {
    match &cli.config {
        Some(path) => {
            load_params(path).with_context(|| format!("loading config {}", path.display()))
        }
        None => Ok(SystemParams::default()),
    }
}

fn dbm(w: f64) -> String {
    match watts_to_dbm(w) {
        Ok(d) => format!("{d:.3} dBm"),
        Err(_) => "-inf dBm".into(),
    }
}

fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<()> {
    let params = load(&cli)?;
    match cli.command {
        Command::Allocate => allocate(&params, out),
        Command::Compare => {
            let v = compare(&params)?;
            writeln!(out, "winner        {}", v.winner)?;
            writeln!(out, "gamma_act     {:.6e}", v.gamma_act)?;
            writeln!(out, "gamma_pas     {:.6e}", v.gamma_pas)?;
            writeln!(out, "rate_act      {:.6} bps/Hz", v.rate_act)?;
            writeln!(out, "rate_pas      {:.6} bps/Hz", v.rate_pas)?;
            writeln!(out, "g(C)          {:.6}", v.g_of_c)?;
            writeln!(out, "passive_sure  {}", v.passive_guaranteed)?;
            writeln!(out, "active_sure   {}", v.active_guaranteed)?;
            Ok(())
        }
        Command::Sweep {
            axis,
            values,
            out: path,
            baseline,
        } => {
            let mut spec = SweepSpec::new(params, axis.into());
            if let Some(v) = values {
                spec.values = parse_values(&v)?;
            }
            spec.baseline = baseline == Toggle::On;
            spec.output_path = path;
            let rows = run_sweep(&spec)?;
            for r in rows
                .iter()
                .filter(|r| !r.passive_feasible || !r.active_feasible)
            {
                writeln!(
                    err,
                    "warning: {} = {}: active feasible {}, passive feasible {}; rates set to 0",
                    r.axis, r.value, r.active_feasible, r.passive_feasible
                )?;
            }
            match &spec.output_path {
                Some(p) => {
                    let f = File::create(p).with_context(|| format!("creating {}", p.display()))?;
                    let mut w = BufWriter::new(f);
                    write_csv(&rows, &mut w, spec.baseline)?;
                    w.flush()?;
                }
                None => write_csv(&rows, &mut *out, spec.baseline)?,
            }
            Ok(())
        }
        Command::Verify => {
            let gains = ChannelGains::from_params(&params)?;
            let b = equal_split_bounds(&params, &gains)?;
            writeln!(out, "lhs  {:.6e}", b.lhs_lower)?;
            match b.rhs_upper {
                Some(r) => writeln!(out, "rhs  {r:.6}")?,
                None => writeln!(out, "rhs  n/a")?,
            }
            writeln!(out, "active_wins  {}", b.active_wins())?;
            Ok(())
        }
    }
}

fn allocate(params: &SystemParams, out: &mut dyn Write) -> anyhow::Result<()> {
    let gains = ChannelGains::from_params(params)?;
    let c = available_power_c(params);
    let a = optimal_p_bs(c, params, &gains);
    if a.branch == Branch::Infeasible {
        bail!(ris_budget::Error::InfeasibleActive { c });
    }
    let branch = match a.branch {
        Branch::EqualSplit => "equal-split",
        Branch::ClosedForm => "closed-form",
        Branch::Infeasible => unreachable!(),
    };
    writeln!(out, "branch     {branch}")?;
    writeln!(out, "c          {:.6e} W ({})", c, dbm(c))?;
    writeln!(
        out,
        "p_bs       {:.6e} W ({})",
        a.p_bs_star,
        dbm(a.p_bs_star)
    )?;
    writeln!(
        out,
        "p_ris      {:.6e} W ({})",
        a.p_ris_star,
        dbm(a.p_ris_star)
    )?;
    writeln!(out, "p_bs/c     {:.6}", a.p_bs_star / c)?;
    writeln!(out, "rho2       {:.6e}", a.rho2_star)?;
    writeln!(out, "snr        {:.6e}", a.snr_star)?;
    writeln!(out, "rate       {:.6} bps/Hz", rate(a.snr_star))?;
    Ok(())
}

/// Convenience for `main`: real argv and standard streams.
pub fn main_with_std() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    cli_main(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
