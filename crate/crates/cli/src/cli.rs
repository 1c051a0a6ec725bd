//! Command-line surface: flag definitions and the dispatch into settings.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::CliResult;
use crate::presets;
use crate::settings::{f64_to_config, Settings};

#[derive(Debug, Parser)]
#[command(
    name = "sirsec",
    version,
    about = "Secrecy performance of k-th best user selection in interference-limited networks",
    long_about = "Evaluates secrecy outage probability, probability of strictly positive \
                  secrecy capacity and ergodic secrecy capacity for a multiuser downlink \
                  with a multi-antenna eavesdropper, by closed forms, adaptive quadrature \
                  and seeded Monte Carlo simulation. Output is CSV."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one metric with one method at one parameter point (CSV on stdout)
    Eval(EvalArgs),
    /// Sweep one parameter and write a CSV file
    Sweep(SweepArgs),
    /// Run a built-in parameter study (2, 3 or 4)
    Figure(FigureArgs),
    /// Run the full validation suite (cross-oracle checks)
    Validate(ValidateArgs),
    /// Print the fully resolved configuration as reusable key=value lines
    DumpConfig(DumpArgs),
}

/// Channel, selection and simulation flags shared by eval/sweep/dump-config.
#[derive(Debug, Args, Default, Clone)]
pub struct CommonOpts {
    /// Plain-text key=value configuration file; explicit flags override it
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Serving-to-interfering transmit power ratio ρ [default: 2]
    #[arg(long)]
    pub power_ratio: Option<f64>,
    /// Rate of the interferer-to-user channel gain β_M [default: 2]
    #[arg(long)]
    pub beta_m: Option<f64>,
    /// Rate of the serving-to-user channel gain λ_M [default: 0.5]
    #[arg(long)]
    pub lambda_m: Option<f64>,
    /// Rate of the interferer-to-eavesdropper gain β_E [default: 5]
    #[arg(long)]
    pub beta_e: Option<f64>,
    /// Rate of the serving-to-eavesdropper gain λ_E [default: 4]
    #[arg(long)]
    pub lambda_e: Option<f64>,
    /// Number of users N
    #[arg(long)]
    pub n: Option<u32>,
    /// Selection rank k (1 = best user)
    #[arg(long)]
    pub k: Option<u32>,
    /// Eavesdropper antennas L
    #[arg(long)]
    pub l: Option<u32>,
    /// Target secrecy rate R_s in bits/s/Hz [default: 0]
    #[arg(long)]
    pub rs: Option<f64>,
    /// Monte Carlo samples [default: 1000000]
    #[arg(long)]
    pub samples: Option<u64>,
    /// Master random seed, echoed into the CSV [default: 42]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Samples per parallel task (scheduling only; estimates are invariant)
    #[arg(long)]
    pub batch_size: Option<u64>,
}

impl CommonOpts {
    fn apply(&self, settings: &mut Settings) {
        settings.set_if("power-ratio", &self.power_ratio.map(f64_to_config));
        settings.set_if("beta-m", &self.beta_m.map(f64_to_config));
        settings.set_if("lambda-m", &self.lambda_m.map(f64_to_config));
        settings.set_if("beta-e", &self.beta_e.map(f64_to_config));
        settings.set_if("lambda-e", &self.lambda_e.map(f64_to_config));
        settings.set_if("n", &self.n);
        settings.set_if("k", &self.k);
        settings.set_if("l", &self.l);
        settings.set_if("rs", &self.rs.map(f64_to_config));
        settings.set_if("samples", &self.samples);
        settings.set_if("seed", &self.seed);
        settings.set_if("batch-size", &self.batch_size);
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub common: CommonOpts,
    /// Metric: sop, spsc or esc
    #[arg(long)]
    pub metric: Option<String>,
    /// Method: exact, asymptotic_n, asymptotic_nl, quadrature or monte_carlo
    #[arg(long)]
    pub method: Option<String>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonOpts,
    /// Metric: sop, spsc or esc
    #[arg(long)]
    pub metric: Option<String>,
    /// Comma-separated methods, e.g. exact,asymptotic_n,monte_carlo
    #[arg(long)]
    pub methods: Option<String>,
    /// Swept variable: n_users, eve_antennas, rate or rank
    #[arg(long)]
    pub var: Option<String>,
    /// Explicit comma-separated sweep values (alternative to --from/--to/--step)
    #[arg(long)]
    pub values: Option<String>,
    /// Range sweep: first value
    #[arg(long)]
    pub from: Option<f64>,
    /// Range sweep: last value (inclusive)
    #[arg(long)]
    pub to: Option<f64>,
    /// Range sweep: step
    #[arg(long)]
    pub step: Option<f64>,
    /// Tie eve_antennas = n_users while sweeping either
    #[arg(long)]
    pub lockstep: bool,
    /// Output CSV path
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Which study: 2 (SOP vs N), 3 (SOP vs L), 4 (ESC vs N)
    pub which: u8,
    /// Selection rank k (study 2/3: 1 or 2; study 4: 1, 2 or 3)
    #[arg(long)]
    pub k: Option<u32>,
    /// Target secrecy rate (study 2 only: 1 or 4)
    #[arg(long)]
    pub rs: Option<f64>,
    /// Study 3: sweep with N = L instead of fixed N = 20
    #[arg(long)]
    pub lockstep: bool,
    /// Output CSV path
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Monte Carlo samples override
    #[arg(long)]
    pub samples: Option<u64>,
    /// Master random seed override
    #[arg(long)]
    pub seed: Option<u64>,
    /// Samples per parallel task
    #[arg(long)]
    pub batch_size: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Reduced grids and sample counts (seconds instead of minutes)
    #[arg(long)]
    pub quick: bool,
    /// Perturb β_M by 1% on the closed-form side (sensitivity self-test)
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Args)]
pub struct DumpArgs {
    #[command(flatten)]
    pub sweep: SweepArgs,
    /// Dump a figure preset instead of flag/file settings
    #[arg(long)]
    pub figure: Option<u8>,
    /// Method for eval-style configs
    #[arg(long)]
    pub method: Option<String>,
}

/// Merge config file and flags into the resolution map (file first).
pub fn settings_for_eval(args: &EvalArgs) -> CliResult<Settings> {
    let mut s = Settings::new();
    if let Some(path) = &args.common.config {
        s.load_file(path)?;
    }
    args.common.apply(&mut s);
    s.set_if("metric", &args.metric);
    s.set_if("method", &args.method);
    Ok(s)
}

pub fn settings_for_sweep(args: &SweepArgs) -> CliResult<Settings> {
    let mut s = Settings::new();
    if let Some(path) = &args.common.config {
        s.load_file(path)?;
    }
    args.common.apply(&mut s);
    s.set_if("metric", &args.metric);
    s.set_if("methods", &args.methods);
    s.set_if("var", &args.var);
    s.set_if("values", &args.values);
    s.set_if("from", &args.from.map(f64_to_config));
    s.set_if("to", &args.to.map(f64_to_config));
    s.set_if("step", &args.step.map(f64_to_config));
    if args.lockstep {
        s.set("lockstep", "true".into());
    }
    s.set_if(
        "output",
        &args.output.as_ref().map(|p| p.display().to_string()),
    );
    Ok(s)
}

pub fn settings_for_figure(args: &FigureArgs) -> CliResult<Settings> {
    let mut s = presets::figure_settings(args.which, args.k, args.rs, args.lockstep)?;
    s.set_if("samples", &args.samples);
    s.set_if("seed", &args.seed);
    s.set_if("batch-size", &args.batch_size);
    s.set_if(
        "output",
        &args.output.as_ref().map(|p| p.display().to_string()),
    );
    Ok(s)
}

pub fn settings_for_dump(args: &DumpArgs) -> CliResult<Settings> {
    if let Some(which) = args.figure {
        let fig = FigureArgs {
            which,
            k: args.sweep.common.k,
            rs: args.sweep.common.rs,
            lockstep: args.sweep.lockstep,
            output: args.sweep.output.clone(),
            samples: args.sweep.common.samples,
            seed: args.sweep.common.seed,
            batch_size: args.sweep.common.batch_size,
        };
        return settings_for_figure(&fig);
    }
    let mut s = settings_for_sweep(&args.sweep)?;
    s.set_if("method", &args.method);
    Ok(s)
}
