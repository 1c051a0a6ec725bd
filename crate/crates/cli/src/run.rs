//! Plan construction and execution for `eval` and `sweep`.

use std::io::Write;
use std::path::PathBuf;

use rayon::prelude::*;

use sirsec_core::analytic::{
    esc_asymptotic, sop_asymptotic_n, sop_asymptotic_nl, sop_exact, spsc_asymptotic_n, spsc_exact,
    Method,
};
use sirsec_core::oracle::{
    esc_quadrature, mc_estimate, rng::derive_seed, sop_quadrature, SimConfig,
};
use sirsec_core::{ChannelParams, SecrecyTarget, SelectionConfig};

use crate::csv::{Row, HEADER};
use crate::error::{CliError, CliResult};
use crate::settings::Settings;
use crate::sweep_spec::{method_supports, Metric, SweepSpec, SweepVar};

/// Default Monte Carlo sample count for sweeps.
pub const DEFAULT_SWEEP_SAMPLES: u64 = 1_000_000;
/// Default seed, always echoed in the CSV.
pub const DEFAULT_SEED: u64 = 42;
/// Default scheduling batch (samples per parallel task).
pub const DEFAULT_BATCH: u64 = 65_536;

/// Fully resolved inputs for one run.
#[derive(Debug, Clone)]
pub struct Plan {
    pub params: ChannelParams,
    /// Baseline point; the swept variable overrides one of these per row.
    pub n: Option<u32>,
    pub k: u32,
    pub l: Option<u32>,
    pub rs: f64,
    pub samples: u64,
    pub seed: u64,
    pub batch_size: u64,
    pub output: Option<PathBuf>,
}

/// Default channel: the primary reference parameter set (see README).
pub const DEFAULT_CHANNEL: [(&str, f64); 5] = [
    ("power-ratio", 2.0),
    ("beta-m", 2.0),
    ("lambda-m", 0.5),
    ("beta-e", 5.0),
    ("lambda-e", 4.0),
];

pub fn channel_from_settings(settings: &Settings) -> CliResult<ChannelParams> {
    let mut v = [0.0f64; 5];
    for (slot, (key, default)) in v.iter_mut().zip(DEFAULT_CHANNEL) {
        *slot = settings.get_or(key, default)?;
    }
    Ok(ChannelParams::new(v[0], v[1], v[2], v[3], v[4])?)
}

/// Fill in every defaulted key so a dumped configuration is self-contained.
pub fn materialize_defaults(settings: &mut Settings) {
    for (key, default) in DEFAULT_CHANNEL {
        settings.set_default(key, crate::settings::f64_to_config(default));
    }
    settings.set_default("rs", crate::settings::f64_to_config(0.0));
    settings.set_default("samples", DEFAULT_SWEEP_SAMPLES.to_string());
    settings.set_default("seed", DEFAULT_SEED.to_string());
    settings.set_default("batch-size", DEFAULT_BATCH.to_string());
}

fn plan_from_settings(settings: &Settings, need_n: bool, need_l: bool) -> CliResult<Plan> {
    let params = channel_from_settings(settings)?;
    let n = if need_n {
        Some(settings.require::<u32>("n")?)
    } else {
        settings.get_opt::<u32>("n")?
    };
    let l = if need_l {
        Some(settings.require::<u32>("l")?)
    } else {
        settings.get_opt::<u32>("l")?
    };
    Ok(Plan {
        params,
        n,
        k: settings.require::<u32>("k")?,
        l,
        rs: settings.get_or("rs", 0.0)?,
        samples: settings.get_or("samples", DEFAULT_SWEEP_SAMPLES)?,
        seed: settings.get_or("seed", DEFAULT_SEED)?,
        batch_size: settings.get_or("batch-size", DEFAULT_BATCH)?,
        output: settings.raw("output").map(PathBuf::from),
    })
}

/// The (n, k, l, rs) of one evaluated point after applying the swept value.
#[derive(Debug, Clone, Copy)]
struct Point {
    n: u32,
    k: u32,
    l: u32,
    rs: f64,
}

fn resolve_point(plan: &Plan, spec: Option<(&SweepSpec, f64)>) -> CliResult<Point> {
    let mut n = plan.n;
    let mut l = plan.l;
    let mut k = plan.k;
    let mut rs = plan.rs;
    if let Some((spec, value)) = spec {
        match spec.variable {
            SweepVar::NUsers => n = Some(value as u32),
            SweepVar::EveAntennas => l = Some(value as u32),
            SweepVar::Rank => k = value as u32,
            SweepVar::Rate => rs = value,
        }
        if spec.lockstep {
            match spec.variable {
                SweepVar::NUsers => l = n,
                SweepVar::EveAntennas => n = l,
                _ => unreachable!("validated: lockstep needs a population variable"),
            }
        }
    }
    let n = n.ok_or_else(|| CliError::Validation("missing required parameter 'n'".into()))?;
    let l = l.ok_or_else(|| CliError::Validation("missing required parameter 'l'".into()))?;
    Ok(Point { n, k, l, rs })
}

/// (estimate, std_error, n_samples, seed): the optional fields only fill
/// for Monte Carlo.
type PointOutcome = (f64, Option<f64>, Option<u64>, Option<u64>);

/// Evaluate one (metric, method) at one point. Core domain/numeric errors
/// come back as `Err` for the caller to turn into error rows or exits.
fn evaluate(
    plan: &Plan,
    point: Point,
    metric: Metric,
    method: Method,
    point_index: u64,
) -> CliResult<PointOutcome> {
    let sel = SelectionConfig::new(point.n, point.k, point.l)?;
    let target = SecrecyTarget::new(point.rs)?;
    let p = &plan.params;
    let value = match (metric, method) {
        (Metric::Sop, Method::Exact) => sop_exact(p, &sel, &target)?,
        (Metric::Sop, Method::AsymptoticN) => sop_asymptotic_n(p, &sel, &target)?,
        (Metric::Sop, Method::AsymptoticNl) => sop_asymptotic_nl(p, &sel, &target)?,
        (Metric::Sop, Method::Quadrature) => sop_quadrature(p, &sel, &target)?.value,
        (Metric::Spsc, Method::Exact) => spsc_exact(p, &sel)?,
        (Metric::Spsc, Method::AsymptoticN) => spsc_asymptotic_n(p, &sel)?,
        (Metric::Spsc, Method::Quadrature) => {
            1.0 - sop_quadrature(p, &sel, &SecrecyTarget::new(0.0)?)?.value
        }
        (Metric::Esc, Method::AsymptoticN) => {
            if point.l != 1 {
                return Err(CliError::Validation(
                    "asymptotic ESC is derived for a single-antenna eavesdropper (l = 1)"
                        .to_string(),
                ));
            }
            esc_asymptotic(p, point.n, point.k)?
        }
        (Metric::Esc, Method::Quadrature) => esc_quadrature(p, &sel)?.value,
        (_, Method::MonteCarlo) => {
            let sim = SimConfig::new(
                plan.samples,
                derive_seed(plan.seed, point_index),
                plan.batch_size,
            )?;
            let est = mc_estimate(p, &sel, &target, &sim)?;
            let e = match metric {
                Metric::Sop => est.sop,
                Metric::Spsc => est.spsc,
                Metric::Esc => est.esc,
            };
            return Ok((e.mean, Some(e.std_error), Some(e.n_samples), Some(plan.seed)));
        }
        (m, meth) => {
            return Err(CliError::Validation(format!(
                "method '{}' does not support metric '{}'",
                meth.as_str(),
                m.as_str()
            )))
        }
    };
    Ok((value, None, None, None))
}

fn channel_fields(p: &ChannelParams) -> [f64; 5] {
    [
        p.power_ratio(),
        p.beta_m(),
        p.lambda_m(),
        p.beta_e(),
        p.lambda_e(),
    ]
}

/// `eval`: one point, one (metric, method); header + row on stdout.
pub fn run_eval(settings: &Settings) -> CliResult<()> {
    let metric = Metric::parse(&settings.require::<String>("metric")?)?;
    let method: Method = settings
        .require::<String>("method")?
        .parse()
        .map_err(|e: sirsec_core::Error| CliError::Validation(e.to_string()))?;
    if !method_supports(metric, method) {
        return Err(CliError::Validation(format!(
            "method '{}' does not support metric '{}'{}",
            method.as_str(),
            metric.as_str(),
            if metric == Metric::Esc && method == Method::Exact {
                "; exact ESC unsupported; use quadrature"
            } else {
                ""
            }
        )));
    }
    let plan = plan_from_settings(settings, true, true)?;
    let point = resolve_point(&plan, None)?;
    let (estimate, std_error, n_samples, seed) = evaluate(&plan, point, metric, method, 0)?;
    let row = Row {
        sweep: None,
        metric,
        method,
        n: point.n,
        k: point.k,
        l: point.l,
        rs: point.rs,
        channel: channel_fields(&plan.params),
        estimate: Some(estimate),
        std_error,
        n_samples,
        seed,
        error: None,
    };
    let mut out = std::io::stdout().lock();
    writeln!(out, "{HEADER}\n{}", row.to_csv())
        .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))?;
    Ok(())
}

/// Build the sweep description out of resolved settings.
pub fn sweep_spec_from_settings(settings: &Settings) -> CliResult<SweepSpec> {
    let metric = Metric::parse(&settings.require::<String>("metric")?)?;
    let methods = crate::sweep_spec::parse_methods(&settings.require::<String>("methods")?)?;
    let variable = SweepVar::parse(&settings.require::<String>("var")?)?;
    let values: Vec<f64> = if settings.contains("values") {
        settings
            .require::<String>("values")?
            .split(',')
            .map(|tok| {
                tok.trim().parse::<f64>().map_err(|_| {
                    CliError::Validation(format!("invalid sweep value '{}'", tok.trim()))
                })
            })
            .collect::<CliResult<_>>()?
    } else {
        let from: f64 = settings.require("from")?;
        let to: f64 = settings.require("to")?;
        let step: f64 = settings.require("step")?;
        if !(step > 0.0) || !from.is_finite() || !(to >= from) {
            return Err(CliError::Validation(
                "range sweep requires from <= to and step > 0".to_string(),
            ));
        }
        let count = ((to - from) / step).floor() as usize + 1;
        (0..count).map(|i| from + step * i as f64).collect()
    };
    let lockstep = settings.get_or("lockstep", false)?;
    SweepSpec::new(variable, values, lockstep, methods, metric)
}

/// `sweep`: evaluate value × method grid, write CSV, exit 3 at the end if
/// any point failed numerically.
pub fn run_sweep(settings: &Settings) -> CliResult<()> {
    let spec = sweep_spec_from_settings(settings)?;
    // The swept variable's baseline is not required; everything else is.
    let (need_n, need_l) = match (spec.variable, spec.lockstep) {
        (SweepVar::NUsers, _) => (false, !spec.lockstep),
        (SweepVar::EveAntennas, _) => (!spec.lockstep, false),
        _ => (true, true),
    };
    let plan = plan_from_settings(settings, need_n, need_l)?;
    let output = plan
        .output
        .clone()
        .ok_or_else(|| CliError::Validation("missing required parameter 'output'".into()))?;

    // Deterministic row order: sweep value outer, method inner. Points run
    // concurrently; rows are buffered and written in order afterwards.
    let grid: Vec<(usize, f64, Method)> = spec
        .values
        .iter()
        .enumerate()
        .flat_map(|(i, v)| spec.methods.iter().map(move |m| (i, *v, *m)))
        .collect();

    let rows: Vec<Row> = grid
        .par_iter()
        .map(|&(value_index, value, method)| {
            let mut row = Row {
                sweep: Some((spec.variable, value)),
                metric: spec.metric,
                method,
                n: 0,
                k: plan.k,
                l: 0,
                rs: plan.rs,
                channel: channel_fields(&plan.params),
                estimate: None,
                std_error: None,
                n_samples: None,
                seed: None,
                error: None,
            };
            match resolve_point(&plan, Some((&spec, value))).and_then(|point| {
                row.n = point.n;
                row.l = point.l;
                row.rs = point.rs;
                evaluate(&plan, point, spec.metric, method, value_index as u64)
            }) {
                Ok((estimate, std_error, n_samples, seed)) => {
                    row.estimate = Some(estimate);
                    row.std_error = std_error;
                    row.n_samples = n_samples;
                    row.seed = seed;
                }
                Err(e) => row.error = Some(e.to_string()),
            }
            row
        })
        .collect();

    let mut text = String::with_capacity(rows.len() * 128 + HEADER.len() + 1);
    text.push_str(HEADER);
    text.push('\n');
    for row in &rows {
        text.push_str(&row.to_csv());
        text.push('\n');
    }
    std::fs::write(&output, text)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", output.display())))?;

    let failures: Vec<&Row> = rows.iter().filter(|r| r.error.is_some()).collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Numeric(format!(
            "{} of {} sweep points failed; see the error column in {}",
            failures.len(),
            rows.len(),
            output.display()
        )))
    }
}
