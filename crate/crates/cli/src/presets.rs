//! Built-in sweep presets: the three reference parameter studies shipped
//! with the tool (SOP vs population, SOP vs eavesdropper antennas, ESC vs
//! population). Each preset materializes an ordinary sweep configuration, so
//! `dump-config --figure N` shows exactly what will run and the output can
//! be reproduced with plain `sweep` flags.

use crate::error::{CliError, CliResult};
use crate::settings::{f64_to_config, Settings};

/// Study 2: outage probability versus number of users.
/// Channel: ρ = 2, β_M = 2, λ_M = 1/2, β_E = 5, λ_E = 4; L = 2;
/// k ∈ {1, 2}; R_s ∈ {1, 4} bits/s/Hz; N from 2 to 100.
pub const FIG2_CHANNEL: [f64; 5] = [2.0, 2.0, 0.5, 5.0, 4.0];
pub const FIG2_L: u32 = 2;
pub const FIG2_RANKS: [u32; 2] = [1, 2];
pub const FIG2_RATES: [f64; 2] = [1.0, 4.0];
pub const FIG2_N_RANGE: (u32, u32) = (2, 100);

/// Study 3: outage probability versus eavesdropper antennas, same channel
/// as study 2; k ∈ {1, 2}; R_s = 1/2; either N fixed at 20, or N = L
/// growing together.
pub const FIG3_CHANNEL: [f64; 5] = FIG2_CHANNEL;
pub const FIG3_FIXED_N: u32 = 20;
pub const FIG3_RANKS: [u32; 2] = [1, 2];
pub const FIG3_RATE: f64 = 0.5;
pub const FIG3_L_RANGE: (u32, u32) = (2, 40);
pub const FIG3_LOCKSTEP_VALUES: [u32; 8] = [2, 4, 8, 16, 32, 64, 128, 256];

/// Study 4: ergodic secrecy capacity versus number of users.
/// Channel: ρ = 4, β_M = 2, λ_M = 4, β_E = 3, λ_E = 3; L = 1;
/// k ∈ {1, 2, 3}; N from 2 (or k, if larger) to 100.
pub const FIG4_CHANNEL: [f64; 5] = [4.0, 2.0, 4.0, 3.0, 3.0];
pub const FIG4_L: u32 = 1;
pub const FIG4_RANKS: [u32; 3] = [1, 2, 3];
pub const FIG4_N_RANGE: (u32, u32) = (2, 100);

fn set_channel(settings: &mut Settings, channel: [f64; 5]) {
    for (key, v) in ["power-ratio", "beta-m", "lambda-m", "beta-e", "lambda-e"]
        .iter()
        .zip(channel)
    {
        settings.set(key, f64_to_config(v));
    }
}

fn int_values(from: u32, to: u32) -> String {
    (from..=to)
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn require_one_of<T: Copy + PartialEq + std::fmt::Display>(
    what: &str,
    value: Option<T>,
    allowed: &[T],
) -> CliResult<T> {
    let v = value.ok_or_else(|| {
        CliError::Validation(format!("preset requires --{what} (one of {})", list(allowed)))
    })?;
    if allowed.contains(&v) {
        Ok(v)
    } else {
        Err(CliError::Validation(format!(
            "--{what} {v} is not part of this preset (choose one of {})",
            list(allowed)
        )))
    }
}

fn list<T: std::fmt::Display>(values: &[T]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Resolve a preset into plain sweep settings.
pub fn figure_settings(
    which: u8,
    k: Option<u32>,
    rs: Option<f64>,
    lockstep: bool,
) -> CliResult<Settings> {
    let mut s = Settings::new();
    match which {
        2 => {
            let k = require_one_of("k", k, &FIG2_RANKS)?;
            let rs = require_one_of("rs", rs, &FIG2_RATES)?;
            if lockstep {
                return Err(CliError::Validation(
                    "--lockstep belongs to figure 3".to_string(),
                ));
            }
            set_channel(&mut s, FIG2_CHANNEL);
            s.set("metric", "sop".into());
            s.set("methods", "exact,asymptotic_n,monte_carlo".into());
            s.set("var", "n_users".into());
            s.set("values", int_values(FIG2_N_RANGE.0.max(k), FIG2_N_RANGE.1));
            s.set("k", k.to_string());
            s.set("l", FIG2_L.to_string());
            s.set("rs", f64_to_config(rs));
        }
        3 => {
            let k = require_one_of("k", k, &FIG3_RANKS)?;
            if let Some(rs) = rs {
                if rs != FIG3_RATE {
                    return Err(CliError::Validation(format!(
                        "figure 3 is defined at rs = {FIG3_RATE}"
                    )));
                }
            }
            set_channel(&mut s, FIG3_CHANNEL);
            s.set("metric", "sop".into());
            s.set("methods", "exact,asymptotic_n,asymptotic_nl".into());
            s.set("var", "eve_antennas".into());
            s.set("k", k.to_string());
            s.set("rs", f64_to_config(FIG3_RATE));
            if lockstep {
                s.set("lockstep", "true".into());
                s.set(
                    "values",
                    FIG3_LOCKSTEP_VALUES
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                );
            } else {
                s.set("n", FIG3_FIXED_N.to_string());
                s.set("values", int_values(FIG3_L_RANGE.0, FIG3_L_RANGE.1));
            }
        }
        4 => {
            let k = require_one_of("k", k, &FIG4_RANKS)?;
            if rs.is_some() {
                return Err(CliError::Validation(
                    "figure 4 plots the ergodic secrecy capacity; --rs does not apply".to_string(),
                ));
            }
            if lockstep {
                return Err(CliError::Validation(
                    "--lockstep belongs to figure 3".to_string(),
                ));
            }
            set_channel(&mut s, FIG4_CHANNEL);
            s.set("metric", "esc".into());
            s.set("methods", "asymptotic_n,quadrature,monte_carlo".into());
            s.set("var", "n_users".into());
            s.set("values", int_values(FIG4_N_RANGE.0.max(k), FIG4_N_RANGE.1));
            s.set("k", k.to_string());
            s.set("l", FIG4_L.to_string());
        }
        other => {
            return Err(CliError::Validation(format!(
                "unknown figure preset {other} (expected 2, 3 or 4)"
            )))
        }
    }
    Ok(s)
}
