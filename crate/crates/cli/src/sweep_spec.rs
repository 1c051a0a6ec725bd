//! Sweep description and its validation rules.

use sirsec_core::analytic::Method;

use crate::error::{CliError, CliResult};

/// Which metric a run evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Sop,
    Spsc,
    Esc,
}

impl Metric {
    pub fn as_str(&self) -> &'static str {
        match self {
            Metric::Sop => "sop",
            Metric::Spsc => "spsc",
            Metric::Esc => "esc",
        }
    }

    pub fn parse(s: &str) -> CliResult<Self> {
        match s {
            "sop" => Ok(Metric::Sop),
            "spsc" => Ok(Metric::Spsc),
            "esc" => Ok(Metric::Esc),
            other => Err(CliError::Validation(format!(
                "unknown metric '{other}' (expected sop, spsc or esc)"
            ))),
        }
    }
}

/// The swept parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVar {
    NUsers,
    EveAntennas,
    Rate,
    Rank,
}

impl SweepVar {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepVar::NUsers => "n_users",
            SweepVar::EveAntennas => "eve_antennas",
            SweepVar::Rate => "rate",
            SweepVar::Rank => "rank",
        }
    }

    pub fn parse(s: &str) -> CliResult<Self> {
        match s {
            "n_users" => Ok(SweepVar::NUsers),
            "eve_antennas" => Ok(SweepVar::EveAntennas),
            "rate" => Ok(SweepVar::Rate),
            "rank" => Ok(SweepVar::Rank),
            other => Err(CliError::Validation(format!(
                "unknown sweep variable '{other}' (expected n_users, eve_antennas, rate or rank)"
            ))),
        }
    }

    pub fn is_integer(&self) -> bool {
        !matches!(self, SweepVar::Rate)
    }
}

/// Whether a (method, metric) pair has an evaluation route.
///
/// ESC has no exact closed form for arbitrary L (quadrature is the exact
/// route), and the joint large-N/L limit is derived for the outage
/// probability only.
pub fn method_supports(metric: Metric, method: Method) -> bool {
    match metric {
        Metric::Sop => true,
        Metric::Spsc => !matches!(method, Method::AsymptoticNl),
        Metric::Esc => matches!(
            method,
            Method::AsymptoticN | Method::Quadrature | Method::MonteCarlo
        ),
    }
}

/// A validated description of one sweep.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub variable: SweepVar,
    pub values: Vec<f64>,
    /// Tie eve_antennas = n_users while sweeping either of them.
    pub lockstep: bool,
    /// Requested methods, normalized to canonical order.
    pub methods: Vec<Method>,
    pub metric: Metric,
}

impl SweepSpec {
    pub fn new(
        variable: SweepVar,
        values: Vec<f64>,
        lockstep: bool,
        methods: Vec<Method>,
        metric: Metric,
    ) -> CliResult<Self> {
        if values.is_empty() {
            return Err(CliError::Validation(
                "sweep values must be nonempty".to_string(),
            ));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CliError::Validation(
                "sweep values must be strictly increasing".to_string(),
            ));
        }
        if variable.is_integer() {
            if let Some(bad) = values
                .iter()
                .find(|v| v.fract() != 0.0 || **v < 1.0 || **v > u32::MAX as f64)
            {
                return Err(CliError::Validation(format!(
                    "sweep variable {} takes positive integers, got {bad}",
                    variable.as_str()
                )));
            }
        } else if let Some(bad) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(CliError::Validation(format!(
                "secrecy rates must be finite and >= 0, got {bad}"
            )));
        }
        if methods.is_empty() {
            return Err(CliError::Validation(
                "at least one method must be requested".to_string(),
            ));
        }
        for m in &methods {
            if !method_supports(metric, *m) {
                return Err(CliError::Validation(format!(
                    "method '{}' does not support metric '{}'{}",
                    m.as_str(),
                    metric.as_str(),
                    if metric == Metric::Esc && *m == Method::Exact {
                        "; exact ESC unsupported; use quadrature"
                    } else {
                        ""
                    }
                )));
            }
        }
        if lockstep && !matches!(variable, SweepVar::NUsers | SweepVar::EveAntennas) {
            return Err(CliError::Validation(
                "lockstep (n_users = eve_antennas) only applies when sweeping n_users or eve_antennas"
                    .to_string(),
            ));
        }
        // Canonical method order, deduplicated: row order is sweep value
        // first, then this order.
        let methods: Vec<Method> = Method::ALL
            .into_iter()
            .filter(|m| methods.contains(m))
            .collect();
        Ok(Self {
            variable,
            values,
            lockstep,
            methods,
            metric,
        })
    }
}

pub fn parse_methods(raw: &str) -> CliResult<Vec<Method>> {
    raw.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<Method>()
                .map_err(|e| CliError::Validation(e.to_string()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unsupported_pairs() {
        let err = SweepSpec::new(
            SweepVar::NUsers,
            vec![2.0, 4.0],
            false,
            vec![Method::Exact],
            Metric::Esc,
        )
        .unwrap_err();
        assert!(err.to_string().contains("exact ESC unsupported"));

        assert!(SweepSpec::new(
            SweepVar::NUsers,
            vec![2.0, 4.0],
            false,
            vec![Method::AsymptoticNl],
            Metric::Spsc,
        )
        .is_err());
    }

    #[test]
    fn rejects_bad_values() {
        let ok = |vals: Vec<f64>| {
            SweepSpec::new(
                SweepVar::NUsers,
                vals,
                false,
                vec![Method::Exact],
                Metric::Sop,
            )
        };
        assert!(ok(vec![]).is_err());
        assert!(ok(vec![2.0, 2.0]).is_err());
        assert!(ok(vec![4.0, 2.0]).is_err());
        assert!(ok(vec![2.5]).is_err());
        assert!(ok(vec![2.0, 5.0, 10.0]).is_ok());
    }

    #[test]
    fn lockstep_needs_population_variable() {
        assert!(SweepSpec::new(
            SweepVar::Rate,
            vec![0.0, 1.0],
            true,
            vec![Method::Exact],
            Metric::Sop,
        )
        .is_err());
    }

    #[test]
    fn methods_are_normalized_to_canonical_order() {
        let spec = SweepSpec::new(
            SweepVar::NUsers,
            vec![2.0, 4.0],
            false,
            vec![Method::MonteCarlo, Method::Exact, Method::Exact],
            Metric::Sop,
        )
        .unwrap();
        assert_eq!(spec.methods, vec![Method::Exact, Method::MonteCarlo]);
    }
}
