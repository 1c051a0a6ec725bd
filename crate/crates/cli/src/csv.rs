//! CSV schema and formatting. UTF-8, Unix newlines, header mandatory,
//! floating-point fields at 17 significant digits so values round-trip.

use sirsec_core::analytic::Method;

use crate::sweep_spec::{Metric, SweepVar};

pub const HEADER: &str = "sweep_var,sweep_value,metric,method,n,k,l,rs,power_ratio,beta_m,\
                          lambda_m,beta_e,lambda_e,estimate,std_error,n_samples,seed,error";

/// One output row; optional fields print as empty cells.
#[derive(Debug, Clone)]
pub struct Row {
    pub sweep: Option<(SweepVar, f64)>,
    pub metric: Metric,
    pub method: Method,
    pub n: u32,
    pub k: u32,
    pub l: u32,
    pub rs: f64,
    pub channel: [f64; 5],
    pub estimate: Option<f64>,
    pub std_error: Option<f64>,
    pub n_samples: Option<u64>,
    pub seed: Option<u64>,
    pub error: Option<String>,
}

/// 17 significant digits: enough to reproduce the exact f64.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_sweep_value(var: SweepVar, v: f64) -> String {
    if var.is_integer() {
        format!("{}", v as u64)
    } else {
        fmt_f64(v)
    }
}

fn sanitize(note: &str) -> String {
    note.replace(['\n', '\r'], " ").replace(',', ";")
}

impl Row {
    pub fn to_csv(&self) -> String {
        let (var, value) = match self.sweep {
            Some((var, v)) => (var.as_str().to_string(), fmt_sweep_value(var, v)),
            None => (String::new(), String::new()),
        };
        let opt_f = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
        let opt_u = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{var},{value},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.metric.as_str(),
            self.method.as_str(),
            self.n,
            self.k,
            self.l,
            fmt_f64(self.rs),
            fmt_f64(self.channel[0]),
            fmt_f64(self.channel[1]),
            fmt_f64(self.channel[2]),
            fmt_f64(self.channel[3]),
            fmt_f64(self.channel[4]),
            opt_f(self.estimate),
            opt_f(self.std_error),
            opt_u(self.n_samples),
            opt_u(self.seed),
            self.error.as_deref().map(sanitize).unwrap_or_default(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_has_eighteen_columns() {
        assert_eq!(HEADER.split(',').count(), 18);
    }

    #[test]
    fn row_matches_header_arity() {
        let row = Row {
            sweep: Some((SweepVar::NUsers, 10.0)),
            metric: Metric::Sop,
            method: Method::Exact,
            n: 10,
            k: 2,
            l: 2,
            rs: 1.0,
            channel: [2.0, 2.0, 0.5, 5.0, 4.0],
            estimate: Some(0.25),
            std_error: None,
            n_samples: None,
            seed: None,
            error: None,
        };
        assert_eq!(row.to_csv().split(',').count(), HEADER.split(',').count());
    }

    #[test]
    fn seventeen_digit_floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, 2.0f64.sqrt(), 1e-300, 12345.678] {
            let s = fmt_f64(v);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), v.to_bits(), "{s}");
        }
    }

    #[test]
    fn error_notes_never_break_the_schema() {
        let row = Row {
            sweep: None,
            metric: Metric::Esc,
            method: Method::Quadrature,
            n: 4,
            k: 1,
            l: 1,
            rs: 0.0,
            channel: [1.0; 5],
            estimate: None,
            std_error: None,
            n_samples: None,
            seed: None,
            error: Some("bad, very bad\nnews".to_string()),
        };
        assert_eq!(row.to_csv().split(',').count(), HEADER.split(',').count());
    }
}
