//! Closed-form and asymptotic secrecy metrics: secrecy outage probability,
//! probability of strictly positive secrecy capacity, and ergodic secrecy
//! capacity under k-th best user selection.

use crate::error::{Error, Result};
use crate::model::{ChannelParams, SecrecyTarget, SelectionConfig};
use crate::specfun::{
    digamma_int, exp_e1_scaled, gauss_2f1, harmonic, ln_beta, ln_choose, tricomi_u,
    upper_gamma_scaled,
};

/// Which evaluation route produced a metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Exact,
    AsymptoticN,
    AsymptoticNl,
    Quadrature,
    MonteCarlo,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Exact,
        Method::AsymptoticN,
        Method::AsymptoticNl,
        Method::Quadrature,
        Method::MonteCarlo,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::AsymptoticN => "asymptotic_n",
            Method::AsymptoticNl => "asymptotic_nl",
            Method::Quadrature => "quadrature",
            Method::MonteCarlo => "monte_carlo",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::domain(format!("unknown method '{s}'")))
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An outage/SPSC pair together with the route that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecrecyMetrics {
    pub sop: f64,
    pub spsc: f64,
    pub method: Method,
}

impl SecrecyMetrics {
    pub fn new(sop: f64, spsc: f64, method: Method) -> Result<Self> {
        for (name, p) in [("sop", sop), ("spsc", spsc)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::domain(format!("{name} must lie in [0,1], got {p}")));
            }
        }
        Ok(Self { sop, spsc, method })
    }
}

/// Evaluate the outage/SPSC pair along one closed-form route. At R_s = 0 the
/// two components are complementary.
pub fn secrecy_pair(
    params: &ChannelParams,
    sel: &SelectionConfig,
    target: &SecrecyTarget,
    method: Method,
) -> Result<SecrecyMetrics> {
    let (sop, spsc) = match method {
        Method::Exact => (sop_exact(params, sel, target)?, spsc_exact(params, sel)?),
        Method::AsymptoticN => (
            sop_asymptotic_n(params, sel, target)?,
            spsc_asymptotic_n(params, sel)?,
        ),
        other => {
            return Err(Error::domain(format!(
                "secrecy_pair evaluates closed forms only, not '{other}'"
            )))
        }
    };
    SecrecyMetrics::new(sop, spsc, method)
}

/// Rounding slack at the probability boundaries: closed forms may land a few
/// ulps outside [0,1]; anything further out is treated as a failure.
const BOUNDARY_TOL: f64 = 1e-9;

fn finish_probability(p: f64, what: &str) -> Result<f64> {
    if (-BOUNDARY_TOL..=1.0 + BOUNDARY_TOL).contains(&p) {
        Ok(p.clamp(0.0, 1.0))
    } else {
        Err(Error::numeric(
            format!("{what} evaluated outside [0,1]"),
            Some(p),
        ))
    }
}

/// Exact secrecy outage probability for arbitrary N, k, L.
///
/// Double binomial sum over v = N-k+1..N and j = 0..v; each term is
/// assembled in log space with its sign tracked and the terms are summed in
/// descending magnitude order. The τ = 1 case keeps only j = v (0^0 = 1
/// convention), which reduces the sum to the SPSC complement exactly.
pub fn sop_exact(
    params: &ChannelParams,
    sel: &SelectionConfig,
    target: &SecrecyTarget,
) -> Result<f64> {
    let c_m = params.c_m();
    let c_e = params.c_e();
    let tau = target.threshold();
    let n = u64::from(sel.n_users());
    let k = u64::from(sel.rank());
    let l = f64::from(sel.eve_antennas());

    let w = 1.0 - (tau - 1.0 + c_m) / (tau * c_e);
    let ln_tau_m1 = (tau - 1.0).ln(); // -inf at tau = 1; only used with v > j
    let ln_shift = (tau - 1.0 + c_m).ln();
    let ln_prefactor = l.ln() - l * (tau * c_e).ln();

    // The hypergeometric factor depends on j alone; cache across v.
    let mut f_cache: Vec<Option<f64>> = vec![None; n as usize + 1];
    let mut hyp = |j: u64| -> Result<f64> {
        if let Some(v) = f_cache[j as usize] {
            return Ok(v);
        }
        let v = gauss_2f1(l + 1.0, l + j as f64, n as f64 + l + 1.0, w)?;
        f_cache[j as usize] = Some(v);
        Ok(v)
    };

    let mut terms: Vec<f64> = Vec::with_capacity((k as usize + 1) * (n as usize + 1));
    for v in (n - k + 1)..=n {
        let ln_v_part =
            ln_prefactor + ln_choose(n, v) + (n - v) as f64 * c_m.ln();
        for j in 0..=v {
            let ln_tau_pow = if v == j {
                0.0
            } else {
                (v - j) as f64 * ln_tau_m1
            };
            if ln_tau_pow == f64::NEG_INFINITY {
                continue; // tau = 1 kills every j < v term
            }
            let f = hyp(j)?;
            let ln_mag = ln_v_part
                + ln_choose(v, j)
                + ln_tau_pow
                + ln_beta(l + j as f64, (n - j) as f64 + 1.0)?
                + (l + j as f64 - n as f64) * ln_shift
                + f.abs().ln();
            terms.push(f.signum() * ln_mag.exp());
        }
    }
    terms.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
    let sum: f64 = terms.iter().sum();
    finish_probability(sum, "exact SOP")
}

/// Exact probability of strictly positive secrecy capacity.
pub fn spsc_exact(params: &ChannelParams, sel: &SelectionConfig) -> Result<f64> {
    let c_m = params.c_m();
    let c_e = params.c_e();
    let n = u64::from(sel.n_users());
    let k = u64::from(sel.rank());
    let l = f64::from(sel.eve_antennas());

    let w = 1.0 - c_m / c_e;
    let ln_prefactor = l.ln() + l * (c_m.ln() - c_e.ln());
    let mut terms: Vec<f64> = Vec::with_capacity(k as usize);
    for v in (n - k + 1)..=n {
        let f = gauss_2f1(l + 1.0, l + v as f64, n as f64 + l + 1.0, w)?;
        let ln_mag = ln_prefactor
            + ln_choose(n, v)
            + ln_beta(l + v as f64, (n - v) as f64 + 1.0)?
            + f.abs().ln();
        terms.push(f.signum() * ln_mag.exp());
    }
    terms.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
    let sum: f64 = terms.iter().sum();
    finish_probability(1.0 - sum, "exact SPSC")
}

/// Large-N secrecy outage probability: 1 - x^k U(k; k+1-L; x) with
/// x = b_N/(τ C_E) and b_N = C_M (N-1).
///
/// Valid for N large relative to k and τ; no hard guard is imposed, but
/// accuracy degrades when the rank or the target rate gets close to N.
pub fn sop_asymptotic_n(
    params: &ChannelParams,
    sel: &SelectionConfig,
    target: &SecrecyTarget,
) -> Result<f64> {
    let spsc_scaled = scaled_u_probability(params, sel, target.threshold())?;
    finish_probability(1.0 - spsc_scaled, "asymptotic SOP")
}

/// Large-N probability of strictly positive secrecy capacity:
/// (b_N/C_E)^k U(k; k+1-L; b_N/C_E).
pub fn spsc_asymptotic_n(params: &ChannelParams, sel: &SelectionConfig) -> Result<f64> {
    let p = scaled_u_probability(params, sel, 1.0)?;
    finish_probability(p, "asymptotic SPSC")
}

fn scaled_u_probability(params: &ChannelParams, sel: &SelectionConfig, tau: f64) -> Result<f64> {
    if sel.n_users() < 2 {
        return Err(Error::domain(
            "large-N asymptotics require n_users >= 2".to_string(),
        ));
    }
    let k = sel.rank();
    let l = sel.eve_antennas();
    let b_n = params.c_m() * f64::from(sel.n_users() - 1);
    let x = b_n / (tau * params.c_e());
    let u = tricomi_u(f64::from(k), f64::from(k) + 1.0 - f64::from(l), x)?;
    Ok((f64::from(k) * x.ln() + u.ln()).exp())
}

/// Large-N, large-L secrecy outage probability: 1 - (1 + τ b_L/b_N)^{-k}.
pub fn sop_asymptotic_nl(
    params: &ChannelParams,
    sel: &SelectionConfig,
    target: &SecrecyTarget,
) -> Result<f64> {
    if sel.n_users() < 2 || sel.eve_antennas() < 2 {
        return Err(Error::domain(
            "large-N, large-L asymptotics require n_users >= 2 and eve_antennas >= 2".to_string(),
        ));
    }
    let b_n = params.c_m() * f64::from(sel.n_users() - 1);
    let b_l = params.c_e() * f64::from(sel.eve_antennas() - 1);
    let tau = target.threshold();
    let p = 1.0 - (1.0 + tau * b_l / b_n).powi(-(sel.rank() as i32));
    finish_probability(p, "large-N/L asymptotic SOP")
}

/// The constant the SOP converges to when N = L grows without bound:
/// 1 - (1 + τ β_E λ_M / (λ_E β_M))^{-k}. Independent of N, L and the power
/// ratio.
pub fn sop_equal_nl_limit(
    params: &ChannelParams,
    rank: u32,
    target: &SecrecyTarget,
) -> Result<f64> {
    if rank < 1 {
        return Err(Error::domain("rank must be >= 1".to_string()));
    }
    let ratio = params.beta_e() * params.lambda_m() / (params.lambda_e() * params.beta_m());
    Ok(1.0 - (1.0 + target.threshold() * ratio).powi(-(rank as i32)))
}

/// Logarithmic moment V(k; a) = ∫_0^∞ t^{k-1} e^{-t}/(k-1)! ln(t+a) dt,
/// via its finite closed form in terms of e^a Ei(-a).
///
/// The product e^a Ei(-a) = -e^a E₁(a) is taken from the scaled
/// exponential-integral routine, so large a cannot overflow.
pub fn v_log_moment(k: u32, a: f64) -> Result<f64> {
    if k < 1 {
        return Err(Error::domain(format!("v_log_moment requires k >= 1, got {k}")));
    }
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::domain(format!(
            "v_log_moment requires finite a > 0, got {a}"
        )));
    }
    let e_ei = -exp_e1_scaled(a)?; // e^a Ei(-a)
    let mut total = a.ln();
    let mut m_factorial = 1.0; // m!
    let mut a_pow_m = 1.0; // a^m
    for m in 0..k {
        if m > 0 {
            m_factorial *= f64::from(m);
            a_pow_m *= a;
        }
        let sign = if m % 2 == 0 { -1.0 } else { 1.0 }; // (-1)^{m+1}
        let mut bracket = sign * a_pow_m * e_ei;
        // Σ_{v=1..m} (v-1)! (-a)^{m-v}
        let mut v_factorial = 1.0; // (v-1)!
        for v in 1..=m {
            if v > 1 {
                v_factorial *= f64::from(v - 1);
            }
            let p = m - v;
            let pow = if p % 2 == 0 {
                a.powi(p as i32)
            } else {
                -a.powi(p as i32)
            };
            bracket += v_factorial * pow;
        }
        total += bracket / m_factorial;
    }
    Ok(total)
}

/// Relative window around C_E = 1 inside which the degenerate branch of the
/// asymptotic ESC is used; the (C_E - 1) denominator loses about six digits
/// there.
const ESC_UNIT_CE_WINDOW: f64 = 1e-6;

/// Asymptotic ergodic secrecy capacity of the k-th best user for a
/// single-antenna eavesdropper, in bits/s/Hz. Requires N >= 2.
pub fn esc_asymptotic(params: &ChannelParams, n_users: u32, rank: u32) -> Result<f64> {
    if n_users < 2 {
        return Err(Error::domain(
            "esc_asymptotic requires n_users >= 2".to_string(),
        ));
    }
    if rank < 1 || rank > n_users {
        return Err(Error::domain(format!(
            "esc_asymptotic requires 1 <= rank <= n_users, got rank {rank} with {n_users} users"
        )));
    }
    let b_n = params.c_m() * f64::from(n_users - 1);
    let c_e = params.c_e();
    let psi = digamma_int(rank)?;
    let numerator = if (c_e - 1.0).abs() <= ESC_UNIT_CE_WINDOW {
        -psi + v_log_moment(rank, b_n)? - upper_gamma_scaled(rank, b_n)?
    } else {
        -psi + (c_e * v_log_moment(rank, b_n / c_e)? - v_log_moment(rank, b_n)?) / (c_e - 1.0)
    };
    Ok(numerator / std::f64::consts::LN_2)
}

/// Large-N scaling form of the asymptotic ESC:
/// [-ψ(k) + ln(C_M (N-1)) - C_E ln C_E/(C_E-1)] / ln 2.
pub fn esc_scaling_approx(params: &ChannelParams, n_users: u32, rank: u32) -> Result<f64> {
    if n_users < 2 {
        return Err(Error::domain(
            "esc_scaling_approx requires n_users >= 2".to_string(),
        ));
    }
    if rank < 1 {
        return Err(Error::domain("rank must be >= 1".to_string()));
    }
    let b_n = params.c_m() * f64::from(n_users - 1);
    let c_e = params.c_e();
    let correction = if (c_e - 1.0).abs() <= ESC_UNIT_CE_WINDOW {
        1.0
    } else {
        c_e * c_e.ln() / (c_e - 1.0)
    };
    Ok((-digamma_int(rank)? + b_n.ln() - correction) / std::f64::consts::LN_2)
}

/// Limiting ESC loss of rank-k selection relative to the best user:
/// H_{k-1}/ln 2 bits/s/Hz.
pub fn esc_gap_limit(rank: u32) -> Result<f64> {
    if rank < 1 {
        return Err(Error::domain("rank must be >= 1".to_string()));
    }
    Ok(harmonic(rank - 1) / std::f64::consts::LN_2)
}
