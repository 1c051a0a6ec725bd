//! Ground-truth engines: adaptive quadrature of the defining integrals and
//! seeded Monte Carlo simulation of the physical model.
//!
//! Every closed form in [`crate::analytic`] is validated against these two
//! independent routes; they share no code with the closed-form assembly.

mod mc;
pub mod rng;

pub use mc::{mc_estimate, EstimateWithCI, McEstimates, SimConfig};

use crate::error::{Error, Result};
use crate::model::{
    eve_sc_cdf_raw, eve_sc_pdf_raw, kth_best_cdf_raw, ChannelParams, SecrecyTarget,
    SelectionConfig,
};
use crate::quad;
use crate::specfun::lower_gamma_reg;

/// Result of an adaptive quadrature with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    /// On success this sits below the requested relative tolerance times the
    /// value.
    pub abs_error_estimate: f64,
    pub subdivisions: u32,
}

impl From<quad::QuadEstimate> for QuadResult {
    fn from(est: quad::QuadEstimate) -> Self {
        QuadResult {
            value: est.value,
            abs_error_estimate: est.abs_error,
            subdivisions: est.subdivisions,
        }
    }
}

const MAX_INTERVALS: u32 = 10_000;

/// Integrate `f` over (0, ∞) to relative tolerance `rel_tol`.
///
/// The half line is folded onto (0, 1) by z = scale·u/(1-u); pick `scale`
/// near the integrand's mass (the SIR ops default to max(C_M, C_E)).
pub fn integrate_half_line<F: Fn(f64) -> f64>(f: F, rel_tol: f64, scale: f64) -> Result<QuadResult> {
    if !(rel_tol > 0.0 && rel_tol.is_finite()) {
        return Err(Error::domain(format!(
            "relative tolerance must be positive and finite, got {rel_tol}"
        )));
    }
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::domain(format!(
            "transform scale must be positive and finite, got {scale}"
        )));
    }
    let g = move |u: f64| {
        if u <= 0.0 || u >= 1.0 {
            return 0.0;
        }
        let one_minus = 1.0 - u;
        let z = scale * u / one_minus;
        f(z) * scale / (one_minus * one_minus)
    };
    quad::adaptive(&g, 0.0, 1.0, rel_tol, MAX_INTERVALS).map(QuadResult::from)
}

/// Secrecy outage probability by direct quadrature of the defining integral
/// ∫_0^∞ f_{X_(L)}(z) F_{Z_(N-k+1)}(τ-1+τz) dz with the exact CDFs.
pub fn sop_quadrature(
    params: &ChannelParams,
    sel: &SelectionConfig,
    target: &SecrecyTarget,
) -> Result<QuadResult> {
    let c_m = params.c_m();
    let c_e = params.c_e();
    let (n, k, l) = (sel.n_users(), sel.rank(), sel.eve_antennas());
    let tau = target.threshold();
    let integrand = move |z: f64| {
        eve_sc_pdf_raw(z, l, c_e) * kth_best_cdf_raw(tau - 1.0 + tau * z, n, k, c_m)
    };
    integrate_half_line(integrand, 1e-9, c_m.max(c_e))
}

/// The large-N SOP integral: the eavesdropper density against the
/// inverse-gamma limit CDF. Validates the Tricomi-U closed form through a
/// route that never touches the U code.
pub fn sop_asymptotic_quadrature(
    params: &ChannelParams,
    sel: &SelectionConfig,
    target: &SecrecyTarget,
) -> Result<QuadResult> {
    if sel.n_users() < 2 {
        return Err(Error::domain(
            "large-N asymptotics require n_users >= 2".to_string(),
        ));
    }
    let c_e = params.c_e();
    let (k, l) = (sel.rank(), sel.eve_antennas());
    let b_n = params.c_m() * f64::from(sel.n_users() - 1);
    let tau = target.threshold();
    let integrand = move |z: f64| {
        if z <= 0.0 {
            return 0.0;
        }
        let upper_tail = 1.0 - lower_gamma_reg(k, b_n / (tau * z)).expect("in-domain");
        eve_sc_pdf_raw(z, l, c_e) * upper_tail
    };
    // Mass sits between the eavesdropper scale and b_N/τ; use the geometric
    // midpoint.
    let scale = (c_e.max(1.0) * (1.0 + b_n / tau)).sqrt();
    integrate_half_line(integrand, 1e-9, scale)
}

/// Ergodic secrecy capacity in bits/s/Hz by quadrature of
/// (1/ln 2) ∫_0^∞ F_{X_(L)}(z)/(1+z) (1 - F_{Z_(N-k+1)}(z)) dz.
///
/// This is the exact-model route for any N, k, L (no closed form exists for
/// general L).
pub fn esc_quadrature(params: &ChannelParams, sel: &SelectionConfig) -> Result<QuadResult> {
    let c_m = params.c_m();
    let c_e = params.c_e();
    let (n, k, l) = (sel.n_users(), sel.rank(), sel.eve_antennas());
    let integrand = move |z: f64| {
        eve_sc_cdf_raw(z, l, c_e) / (1.0 + z) * (1.0 - kth_best_cdf_raw(z, n, k, c_m))
    };
    // The survival factor keeps mass out to the top order statistic's scale.
    let scale = (c_m.max(c_e).max(1.0) * (1.0 + c_m * f64::from(n))).sqrt();
    let est = integrate_half_line(integrand, 1e-8, scale)?;
    Ok(QuadResult {
        value: est.value / std::f64::consts::LN_2,
        abs_error_estimate: est.abs_error_estimate / std::f64::consts::LN_2,
        subdivisions: est.subdivisions,
    })
}

/// The large-N, single-antenna ESC integral
/// (1/ln 2) ∫_0^∞ z/((1+z)(C_E+z)) γ(k, b_N/z)/(k-1)! dz,
/// validating the closed asymptotic form through independent machinery.
pub fn esc_asymptotic_quadrature(
    params: &ChannelParams,
    n_users: u32,
    rank: u32,
) -> Result<QuadResult> {
    if n_users < 2 {
        return Err(Error::domain(
            "large-N asymptotics require n_users >= 2".to_string(),
        ));
    }
    if rank < 1 || rank > n_users {
        return Err(Error::domain(format!(
            "rank must satisfy 1 <= rank <= n_users, got {rank} with {n_users} users"
        )));
    }
    let c_e = params.c_e();
    let b_n = params.c_m() * f64::from(n_users - 1);
    let integrand = move |z: f64| {
        if z <= 0.0 {
            return 0.0;
        }
        z / ((1.0 + z) * (c_e + z)) * lower_gamma_reg(rank, b_n / z).expect("in-domain")
    };
    let scale = (c_e.max(1.0) * (1.0 + b_n)).sqrt();
    let est = integrate_half_line(integrand, 1e-9, scale)?;
    Ok(QuadResult {
        value: est.value / std::f64::consts::LN_2,
        abs_error_estimate: est.abs_error_estimate / std::f64::consts::LN_2,
        subdivisions: est.subdivisions,
    })
}

/// The k-th largest element of a finite sequence; ties rank by original
/// position, earlier first.
pub fn kth_largest(values: &[f64], k: usize) -> Result<f64> {
    if k < 1 || k > values.len() {
        return Err(Error::domain(format!(
            "k must satisfy 1 <= k <= len, got k = {k} for {} values",
            values.len()
        )));
    }
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::domain(format!(
            "kth_largest requires finite values, found {bad}"
        )));
    }
    let mut ranked: Vec<(f64, usize)> = values.iter().copied().zip(0..).collect();
    ranked.select_nth_unstable_by(k - 1, |a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    Ok(ranked[k - 1].0)
}
