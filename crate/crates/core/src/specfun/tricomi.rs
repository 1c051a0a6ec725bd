//! Tricomi confluent hypergeometric function U(a; b; z) for a > 0, z > 0.

use crate::error::{Error, Result};
use crate::quad;

use super::gamma::ln_gamma;

/// U(a; b; z) through its integral representation
///
///   U(a, b, z) = 1/Γ(a) ∫_0^∞ e^{-zt} t^{a-1} (1+t)^{b-a-1} dt,
///
/// which is uniformly valid for a > 0, z > 0 — including the nonpositive
/// integer b = k+1-L values the large-L secrecy asymptotics produce, where
/// series-based connection formulas degenerate. The half line is mapped to
/// (0, 1) by t = s·u/(1-u) and integrated adaptively.
pub fn tricomi_u(a: f64, b: f64, z: f64) -> Result<f64> {
    if !(a > 0.0) || !(z > 0.0) || !b.is_finite() {
        return Err(Error::domain(format!(
            "tricomi_u requires a > 0, z > 0, finite b; got ({a}, {b}, {z})"
        )));
    }
    // Characteristic width of e^{-zt} t^{a-1} (1+t)^{b-a-1}: the gamma-like
    // scale a/z, stretched when the algebraic tail (1+t)^{b-1-a} grows.
    let s = (1.0_f64.max(a).max(b - 1.0)) / z;
    let ln_norm = ln_gamma(a)?;
    let integrand = move |u: f64| {
        if u <= 0.0 || u >= 1.0 {
            return 0.0;
        }
        let t = s * u / (1.0 - u);
        let ln_value = -z * t + (a - 1.0) * t.ln() + (b - a - 1.0) * (1.0 + t).ln() + s.ln()
            - 2.0 * (1.0 - u).ln()
            - ln_norm;
        ln_value.exp()
    };
    let est = quad::adaptive(&integrand, 0.0, 1.0, 1e-11, 10_000)?;
    Ok(est.value)
}
