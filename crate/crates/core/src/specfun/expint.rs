//! The exponential integral E₁ and its exponentially scaled companion.

use crate::error::{Error, Result};

use super::EULER_MASCHERONI;

const SERIES_CAP: usize = 2_000;
const CF_CAP: usize = 1_000;

/// E₁(x) = ∫_x^∞ e^{-t}/t dt for x > 0.
///
/// Power series for x <= 1, modified-Lentz continued fraction above.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!(
            "exp_integral_e1 requires x > 0, got {x}"
        )));
    }
    if x <= 1.0 {
        e1_series(x)
    } else {
        Ok(e1_cf_scaled(x)? * (-x).exp())
    }
}

/// The scaled product e^x E₁(x), stable for arbitrarily large x.
///
/// The continued fraction yields the scaled value directly, so e^x is never
/// materialized; this is the building block for b^k e^b Γ(1-k, b) and the
/// fused e^a Ei(-a) products.
pub fn exp_e1_scaled(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!(
            "exp_e1_scaled requires x > 0, got {x}"
        )));
    }
    if x <= 1.0 {
        Ok(e1_series(x)? * x.exp())
    } else {
        e1_cf_scaled(x)
    }
}

/// E₁(x) = -γ - ln x + Σ_{n>=1} (-1)^{n+1} x^n / (n n!), for x in (0, 1].
fn e1_series(x: f64) -> Result<f64> {
    let mut sum = -EULER_MASCHERONI - x.ln();
    let mut power = 1.0; // (-x)^n / n!
    for n in 1..=SERIES_CAP {
        power *= -x / n as f64;
        let contribution = -power / n as f64;
        sum += contribution;
        if contribution.abs() <= f64::EPSILON * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::numeric(
        format!("E1 series did not converge at x = {x}"),
        Some(sum),
    ))
}

/// Modified Lentz evaluation of e^x E₁(x) = 1/(x+1- 1/(x+3- 4/(x+5- ...))).
fn e1_cf_scaled(x: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=CF_CAP {
        let a = -((i * i) as f64);
        b += 2.0;
        d = a * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < 1e-15 {
            return Ok(h);
        }
    }
    Err(Error::numeric(
        format!("E1 continued fraction did not converge at x = {x}"),
        Some(h),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpson::integrate_to_infinity_rel;

    /// Independent oracle: adaptive quadrature of ∫_x^∞ e^{-t}/t dt, written
    /// as ∫_0^∞ e^{-(x+s)}/(x+s) ds.
    fn e1_oracle(x: f64) -> f64 {
        integrate_to_infinity_rel(move |s| (-(x + s)).exp() / (x + s), 1.0, 1e-13)
    }

    #[test]
    fn matches_quadrature_oracle() {
        for x in [0.05, 0.3, 1.0, 2.5, 10.0, 30.0] {
            let got = exp_integral_e1(x).unwrap();
            let want = e1_oracle(x);
            assert!(
                ((got - want) / want).abs() < 1e-12,
                "E1({x}) = {got}, oracle {want}"
            );
        }
    }

    #[test]
    fn frozen_oracle_values() {
        // Frozen from e1_oracle.
        assert!(((exp_integral_e1(1.0).unwrap() - 0.219_383_934_395_52) / 0.219_383_934_395_52)
            .abs()
            .lt(&1e-12));
        assert!(
            ((exp_integral_e1(10.0).unwrap() - 4.156_968_929_685_3e-6) / 4.156_968_929_685_3e-6)
                .abs()
                .lt(&1e-12)
        );
    }

    #[test]
    fn classical_bracketing_bounds() {
        // e^{-x}/(x+1) < E1(x) < e^{-x}/x for all x > 0.
        for i in 0..400 {
            let x = 0.01 + 0.25 * f64::from(i);
            let e1 = exp_integral_e1(x).unwrap();
            let e = (-x).exp();
            assert!(e / (x + 1.0) < e1 && e1 < e / x, "bounds fail at x={x}");
        }
    }

    #[test]
    fn scaled_form_has_no_overflow() {
        // e^x E1(x) ~ 1/x - 1/x^2 for large x; plain E1 underflows there.
        for x in [100.0, 1e4, 1e6, 1e8] {
            let s = exp_e1_scaled(x).unwrap();
            let approx = 1.0 / x - 1.0 / (x * x);
            assert!(
                ((s - approx) / approx).abs() < 10.0 / (x * x),
                "scaled E1 at {x}: {s} vs {approx}"
            );
        }
    }

    #[test]
    fn scaled_and_plain_agree_in_overlap() {
        for x in [0.2, 0.9, 1.0, 1.1, 4.0, 40.0] {
            let plain = exp_integral_e1(x).unwrap();
            let scaled = exp_e1_scaled(x).unwrap() * (-x).exp();
            assert!(((plain - scaled) / plain).abs() < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(exp_integral_e1(0.0).is_err());
        assert!(exp_integral_e1(-1.0).is_err());
        assert!(exp_e1_scaled(f64::NAN).is_err());
    }
}
