//! Test-only adaptive Simpson integrator.
//!
//! Deliberately separate from the production Gauss-Kronrod engine in
//! [`crate::quad`]: unit tests use this as the independent side of every
//! quadrature cross-check, so the two must not share code.

/// Adaptive Simpson on a finite interval with Richardson acceptance.
pub(crate) fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    recurse(f, a, b, fa, fm, fb, whole, tol, 60)
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// ∫_0^∞ f to a relative tolerance: a loose pass sizes the integral, a
/// second pass converts that into an absolute budget.
pub(crate) fn integrate_to_infinity_rel(
    f: impl Fn(f64) -> f64 + Copy,
    scale: f64,
    rel_tol: f64,
) -> f64 {
    let rough = integrate_to_infinity(f, scale, 1e-4);
    integrate_to_infinity(f, scale, rel_tol * rough.abs().max(f64::MIN_POSITIVE))
}

/// ∫_0^∞ f via the substitution t = scale·u/(1-u).
pub(crate) fn integrate_to_infinity(f: impl Fn(f64) -> f64, scale: f64, tol: f64) -> f64 {
    let g = move |u: f64| {
        if u <= 0.0 || u >= 1.0 {
            return 0.0;
        }
        let one_minus = 1.0 - u;
        let t = scale * u / one_minus;
        let jacobian = scale / (one_minus * one_minus);
        let v = f(t) * jacobian;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    integrate(&g, 0.0, 1.0, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_integrals() {
        let got = integrate(&|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1e-12);
        assert!((got - 2.0).abs() < 1e-11);

        let got = integrate_to_infinity(|t: f64| (-t).exp(), 1.0, 1e-12);
        assert!((got - 1.0).abs() < 1e-10);

        // Γ(5) = 24.
        let got = integrate_to_infinity(|t: f64| t.powi(4) * (-t).exp(), 4.0, 1e-12);
        assert!((got - 24.0).abs() / 24.0 < 1e-10);
    }
}
