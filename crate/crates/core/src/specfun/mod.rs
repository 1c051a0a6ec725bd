//! Scalar special functions behind the closed-form secrecy expressions.
//!
//! Everything here is pure and reentrant. Out-of-domain arguments return
//! [`crate::Error::Domain`] rather than NaN, and routines that iterate carry
//! hard caps whose violation is an explicit numeric error — never a silent
//! partial value.

mod expint;
mod gamma;
mod hyp2f1;
mod tricomi;

pub use expint::{exp_e1_scaled, exp_integral_e1};
pub use gamma::{ln_beta, ln_gamma, lower_gamma_reg, upper_gamma_scaled};
pub use hyp2f1::gauss_2f1;
pub use tricomi::tricomi_u;

pub(crate) use gamma::ln_choose;

use crate::error::{Error, Result};

/// The Euler-Mascheroni constant, -ψ(1).
pub const EULER_MASCHERONI: f64 = 0.577_215_664_901_532_9;

/// Harmonic number H_m = Σ_{j=1..m} 1/j, with H_0 = 0.
pub fn harmonic(m: u32) -> f64 {
    let mut h = 0.0;
    for j in 1..=m {
        h += 1.0 / f64::from(j);
    }
    h
}

/// Digamma at a positive integer: ψ(k) = -γ + H_{k-1}.
pub fn digamma_int(k: u32) -> Result<f64> {
    if k < 1 {
        return Err(Error::domain(format!("digamma_int requires k >= 1, got {k}")));
    }
    Ok(harmonic(k - 1) - EULER_MASCHERONI)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_small_values() {
        assert_eq!(harmonic(0), 0.0);
        assert_eq!(harmonic(1), 1.0);
        assert!((harmonic(3) - 11.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn digamma_values() {
        assert!((digamma_int(1).unwrap() + 0.577_215_664_9).abs() < 1e-10);
        assert!((digamma_int(2).unwrap() - 0.422_784_335_1).abs() < 1e-10);
        let want = -0.577_215_664_9 + 1.0 + 0.5 + 1.0 / 3.0;
        assert!((digamma_int(4).unwrap() - want).abs() < 1e-9);
        assert!(digamma_int(0).is_err());
    }

    #[test]
    fn digamma_recurrence() {
        // ψ(k+1) - ψ(k) = 1/k.
        for k in 1..=50u32 {
            let diff = digamma_int(k + 1).unwrap() - digamma_int(k).unwrap();
            assert!(
                (diff - 1.0 / f64::from(k)).abs() < 1e-14,
                "recurrence fails at k = {k}: {diff}"
            );
        }
    }
}
