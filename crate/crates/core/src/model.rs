//! Channel parameterization and the SIR distributions of the selected user
//! and the eavesdropper, exact and asymptotic.
//!
//! Every SIR in the model is a ratio of two independent exponential channel
//! gains scaled by the transmit-power ratio, so each distribution depends on
//! its fading parameters only through one scale constant: C_M for the
//! legitimate users and C_E for the eavesdropper branches.

use crate::error::{Error, Result};
use crate::specfun::{ln_choose, lower_gamma_reg};

/// Fading and interference parameters.
///
/// `power_ratio` is the serving-to-interfering transmit power ratio; the four
/// rate parameters describe the exponentially distributed squared channel
/// gains (main and interfering link, at a user and at an eavesdropper
/// antenna). Only the ratios C_M = ρ β_M/λ_M and C_E = ρ β_E/λ_E are
/// observable in any distribution; they are recomputed on demand and never
/// cached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    power_ratio: f64,
    beta_m: f64,
    lambda_m: f64,
    beta_e: f64,
    lambda_e: f64,
}

impl ChannelParams {
    pub fn new(
        power_ratio: f64,
        beta_m: f64,
        lambda_m: f64,
        beta_e: f64,
        lambda_e: f64,
    ) -> Result<Self> {
        for (name, v) in [
            ("power_ratio", power_ratio),
            ("beta_m", beta_m),
            ("lambda_m", lambda_m),
            ("beta_e", beta_e),
            ("lambda_e", lambda_e),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::domain(format!(
                    "channel parameter {name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(Self {
            power_ratio,
            beta_m,
            lambda_m,
            beta_e,
            lambda_e,
        })
    }

    /// Parameters with the stated SIR scale constants and unit rates.
    pub fn from_sir_scales(c_m: f64, c_e: f64) -> Result<Self> {
        Self::new(1.0, c_m, 1.0, c_e, 1.0)
    }

    /// Main-link SIR scale C_M = ρ β_M / λ_M.
    pub fn c_m(&self) -> f64 {
        self.power_ratio * self.beta_m / self.lambda_m
    }

    /// Eavesdropper-branch SIR scale C_E = ρ β_E / λ_E.
    pub fn c_e(&self) -> f64 {
        self.power_ratio * self.beta_e / self.lambda_e
    }

    pub fn power_ratio(&self) -> f64 {
        self.power_ratio
    }
    pub fn beta_m(&self) -> f64 {
        self.beta_m
    }
    pub fn lambda_m(&self) -> f64 {
        self.lambda_m
    }
    pub fn beta_e(&self) -> f64 {
        self.beta_e
    }
    pub fn lambda_e(&self) -> f64 {
        self.lambda_e
    }
}

/// Population size N, selection rank k (1 = best user) and eavesdropper
/// antenna count L.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelectionConfig {
    n_users: u32,
    rank: u32,
    eve_antennas: u32,
}

impl SelectionConfig {
    pub fn new(n_users: u32, rank: u32, eve_antennas: u32) -> Result<Self> {
        if n_users < 1 {
            return Err(Error::domain("n_users must be at least 1".to_string()));
        }
        if rank < 1 || rank > n_users {
            return Err(Error::domain(format!(
                "rank must satisfy 1 <= rank <= n_users, got rank {rank} with {n_users} users"
            )));
        }
        if eve_antennas < 1 {
            return Err(Error::domain("eve_antennas must be at least 1".to_string()));
        }
        Ok(Self {
            n_users,
            rank,
            eve_antennas,
        })
    }

    pub fn n_users(&self) -> u32 {
        self.n_users
    }
    pub fn rank(&self) -> u32 {
        self.rank
    }
    pub fn eve_antennas(&self) -> u32 {
        self.eve_antennas
    }
}

/// Target secrecy rate R_s (bits/s/Hz) and its outage threshold τ = 2^{R_s}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecrecyTarget {
    rate: f64,
}

impl SecrecyTarget {
    pub fn new(rate: f64) -> Result<Self> {
        if !(rate >= 0.0 && rate.is_finite()) {
            return Err(Error::domain(format!(
                "secrecy rate must be finite and >= 0, got {rate}"
            )));
        }
        Ok(Self { rate })
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    /// τ = 2^{R_s}; always >= 1.
    pub fn threshold(&self) -> f64 {
        self.rate.exp2()
    }
}

fn check_scale(name: &str, c: f64) -> Result<()> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::domain(format!(
            "{name} must be positive and finite, got {c}"
        )));
    }
    Ok(())
}

/// CDF of a single SIR: z/(c+z) for z > 0, else 0.
pub fn sir_cdf(z: f64, c: f64) -> Result<f64> {
    check_scale("SIR scale", c)?;
    Ok(sir_cdf_raw(z, c))
}

pub(crate) fn sir_cdf_raw(z: f64, c: f64) -> f64 {
    if z > 0.0 {
        z / (c + z)
    } else {
        0.0
    }
}

/// CDF of the k-th highest of N i.i.d. SIRs with scale `c_m`.
///
/// The binomial tail Σ_{v=N-k+1..N} C(N,v) F^v (1-F)^{N-v} is assembled in
/// log space per term (so N in the thousands cannot overflow the binomial
/// coefficients) and re-exponentiated; terms are summed largest first.
pub fn kth_best_cdf(z: f64, sel: &SelectionConfig, c_m: f64) -> Result<f64> {
    check_scale("c_m", c_m)?;
    Ok(kth_best_cdf_raw(z, sel.n_users, sel.rank, c_m))
}

pub(crate) fn kth_best_cdf_raw(z: f64, n: u32, k: u32, c_m: f64) -> f64 {
    if z <= 0.0 {
        return 0.0;
    }
    if z.is_infinite() {
        return 1.0;
    }
    // ln F and ln(1-F) straight from the ratio form: both stay finite even
    // where z/(c+z) rounds to 1.
    let ln_f = z.ln() - (c_m + z).ln();
    let ln_1mf = c_m.ln() - (c_m + z).ln();
    let n64 = u64::from(n);
    let mut terms: Vec<f64> = (u64::from(n - k + 1)..=n64)
        .map(|v| (ln_choose(n64, v) + v as f64 * ln_f + (n64 - v) as f64 * ln_1mf).exp())
        .collect();
    terms.sort_by(|a, b| b.total_cmp(a));
    let sum: f64 = terms.iter().sum();
    sum.clamp(0.0, 1.0)
}

/// CDF of the eavesdropper's selection-combining output over `l` antennas.
pub fn eve_sc_cdf(z: f64, l: u32, c_e: f64) -> Result<f64> {
    if l < 1 {
        return Err(Error::domain(format!("eve_sc_cdf requires l >= 1, got {l}")));
    }
    check_scale("c_e", c_e)?;
    Ok(eve_sc_cdf_raw(z, l, c_e))
}

pub(crate) fn eve_sc_cdf_raw(z: f64, l: u32, c_e: f64) -> f64 {
    if z <= 0.0 {
        return 0.0;
    }
    sir_cdf_raw(z, c_e).powi(l as i32)
}

/// PDF of the eavesdropper's selection-combining output.
pub fn eve_sc_pdf(z: f64, l: u32, c_e: f64) -> Result<f64> {
    if l < 1 {
        return Err(Error::domain(format!("eve_sc_pdf requires l >= 1, got {l}")));
    }
    check_scale("c_e", c_e)?;
    Ok(eve_sc_pdf_raw(z, l, c_e))
}

pub(crate) fn eve_sc_pdf_raw(z: f64, l: u32, c_e: f64) -> f64 {
    if z <= 0.0 {
        return 0.0;
    }
    // L C_E z^{L-1} / (C_E+z)^{L+1}, in log space so large L cannot overflow
    // the powers.
    let lf = f64::from(l);
    (lf.ln() + c_e.ln() + (lf - 1.0) * z.ln() - (lf + 1.0) * (c_e + z).ln()).exp()
}

/// Large-N approximation of [`kth_best_cdf`]: the inverse-gamma limit law
/// with scale b_N = C_M (N-1). Requires N >= 2 so that b_N > 0.
pub fn kth_best_cdf_asymptotic(z: f64, sel: &SelectionConfig, c_m: f64) -> Result<f64> {
    check_scale("c_m", c_m)?;
    if sel.n_users < 2 {
        return Err(Error::domain(
            "kth_best_cdf_asymptotic requires n_users >= 2 (b_N would vanish)".to_string(),
        ));
    }
    if z <= 0.0 {
        return Ok(0.0);
    }
    let b_n = c_m * f64::from(sel.n_users - 1);
    Ok(1.0 - lower_gamma_reg(sel.rank, b_n / z)?)
}

/// Large-L approximation of [`eve_sc_cdf`]: e^{-b_L/z} with b_L = C_E (L-1).
/// Requires L >= 2 so that b_L > 0.
pub fn eve_sc_cdf_asymptotic(z: f64, l: u32, c_e: f64) -> Result<f64> {
    check_scale("c_e", c_e)?;
    if l < 2 {
        return Err(Error::domain(
            "eve_sc_cdf_asymptotic requires l >= 2 (b_L would vanish)".to_string(),
        ));
    }
    if z <= 0.0 {
        return Ok(0.0);
    }
    let b_l = c_e * f64::from(l - 1);
    Ok((-b_l / z).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sel(n: u32, k: u32, l: u32) -> SelectionConfig {
        SelectionConfig::new(n, k, l).unwrap()
    }

    #[test]
    fn channel_params_validation_and_scales() {
        let p = ChannelParams::new(2.0, 2.0, 0.5, 5.0, 4.0).unwrap();
        assert_eq!(p.c_m(), 8.0);
        assert_eq!(p.c_e(), 2.5);
        assert!(ChannelParams::new(0.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(ChannelParams::new(1.0, -1.0, 1.0, 1.0, 1.0).is_err());
        assert!(ChannelParams::new(1.0, 1.0, 1.0, f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn channel_params_scale_invariance_is_bitwise() {
        // Doubling both powers doubles nothing observable: (2ρ, β, 2λ) gives
        // bit-identical scale constants.
        let p = ChannelParams::new(2.0, 2.0, 0.5, 5.0, 4.0).unwrap();
        let q = ChannelParams::new(4.0, 2.0, 1.0, 5.0, 8.0).unwrap();
        assert_eq!(p.c_m().to_bits(), q.c_m().to_bits());
        assert_eq!(p.c_e().to_bits(), q.c_e().to_bits());
    }

    #[test]
    fn selection_config_invariants() {
        assert!(SelectionConfig::new(10, 11, 1).is_err());
        assert!(SelectionConfig::new(10, 0, 1).is_err());
        assert!(SelectionConfig::new(0, 1, 1).is_err());
        assert!(SelectionConfig::new(10, 10, 1).is_ok());
        assert!(SelectionConfig::new(10, 1, 0).is_err());
    }

    #[test]
    fn secrecy_target_threshold() {
        assert_eq!(SecrecyTarget::new(0.0).unwrap().threshold(), 1.0);
        assert_eq!(SecrecyTarget::new(1.0).unwrap().threshold(), 2.0);
        assert_eq!(SecrecyTarget::new(4.0).unwrap().threshold(), 16.0);
        assert!(SecrecyTarget::new(-0.1).is_err());
        assert!(SecrecyTarget::new(f64::NAN).is_err());
    }

    #[test]
    fn sir_cdf_values() {
        let c = 3.7;
        assert_eq!(sir_cdf(c, c).unwrap(), 0.5);
        assert_eq!(sir_cdf(0.0, c).unwrap(), 0.0);
        assert_eq!(sir_cdf(-1.0, c).unwrap(), 0.0);
        assert!((sir_cdf(1.0, 2.0).unwrap() - 1.0 / 3.0).abs() < 1e-16);
        assert!(sir_cdf(1.0, 0.0).is_err());
    }

    #[test]
    fn kth_best_cdf_single_user() {
        let s = sel(1, 1, 1);
        for z in [-1.0, 0.0, 0.3, 2.0, 55.0] {
            assert!(
                (kth_best_cdf(z, &s, 4.0).unwrap() - sir_cdf(z, 4.0).unwrap()).abs() < 1e-15,
                "z = {z}"
            );
        }
    }

    #[test]
    fn kth_best_cdf_half_point() {
        // F(c_m) = 1/2, so the tail sum is Σ_{v=2..3} C(3,v)/8 = 0.5.
        let got = kth_best_cdf(6.0, &sel(3, 2, 1), 6.0).unwrap();
        assert!((got - 0.5).abs() < 1e-14, "got {got}");
    }

    #[test]
    fn kth_best_cdf_is_a_cdf_and_monotone_in_n_and_k() {
        let c_m = 8.0;
        let grid: Vec<f64> = (0..60).map(|i| 0.5 * f64::from(i)).collect();
        for (n, k) in [(1u32, 1u32), (5, 1), (5, 3), (20, 2), (200, 1)] {
            let s = sel(n, k, 1);
            let mut prev = 0.0;
            for &z in &grid {
                let p = kth_best_cdf(z, &s, c_m).unwrap();
                assert!((0.0..=1.0).contains(&p));
                assert!(p >= prev - 1e-14, "non-monotone at n={n} k={k} z={z}");
                prev = p;
            }
        }
        // Better rank (smaller k) and larger population both push the CDF down.
        for z in [1.0, 8.0, 40.0] {
            let base = kth_best_cdf(z, &sel(10, 2, 1), c_m).unwrap();
            assert!(kth_best_cdf(z, &sel(20, 2, 1), c_m).unwrap() <= base + 1e-15);
            assert!(kth_best_cdf(z, &sel(10, 1, 1), c_m).unwrap() <= base + 1e-15);
            assert!(kth_best_cdf(z, &sel(10, 3, 1), c_m).unwrap() >= base - 1e-15);
        }
    }

    #[test]
    fn kth_best_cdf_binomial_completeness() {
        // Taking k = N covers v = 1..N; adding the v = 0 term closes the
        // binomial expansion to exactly 1.
        for n in [1u32, 3, 7, 40, 1500] {
            for z in [0.4, 2.0, 17.0] {
                let f = sir_cdf(z, 2.5).unwrap();
                let all = kth_best_cdf(z, &sel(n, n, 1), 2.5).unwrap();
                let total = all + (1.0 - f).powi(n as i32);
                assert!((total - 1.0).abs() < 1e-12, "n={n} z={z}: {total}");
            }
        }
    }

    #[test]
    fn kth_best_cdf_survives_huge_populations() {
        // Log-space binomials: N far beyond the ~1030 overflow point of
        // direct C(N, v) evaluation.
        let p = kth_best_cdf(500.0, &sel(5_000, 3, 1), 8.0).unwrap();
        assert!(p.is_finite() && (0.0..=1.0).contains(&p));
    }

    #[test]
    fn kth_best_cdf_empirical_oracle() {
        // 10^7 draws of the 3rd-best of 10 SIRs; local generator, nothing
        // shared with the oracle module.
        let mut state = 0x9E37_79B9_7F4A_7C15u64;
        let mut unit = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 + 0.5) / (1u64 << 53) as f64
        };
        let (n, k, z, c_m) = (10usize, 3usize, 5.0, 8.0);
        let draws = 10_000_000usize;
        let mut hits = 0u64;
        let mut sirs = vec![0.0f64; n];
        for _ in 0..draws {
            for slot in sirs.iter_mut() {
                let h = -unit().ln();
                let g = -unit().ln();
                // c_m folded into the numerator: Z = c_m * Exp(1)/Exp(1).
                *slot = c_m * h / g;
            }
            sirs.sort_by(|a, b| b.total_cmp(a));
            if sirs[k - 1] <= z {
                hits += 1;
            }
        }
        let empirical = hits as f64 / draws as f64;
        let exact = kth_best_cdf(z, &sel(n as u32, k as u32, 1), c_m).unwrap();
        let se = (exact * (1.0 - exact) / draws as f64).sqrt();
        assert!(
            (empirical - exact).abs() <= 3.0 * se,
            "empirical {empirical} vs exact {exact} (3 SE = {})",
            3.0 * se
        );
    }

    #[test]
    fn eve_sc_cdf_values() {
        let c_e = 2.5;
        for l in [1u32, 2, 5, 17] {
            let got = eve_sc_cdf(c_e, l, c_e).unwrap();
            let want = 0.5f64.powi(l as i32);
            assert_eq!(got, want, "L = {l}");
        }
        assert_eq!(eve_sc_cdf(1.0, 1, 2.0).unwrap(), sir_cdf(1.0, 2.0).unwrap());
        let got = eve_sc_cdf(3.0, 2, 2.5).unwrap();
        assert!((got - (3.0f64 / 5.5).powi(2)).abs() < 1e-15);
        assert_eq!(eve_sc_cdf(-2.0, 3, 2.5).unwrap(), 0.0);
        assert!(eve_sc_cdf(1.0, 0, 2.5).is_err());
    }

    #[test]
    fn eve_sc_pdf_matches_cdf_derivative() {
        // Central difference of the CDF, step 1e-5.
        let (z, l, c_e) = (1.7, 3u32, 2.5);
        let h = 1e-5;
        let numeric =
            (eve_sc_cdf(z + h, l, c_e).unwrap() - eve_sc_cdf(z - h, l, c_e).unwrap()) / (2.0 * h);
        let got = eve_sc_pdf(z, l, c_e).unwrap();
        assert!((got - numeric).abs() < 1e-6, "{got} vs {numeric}");
    }

    #[test]
    fn eve_sc_pdf_l1_reduction() {
        for z in [0.2, 1.0, 9.0] {
            let got = eve_sc_pdf(z, 1, 2.5).unwrap();
            let want = 2.5 / ((2.5 + z) * (2.5 + z));
            assert!(((got - want) / want).abs() < 1e-14);
        }
        assert_eq!(eve_sc_pdf(0.0, 1, 2.5).unwrap(), 0.0);
    }

    #[test]
    fn asymptotic_kth_best_cdf() {
        let c_m = 8.0;
        let s = sel(200, 1, 1);
        let b_n = c_m * 199.0;
        // k = 1 at z = b_N: Γ(1, 1) = e^{-1}.
        let got = kth_best_cdf_asymptotic(b_n, &s, c_m).unwrap();
        assert!((got - (-1.0f64).exp()).abs() < 1e-14);
        // CDF limits.
        assert_eq!(kth_best_cdf_asymptotic(0.0, &s, c_m).unwrap(), 0.0);
        assert_eq!(kth_best_cdf_asymptotic(-3.0, &s, c_m).unwrap(), 0.0);
        assert!(kth_best_cdf_asymptotic(1e13, &s, c_m).unwrap() > 1.0 - 1e-9);
        // Convergence toward the exact CDF at N = 200.
        let exact = kth_best_cdf(800.0, &s, c_m).unwrap();
        let approx = kth_best_cdf_asymptotic(800.0, &s, c_m).unwrap();
        assert!(
            (exact - approx).abs() < 0.01,
            "exact {exact} vs asymptotic {approx}"
        );
        assert!(kth_best_cdf_asymptotic(1.0, &sel(1, 1, 1), c_m).is_err());
    }

    #[test]
    fn asymptotic_eve_sc_cdf() {
        let c_e = 2.5;
        let b_l = c_e * 99.0;
        let got = eve_sc_cdf_asymptotic(b_l, 100, c_e).unwrap();
        assert!((got - (-1.0f64).exp()).abs() < 1e-14);
        assert!(eve_sc_cdf_asymptotic(1e14, 100, c_e).unwrap() > 1.0 - 1e-9);
        let exact = eve_sc_cdf(500.0, 100, c_e).unwrap();
        let approx = eve_sc_cdf_asymptotic(500.0, 100, c_e).unwrap();
        assert!((exact - approx).abs() < 0.01);
        assert!(eve_sc_cdf_asymptotic(1.0, 1, c_e).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(128))]

            /// Every CDF stays in [0,1], vanishes for z <= 0 and is
            /// nondecreasing between any two points.
            #[test]
            fn cdfs_are_cdfs(
                c in 0.05f64..50.0,
                za in -10.0f64..600.0,
                zb in -10.0f64..600.0,
                n_raw in 1u32..40,
                k_raw in 0u32..40,
                l in 1u32..12,
            ) {
                let n = n_raw;
                let k = k_raw % n + 1;
                let s = SelectionConfig::new(n, k, l).unwrap();
                let (lo, hi) = if za <= zb { (za, zb) } else { (zb, za) };
                for z in [lo, hi] {
                    let f = kth_best_cdf(z, &s, c).unwrap();
                    prop_assert!((0.0..=1.0).contains(&f));
                    if z <= 0.0 {
                        prop_assert_eq!(f, 0.0);
                    }
                    let g = eve_sc_cdf(z, l, c).unwrap();
                    prop_assert!((0.0..=1.0).contains(&g));
                    prop_assert!(eve_sc_pdf(z, l, c).unwrap() >= 0.0);
                }
                prop_assert!(
                    kth_best_cdf(lo, &s, c).unwrap()
                        <= kth_best_cdf(hi, &s, c).unwrap() + 1e-12
                );
                prop_assert!(
                    eve_sc_cdf(lo, l, c).unwrap() <= eve_sc_cdf(hi, l, c).unwrap() + 1e-12
                );
            }

            /// The binomial tail with k = N plus the v = 0 term closes to 1.
            #[test]
            fn binomial_expansion_closes(
                c in 0.05f64..50.0,
                z in 0.01f64..500.0,
                n in 1u32..60,
            ) {
                let f = sir_cdf(z, c).unwrap();
                let all = kth_best_cdf(z, &SelectionConfig::new(n, n, 1).unwrap(), c).unwrap();
                let total = all + (1.0 - f).powi(n as i32);
                prop_assert!((total - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn distributions_depend_only_on_scale_ratio() {
        // (ρ, β, λ) and (2ρ, β, 2λ) must agree bit for bit.
        let p = ChannelParams::new(2.0, 2.0, 0.5, 5.0, 4.0).unwrap();
        let q = ChannelParams::new(4.0, 2.0, 1.0, 5.0, 8.0).unwrap();
        let s = sel(12, 2, 3);
        for z in [0.1, 1.0, 7.7, 123.0] {
            let a = kth_best_cdf(z, &s, p.c_m()).unwrap();
            let b = kth_best_cdf(z, &s, q.c_m()).unwrap();
            assert_eq!(a.to_bits(), b.to_bits());
            let a = eve_sc_cdf(z, 3, p.c_e()).unwrap();
            let b = eve_sc_cdf(z, 3, q.c_e()).unwrap();
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }
}
