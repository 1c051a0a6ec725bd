//! The validation suite behind `sirsec validate` and the acceptance test
//! target: cross-oracle equivalences, limit laws and identity checks, each
//! with its tolerance pinned in code.

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;

use sirsec_core::analytic::{
    esc_asymptotic, secrecy_pair, sop_asymptotic_n, sop_equal_nl_limit, sop_exact,
};
use sirsec_core::oracle::{
    esc_asymptotic_quadrature, esc_quadrature, mc_estimate, rng::derive_seed, sop_quadrature,
    SimConfig,
};
use sirsec_core::specfun::{
    digamma_int, exp_e1_scaled, gauss_2f1, lower_gamma_reg, tricomi_u,
};
use sirsec_core::{ChannelParams, SecrecyTarget, SelectionConfig};

use crate::error::{CliError, CliResult};

/// Knobs for a validation run.
#[derive(Debug, Clone)]
pub struct CheckConfig {
    /// Reduced grids and sample counts (target: well under 30 s).
    pub quick: bool,
    /// Multiplies β_M on the closed-form side of the three-way agreement
    /// check. 1.0 in normal runs; the hidden fault-injection flag sets 1.01
    /// to prove the suite actually bites.
    pub fault_beta_m_scale: f64,
    /// Path to the sirsec binary for the CSV determinism check.
    pub binary: Option<PathBuf>,
}

impl CheckConfig {
    pub fn full(binary: Option<PathBuf>) -> Self {
        CheckConfig {
            quick: false,
            fault_beta_m_scale: 1.0,
            binary,
        }
    }

    pub fn quick(binary: Option<PathBuf>) -> Self {
        CheckConfig {
            quick: true,
            ..CheckConfig::full(binary)
        }
    }
}

/// Outcome of one criterion.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

impl CheckResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {} {} {} — {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.details
        )
    }
}

fn fig2_channel() -> ChannelParams {
    ChannelParams::new(2.0, 2.0, 0.5, 5.0, 4.0).unwrap()
}

fn fig4_channel() -> ChannelParams {
    ChannelParams::new(4.0, 2.0, 4.0, 3.0, 3.0).unwrap()
}

fn scaled_beta_m(p: &ChannelParams, scale: f64) -> ChannelParams {
    ChannelParams::new(
        p.power_ratio(),
        p.beta_m() * scale,
        p.lambda_m(),
        p.beta_e(),
        p.lambda_e(),
    )
    .unwrap()
}

fn sel(n: u32, k: u32, l: u32) -> SelectionConfig {
    SelectionConfig::new(n, k, l).unwrap()
}

fn rate(r: f64) -> SecrecyTarget {
    SecrecyTarget::new(r).unwrap()
}

/// Criterion 1 — three-way SOP agreement over the full grid: closed form vs
/// quadrature within 1e-6 relative everywhere, and 10^6-sample Monte Carlo
/// bracketing the exact value within 3.29 SE at >= 95% of points.
pub fn criterion_1(cfg: &CheckConfig) -> CheckResult {
    let start = Instant::now();
    let n_grid: &[u32] = if cfg.quick { &[2, 10, 50] } else { &[2, 5, 10, 20, 50] };
    let rs_grid: &[f64] = if cfg.quick {
        &[0.0, 1.0]
    } else {
        &[0.0, 0.5, 1.0, 4.0]
    };
    let samples: u64 = if cfg.quick { 100_000 } else { 1_000_000 };

    let mut points = Vec::new();
    for channel in [fig2_channel(), fig4_channel()] {
        for &n in n_grid {
            let mut ks = vec![1u32, 2, 3.min(n)];
            ks.sort_unstable();
            ks.dedup();
            for k in ks {
                for l in [1u32, 2, 4] {
                    for &rs in rs_grid {
                        points.push((channel, n, k, l, rs));
                    }
                }
            }
        }
    }

    let fault = cfg.fault_beta_m_scale;
    let outcomes: Vec<(f64, bool)> = points
        .par_iter()
        .enumerate()
        .map(|(idx, &(channel, n, k, l, rs))| {
            let s = sel(n, k, l);
            let t = rate(rs);
            let exact = sop_exact(&scaled_beta_m(&channel, fault), &s, &t).unwrap();
            let quad = sop_quadrature(&channel, &s, &t).unwrap().value;
            let rel = ((exact - quad) / quad.max(f64::MIN_POSITIVE)).abs();
            let sim = SimConfig::new(samples, derive_seed(42, idx as u64), 1 << 16).unwrap();
            let mc = mc_estimate(&channel, &s, &t, &sim).unwrap().sop;
            let bracketed = (mc.mean - exact).abs() <= 3.29 * mc.std_error;
            (rel, bracketed)
        })
        .collect();

    let max_rel = outcomes.iter().map(|o| o.0).fold(0.0f64, f64::max);
    let bracketed = outcomes.iter().filter(|o| o.1).count();
    let fraction = bracketed as f64 / outcomes.len() as f64;
    let passed = max_rel <= 1e-6 && fraction >= 0.95;
    CheckResult {
        id: 1,
        name: "three-way SOP agreement (exact vs quadrature vs Monte Carlo)",
        passed,
        details: format!(
            "{} points; max |exact-quad|/quad = {max_rel:.2e} (tol 1e-6); MC bracketed {bracketed}/{} = {:.1}% (need >= 95%); {:.1}s",
            outcomes.len(),
            outcomes.len(),
            100.0 * fraction,
            start.elapsed().as_secs_f64()
        ),
    }
}

/// Criterion 2 — SOP at zero rate is the SPSC complement to 1e-12.
pub fn criterion_2(cfg: &CheckConfig) -> CheckResult {
    let n_grid: &[u32] = if cfg.quick { &[2, 10, 50] } else { &[2, 5, 10, 20, 50] };
    let mut worst = 0.0f64;
    for channel in [fig2_channel(), fig4_channel()] {
        for &n in n_grid {
            let mut ks = vec![1u32, 2, 3.min(n)];
            ks.sort_unstable();
            ks.dedup();
            for k in ks {
                for l in [1u32, 2, 4] {
                    let s = sel(n, k, l);
                    let pair =
                        secrecy_pair(&channel, &s, &rate(0.0), sirsec_core::analytic::Method::Exact,)
                            .unwrap();
                    let gap = (pair.sop + pair.spsc - 1.0).abs();
                    worst = worst.max(gap);
                }
            }
        }
    }
    CheckResult {
        id: 2,
        name: "SPSC complement identity at zero rate",
        passed: worst <= 1e-12,
        details: format!("max |sop(0) + spsc - 1| = {worst:.2e} (tol 1e-12)"),
    }
}

/// Criterion 3 — the large-N SOP approximation tightens from N = 20 to
/// N = 200 and lands within 10% for k = 1, R_s = 1.
pub fn criterion_3(_cfg: &CheckConfig) -> CheckResult {
    let p = fig2_channel();
    let mut details = Vec::new();
    let mut passed = true;
    for k in [1u32, 2] {
        for rs in [1.0, 4.0] {
            let t = rate(rs);
            let rel = |n: u32| {
                let exact = sop_exact(&p, &sel(n, k, 2), &t).unwrap();
                let approx = sop_asymptotic_n(&p, &sel(n, k, 2), &t).unwrap();
                ((approx - exact) / exact).abs()
            };
            let coarse = rel(20);
            let fine = rel(200);
            let mut ok = fine < coarse;
            if k == 1 && rs == 1.0 {
                ok = ok && fine <= 0.10;
            }
            passed &= ok;
            details.push(format!("k={k},Rs={rs}: {coarse:.3}->{fine:.3}"));
        }
    }
    CheckResult {
        id: 3,
        name: "asymptotic SOP convergence with N",
        passed,
        details: details.join("; "),
    }
}

/// Criterion 4 — with N = L = 256 the Monte Carlo SOP sits at the constant
/// 1 - (1 + τ β_E λ_M/(λ_E β_M))^{-k}.
pub fn criterion_4(cfg: &CheckConfig) -> CheckResult {
    let start = Instant::now();
    let p = fig2_channel();
    let t = rate(0.5);
    let samples: u64 = if cfg.quick { 200_000 } else { 1_000_000 };
    let mut passed = true;
    let mut details = Vec::new();

    // Sanity-pin the k = 1 constant before using it.
    let limit1 = sop_equal_nl_limit(&p, 1, &t).unwrap();
    passed &= (limit1 - 0.3065).abs() < 1e-4;

    for k in [1u32, 2] {
        let limit = sop_equal_nl_limit(&p, k, &t).unwrap();
        let sim = SimConfig::new(samples, derive_seed(42, 256 + u64::from(k)), 1 << 16).unwrap();
        let mc = mc_estimate(&p, &sel(256, k, 256), &t, &sim).unwrap().sop;
        let tol = (3.29 * mc.std_error).max(0.02);
        let ok = (mc.mean - limit).abs() <= tol;
        passed &= ok;
        details.push(format!(
            "k={k}: mc {:.4} vs limit {limit:.4} (tol {tol:.4})",
            mc.mean
        ));
    }
    details.push(format!("{:.1}s", start.elapsed().as_secs_f64()));
    CheckResult {
        id: 4,
        name: "N = L joint limit constant",
        passed,
        details: details.join("; "),
    }
}

/// Criterion 5 — ESC gains one bit when N-1 doubles (O(log N) scaling).
pub fn criterion_5(_cfg: &CheckConfig) -> CheckResult {
    let p = fig4_channel();
    let a = esc_quadrature(&p, &sel(64, 1, 1)).unwrap().value;
    let b = esc_quadrature(&p, &sel(128, 1, 1)).unwrap().value;
    let step = b - a;
    CheckResult {
        id: 5,
        name: "ESC log-scaling step (N = 64 -> 128)",
        passed: (step - 1.0).abs() <= 0.1,
        details: format!("step = {step:.4} bits/s/Hz (want 1.0 +- 0.1)"),
    }
}

/// Criterion 6 — the rank gaps approach H_{k-1}/ln 2.
pub fn criterion_6(_cfg: &CheckConfig) -> CheckResult {
    let p = fig4_channel();
    let esc = |k: u32| esc_quadrature(&p, &sel(512, k, 1)).unwrap().value;
    let e1 = esc(1);
    let gap12 = e1 - esc(2);
    let gap13 = e1 - esc(3);
    let ok12 = (gap12 - std::f64::consts::LOG2_E).abs() <= 0.05;
    let ok13 = (gap13 - 1.5 * std::f64::consts::LOG2_E).abs() <= 0.08;
    CheckResult {
        id: 6,
        name: "harmonic-number ESC gaps at N = 512",
        passed: ok12 && ok13,
        details: format!(
            "k1-k2 = {gap12:.4} (want 1.4427 +- 0.05); k1-k3 = {gap13:.4} (want 2.1640 +- 0.08)"
        ),
    }
}

/// Criterion 7 — closed-form asymptotic ESC against its defining integral in
/// both C_E regimes, plus branch continuity across C_E = 1.
pub fn criterion_7(_cfg: &CheckConfig) -> CheckResult {
    let unit_ce = ChannelParams::new(2.0, 2.0, 2.0, 2.0, 4.0).unwrap();
    let mut passed = true;
    let mut max_rel = 0.0f64;
    for channel in [fig4_channel(), unit_ce] {
        for (n, k) in [(50u32, 1u32), (100, 2), (500, 3)] {
            let closed = esc_asymptotic(&channel, n, k).unwrap();
            let quad = esc_asymptotic_quadrature(&channel, n, k).unwrap().value;
            let rel = ((closed - quad) / quad).abs();
            max_rel = max_rel.max(rel);
            passed &= rel <= 1e-6;
        }
    }
    // Continuity: C_E = 1 +- 1e-4 against the degenerate branch.
    let mut max_jump = 0.0f64;
    let at_one = esc_asymptotic(&ChannelParams::new(1.0, 2.0, 1.0, 1.0, 1.0).unwrap(), 50, 1)
        .unwrap();
    for eps in [-1e-4, 1e-4] {
        let p = ChannelParams::new(1.0, 2.0, 1.0, 1.0 + eps, 1.0).unwrap();
        let near = esc_asymptotic(&p, 50, 1).unwrap();
        max_jump = max_jump.max((near - at_one).abs());
    }
    passed &= max_jump <= 1e-3;
    CheckResult {
        id: 7,
        name: "closed-form ESC vs quadrature, both C_E regimes",
        passed,
        details: format!(
            "max rel diff = {max_rel:.2e} (tol 1e-6); branch jump = {max_jump:.2e} (tol 1e-3)"
        ),
    }
}

/// Criterion 8 — the special-function identity suite at 1e-9 or tighter,
/// finishing within 5 seconds.
pub fn criterion_8(_cfg: &CheckConfig) -> CheckResult {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut track = |err: f64| worst = worst.max(err);

    // Gauss hypergeometric closed forms.
    track((gauss_2f1(1.3, 4.2, 2.1, 0.0).unwrap() - 1.0).abs());
    let want = 2.0 * std::f64::consts::LN_2;
    track(((gauss_2f1(1.0, 1.0, 2.0, 0.5).unwrap() - want) / want).abs());
    let want = std::f64::consts::FRAC_PI_4;
    track(((gauss_2f1(0.5, 1.0, 1.5, -1.0).unwrap() - want) / want).abs());

    // U(a, a+1, z) = z^{-a}.
    for a in 1..=6u32 {
        for z in [0.1f64, 1.0, 10.0, 100.0] {
            let af = f64::from(a);
            let got = tricomi_u(af, af + 1.0, z).unwrap();
            let want = z.powf(-af);
            track(((got - want) / want).abs());
        }
    }

    // U(1, 1, z) = e^z E1(z).
    for z in [0.5f64, 1.0, 5.0, 20.0] {
        let got = tricomi_u(1.0, 1.0, z).unwrap();
        let want = exp_e1_scaled(z).unwrap();
        track(((got - want) / want).abs());
    }

    // Γ(1, x) = e^{-x}: as the upper tail where the complement is
    // representable, and as the CDF 1 - e^{-x} on the full grid (past
    // x ~ 13 the tail is below the f64 spacing at 1, so re-complementing
    // 1 - P cannot carry relative accuracy).
    for x in [0.1f64, 1.0, 5.0] {
        let got = 1.0 - lower_gamma_reg(1, x).unwrap();
        let want = (-x).exp();
        track(((got - want) / want).abs());
    }
    for x in [0.1f64, 1.0, 5.0, 30.0] {
        let got = lower_gamma_reg(1, x).unwrap();
        let want = 1.0 - (-x).exp();
        track(((got - want) / want).abs());
    }

    // Digamma recurrence ψ(k+1) - ψ(k) = 1/k.
    for k in 1..=50u32 {
        let diff = digamma_int(k + 1).unwrap() - digamma_int(k).unwrap();
        track((diff - 1.0 / f64::from(k)).abs());
    }

    let elapsed = start.elapsed().as_secs_f64();
    CheckResult {
        id: 8,
        name: "special-function identity suite",
        passed: worst <= 1e-9 && elapsed <= 5.0,
        details: format!("max deviation = {worst:.2e} (tol 1e-9); {elapsed:.2}s (cap 5s)"),
    }
}

/// Criterion 9 — sweeps are byte-identical across repeated runs and across
/// worker counts.
pub fn criterion_9(cfg: &CheckConfig) -> CheckResult {
    let fail = |details: String| CheckResult {
        id: 9,
        name: "CSV determinism across runs and worker counts",
        passed: false,
        details,
    };
    let Some(binary) = cfg.binary.clone() else {
        return fail("sirsec binary path unavailable".to_string());
    };
    let dir = std::env::temp_dir().join(format!("sirsec-determinism-{}", std::process::id()));
    if let Err(e) = std::fs::create_dir_all(&dir) {
        return fail(format!("cannot create {}: {e}", dir.display()));
    }
    let samples = if cfg.quick { "20000" } else { "100000" };
    let run = |name: &str, threads: &str| -> Result<Vec<u8>, String> {
        let out = dir.join(name);
        let status = std::process::Command::new(&binary)
            .args([
                "sweep",
                "--var",
                "n_users",
                "--values",
                "2,5,10",
                "--metric",
                "sop",
                "--methods",
                "exact,asymptotic_n,quadrature,monte_carlo",
                "--k",
                "1",
                "--l",
                "2",
                "--rs",
                "1",
                "--samples",
                samples,
                "--seed",
                "123",
                "--output",
            ])
            .arg(&out)
            .env("RAYON_NUM_THREADS", threads)
            .status()
            .map_err(|e| format!("cannot launch {}: {e}", binary.display()))?;
        if !status.success() {
            return Err(format!("sweep exited with {status}"));
        }
        std::fs::read(&out).map_err(|e| format!("cannot read {}: {e}", out.display()))
    };
    let result = (|| {
        let a = run("a.csv", "2")?;
        let b = run("b.csv", "2")?;
        let c = run("c.csv", "1")?;
        if a != b {
            return Err("repeated runs differ".to_string());
        }
        if a != c {
            return Err("worker count changed the output".to_string());
        }
        Ok(a.len())
    })();
    let _ = std::fs::remove_dir_all(&dir);
    match result {
        Ok(bytes) => CheckResult {
            id: 9,
            name: "CSV determinism across runs and worker counts",
            passed: true,
            details: format!("3 runs, {bytes} bytes, byte-identical"),
        },
        Err(e) => fail(e),
    }
}

pub fn run_all(cfg: &CheckConfig) -> Vec<CheckResult> {
    vec![
        criterion_1(cfg),
        criterion_2(cfg),
        criterion_3(cfg),
        criterion_4(cfg),
        criterion_5(cfg),
        criterion_6(cfg),
        criterion_7(cfg),
        criterion_8(cfg),
        criterion_9(cfg),
    ]
}

/// Entry point for the `validate` subcommand.
pub fn run_validate(quick: bool, inject_fault: bool) -> CliResult<()> {
    let mut cfg = if quick {
        CheckConfig::quick(std::env::current_exe().ok())
    } else {
        CheckConfig::full(std::env::current_exe().ok())
    };
    if inject_fault {
        cfg.fault_beta_m_scale = 1.01;
    }
    let results = run_all(&cfg);
    for r in &results {
        println!("{}", r.line());
    }
    let failures = results.iter().filter(|r| !r.passed).count();
    if failures == 0 {
        println!("all {} checks passed", results.len());
        Ok(())
    } else {
        Err(CliError::CheckFailure(format!(
            "{failures} of {} checks failed",
            results.len()
        )))
    }
}
