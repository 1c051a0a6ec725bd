//! Adaptive Gauss-Kronrod quadrature on finite intervals.
//!
//! This is the single integration engine behind both the Tricomi-U integral
//! representation and the oracle-grade evaluation of the defining SOP/ESC
//! integrals. Worst-interval-first bisection with the 21-point Kronrod rule
//! and the classic QUADPACK error rescaling.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Kronrod abscissae for the 21-point rule (positive half, descending).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

/// Weights of the embedded 10-point Gauss rule.
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Weights of the 21-point Kronrod rule.
#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub(crate) struct QuadEstimate {
    pub value: f64,
    pub abs_error: f64,
    pub subdivisions: u32,
}

/// QUADPACK's conservative rescaling of the raw Kronrod-Gauss difference.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

/// One 21-point Kronrod pass over `[a, b]`. Returns `(integral, error)`.
fn qk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut res_kronrod = fc * WGK[10];
    let mut res_gauss = 0.0;
    let mut res_abs = res_kronrod.abs();

    let mut fv1 = [0.0f64; 10];
    let mut fv2 = [0.0f64; 10];

    for j in 0..10 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[j] = f1;
        fv2[j] = f2;
        let sum = f1 + f2;
        res_kronrod += WGK[j] * sum;
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * sum;
        }
    }

    if !res_kronrod.is_finite() {
        return Err(Error::numeric(
            format!("integrand produced a non-finite value on [{a:e}, {b:e}]"),
            None,
        ));
    }

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let raw_err = (res_kronrod - res_gauss) * half;
    Ok((
        res_kronrod * half,
        rescale_error(raw_err, res_abs * half.abs(), res_asc * half.abs()),
    ))
}

struct Interval {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    seq: u64,
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error && self.seq == other.seq
    }
}
impl Eq for Interval {}
impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        // Largest error first; tie-break on insertion order for determinism.
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Integrate `f` over `[a, b]` to relative tolerance `rel_tol`.
///
/// The interval budget caps work on pathological integrands; exceeding it is
/// a numeric error carrying the partial result.
pub(crate) fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
    max_intervals: u32,
) -> Result<QuadEstimate> {
    debug_assert!(rel_tol > 0.0 && b > a);
    // Start from a modest uniform partition so that narrow features are
    // visible to the error estimator before any refinement decisions.
    const INITIAL: u32 = 8;

    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;
    let mut total_value = 0.0;
    let mut total_error = 0.0;
    for i in 0..INITIAL {
        let lo = a + (b - a) * f64::from(i) / f64::from(INITIAL);
        let hi = a + (b - a) * f64::from(i + 1) / f64::from(INITIAL);
        let (value, error) = qk21(f, lo, hi)?;
        total_value += value;
        total_error += error;
        heap.push(Interval {
            a: lo,
            b: hi,
            value,
            error,
            seq,
        });
        seq += 1;
    }

    // Position-ordered resummation, independent of heap internals.
    let tally = |heap: &BinaryHeap<Interval>| -> (f64, f64) {
        let mut items: Vec<(f64, f64, f64)> =
            heap.iter().map(|iv| (iv.a, iv.value, iv.error)).collect();
        items.sort_by(|x, y| x.0.total_cmp(&y.0));
        let value = items.iter().map(|t| t.1).sum();
        let error = items.iter().map(|t| t.2).sum();
        (value, error)
    };

    loop {
        let target = rel_tol * total_value.abs();
        if total_error <= target.max(f64::MIN_POSITIVE * 1e4) {
            let (value, abs_error) = tally(&heap);
            return Ok(QuadEstimate {
                value,
                abs_error,
                subdivisions: heap.len() as u32,
            });
        }
        if heap.len() as u32 >= max_intervals {
            let (value, abs_error) = tally(&heap);
            return Err(Error::numeric(
                format!(
                    "quadrature did not reach relative tolerance {rel_tol:e} \
                     within {max_intervals} intervals (error estimate {abs_error:e})"
                ),
                Some(value),
            ));
        }

        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval no longer splittable in f64.
            let (rest_value, rest_error) = tally(&heap);
            return Err(Error::numeric(
                format!(
                    "quadrature stalled on an unsplittable interval at {:e} \
                     (error estimate {:e})",
                    worst.a,
                    rest_error + worst.error
                ),
                Some(rest_value + worst.value),
            ));
        }
        total_value -= worst.value;
        total_error -= worst.error;
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error) = qk21(f, lo, hi)?;
            total_value += value;
            total_error += error;
            heap.push(Interval {
                a: lo,
                b: hi,
                value,
                error,
                seq,
            });
            seq += 1;
        }
    }
}
