//! Seeded Monte Carlo simulation of the physical model.
//!
//! Per sample: draw the N legitimate SIRs, select the k-th largest, draw the
//! L eavesdropper branch SIRs, take their maximum, and evaluate the secrecy
//! capacity. Samples are laid out in fixed 4096-wide accumulation blocks;
//! each block owns a random stream derived from (seed, block index) and its
//! capacity sums are reduced pairwise, so estimates are bit-identical across
//! any batch size or worker count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{ChannelParams, SecrecyTarget, SelectionConfig};

use super::rng::{derive_seed, SplitMix64};

/// Samples in one accumulation block. Fixed: changing it would change the
/// random streams and the reduction tree.
const BLOCK: u64 = 4096;

/// Monte Carlo run configuration.
///
/// `batch_size` is a scheduling hint only — the number of samples a worker
/// aims to process per task, rounded up to whole accumulation blocks. It has
/// no influence on the estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub n_samples: u64,
    pub seed: u64,
    pub batch_size: u64,
}

impl SimConfig {
    pub fn new(n_samples: u64, seed: u64, batch_size: u64) -> Result<Self> {
        if n_samples < 1 {
            return Err(Error::domain("n_samples must be at least 1".to_string()));
        }
        if batch_size < 1 {
            return Err(Error::domain("batch_size must be at least 1".to_string()));
        }
        Ok(Self {
            n_samples,
            seed,
            batch_size,
        })
    }
}

/// A point estimate with its uncertainty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateWithCI {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: u64,
}

impl EstimateWithCI {
    /// Half-width of the 95% normal confidence interval, 1.96 standard
    /// errors; derived on demand so it can never go stale.
    pub fn half_width_95(&self) -> f64 {
        1.96 * self.std_error
    }
}

/// The three estimates of one simulation run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimates {
    pub sop: EstimateWithCI,
    pub spsc: EstimateWithCI,
    pub esc: EstimateWithCI,
}

#[derive(Debug, Default, Clone, Copy)]
struct BlockPartial {
    outage: u64,
    positive: u64,
    cs_sum: f64,
    cs_sq_sum: f64,
}

/// Simulate the model end to end and estimate SOP, SPSC and ESC.
///
/// Deterministic for a fixed `(seed, n_samples)` and model inputs. The
/// capacity boundary C_s = 0 (legitimate SIR not above the eavesdropper's)
/// counts as outage and as non-positive secrecy.
pub fn mc_estimate(
    params: &ChannelParams,
    sel: &SelectionConfig,
    target: &SecrecyTarget,
    sim: &SimConfig,
) -> Result<McEstimates> {
    let n_blocks = usize::try_from(sim.n_samples.div_ceil(BLOCK))
        .map_err(|_| Error::domain("n_samples too large for this platform".to_string()))?;
    let blocks_per_task = (sim.batch_size.div_ceil(BLOCK)).max(1) as usize;

    let partials: Vec<BlockPartial> = (0..n_blocks)
        .into_par_iter()
        .with_min_len(blocks_per_task)
        .map(|block| simulate_block(params, sel, target, sim, block as u64))
        .collect();

    // Sequential reduction in block order keeps the result independent of
    // the parallel split above.
    let mut outage = 0u64;
    let mut positive = 0u64;
    let mut cs_sum = 0.0f64;
    let mut cs_sq_sum = 0.0f64;
    for p in &partials {
        outage += p.outage;
        positive += p.positive;
        cs_sum += p.cs_sum;
        cs_sq_sum += p.cs_sq_sum;
    }

    let n = sim.n_samples;
    let nf = n as f64;
    let esc_mean = cs_sum / nf;
    let esc_se = if n > 1 {
        let var = ((cs_sq_sum - cs_sum * cs_sum / nf) / (nf - 1.0)).max(0.0);
        (var / nf).sqrt()
    } else {
        0.0
    };

    Ok(McEstimates {
        sop: bernoulli_estimate(outage, n),
        spsc: bernoulli_estimate(positive, n),
        esc: EstimateWithCI {
            mean: esc_mean,
            std_error: esc_se,
            n_samples: n,
        },
    })
}

fn bernoulli_estimate(count: u64, n: u64) -> EstimateWithCI {
    let mean = count as f64 / n as f64;
    let std_error = if n > 1 {
        (mean * (1.0 - mean) / (n as f64 - 1.0)).sqrt()
    } else {
        0.0
    };
    EstimateWithCI {
        mean,
        std_error,
        n_samples: n,
    }
}

fn simulate_block(
    params: &ChannelParams,
    sel: &SelectionConfig,
    target: &SecrecyTarget,
    sim: &SimConfig,
    block: u64,
) -> BlockPartial {
    let start = block * BLOCK;
    let end = ((block + 1) * BLOCK).min(sim.n_samples);
    let mut rng = SplitMix64::new(derive_seed(sim.seed, block));

    let rho = params.power_ratio();
    let (lambda_m, beta_m) = (params.lambda_m(), params.beta_m());
    let (lambda_e, beta_e) = (params.lambda_e(), params.beta_e());
    let n = sel.n_users() as usize;
    let k = sel.rank() as usize;
    let l = sel.eve_antennas();
    let rs = target.rate();

    let mut sirs = vec![0.0f64; n];
    let mut cs_values = Vec::with_capacity((end - start) as usize);
    let mut outage = 0u64;
    let mut positive = 0u64;

    for _ in start..end {
        for slot in sirs.iter_mut() {
            let h = rng.next_exponential(lambda_m);
            let g = rng.next_exponential(beta_m);
            *slot = rho * h / g;
        }
        let z_sel = if n == 1 {
            sirs[0]
        } else {
            *sirs
                .select_nth_unstable_by(k - 1, |a, b| b.total_cmp(a))
                .1
        };

        let mut x_max = 0.0f64;
        for _ in 0..l {
            let t = rng.next_exponential(lambda_e);
            let e = rng.next_exponential(beta_e);
            x_max = x_max.max(rho * t / e);
        }

        let cs = if z_sel > x_max {
            ((1.0 + z_sel) / (1.0 + x_max)).log2()
        } else {
            0.0
        };
        if cs <= rs {
            outage += 1;
        }
        if cs > 0.0 {
            positive += 1;
        }
        cs_values.push(cs);
    }

    let cs_sum = pairwise_sum(&cs_values);
    for v in cs_values.iter_mut() {
        *v *= *v;
    }
    let cs_sq_sum = pairwise_sum(&cs_values);

    BlockPartial {
        outage,
        positive,
        cs_sum,
        cs_sq_sum,
    }
}

/// Pairwise (tree) summation: error growth O(log n) instead of O(n).
fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 32 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}
