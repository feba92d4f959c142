//! Seeded Monte Carlo estimation with Wilson intervals, and the dispatcher
//! that runs an exact oracle whenever the enumeration fits the budget.

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{EnumerationSize, Error, Result};

/// Normal quantile for a two-sided 95% interval.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Default enumeration budget, `2^24`.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Environment variable overriding the default budget.
pub const BUDGET_ENV: &str = "RMTEST_BUDGET";

/// Cap on the number of enumeration steps an exact oracle may take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    /// The flag value if given, else `RMTEST_BUDGET`, else `2^24`.
    pub fn resolve(flag: Option<u64>) -> Result<Self> {
        if let Some(b) = flag {
            return Ok(Budget(b));
        }
        match std::env::var(BUDGET_ENV) {
            Ok(s) => s
                .trim()
                .parse::<u64>()
                .map(Budget)
                .map_err(|e| Error::Parameter(format!("{BUDGET_ENV}={s:?}: {e}"))),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// The splitmix64 output function.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent generator for trial `index` under `seed`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let a = mix64(seed.wrapping_add(0x9e37_79b9_7f4a_7c15));
    let b = mix64(a ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    ChaCha8Rng::seed_from_u64(b)
}

/// Wilson score interval at 95%.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = (centre - half).max(0.0);
    let hi = (centre + half).min(1.0);
    // keep p_hat inside the interval despite rounding at the extremes
    (lo.min(p), hi.max(p))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateResult {
    pub successes: u64,
    pub trials: u64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

impl EstimateResult {
    pub fn from_counts(successes: u64, trials: u64, seed: u64) -> Self {
        let (ci_low, ci_high) = wilson_interval(successes, trials);
        EstimateResult {
            successes,
            trials,
            p_hat: if trials == 0 {
                0.0
            } else {
                successes as f64 / trials as f64
            },
            ci_low,
            ci_high,
            seed,
        }
    }

    pub fn covers(&self, p: f64) -> bool {
        self.ci_low <= p && p <= self.ci_high
    }
}

/// Runs `trials` independent draws of `sampler`, trial `i` using
/// [`stream_rng`]`(seed, i)`. The count does not depend on scheduling.
pub fn estimate<F>(sampler: F, trials: u64, seed: u64) -> Result<EstimateResult>
where
    F: Fn(&mut ChaCha8Rng) -> Result<bool> + Sync,
{
    if trials == 0 {
        return Err(Error::Parameter("trials must be at least 1".into()));
    }
    let successes = (0..trials)
        .into_par_iter()
        .map(|i| sampler(&mut stream_rng(seed, i)).map(u64::from))
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(EstimateResult::from_counts(successes, trials, seed))
}

/// An exact probability `count / total`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExactProb {
    pub count: u64,
    pub total: u64,
}

impl ExactProb {
    pub fn new(count: u64, total: u64) -> Self {
        debug_assert!(count <= total && total > 0);
        ExactProb { count, total }
    }

    pub fn to_f64(self) -> f64 {
        self.count as f64 / self.total as f64
    }

    /// `count / total <= q^{-k}`, compared exactly.
    pub fn le_inv_pow(self, q: u32, k: u64) -> bool {
        BigUint::from(self.count) * pow_big(q, k) <= BigUint::from(self.total)
    }

    /// `count / total == q^{-k}`, compared exactly.
    pub fn eq_inv_pow(self, q: u32, k: u64) -> bool {
        BigUint::from(self.count) * pow_big(q, k) == BigUint::from(self.total)
    }

    /// `count / total >= q^{-k}`, compared exactly.
    pub fn ge_inv_pow(self, q: u32, k: u64) -> bool {
        BigUint::from(self.count) * pow_big(q, k) >= BigUint::from(self.total)
    }

    /// `self <= other * factor`, compared exactly.
    pub fn le_scaled(self, other: ExactProb, factor: u64) -> bool {
        u128::from(self.count) * u128::from(other.total)
            <= u128::from(other.count) * u128::from(factor) * u128::from(self.total)
    }
}

pub fn pow_big(q: u32, k: u64) -> BigUint {
    let exp = u32::try_from(k).expect("exponent fits in u32");
    BigUint::from(q).pow(exp)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Sampled,
}

/// A probability tagged with how it was obtained.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evaluation {
    pub mode: Mode,
    pub accept_count: u64,
    pub total: u64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: Option<u64>,
}

impl Evaluation {
    pub fn exact(p: ExactProb) -> Self {
        let v = p.to_f64();
        Evaluation {
            mode: Mode::Exact,
            accept_count: p.count,
            total: p.total,
            p_hat: v,
            ci_low: v,
            ci_high: v,
            seed: None,
        }
    }

    pub fn sampled(r: &EstimateResult) -> Self {
        Evaluation {
            mode: Mode::Sampled,
            accept_count: r.successes,
            total: r.trials,
            p_hat: r.p_hat,
            ci_low: r.ci_low,
            ci_high: r.ci_high,
            seed: Some(r.seed),
        }
    }

    pub fn exact_prob(&self) -> Option<ExactProb> {
        (self.mode == Mode::Exact).then(|| ExactProb::new(self.accept_count, self.total))
    }
}

/// Runs `exact` when `size` fits the budget, otherwise `sampled`.
pub fn exact_or_sample<E, S>(
    size: EnumerationSize,
    budget: Budget,
    exact: E,
    sampled: S,
) -> Result<Evaluation>
where
    E: FnOnce() -> Result<ExactProb>,
    S: FnOnce() -> Result<EstimateResult>,
{
    if size.fits(budget.get()) {
        Ok(Evaluation::exact(exact()?))
    } else {
        Ok(Evaluation::sampled(&sampled()?))
    }
}
