//! Random rate constants standing in for "generic" ones.
//!
//! Quantities such as `dim ker Σ` are constant on a Zariski-open set of rate
//! constants. We evaluate them at several independent integer samples and
//! only accept a value that all samples agree on.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::int;
use crate::network::{Network, RateAssignment};

/// Rate constants are drawn uniformly from `1..=KAPPA_MAX`.
pub const KAPPA_MAX: i64 = 1 << 16;

pub const DEFAULT_TRIALS: usize = 3;

/// How many fresh batches of samples to draw before giving up.
pub const MAX_RESAMPLE_ROUNDS: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericSettings {
    pub seed: u64,
    pub trials: usize,
}

impl Default for GenericSettings {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: DEFAULT_TRIALS,
        }
    }
}

impl GenericSettings {
    pub fn new(seed: u64, trials: usize) -> Self {
        Self { seed, trials }
    }
}

pub fn sample_rates(network: &Network, rng: &mut impl Rng) -> RateAssignment {
    let values = network
        .rate_labels()
        .into_iter()
        .map(|label| (label, int(rng.random_range(1..=KAPPA_MAX))))
        .collect();
    RateAssignment::new(values).expect("sampled rates are positive")
}

/// Evaluates `f` on `settings.trials` independent rate samples and returns
/// the agreed value together with the first sample of the accepted batch.
pub fn agree_across_trials<T, F>(
    network: &Network,
    settings: &GenericSettings,
    f: F,
) -> Result<(T, RateAssignment)>
where
    T: PartialEq,
    F: Fn(&RateAssignment) -> Result<T>,
{
    let trials = settings.trials.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    for _ in 0..MAX_RESAMPLE_ROUNDS {
        let first_rates = sample_rates(network, &mut rng);
        let first = f(&first_rates)?;
        let mut agreed = true;
        for _ in 1..trials {
            let rates = sample_rates(network, &mut rng);
            if f(&rates)? != first {
                agreed = false;
                break;
            }
        }
        if agreed {
            return Ok((first, first_rates));
        }
    }
    Err(Error::NonGeneric(format!(
        "{MAX_RESAMPLE_ROUNDS} batches of {trials} samples disagreed"
    )))
}
