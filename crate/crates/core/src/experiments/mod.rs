//! Monte Carlo checks of the Markov structure of the geodesic algorithm and
//! of the `7/9` distance ratio, plus the plumbing to write their results.

mod config;
mod markov;
mod output;
mod profile;
mod ratio;
mod reference;
pub mod verify;

pub use config::{DiameterMode, Experiment, ExperimentConfig};
pub use markov::{estimate_transitions, many_to_one, ManyToOne, TransitionStats};
pub use output::{manifest_json, profile_csv, ratios_csv, transitions_csv, write_outputs};
pub use profile::{diameter_ratio, ratio_profile, DiameterStats, ProfileRow, ProfileStats};
pub use ratio::{estimate_limit_ratio, RatioStats};
pub use reference::{limit_constant, reference_matrix, reference_initial, stationary, Matrix4};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sampling::{RngStream, StreamRng};

/// Runs `f` once per replicate on its own random stream and returns the
/// results in replicate order, whatever the thread count.
pub(crate) fn per_replicate<T, F>(seed: u64, replicates: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64, StreamRng) -> Result<T> + Sync,
{
    (0..replicates)
        .into_par_iter()
        .map(|r| {
            f(r, RngStream::new(seed, r).rng()).map_err(|e| Error::Replicate {
                replicate: r,
                source: Box::new(e),
            })
        })
        .collect()
}

pub(crate) fn mean_sd(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Linear-interpolated empirical quantile of sorted data.
pub(crate) fn quantile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}
