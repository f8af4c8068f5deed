use serde::Serialize;

use super::{mean_sd, per_replicate, quantile, ExperimentConfig};
use crate::error::{Error, Result};
use crate::sampling::LazyCut;

/// `d°(cut_n(T∞))/n` over replicates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioStats {
    pub n: usize,
    pub replicates: u64,
    /// Per-replicate ratios in replicate order.
    pub ratios: Vec<f64>,
    pub mean_ratio: f64,
    pub std_ratio: f64,
    /// 5%, 25%, 50%, 75% and 95% quantiles.
    pub quantiles: [f64; 5],
}

impl RatioStats {
    pub fn from_ratios(n: usize, ratios: Vec<f64>) -> Self {
        let (mean_ratio, std_ratio) = mean_sd(&ratios);
        let mut sorted = ratios.clone();
        sorted.sort_by(f64::total_cmp);
        let quantiles = [0.05, 0.25, 0.5, 0.75, 0.95].map(|q| quantile(&sorted, q));
        RatioStats { n, replicates: ratios.len() as u64, ratios, mean_ratio, std_ratio, quantiles }
    }

    /// Fraction of replicates with `|ratio - c| >= eps`.
    pub fn fraction_outside(&self, c: f64, eps: f64) -> f64 {
        let far = self.ratios.iter().filter(|&&r| (r - c).abs() >= eps).count();
        far as f64 / self.ratios.len() as f64
    }
}

pub fn estimate_limit_ratio(cfg: &ExperimentConfig) -> Result<RatioStats> {
    if cfg.n == 0 {
        return Err(Error::InvalidArgument("ratio needs n >= 1".into()));
    }
    let n = cfg.n;
    let ratios = per_replicate(cfg.seed, cfg.replicates, |_, rng| {
        let mut cut = LazyCut::sample(n, rng, cfg.budget)?;
        Ok(cut.circ_trace()?.distance as f64 / n as f64)
    })?;
    Ok(RatioStats::from_ratios(n, ratios))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::Experiment;

    #[test]
    fn ratios_bounded_by_one() {
        let mut cfg = ExperimentConfig::defaults(Experiment::Ratio, 2);
        cfg.n = 100;
        cfg.replicates = 50;
        let s = estimate_limit_ratio(&cfg).unwrap();
        assert_eq!(s.ratios.len(), 50);
        assert!(s.ratios.iter().all(|&r| (0.0..=1.0).contains(&r)));
        assert!(s.quantiles.windows(2).all(|w| w[0] <= w[1]));
    }
}
