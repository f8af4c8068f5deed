use num_traits::ToPrimitive;
use serde::Serialize;

use super::{mean_sd, per_replicate, reference_initial, reference_matrix, ExperimentConfig};
use crate::error::{Error, Result};
use crate::geodesic::{trace_source, AlgState};
use crate::sampling::{LazyCut, LazyTree};

/// Counts of the input states `s_0 … s_{n-2}` of the algorithm started at the
/// tip of `cut_n(T∞)°`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitionStats {
    /// `counts[a][b]`: number of steps with `s_i = a`, `s_{i+1} = b`.
    pub counts: [[u64; 4]; 4],
    pub initial_counts: [u64; 4],
    /// Number of observed transitions.
    pub total: u64,
}

impl TransitionStats {
    fn empty() -> Self {
        TransitionStats { counts: [[0; 4]; 4], initial_counts: [0; 4], total: 0 }
    }

    fn record(&mut self, states: &[AlgState]) {
        if let Some(s0) = states.first() {
            self.initial_counts[s0.index()] += 1;
        }
        for w in states.windows(2) {
            self.counts[w[0].index()][w[1].index()] += 1;
            self.total += 1;
        }
    }

    fn merge(&mut self, other: &TransitionStats) {
        for a in 0..4 {
            for b in 0..4 {
                self.counts[a][b] += other.counts[a][b];
            }
            self.initial_counts[a] += other.initial_counts[a];
        }
        self.total += other.total;
    }

    pub fn row_total(&self, a: AlgState) -> u64 {
        self.counts[a.index()].iter().sum()
    }

    /// Empirical `P(b | a)`; NaN for a state never seen.
    pub fn frequency(&self, a: AlgState, b: AlgState) -> f64 {
        self.counts[a.index()][b.index()] as f64 / self.row_total(a) as f64
    }

    pub fn initial_frequency(&self, a: AlgState) -> f64 {
        self.initial_counts[a.index()] as f64 / self.initial_counts.iter().sum::<u64>() as f64
    }

    /// Largest deviation of an empirical transition frequency from the
    /// reference matrix.
    pub fn max_matrix_deviation(&self) -> f64 {
        let m = reference_matrix();
        let mut worst = 0f64;
        for a in AlgState::ALL {
            for b in AlgState::ALL {
                let r = m[a.index()][b.index()].to_f64().unwrap();
                worst = worst.max((self.frequency(a, b) - r).abs());
            }
        }
        worst
    }

    pub fn max_initial_deviation(&self) -> f64 {
        let init = reference_initial();
        AlgState::ALL
            .iter()
            .map(|&a| (self.initial_frequency(a) - init[a.index()].to_f64().unwrap()).abs())
            .fold(0.0, f64::max)
    }

    /// `w0 → j` and `w>0 → j` never happen.
    pub fn structural_zeros_hold(&self) -> bool {
        self.counts[AlgState::W0.index()][AlgState::J.index()] == 0
            && self.counts[AlgState::Wpos.index()][AlgState::J.index()] == 0
    }
}

pub fn estimate_transitions(cfg: &ExperimentConfig) -> Result<TransitionStats> {
    if cfg.n < 3 {
        return Err(Error::InvalidArgument("transition estimate needs n >= 3".into()));
    }
    let n = cfg.n;
    let per = per_replicate(cfg.seed, cfg.replicates, |_, rng| {
        let mut cut = LazyCut::sample(n, rng, cfg.budget)?;
        let trace = cut.circ_trace()?;
        let mut stats = TransitionStats::empty();
        stats.record(&trace.states[..n - 1]);
        Ok(stats)
    })?;
    let mut total = TransitionStats::empty();
    for s in &per {
        total.merge(s);
    }
    Ok(total)
}

/// Both sides of the many-to-one identity for `F = min(d°, K)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ManyToOne {
    pub n: usize,
    pub cap: usize,
    pub replicates: u64,
    /// `E[F(cut_n(T∞))]`.
    pub cut_mean: f64,
    pub cut_se: f64,
    /// `E[Σ_{|u|=n} F(θ, u)]`.
    pub tree_mean: f64,
    pub tree_se: f64,
}

impl ManyToOne {
    /// Difference of the two means in units of their combined standard error.
    pub fn z_score(&self) -> f64 {
        (self.cut_mean - self.tree_mean) / self.cut_se.hypot(self.tree_se)
    }
}

pub fn many_to_one(cfg: &ExperimentConfig) -> Result<ManyToOne> {
    let (n, cap) = (cfg.n, cfg.cap);
    let cut: Vec<f64> = per_replicate(cfg.seed, cfg.replicates, |_, rng| {
        let mut cut = LazyCut::sample(n, rng, cfg.budget)?;
        Ok(cut.circ_trace()?.distance.min(cap) as f64)
    })?;
    // the Galton-Watson side uses the streams after the cut side's
    let tree: Vec<f64> = per_replicate(cfg.seed, cfg.replicates, |r, _| {
        let rng = crate::sampling::RngStream::new(cfg.seed, cfg.replicates + r).rng();
        let mut theta = LazyTree::new(rng, cfg.budget);
        let level = theta.level(n)?;
        theta.circ()?;
        let mut sum = 0usize;
        for u in level {
            sum += trace_source(&mut theta, u)?.distance.min(cap);
        }
        Ok(sum as f64)
    })?;
    let (cm, cs) = mean_sd(&cut);
    let (tm, ts) = mean_sd(&tree);
    let reps = cfg.replicates as f64;
    Ok(ManyToOne {
        n,
        cap,
        replicates: cfg.replicates,
        cut_mean: cm,
        cut_se: cs / reps.sqrt(),
        tree_mean: tm,
        tree_se: ts / reps.sqrt(),
    })
}
