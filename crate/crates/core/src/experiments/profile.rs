use num_traits::ToPrimitive;
use rand::Rng;
use serde::Serialize;

use super::{limit_constant, mean_sd, per_replicate, quantile, DiameterMode, ExperimentConfig};
use crate::bijection::psi;
use crate::error::{Error, Result};
use crate::oracle::Graph;
use crate::sampling::sample_well_bicoloured;

/// One line of `profile.csv`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileRow {
    pub n: usize,
    pub replicate: u64,
    pub stat: &'static str,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileStats {
    pub rows: Vec<ProfileRow>,
    /// Per size: median over replicates of
    /// `max |d_M(u,v) - c·d_T(u,v)| / max(Δ_T, √n)` over the sampled pairs.
    pub median_deviation: Vec<(usize, f64)>,
    /// Per size: mean of `d_M(u)/|u|` pooled over all vertices with
    /// `|u| >= √n`.
    pub deep_ratio_mean: Vec<(usize, f64)>,
}

impl ProfileStats {
    pub fn median_deviation_at(&self, n: usize) -> Option<f64> {
        self.median_deviation.iter().find(|(m, _)| *m == n).map(|&(_, v)| v)
    }

    pub fn deep_ratio_at(&self, n: usize) -> Option<f64> {
        self.deep_ratio_mean.iter().find(|(m, _)| *m == n).map(|&(_, v)| v)
    }

    /// True iff the median deviation strictly decreases along the sizes.
    pub fn deviation_decreasing(&self) -> bool {
        self.median_deviation.windows(2).all(|w| w[1].1 < w[0].1)
    }
}

struct ReplicateProfile {
    deviation: f64,
    tree_diameter: usize,
    deep_count: usize,
    deep_mean: f64,
}

fn profile_replicate<R: Rng>(n: usize, cfg: &ExperimentConfig, rng: &mut R) -> Result<ReplicateProfile> {
    let c = limit_constant().to_f64().unwrap();
    let tree = sample_well_bicoloured(n, cfg.method, rng)?;
    let map = psi(&tree)?;
    let gm = Graph::from_map(&map);
    let gt = Graph::from_tree(&tree);
    let tree_diameter = gt.diameter_double_sweep(0)?;
    let norm = (tree_diameter as f64).max((n as f64).sqrt());
    let mut worst = 0f64;
    for _ in 0..cfg.sources {
        let s = rng.random_range(0..n);
        let dm = gm.bfs(s);
        let dt = gt.bfs(s);
        for _ in 0..cfg.targets {
            let t = rng.random_range(0..n);
            let (m, d) = (dm.dist[t], dt.dist[t]);
            if m > d {
                return Err(Error::Invariant(format!("map distance {m} exceeds tree distance {d}")));
            }
            worst = worst.max((m as f64 - c * d as f64).abs());
        }
    }
    let from_root = gm.bfs(0);
    let threshold = (n as f64).sqrt();
    let deep: Vec<f64> = tree
        .nodes()
        .filter(|&v| tree.depth(v) as f64 >= threshold)
        .map(|v| from_root.dist[v.0] as f64 / tree.depth(v) as f64)
        .collect();
    let deep_mean = if deep.is_empty() { 0.0 } else { mean_sd(&deep).0 };
    Ok(ReplicateProfile { deviation: worst / norm, tree_diameter, deep_count: deep.len(), deep_mean })
}

/// Compares map distances with `c` times tree distances on uniform well
/// bicoloured trees, for every size in `cfg.sizes`. Replicate `r` at the
/// `k`-th size uses stream `k·replicates + r`.
pub fn ratio_profile(cfg: &ExperimentConfig) -> Result<ProfileStats> {
    let mut rows = Vec::new();
    let mut median_deviation = Vec::new();
    let mut deep_ratio_mean = Vec::new();
    for (k, &n) in cfg.sizes.iter().enumerate() {
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        let offset = k as u64 * cfg.replicates;
        let reps = per_replicate(cfg.seed, cfg.replicates, |r, _| {
            let mut rng = crate::sampling::RngStream::new(cfg.seed, offset + r).rng();
            profile_replicate(n, cfg, &mut rng)
        })?;
        let (mut weighted, mut count) = (0.0, 0usize);
        let mut devs = Vec::with_capacity(reps.len());
        for (r, p) in reps.iter().enumerate() {
            let r = r as u64;
            rows.push(ProfileRow { n, replicate: r, stat: "deviation", value: p.deviation });
            rows.push(ProfileRow { n, replicate: r, stat: "tree_diameter", value: p.tree_diameter as f64 });
            rows.push(ProfileRow { n, replicate: r, stat: "deep_vertices", value: p.deep_count as f64 });
            rows.push(ProfileRow { n, replicate: r, stat: "deep_ratio_mean", value: p.deep_mean });
            devs.push(p.deviation);
            weighted += p.deep_mean * p.deep_count as f64;
            count += p.deep_count;
        }
        devs.sort_by(f64::total_cmp);
        median_deviation.push((n, quantile(&devs, 0.5)));
        deep_ratio_mean.push((n, if count == 0 { f64::NAN } else { weighted / count as f64 }));
    }
    Ok(ProfileStats { rows, median_deviation, deep_ratio_mean })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiameterStats {
    pub n: usize,
    pub mode: DiameterMode,
    pub map_diameters: Vec<usize>,
    pub tree_diameters: Vec<usize>,
    /// `Δ(Ψ(τ))/Δ(τ)` per replicate.
    pub ratios: Vec<f64>,
    pub mean_ratio: f64,
    pub std_ratio: f64,
}

/// Map diameter over tree diameter on uniform well bicoloured trees.
pub fn diameter_ratio(cfg: &ExperimentConfig) -> Result<DiameterStats> {
    let n = cfg.n;
    if n < 2 {
        return Err(Error::InvalidArgument("diameter ratio needs n >= 2".into()));
    }
    let per = per_replicate(cfg.seed, cfg.replicates, |_, mut rng| {
        let tree = sample_well_bicoloured(n, cfg.method, &mut rng)?;
        let gm = Graph::from_map(&psi(&tree)?);
        let dm = match cfg.diameter {
            DiameterMode::Exact => gm.diameter_exact()?,
            DiameterMode::Estimate => gm.diameter_double_sweep(0)?,
        };
        let dt = Graph::from_tree(&tree).diameter_double_sweep(0)?;
        Ok((dm, dt))
    })?;
    let ratios: Vec<f64> = per.iter().map(|&(m, t)| m as f64 / t as f64).collect();
    let (mean_ratio, std_ratio) = mean_sd(&ratios);
    Ok(DiameterStats {
        n,
        mode: cfg.diameter,
        map_diameters: per.iter().map(|p| p.0).collect(),
        tree_diameters: per.iter().map(|p| p.1).collect(),
        ratios,
        mean_ratio,
        std_ratio,
    })
}
