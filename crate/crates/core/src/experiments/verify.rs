//! Pass/fail checks shared by the `verify` command and the acceptance
//! target: the exhaustive small-tree suite, randomized structural checks and
//! the statistical experiments at their default sizes.

use std::collections::HashSet;
use std::fmt;

use num_traits::ToPrimitive;
use rand::Rng;
use rayon::prelude::*;

use super::{
    diameter_ratio, estimate_limit_ratio, estimate_transitions, limit_constant, many_to_one, ratio_profile,
    reference_matrix, stationary, Experiment, ExperimentConfig,
};
use crate::bijection::{
    canonical_code, certify, count_well_bicoloured, enumerate_well_bicoloured_bounded, psi, RotationMap,
};
use crate::error::Result;
use crate::geodesic::{restricted_move_distance, restricted_move_distances, trace};
use crate::oracle::{black_ancestor_bound_check, separating_pair_check, Graph};
use crate::sampling::{sample_well_bicoloured, RngStream, WellBicolouredMethod};
use crate::tree::{ColouredPlaneTree, NodeId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult { name: name.into(), passed, detail: detail.into() }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

fn trees_up_to(bound: usize) -> Result<Vec<(usize, Vec<ColouredPlaneTree>)>> {
    (1..=bound)
        .map(|n| Ok((n, enumerate_well_bicoloured_bounded(n, bound)?.collect())))
        .collect()
}

/// Formula, enumeration and distinct `Ψ` images agree for every `n <= bound`.
pub fn check_counts(bound: usize) -> Result<CheckResult> {
    let mut sizes = Vec::new();
    let mut ok = true;
    for (n, trees) in trees_up_to(bound)? {
        let formula = count_well_bicoloured(n as u64)?.to_u64().unwrap_or(u64::MAX);
        let codes: HashSet<_> = trees
            .par_iter()
            .map(|t| canonical_code(&psi(t)?))
            .collect::<Result<_>>()?;
        ok &= formula == trees.len() as u64 && codes.len() == trees.len();
        sizes.push(format!("{n}:{}/{}/{}", formula, trees.len(), codes.len()));
    }
    Ok(CheckResult::new("bijection counts", ok, format!("n:formula/enumerated/codes {}", sizes.join(" "))))
}

fn certificate_problem(tree: &ColouredPlaneTree, map: &RotationMap) -> Option<String> {
    let cert = certify(map);
    let edges = tree.len() - 1 + tree.black_count();
    if !cert.is_valid() || cert.edges != edges {
        return Some(format!("{tree}: {cert:?}"));
    }
    None
}

/// Every `Ψ` image of a tree with at most `bound` vertices is a simple
/// outerplanar map with the expected number of edges.
pub fn check_certificates_exhaustive(bound: usize) -> Result<CheckResult> {
    let mut total = 0;
    for (_, trees) in trees_up_to(bound)? {
        total += trees.len();
        let bad = trees
            .par_iter()
            .map(|t| Ok(certificate_problem(t, &psi(t)?)))
            .collect::<Result<Vec<_>>>()?;
        if let Some(problem) = bad.into_iter().flatten().next() {
            return Ok(CheckResult::new("outerplanarity (exhaustive)", false, problem));
        }
    }
    Ok(CheckResult::new("outerplanarity (exhaustive)", true, format!("{total} maps")))
}

fn distance_problem(tree: &ColouredPlaneTree) -> Result<Option<String>> {
    let bfs = Graph::from_map(&psi(tree)?).bfs(0);
    let moves = restricted_move_distances(tree)?;
    for v in tree.nodes() {
        let tr = trace(tree, v)?;
        if !tr.distance_identity_holds() || tr.distance as u32 != bfs.dist[v.0] || tr.distance != moves[v.0] {
            return Ok(Some(format!(
                "{tree} vertex {v}: trace {} bfs {} moves {}",
                tr.distance, bfs.dist[v.0], moves[v.0]
            )));
        }
    }
    Ok(None)
}

/// Trace distance = BFS distance = restricted-move distance, and (★), for
/// every vertex of every tree with at most `bound` vertices.
pub fn check_distances_exhaustive(bound: usize) -> Result<CheckResult> {
    let mut vertices = 0;
    for (n, trees) in trees_up_to(bound)? {
        vertices += n * trees.len();
        let bad = trees.par_iter().map(distance_problem).collect::<Result<Vec<_>>>()?;
        if let Some(problem) = bad.into_iter().flatten().next() {
            return Ok(CheckResult::new("geodesic distances (exhaustive)", false, problem));
        }
    }
    Ok(CheckResult::new("geodesic distances (exhaustive)", true, format!("{vertices} vertices")))
}

/// Black-ancestor bound and separating-pair consequences for every tree with
/// at most `bound` vertices.
pub fn check_structural_exhaustive(bound: usize) -> Result<CheckResult> {
    let mut ancestor = 0;
    let mut separating = 0;
    for (_, trees) in trees_up_to(bound)? {
        let found = trees
            .par_iter()
            .map(|t| {
                let map = psi(t)?;
                Ok((black_ancestor_bound_check(t, &map).len(), separating_pair_check(t, &map).len()))
            })
            .collect::<Result<Vec<_>>>()?;
        for (a, s) in found {
            ancestor += a;
            separating += s;
        }
    }
    Ok(CheckResult::new(
        "structural lemmas (exhaustive)",
        ancestor == 0 && separating == 0,
        format!("{ancestor} ancestor-bound violations, {separating} separating-pair violations"),
    ))
}

/// Size `n` drawn log-uniformly from `1..=max_n`.
fn random_size<R: Rng>(max_n: usize, rng: &mut R) -> usize {
    let x = (max_n as f64).powf(rng.random::<f64>()).floor() as usize;
    x.clamp(1, max_n)
}

fn random_tree(seed: u64, i: u64, max_n: usize) -> Result<(ColouredPlaneTree, crate::sampling::StreamRng)> {
    let mut rng = RngStream::new(seed, i).rng();
    let n = if i.is_multiple_of(100) { max_n } else { random_size(max_n, &mut rng) };
    let method = if i.is_multiple_of(2) { WellBicolouredMethod::Rejection } else { WellBicolouredMethod::Exact };
    Ok((sample_well_bicoloured(n, method, &mut rng)?, rng))
}

/// Certificates for `count` random trees of log-uniform size up to `max_n`
/// (every hundredth at exactly `max_n`).
pub fn check_certificates_random(seed: u64, count: u64, max_n: usize) -> Result<CheckResult> {
    let bad = (0..count)
        .into_par_iter()
        .map(|i| {
            let (t, _) = random_tree(seed, i, max_n)?;
            Ok(certificate_problem(&t, &psi(&t)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let problem = bad.into_iter().flatten().next();
    Ok(CheckResult::new(
        "outerplanarity (random)",
        problem.is_none(),
        problem.unwrap_or_else(|| format!("{count} maps, n <= {max_n}")),
    ))
}

/// Trace = BFS = restricted moves for `count` random `(τ, x)` pairs.
pub fn check_distances_random(seed: u64, count: u64, max_n: usize) -> Result<CheckResult> {
    let bad = (0..count)
        .into_par_iter()
        .map(|i| {
            let (t, mut rng) = random_tree(seed, i, max_n)?;
            let x = NodeId(rng.random_range(0..t.len()));
            let tr = trace(&t, x)?;
            let bfs = Graph::from_map(&psi(&t)?).bfs(0).dist[x.0] as usize;
            let moves = restricted_move_distance(&t, x)?;
            Ok((!tr.distance_identity_holds() || tr.distance != bfs || tr.distance != moves)
                .then(|| format!("n={} x={x}: trace {} bfs {bfs} moves {moves}", t.len(), tr.distance)))
        })
        .collect::<Result<Vec<_>>>()?;
    let problem = bad.into_iter().flatten().next();
    Ok(CheckResult::new(
        "geodesic distances (random)",
        problem.is_none(),
        problem.unwrap_or_else(|| format!("{count} pairs, n <= {max_n}")),
    ))
}

/// Everything exact that runs on the enumerated trees.
pub fn exhaustive_suite(bound: usize) -> Result<Vec<CheckResult>> {
    Ok(vec![
        check_counts(bound)?,
        check_certificates_exhaustive(bound)?,
        check_distances_exhaustive(bound)?,
        check_structural_exhaustive(bound)?,
        check_stationary(),
    ])
}

pub fn check_stationary() -> CheckResult {
    let pi = stationary();
    let m = reference_matrix();
    let fixed = (0..4).all(|j| (0..4).map(|i| pi[i] * m[i][j]).sum::<num_rational::Rational64>() == pi[j]);
    let expected = [1, 2, 4, 2].map(|k| num_rational::Rational64::new(k, 9));
    CheckResult::new(
        "stationary law",
        fixed && pi == expected,
        format!("pi = ({}, {}, {}, {}), piM = pi: {fixed}", pi[0], pi[1], pi[2], pi[3]),
    )
}

pub fn check_markov(cfg: &ExperimentConfig) -> Result<Vec<CheckResult>> {
    let s = estimate_transitions(cfg)?;
    let eps = cfg.tolerance;
    let dev = s.max_matrix_deviation();
    let init = s.max_initial_deviation();
    Ok(vec![
        CheckResult::new(
            "transition matrix",
            dev <= eps && s.total >= 1_000_000,
            format!("max |freq - M| = {dev:.5} (tol {eps}), {} transitions", s.total),
        ),
        CheckResult::new(
            "initial law",
            init <= eps,
            format!("max deviation {init:.5} (tol {eps})"),
        ),
        CheckResult::new(
            "structural zeros",
            s.structural_zeros_hold(),
            format!(
                "w0->j {}, w>0->j {}",
                s.counts[0][3], s.counts[1][3]
            ),
        ),
    ])
}

pub fn check_limit_ratio(cfg: &ExperimentConfig) -> Result<CheckResult> {
    let s = estimate_limit_ratio(cfg)?;
    let c = limit_constant().to_f64().unwrap();
    let far = s.fraction_outside(c, 0.1);
    Ok(CheckResult::new(
        "limit ratio",
        (s.mean_ratio - c).abs() <= cfg.tolerance && far < 0.01,
        format!(
            "mean {:.5} vs 7/9 (tol {}), {:.3} of replicates off by >= 0.1, n = {}, {} replicates",
            s.mean_ratio, cfg.tolerance, far, s.n, s.replicates
        ),
    ))
}

pub fn check_many_to_one(cfg: &ExperimentConfig) -> Result<CheckResult> {
    let m = many_to_one(cfg)?;
    let z = m.z_score();
    Ok(CheckResult::new(
        "many-to-one identity",
        z.abs() < cfg.tolerance,
        format!(
            "cut {:.4} ± {:.4}, bushes {:.4} ± {:.4}, z = {z:.3} (limit {})",
            m.cut_mean, m.cut_se, m.tree_mean, m.tree_se, cfg.tolerance
        ),
    ))
}

/// Deep-vertex ratio at `deep_n` and the decreasing deviation profile.
pub fn check_profile(cfg: &ExperimentConfig, deep_n: usize) -> Result<Vec<CheckResult>> {
    let p = ratio_profile(cfg)?;
    let c = limit_constant().to_f64().unwrap();
    let deep = p.deep_ratio_at(deep_n).unwrap_or(f64::NAN);
    let medians: Vec<String> = p.median_deviation.iter().map(|(n, m)| format!("{n}:{m:.4}")).collect();
    let at = p.median_deviation_at(deep_n).unwrap_or(f64::NAN);
    Ok(vec![
        CheckResult::new(
            "deep-vertex ratio",
            (deep - c).abs() <= cfg.tolerance,
            format!("mean d_M(u)/|u| = {deep:.5} at n = {deep_n} (tol {})", cfg.tolerance),
        ),
        CheckResult::new(
            "deviation profile decreasing",
            p.deviation_decreasing(),
            format!("median normalised deviation {}", medians.join(" ")),
        ),
        CheckResult::new(
            "deviation profile level",
            at < 0.2,
            format!("median normalised deviation {at:.4} at n = {deep_n} (limit 0.2)"),
        ),
    ])
}

pub fn check_diameter(cfg: &ExperimentConfig) -> Result<CheckResult> {
    let d = diameter_ratio(cfg)?;
    let c = limit_constant().to_f64().unwrap();
    Ok(CheckResult::new(
        "diameter ratio",
        (d.mean_ratio - c).abs() <= cfg.tolerance,
        format!(
            "mean {:.5} ± {:.5} (sd) vs 7/9 (tol {}), n = {}, {} replicates, {} diameters",
            d.mean_ratio, d.std_ratio, cfg.tolerance, d.n, d.ratios.len(), d.mode
        ),
    ))
}

/// Every statistical check at its default size.
pub fn statistical_suite(seed: u64) -> Result<Vec<CheckResult>> {
    let mut out = check_markov(&ExperimentConfig::defaults(Experiment::Markov, seed))?;
    out.push(check_limit_ratio(&ExperimentConfig::defaults(Experiment::Ratio, seed))?);
    out.push(check_many_to_one(&ExperimentConfig::defaults(Experiment::ManyToOne, seed))?);
    out.extend(check_profile(&ExperimentConfig::defaults(Experiment::Profile, seed), 10_000)?);
    out.push(check_diameter(&ExperimentConfig::defaults(Experiment::Diameter, seed))?);
    Ok(out)
}

/// Random structural checks at their default sizes.
pub fn random_suite(seed: u64) -> Result<Vec<CheckResult>> {
    Ok(vec![
        check_certificates_random(seed, 10_000, 10_000)?,
        check_distances_random(seed, 10_000, 10_000)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_suite_small_bound() {
        let checks = exhaustive_suite(6).unwrap();
        for c in &checks {
            assert!(c.passed, "{c}");
        }
        assert!(checks[0].detail.contains("4:13/13/13"));
    }

    #[test]
    fn random_checks_small() {
        assert!(check_certificates_random(1, 50, 500).unwrap().passed);
        assert!(check_distances_random(1, 50, 500).unwrap().passed);
    }
}
