use std::collections::BTreeMap;

use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::*;
use crate::bijection::enumerate_well_bicoloured;

fn stream(seed: u64) -> StreamRng {
    RngStream::new(seed, 0).rng()
}

/// Pearson goodness of fit against equal cell probabilities.
fn uniform_p_value(counts: &BTreeMap<String, u64>, cells: usize) -> f64 {
    let total: u64 = counts.values().sum();
    let expected = total as f64 / cells as f64;
    let seen: f64 = counts.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let unseen = (cells - counts.len()) as f64 * expected;
    let chi2 = seen + unseen;
    1.0 - ChiSquared::new((cells - 1) as f64).unwrap().cdf(chi2)
}

fn tally(draws: impl Iterator<Item = ColouredPlaneTree>) -> BTreeMap<String, u64> {
    let mut out = BTreeMap::new();
    for t in draws {
        *out.entry(t.to_string()).or_insert(0) += 1;
    }
    out
}

#[test]
fn streams_are_reproducible_and_distinct() {
    let a = sample_gw(&mut RngStream::new(5, 2).rng(), Some(10_000)).map(|t| t.to_string());
    let b = sample_gw(&mut RngStream::new(5, 2).rng(), Some(10_000)).map(|t| t.to_string());
    assert_eq!(a, b);
    let xs: Vec<u64> = (0..4).map(|s| RngStream::new(5, s).rng().random()).collect();
    let mut ys = xs.clone();
    ys.dedup();
    assert_eq!(xs.len(), ys.len());
}

#[test]
fn gw_size_law() {
    let mut rng = stream(1);
    let draws = 100_000;
    let (mut one, mut two) = (0u32, 0u32);
    for _ in 0..draws {
        match sample_gw_shape(&mut rng, Some(1 << 16)) {
            Ok(c) if c.len() == 1 => one += 1,
            Ok(c) if c.len() == 2 => two += 1,
            _ => {}
        }
    }
    let check = |hits: u32, p: f64| {
        let sd = (p * (1.0 - p) / draws as f64).sqrt();
        let f = hits as f64 / draws as f64;
        assert!((f - p).abs() < 3.0 * sd, "freq {f} vs {p}");
    };
    check(one, 0.5);
    check(two, 0.125);
}

#[test]
fn offspring_mean_is_one() {
    let mut rng = stream(2);
    let law = OffspringLaw::default();
    let draws = 1_000_000;
    let sum: usize = (0..draws).map(|_| law.sample(&mut rng)).sum();
    let mean = sum as f64 / draws as f64;
    assert!((mean - 1.0).abs() < 3.0 * 2f64.sqrt() / 1000.0, "{mean}");
}

#[test]
fn budget_guard_errors() {
    let mut rng = stream(3);
    let mut aborted = 0;
    for _ in 0..1000 {
        match sample_gw(&mut rng, Some(20)) {
            Ok(t) => assert!(t.len() <= 20),
            Err(Error::BudgetExceeded { budget: 20 }) => aborted += 1,
            Err(e) => panic!("{e}"),
        }
    }
    assert!(aborted > 0);
}

#[test]
fn uniform_plane_trees() {
    let mut rng = stream(4);
    assert_eq!(sample_uniform_plane_tree(1, &mut rng).unwrap().to_string(), "w()");
    assert_eq!(sample_uniform_plane_tree(0, &mut rng), Err(Error::ZeroSize));
    let three = tally((0..100_000).map(|_| sample_uniform_plane_tree(3, &mut rng).unwrap()));
    assert_eq!(three.len(), 2);
    for &c in three.values() {
        let f = c as f64 / 1e5;
        assert!((f - 0.5).abs() < 3.0 * (0.25f64 / 1e5).sqrt(), "{f}");
    }
    let four = tally((0..100_000).map(|_| sample_uniform_plane_tree(4, &mut rng).unwrap()));
    assert!(uniform_p_value(&four, 5) > 0.001, "{four:?}");
}

#[test]
fn well_bicoloured_small_laws() {
    for method in [WellBicolouredMethod::Rejection, WellBicolouredMethod::Exact] {
        let mut rng = stream(5);
        assert_eq!(sample_well_bicoloured(1, method, &mut rng).unwrap().to_string(), "w()");
        let three = tally((0..100_000).map(|_| sample_well_bicoloured(3, method, &mut rng).unwrap()));
        let expected: Vec<String> = enumerate_well_bicoloured(3).unwrap().map(|t| t.to_string()).collect();
        assert_eq!(three.keys().cloned().collect::<Vec<_>>(), expected);
        assert!(uniform_p_value(&three, 3) > 0.001, "{method}: {three:?}");
    }
}

/// Both methods against each other, and each against the uniform law, over
/// all 67 well bicoloured trees with five vertices.
#[test]
fn methods_agree_at_five() {
    let cells: Vec<String> = enumerate_well_bicoloured(5).unwrap().map(|t| t.to_string()).collect();
    assert_eq!(cells.len(), 67);
    let draws = 100_000;
    let mut rng = stream(6);
    let a = tally((0..draws).map(|_| sample_well_bicoloured(5, WellBicolouredMethod::Rejection, &mut rng).unwrap()));
    let b = tally((0..draws).map(|_| sample_well_bicoloured(5, WellBicolouredMethod::Exact, &mut rng).unwrap()));
    assert!(a.keys().chain(b.keys()).all(|k| cells.binary_search(k).is_ok()));
    assert!(uniform_p_value(&a, 67) > 0.001);
    assert!(uniform_p_value(&b, 67) > 0.001);
    // two-sample homogeneity with equal sample sizes
    let chi2: f64 = cells
        .iter()
        .map(|k| {
            let (x, y) = (a.get(k).copied().unwrap_or(0) as f64, b.get(k).copied().unwrap_or(0) as f64);
            if x + y == 0.0 { 0.0 } else { (x - y).powi(2) / (x + y) }
        })
        .sum();
    let p = 1.0 - ChiSquared::new(66.0).unwrap().cdf(chi2);
    assert!(p > 0.001, "p = {p}");
}

#[test]
fn exact_sampler_is_well_bicoloured_at_every_size() {
    let mut rng = stream(7);
    for n in 1..300 {
        let t = sample_well_bicoloured(n, WellBicolouredMethod::Exact, &mut rng).unwrap();
        assert_eq!(t.len(), n);
        assert!(t.is_well_bicoloured());
        let t = sample_well_bicoloured(n, WellBicolouredMethod::Rejection, &mut rng).unwrap();
        assert_eq!(t.len(), n);
        assert!(t.is_well_bicoloured());
    }
}

#[test]
fn forests_have_k_good_rotations() {
    let mut rng = stream(8);
    for m in 1..40 {
        for k in 1..=m {
            let f = uniform_forest(k, m, &mut rng);
            assert_eq!(f.len(), m);
            let mut open = 0usize;
            let mut trees = 0;
            for c in f {
                if open == 0 {
                    trees += 1;
                    open = 1;
                }
                open = open - 1 + c;
            }
            assert_eq!((trees, open), (k, 0));
        }
    }
}

#[test]
fn random_below_is_in_range_and_covers() {
    let mut rng = stream(9);
    let bound = BigUint::from(13u32);
    let mut seen = [false; 13];
    for _ in 0..2000 {
        let x: u32 = random_below(&bound, &mut rng).try_into().unwrap();
        seen[x as usize] = true;
    }
    assert!(seen.iter().all(|&s| s));
}

#[test]
fn cut_shapes() {
    let mut rng = stream(10);
    let zero = sample_cut(0, &mut rng, Some(100_000)).unwrap();
    assert_eq!(zero.tip, zero.tree.root());
    for n in 1..8 {
        match sample_cut(n, &mut rng, Some(100_000)) {
            Ok(c) => assert_eq!(c.tree.depth(c.tip), n),
            Err(Error::BudgetExceeded { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

/// Criticality: a Galton-Watson tree has on average one vertex at each depth.
#[test]
fn mean_generation_size_is_one() {
    let reps = 100_000u64;
    let sizes: Vec<f64> = (0..reps)
        .map(|r| {
            let mut t = LazyTree::new(RngStream::new(11, r).rng(), None);
            t.level(3).unwrap().len() as f64
        })
        .collect();
    let mean = sizes.iter().sum::<f64>() / reps as f64;
    let var = sizes.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (reps - 1) as f64;
    assert!((mean - 1.0).abs() < 3.0 * (var / reps as f64).sqrt(), "{mean}");
}
