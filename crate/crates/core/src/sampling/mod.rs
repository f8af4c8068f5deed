//! Random trees: critical geometric Galton-Watson trees, uniform plane trees,
//! uniform well bicoloured trees and the cut `cut_n(T∞)` of the tree
//! conditioned to survive.

mod lazy;

pub use lazy::{LazyCut, LazyTree};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};
use serde::{Deserialize, Serialize};

use crate::bijection::branch_counts;
use crate::error::{Error, Result};
use crate::tree::{Colour, ColouredPlaneTree, NodeId};

/// The generator behind every stochastic routine.
pub type StreamRng = ChaCha8Rng;

/// A reproducible random stream: one per `(seed, stream)` pair, typically
/// one per replicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngStream {
    pub seed: u64,
    pub stream: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        RngStream { seed, stream }
    }

    pub fn rng(&self) -> StreamRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// The critical geometric offspring law `μ(k) = 2^(-k-1)`.
#[derive(Debug, Clone, Copy)]
pub struct OffspringLaw {
    geom: Geometric,
}

impl Default for OffspringLaw {
    fn default() -> Self {
        OffspringLaw {
            geom: Geometric::new(0.5).expect("valid parameter"),
        }
    }
}

impl OffspringLaw {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.geom.sample(rng) as usize
    }

    pub fn pmf(k: usize) -> f64 {
        0.5f64.powi(k as i32 + 1)
    }
}

pub fn random_colour<R: Rng + ?Sized>(rng: &mut R) -> Colour {
    if rng.random::<bool>() {
        Colour::Black
    } else {
        Colour::White
    }
}

/// Preorder child counts of a critical geometric Galton-Watson tree.
/// With a budget, aborts as soon as the tree would exceed it.
pub fn sample_gw_shape<R: Rng + ?Sized>(rng: &mut R, budget: Option<usize>) -> Result<Vec<usize>> {
    let law = OffspringLaw::default();
    let mut counts = Vec::new();
    // vertices generated but not yet given a child count
    let mut open = 1usize;
    while open > 0 {
        let c = law.sample(rng);
        counts.push(c);
        open = open - 1 + c;
        if let Some(budget) = budget {
            if counts.len() + open > budget {
                return Err(Error::BudgetExceeded { budget });
            }
        }
    }
    Ok(counts)
}

/// A critical geometric Galton-Watson tree with i.i.d. uniform colours.
pub fn sample_gw<R: Rng + ?Sized>(rng: &mut R, budget: Option<usize>) -> Result<ColouredPlaneTree> {
    let counts = sample_gw_shape(rng, budget)?;
    let colours = (0..counts.len()).map(|_| random_colour(rng)).collect();
    ColouredPlaneTree::from_child_counts(&counts, colours)
}

/// A uniform plane tree with `n` vertices, all white.
pub fn sample_uniform_plane_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<ColouredPlaneTree> {
    let counts = uniform_shape(n, rng)?;
    ColouredPlaneTree::from_child_counts(&counts, vec![Colour::White; n])
}

/// Preorder child counts of a uniform plane tree with `n` vertices: shuffle
/// `n-1` up steps and `n` down steps, rotate to just after the first minimum
/// (cycle lemma), drop the final down step and read the Dyck path.
fn uniform_shape<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    let mut word = vec![true; n - 1];
    word.extend(std::iter::repeat_n(false, n));
    word.shuffle(rng);
    let mut level = 0i64;
    let mut min = 0i64;
    let mut argmin = 0;
    for (i, &up) in word.iter().enumerate() {
        level += if up { 1 } else { -1 };
        if level < min {
            min = level;
            argmin = i + 1;
        }
    }
    let len = word.len();
    word.rotate_left(argmin % len);
    word.pop();
    let mut counts = vec![0usize; n];
    let mut parent = vec![0usize; n];
    let (mut cur, mut next) = (0usize, 1usize);
    for up in word {
        if up {
            counts[cur] += 1;
            parent[next] = cur;
            cur = next;
            next += 1;
        } else {
            cur = parent[cur];
        }
    }
    Ok(counts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum WellBicolouredMethod {
    /// Uniform shape, i.i.d. colours, accept iff the rightmost branch is white.
    #[default]
    Rejection,
    /// Branch length drawn from the exact counts, then a uniform forest.
    Exact,
}

impl std::str::FromStr for WellBicolouredMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rejection" => Ok(Self::Rejection),
            "exact" => Ok(Self::Exact),
            other => Err(Error::InvalidArgument(format!("unknown sampling method {other:?}"))),
        }
    }
}

impl std::fmt::Display for WellBicolouredMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Rejection => "rejection",
            Self::Exact => "exact",
        })
    }
}

/// A uniform well bicoloured tree with `n` vertices.
pub fn sample_well_bicoloured<R: Rng + ?Sized>(
    n: usize,
    method: WellBicolouredMethod,
    rng: &mut R,
) -> Result<ColouredPlaneTree> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    match method {
        WellBicolouredMethod::Rejection => loop {
            let counts = uniform_shape(n, rng)?;
            let colours = (0..n).map(|_| random_colour(rng)).collect();
            let tree = ColouredPlaneTree::from_child_counts(&counts, colours)?;
            if tree.is_well_bicoloured() {
                return Ok(tree);
            }
        },
        WellBicolouredMethod::Exact => sample_well_bicoloured_exact(n, rng),
    }
}

fn sample_well_bicoloured_exact<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<ColouredPlaneTree> {
    if n == 1 {
        return ColouredPlaneTree::from_child_counts(&[0], vec![Colour::White]);
    }
    let weights = branch_counts(n as u64)?;
    let total: BigUint = weights.iter().sum();
    let mut pick = random_below(&total, rng);
    let mut d = 1;
    for w in &weights {
        if &pick < w {
            break;
        }
        pick -= w;
        d += 1;
    }
    let forest = uniform_forest(d, n - 1, rng);
    // Link tree i+1 as the last child of the root of tree i, then finish the
    // branch with a white leaf. Forest roots form the rightmost branch.
    let mut counts = Vec::with_capacity(n);
    let mut colours = Vec::with_capacity(n);
    let mut open = 0usize;
    for c in forest {
        let is_root = open == 0;
        if is_root {
            open = 1;
        }
        open = open - 1 + c;
        counts.push(c + usize::from(is_root));
        colours.push(if is_root { Colour::White } else { random_colour(rng) });
    }
    counts.push(0);
    colours.push(Colour::White);
    ColouredPlaneTree::from_child_counts(&counts, colours)
}

/// Concatenated preorder child counts of a uniform forest of `k` plane trees
/// with `m` vertices in total.
fn uniform_forest<R: Rng + ?Sized>(k: usize, m: usize, rng: &mut R) -> Vec<usize> {
    // Uniform sequence of m counts summing to m - k (stars and bars, with
    // every block closed by a bar), then a uniform choice among its k good
    // cyclic rotations.
    let mut word = vec![true; m - k];
    word.extend(std::iter::repeat_n(false, m - 1));
    word.shuffle(rng);
    word.push(false);
    let mut counts = Vec::with_capacity(m);
    let mut run = 0;
    for up in word {
        if up {
            run += 1;
        } else {
            counts.push(run);
            run = 0;
        }
    }
    let mut prefix = Vec::with_capacity(m + 1);
    prefix.push(0i64);
    for &c in &counts {
        prefix.push(prefix.last().unwrap() + c as i64 - 1);
    }
    // Start s is good iff prefix[s] is strictly below every earlier prefix
    // and prefix[s] - k is strictly below every prefix[t], s < t < m.
    let mut later_min = vec![i64::MAX; m + 1];
    for t in (1..m).rev() {
        later_min[t] = later_min[t + 1].min(prefix[t]);
    }
    let mut good = Vec::with_capacity(k);
    let mut earlier_min = i64::MAX;
    for s in 0..m {
        if prefix[s] < earlier_min && prefix[s] - (k as i64) < later_min[s + 1] {
            good.push(s);
        }
        earlier_min = earlier_min.min(prefix[s]);
    }
    debug_assert_eq!(good.len(), k);
    let s = good[rng.random_range(0..good.len())];
    counts.rotate_left(s);
    counts
}

/// Uniform integer in `[0, bound)`.
pub fn random_below<R: Rng + ?Sized>(bound: &BigUint, rng: &mut R) -> BigUint {
    assert!(bound.bits() > 0, "empty range");
    let bits = bound.bits();
    let bytes = bits.div_ceil(8) as usize;
    let spare = (bytes as u64 * 8 - bits) as u32;
    let mut buf = vec![0u8; bytes];
    loop {
        rng.fill_bytes(&mut buf);
        // little-endian: the last byte is the most significant
        buf[bytes - 1] &= 0xffu8 >> spare;
        let x = BigUint::from_bytes_le(&buf);
        if &x < bound {
            return x;
        }
    }
}

/// `cut_n(T∞)`: the spine `v_0 … v_n` with its left and right bushes.
#[derive(Debug, Clone)]
pub struct CutSample {
    pub tree: ColouredPlaneTree,
    pub tip: NodeId,
    pub n: usize,
}

/// Builds `cut_n(T∞)` explicitly. Every vertex `v_i` of the spine gets
/// `Geom` many left children and as many (independent) right children, each
/// carrying an independent Galton-Watson tree; `v_n` carries a Galton-Watson
/// tree of its own. Colours are i.i.d. uniform.
pub fn sample_cut<R: Rng + ?Sized>(n: usize, rng: &mut R, budget: Option<usize>) -> Result<CutSample> {
    let law = OffspringLaw::default();
    let mut children: Vec<Vec<usize>> = Vec::new();
    let mut colours: Vec<Colour> = Vec::new();
    let new_node = |children: &mut Vec<Vec<usize>>, colours: &mut Vec<Colour>, rng: &mut R| {
        if let Some(budget) = budget.filter(|&b| children.len() >= b) {
            return Err(Error::BudgetExceeded { budget });
        }
        children.push(Vec::new());
        colours.push(random_colour(rng));
        Ok(children.len() - 1)
    };
    // bush roots whose Galton-Watson subtree still needs growing
    let mut pending = Vec::new();
    let mut spine = vec![new_node(&mut children, &mut colours, rng)?];
    for i in 0..=n {
        let v = spine[i];
        let (left, right) = if i < n {
            (law.sample(rng), law.sample(rng))
        } else {
            (0, law.sample(rng))
        };
        for _ in 0..left {
            let c = new_node(&mut children, &mut colours, rng)?;
            children[v].push(c);
            pending.push(c);
        }
        if i < n {
            let next = new_node(&mut children, &mut colours, rng)?;
            children[v].push(next);
            spine.push(next);
        }
        for _ in 0..right {
            let c = new_node(&mut children, &mut colours, rng)?;
            children[v].push(c);
            pending.push(c);
        }
    }
    while let Some(v) = pending.pop() {
        for _ in 0..law.sample(rng) {
            let c = new_node(&mut children, &mut colours, rng)?;
            children[v].push(c);
            pending.push(c);
        }
    }
    let (tree, map) = ColouredPlaneTree::from_children(0, &children, &colours)?;
    Ok(CutSample { tree, tip: map[spine[n]], n })
}

#[cfg(test)]
mod tests;
