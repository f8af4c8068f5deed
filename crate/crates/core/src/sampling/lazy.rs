use crate::error::{Error, Result};
use crate::geodesic::{trace_source, GeodesicTrace, TreeSource};
use crate::tree::{Colour, ColouredPlaneTree, NodeId};

use super::{random_colour, OffspringLaw, StreamRng};

/// A Galton-Watson tree whose child lists are drawn the first time they are
/// asked for.
///
/// Critical geometric trees have infinite expected size, so sampling them in
/// full is hopeless once many are needed. Expanding on demand gives the same
/// law for everything a computation actually looks at.
pub struct LazyTree {
    rng: StreamRng,
    law: OffspringLaw,
    parent: Vec<usize>,
    colour: Vec<Colour>,
    kids: Vec<Option<Vec<usize>>>,
    budget: Option<usize>,
}

impl LazyTree {
    /// A single unexpanded root with a uniform colour.
    pub fn new(mut rng: StreamRng, budget: Option<usize>) -> Self {
        let root_colour = random_colour(&mut rng);
        LazyTree {
            rng,
            law: OffspringLaw::default(),
            parent: vec![usize::MAX],
            colour: vec![root_colour],
            kids: vec![None],
            budget,
        }
    }

    /// Vertices created so far.
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_expanded(&self, v: usize) -> bool {
        self.kids[v].is_some()
    }

    fn add_node(&mut self, parent: usize, colour: Colour) -> Result<usize> {
        if let Some(budget) = self.budget.filter(|&b| self.parent.len() >= b) {
            return Err(Error::BudgetExceeded { budget });
        }
        self.parent.push(parent);
        self.colour.push(colour);
        self.kids.push(None);
        Ok(self.parent.len() - 1)
    }

    /// Adds `k` children with uniform colours, unexpanded.
    fn fresh_children(&mut self, v: usize, k: usize) -> Result<Vec<usize>> {
        (0..k)
            .map(|_| {
                let c = random_colour(&mut self.rng);
                self.add_node(v, c)
            })
            .collect()
    }

    pub fn expand(&mut self, v: usize) -> Result<&[usize]> {
        if self.kids[v].is_none() {
            let k = self.law.sample(&mut self.rng);
            let list = self.fresh_children(v, k)?;
            self.kids[v] = Some(list);
        }
        Ok(self.kids[v].as_deref().expect("expanded"))
    }

    /// `τ°`: a white leaf as the new last child of the root, root recoloured
    /// white. Returns the new leaf.
    pub fn circ(&mut self) -> Result<usize> {
        self.expand(0)?;
        let leaf = self.add_node(0, Colour::White)?;
        self.kids[leaf] = Some(Vec::new());
        self.kids[0].as_mut().expect("expanded").push(leaf);
        self.colour[0] = Colour::White;
        Ok(leaf)
    }

    /// Vertices at depth `n`, left to right, expanding every level above.
    pub fn level(&mut self, n: usize) -> Result<Vec<usize>> {
        let mut layer = vec![0];
        for _ in 0..n {
            let mut next = Vec::new();
            for v in layer {
                next.extend_from_slice(self.expand(v)?);
            }
            layer = next;
        }
        Ok(layer)
    }

    /// Expands everything and returns the finite tree together with the map
    /// from arena ids to canonical ids.
    pub fn materialize(&mut self) -> Result<(ColouredPlaneTree, Vec<NodeId>)> {
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            stack.extend_from_slice(self.expand(v)?);
        }
        let lists: Vec<Vec<usize>> = self.kids.iter().map(|k| k.clone().expect("expanded")).collect();
        ColouredPlaneTree::from_children(0, &lists, &self.colour)
    }
}

impl TreeSource for &mut LazyTree {
    fn root(&self) -> usize {
        0
    }

    fn parent(&self, v: usize) -> Option<usize> {
        (v != 0).then(|| self.parent[v])
    }

    fn colour(&self, v: usize) -> Colour {
        self.colour[v]
    }

    fn children(&mut self, v: usize) -> Result<Vec<usize>> {
        self.expand(v).map(|k| k.to_vec())
    }
}

/// `cut_n(T∞)` with only the spine built up front; the bushes hanging off it
/// are lazy.
pub struct LazyCut {
    pub tree: LazyTree,
    pub tip: usize,
    pub n: usize,
}

impl LazyCut {
    /// Spine `v_0 … v_n`. Each `v_i` with `i < n` gets geometrically many
    /// left children, then `v_{i+1}`, then geometrically many right children;
    /// `v_n` is an ordinary lazy Galton-Watson root.
    pub fn sample(n: usize, rng: StreamRng, budget: Option<usize>) -> Result<Self> {
        let mut tree = LazyTree::new(rng, budget);
        let mut v = 0;
        for _ in 0..n {
            let left = tree.law.sample(&mut tree.rng);
            let mut list = tree.fresh_children(v, left)?;
            let spine_colour = random_colour(&mut tree.rng);
            let next = tree.add_node(v, spine_colour)?;
            list.push(next);
            let right = tree.law.sample(&mut tree.rng);
            list.extend(tree.fresh_children(v, right)?);
            tree.kids[v] = Some(list);
            v = next;
        }
        Ok(LazyCut { tree, tip: v, n })
    }

    /// Runs the geodesic algorithm from the tip of `cut_n(T∞)°`.
    pub fn circ_trace(&mut self) -> Result<GeodesicTrace> {
        self.tree.circ()?;
        trace_source(&mut self.tree, self.tip)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesic::trace;
    use crate::sampling::RngStream;

    #[test]
    fn cut_spine_shape() {
        for rep in 0..50 {
            let mut cut = LazyCut::sample(6, RngStream::new(3, rep).rng(), None).unwrap();
            let mut depth = 0;
            let mut v = cut.tip;
            while v != 0 {
                v = cut.tree.parent[v];
                depth += 1;
            }
            assert_eq!(depth, 6);
            assert!(!cut.tree.is_expanded(cut.tip));
            cut.tree.circ().unwrap();
            assert_eq!(cut.tree.colour[0], Colour::White);
        }
    }

    #[test]
    fn budget_aborts_instead_of_truncating() {
        let mut hit = false;
        for rep in 0..200 {
            let mut tree = LazyTree::new(RngStream::new(9, rep).rng(), Some(50));
            match tree.materialize() {
                Ok((t, _)) => assert!(t.len() <= 50),
                Err(Error::BudgetExceeded { budget: 50 }) => hit = true,
                Err(e) => panic!("{e}"),
            }
        }
        assert!(hit);
    }

    /// The lazy trace must give exactly the distance computed on the fully
    /// expanded tree.
    #[test]
    fn lazy_trace_matches_materialized() {
        let mut compared = 0;
        for rep in 0..400 {
            let n = 1 + (rep as usize % 12);
            let mut cut = LazyCut::sample(n, RngStream::new(17, rep).rng(), Some(20_000)).unwrap();
            let lazy = cut.circ_trace().unwrap();
            let Ok((tree, ids)) = cut.tree.materialize() else { continue };
            let eager = trace(&tree, ids[cut.tip]).unwrap();
            assert_eq!(lazy, eager, "replicate {rep}");
            compared += 1;
        }
        assert!(compared > 300);
    }
}
