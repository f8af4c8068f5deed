//! Rooted plane trees with a black/white colouring.
//!
//! Vertices carry canonical ids: `0..n` in depth-first, children-left-to-right
//! preorder. The root is always `NodeId(0)`. With this numbering the subtree of
//! `v` is the id interval `v..subtree_end(v)`, which answers every ancestry
//! query in constant time.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Colour {
    White,
    Black,
}

impl Colour {
    pub fn letter(self) -> char {
        match self {
            Colour::White => 'w',
            Colour::Black => 'b',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'w' => Some(Colour::White),
            'b' => Some(Colour::Black),
            _ => None,
        }
    }

    pub fn is_white(self) -> bool {
        self == Colour::White
    }

    pub fn is_black(self) -> bool {
        self == Colour::Black
    }
}

/// Index of a vertex in a [`ColouredPlaneTree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

const NO_PARENT: usize = usize::MAX;

/// An immutable rooted plane tree with canonical preorder ids.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColouredPlaneTree {
    colour: Vec<Colour>,
    parent: Vec<usize>,
    child_off: Vec<usize>,
    children: Vec<NodeId>,
    depth: Vec<usize>,
    end: Vec<usize>,
    well_bicoloured: bool,
}

impl ColouredPlaneTree {
    /// Builds a tree from its preorder sequence of child counts.
    pub fn from_child_counts(counts: &[usize], colours: Vec<Colour>) -> Result<Self> {
        let n = counts.len();
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        if colours.len() != n {
            return Err(Error::InvalidArgument(format!(
                "{} colours given for {} vertices",
                colours.len(),
                n
            )));
        }
        let mut parent = vec![NO_PARENT; n];
        // (vertex, children still to be attached)
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for (v, &c) in counts.iter().enumerate() {
            if v > 0 {
                let Some(top) = stack.last_mut() else {
                    return Err(Error::InvalidArgument(
                        "child counts describe a forest, not a tree".into(),
                    ));
                };
                parent[v] = top.0;
                top.1 -= 1;
                if top.1 == 0 {
                    stack.pop();
                }
            }
            if c > 0 {
                stack.push((v, c));
            }
        }
        if !stack.is_empty() {
            return Err(Error::InvalidArgument(
                "child counts ask for more vertices than given".into(),
            ));
        }
        Ok(Self::from_preorder_parents(parent, colours))
    }

    /// Builds a tree from arbitrary ids: `children[v]` lists the children of `v`
    /// left to right. Ids are relabelled to canonical preorder; the returned
    /// vector maps each old id to its new id.
    pub fn from_children(
        root: usize,
        children: &[Vec<usize>],
        colours: &[Colour],
    ) -> Result<(Self, Vec<NodeId>)> {
        let n = children.len();
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        if colours.len() != n || root >= n {
            return Err(Error::InvalidArgument("inconsistent tree description".into()));
        }
        let mut new_id = vec![NO_PARENT; n];
        let mut parent = Vec::with_capacity(n);
        let mut col = Vec::with_capacity(n);
        let mut stack = vec![(root, NO_PARENT)];
        while let Some((v, p)) = stack.pop() {
            if v >= n || new_id[v] != NO_PARENT {
                return Err(Error::InvalidArgument(format!(
                    "vertex {v} is reached twice or does not exist"
                )));
            }
            new_id[v] = parent.len();
            parent.push(p);
            col.push(colours[v]);
            let me = new_id[v];
            stack.extend(children[v].iter().rev().map(|&c| (c, me)));
        }
        if parent.len() != n {
            return Err(Error::InvalidArgument(
                "some vertices are not reachable from the root".into(),
            ));
        }
        let map = new_id.into_iter().map(NodeId).collect();
        Ok((Self::from_preorder_parents(parent, col), map))
    }

    /// `parent` must already be in preorder (every parent id precedes its
    /// children, siblings in left-to-right order).
    fn from_preorder_parents(parent: Vec<usize>, colour: Vec<Colour>) -> Self {
        let n = parent.len();
        let mut deg = vec![0usize; n];
        for &p in &parent[1..] {
            deg[p] += 1;
        }
        let mut child_off = Vec::with_capacity(n + 1);
        let mut acc = 0;
        child_off.push(0);
        for &d in &deg {
            acc += d;
            child_off.push(acc);
        }
        let mut fill = child_off.clone();
        let mut children = vec![NodeId(0); n.saturating_sub(1)];
        let mut depth = vec![0usize; n];
        for v in 1..n {
            let p = parent[v];
            children[fill[p]] = NodeId(v);
            fill[p] += 1;
            depth[v] = depth[p] + 1;
        }
        let mut end: Vec<usize> = (1..=n).collect();
        for v in (1..n).rev() {
            let p = parent[v];
            end[p] = end[p].max(end[v]);
        }
        let mut tree = ColouredPlaneTree {
            colour,
            parent,
            child_off,
            children,
            depth,
            end,
            well_bicoloured: false,
        };
        tree.well_bicoloured = tree
            .rightmost_branch()
            .iter()
            .all(|&v| tree.colour(v).is_white());
        tree
    }

    pub fn len(&self) -> usize {
        self.colour.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root(&self) -> NodeId {
        NodeId(0)
    }

    pub fn nodes(&self) -> impl DoubleEndedIterator<Item = NodeId> + ExactSizeIterator {
        (0..self.len()).map(NodeId)
    }

    pub fn check(&self, v: usize) -> Result<NodeId> {
        if v < self.len() {
            Ok(NodeId(v))
        } else {
            Err(Error::VertexOutOfRange(v, self.len()))
        }
    }

    #[inline]
    pub fn colour(&self, v: NodeId) -> Colour {
        self.colour[v.0]
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colour
    }

    #[inline]
    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        match self.parent[v.0] {
            NO_PARENT => None,
            p => Some(NodeId(p)),
        }
    }

    #[inline]
    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.children[self.child_off[v.0]..self.child_off[v.0 + 1]]
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        self.child_off[v.0 + 1] - self.child_off[v.0]
    }

    #[inline]
    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.degree(v) == 0
    }

    /// `r(v)`, the rightmost child.
    pub fn rightmost_child(&self, v: NodeId) -> Option<NodeId> {
        self.children(v).last().copied()
    }

    /// Height `|v|` (the root has height 0).
    #[inline]
    pub fn depth(&self, v: NodeId) -> usize {
        self.depth[v.0]
    }

    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// One past the last preorder id in the subtree of `v`.
    #[inline]
    pub fn subtree_end(&self, v: NodeId) -> usize {
        self.end[v.0]
    }

    pub fn subtree_size(&self, v: NodeId) -> usize {
        self.end[v.0] - v.0
    }

    /// True if `a` is an ancestor of `b` or equal to it.
    #[inline]
    pub fn is_ancestor_or_self(&self, a: NodeId, b: NodeId) -> bool {
        a.0 <= b.0 && b.0 < self.end[a.0]
    }

    #[inline]
    pub fn is_strict_ancestor(&self, a: NodeId, b: NodeId) -> bool {
        a != b && self.is_ancestor_or_self(a, b)
    }

    pub fn ancestors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        std::iter::successors(self.parent(v), move |&u| self.parent(u))
    }

    pub fn black_count(&self) -> usize {
        self.colour.iter().filter(|c| c.is_black()).count()
    }

    /// Clockwise contour order, i.e. depth-first preorder with children
    /// visited left to right. For canonical trees this is `0..n`.
    pub fn contour_order(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root()];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children(v).iter().rev());
        }
        out
    }

    pub fn is_unrelated(&self, u: NodeId, v: NodeId) -> Result<bool> {
        self.check(u.0)?;
        self.check(v.0)?;
        if u == v {
            return Err(Error::SameVertex(u));
        }
        Ok(!self.is_ancestor_or_self(u, v) && !self.is_ancestor_or_self(v, u))
    }

    /// First vertex after `v` in contour order that is unrelated to `v`, for
    /// any colour. `None` exactly when `v` lies on the rightmost branch.
    #[inline]
    pub fn next_unrelated(&self, v: NodeId) -> Option<NodeId> {
        let e = self.end[v.0];
        (e < self.len()).then_some(NodeId(e))
    }

    /// `t(v)`, the target of a black vertex in a well bicoloured tree.
    pub fn target(&self, v: NodeId) -> Result<NodeId> {
        self.check(v.0)?;
        if self.colour(v).is_white() {
            return Err(Error::TargetOfWhite(v));
        }
        if !self.well_bicoloured {
            return Err(Error::NotWellBicoloured);
        }
        self.next_unrelated(v)
            .ok_or_else(|| Error::Invariant(format!("black vertex {v} has no target")))
    }

    pub fn is_well_bicoloured(&self) -> bool {
        self.well_bicoloured
    }

    /// The root, its rightmost child, and so on down to a leaf.
    pub fn rightmost_branch(&self) -> Vec<NodeId> {
        let mut out = vec![self.root()];
        while let Some(r) = self.rightmost_child(*out.last().unwrap()) {
            out.push(r);
        }
        out
    }

    /// `τ°`: appends a white leaf as the last child of the root and recolours
    /// the root white. Existing ids are preserved; the new leaf gets id `n`.
    pub fn circ(&self) -> ColouredPlaneTree {
        let mut parent = self.parent.clone();
        parent.push(0);
        let mut colour = self.colour.clone();
        colour[0] = Colour::White;
        colour.push(Colour::White);
        Self::from_preorder_parents(parent, colour)
    }

    /// True iff `v` is a strict ancestor of `u` and `w` is a child of `v`
    /// lying strictly to the right of the child of `v` leading to `u`.
    pub fn separating_pair_for(&self, u: NodeId, v: NodeId, w: NodeId) -> bool {
        if u == v || v == w || u == w || !self.is_strict_ancestor(v, u) {
            return false;
        }
        if self.parent(w) != Some(v) {
            return false;
        }
        // Siblings are numbered left to right, and everything in the subtree
        // of the path child precedes its right siblings.
        w.0 > u.0
    }

    /// Vertices of the subtree of `v` in preorder.
    pub fn subtree(&self, v: NodeId) -> impl Iterator<Item = NodeId> {
        (v.0..self.end[v.0]).map(NodeId)
    }

    /// The same tree with ids relabelled but described by child lists, for
    /// structural rewrites.
    pub fn child_lists(&self) -> Vec<Vec<usize>> {
        self.nodes()
            .map(|v| self.children(v).iter().map(|c| c.0).collect())
            .collect()
    }
}

impl fmt::Display for ColouredPlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::with_capacity(3 * self.len());
        // Vertices in preorder; close parentheses when leaving subtrees.
        let mut open: Vec<usize> = Vec::new();
        for v in 0..self.len() {
            while let Some(&top) = open.last() {
                if v >= self.end[top] {
                    s.push(')');
                    open.pop();
                } else {
                    break;
                }
            }
            s.push(self.colour[v].letter());
            s.push('(');
            open.push(v);
        }
        for _ in open {
            s.push(')');
        }
        f.write_str(&s)
    }
}

impl fmt::Debug for ColouredPlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColouredPlaneTree({self})")
    }
}

impl FromStr for ColouredPlaneTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parent = Vec::new();
        let mut colour = Vec::new();
        let mut open: Vec<usize> = Vec::new();
        let mut expect_paren = false;
        let mut done = false;
        for (pos, ch) in s.char_indices() {
            if ch.is_whitespace() {
                continue;
            }
            if done {
                return Err(Error::parse(pos, "trailing input after the root closes"));
            }
            if expect_paren {
                if ch != '(' {
                    return Err(Error::parse(pos, "expected '(' after colour letter"));
                }
                expect_paren = false;
                continue;
            }
            match ch {
                'w' | 'b' => {
                    if parent.is_empty() {
                        parent.push(NO_PARENT);
                    } else {
                        match open.last() {
                            Some(&p) => parent.push(p),
                            None => return Err(Error::parse(pos, "second root")),
                        }
                    }
                    colour.push(Colour::from_letter(ch).unwrap());
                    open.push(parent.len() - 1);
                    expect_paren = true;
                }
                ')' => {
                    if open.pop().is_none() {
                        return Err(Error::parse(pos, "unbalanced ')'"));
                    }
                    done = open.is_empty();
                }
                other => {
                    return Err(Error::parse(pos, format!("unexpected character {other:?}")))
                }
            }
        }
        if parent.is_empty() {
            return Err(Error::parse(s.len(), "empty tree"));
        }
        if expect_paren || !open.is_empty() {
            return Err(Error::parse(s.len(), "unterminated vertex"));
        }
        Ok(Self::from_preorder_parents(parent, colour))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> ColouredPlaneTree {
        s.parse().unwrap()
    }

    /// The well bicoloured example tree with vertices `u`, `v` and `v`'s
    /// target `w` marked (phantom layout nodes dropped).
    pub(crate) const EXAMPLE_TARGET_TREE: &str =
        "w(w(b(w()b())b(w()b(w()w())w()))b(b()w(w()b())b())w(b()w(w())))";

    /// Example with a separating pair `(v, w)` for `u`.
    pub(crate) const EXAMPLE_SEPARATING_TREE: &str =
        "w(w(b(w()b())b(w()b(w()w())w()))b(b()w(w()b(w()b(w()w())w()))b()w(b()))w(b()w())w(w(b()b()w())))";

    #[test]
    fn contour_order_examples() {
        assert_eq!(t("w()").contour_order(), vec![NodeId(0)]);
        assert_eq!(t("w(b()w())").contour_order(), vec![NodeId(0), NodeId(1), NodeId(2)]);
        let tree = t("w(w(b())w())");
        let a = tree.children(tree.root())[0];
        let x = tree.children(a)[0];
        let c = tree.children(tree.root())[1];
        assert_eq!(tree.contour_order(), vec![tree.root(), a, x, c]);
    }

    #[test]
    fn contour_order_matches_recursive_definition() {
        fn rec(t: &ColouredPlaneTree, v: NodeId, out: &mut Vec<NodeId>) {
            out.push(v);
            for &c in t.children(v) {
                rec(t, c, out);
            }
        }
        for s in [EXAMPLE_TARGET_TREE, EXAMPLE_SEPARATING_TREE, "w(w(b())w())"] {
            let tree = t(s);
            let mut out = Vec::new();
            rec(&tree, tree.root(), &mut out);
            assert_eq!(tree.contour_order(), out);
        }
    }

    #[test]
    fn unrelated() {
        let path = t("w(w(w()))");
        assert!(!path.is_unrelated(NodeId(1), NodeId(2)).unwrap());
        let cherry = t("w(b()w())");
        assert!(cherry.is_unrelated(NodeId(1), NodeId(2)).unwrap());
        assert_eq!(
            cherry.is_unrelated(NodeId(1), NodeId(1)),
            Err(Error::SameVertex(NodeId(1)))
        );
    }

    #[test]
    fn example_tree_targets() {
        let tree = t(EXAMPLE_TARGET_TREE);
        assert!(tree.is_well_bicoloured());
        // u: first child of the first child of the first child of the root.
        let a = tree.children(tree.root())[0];
        let u = tree.children(tree.children(a)[0])[0];
        let b = tree.children(tree.root())[1];
        let v = tree.children(tree.children(b)[1])[1];
        let w = tree.children(b)[2];
        assert_eq!(tree.colour(v), Colour::Black);
        assert!(tree.is_unrelated(u, v).unwrap());
        assert_eq!(tree.target(v).unwrap(), w);
    }

    #[test]
    fn targets() {
        let tree = t("w(b(b())w())");
        assert_eq!(tree.target(NodeId(2)).unwrap(), NodeId(3));
        assert_eq!(tree.target(NodeId(1)).unwrap(), NodeId(3));
        let tree = t("w(w(w(b()))w())");
        assert_eq!(tree.target(NodeId(3)).unwrap(), NodeId(4));
        let tree = t("w(b()w())");
        assert_eq!(tree.target(NodeId(1)).unwrap(), NodeId(2));
        assert_eq!(tree.target(NodeId(2)), Err(Error::TargetOfWhite(NodeId(2))));
        let bad = t("w(b()b())");
        assert_eq!(bad.target(NodeId(1)), Err(Error::NotWellBicoloured));
    }

    #[test]
    fn well_bicoloured_and_branch() {
        assert!(!t("b()").is_well_bicoloured());
        assert!(t("w(b()w())").is_well_bicoloured());
        assert!(!t("w(b()b())").is_well_bicoloured());
        assert_eq!(t("w()").rightmost_branch(), vec![NodeId(0)]);
        assert_eq!(t("w(w(w()))").rightmost_branch().len(), 3);
        assert_eq!(t("w(b()w())").rightmost_branch(), vec![NodeId(0), NodeId(2)]);
    }

    #[test]
    fn circ_examples() {
        assert_eq!(t("b()").circ().to_string(), "w(w())");
        assert_eq!(t("w(b())").circ().to_string(), "w(b()w())");
        assert_eq!(t("w(w())").circ().to_string(), "w(w()w())");
        let big = t(EXAMPLE_SEPARATING_TREE);
        let c = big.circ();
        assert_eq!(c.len(), big.len() + 1);
        assert_eq!(c.parent(NodeId(big.len())), Some(c.root()));
    }

    #[test]
    fn separating_pairs() {
        let tree = t(EXAMPLE_SEPARATING_TREE);
        let v = tree.children(tree.root())[1];
        let mid = tree.children(v)[1];
        let pu = tree.children(mid)[1];
        let u = tree.children(pu)[1];
        let w = tree.children(v)[3];
        assert_eq!(tree.colour(u), Colour::Black);
        assert!(tree.separating_pair_for(u, v, w));
        // also for r(u), t(u) and p(u)
        let ru = tree.rightmost_child(u).unwrap();
        assert!(tree.separating_pair_for(ru, v, w));
        assert!(tree.separating_pair_for(tree.target(u).unwrap(), v, w));
        assert!(tree.separating_pair_for(pu, v, w));
        // w to the left of the path is not separating
        assert!(!tree.separating_pair_for(u, v, tree.children(v)[0]));

        let cherry = t("w(b()w())");
        assert!(cherry.separating_pair_for(NodeId(1), NodeId(0), NodeId(2)));
        assert!(!cherry.separating_pair_for(NodeId(2), NodeId(0), NodeId(1)));
        let path = t("w(w(w()))");
        for w in path.nodes() {
            assert!(!path.separating_pair_for(NodeId(2), NodeId(1), w));
            assert!(!path.separating_pair_for(NodeId(2), NodeId(0), w));
        }
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "w", "w(", "w()w()", "x()", "w())", "w(()", ")"] {
            assert!(matches!(bad.parse::<ColouredPlaneTree>(), Err(Error::Parse { .. })), "{bad}");
        }
        assert_eq!(t(" w ( b ( ) w( ) ) ").to_string(), "w(b()w())");
    }

    #[test]
    fn child_counts_roundtrip() {
        let tree = t(EXAMPLE_TARGET_TREE);
        let counts: Vec<usize> = tree.nodes().map(|v| tree.degree(v)).collect();
        let back = ColouredPlaneTree::from_child_counts(&counts, tree.colours().to_vec()).unwrap();
        assert_eq!(back, tree);
        assert!(ColouredPlaneTree::from_child_counts(&[2, 0], vec![Colour::White; 2]).is_err());
        assert!(ColouredPlaneTree::from_child_counts(&[0, 0], vec![Colour::White; 2]).is_err());
    }

    #[test]
    fn from_children_relabels() {
        // root 2 with children [0, 1]; 0 has child 3
        let kids = vec![vec![3], vec![], vec![0, 1], vec![]];
        let cols = [Colour::Black, Colour::White, Colour::White, Colour::Black];
        let (tree, map) = ColouredPlaneTree::from_children(2, &kids, &cols).unwrap();
        assert_eq!(tree.to_string(), "w(b(b())w())");
        assert_eq!(map, vec![NodeId(1), NodeId(3), NodeId(0), NodeId(2)]);
    }

    #[test]
    fn deep_path_does_not_overflow_stack() {
        let n = 200_000;
        let mut counts = vec![1; n];
        counts[n - 1] = 0;
        let tree = ColouredPlaneTree::from_child_counts(&counts, vec![Colour::White; n]).unwrap();
        let s = tree.to_string();
        let back: ColouredPlaneTree = s.parse().unwrap();
        assert_eq!(back.height(), n - 1);
        assert!(back.is_well_bicoloured());
    }
}
