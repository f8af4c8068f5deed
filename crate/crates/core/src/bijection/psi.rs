use crate::bijection::map::{Dart, RotationMap};
use crate::error::{Error, Result};
use crate::tree::{ColouredPlaneTree, NodeId};

/// `Ψ(τ)`: joins each black vertex to its target and roots the map on the
/// dart from the tree root to its leftmost child.
///
/// Rotations are counterclockwise with the tree drawn root-down. Around a
/// non-root vertex `v` they read: parent, outgoing chord (the corner right of
/// the rightmost child), children right to left, then the incoming chords in
/// the leftmost corner, deepest source first so that chords from deeper
/// sources pass outside the shallower ones.
pub fn psi(tree: &ColouredPlaneTree) -> Result<RotationMap> {
    if !tree.is_well_bicoloured() {
        return Err(Error::NotWellBicoloured);
    }
    let n = tree.len();
    let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut outgoing: Vec<Option<usize>> = vec![None; n];
    // Preorder visits the sources of one target by increasing depth.
    for v in tree.nodes() {
        if tree.colour(v).is_black() {
            let t = tree.target(v)?;
            outgoing[v.0] = Some(t.0);
            incoming[t.0].push(v.0);
        }
    }
    let mut rotation = Vec::with_capacity(n);
    for v in tree.nodes() {
        let mut r = Vec::with_capacity(tree.degree(v) + 2 + incoming[v.0].len());
        if let Some(p) = tree.parent(v) {
            r.push(p.0);
        }
        if let Some(t) = outgoing[v.0] {
            r.push(t);
        }
        r.extend(tree.children(v).iter().rev().map(|c| c.0));
        r.extend(incoming[v.0].iter().rev());
        rotation.push(r);
    }
    let root_dart = (n > 1).then(|| Dart {
        vertex: 0,
        slot: tree.degree(NodeId(0)) - 1,
    });
    RotationMap::new(rotation, root_dart)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> ColouredPlaneTree {
        s.parse().unwrap()
    }

    #[test]
    fn single_vertex() {
        let m = psi(&t("w()")).unwrap();
        assert_eq!(m.vertex_count(), 1);
        assert_eq!(m.edge_count(), 0);
        assert_eq!(m.root_dart(), None);
    }

    #[test]
    fn triangle() {
        let m = psi(&t("w(b()w())")).unwrap();
        assert_eq!(m.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        let root = m.root_dart().unwrap();
        assert_eq!((root.vertex, m.head(root)), (0, 1));
    }

    #[test]
    fn chords_and_edge_count() {
        let tree = t("w(b(b())w())");
        let m = psi(&tree).unwrap();
        assert_eq!(m.edge_count(), 5);
        assert_eq!(m.edge_count(), tree.len() - 1 + tree.black_count());
        assert!(m.has_edge(1, 3) && m.has_edge(2, 3));
    }

    #[test]
    fn rejects_badly_coloured() {
        assert_eq!(psi(&t("w(b()b())")), Err(Error::NotWellBicoloured));
        assert_eq!(psi(&t("b()")), Err(Error::NotWellBicoloured));
    }

    #[test]
    fn tree_edges_survive() {
        let tree = t("w(w(b(w()b())b(w()b(w()w())w()))b(b()w(w()b())b())w(b()w(w())))");
        let m = psi(&tree).unwrap();
        for v in tree.nodes().skip(1) {
            assert!(m.has_edge(v.0, tree.parent(v).unwrap().0));
        }
    }
}
