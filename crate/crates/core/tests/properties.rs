use proptest::prelude::*;

use outerplanar::bijection::{canonical_code, certify, psi};
use outerplanar::geodesic::{restricted_move_distances, trace};
use outerplanar::oracle::{bfs_distances, black_ancestor_bound_check, separating_pair_check};
use outerplanar::{Colour, ColouredPlaneTree, NodeId};

/// Any coloured plane tree: vertex `i` hangs below a vertex picked from the
/// current rightmost path, which covers every shape in preorder.
fn any_tree(max: usize) -> impl Strategy<Value = ColouredPlaneTree> {
    (any::<bool>(), prop::collection::vec((any::<u16>(), any::<bool>()), 0..max)).prop_map(|(root_black, steps)| {
        let n = steps.len() + 1;
        let mut children = vec![Vec::new(); n];
        let mut colours = vec![if root_black { Colour::Black } else { Colour::White }];
        let mut path = vec![0usize];
        for (i, (pick, black)) in steps.into_iter().enumerate() {
            let v = i + 1;
            let at = pick as usize % path.len();
            path.truncate(at + 1);
            children[path[at]].push(v);
            path.push(v);
            colours.push(if black { Colour::Black } else { Colour::White });
        }
        ColouredPlaneTree::from_children(0, &children, &colours).unwrap().0
    })
}

/// The same trees with the rightmost branch forced white.
fn well_bicoloured(max: usize) -> impl Strategy<Value = ColouredPlaneTree> {
    any_tree(max).prop_map(|t| {
        let counts: Vec<usize> = t.nodes().map(|v| t.degree(v)).collect();
        let mut colours = t.colours().to_vec();
        for v in t.rightmost_branch() {
            colours[v.0] = Colour::White;
        }
        ColouredPlaneTree::from_child_counts(&counts, colours).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn text_round_trip(t in any_tree(40)) {
        let text = t.to_string();
        let back: ColouredPlaneTree = text.parse().unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back.len(), t.len());
    }

    #[test]
    fn circ_is_well_bicoloured(t in any_tree(40)) {
        let c = t.circ();
        prop_assert!(c.is_well_bicoloured());
        prop_assert_eq!(c.len(), t.len() + 1);
    }

    #[test]
    fn psi_is_outerplanar(t in well_bicoloured(60)) {
        let map = psi(&t).unwrap();
        let cert = certify(&map);
        prop_assert!(cert.is_valid(), "{t}: {cert:?}");
        prop_assert_eq!(cert.edges, t.len() - 1 + t.black_count());
    }

    #[test]
    fn rejects_badly_coloured(t in any_tree(30)) {
        prop_assert_eq!(psi(&t).is_ok(), t.is_well_bicoloured());
    }

    #[test]
    fn code_ignores_labels(
        (t, perm) in well_bicoloured(30).prop_flat_map(|t| {
            let ids: Vec<usize> = (0..t.len()).collect();
            (Just(t), Just(ids).prop_shuffle())
        })
    ) {
        let map = psi(&t).unwrap();
        let moved = map.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_code(&map).unwrap(), canonical_code(&moved).unwrap());
    }

    #[test]
    fn trace_matches_bfs(t in well_bicoloured(60)) {
        let d = bfs_distances(&psi(&t).unwrap(), 0);
        let moves = restricted_move_distances(&t).unwrap();
        for v in t.nodes() {
            let tr = trace(&t, v).unwrap();
            prop_assert!(tr.distance_identity_holds());
            prop_assert_eq!(tr.distance, d.dist[v.0] as usize, "{} vertex {}", t, v);
            prop_assert_eq!(moves[v.0], tr.distance);
        }
    }

    #[test]
    fn map_distance_at_most_depth(t in well_bicoloured(60)) {
        let d = bfs_distances(&psi(&t).unwrap(), 0);
        for v in t.nodes() {
            prop_assert!(d.dist[v.0] as usize <= t.depth(v));
        }
    }

    #[test]
    fn structural_bounds(t in well_bicoloured(25)) {
        let map = psi(&t).unwrap();
        prop_assert!(black_ancestor_bound_check(&t, &map).is_empty());
        prop_assert!(separating_pair_check(&t, &map).is_empty());
    }

    #[test]
    fn targets_are_next_unrelated(t in well_bicoloured(40)) {
        for v in t.nodes().filter(|&v| t.colour(v).is_black()) {
            let w = t.target(v).unwrap();
            prop_assert_eq!(w, NodeId(t.subtree_end(v)));
            prop_assert!(t.is_unrelated(v, w).unwrap());
        }
    }
}
