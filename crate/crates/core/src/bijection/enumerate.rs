use crate::error::{Error, Result};
use crate::tree::{ColouredPlaneTree, Colour};

/// Largest `n` accepted by [`enumerate_well_bicoloured`]; there are 14589
/// trees at `n = 8` and the count grows roughly eightfold per vertex.
pub const DEFAULT_EXHAUSTIVE_BOUND: usize = 8;

/// Every well bicoloured tree with `n` vertices, once each, in lexicographic
/// order of the text serialisation.
pub fn enumerate_well_bicoloured(n: usize) -> Result<impl Iterator<Item = ColouredPlaneTree>> {
    enumerate_well_bicoloured_bounded(n, DEFAULT_EXHAUSTIVE_BOUND)
}

pub fn enumerate_well_bicoloured_bounded(
    n: usize,
    bound: usize,
) -> Result<impl Iterator<Item = ColouredPlaneTree>> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    let mut texts = Vec::new();
    for counts in plane_tree_shapes(n) {
        let shape =
            ColouredPlaneTree::from_child_counts(&counts, vec![Colour::White; n]).expect("valid shape");
        let branch = shape.rightmost_branch();
        let mut on_branch = vec![false; n];
        for v in &branch {
            on_branch[v.0] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&v| !on_branch[v]).collect();
        for mask in 0u64..(1u64 << free.len()) {
            let mut colours = vec![Colour::White; n];
            for (bit, &v) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    colours[v] = Colour::Black;
                }
            }
            let tree = ColouredPlaneTree::from_child_counts(&counts, colours).expect("valid shape");
            texts.push(tree.to_string());
        }
    }
    texts.sort_unstable();
    Ok(texts
        .into_iter()
        .map(|s| s.parse().expect("serialisation round-trips")))
}

/// Preorder child-count sequences of all plane trees with `n` vertices.
pub fn plane_tree_shapes(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, counts: &mut Vec<usize>, open: usize, out: &mut Vec<Vec<usize>>) {
        // `open` counts vertices still owed to pending parents.
        let placed = counts.len();
        if placed == n {
            if open == 0 {
                out.push(counts.clone());
            }
            return;
        }
        if placed > 0 && open == 0 {
            return;
        }
        let remaining = n - placed - 1;
        let owed = open.saturating_sub(1);
        for c in 0..=remaining.saturating_sub(owed) {
            counts.push(c);
            let next_open = if placed == 0 { c } else { open - 1 + c };
            rec(n, counts, next_open, out);
            counts.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::with_capacity(n), 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::count::{catalan, count_well_bicoloured};

    #[test]
    fn shape_counts_are_catalan() {
        for n in 1..=9 {
            let expected: u64 = catalan(n as u64 - 1).try_into().unwrap();
            assert_eq!(plane_tree_shapes(n).len() as u64, expected, "n={n}");
        }
    }

    #[test]
    fn small_enumerations() {
        let one: Vec<String> = enumerate_well_bicoloured(1).unwrap().map(|t| t.to_string()).collect();
        assert_eq!(one, vec!["w()"]);
        let two: Vec<String> = enumerate_well_bicoloured(2).unwrap().map(|t| t.to_string()).collect();
        assert_eq!(two, vec!["w(w())"]);
        let three: Vec<String> = enumerate_well_bicoloured(3).unwrap().map(|t| t.to_string()).collect();
        assert_eq!(three, vec!["w(b()w())", "w(w()w())", "w(w(w()))"]);
    }

    #[test]
    fn matches_formula_and_is_sorted() {
        for n in 1..=7 {
            let texts: Vec<String> =
                enumerate_well_bicoloured(n).unwrap().map(|t| t.to_string()).collect();
            let expected: u64 = count_well_bicoloured(n as u64).unwrap().try_into().unwrap();
            assert_eq!(texts.len() as u64, expected);
            assert!(texts.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn refuses_large_n() {
        assert!(matches!(
            enumerate_well_bicoloured(9),
            Err(Error::BoundExceeded { n: 9, bound: 8 })
        ));
        assert!(enumerate_well_bicoloured_bounded(9, 9).is_ok());
        assert!(matches!(enumerate_well_bicoloured(0), Err(Error::ZeroSize)));
    }
}
