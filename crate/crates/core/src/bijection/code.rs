use std::collections::VecDeque;

use crate::bijection::map::RotationMap;
use crate::error::{Error, Result};

/// Canonical byte encoding of a rooted map. Two maps get equal codes iff
/// they are isomorphic as rooted maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MapCode(pub Vec<u8>);

/// Breadth-first relabelling from the root dart. Each vertex's rotation is
/// read starting from the dart through which it was discovered (the root dart
/// for the root vertex), so the output only depends on the rooted map.
pub fn canonical_code(map: &RotationMap) -> Result<MapCode> {
    let n = map.vertex_count();
    let mut out: Vec<u32> = Vec::with_capacity(2 * n + 2 * map.edge_count());
    out.push(n as u32);
    let Some(root) = map.root_dart() else {
        if n == 1 {
            out.push(0);
            return Ok(MapCode(encode(&out)));
        }
        return Err(Error::InvalidArgument("map has edges but no root dart".into()));
    };
    let mut label = vec![u32::MAX; n];
    let mut queue = VecDeque::new();
    label[root.vertex] = 0;
    let mut next = 1u32;
    queue.push_back((root.vertex, root.slot));
    while let Some((v, start)) = queue.pop_front() {
        let rot = map.rotation(v);
        out.push(rot.len() as u32);
        for k in 0..rot.len() {
            let w = rot[(start + k) % rot.len()];
            if label[w] == u32::MAX {
                label[w] = next;
                next += 1;
                let back = map
                    .rotation(w)
                    .iter()
                    .position(|&x| x == v)
                    .expect("darts pair up");
                queue.push_back((w, back));
            }
            out.push(label[w]);
        }
    }
    if (next as usize) < n {
        return Err(Error::Disconnected);
    }
    Ok(MapCode(encode(&out)))
}

fn encode(words: &[u32]) -> Vec<u8> {
    words.iter().flat_map(|w| w.to_le_bytes()).collect()
}
