use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A dart is identified by the vertex it leaves and its slot in that
/// vertex's rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dart {
    pub vertex: usize,
    pub slot: usize,
}

/// A combinatorial embedding: for each vertex, its neighbours in
/// counterclockwise order, plus an optional root dart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationMap {
    rotation: Vec<Vec<usize>>,
    root_dart: Option<Dart>,
    // dart offsets into a flat numbering, and the reverse-dart involution
    offset: Vec<usize>,
    twin: Vec<usize>,
}

impl RotationMap {
    /// Validates that darts pair up and that the map is simple.
    pub fn new(rotation: Vec<Vec<usize>>, root_dart: Option<Dart>) -> Result<Self> {
        let n = rotation.len();
        if n == 0 {
            return Err(Error::ZeroSize);
        }
        let mut offset = Vec::with_capacity(n + 1);
        offset.push(0);
        for r in &rotation {
            offset.push(offset.last().unwrap() + r.len());
        }
        let total = offset[n];
        let mut slot_of: HashMap<(usize, usize), usize> = HashMap::with_capacity(total);
        for (v, r) in rotation.iter().enumerate() {
            for (i, &w) in r.iter().enumerate() {
                if w >= n {
                    return Err(Error::InvalidArgument(format!("neighbour {w} out of range")));
                }
                if w == v {
                    return Err(Error::InvalidArgument(format!("loop at vertex {v}")));
                }
                if slot_of.insert((v, w), offset[v] + i).is_some() {
                    return Err(Error::InvalidArgument(format!("parallel edges {v}-{w}")));
                }
            }
        }
        let mut twin = vec![0; total];
        for (&(v, w), &d) in &slot_of {
            match slot_of.get(&(w, v)) {
                Some(&e) => twin[d] = e,
                None => {
                    return Err(Error::InvalidArgument(format!(
                        "dart {v}->{w} has no reverse dart"
                    )))
                }
            }
        }
        if let Some(d) = root_dart {
            if d.vertex >= n || d.slot >= rotation[d.vertex].len() {
                return Err(Error::InvalidArgument("root dart out of range".into()));
            }
        } else if n > 1 {
            return Err(Error::InvalidArgument("maps with edges need a root dart".into()));
        }
        Ok(RotationMap {
            rotation,
            root_dart,
            offset,
            twin,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.twin.len() / 2
    }

    pub fn dart_count(&self) -> usize {
        self.twin.len()
    }

    pub fn root_dart(&self) -> Option<Dart> {
        self.root_dart
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn head(&self, d: Dart) -> usize {
        self.rotation[d.vertex][d.slot]
    }

    pub(crate) fn dart_index(&self, d: Dart) -> usize {
        self.offset[d.vertex] + d.slot
    }

    pub(crate) fn dart_at(&self, idx: usize) -> Dart {
        let vertex = self.offset.partition_point(|&o| o <= idx) - 1;
        Dart {
            vertex,
            slot: idx - self.offset[vertex],
        }
    }

    /// The same edge traversed the other way.
    pub fn reverse(&self, d: Dart) -> Dart {
        self.dart_at(self.twin[self.dart_index(d)])
    }

    /// Next dart along the face lying on the left of `d`: at the head of `d`,
    /// turn to the neighbour preceding the tail in counterclockwise order.
    pub fn next_in_face(&self, d: Dart) -> Dart {
        let r = self.reverse(d);
        let deg = self.rotation[r.vertex].len();
        Dart {
            vertex: r.vertex,
            slot: (r.slot + deg - 1) % deg,
        }
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .rotation
            .iter()
            .enumerate()
            .flat_map(|(v, r)| r.iter().filter(move |&&w| v < w).map(move |&w| (v, w)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rotation[u].contains(&v)
    }

    /// JSON export: `{"n":…, "root_dart":[v,slot]|null, "rotation":[[…],…]}`.
    pub fn to_json(&self) -> String {
        let value = MapJson {
            n: self.vertex_count(),
            root_dart: self.root_dart.map(|d| [d.vertex, d.slot]),
            rotation: self.rotation.clone(),
        };
        serde_json::to_string(&value).expect("map serialisation cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let value: MapJson =
            serde_json::from_str(s).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        if value.rotation.len() != value.n {
            return Err(Error::InvalidArgument("rotation length differs from n".into()));
        }
        let root = value.root_dart.map(|[vertex, slot]| Dart { vertex, slot });
        Self::new(value.rotation, root)
    }

    /// Edge list CSV, one `u,v` line per edge.
    pub fn to_edge_csv(&self) -> String {
        let mut s = String::new();
        for (u, v) in self.edges() {
            s.push_str(&format!("{u},{v}\n"));
        }
        s
    }

    /// Relabels vertices by `perm` (old id -> new id), keeping the embedding.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.vertex_count();
        let mut rotation = vec![Vec::new(); n];
        for (v, r) in self.rotation.iter().enumerate() {
            rotation[perm[v]] = r.iter().map(|&w| perm[w]).collect();
        }
        let root = self.root_dart.map(|d| Dart {
            vertex: perm[d.vertex],
            slot: d.slot,
        });
        Self::new(rotation, root)
    }
}

#[derive(Serialize, Deserialize)]
struct MapJson {
    n: usize,
    root_dart: Option<[usize; 2]>,
    rotation: Vec<Vec<usize>>,
}
