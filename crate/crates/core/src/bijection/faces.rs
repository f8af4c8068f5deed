use crate::bijection::map::{Dart, RotationMap};

/// A face as the cyclic sequence of darts that have it on their left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.darts.len()
    }

    /// Tails of the darts: the vertex sequence around the face.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.darts.iter().map(|d| d.vertex)
    }
}

/// All faces of the map, with the outer face (left of the root dart) first.
/// A map without edges has a single empty face.
pub fn trace_faces(map: &RotationMap) -> Vec<Face> {
    let total = map.dart_count();
    if total == 0 {
        return vec![Face { darts: Vec::new() }];
    }
    let mut seen = vec![false; total];
    let mut faces = Vec::new();
    let start = map.root_dart().map(|d| map.dart_index(d)).unwrap_or(0);
    let order = std::iter::once(start).chain(0..total);
    for i in order {
        if seen[i] {
            continue;
        }
        let first = map.dart_at(i);
        let mut darts = Vec::new();
        let mut d = first;
        loop {
            seen[map.dart_index(d)] = true;
            darts.push(d);
            d = map.next_in_face(d);
            if d == first {
                break;
            }
        }
        faces.push(Face { darts });
    }
    faces
}

/// Checks that certify `map` as a rooted simple outerplanar map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterplanarCertificate {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub outer_face_degree: usize,
    pub connected: bool,
    pub euler_holds: bool,
    pub outer_face_covers_all: bool,
}

impl OuterplanarCertificate {
    pub fn is_valid(&self) -> bool {
        self.connected && self.euler_holds && self.outer_face_covers_all
    }
}

pub fn certify(map: &RotationMap) -> OuterplanarCertificate {
    let faces = trace_faces(map);
    let n = map.vertex_count();
    let e = map.edge_count();
    let connected = crate::oracle::bfs_distances(map, 0).all_reachable();
    let mut on_outer = vec![false; n];
    if n == 1 {
        on_outer[0] = true;
    }
    for v in faces[0].vertices() {
        on_outer[v] = true;
    }
    OuterplanarCertificate {
        vertices: n,
        edges: e,
        faces: faces.len(),
        outer_face_degree: faces[0].degree(),
        connected,
        euler_holds: n as i64 - e as i64 + faces.len() as i64 == 2,
        outer_face_covers_all: on_outer.iter().all(|&b| b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::psi;
    use crate::tree::ColouredPlaneTree;

    fn map(s: &str) -> RotationMap {
        psi(&s.parse::<ColouredPlaneTree>().unwrap()).unwrap()
    }

    #[test]
    fn triangle_has_two_faces() {
        let m = map("w(b()w())");
        let faces = trace_faces(&m);
        assert_eq!(faces.len(), 2);
        assert_eq!(faces[0].degree(), 3);
        assert_eq!(faces[1].degree(), 3);
        let mut outer: Vec<usize> = faces[0].vertices().collect();
        outer.sort();
        assert_eq!(outer, vec![0, 1, 2]);
        assert_eq!(faces[0].darts[0], m.root_dart().unwrap());
    }

    #[test]
    fn tree_map_has_one_face() {
        let m = map("w(w(w()))");
        let faces = trace_faces(&m);
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].degree(), 4);
        let mut count = [0; 3];
        for v in faces[0].vertices() {
            count[v] += 1;
        }
        // interior path vertex twice, leaves once each on a path of 3
        assert_eq!(count, [1, 2, 1]);
    }

    #[test]
    fn outer_face_covers_all() {
        let c = certify(&map("w(b(b())w())"));
        assert!(c.is_valid(), "{c:?}");
        assert_eq!((c.vertices, c.edges, c.faces), (4, 5, 3));
        let single = certify(&map("w()"));
        assert!(single.is_valid());
        assert_eq!(single.faces, 1);
    }
}
