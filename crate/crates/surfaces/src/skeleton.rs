//! Dart-level combinatorial maps with edge signatures and the face tracer.
//!
//! Every embedding in this crate, including current-graph skeletons with
//! loops and parallel edges, reduces to a `Skeleton`: a rotation of darts at
//! each vertex plus a twist flag per edge. Faces are traced as orbits of
//! (dart, side) states; a twisted edge flips the side. Each face appears as
//! a mirror pair of orbits and one representative per pair is kept, so face
//! lengths sum to 2|E| and the Euler characteristic is V - E + F.

use crate::{Error, Result};

/// Dart identifier. Edge `e` owns darts `2e` (at its first endpoint) and
/// `2e + 1` (at its second).
pub type Dart = usize;

pub fn mate(d: Dart) -> Dart {
    d ^ 1
}

pub fn edge_of(d: Dart) -> usize {
    d >> 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    nv: usize,
    endpoints: Vec<(usize, usize)>,
    rot: Vec<Vec<Dart>>,
    twisted: Vec<bool>,
}

/// One face of a traced skeleton: the boundary walk as (dart, side) states.
/// The walk is cyclic; it starts at its lexicographically smallest state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkelFace {
    pub walk: Vec<(Dart, bool)>,
}

impl SkelFace {
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }
}

impl Skeleton {
    pub fn new(nv: usize) -> Self {
        Skeleton {
            nv,
            endpoints: Vec::new(),
            rot: vec![Vec::new(); nv],
            twisted: Vec::new(),
        }
    }

    /// Adds an edge, appending its darts to the ends of the endpoint
    /// rotations. Returns the edge index.
    pub fn add_edge(&mut self, u: usize, v: usize, twisted: bool) -> usize {
        let e = self.endpoints.len();
        self.endpoints.push((u, v));
        self.twisted.push(twisted);
        self.rot[u].push(2 * e);
        self.rot[v].push(2 * e + 1);
        e
    }

    /// Replaces the rotation at `v`. The darts must be exactly those
    /// incident to `v` (loops contribute both darts).
    pub fn set_rotation(&mut self, v: usize, darts: Vec<Dart>) -> Result<()> {
        let mut expected: Vec<Dart> = (0..2 * self.endpoints.len())
            .filter(|&d| self.dart_vertex(d) == v)
            .collect();
        let mut got = darts.clone();
        expected.sort_unstable();
        got.sort_unstable();
        if expected != got {
            return Err(Error::rotation(format!(
                "rotation at vertex {v} does not list exactly its incident darts"
            )));
        }
        self.rot[v] = darts;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.nv
    }

    pub fn edge_count(&self) -> usize {
        self.endpoints.len()
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.endpoints[e]
    }

    pub fn is_twisted(&self, e: usize) -> bool {
        self.twisted[e]
    }

    pub fn set_twisted(&mut self, e: usize, t: bool) {
        self.twisted[e] = t;
    }

    pub fn rotation(&self, v: usize) -> &[Dart] {
        &self.rot[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rot[v].len()
    }

    /// Vertex a dart is attached to (its tail).
    pub fn dart_vertex(&self, d: Dart) -> usize {
        let (u, v) = self.endpoints[edge_of(d)];
        if d & 1 == 0 {
            u
        } else {
            v
        }
    }

    /// Vertex a dart points at (its head).
    pub fn dart_head(&self, d: Dart) -> usize {
        self.dart_vertex(mate(d))
    }

    fn rot_index(&self, d: Dart) -> usize {
        let v = self.dart_vertex(d);
        self.rot[v]
            .iter()
            .position(|&x| x == d)
            .expect("dart missing from its rotation")
    }

    /// Successor state of a (dart, side) traversal state.
    pub fn step(&self, d: Dart, side: bool) -> (Dart, bool) {
        let side2 = side ^ self.twisted[edge_of(d)];
        let m = mate(d);
        let v = self.dart_vertex(m);
        let ring = &self.rot[v];
        let i = self.rot_index(m);
        let n = ring.len();
        let next = if !side2 {
            ring[(i + 1) % n]
        } else {
            ring[(i + n - 1) % n]
        };
        (next, side2)
    }

    /// Mirror state: the same edge side traversed in the opposite direction.
    fn mirror(&self, d: Dart, side: bool) -> (Dart, bool) {
        (mate(d), !(side ^ self.twisted[edge_of(d)]))
    }

    /// Traces all faces. Each geometric face corresponds to a mirror pair of
    /// state orbits; the representative containing the smallest state in
    /// (side, dart) order is kept, so orientable all-normal maps report pure
    /// forward walks. Faces come out sorted by their starting state.
    pub fn trace_faces(&self) -> Vec<SkelFace> {
        let ndarts = 2 * self.endpoints.len();
        let mut seen = vec![false; 2 * ndarts];
        let enc = |d: Dart, s: bool| -> usize { 2 * d + s as usize };
        let mut faces = Vec::new();
        for s0 in [false, true] {
            for d0 in 0..ndarts {
                if seen[enc(d0, s0)] {
                    continue;
                }
                // this orbit is the representative: walk and mark it
                let mut walk = vec![(d0, s0)];
                seen[enc(d0, s0)] = true;
                let (mut d, mut s) = self.step(d0, s0);
                while (d, s) != (d0, s0) {
                    debug_assert!(!seen[enc(d, s)], "face orbits must be disjoint");
                    seen[enc(d, s)] = true;
                    walk.push((d, s));
                    (d, s) = self.step(d, s);
                }
                // mark the mirror orbit as consumed
                let (md, ms) = self.mirror(d0, s0);
                assert!(
                    !seen[enc(md, ms)],
                    "self-mirror face orbit; not a valid map"
                );
                let (mut d, mut s) = (md, ms);
                loop {
                    seen[enc(d, s)] = true;
                    (d, s) = self.step(d, s);
                    if (d, s) == (md, ms) {
                        break;
                    }
                }
                // canonical start: smallest state in (side, dart) order
                let k = walk
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, &(d, s))| (s, d))
                    .map(|(i, _)| i)
                    .unwrap();
                walk.rotate_left(k);
                faces.push(SkelFace { walk });
            }
        }
        faces.sort_by_key(|f| (f.walk[0].1, f.walk[0].0));
        faces
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.nv as i64 - self.endpoints.len() as i64 + self.trace_faces().len() as i64
    }

    pub fn is_connected(&self) -> bool {
        if self.nv == 0 {
            return true;
        }
        let mut seen = vec![false; self.nv];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &d in &self.rot[v] {
                let u = self.dart_head(d);
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    /// Orientable iff every cycle carries an even number of twisted edges,
    /// checked by BFS parity labelling. Requires a connected skeleton.
    pub fn is_orientable(&self) -> Result<bool> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        if self.nv == 0 {
            return Ok(true);
        }
        let mut par: Vec<Option<bool>> = vec![None; self.nv];
        par[0] = Some(false);
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            let pv = par[v].unwrap();
            for &d in &self.rot[v] {
                let u = self.dart_head(d);
                let pu = pv ^ self.twisted[edge_of(d)];
                match par[u] {
                    None => {
                        par[u] = Some(pu);
                        queue.push_back(u);
                    }
                    Some(x) => {
                        if x != pu {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle(twists: [bool; 3]) -> Skeleton {
        let mut sk = Skeleton::new(3);
        sk.add_edge(0, 1, twists[0]);
        sk.add_edge(1, 2, twists[1]);
        sk.add_edge(2, 0, twists[2]);
        sk
    }

    #[test]
    fn planar_triangle_two_faces() {
        let sk = triangle([false; 3]);
        let faces = sk.trace_faces();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.len() == 3));
        assert_eq!(sk.euler_characteristic(), 2);
        assert!(sk.is_orientable().unwrap());
    }

    #[test]
    fn twisted_triangle_single_hexagonal_face() {
        let sk = triangle([true, false, false]);
        let faces = sk.trace_faces();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].len(), 6);
        assert_eq!(sk.euler_characteristic(), 1); // 3 - 3 + 1, projective plane
        assert!(!sk.is_orientable().unwrap());
    }

    #[test]
    fn loop_on_sphere_and_projective_plane() {
        let mut sphere = Skeleton::new(1);
        sphere.add_edge(0, 0, false);
        assert_eq!(sphere.trace_faces().len(), 2);
        assert_eq!(sphere.euler_characteristic(), 2);

        let mut proj = Skeleton::new(1);
        proj.add_edge(0, 0, true);
        let faces = proj.trace_faces();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].len(), 2);
        assert_eq!(proj.euler_characteristic(), 1);
        assert!(!proj.is_orientable().unwrap());
    }

    #[test]
    fn face_lengths_sum_to_twice_edges() {
        // theta graph: two vertices, three parallel edges
        let mut sk = Skeleton::new(2);
        sk.add_edge(0, 1, false);
        sk.add_edge(0, 1, false);
        sk.add_edge(0, 1, false);
        sk.set_rotation(1, vec![5, 3, 1]).unwrap();
        let faces = sk.trace_faces();
        let total: usize = faces.iter().map(|f| f.len()).sum();
        assert_eq!(total, 2 * sk.edge_count());
        assert_eq!(faces.len(), 3); // planar theta
        assert_eq!(sk.euler_characteristic(), 2);
    }
}
