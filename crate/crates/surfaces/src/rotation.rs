//! Rotation systems over simple graphs: per-vertex cyclic neighbor orders
//! plus an edge signature. This is the sole representation of a cellular
//! embedding. Orientable systems are eagerly resigned to the all-normal
//! form, and rotations are stored with a canonical starting element, so
//! equality of rotation systems is literal equality.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::graph::{Edge, Graph};
use crate::skeleton::Skeleton;
use crate::vertex::VertexId;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RotationSystem {
    rot: BTreeMap<VertexId, Vec<VertexId>>,
    twisted: BTreeSet<Edge>,
}

impl RotationSystem {
    /// Builds and validates a rotation system. Checks the adjacency
    /// symmetry invariants, canonicalizes rotation starts, and applies the
    /// orientable all-normal reduction when possible.
    pub fn new(
        rot: BTreeMap<VertexId, Vec<VertexId>>,
        twisted: BTreeSet<Edge>,
    ) -> Result<Self> {
        for (&v, nbrs) in &rot {
            let mut seen = BTreeSet::new();
            for &u in nbrs {
                if u == v {
                    return Err(Error::rotation(format!("loop at {v}")));
                }
                if !seen.insert(u) {
                    return Err(Error::rotation(format!("{u} repeats in rotation of {v}")));
                }
                let Some(back) = rot.get(&u) else {
                    return Err(Error::rotation(format!(
                        "{u} appears at {v} but has no rotation"
                    )));
                };
                if !back.contains(&v) {
                    return Err(Error::rotation(format!(
                        "{u} appears in rotation of {v} but not conversely"
                    )));
                }
            }
        }
        for e in &twisted {
            let present = rot.get(&e.0).is_some_and(|ns| ns.contains(&e.1));
            if !present {
                return Err(Error::rotation(format!("signature on non-edge {e}")));
            }
        }
        let mut rs = RotationSystem { rot, twisted };
        rs.normalize();
        Ok(rs)
    }

    /// Rotation system of a graph with rotations in sorted neighbor order.
    /// Mostly useful for planar-ish test fixtures.
    pub fn sorted_from_graph(g: &Graph) -> Self {
        let rot = g
            .vertices()
            .map(|v| (v, g.neighbors(v).collect()))
            .collect();
        RotationSystem {
            rot,
            twisted: BTreeSet::new(),
        }
    }

    fn normalize(&mut self) {
        if self.is_connected() && !self.twisted.is_empty() {
            if let Some(flips) = self.orienting_flips() {
                self.apply_flips(&flips);
                debug_assert!(self.twisted.is_empty());
            }
        }
        for nbrs in self.rot.values_mut() {
            canonical_rotate(nbrs);
        }
    }

    /// Vertex set W such that resigning at W clears all twists, if the
    /// system is orientable. The side not containing the smallest vertex is
    /// flipped so that vertex keeps its rotation direction.
    fn orienting_flips(&self) -> Option<Vec<VertexId>> {
        let mut par: BTreeMap<VertexId, bool> = BTreeMap::new();
        let &start = self.rot.keys().next()?;
        par.insert(start, false);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let pv = par[&v];
            for &u in &self.rot[&v] {
                let pu = pv ^ self.twisted.contains(&Edge::new(u, v));
                match par.get(&u) {
                    None => {
                        par.insert(u, pu);
                        queue.push_back(u);
                    }
                    Some(&x) if x != pu => return None,
                    _ => {}
                }
            }
        }
        Some(par.into_iter().filter(|&(_, p)| p).map(|(v, _)| v).collect())
    }

    /// Resigns at each vertex in `flips`: reverses its rotation and toggles
    /// the signature of its non-internal incident edges.
    pub fn apply_flips(&mut self, flips: &[VertexId]) {
        let fset: BTreeSet<_> = flips.iter().copied().collect();
        for &v in &fset {
            if let Some(nbrs) = self.rot.get_mut(&v) {
                nbrs.reverse();
                let others: Vec<VertexId> = nbrs.clone();
                for u in others {
                    if !fset.contains(&u) {
                        let e = Edge::new(u, v);
                        if !self.twisted.remove(&e) {
                            self.twisted.insert(e);
                        }
                    }
                }
            }
        }
        for nbrs in self.rot.values_mut() {
            canonical_rotate(nbrs);
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.rot.keys().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.rot.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rot.values().map(|v| v.len()).sum::<usize>() / 2
    }

    pub fn rotation(&self, v: VertexId) -> Option<&[VertexId]> {
        self.rot.get(&v).map(|x| x.as_slice())
    }

    pub fn twisted_edges(&self) -> &BTreeSet<Edge> {
        &self.twisted
    }

    pub fn is_twisted(&self, e: Edge) -> bool {
        self.twisted.contains(&e)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.rot.get(&u).is_some_and(|ns| ns.contains(&v))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rot.get(&v).map_or(0, |x| x.len())
    }

    /// The underlying simple graph.
    pub fn graph(&self) -> Graph {
        let mut g = Graph::new();
        for (&v, nbrs) in &self.rot {
            g.add_vertex(v);
            for &u in nbrs {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        self.graph().is_connected()
    }

    /// True iff every cycle carries an even number of twisted edges.
    pub fn is_orientable(&self) -> Result<bool> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.twisted.is_empty() || self.orienting_flips().is_some())
    }

    /// Dart-level view for face tracing. Returns the skeleton together with
    /// the vertex indexing used (sorted vertex order).
    pub fn to_skeleton(&self) -> (Skeleton, Vec<VertexId>) {
        let verts: Vec<VertexId> = self.rot.keys().copied().collect();
        let index: BTreeMap<VertexId, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut sk = Skeleton::new(verts.len());
        let mut dart_at: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
        for (&v, nbrs) in &self.rot {
            for &u in nbrs {
                if v < u {
                    let e = sk.add_edge(index[&v], index[&u], self.is_twisted(Edge::new(u, v)));
                    dart_at.insert((v, u), 2 * e);
                    dart_at.insert((u, v), 2 * e + 1);
                }
            }
        }
        for (&v, nbrs) in &self.rot {
            let darts = nbrs.iter().map(|&u| dart_at[&(v, u)]).collect();
            sk.set_rotation(index[&v], darts)
                .expect("simple rotation darts are consistent");
        }
        (sk, verts)
    }
}

/// Rotates a cyclic sequence so the smallest element comes first.
pub fn canonical_rotate<T: Ord + Copy>(seq: &mut [T]) {
    if seq.is_empty() {
        return;
    }
    let k = seq
        .iter()
        .enumerate()
        .min_by_key(|&(_, v)| v)
        .map(|(i, _)| i)
        .unwrap();
    seq.rotate_left(k);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs_of(entries: &[(i64, &[i64])], twisted: &[(i64, i64)]) -> Result<RotationSystem> {
        let rot = entries
            .iter()
            .map(|&(v, ns)| {
                (
                    VertexId::num(v),
                    ns.iter().map(|&u| VertexId::num(u)).collect(),
                )
            })
            .collect();
        let tw = twisted
            .iter()
            .map(|&(u, v)| Edge::new(VertexId::num(u), VertexId::num(v)))
            .collect();
        RotationSystem::new(rot, tw)
    }

    #[test]
    fn rejects_asymmetric_adjacency() {
        assert!(rs_of(&[(0, &[1]), (1, &[])], &[]).is_err());
        assert!(rs_of(&[(0, &[1, 1]), (1, &[0, 0])], &[]).is_err());
    }

    #[test]
    fn canonical_start() {
        let rs = rs_of(&[(0, &[2, 1]), (1, &[0, 2]), (2, &[1, 0])], &[]).unwrap();
        assert_eq!(
            rs.rotation(VertexId::num(0)).unwrap(),
            &[VertexId::num(1), VertexId::num(2)]
        );
    }

    #[test]
    fn orientability_and_eager_resigning() {
        // tree with arbitrary signatures is orientable and gets cleaned
        let rs = rs_of(&[(0, &[1, 2]), (1, &[0]), (2, &[0])], &[(0, 1)]).unwrap();
        assert!(rs.is_orientable().unwrap());
        assert!(rs.twisted_edges().is_empty());

        // triangle with one twist is nonorientable, twist survives
        let rs = rs_of(&[(0, &[1, 2]), (1, &[0, 2]), (2, &[0, 1])], &[(0, 1)]).unwrap();
        assert!(!rs.is_orientable().unwrap());
        assert_eq!(rs.twisted_edges().len(), 1);

        // triangle with two twists is orientable, reduction clears them
        let rs = rs_of(
            &[(0, &[1, 2]), (1, &[0, 2]), (2, &[0, 1])],
            &[(0, 1), (1, 2)],
        )
        .unwrap();
        assert!(rs.is_orientable().unwrap());
        assert!(rs.twisted_edges().is_empty());
    }
}
