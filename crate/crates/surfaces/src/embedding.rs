//! Cellular embeddings: a rotation system with traced faces, Euler
//! characteristic and surface identity, plus the low-level surgeries
//! (edge subdivision, chords, deletions, vertex insertion) that the
//! transform and drawing modules build on. Every surgery re-traces and
//! checks its expected effect on the face count and characteristic.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{Edge, Graph};
use crate::rotation::RotationSystem;
use crate::skeleton::mate;
use crate::surface::SurfaceId;
use crate::vertex::VertexId;
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Arc {
    pub from: VertexId,
    pub to: VertexId,
    pub side: bool,
}

/// A face boundary walk. Corner `i` sits at `walk[i].to`, between arc `i`
/// and arc `i+1` (cyclically).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Face {
    pub walk: Vec<Arc>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    /// Corner data at position `i`: (vertex, entered-from neighbor,
    /// leaves-to neighbor, local side).
    pub fn corner(&self, i: usize) -> FaceCorner {
        let n = self.walk.len();
        let a = self.walk[i];
        let b = self.walk[(i + 1) % n];
        FaceCorner {
            vertex: a.to,
            prev: a.from,
            next: b.to,
            side: b.side,
        }
    }

    pub fn corners(&self) -> impl Iterator<Item = FaceCorner> + '_ {
        (0..self.walk.len()).map(|i| self.corner(i))
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.walk.iter().any(|a| a.to == v)
    }

    pub fn corner_positions(&self, v: VertexId) -> Vec<usize> {
        (0..self.walk.len())
            .filter(|&i| self.walk[i].to == v)
            .collect()
    }

    /// Vertex sequence of the boundary walk.
    pub fn vertex_walk(&self) -> Vec<VertexId> {
        self.walk.iter().map(|a| a.to).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceCorner {
    pub vertex: VertexId,
    pub prev: VertexId,
    pub next: VertexId,
    /// Local side of the walk as it leaves the corner; twisted edges flip it.
    pub side: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Embedding {
    rs: RotationSystem,
    faces: Vec<Face>,
    chi: i64,
    surface: SurfaceId,
}

/// Face-traces a rotation system into an embedding. The system must be
/// connected; orientability is read off the signature.
pub fn trace_faces(rs: &RotationSystem) -> Result<Embedding> {
    if !rs.is_connected() {
        return Err(Error::Disconnected);
    }
    let orientable = rs.is_orientable()?;
    let (sk, verts) = rs.to_skeleton();
    let skel_faces = sk.trace_faces();
    let mut faces = Vec::with_capacity(skel_faces.len());
    for f in &skel_faces {
        let mut walk: Vec<Arc> = f
            .walk
            .iter()
            .map(|&(d, s)| Arc {
                from: verts[sk.dart_vertex(d)],
                to: verts[sk.dart_head(d)],
                side: s,
            })
            .collect();
        // canonical start in vertex terms, so face identity is stable
        // across re-traces with different edge numberings
        let k = walk
            .iter()
            .enumerate()
            .min_by_key(|&(_, a)| (a.side, a.from, a.to))
            .map(|(i, _)| i)
            .unwrap();
        walk.rotate_left(k);
        faces.push(Face { walk });
    }
    faces.sort_by_key(|f| (f.walk[0].side, f.walk[0].from, f.walk[0].to));
    let chi = rs.vertex_count() as i64 - rs.edge_count() as i64 + faces.len() as i64;
    let surface = SurfaceId::from_chi(chi, orientable).map_err(|_| {
        Error::rotation(format!(
            "traced characteristic {chi} inconsistent with orientability"
        ))
    })?;
    Ok(Embedding {
        rs: rs.clone(),
        faces,
        chi,
        surface,
    })
}

impl Embedding {
    pub fn rotation_system(&self) -> &RotationSystem {
        &self.rs
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn chi(&self) -> i64 {
        self.chi
    }

    pub fn surface(&self) -> SurfaceId {
        self.surface
    }

    pub fn graph(&self) -> Graph {
        self.rs.graph()
    }

    pub fn is_triangular(&self) -> bool {
        self.faces.iter().all(|f| f.len() == 3)
    }

    pub fn is_quadrangular(&self) -> bool {
        self.faces.iter().all(|f| f.len() == 4)
    }

    pub fn face_length_counts(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for f in &self.faces {
            *m.entry(f.len()).or_insert(0) += 1;
        }
        m
    }

    /// The two (face, walk position) occurrences of an edge. An edge whose
    /// both sides lie on the same face reports that face twice.
    pub fn edge_occurrences(&self, e: Edge) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (fi, f) in self.faces.iter().enumerate() {
            for (pi, a) in f.walk.iter().enumerate() {
                if Edge::new(a.from, a.to) == e {
                    out.push((fi, pi));
                }
            }
        }
        out
    }

    /// Invariant check: arcs partition over faces, lengths sum to 2E, and
    /// chi is consistent.
    pub fn check_invariants(&self) -> Result<()> {
        let total: usize = self.faces.iter().map(|f| f.len()).sum();
        if total != 2 * self.rs.edge_count() {
            return Err(Error::Verification(format!(
                "face lengths sum to {total}, expected {}",
                2 * self.rs.edge_count()
            )));
        }
        let mut slots: BTreeMap<Edge, usize> = BTreeMap::new();
        for f in &self.faces {
            for a in &f.walk {
                *slots.entry(Edge::new(a.from, a.to)).or_insert(0) += 1;
            }
        }
        if slots.values().any(|&c| c != 2) {
            return Err(Error::Verification(
                "some edge does not lie on exactly two face sides".into(),
            ));
        }
        let chi =
            self.rs.vertex_count() as i64 - self.rs.edge_count() as i64 + self.faces.len() as i64;
        if chi != self.chi || chi != self.surface.euler_characteristic() {
            return Err(Error::Verification("characteristic mismatch".into()));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Surgery primitives. All take the embedding apart, edit the rotation map,
// rebuild and re-trace, then check the expected face/characteristic delta.
// ---------------------------------------------------------------------------

pub(crate) type RotMap = BTreeMap<VertexId, Vec<VertexId>>;

pub(crate) fn into_parts(rs: &RotationSystem) -> (RotMap, BTreeSet<Edge>) {
    let rot = rs
        .vertices()
        .map(|v| (v, rs.rotation(v).unwrap().to_vec()))
        .collect();
    (rot, rs.twisted_edges().clone())
}

/// Inserts `x` into the rotation of `a` inside the corner sector described
/// by `(prev, side)`: after `prev` for a normal corner, before it for a
/// flipped one.
pub(crate) fn insert_in_corner(rot: &mut RotMap, a: VertexId, prev: VertexId, side: bool, x: VertexId) {
    let ring = rot.get_mut(&a).expect("corner vertex exists");
    let i = ring
        .iter()
        .position(|&u| u == prev)
        .expect("corner predecessor present");
    if !side {
        ring.insert(i + 1, x);
    } else {
        ring.insert(i, x);
    }
}

/// Adds the chord `(a, b)` between corners `ci` and `cj` of face `fi`,
/// splitting it in two. With `crosscap` the chord is routed through a new
/// crosscap instead: the face stays single and the characteristic drops by
/// one.
pub fn add_chord(
    emb: &Embedding,
    fi: usize,
    ci: usize,
    cj: usize,
    crosscap: bool,
) -> Result<Embedding> {
    let f = &emb.faces()[fi];
    let ca = f.corner(ci);
    let cb = f.corner(cj);
    let (a, b) = (ca.vertex, cb.vertex);
    if a == b {
        return Err(Error::surgery("chord endpoints coincide"));
    }
    if emb.rs.has_edge(a, b) {
        return Err(Error::surgery(format!("edge ({a},{b}) already present")));
    }
    let (mut rot, mut twisted) = into_parts(&emb.rs);
    insert_in_corner(&mut rot, a, ca.prev, ca.side, b);
    insert_in_corner(&mut rot, b, cb.prev, cb.side, a);
    if ca.side ^ cb.side ^ crosscap {
        twisted.insert(Edge::new(a, b));
    }
    let out = trace_faces(&RotationSystem::new(rot, twisted)?)?;
    let (dchi, dfaces) = if crosscap { (-1, 0) } else { (0, 1) };
    if out.chi() != emb.chi() + dchi || out.faces().len() != emb.faces().len() + dfaces {
        return Err(Error::surgery(format!(
            "chord ({a},{b}) did not split as expected"
        )));
    }
    Ok(out)
}

/// Subdivides edge `e` with the new vertex `z`. Faces and characteristic
/// are unchanged; a twist on `e` moves to the half at its smaller endpoint.
pub fn subdivide_edge(emb: &Embedding, e: Edge, z: VertexId) -> Result<Embedding> {
    if emb.rs.rotation(z).is_some() {
        return Err(Error::surgery(format!("vertex {z} already present")));
    }
    let (mut rot, mut twisted) = into_parts(&emb.rs);
    let was_twisted = twisted.remove(&e);
    let (u, v) = (e.0, e.1);
    for x in rot.get_mut(&u).unwrap() {
        if *x == v {
            *x = z;
        }
    }
    for x in rot.get_mut(&v).unwrap() {
        if *x == u {
            *x = z;
        }
    }
    rot.insert(z, vec![u, v]);
    if was_twisted {
        twisted.insert(Edge::new(u, z));
    }
    let out = trace_faces(&RotationSystem::new(rot, twisted)?)?;
    if out.chi() != emb.chi() || out.faces().len() != emb.faces().len() {
        return Err(Error::surgery("subdivision changed the surface"));
    }
    Ok(out)
}

/// Deletes edge `e`, merging its two incident faces. Rejected when both
/// sides of `e` lie on the same face (the merge would not be a disk).
pub fn delete_edge(emb: &Embedding, e: Edge) -> Result<Embedding> {
    let occ = emb.edge_occurrences(e);
    if occ.len() != 2 {
        return Err(Error::surgery(format!("edge {e} not in embedding")));
    }
    if occ[0].0 == occ[1].0 {
        return Err(Error::surgery(format!(
            "both sides of {e} lie on one face; deletion would not be cellular"
        )));
    }
    let (mut rot, mut twisted) = into_parts(&emb.rs);
    twisted.remove(&e);
    rot.get_mut(&e.0).unwrap().retain(|&x| x != e.1);
    rot.get_mut(&e.1).unwrap().retain(|&x| x != e.0);
    let out = trace_faces(&RotationSystem::new(rot, twisted)?)?;
    if out.chi() != emb.chi() || out.faces().len() + 1 != emb.faces().len() {
        return Err(Error::surgery(format!("deleting {e} changed the surface")));
    }
    Ok(out)
}

/// Places a new vertex `w` inside face `fi`, joined to the corners `ci` and
/// `cj`. The face splits in two; the characteristic is unchanged.
pub fn add_vertex_in_face(
    emb: &Embedding,
    fi: usize,
    ci: usize,
    cj: usize,
    w: VertexId,
) -> Result<Embedding> {
    if emb.rs.rotation(w).is_some() {
        return Err(Error::surgery(format!("vertex {w} already present")));
    }
    if ci == cj {
        return Err(Error::surgery("need two distinct corners"));
    }
    let f = &emb.faces()[fi];
    let ca = f.corner(ci);
    let cb = f.corner(cj);
    let (a, b) = (ca.vertex, cb.vertex);
    if a == b {
        return Err(Error::surgery("corner vertices coincide"));
    }
    let (mut rot, mut twisted) = into_parts(&emb.rs);
    insert_in_corner(&mut rot, a, ca.prev, ca.side, w);
    insert_in_corner(&mut rot, b, cb.prev, cb.side, w);
    rot.insert(w, vec![a, b]);
    if ca.side {
        twisted.insert(Edge::new(w, a));
    }
    if cb.side {
        twisted.insert(Edge::new(w, b));
    }
    let out = trace_faces(&RotationSystem::new(rot, twisted)?)?;
    if out.chi() != emb.chi() || out.faces().len() != emb.faces().len() + 1 {
        return Err(Error::surgery("vertex insertion did not split the face"));
    }
    Ok(out)
}

/// Connects two distinct faces with a handle carrying the edge `(a, b)`,
/// where `a` sits at corner `ci` of `fa` and `b` at corner `cj` of `fb`.
/// The faces merge into one and the characteristic drops by two. Both twist
/// routings of the connecting edge are attempted; exactly the cellular ones
/// survive, preferring the one that keeps an orientable embedding orientable.
pub fn add_handle_edge(
    emb: &Embedding,
    fa: usize,
    ci: usize,
    fb: usize,
    cj: usize,
) -> Result<Embedding> {
    if fa == fb {
        return Err(Error::surgery("handle needs two distinct faces"));
    }
    let ca = emb.faces()[fa].corner(ci);
    let cb = emb.faces()[fb].corner(cj);
    let (a, b) = (ca.vertex, cb.vertex);
    if a == b {
        return Err(Error::surgery("handle edge endpoints coincide"));
    }
    if emb.rs.has_edge(a, b) {
        return Err(Error::surgery(format!("edge ({a},{b}) already present")));
    }
    let mut found: Option<Embedding> = None;
    for twist in [ca.side ^ cb.side, !(ca.side ^ cb.side)] {
        let (mut rot, mut twisted) = into_parts(&emb.rs);
        insert_in_corner(&mut rot, a, ca.prev, ca.side, b);
        insert_in_corner(&mut rot, b, cb.prev, cb.side, a);
        if twist {
            twisted.insert(Edge::new(a, b));
        }
        let out = trace_faces(&RotationSystem::new(rot, twisted)?)?;
        if out.chi() == emb.chi() - 2 && out.faces().len() == emb.faces().len() - 1 {
            if found.is_none() {
                found = Some(out);
            }
        }
    }
    found.ok_or_else(|| Error::surgery("handle edge produced no cellular merge"))
}

/// Removes a degree-2 vertex, splicing its two incident edges into one.
pub fn smooth_vertex(emb: &Embedding, z: VertexId) -> Result<Embedding> {
    let nbrs: Vec<VertexId> = emb.rs.rotation(z).map(|r| r.to_vec()).unwrap_or_default();
    if nbrs.len() != 2 {
        return Err(Error::surgery(format!("{z} is not a degree-2 vertex")));
    }
    let (u, v) = (nbrs[0], nbrs[1]);
    if emb.rs.has_edge(u, v) {
        return Err(Error::surgery(format!(
            "smoothing {z} would duplicate edge ({u},{v})"
        )));
    }
    let twist = emb.rs.is_twisted(Edge::new(u, z)) ^ emb.rs.is_twisted(Edge::new(v, z));
    let (mut rot, mut twisted) = into_parts(&emb.rs);
    twisted.remove(&Edge::new(u, z));
    twisted.remove(&Edge::new(v, z));
    if twist {
        twisted.insert(Edge::new(u, v));
    }
    for x in rot.get_mut(&u).unwrap() {
        if *x == z {
            *x = v;
        }
    }
    for x in rot.get_mut(&v).unwrap() {
        if *x == z {
            *x = u;
        }
    }
    rot.remove(&z);
    let out = trace_faces(&RotationSystem::new(rot, twisted)?)?;
    if out.chi() != emb.chi() || out.faces().len() != emb.faces().len() {
        return Err(Error::surgery("smoothing changed the surface"));
    }
    Ok(out)
}

/// Deletes an isolated-able vertex together with its incident edges.
/// The star of the vertex must be cellular-removable: used by the diamond
/// sum, which re-traces and verifies afterwards.
pub(crate) fn delete_vertex_raw(rot: &mut RotMap, twisted: &mut BTreeSet<Edge>, v: VertexId) {
    let nbrs = rot.remove(&v).unwrap_or_default();
    for u in nbrs {
        rot.get_mut(&u).unwrap().retain(|&x| x != v);
        twisted.remove(&Edge::new(u, v));
    }
}

// Re-export used by to_skeleton consumers.
pub(crate) fn _mate(d: usize) -> usize {
    mate(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn tetrahedron() -> RotationSystem {
        let n = VertexId::num;
        let rot: RotMap = [
            (n(0), vec![n(1), n(2), n(3)]),
            (n(1), vec![n(0), n(3), n(2)]),
            (n(2), vec![n(0), n(1), n(3)]),
            (n(3), vec![n(0), n(2), n(1)]),
        ]
        .into_iter()
        .collect();
        RotationSystem::new(rot, BTreeSet::new()).unwrap()
    }

    #[test]
    fn tetrahedron_traces_to_sphere() {
        let emb = trace_faces(&tetrahedron()).unwrap();
        assert_eq!(emb.faces().len(), 4);
        assert!(emb.is_triangular());
        assert_eq!(emb.chi(), 2);
        assert_eq!(emb.surface(), SurfaceId::sphere());
        emb.check_invariants().unwrap();
    }

    #[test]
    fn twisted_triangle_has_one_hexagonal_face() {
        let n = VertexId::num;
        let rot: RotMap = [
            (n(0), vec![n(1), n(2)]),
            (n(1), vec![n(0), n(2)]),
            (n(2), vec![n(0), n(1)]),
        ]
        .into_iter()
        .collect();
        let tw = BTreeSet::from([Edge::new(n(0), n(1))]);
        let emb = trace_faces(&RotationSystem::new(rot, tw).unwrap()).unwrap();
        assert_eq!(emb.faces().len(), 1);
        assert_eq!(emb.faces()[0].len(), 6);
        assert_eq!(emb.chi(), 1);
        assert_eq!(emb.surface(), SurfaceId::nonorientable(1).unwrap());
        emb.check_invariants().unwrap();
    }

    #[test]
    fn chord_splits_square_face() {
        // planar 4-cycle: two square faces
        let n = VertexId::num;
        let rot: RotMap = [
            (n(0), vec![n(1), n(3)]),
            (n(1), vec![n(0), n(2)]),
            (n(2), vec![n(1), n(3)]),
            (n(3), vec![n(2), n(0)]),
        ]
        .into_iter()
        .collect();
        let emb = trace_faces(&RotationSystem::new(rot, BTreeSet::new()).unwrap()).unwrap();
        assert_eq!(emb.faces().len(), 2);
        let f = &emb.faces()[0];
        let pos0 = f.corner_positions(n(0))[0];
        let pos2 = f.corner_positions(n(2))[0];
        let out = add_chord(&emb, 0, pos0, pos2, false).unwrap();
        assert_eq!(out.faces().len(), 3);
        assert_eq!(out.chi(), 2);

        // the same chord through a crosscap gives the projective plane
        let out = add_chord(&emb, 0, pos0, pos2, true).unwrap();
        assert_eq!(out.chi(), 1);
        assert!(!out.rotation_system().is_orientable().unwrap());
    }

    #[test]
    fn subdivide_and_smooth_round_trip() {
        let emb = trace_faces(&tetrahedron()).unwrap();
        let n = VertexId::num;
        let e = Edge::new(n(0), n(1));
        let z = VertexId::Cross(0);
        let sub = subdivide_edge(&emb, e, z).unwrap();
        assert_eq!(sub.faces().len(), 4);
        assert_eq!(sub.chi(), 2);
        let back = smooth_vertex(&sub, z).unwrap();
        assert_eq!(back.rotation_system(), &emb.rs);
    }

    #[test]
    fn delete_edge_merges_faces() {
        let emb = trace_faces(&tetrahedron()).unwrap();
        let out = delete_edge(&emb, Edge::new(VertexId::num(0), VertexId::num(1))).unwrap();
        assert_eq!(out.faces().len(), 3);
        assert_eq!(out.chi(), 2);
        assert_eq!(out.face_length_counts(), BTreeMap::from([(3, 2), (4, 1)]));
    }
}
