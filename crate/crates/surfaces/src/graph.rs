use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::vertex::VertexId;
use crate::{Error, Result};

/// Undirected edge with canonically ordered endpoints.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(pub VertexId, pub VertexId);

impl Edge {
    pub fn new(u: VertexId, v: VertexId) -> Self {
        assert!(u != v, "loops are not edges of a simple graph");
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn touches(&self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(&self, v: VertexId) -> VertexId {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }

    pub fn disjoint_from(&self, other: &Edge) -> bool {
        !self.touches(other.0) && !self.touches(other.1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Simple graph with an optional bipartition.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    bipartition: Option<(BTreeSet<VertexId>, BTreeSet<VertexId>)>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    /// Complete graph on numbered vertices `0..n-1`.
    pub fn complete(n: usize) -> Self {
        Self::complete_on((0..n as i64).map(VertexId::num).collect())
    }

    pub fn complete_on(vertices: Vec<VertexId>) -> Self {
        let mut g = Graph::new();
        for &v in &vertices {
            g.add_vertex(v);
        }
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Complete bipartite graph: `m` lettered left vertices `a, b, c, ...`
    /// against `n` numbered right vertices `0..n-1`.
    pub fn complete_bipartite(m: usize, n: usize) -> Self {
        assert!(m <= 26, "left side limited to 26 letters");
        let left: Vec<VertexId> = (0..m)
            .map(|i| VertexId::letter((b'a' + i as u8) as char))
            .collect();
        let right: Vec<VertexId> = (0..n as i64).map(VertexId::num).collect();
        Self::complete_bipartite_on(left, right)
    }

    pub fn complete_bipartite_on(left: Vec<VertexId>, right: Vec<VertexId>) -> Self {
        let mut g = Graph::new();
        for &v in left.iter().chain(right.iter()) {
            g.add_vertex(v);
        }
        for &u in &left {
            for &v in &right {
                g.add_edge(u, v);
            }
        }
        g.bipartition = Some((left.into_iter().collect(), right.into_iter().collect()));
        g
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.adj.entry(v).or_default();
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) {
        assert!(u != v, "no loops in simple graphs");
        self.add_vertex(u);
        self.add_vertex(v);
        self.adj.get_mut(&u).unwrap().insert(v);
        self.adj.get_mut(&v).unwrap().insert(u);
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) {
        if let Some(s) = self.adj.get_mut(&u) {
            s.remove(&v);
        }
        if let Some(s) = self.adj.get_mut(&v) {
            s.remove(&u);
        }
    }

    pub fn remove_vertex(&mut self, v: VertexId) {
        if let Some(nbrs) = self.adj.remove(&v) {
            for u in nbrs {
                self.adj.get_mut(&u).unwrap().remove(&v);
            }
        }
        if let Some((l, r)) = &mut self.bipartition {
            l.remove(&v);
            r.remove(&v);
        }
    }

    pub fn set_bipartition(&mut self, left: BTreeSet<VertexId>, right: BTreeSet<VertexId>) {
        self.bipartition = Some((left, right));
    }

    pub fn bipartition(&self) -> Option<(&BTreeSet<VertexId>, &BTreeSet<VertexId>)> {
        self.bipartition.as_ref().map(|(l, r)| (l, r))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for (&u, nbrs) in &self.adj {
            for &v in nbrs {
                if u < v {
                    out.push(Edge(u, v));
                }
            }
        }
        out
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|s| s.contains(&v))
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, |s| s.len())
    }

    pub fn is_connected(&self) -> bool {
        let mut it = self.adj.keys();
        let Some(&start) = it.next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if seen.insert(u) {
                    queue.push_back(u);
                }
            }
        }
        seen.len() == self.adj.len()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.edge_count() == n * (n - 1) / 2
    }

    /// True when the graph is complete bipartite with side sizes `{m, n}`
    /// (in either order), regardless of vertex labels.
    pub fn is_complete_bipartite(&self, m: usize, n: usize) -> bool {
        let Some((l, r)) = self.two_coloring() else {
            return false;
        };
        let sizes = (l.len().min(r.len()), l.len().max(r.len()));
        if sizes != (m.min(n), m.max(n)) {
            return false;
        }
        self.edge_count() == l.len() * r.len()
    }

    /// Proper 2-coloring via BFS, if one exists. Isolated vertices go left.
    pub fn two_coloring(&self) -> Option<(BTreeSet<VertexId>, BTreeSet<VertexId>)> {
        let mut color: BTreeMap<VertexId, bool> = BTreeMap::new();
        for &start in self.adj.keys() {
            if color.contains_key(&start) {
                continue;
            }
            color.insert(start, false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let cv = color[&v];
                for u in self.neighbors(v) {
                    match color.get(&u) {
                        None => {
                            color.insert(u, !cv);
                            queue.push_back(u);
                        }
                        Some(&cu) if cu == cv => return None,
                        _ => {}
                    }
                }
            }
        }
        let mut l = BTreeSet::new();
        let mut r = BTreeSet::new();
        for (v, c) in color {
            if c {
                r.insert(v);
            } else {
                l.insert(v);
            }
        }
        Some((l, r))
    }

    /// Length of the shortest cycle. Errors on acyclic graphs.
    pub fn girth(&self) -> Result<usize> {
        let mut best: Option<usize> = None;
        for &root in self.adj.keys() {
            // BFS from root; a non-tree edge closing back gives a cycle
            // through root of length dist(u)+dist(v)+1.
            let mut dist: BTreeMap<VertexId, usize> = BTreeMap::from([(root, 0)]);
            let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for u in self.neighbors(v) {
                    if parent.get(&v) == Some(&u) {
                        continue;
                    }
                    match dist.get(&u) {
                        None => {
                            dist.insert(u, dist[&v] + 1);
                            parent.insert(u, v);
                            queue.push_back(u);
                        }
                        Some(&du) => {
                            let cand = dist[&v] + du + 1;
                            if best.is_none_or(|b| cand < b) {
                                best = Some(cand);
                            }
                        }
                    }
                }
            }
        }
        best.ok_or(Error::Acyclic)
    }

    pub fn has_cycle(&self) -> bool {
        self.girth().is_ok()
    }

    /// Invariant check used by constructors that assemble graphs by hand.
    pub fn check_bipartition(&self) -> Result<()> {
        if let Some((l, r)) = &self.bipartition {
            for &v in self.adj.keys() {
                if !l.contains(&v) && !r.contains(&v) {
                    return Err(Error::input(format!("vertex {v} outside bipartition")));
                }
            }
            for e in self.edges() {
                let crosses = (l.contains(&e.0) && r.contains(&e.1))
                    || (r.contains(&e.0) && l.contains(&e.1));
                if !crosses {
                    return Err(Error::input(format!("edge {e} inside one side")));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn girth_values() {
        assert_eq!(Graph::complete(5).girth().unwrap(), 3);
        assert_eq!(Graph::complete_bipartite(3, 3).girth().unwrap(), 4);
        // path on 4 vertices is acyclic
        let mut p = Graph::new();
        for i in 0..3 {
            p.add_edge(VertexId::num(i), VertexId::num(i + 1));
        }
        assert!(matches!(p.girth(), Err(Error::Acyclic)));
    }

    #[test]
    fn complete_bipartite_shape() {
        let g = Graph::complete_bipartite(3, 4);
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.edge_count(), 12);
        assert!(g.is_complete_bipartite(4, 3));
        assert!(!g.is_complete_bipartite(3, 3));
        g.check_bipartition().unwrap();
    }

    #[test]
    fn connectivity() {
        let mut g = Graph::new();
        g.add_edge(VertexId::num(0), VertexId::num(1));
        g.add_vertex(VertexId::num(5));
        assert!(!g.is_connected());
        g.add_edge(VertexId::num(1), VertexId::num(5));
        assert!(g.is_connected());
    }
}
