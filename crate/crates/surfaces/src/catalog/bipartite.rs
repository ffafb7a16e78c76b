//! Construction drivers for complete bipartite Kainen drawings: searched
//! quadrangular and low-crossing bases, vertex doubling, and diamond-sum
//! composition, for the main surfaces and the genus-offset variants. Every
//! driver verifies its product before returning it.

use std::collections::BTreeMap;

use crate::catalog::cache::EmbeddingCache;
use crate::drawing::{Drawing, Side};
use crate::embedding::{add_chord, subdivide_edge, trace_faces};
use crate::formula::bipartite_profile;
use crate::graph::{Edge, Graph};
use crate::rotation::RotationSystem;
use crate::search::{find_drawing, for_each_embedding, Budget, SearchSpec, SearchStats};
use crate::surface::SurfaceId;
use crate::transform::{diamond_sum_drawings, double_vertex, enumerate_pairings};
use crate::vertex::VertexId;
use crate::{Error, Result};

fn left_name(i: usize) -> VertexId {
    VertexId::letter((b'a' + i as u8) as char)
}

/// Surface for a (possibly zero) nonorientable genus, honoring the
/// convention that genus 0 is the sphere.
fn nonorientable_or_sphere(k: u32) -> SurfaceId {
    if k == 0 {
        SurfaceId::sphere()
    } else {
        SurfaceId::nonorientable(k).expect("positive genus")
    }
}

pub struct BipartiteBuilder<'c> {
    pub cache: &'c EmbeddingCache,
    pub budget: Budget,
    quads: BTreeMap<(usize, usize, bool), Drawing>,
    kainens: BTreeMap<(usize, usize), Drawing>,
    nonor1: BTreeMap<(usize, usize), Drawing>,
}

impl<'c> BipartiteBuilder<'c> {
    pub fn new(cache: &'c EmbeddingCache, budget: Budget) -> Self {
        BipartiteBuilder {
            cache,
            budget,
            quads: BTreeMap::new(),
            kainens: BTreeMap::new(),
            nonor1: BTreeMap::new(),
        }
    }

    // -- canonical relabeling ---------------------------------------------

    /// Relabels a complete bipartite drawing to the canonical names:
    /// lettered left side, numbered right side.
    fn canonize(&self, d: Drawing, m: usize, n: usize) -> Result<Drawing> {
        let (l, r) = d
            .graph()
            .bipartition()
            .ok_or_else(|| Error::Verification("driver product lost its bipartition".into()))?;
        if l.len() != m || r.len() != n {
            return Err(Error::Verification(format!(
                "expected a {m}x{n} bipartition, found {}x{}",
                l.len(),
                r.len()
            )));
        }
        let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for (i, &v) in l.iter().enumerate() {
            map.insert(v, left_name(i));
        }
        for (i, &v) in r.iter().enumerate() {
            map.insert(v, VertexId::num(i as i64));
        }
        d.relabel(|v| map[&v])
    }

    fn transpose(&self, d: Drawing) -> Result<Drawing> {
        let (l, r) = d
            .graph()
            .bipartition()
            .ok_or_else(|| Error::Verification("transpose needs a bipartition".into()))?;
        let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for (i, &v) in l.iter().enumerate() {
            map.insert(v, VertexId::num(i as i64));
        }
        for (i, &v) in r.iter().enumerate() {
            map.insert(v, left_name(i));
        }
        let mut out = d.relabel(|v| map[&v])?;
        let lefts = r.iter().enumerate().map(|(i, _)| left_name(i)).collect();
        let rights = l.iter().enumerate().map(|(i, _)| VertexId::num(i as i64)).collect();
        out.set_bipartition(lefts, rights);
        Ok(out)
    }

    // -- gluing helpers ----------------------------------------------------

    /// Diamond sum at right slackers: K_{m,n1} + K_{m,n2} -> K_{m,n1+n2-2}.
    fn glue_right(&self, d1: &Drawing, d2: &Drawing) -> Result<Drawing> {
        let (l1, r1) = d1.graph().bipartition().unwrap();
        let (m, n1) = (l1.len(), r1.len());
        let (l2, r2) = d2.graph().bipartition().unwrap();
        debug_assert_eq!(m, l2.len());
        let n2 = r2.len();
        // shift d2's right names clear of d1's
        let r2v: Vec<VertexId> = r2.iter().copied().collect();
        let l2v: Vec<VertexId> = l2.iter().copied().collect();
        let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for (i, &v) in r2v.iter().enumerate() {
            map.insert(v, VertexId::num((n1 + i) as i64));
        }
        for (i, &v) in l2v.iter().enumerate() {
            map.insert(v, VertexId::lettered('l', i as u32));
        }
        let d2 = d2.relabel(|v| map[&v])?;
        let s1 = d1.slackers(Some(Side::Right))?;
        let s2 = d2.slackers(Some(Side::Right))?;
        let v1 = *s1
            .iter()
            .next_back()
            .ok_or_else(|| Error::surgery("left factor has no right slacker"))?;
        let v2 = *s2
            .iter()
            .next_back()
            .ok_or_else(|| Error::surgery("right factor has no right slacker"))?;
        let glued = glue_at(d1, v1, &d2, v2)?;
        self.canonize(glued, m, n1 + n2 - 2)
    }

    /// Diamond sum at left slackers: K_{m1,n} + K_{m2,n} -> K_{m1+m2-2,n}.
    fn glue_left(&self, d1: &Drawing, d2: &Drawing) -> Result<Drawing> {
        let (l1, r1) = d1.graph().bipartition().unwrap();
        let (m1, n) = (l1.len(), r1.len());
        let (l2, _) = d2.graph().bipartition().unwrap();
        let m2 = l2.len();
        let l2v: Vec<VertexId> = l2.iter().copied().collect();
        let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for (i, &v) in l2v.iter().enumerate() {
            map.insert(v, VertexId::lettered('l', i as u32));
        }
        let d2 = d2.relabel(|v| map.get(&v).copied().unwrap_or(v))?;
        let s1 = d1.slackers(Some(Side::Left))?;
        let s2 = d2.slackers(Some(Side::Left))?;
        let v1 = *s1
            .iter()
            .next_back()
            .ok_or_else(|| Error::surgery("left factor has no left slacker"))?;
        let v2 = *s2
            .iter()
            .next_back()
            .ok_or_else(|| Error::surgery("right factor has no left slacker"))?;
        let glued = glue_at(d1, v1, &d2, v2)?;
        self.canonize(glued, m1 + m2 - 2, n)
    }

    // -- quadrangular embeddings -------------------------------------------

    /// Quadrangular drawing (no crossings) of K_{m,n} of the requested
    /// orientability, in the surface its Euler characteristic dictates.
    pub fn quad(&mut self, m: usize, n: usize, orientable: bool) -> Result<Drawing> {
        if let Some(d) = self.quads.get(&(m, n, orientable)) {
            return Ok(d.clone());
        }
        let d = self.quad_uncached(m, n, orientable)?;
        let expected_surface = self.quad_surface(m, n, orientable)?;
        let report = d.verify_drawing(&Graph::complete_bipartite(m, n), expected_surface, 0);
        if !report.passed() || !d.base().is_quadrangular() {
            return Err(Error::Verification(format!(
                "quadrangular K{m},{n} driver product fails verification:\n{report}"
            )));
        }
        self.quads.insert((m, n, orientable), d.clone());
        Ok(d)
    }

    fn quad_surface(&self, m: usize, n: usize, orientable: bool) -> Result<SurfaceId> {
        let p = bipartite_profile(m as u32, n as u32)?;
        Ok(if orientable {
            SurfaceId::orientable(p.h_or)
        } else {
            nonorientable_or_sphere(p.h_non)
        })
    }

    fn quad_uncached(&mut self, m: usize, n: usize, orientable: bool) -> Result<Drawing> {
        if m > n {
            let t = self.quad(n, m, orientable)?;
            return self.transpose(t);
        }
        if m < 2 {
            return Err(Error::input("quadrangular embeddings need both sides >= 2"));
        }
        if orientable {
            if (m - 2) * (n - 2) % 4 != 0 {
                return Err(Error::Unsupported(format!(
                    "K{m},{n} has no orientable quadrangular embedding"
                )));
            }
            match (m, n) {
                (2, _) => planar_ladder(n),
                (3, 6) | (4, 4) => self.searched_quad(m, n, true),
                (3, _) => {
                    let a = self.quad(3, 6, true)?;
                    let b = self.quad(3, n - 4, true)?;
                    self.glue_right(&a, &b)
                }
                (4, _) => {
                    let a = self.quad(4, 4, true)?;
                    let b = self.quad(4, n - 2, true)?;
                    self.glue_right(&a, &b)
                }
                (5, 6) => {
                    let a = self.quad(3, 6, true)?;
                    let b = self.quad(4, 6, true)?;
                    self.glue_left(&a, &b)
                }
                (5, _) => {
                    let a = self.quad(5, 6, true)?;
                    let b = self.quad(5, n - 4, true)?;
                    self.glue_right(&a, &b)
                }
                (6, 6) => {
                    let a = self.quad(4, 6, true)?;
                    let b = self.quad(4, 6, true)?;
                    self.glue_left(&a, &b)
                }
                (6, 7) => {
                    let a = self.quad(6, 5, true)?;
                    let b = self.quad(6, 4, true)?;
                    self.glue_right(&a, &b)
                }
                (6, 8) => {
                    let a = self.quad(6, 4, true)?;
                    let b = self.quad(6, 6, true)?;
                    self.glue_right(&a, &b)
                }
                (6, 9) => {
                    let a = self.quad(6, 5, true)?;
                    let b = self.quad(6, 6, true)?;
                    self.glue_right(&a, &b)
                }
                (8, 8) => {
                    let a = self.quad(4, 8, true)?;
                    let b = self.quad(6, 8, true)?;
                    self.glue_left(&a, &b)
                }
                _ if n >= 10 => {
                    let a = self.quad(m, n - 4, true)?;
                    let b = self.quad(m, 6, true)?;
                    self.glue_right(&a, &b)
                }
                _ => Err(Error::Unsupported(format!(
                    "no quadrangular composition recipe for K{m},{n}"
                ))),
            }
        } else {
            if m % 2 == 1 && n % 2 == 1 {
                return Err(Error::Unsupported(format!(
                    "K{m},{n} has no nonorientable quadrangular embedding: both sides odd"
                )));
            }
            match (m, n) {
                (3, 4) | (4, 5) => self.searched_quad(m, n, false),
                (3, _) => {
                    let a = self.quad(3, 4, false)?;
                    let b = self.quad(3, n - 2, false)?;
                    self.glue_right(&a, &b)
                }
                (4, 4) => {
                    let a = self.quad(3, 4, false)?;
                    let b = self.quad(3, 4, false)?;
                    self.glue_left(&a, &b)
                }
                (4, n2) if n2 % 2 == 1 => {
                    let a = self.quad(4, 5, false)?;
                    let b = self.quad(4, n - 3, true)?;
                    self.glue_right(&a, &b)
                }
                (4, _) => {
                    let a = self.quad(4, 4, false)?;
                    let b = self.quad_any(4, n - 2)?;
                    self.glue_right(&a, &b)
                }
                (m2, _) if m2 % 2 == 0 => {
                    let a = self.quad(4, n, false)?;
                    let b = self.quad_any(m - 2, n)?;
                    self.glue_left(&a, &b)
                }
                // odd m, even n
                _ => {
                    let a = self.quad(3, n, false)?;
                    let b = self.quad_any(m - 1, n)?;
                    self.glue_left(&a, &b)
                }
            }
        }
    }

    /// Quadrangular embedding of either orientability, preferring the
    /// orientable one when the residues admit it.
    fn quad_any(&mut self, m: usize, n: usize) -> Result<Drawing> {
        if (m as i64 - 2) * (n as i64 - 2) % 4 == 0 {
            self.quad(m, n, true)
        } else {
            self.quad(m, n, false)
        }
    }

    fn searched_quad(&mut self, m: usize, n: usize, orientable: bool) -> Result<Drawing> {
        let surface = self.quad_surface(m, n, orientable)?;
        let key = format!(
            "quad-k{m}-{n}-{}",
            if orientable { "or" } else { "non" }
        );
        let budget = self.budget;
        let graph = Graph::complete_bipartite(m, n);
        let gspec = format!("K{m},{n} quadrangular");
        let check = |d: &Drawing| {
            d.base().is_quadrangular()
                && d.surface() == surface
                && d.verify_drawing(&Graph::complete_bipartite(m, n), surface, 0).passed()
        };
        let mut d = self.cache.drawing(&key, &gspec, surface, check, || {
            let spec = SearchSpec {
                budget,
                ..SearchSpec::new(graph.clone(), surface)
            };
            let mut found = None;
            let (stats, _) = for_each_embedding(&spec, |emb| {
                found = Some(emb.clone());
                false
            })?;
            let emb =
                found.ok_or_else(|| Error::Unsupported(format!("no quadrangular K{m},{n} found")))?;
            Ok((
                Drawing::from_embedding(emb),
                SearchStats {
                    nodes: stats.nodes,
                    prunes: stats.prunes,
                    embeddings_tested: stats.embeddings_tested,
                    elapsed_ms: stats.elapsed_ms,
                },
                format!("face-constrained search for a quadrangular K{m},{n}"),
            ))
        })?;
        let (l, r) = split_sides(&d)?;
        d.set_bipartition(l, r);
        self.canonize(d, m, n)
    }

    // -- orientable Kainen drawings ----------------------------------------

    /// Kainen drawing of K_{m,n} with t(m,n) crossings in S_{h(m,n)}.
    pub fn kainen(&mut self, m: usize, n: usize) -> Result<Drawing> {
        if let Some(d) = self.kainens.get(&(m, n)) {
            return Ok(d.clone());
        }
        if (m.min(n), m.max(n)) == (3, 5) {
            return Err(Error::Unsupported(
                "the 5-right-vertex tripartite exception: the planar crossing number of K3,5 is 4, \
                 above its Kainen bound 3"
                    .into(),
            ));
        }
        if (m, n) == (5, 5) {
            return Err(Error::Unsupported(
                "K5,5 cannot meet its Kainen bound 1 in S2; its crossing number there is 2 \
                 (see the two-crossing construction)"
                    .into(),
            ));
        }
        let p = bipartite_profile(m as u32, n as u32)?;
        let d = self.kainen_uncached(m, n, p.t_or as usize)?;
        let surface = SurfaceId::orientable(p.h_or);
        let report = d.verify_kainen(&Graph::complete_bipartite(m, n), surface);
        if !report.passed() {
            return Err(Error::Verification(format!(
                "Kainen driver product for K{m},{n} fails verification:\n{report}"
            )));
        }
        self.kainens.insert((m, n), d.clone());
        Ok(d)
    }

    fn kainen_uncached(&mut self, m: usize, n: usize, t: usize) -> Result<Drawing> {
        if t == 0 {
            return self.quad(m, n, true);
        }
        if m > n {
            let d = self.kainen(n, m)?;
            return self.transpose(d);
        }
        match (m, n) {
            (3, _) => {
                // base K_{3,n-t} is quadrangular; double t right vertices,
                // keeping one left vertex slack throughout
                let base = self.quad(3, n - t, true)?;
                self.double_rights(base, t, m, n)
            }
            (4, _) => {
                let base = self.quad(4, n - 1, true)?;
                self.double_rights(base, 1, m, n)
            }
            (5, 7) | (5, 9) => self.searched_kainen(m, n, t),
            (5, 8) => {
                let a = self.kainen(3, 8)?;
                let b = self.quad(4, 8, true)?;
                self.glue_left(&a, &b)
            }
            (5, _) if n >= 10 => {
                let a = self.kainen(5, n - 4)?;
                let b = self.quad(5, 6, true)?;
                self.glue_right(&a, &b)
            }
            (7, _) if n <= 9 => {
                let a = self.quad(6, n, true)?;
                let b = self.kainen(3, n)?;
                self.glue_left(&a, &b)
            }
            (8, 9) => {
                let a = self.quad(6, 8, true)?;
                let b = self.kainen(5, 8)?;
                let k98 = self.glue_left(&a, &b)?;
                self.transpose(k98)
            }
            (9, 9) => {
                let a = self.quad(6, 9, true)?;
                let b = self.kainen(5, 9)?;
                self.glue_left(&a, &b)
            }
            _ if n >= 10 => {
                let a = self.kainen(m, n - 4)?;
                let b = self.quad(m, 6, true)?;
                self.glue_right(&a, &b)
            }
            _ => Err(Error::Unsupported(format!(
                "no Kainen composition recipe for K{m},{n}"
            ))),
        }
    }

    /// Doubles `t` distinct right vertices of a bipartite drawing while
    /// keeping some left vertex at responsibility zero.
    fn double_rights(&self, base: Drawing, t: usize, m: usize, n: usize) -> Result<Drawing> {
        let lefts: Vec<VertexId> = base
            .graph()
            .bipartition()
            .unwrap()
            .0
            .iter()
            .copied()
            .collect();
        'keep: for &keep in &lefts {
            let mut d = base.clone();
            for k in 0..t {
                let target = VertexId::num(k as i64);
                match double_vertex(&d, target, Some(keep)) {
                    Ok(next) => d = next,
                    Err(_) => continue 'keep,
                }
            }
            return self.canonize(d, m, n);
        }
        Err(Error::NoCompletion(format!(
            "doubling {t} right vertices of K{m},{} with a slack left vertex failed",
            n - t
        )))
    }

    fn searched_kainen(&mut self, m: usize, n: usize, t: usize) -> Result<Drawing> {
        let p = bipartite_profile(m as u32, n as u32)?;
        let surface = SurfaceId::orientable(p.h_or);
        let key = format!("kainen-k{m}-{n}");
        let budget = self.budget;
        let graph = Graph::complete_bipartite(m, n);
        let check = |d: &Drawing| {
            d.crossing_count() == t
                && d.verify_drawing(&Graph::complete_bipartite(m, n), surface, t).passed()
        };
        let mut d = self
            .cache
            .drawing(&key, &format!("K{m},{n} Kainen"), surface, check, || {
                let out = find_drawing(&graph, surface, t, budget, false, None)?;
                let d = out.witness.ok_or_else(|| {
                    Error::Unsupported(format!("no Kainen drawing of K{m},{n} found in budget"))
                })?;
                Ok((
                    d,
                    out.stats,
                    format!("subembedding search with {t} sequential insertions"),
                ))
            })?;
        let (l, r) = split_sides(&d)?;
        d.set_bipartition(l, r);
        self.canonize(d, m, n)
    }

    // -- nonorientable drawings --------------------------------------------

    /// One-crossing drawing of K_{m,n} (both odd) in N_{h'(m,n)}, or the
    /// crossing-free nonorientable quadrangulation when a side is even.
    pub fn nonorientable(&mut self, m: usize, n: usize) -> Result<Drawing> {
        let p = bipartite_profile(m as u32, n as u32)?;
        if p.t_non == 0 {
            return self.quad(m, n, false);
        }
        if let Some(d) = self.nonor1.get(&(m, n)) {
            return Ok(d.clone());
        }
        let d = self.nonorientable_uncached(m, n)?;
        let surface = nonorientable_or_sphere(p.h_non);
        let report = d.verify_drawing(&Graph::complete_bipartite(m, n), surface, 1);
        if !report.passed() {
            return Err(Error::Verification(format!(
                "nonorientable driver product for K{m},{n} fails verification:\n{report}"
            )));
        }
        self.nonor1.insert((m, n), d.clone());
        Ok(d)
    }

    fn nonorientable_uncached(&mut self, m: usize, n: usize) -> Result<Drawing> {
        if m > n {
            let d = self.nonorientable(n, m)?;
            return self.transpose(d);
        }
        if m == 3 {
            let base = self.quad(3, n - 1, false)?;
            self.double_rights(base, 1, m, n)
        } else {
            let a = self.nonorientable(3, n)?;
            let b = self.quad_any(m - 1, n)?;
            self.glue_left(&a, &b)
        }
    }

    // -- genus-offset drivers (one below the orientable genus) -------------

    /// Four-crossing drawing of K_{m,n} in S_{H(m,n)-1}, for the
    /// quadrangular residue classes.
    pub fn offset_orientable(&mut self, m: usize, n: usize) -> Result<Drawing> {
        if (m as i64 - 2) * (n as i64 - 2) % 4 != 0 {
            return Err(Error::input(format!(
                "K{m},{n} is outside the quadrangular residue classes"
            )));
        }
        if (m.min(n), m.max(n)) == (3, 6) {
            return Err(Error::Unsupported(
                "the planar crossing number of K3,6 is 6, above the four-crossing target".into(),
            ));
        }
        let p = bipartite_profile(m as u32, n as u32)?;
        let surface = SurfaceId::orientable(p.genus_or - 1);
        let d = self.offset_orientable_uncached(m, n)?;
        let report = d.verify_drawing(&Graph::complete_bipartite(m, n), surface, 4);
        if !report.passed() {
            return Err(Error::Verification(format!(
                "offset driver product for K{m},{n} fails verification:\n{report}"
            )));
        }
        Ok(d)
    }

    fn offset_orientable_uncached(&mut self, m: usize, n: usize) -> Result<Drawing> {
        // route through the side congruent to 2 mod 4 when one exists
        if n % 4 == 2 && m % 4 != 2 {
            let d = self.offset_orientable_uncached(n, m)?;
            return self.transpose(d);
        }
        if m % 4 == 2 {
            if m == 6 {
                match n {
                    3 => Err(Error::Unsupported("K6,3 needs six crossings in the plane".into())),
                    4 => {
                        // double two left vertices of the toroidal K4,4
                        let base = self.quad(4, 4, true)?;
                        let base = self.transpose(base)?; // keep doubling on the left
                        let d = self.double_lefts(base, 2)?;
                        self.canonize(d, 6, 4)
                    }
                    5 => self.searched_offset65(),
                    _ => {
                        let a = self.offset_orientable(6, 5)?;
                        let b = self.quad(6, n - 3, true)?;
                        self.glue_right(&a, &b)
                    }
                }
            } else {
                // m >= 10: four degree-3 doublings on the left of K_{m-4,3}
                let km3 = {
                    let base = self.quad(m - 4, 3, true)?;
                    let d = self.double_lefts(base, 4)?;
                    self.canonize(d, m, 3)?
                };
                if n == 3 {
                    Ok(km3)
                } else {
                    let b = self.quad(m, n - 1, true)?;
                    self.glue_right(&km3, &b)
                }
            }
        } else {
            // both sides divisible by 4: two two-crossing factors
            let a = {
                let k3m = self.kainen(3, m)?;
                self.transpose(k3m)?
            };
            let b = self.kainen(m, n - 1)?;
            self.glue_right(&a, &b)
        }
    }

    /// Doubles `t` distinct left vertices (each adds degree-2 crossings).
    fn double_lefts(&self, base: Drawing, t: usize) -> Result<Drawing> {
        let lefts: Vec<VertexId> = base
            .graph()
            .bipartition()
            .unwrap()
            .0
            .iter()
            .copied()
            .collect();
        let rights: Vec<VertexId> = base
            .graph()
            .bipartition()
            .unwrap()
            .1
            .iter()
            .copied()
            .collect();
        'keep: for &keep in &rights {
            let mut d = base.clone();
            for &target in lefts.iter().take(t) {
                match double_vertex(&d, target, Some(keep)) {
                    Ok(next) => d = next,
                    Err(_) => continue 'keep,
                }
            }
            return Ok(d);
        }
        Err(Error::NoCompletion(format!(
            "doubling {t} left vertices with a slack right vertex failed"
        )))
    }

    fn searched_offset65(&mut self) -> Result<Drawing> {
        let surface = SurfaceId::orientable(2);
        let budget = self.budget;
        let check = |d: &Drawing| {
            d.crossing_count() == 4
                && d.verify_drawing(&Graph::complete_bipartite(6, 5), surface, 4).passed()
                && !d.slackers(Some(Side::Right)).unwrap_or_default().is_empty()
        };
        let mut d = self
            .cache
            .drawing("offset-k6-5", "K6,5 four crossings", surface, check, || {
                let out = find_drawing(
                    &Graph::complete_bipartite(6, 5),
                    surface,
                    4,
                    budget,
                    false,
                    None,
                )?;
                let d = out.witness.ok_or_else(|| {
                    Error::Unsupported("no four-crossing K6,5 drawing found in budget".into())
                })?;
                if d.slackers(Some(Side::Right))?.is_empty() {
                    return Err(Error::Unsupported(
                        "found a four-crossing K6,5 drawing but no right slacker".into(),
                    ));
                }
                Ok((
                    d,
                    out.stats,
                    "subembedding search with four sequential insertions".into(),
                ))
            })?;
        let (l, r) = split_sides(&d)?;
        d.set_bipartition(l, r);
        self.canonize(d, 6, 5)
    }

    /// Two-crossing drawing of K_{m,n} in N_{H'(m,n)-1}, for at least one
    /// even side.
    pub fn offset_nonorientable(&mut self, m: usize, n: usize) -> Result<Drawing> {
        if m % 2 == 1 && n % 2 == 1 {
            return Err(Error::input(format!(
                "K{m},{n} has both sides odd; the offset surface needs an even side"
            )));
        }
        let p = bipartite_profile(m as u32, n as u32)?;
        let surface = nonorientable_or_sphere(p.genus_non - 1);
        let d = self.offset_nonorientable_uncached(m, n)?;
        let report = d.verify_drawing(&Graph::complete_bipartite(m, n), surface, 2);
        if !report.passed() {
            return Err(Error::Verification(format!(
                "nonorientable offset product for K{m},{n} fails verification:\n{report}"
            )));
        }
        Ok(d)
    }

    fn offset_nonorientable_uncached(&mut self, m: usize, n: usize) -> Result<Drawing> {
        if m != 3 && (n == 3 || (m % 2 == 1 && n % 2 == 0)) {
            let d = self.offset_nonorientable_uncached(n, m)?;
            return self.transpose(d);
        }
        if m == 3 {
            // n is even: double two rights of a quadrangular K_{3,n-2}
            let base = if n - 2 == 2 {
                planar_ladder_32()?
            } else {
                self.quad(3, n - 2, false)?
            };
            let d = self.double_rights(base, 2, 3, n)?;
            Ok(d)
        } else if n % 2 == 0 {
            // m even too: glue the two-crossing K_{3,n} with a plain
            // quadrangulation
            let a = self.offset_nonorientable(3, n)?;
            let b = self.quad_any(m - 1, n)?;
            self.glue_left(&a, &b)
        } else {
            // m even, n odd: two one-crossing drawings
            let a = self.nonorientable(3, n)?;
            let b = self.nonorientable(m - 1, n)?;
            self.glue_left(&a, &b)
        }
    }
}

/// Splits a drawing's vertex set into its two-coloring sides, letters and
/// crossing vertices excluded.
fn split_sides(d: &Drawing) -> Result<(std::collections::BTreeSet<VertexId>, std::collections::BTreeSet<VertexId>)> {
    let (l, r) = d
        .graph()
        .two_coloring()
        .ok_or_else(|| Error::Verification("searched drawing is not bipartite".into()))?;
    // orient sides deterministically: the side containing the smallest
    // lettered vertex (or the smaller side) goes left
    let has_letter = |s: &std::collections::BTreeSet<VertexId>| s.iter().any(|v| v.is_lettered());
    if has_letter(&l) || (!has_letter(&r) && l.len() <= r.len()) {
        Ok((l, r))
    } else {
        Ok((r, l))
    }
}

fn glue_at(d1: &Drawing, v1: VertexId, d2: &Drawing, v2: VertexId) -> Result<Drawing> {
    let mut last = Error::surgery("no pairing glues the excised boundaries");
    for pairing in enumerate_pairings(d1.base(), v1, d2.base(), v2) {
        match diamond_sum_drawings(d1, v1, d2, v2, &pairing) {
            Ok(out) => return Ok(out),
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// Planar quadrangular K_{2,n}: the two letters alternate with the numbers.
fn planar_ladder(n: usize) -> Result<Drawing> {
    let mut rot: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    let a = left_name(0);
    let b = left_name(1);
    let nums: Vec<VertexId> = (0..n as i64).map(VertexId::num).collect();
    rot.insert(a, nums.clone());
    rot.insert(b, nums.iter().rev().copied().collect());
    for &i in &nums {
        rot.insert(i, vec![a, b]);
    }
    let emb = trace_faces(&RotationSystem::new(rot, Default::default())?)?;
    let mut d = Drawing::from_embedding(emb);
    d.set_bipartition([a, b].into_iter().collect(), nums.into_iter().collect());
    Ok(d)
}

/// Planar quadrangular K_{3,2} (right side of two) for the smallest
/// nonorientable offset bases.
fn planar_ladder_32() -> Result<Drawing> {
    let mut rot: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    let lefts: Vec<VertexId> = (0..3).map(left_name).collect();
    let r0 = VertexId::num(0);
    let r1 = VertexId::num(1);
    for &l in &lefts {
        rot.insert(l, vec![r0, r1]);
    }
    rot.insert(r0, lefts.clone());
    rot.insert(r1, lefts.iter().rev().copied().collect());
    let emb = trace_faces(&RotationSystem::new(rot, Default::default())?)?;
    let mut d = Drawing::from_embedding(emb);
    d.set_bipartition(
        lefts.into_iter().collect(),
        [r0, r1].into_iter().collect(),
    );
    Ok(d)
}

/// The two-crossing drawing of K_{5,5} in S_2: a searched quadrangular
/// embedding of K_{5,5} minus one edge, with the missing edge drawn as a
/// path through two crossings over edges sharing a right vertex.
pub fn k55_two_crossing_drawing(cache: &EmbeddingCache, budget: Budget) -> Result<Drawing> {
    let surface = SurfaceId::orientable(2);
    let mut graph = Graph::complete_bipartite(5, 5);
    let (u, v) = (left_name(0), VertexId::num(0));
    graph.remove_edge(u, v);
    let check = |d: &Drawing| {
        d.crossing_count() == 0 && d.base().is_quadrangular() && d.graph().edge_count() == 24
    };
    let base = cache.drawing(
        "base-k55-minus-edge",
        "K5,5 minus one edge, quadrangular",
        surface,
        check,
        || {
            let spec = SearchSpec {
                budget,
                ..SearchSpec::new(graph.clone(), surface)
            };
            let mut found = None;
            let (stats, _) = for_each_embedding(&spec, |emb| {
                found = Some(emb.clone());
                false
            })?;
            let emb = found.ok_or_else(|| {
                Error::Unsupported("no quadrangular embedding of K5,5 minus an edge found".into())
            })?;
            Ok((
                Drawing::from_embedding(emb),
                SearchStats {
                    nodes: stats.nodes,
                    prunes: stats.prunes,
                    embeddings_tested: stats.embeddings_tested,
                    elapsed_ms: stats.elapsed_ms,
                },
                "face-constrained search for a quadrangular near-complete base".into(),
            ))
        },
    )?;
    let mut d = insert_edge_two_crossings(&base, u, v)?;
    let (l, r) = d
        .graph()
        .two_coloring()
        .ok_or_else(|| Error::Verification("two-crossing product is not bipartite".into()))?;
    if l.iter().any(|x| x.is_lettered()) {
        d.set_bipartition(l, r);
    } else {
        d.set_bipartition(r, l);
    }
    let report =
        d.verify_drawing_with_cap(&Graph::complete_bipartite(5, 5), surface, 2, 2);
    if !report.passed() {
        return Err(Error::Verification(format!(
            "two-crossing K5,5 fails verification:\n{report}"
        )));
    }
    Ok(d)
}

/// Inserts an absent edge as a path through two crossings: the first over
/// an edge on a face holding `u`, the second over an edge of the adjacent
/// face, landing in a face holding `v`.
fn insert_edge_two_crossings(d: &Drawing, u: VertexId, v: VertexId) -> Result<Drawing> {
    let base = d.base();
    for (f1, face1) in base.faces().iter().enumerate() {
        if !face1.contains_vertex(u) {
            continue;
        }
        for e1 in face_edges(face1) {
            if e1.touches(u) || e1.touches(v) || d.responsibility(e1).unwrap_or(1) != 0 {
                continue;
            }
            let occ1 = base.edge_occurrences(e1);
            for &(f2, _) in occ1.iter().filter(|&&(f, _)| f != f1) {
                let face2 = &base.faces()[f2];
                for e2 in face_edges(face2) {
                    if e2 == e1
                        || e2.touches(u)
                        || e2.touches(v)
                        || d.responsibility(e2).unwrap_or(1) != 0
                    {
                        continue;
                    }
                    let occ2 = base.edge_occurrences(e2);
                    for &(f3, _) in occ2.iter().filter(|&&(f, _)| f != f2) {
                        if !base.faces()[f3].contains_vertex(v) {
                            continue;
                        }
                        if let Ok(out) = route_two_crossing_path(d, u, v, e1, e2) {
                            return Ok(out);
                        }
                    }
                }
            }
        }
    }
    Err(Error::NoCompletion(format!(
        "no two-crossing route inserts ({u},{v})"
    )))
}

fn face_edges(face: &crate::embedding::Face) -> Vec<Edge> {
    let mut out: Vec<Edge> = face
        .walk
        .iter()
        .map(|a| Edge::new(a.from, a.to))
        .collect();
    out.sort();
    out.dedup();
    out
}

fn route_two_crossing_path(
    d: &Drawing,
    u: VertexId,
    v: VertexId,
    e1: Edge,
    e2: Edge,
) -> Result<Drawing> {
    let fresh = |k: u32, rs: &RotationSystem| {
        let mut k = k;
        while rs.rotation(VertexId::Cross(k)).is_some() {
            k += 1;
        }
        VertexId::Cross(k)
    };
    let z1 = fresh(d.crossing_count() as u32, d.base().rotation_system());
    let step = subdivide_edge(d.base(), e1, z1)?;
    let z2 = fresh(d.crossing_count() as u32 + 1, step.rotation_system());
    let step = subdivide_edge(&step, e2, z2)?;
    // chord u-z1 in a shared face, then z1-z2, then z2-v
    let mut cur = step;
    for (a, b) in [(u, z1), (z1, z2), (z2, v)] {
        let mut done = false;
        'faces: for (fi, f) in cur.faces().iter().enumerate() {
            for &ca in f.corner_positions(a).iter() {
                for &cb in f.corner_positions(b).iter() {
                    if let Ok(next) = add_chord(&cur, fi, ca, cb, false) {
                        cur = next;
                        done = true;
                        break 'faces;
                    }
                }
            }
        }
        if !done {
            return Err(Error::NoCompletion(format!(
                "two-crossing route segment ({a},{b}) found no face"
            )));
        }
    }
    let mut original = d.graph().clone();
    original.add_edge(u, v);
    let mut ledger = d.ledger().to_vec();
    ledger.push(crate::drawing::CrossingRecord {
        inserted: Edge::new(u, v),
        crossed: e1,
    });
    ledger.push(crate::drawing::CrossingRecord {
        inserted: Edge::new(u, v),
        crossed: e2,
    });
    Drawing::from_parts(cur, ledger, original)
}

/// Public construction entry: Kainen or offset drawings per the spec's
/// bipartite driver contract.
pub fn construct_bipartite(
    m: usize,
    n: usize,
    orientable: bool,
    genus_offset: i32,
    cache: &EmbeddingCache,
    budget: Budget,
) -> Result<Drawing> {
    if m < 3 || n < 3 {
        return Err(Error::input("bipartite drivers need both sides at least 3"));
    }
    let mut b = BipartiteBuilder::new(cache, budget);
    match (orientable, genus_offset) {
        (true, 0) => b.kainen(m, n),
        (false, 0) => b.nonorientable(m, n),
        (true, -1) => b.offset_orientable(m, n),
        (false, -1) => b.offset_nonorientable(m, n),
        _ => Err(Error::input("genus offset must be 0 or -1")),
    }
}

/// Convenient re-export of the quadrangular builder for tests and the
/// complete-graph drivers.
pub fn quadrangular_embedding(
    m: usize,
    n: usize,
    orientable: bool,
    cache: &EmbeddingCache,
    budget: Budget,
) -> Result<Drawing> {
    BipartiteBuilder::new(cache, budget).quad(m, n, orientable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::cache::EmbeddingCache;

    fn builder_cache() -> EmbeddingCache {
        EmbeddingCache::disabled()
    }

    #[test]
    fn quadrangular_compositions() {
        let cache = builder_cache();
        let mut b = BipartiteBuilder::new(&cache, Budget::Unlimited);
        for (m, n) in [(2, 5), (3, 6), (4, 4), (3, 10), (4, 6), (5, 6), (6, 7), (8, 8)] {
            let d = b.quad(m, n, true).unwrap();
            assert!(d.base().is_quadrangular(), "K{m},{n}");
        }
        for (m, n) in [(3, 4), (4, 4), (4, 5), (3, 8), (6, 7), (5, 8)] {
            let d = b.quad(m, n, false).unwrap();
            assert!(!d.base().rotation_system().is_orientable().unwrap());
        }
    }

    #[test]
    fn kainen_small_cases() {
        let cache = builder_cache();
        let mut b = BipartiteBuilder::new(&cache, Budget::Unlimited);
        // K3,3: one crossing in the sphere
        let d = b.kainen(3, 3).unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.surface(), SurfaceId::sphere());
        // K4,5: two crossings in the torus
        let d = b.kainen(4, 5).unwrap();
        assert_eq!(d.crossing_count(), 2);
        assert_eq!(d.surface(), SurfaceId::orientable(1));
        // K3,7: one crossing
        let d = b.kainen(3, 7).unwrap();
        assert_eq!(d.crossing_count(), 1);
        // exceptions are rejected with their true values in the message
        let err = b.kainen(3, 5).unwrap_err().to_string();
        assert!(err.contains('4'), "{err}");
        let err = b.kainen(5, 5).unwrap_err().to_string();
        assert!(err.contains('2'), "{err}");
    }

    #[test]
    fn nonorientable_one_crossing_k33() {
        let cache = builder_cache();
        let mut b = BipartiteBuilder::new(&cache, Budget::Unlimited);
        let d = b.nonorientable(3, 3).unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.surface(), SurfaceId::sphere());
        let d = b.nonorientable(3, 7).unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.surface(), SurfaceId::nonorientable(2).unwrap());
    }
}
