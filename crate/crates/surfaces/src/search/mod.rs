//! Backtracking enumeration of face-constrained embeddings, Kainen
//! completion search, current-graph search, and exhaustive nonexistence
//! verification. Witnesses always pass through the independent drawing
//! verifier; the search tree itself shares no code with it.

mod core;
mod current_search;
mod seeds;

pub use self::core::{Budget, FaceBudget, RawEmbedding, Stats, MAXN};
pub use current_search::{find_current_graph, VortexPlan};
pub use seeds::{automorphisms, canonical_subset_key, rotation_seeds};
pub(crate) use seeds::next_permutation as seeds_next_permutation;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::drawing::{complete_kainen, Drawing};
use crate::embedding::{trace_faces, Embedding};
use crate::formula::{kainen_lower_bound, min_triangulation_order};
use crate::graph::{Edge, Graph};
use crate::rotation::RotationSystem;
use crate::surface::SurfaceId;
use crate::vertex::VertexId;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub graph: Graph,
    pub surface: SurfaceId,
    /// explicit face-length multiset; None derives every feasible one
    pub faces: Option<Vec<(usize, usize)>>,
    /// face lengths that must be Hamiltonian cycles
    pub hamiltonian_lengths: Vec<usize>,
    /// canonical seed-rotation pruning
    pub symmetry: bool,
    /// cyclic symmetry (period, span over numbered vertices)
    pub cyclic: Option<(usize, usize)>,
    pub budget: Budget,
}

impl SearchSpec {
    pub fn new(graph: Graph, surface: SurfaceId) -> Self {
        SearchSpec {
            graph,
            surface,
            faces: None,
            hamiltonian_lengths: Vec::new(),
            symmetry: true,
            cyclic: None,
            budget: Budget::Unlimited,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum SearchStatus {
    Found,
    ExhaustedNone,
    BudgetExceeded,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub prunes: u64,
    pub embeddings_tested: u64,
    pub elapsed_ms: u128,
}

impl SearchStats {
    fn absorb(&mut self, s: &Stats) {
        self.nodes += s.nodes;
        self.prunes += s.prunes;
        self.embeddings_tested += s.emitted;
    }
}

/// Resumable position inside a drawing search.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub subset_index: usize,
    pub budget_index: usize,
    pub seed_index: usize,
    pub path: Vec<u32>,
    pub stats: SearchStats,
}

#[derive(Debug)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub witness: Option<Drawing>,
    pub stats: SearchStats,
    pub checkpoint: Option<Checkpoint>,
}

impl SearchOutcome {
    pub fn found(&self) -> bool {
        self.status == SearchStatus::Found
    }
}

/// Compact indexing of a graph's vertices.
struct Indexed {
    verts: Vec<VertexId>,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<bool>>,
}

fn index_graph(g: &Graph) -> Result<Indexed> {
    let verts: Vec<VertexId> = g.vertices().collect();
    if verts.len() > MAXN {
        return Err(Error::input(format!(
            "search supports at most {MAXN} vertices"
        )));
    }
    let pos: BTreeMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edges = Vec::new();
    let mut adj = vec![vec![false; verts.len()]; verts.len()];
    for e in g.edges() {
        let (a, b) = (pos[&e.0], pos[&e.1]);
        edges.push((a, b));
        adj[a][b] = true;
        adj[b][a] = true;
    }
    Ok(Indexed { verts, edges, adj })
}

fn raw_to_rotation_system(raw: &RawEmbedding, verts: &[VertexId]) -> Result<RotationSystem> {
    let mut rot: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    let mut twisted = std::collections::BTreeSet::new();
    for v in 0..raw.n {
        let mut ring = Vec::new();
        let start = (0..raw.n).find(|&u| raw.succ[v][u] != u8::MAX);
        if let Some(start) = start {
            let mut u = start;
            loop {
                ring.push(verts[raw.succ[v][u] as usize]);
                u = raw.succ[v][u] as usize;
                if u == start {
                    break;
                }
            }
        }
        rot.insert(verts[v], ring);
        for u in 0..raw.n {
            if raw.twisted[v] & (1 << u) != 0 {
                twisted.insert(Edge::new(verts[v], verts[u]));
            }
        }
    }
    RotationSystem::new(rot, twisted)
}

/// Feasible face-length multisets for embedding `g` in `s`: `F` lengths,
/// each at least the girth (and even for bipartite graphs), summing to 2E.
pub fn face_multisets(g: &Graph, s: SurfaceId) -> Result<Vec<Vec<(usize, usize)>>> {
    let v = g.vertex_count() as i64;
    let e = g.edge_count() as i64;
    let f = s.euler_characteristic() - v + e;
    if f <= 0 {
        return Ok(Vec::new());
    }
    let girth = g.girth()?;
    let bip = g.two_coloring().is_some();
    let step = if bip { 2 } else { 1 };
    let mut out = Vec::new();
    // parts ordered non-decreasing
    fn rec(
        remaining_faces: i64,
        remaining_len: i64,
        min_len: usize,
        step: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if remaining_faces == 0 {
            if remaining_len == 0 {
                let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
                for &l in cur.iter() {
                    *counts.entry(l).or_insert(0) += 1;
                }
                out.push(counts.into_iter().collect());
            }
            return;
        }
        let mut l = min_len;
        while (l as i64) * remaining_faces <= remaining_len {
            cur.push(l);
            rec(
                remaining_faces - 1,
                remaining_len - l as i64,
                l,
                step,
                cur,
                out,
            );
            cur.pop();
            l += step;
        }
    }
    rec(f, 2 * e, girth, step, &mut Vec::new(), &mut out);
    Ok(out)
}


/// Options for one multiset-constrained searcher run.
struct RunOpts {
    budget: Budget,
    orientable: bool,
    cyclic: Option<(usize, usize)>,
    symmetry: bool,
    hamiltonian: Vec<usize>,
    /// resume position: (seed index, decision path)
    resume: Option<(usize, Vec<u32>)>,
}

/// Runs the core searcher over one face multiset, handling seeds, budgets
/// and resume. Returns accumulated stats, the interruption point if the
/// budget ran out, and whether the sink stopped the search.
fn run_one_multiset(
    idx: &Indexed,
    counts: &[(usize, usize)],
    opts: &RunOpts,
    emit: &mut dyn FnMut(&RawEmbedding) -> bool,
) -> (Stats, Option<(usize, Vec<u32>)>, bool) {
    let mut budget = FaceBudget::from_counts(counts);
    budget.hamiltonian = opts.hamiltonian.clone();
    let mut searcher = self::core::Searcher::new(idx.verts.len(), &idx.edges, budget, Box::new(emit));
    searcher.set_node_budget(opts.budget);
    if !opts.orientable {
        searcher.explore_signatures();
    }
    let seeds: Vec<Option<Vec<usize>>> = if let Some((p, span)) = opts.cyclic {
        searcher.set_symmetry(p, span);
        vec![None]
    } else if opts.symmetry {
        let v0 = (0..idx.verts.len())
            .max_by_key(|&v| idx.adj[v].iter().filter(|&&b| b).count())
            .unwrap_or(0);
        rotation_seeds(idx.verts.len(), &idx.adj, v0)
            .into_iter()
            .map(|rep| Some(rep.into_iter().map(|x| x as usize).collect()))
            .collect()
    } else {
        vec![None]
    };
    let v0 = (0..idx.verts.len())
        .max_by_key(|&v| idx.adj[v].iter().filter(|&&b| b).count())
        .unwrap_or(0);
    let start_seed = opts.resume.as_ref().map(|(k, _)| *k).unwrap_or(0);
    let mut interrupted = None;
    for (si, seed) in seeds.iter().enumerate().skip(start_seed) {
        if let Some(ring) = seed {
            searcher.seed_rotation(v0, ring);
        }
        if let Some((k, path)) = &opts.resume {
            if *k == si {
                searcher.set_resume_path(path.clone());
            }
        }
        searcher.run();
        let out_of_budget = searcher.out_of_budget;
        if out_of_budget {
            interrupted = Some((si, searcher.checkpoint.clone().unwrap_or_default()));
        }
        let stop = searcher.stopped();
        searcher.reset_keep_stats();
        if out_of_budget || stop {
            break;
        }
    }
    let stats = searcher.stats.clone();
    let stopped = searcher.stopped();
    (stats, interrupted, stopped)
}

/// Streams every face-constrained embedding of the spec to `sink`;
/// returning false from the sink stops the search. The result reports
/// whether the enumeration ran to completion.
pub fn for_each_embedding(
    spec: &SearchSpec,
    mut sink: impl FnMut(&Embedding) -> bool,
) -> Result<(SearchStats, bool)> {
    let t0 = Instant::now();
    let idx = index_graph(&spec.graph)?;
    let budgets: Vec<Vec<(usize, usize)>> = match &spec.faces {
        Some(m) => vec![m.clone()],
        None => face_multisets(&spec.graph, spec.surface)?,
    };
    let opts = RunOpts {
        budget: spec.budget,
        orientable: spec.surface.orientable,
        cyclic: spec.cyclic,
        symmetry: spec.symmetry,
        hamiltonian: spec.hamiltonian_lengths.clone(),
        resume: None,
    };
    let mut stats = SearchStats::default();
    let mut complete = true;
    let want_orientable = spec.surface.orientable;
    for counts in &budgets {
        let mut err: Option<Error> = None;
        let mut stopped_by_sink = false;
        let (s_run, interrupted, _) = {
            let verts = &idx.verts;
            let sink_ref = &mut sink;
            let err_ref = &mut err;
            let stop_ref = &mut stopped_by_sink;
            let mut emit = |raw: &RawEmbedding| -> bool {
                let rs = match raw_to_rotation_system(raw, verts) {
                    Ok(rs) => rs,
                    Err(e) => {
                        *err_ref = Some(e);
                        return false;
                    }
                };
                match rs.is_orientable() {
                    Ok(o) if o != want_orientable => true,
                    Err(e) => {
                        *err_ref = Some(e);
                        false
                    }
                    _ => match trace_faces(&rs) {
                        Ok(emb) => {
                            debug_assert_eq!(emb.surface(), spec.surface);
                            let go = sink_ref(&emb);
                            if !go {
                                *stop_ref = true;
                            }
                            go
                        }
                        Err(e) => {
                            *err_ref = Some(e);
                            false
                        }
                    },
                }
            };
            run_one_multiset(&idx, counts, &opts, &mut emit)
        };
        stats.absorb(&s_run);
        if let Some(e) = err {
            return Err(e);
        }
        if interrupted.is_some() {
            complete = false;
            break;
        }
        if stopped_by_sink {
            complete = false;
            break;
        }
    }
    stats.elapsed_ms = t0.elapsed().as_millis();
    Ok((stats, complete))
}

/// Enumerates missing-edge subsets of size `r` up to isomorphism of the
/// ambient complete or complete bipartite graph, by growing subset types
/// one edge at a time and deduplicating canonically at each level.
pub fn missing_edge_subsets(g: &Graph, r: usize) -> Vec<Vec<Edge>> {
    let verts: Vec<VertexId> = g.vertices().collect();
    let pos: BTreeMap<VertexId, u8> = verts
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as u8))
        .collect();
    let classes: BTreeMap<u8, u8> = match g.bipartition() {
        Some((l, _)) => verts
            .iter()
            .map(|v| (pos[v], if l.contains(v) { 0 } else { 1 }))
            .collect(),
        None => verts.iter().map(|v| (pos[v], 0)).collect(),
    };
    let edges = g.edges();
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..r {
        let mut seen = std::collections::BTreeSet::new();
        let mut next: Vec<Vec<usize>> = Vec::new();
        for rep in &level {
            // every larger type extends some smaller type's representative
            // by one edge, so all extensions must be offered
            for i in 0..edges.len() {
                if rep.contains(&i) {
                    continue;
                }
                let mut cand = rep.clone();
                cand.push(i);
                cand.sort_unstable();
                let compact: Vec<(u8, u8)> = cand
                    .iter()
                    .map(|&k| (pos[&edges[k].0], pos[&edges[k].1]))
                    .collect();
                let key = canonical_subset_key(&compact, &classes);
                if seen.insert(key) {
                    next.push(cand);
                }
            }
        }
        level = next;
    }
    level
        .into_iter()
        .map(|combo| combo.iter().map(|&i| edges[i]).collect())
        .collect()
}

/// Searches for a drawing of `graph` in `s` with exactly `crossings`
/// crossings: embeddings of the graph minus each `crossings`-subset of
/// edges (up to symmetry), completed by sequential one-crossing
/// insertions. With `exhaustive` the whole space is traversed and
/// `ExhaustedNone` certifies that no such drawing exists.
pub fn find_drawing(
    graph: &Graph,
    s: SurfaceId,
    crossings: usize,
    budget: Budget,
    exhaustive: bool,
    resume: Option<Checkpoint>,
) -> Result<SearchOutcome> {
    let t0 = Instant::now();
    let subsets = missing_edge_subsets(graph, crossings);
    let mut stats = SearchStats::default();
    let (start_subset, start_budget, start_seed_path) = match &resume {
        Some(c) => {
            stats = c.stats.clone();
            (c.subset_index, c.budget_index, Some((c.seed_index, c.path.clone())))
        }
        None => (0, 0, None),
    };
    let mut witness: Option<Drawing> = None;
    let mut checkpoint: Option<Checkpoint> = None;
    'subsets: for (si, subset) in subsets.iter().enumerate().skip(start_subset) {
        let mut sub = graph.clone();
        for e in subset {
            sub.remove_edge(e.0, e.1);
        }
        if !sub.is_connected() {
            continue;
        }
        let idx = index_graph(&sub)?;
        let multisets = face_multisets(&sub, s)?;
        for (bi, counts) in multisets.iter().enumerate() {
            if si == start_subset && bi < start_budget {
                continue;
            }
            let opts = RunOpts {
                budget,
                orientable: s.orientable,
                cyclic: None,
                symmetry: true,
                hamiltonian: Vec::new(),
                resume: if si == start_subset && bi == start_budget {
                    start_seed_path.clone()
                } else {
                    None
                },
            };
            let mut tested: u64 = 0;
            let (s_run, interrupted, _) = {
                let verts = idx.verts.clone();
                let missing = subset.clone();
                let want_orientable = s.orientable;
                let wit_ref = &mut witness;
                let tested_ref = &mut tested;
                let mut emit = move |raw: &RawEmbedding| -> bool {
                    *tested_ref += 1;
                    let Ok(rs) = raw_to_rotation_system(raw, &verts) else {
                        return true;
                    };
                    if rs.is_orientable().ok() != Some(want_orientable) {
                        return true;
                    }
                    let Ok(emb) = trace_faces(&rs) else {
                        return true;
                    };
                    let d = Drawing::from_embedding(emb);
                    if let Some(done) = complete_kainen(&d, &missing) {
                        *wit_ref = Some(done);
                        return false;
                    }
                    true
                };
                run_one_multiset(&idx, counts, &opts, &mut emit)
            };
            stats.absorb(&s_run);
            stats.embeddings_tested += tested;
            if let Some((seed_idx, path)) = interrupted {
                checkpoint = Some(Checkpoint {
                    version: 1,
                    subset_index: si,
                    budget_index: bi,
                    seed_index: seed_idx,
                    path,
                    stats: stats.clone(),
                });
            }
            if witness.is_some() || checkpoint.is_some() {
                break 'subsets;
            }
        }
    }
    stats.elapsed_ms = t0.elapsed().as_millis();
    let status = if witness.is_some() {
        SearchStatus::Found
    } else if checkpoint.is_some() {
        SearchStatus::BudgetExceeded
    } else {
        SearchStatus::ExhaustedNone
    };
    Ok(SearchOutcome {
        status,
        witness,
        stats,
        checkpoint,
    })
}

/// Kainen-drawing search: `find_drawing` at exactly the Kainen lower bound.
pub fn find_kainen(graph: &Graph, s: SurfaceId, budget: Budget) -> Result<SearchOutcome> {
    let delta = kainen_lower_bound(graph, s)?;
    find_drawing(graph, s, delta as usize, budget, false, None)
}

/// Exhaustively refutes drawings of `graph` in `s` with at most
/// `max_crossings` crossings. `ExhaustedNone` is the refutation
/// certificate; `Found` means a drawing exists and carries it. The
/// deletion model requires every edge responsibility to be forced at most
/// one, which holds whenever even `max_crossings - 1` deletions leave the
/// graph over the Euler bound; violating instances are rejected.
pub fn prove_nonexistence(
    graph: &Graph,
    s: SurfaceId,
    max_crossings: usize,
    budget: Budget,
) -> Result<SearchOutcome> {
    let v = graph.vertex_count() as i64;
    let e = graph.edge_count() as i64;
    let girth = graph.girth()? as i64;
    let bound = crate::formula::euler_edge_bound(v, s.euler_characteristic(), girth);
    if max_crossings > 0 && e - (max_crossings as i64 - 1) <= bound {
        return Err(Error::input(format!(
            "refutation up to {max_crossings} crossings needs every cover minimal; \
             {} edges against an Euler bound of {bound} cannot force that",
            e
        )));
    }
    let mut total = SearchStats::default();
    for r in 0..=max_crossings {
        if e - (r as i64) > bound {
            // too many edges left to embed: r crossings are impossible
            continue;
        }
        let out = find_drawing(graph, s, r, budget, true, None)?;
        total.nodes += out.stats.nodes;
        total.prunes += out.stats.prunes;
        total.embeddings_tested += out.stats.embeddings_tested;
        total.elapsed_ms += out.stats.elapsed_ms;
        match out.status {
            SearchStatus::Found => {
                return Ok(SearchOutcome {
                    status: SearchStatus::Found,
                    witness: out.witness,
                    stats: total,
                    checkpoint: None,
                })
            }
            SearchStatus::BudgetExceeded => {
                return Ok(SearchOutcome {
                    status: SearchStatus::BudgetExceeded,
                    witness: None,
                    stats: total,
                    checkpoint: out.checkpoint,
                })
            }
            SearchStatus::ExhaustedNone => {}
        }
    }
    Ok(SearchOutcome {
        status: SearchStatus::ExhaustedNone,
        witness: None,
        stats: total,
        checkpoint: None,
    })
}

/// Minimal-triangulation conjecture driver: computes the minimal
/// triangulation order M(g) exactly and searches for a Kainen drawing of
/// the complete graph on that many vertices in S_g. The surface of genus 2
/// is excluded.
pub fn conjecture_check(g: u64, budget: Budget) -> Result<SearchOutcome> {
    if g == 2 {
        return Err(Error::input(
            "genus 2 is excluded: no 9-vertex triangulation of S2 exists",
        ));
    }
    let m = min_triangulation_order(g);
    let graph = Graph::complete(m as usize);
    find_kainen(&graph, SurfaceId::orientable(g as u32), budget)
}

#[cfg(test)]
mod tests;
