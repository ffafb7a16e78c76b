//! Exhaustive search for current graphs: skeleton enumeration by degree
//! sequence, rotations, twist assignments, and current assignments by
//! value pairs with Kirchhoff pruning. Every witness revalidates and
//! derives successfully before it is returned.

use std::collections::BTreeMap;

use crate::current::{CurrentGraph, VortexKind};
use crate::skeleton::{mate, Skeleton};
use crate::{Error, Result};

use super::{Budget, SearchStats, SearchStatus};

#[derive(Clone, Debug, Default)]
pub struct VortexPlan {
    /// (letter, kind) per vortex vertex
    pub vortices: Vec<(char, VortexKind)>,
}

pub struct CurrentGraphOutcome {
    pub status: SearchStatus,
    pub witness: Option<CurrentGraph>,
    pub stats: SearchStats,
}

/// Searches for a valid current graph over Z_n of the given index whose
/// vortex structure matches the plan and whose derived embedding has the
/// requested orientability. The first witness in the deterministic
/// enumeration order is returned; `ExhaustedNone` means no skeleton within
/// the implied size bound admits a valid assignment.
pub fn find_current_graph(
    group_order: i64,
    index: usize,
    plan: &VortexPlan,
    orientable: bool,
    budget: Budget,
) -> Result<CurrentGraphOutcome> {
    if index == 0 || group_order % index as i64 != 0 {
        return Err(Error::input(format!(
            "index {index} does not divide the group order {group_order}"
        )));
    }
    let n = group_order;
    let k = index;
    let mut stats = SearchStats::default();
    let node_cap = match budget {
        Budget::Unlimited => u64::MAX,
        Budget::Nodes(c) => c,
    };
    let vortex_deg = |kind: VortexKind| -> usize {
        match kind {
            VortexKind::V3 => k,
            VortexKind::V4 | VortexKind::V5 => 3,
        }
    };
    let vdegs: Vec<usize> = plan.vortices.iter().map(|&(_, kd)| vortex_deg(kd)).collect();
    let vortex_sum: usize = vdegs.iter().sum();
    // dead ends are only possible when the group has an order-2 element
    let max_v2 = if n % 2 == 0 { k } else { 0 };
    for n_v2 in 0..=max_v2 {
        let entries = k * (n as usize - 1);
        let arcs = entries + n_v2;
        if arcs % 2 != 0 {
            continue;
        }
        let e_count = arcs / 2;
        let rest = 2 * e_count - vortex_sum - n_v2;
        if rest % 3 != 0 {
            continue;
        }
        let n_v1 = rest / 3;
        // vertex layout: vortices, then V2 dead ends, then V1 vertices
        let mut degs: Vec<usize> = vdegs.clone();
        degs.extend(std::iter::repeat_n(1, n_v2));
        degs.extend(std::iter::repeat_n(3, n_v1));
        let names: Vec<String> = plan
            .vortices
            .iter()
            .map(|&(c, _)| c.to_string())
            .chain((0..n_v2).map(|i| format!("d{i}")))
            .chain((0..n_v1).map(|i| format!("u{i}")))
            .collect();
        let vortices: BTreeMap<usize, (char, VortexKind)> = plan
            .vortices
            .iter()
            .enumerate()
            .map(|(i, &(c, kd))| (i, (c, kd)))
            .collect();
        // enumerate loopless-or-looped multigraphs with these degrees
        let mut skeletons = Vec::new();
        enumerate_multigraphs(&degs, &mut skeletons);
        for edges in skeletons {
            let mut sk0 = Skeleton::new(degs.len());
            for &(a, b) in &edges {
                sk0.add_edge(a, b, false);
            }
            if !sk0.is_connected() {
                continue;
            }
            // all rotations per vertex
            let rotations = rotation_choices(&sk0);
            for rots in rotations {
                let mut sk = sk0.clone();
                for (v, ring) in rots.iter().enumerate() {
                    sk.set_rotation(v, ring.clone())?;
                }
                // twist assignments: none for orientable searches, all
                // subsets of a cotree otherwise
                let twist_sets = twist_choices(&sk, orientable);
                for twists in twist_sets {
                    let mut sk2 = sk.clone();
                    for &e in &twists {
                        sk2.set_twisted(e, true);
                    }
                    if sk2.trace_faces().len() != k {
                        stats.prunes += 1;
                        continue;
                    }
                    // currents: one value pair per edge, dead-end edges
                    // pinned to the order-2 element
                    let found = assign_currents(
                        &sk2,
                        n,
                        &names,
                        &vortices,
                        k,
                        orientable,
                        &mut stats,
                        node_cap,
                    )?;
                    if stats.nodes > node_cap {
                        return Ok(CurrentGraphOutcome {
                            status: SearchStatus::BudgetExceeded,
                            witness: None,
                            stats,
                        });
                    }
                    if let Some(cg) = found {
                        return Ok(CurrentGraphOutcome {
                            status: SearchStatus::Found,
                            witness: Some(cg),
                            stats,
                        });
                    }
                }
            }
        }
    }
    Ok(CurrentGraphOutcome {
        status: SearchStatus::ExhaustedNone,
        witness: None,
        stats,
    })
}

/// All multigraphs (loops allowed) with the given degree sequence, as
/// sorted edge lists. Vertices of equal degree and position class are
/// interchangeable, so duplicates are cheap but tolerable at these sizes.
fn enumerate_multigraphs(degs: &[usize], out: &mut Vec<Vec<(usize, usize)>>) {
    let mut stubs: Vec<usize> = degs.to_vec();
    let mut edges = Vec::new();
    fn rec(stubs: &mut Vec<usize>, edges: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some(a) = stubs.iter().position(|&s| s > 0) else {
            out.push(edges.clone());
            return;
        };
        // connect the lowest open stub; partner choice keeps edge lists
        // lexicographically non-decreasing to cut duplicates
        let last = edges.last().copied();
        for b in a..stubs.len() {
            let need = if b == a { 2 } else { 1 };
            if stubs[b] < need {
                continue;
            }
            if let Some(l) = last {
                if (a, b) < l {
                    continue;
                }
            }
            stubs[a] -= 1;
            stubs[b] -= 1;
            edges.push((a, b));
            rec(stubs, edges, out);
            edges.pop();
            stubs[a] += 1;
            stubs[b] += 1;
        }
    }
    rec(&mut stubs, &mut edges, out);
}

/// Cyclic rotation choices per vertex: the first dart is pinned, the rest
/// permute.
fn rotation_choices(sk: &Skeleton) -> Vec<Vec<Vec<usize>>> {
    let mut per_vertex: Vec<Vec<Vec<usize>>> = Vec::new();
    for v in 0..sk.vertex_count() {
        let darts: Vec<usize> = sk.rotation(v).to_vec();
        let mut choices = Vec::new();
        if darts.len() <= 2 {
            choices.push(darts.clone());
        } else {
            let mut rest: Vec<usize> = darts[1..].to_vec();
            rest.sort_unstable();
            loop {
                let mut ring = vec![darts[0]];
                ring.extend(rest.iter().copied());
                choices.push(ring);
                if !super::seeds_next_permutation(&mut rest) {
                    break;
                }
            }
        }
        per_vertex.push(choices);
    }
    // cartesian product
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for choices in per_vertex {
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for partial in &out {
            for c in &choices {
                let mut p = partial.clone();
                p.push(c.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn twist_choices(sk: &Skeleton, orientable: bool) -> Vec<Vec<usize>> {
    if orientable {
        return vec![Vec::new()];
    }
    // spanning tree edges stay normal (vertex-flip classes)
    let mut intree = vec![false; sk.edge_count()];
    let mut seen = vec![false; sk.vertex_count()];
    seen[0] = true;
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        for &d in sk.rotation(v) {
            let u = sk.dart_head(d);
            if !seen[u] {
                seen[u] = true;
                intree[crate::skeleton::edge_of(d)] = true;
                stack.push(u);
            }
        }
    }
    let free: Vec<usize> = (0..sk.edge_count()).filter(|&e| !intree[e]).collect();
    let mut out = Vec::new();
    for mask in 0..(1u32 << free.len()) {
        out.push(
            free.iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect(),
        );
    }
    out
}

/// Assigns currents to edges: distinct +/- value pairs, dead ends pinned
/// at the order-2 element, Kirchhoff's law checked the moment a plain
/// degree-3 vertex saturates.
#[allow(clippy::too_many_arguments)]
fn assign_currents(
    sk: &Skeleton,
    n: i64,
    names: &[String],
    vortices: &BTreeMap<usize, (char, VortexKind)>,
    index: usize,
    orientable: bool,
    stats: &mut SearchStats,
    node_cap: u64,
) -> Result<Option<CurrentGraph>> {
    let ecount = sk.edge_count();
    let md = |x: i64| x.rem_euclid(n);
    // dead-end edges first (forced), then the rest
    let mut order: Vec<usize> = (0..ecount).collect();
    order.sort_by_key(|&e| {
        let (a, b) = sk.endpoints(e);
        let dead = sk.degree(a) == 1 || sk.degree(b) == 1;
        (!dead, e)
    });
    let mut currents: Vec<i64> = vec![0; ecount];
    let mut used_pair = vec![false; (n as usize) / 2 + 1];
    let mut remaining_deg: Vec<usize> = (0..sk.vertex_count()).map(|v| sk.degree(v)).collect();
    let mut excess: Vec<i64> = vec![0; sk.vertex_count()];

    struct Ctx<'c> {
        sk: &'c Skeleton,
        n: i64,
        order: Vec<usize>,
        vortices: &'c BTreeMap<usize, (char, VortexKind)>,
        names: &'c [String],
        index: usize,
        orientable: bool,
        node_cap: u64,
    }
    let ctx = Ctx {
        sk,
        n,
        order,
        vortices,
        names,
        index,
        orientable,
        node_cap,
    };

    fn place(
        ctx: &Ctx,
        i: usize,
        currents: &mut Vec<i64>,
        used_pair: &mut Vec<bool>,
        remaining_deg: &mut Vec<usize>,
        excess: &mut Vec<i64>,
        stats: &mut SearchStats,
    ) -> Result<Option<CurrentGraph>> {
        if stats.nodes > ctx.node_cap {
            return Ok(None);
        }
        if i == ctx.order.len() {
            stats.embeddings_tested += 1;
            let cg = CurrentGraph {
                skeleton: ctx.sk.clone(),
                names: ctx.names.to_vec(),
                group_order: ctx.n,
                index: ctx.index,
                currents: currents.clone(),
                vortices: ctx.vortices.clone(),
            };
            if cg.validate().passed() {
                if let Ok(emb) = cg.derive() {
                    if emb
                        .rotation_system()
                        .is_orientable()
                        .is_ok_and(|o| o == ctx.orientable)
                    {
                        return Ok(Some(cg));
                    }
                }
            }
            return Ok(None);
        }
        let e = ctx.order[i];
        let (a, b) = ctx.sk.endpoints(e);
        let md = |x: i64| x.rem_euclid(ctx.n);
        let dead = ctx.sk.degree(a) == 1 || ctx.sk.degree(b) == 1;
        let vals: Vec<i64> = if dead {
            if ctx.n % 2 == 0 {
                vec![ctx.n / 2]
            } else {
                // a degree-1 vertex needs an order-2 element; none exists,
                // unless the vertex is a vortex, whose excess rule differs
                (1..ctx.n).collect()
            }
        } else {
            (1..ctx.n).collect()
        };
        for c in vals {
            stats.nodes += 1;
            let pair = (c.min(md(-c))) as usize;
            // each value pair may appear on one edge only (circuit coverage)
            if ctx.index == 1 && used_pair[pair] {
                stats.prunes += 1;
                continue;
            }
            currents[e] = c;
            if ctx.index == 1 {
                used_pair[pair] = true;
            }
            // update excesses: current into b is +c unless twisted, into a
            // is the mate current
            let tw = ctx.sk.is_twisted(e);
            let into_b = md(c);
            let into_a = if tw { md(c) } else { md(-c) };
            excess[b] += into_b;
            excess[a] += into_a;
            remaining_deg[a] -= 1;
            remaining_deg[b] -= 1;
            let mut ok = true;
            for &v in [a, b].iter() {
                if remaining_deg[v] == 0
                    && !ctx.vortices.contains_key(&v)
                    && ctx.sk.degree(v) == 3
                    && md(excess[v]) != 0
                {
                    ok = false;
                }
            }
            if ok {
                let res = place(ctx, i + 1, currents, used_pair, remaining_deg, excess, stats)?;
                if res.is_some() {
                    return Ok(res);
                }
            } else {
                stats.prunes += 1;
            }
            remaining_deg[a] += 1;
            remaining_deg[b] += 1;
            excess[b] -= into_b;
            excess[a] -= into_a;
            if ctx.index == 1 {
                used_pair[pair] = false;
            }
            currents[e] = 0;
        }
        Ok(None)
    }
    let _ = (md, orientable);
    place(
        &ctx,
        0,
        &mut currents,
        &mut used_pair,
        &mut remaining_deg,
        &mut excess,
        stats,
    )
}
