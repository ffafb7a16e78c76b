use super::*;
use crate::current::VortexKind;

#[test]
fn k4_sphere_has_one_triangular_embedding() {
    let spec = SearchSpec::new(Graph::complete(4), SurfaceId::sphere());
    let mut found = Vec::new();
    let (stats, complete) = for_each_embedding(&spec, |emb| {
        found.push(emb.clone());
        true
    })
    .unwrap();
    assert!(complete);
    assert_eq!(found.len(), 1, "stats {stats:?}");
    assert!(found[0].is_triangular());
}

#[test]
fn k5_sphere_is_euler_infeasible() {
    let spec = SearchSpec::new(Graph::complete(5), SurfaceId::sphere());
    let mut count = 0;
    let (_, complete) = for_each_embedding(&spec, |_| {
        count += 1;
        true
    })
    .unwrap();
    assert!(complete);
    assert_eq!(count, 0);
    // and the multiset derivation already knows: F would need 7 faces of
    // total length 20 with girth 3, feasible, but embeddings don't exist
    // hmm: F = 2 - 5 + 10 = 7, 3*7 = 21 > 20: actually infeasible by count
    assert!(face_multisets(&Graph::complete(5), SurfaceId::sphere())
        .unwrap()
        .is_empty());
}

#[test]
fn k7_torus_triangular_found() {
    let spec = SearchSpec::new(Graph::complete(7), SurfaceId::orientable(1));
    let mut first = None;
    for_each_embedding(&spec, |emb| {
        first = Some(emb.clone());
        false
    })
    .unwrap();
    let emb = first.expect("triangular K7 in the torus exists");
    assert!(emb.is_triangular());
    assert_eq!(emb.surface(), SurfaceId::orientable(1));
}

#[test]
fn k5_sphere_kainen_drawing() {
    let out = find_kainen(&Graph::complete(5), SurfaceId::sphere(), Budget::Unlimited).unwrap();
    assert!(out.found());
    let d = out.witness.unwrap();
    assert_eq!(d.crossing_count(), 1);
    let rep = d.verify_kainen(&Graph::complete(5), SurfaceId::sphere());
    assert!(rep.passed(), "{rep}");
}

#[test]
fn k6_sphere_kainen_three_crossings() {
    let out = find_kainen(&Graph::complete(6), SurfaceId::sphere(), Budget::Unlimited).unwrap();
    assert!(out.found());
    assert_eq!(out.witness.unwrap().crossing_count(), 3);
}

#[test]
fn missing_edge_subset_types() {
    assert_eq!(missing_edge_subsets(&Graph::complete(9), 3).len(), 5);
    assert_eq!(missing_edge_subsets(&Graph::complete(9), 1).len(), 1);
    // bipartite: 1-subsets single type
    assert_eq!(
        missing_edge_subsets(&Graph::complete_bipartite(5, 9), 1).len(),
        1
    );
}

#[test]
fn current_graph_search_z7_plain() {
    let out = find_current_graph(7, 1, &VortexPlan::default(), true, Budget::Unlimited).unwrap();
    assert_eq!(out.status, SearchStatus::Found);
    let cg = out.witness.unwrap();
    let emb = cg.derive().unwrap();
    assert!(emb.is_triangular());
    assert_eq!(emb.surface(), SurfaceId::orientable(1));
    assert!(emb.graph().is_complete());
}

#[test]
fn current_graph_search_z7_three_vortices() {
    let plan = VortexPlan {
        vortices: vec![
            ('x', VortexKind::V3),
            ('y', VortexKind::V3),
            ('z', VortexKind::V3),
        ],
    };
    let out = find_current_graph(7, 1, &plan, true, Budget::Unlimited).unwrap();
    assert_eq!(out.status, SearchStatus::Found);
    let emb = out.witness.unwrap().derive().unwrap();
    assert_eq!(emb.surface(), SurfaceId::orientable(3));
    assert_eq!(emb.graph().vertex_count(), 10);
    assert_eq!(emb.graph().edge_count(), 42);
}

#[test]
fn current_graph_search_rejects_bad_index() {
    assert!(find_current_graph(5, 2, &VortexPlan::default(), true, Budget::Unlimited).is_err());
}

#[test]
fn conjecture_small_genera() {
    let out = conjecture_check(0, Budget::Unlimited).unwrap();
    assert!(out.found());
    assert_eq!(out.witness.unwrap().crossing_count(), 0);
    let out = conjecture_check(1, Budget::Unlimited).unwrap();
    assert!(out.found());
    assert_eq!(out.witness.unwrap().crossing_count(), 0);
    assert!(conjecture_check(2, Budget::Unlimited).is_err());
}

#[test]
fn budget_exhaustion_yields_checkpoint_and_resumes() {
    // tiny budget on a feasible search
    let out = find_drawing(
        &Graph::complete(7),
        SurfaceId::orientable(1),
        0,
        Budget::Nodes(5),
        false,
        None,
    )
    .unwrap();
    assert_eq!(out.status, SearchStatus::BudgetExceeded);
    let cp = out.checkpoint.clone().unwrap();
    // resuming with a real budget completes
    let out2 = find_drawing(
        &Graph::complete(7),
        SurfaceId::orientable(1),
        0,
        Budget::Unlimited,
        false,
        Some(cp),
    )
    .unwrap();
    assert!(out2.found());
}

#[test]
fn triangle_in_projective_plane() {
    // C3 with one twisted edge: single hexagonal face in N1
    let mut g = Graph::new();
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        g.add_edge(VertexId::num(a), VertexId::num(b));
    }
    let spec = SearchSpec {
        symmetry: false,
        ..SearchSpec::new(g, SurfaceId::nonorientable(1).unwrap())
    };
    let mut found = 0;
    let (stats, complete) = for_each_embedding(&spec, |emb| {
        assert_eq!(emb.faces().len(), 1);
        found += 1;
        true
    })
    .unwrap();
    assert!(complete);
    assert!(found > 0, "stats {stats:?}");
}

#[test]
fn k34_projectiveish_quadrangulation_exists() {
    let spec = SearchSpec {
        symmetry: false,
        ..SearchSpec::new(
            Graph::complete_bipartite(3, 4),
            SurfaceId::nonorientable(1).unwrap(),
        )
    };
    let mut found = 0;
    for_each_embedding(&spec, |_| {
        found += 1;
        false
    })
    .unwrap();
    assert!(found > 0);
}


#[test]
fn k34_n1_found_with_symmetry_pruning() {
    let spec = SearchSpec::new(
        Graph::complete_bipartite(3, 4),
        SurfaceId::nonorientable(1).unwrap(),
    );
    let mut found = 0;
    for_each_embedding(&spec, |_| {
        found += 1;
        false
    })
    .unwrap();
    assert!(found > 0);
}

/// Brute-force oracle: every rotation system of K4 (16 = 2^4 cyclic
/// orders) with every tree-normalized signature (8 = 2^3 cotree masks),
/// traced independently, gives the reference count of embeddings per
/// surface. The searcher with symmetry off must reproduce it exactly.
#[test]
fn searcher_matches_brute_force_on_k4() {
    use crate::rotation::RotationSystem;
    use std::collections::BTreeMap;
    let n = VertexId::num;
    let mut reference: BTreeMap<SurfaceId, usize> = BTreeMap::new();
    // rotations: vertex i has neighbors others; 2 cyclic orders each
    let others = |i: i64| -> Vec<i64> { (0..4).filter(|&j| j != i).collect() };
    // cotree edges of the BFS tree from 0 (tree: 0-1, 0-2, 0-3)
    let cotree = [(1i64, 2i64), (1, 3), (2, 3)];
    for rotmask in 0..16u32 {
        for sigmask in 0..8u32 {
            let mut rot: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
            for i in 0..4i64 {
                let mut ns = others(i);
                if rotmask >> i & 1 == 1 {
                    ns.swap(1, 2);
                }
                rot.insert(n(i), ns.into_iter().map(n).collect());
            }
            let twisted: std::collections::BTreeSet<Edge> = cotree
                .iter()
                .enumerate()
                .filter(|&(k, _)| sigmask >> k & 1 == 1)
                .map(|(_, &(a, b))| Edge::new(n(a), n(b)))
                .collect();
            let rs = RotationSystem::new(rot, twisted).unwrap();
            let emb = crate::embedding::trace_faces(&rs).unwrap();
            *reference.entry(emb.surface()).or_insert(0) += 1;
        }
    }
    // NB: eager resigning canonicalizes orientable systems, so the count
    // still reflects distinct (rotation, class) pairs.
    let surfaces: Vec<SurfaceId> = reference.keys().copied().collect();
    for s in surfaces {
        let mut got = 0usize;
        let spec = SearchSpec {
            symmetry: false,
            ..SearchSpec::new(Graph::complete(4), s)
        };
        for_each_embedding(&spec, |_| {
            got += 1;
            true
        })
        .unwrap();
        assert_eq!(
            got, reference[&s],
            "embedding count mismatch on {s}: searcher {got}, brute force {}",
            reference[&s]
        );
    }
}

#[test]
fn seeded_signed_search_finds_k7_minus_edge() {
    // K7 - (0,1) in N2: seeding the known witness rotation at its vertex
    // must still find embeddings
    let mut g = Graph::complete(7);
    g.remove_edge(VertexId::num(0), VertexId::num(1));
    let idx = index_graph(&g).unwrap();
    let budget = FaceBudget::from_counts(&[(3, 12), (4, 1)]);
    let mut count = 0u64;
    {
        let mut emit = |_: &RawEmbedding| -> bool {
            count += 1;
            true
        };
        let mut searcher =
            super::core::Searcher::new(idx.verts.len(), &idx.edges, budget, Box::new(&mut emit));
        searcher.explore_signatures();
        searcher.seed_rotation(2, &[0, 3, 4, 1, 5, 6]);
        searcher.run();
    }
    assert!(count > 0, "seeded search lost all embeddings");
}

#[test]
fn run_one_multiset_seeds_cover_k7_minus_edge() {
    let mut g = Graph::complete(7);
    g.remove_edge(VertexId::num(0), VertexId::num(1));
    let idx = index_graph(&g).unwrap();
    let v0 = (0..idx.verts.len())
        .max_by_key(|&v| idx.adj[v].iter().filter(|&&b| b).count())
        .unwrap();
    let reps = rotation_seeds(idx.verts.len(), &idx.adj, v0);
    eprintln!("v0={v0} reps={reps:?}");
    let opts = RunOpts {
        budget: Budget::Unlimited,
        orientable: false,
        cyclic: None,
        symmetry: true,
        hamiltonian: Vec::new(),
        resume: None,
    };
    let mut count = 0u64;
    let mut emit = |_: &RawEmbedding| -> bool {
        count += 1;
        true
    };
    let (stats, _, _) = run_one_multiset(&idx, &[(3, 12), (4, 1)], &opts, &mut emit);
    eprintln!("stats {stats:?}");
    assert!(count > 0);
}

#[test]
fn seed_mechanics_at_v6() {
    let mut g = Graph::complete(7);
    g.remove_edge(VertexId::num(0), VertexId::num(1));
    // grab raw witness rings at vertex 6 from the unseeded search
    let spec = SearchSpec {
        symmetry: false,
        ..SearchSpec::new(g.clone(), SurfaceId::nonorientable(2).unwrap())
    };
    let mut witness_rings: Vec<Vec<usize>> = Vec::new();
    for_each_embedding(&spec, |emb| {
        let ring: Vec<usize> = emb
            .rotation_system()
            .rotation(VertexId::num(6))
            .unwrap()
            .iter()
            .map(|v| match v {
                VertexId::Num(k) => *k as usize,
                _ => unreachable!(),
            })
            .collect();
        witness_rings.push(ring);
        true
    })
    .unwrap();
    let idx = index_graph(&g).unwrap();
    let try_seed = |ring: &[usize]| -> u64 {
        let mut count = 0u64;
        {
            let mut emit = |_: &RawEmbedding| -> bool {
                count += 1;
                true
            };
            let mut searcher = super::core::Searcher::new(
                idx.verts.len(),
                &idx.edges,
                FaceBudget::from_counts(&[(3, 12), (4, 1)]),
                Box::new(&mut emit),
            );
            searcher.explore_signatures();
            searcher.seed_rotation(6, ring);
            searcher.run();
        }
        count
    };
    let raw = try_seed(&witness_rings[0]);
    eprintln!("raw witness ring {:?} -> {raw}", witness_rings[0]);
    for rep in [
        vec![0, 1, 2, 3, 4, 5],
        vec![0, 2, 1, 3, 4, 5],
        vec![0, 2, 3, 1, 4, 5],
    ] {
        let c = try_seed(&rep);
        eprintln!("rep {rep:?} -> {c}");
    }
    assert!(raw > 0);
}

#[test]
fn seeded_signed_k4_projective() {
    let g = Graph::complete(4);
    let idx = index_graph(&g).unwrap();
    for seed in [None, Some(vec![0usize, 1, 2])] {
        let mut count = 0u64;
        {
            let mut emit = |_: &RawEmbedding| -> bool {
                count += 1;
                true
            };
            // N1: chi = 1, F = 3; multisets (3,3,6),(3,4,5),(4,4,4)
            for counts in [
                vec![(3usize, 2usize), (6, 1)],
                vec![(3, 1), (4, 1), (5, 1)],
                vec![(4, 3)],
            ] {
                let mut searcher = super::core::Searcher::new(
                    idx.verts.len(),
                    &idx.edges,
                    FaceBudget::from_counts(&counts),
                    Box::new(&mut emit),
                );
                searcher.explore_signatures();
                if let Some(ring) = &seed {
                    searcher.seed_rotation(3, ring);
                }
                searcher.run();
            }
        }
        eprintln!("seed {seed:?} -> {count}");
        assert!(count > 0, "seed {seed:?} lost everything");
    }
}

#[test]
fn relabeled_witness_is_reachable_when_fully_pinned() {
    // take a K7-e N2 witness, relabel by the stabilizer element that
    // canonizes its ring at vertex 6, tree-normalize, pin everything into
    // the searcher and check the walk accepts it
    let mut g = Graph::complete(7);
    g.remove_edge(VertexId::num(0), VertexId::num(1));
    let spec = SearchSpec {
        symmetry: false,
        ..SearchSpec::new(g.clone(), SurfaceId::nonorientable(2).unwrap())
    };
    let mut witness = None;
    for_each_embedding(&spec, |emb| {
        witness = Some(emb.clone());
        false
    })
    .unwrap();
    let emb = witness.unwrap();
    // g: 0->0 1->1 4->2 5->3 3->4 2->5 6->6
    let gmap = |v: VertexId| -> VertexId {
        match v {
            VertexId::Num(0) => VertexId::num(0),
            VertexId::Num(1) => VertexId::num(1),
            VertexId::Num(4) => VertexId::num(2),
            VertexId::Num(5) => VertexId::num(3),
            VertexId::Num(3) => VertexId::num(4),
            VertexId::Num(2) => VertexId::num(5),
            VertexId::Num(6) => VertexId::num(6),
            _ => unreachable!(),
        }
    };
    let mut rot = std::collections::BTreeMap::new();
    let mut twisted = std::collections::BTreeSet::new();
    for v in emb.rotation_system().vertices() {
        rot.insert(
            gmap(v),
            emb.rotation_system()
                .rotation(v)
                .unwrap()
                .iter()
                .map(|&u| gmap(u))
                .collect::<Vec<_>>(),
        );
    }
    for e in emb.rotation_system().twisted_edges() {
        twisted.insert(Edge::new(gmap(e.0), gmap(e.1)));
    }
    let rs = crate::rotation::RotationSystem::new(rot, twisted).unwrap();
    let m = crate::embedding::trace_faces(&rs).unwrap();
    assert_eq!(m.surface(), SurfaceId::nonorientable(2).unwrap());
    eprintln!("relabeled rot(6) = {:?}", rs.rotation(VertexId::num(6)));
    // the relabeled system may not be tree-normalized; re-normalize by
    // flips so that the star-at-0-ish tree edges are normal, keeping 6
    // unflipped -- derive flips from twist parity along the tree
    // tree edges: (0,2),(0,3),(0,4),(0,5),(0,6),(1,2)
    let tree: [(i64, i64); 6] = [(0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (1, 2)];
    let mut par = std::collections::BTreeMap::from([(6i64, false)]);
    // BFS over the tree from 6
    for _ in 0..7 {
        for &(a, b) in &tree {
            let (pa, pb) = (par.get(&a).copied(), par.get(&b).copied());
            let tw = rs.is_twisted(Edge::new(VertexId::num(a), VertexId::num(b)));
            match (pa, pb) {
                (Some(x), None) => {
                    par.insert(b, x ^ tw);
                }
                (None, Some(x)) => {
                    par.insert(a, x ^ tw);
                }
                _ => {}
            }
        }
    }
    let flips: Vec<VertexId> = par
        .iter()
        .filter(|&(_, &f)| f)
        .map(|(&v, _)| VertexId::num(v))
        .collect();
    let mut rs2 = rs.clone();
    rs2.apply_flips(&flips);
    eprintln!("normalized rot(6) = {:?}", rs2.rotation(VertexId::num(6)));
    eprintln!("normalized twists = {:?}", rs2.twisted_edges());
    let m2 = crate::embedding::trace_faces(&rs2).unwrap();
    assert_eq!(m2.surface(), SurfaceId::nonorientable(2).unwrap());
    // now pin everything into the searcher
    let idx = index_graph(&g).unwrap();
    let mut count = 0u64;
    {
        let mut emit = |_: &RawEmbedding| -> bool {
            count += 1;
            true
        };
        let mut searcher = super::core::Searcher::new(
            idx.verts.len(),
            &idx.edges,
            FaceBudget::from_counts(&[(3, 12), (4, 1)]),
            Box::new(&mut emit),
        );
        searcher.explore_signatures();
        for v in 0..7i64 {
            let ring: Vec<usize> = rs2
                .rotation(VertexId::num(v))
                .unwrap()
                .iter()
                .map(|u| match u {
                    VertexId::Num(k) => *k as usize,
                    _ => unreachable!(),
                })
                .collect();
            searcher.seed_rotation(v as usize, &ring);
        }
        for e in g.edges() {
            let (VertexId::Num(a), VertexId::Num(b)) = (e.0, e.1) else {
                unreachable!()
            };
            searcher.seed_lambda(a as usize, b as usize, rs2.is_twisted(e));
        }
        searcher.run();
    }
    eprintln!("fully pinned -> {count}");
    assert_eq!(count, 1, "the fully pinned embedding must be traced");
}

#[test]
fn bisect_seeded_failure() {
    let mut g = Graph::complete(7);
    g.remove_edge(VertexId::num(0), VertexId::num(1));
    let idx = index_graph(&g).unwrap();
    let lam: [(usize, usize); 5] = [(1, 4), (1, 5), (2, 4), (2, 5), (3, 5)];
    // (a) rot(6) seeded + full signature pinned, rotations free
    for mode in ["rot6+lambda", "rot6 only", "lambda only"] {
        let mut count = 0u64;
        {
            let mut emit = |_: &RawEmbedding| -> bool {
                count += 1;
                true
            };
            let mut searcher = super::core::Searcher::new(
                idx.verts.len(),
                &idx.edges,
                FaceBudget::from_counts(&[(3, 12), (4, 1)]),
                Box::new(&mut emit),
            );
            searcher.explore_signatures();
            if mode != "lambda only" {
                searcher.seed_rotation(6, &[0, 2, 1, 3, 4, 5]);
            }
            if mode != "rot6 only" {
                for e in idx.edges.iter() {
                    let tw = lam.contains(&(e.0, e.1)) || lam.contains(&(e.1, e.0));
                    searcher.seed_lambda(e.0, e.1, tw);
                }
            }
            searcher.run();
        }
        eprintln!("{mode} -> {count}");
    }
}

#[test]
fn shrink_seeded_signed_failure() {
    // look for small cases where seeding vertex rotations loses coverage
    for (name, g, surf) in [
        ("K5 N1", Graph::complete(5), SurfaceId::nonorientable(1).unwrap()),
        (
            "K5-e N1",
            {
                let mut g = Graph::complete(5);
                g.remove_edge(VertexId::num(0), VertexId::num(1));
                g
            },
            SurfaceId::nonorientable(1).unwrap(),
        ),
        (
            "K6 N1",
            Graph::complete(6),
            SurfaceId::nonorientable(1).unwrap(),
        ),
        (
            "K7-e N2",
            {
                let mut g = Graph::complete(7);
                g.remove_edge(VertexId::num(0), VertexId::num(1));
                g
            },
            SurfaceId::nonorientable(2).unwrap(),
        ),
    ] {
        let mut unseeded = 0u64;
        let spec = SearchSpec {
            symmetry: false,
            ..SearchSpec::new(g.clone(), surf)
        };
        for_each_embedding(&spec, |_| {
            unseeded += 1;
            true
        })
        .unwrap();
        let mut seeded = 0u64;
        let spec = SearchSpec {
            symmetry: true,
            ..SearchSpec::new(g.clone(), surf)
        };
        for_each_embedding(&spec, |_| {
            seeded += 1;
            true
        })
        .unwrap();
        eprintln!("{name}: unseeded={unseeded} seeded={seeded}");
    }
}

#[test]
#[ignore]
fn debug_target_walkthrough() {
    let mut g = Graph::complete(7);
    g.remove_edge(VertexId::num(0), VertexId::num(1));
    let spec = SearchSpec {
        symmetry: false,
        ..SearchSpec::new(g.clone(), SurfaceId::nonorientable(2).unwrap())
    };
    let mut witness = None;
    for_each_embedding(&spec, |emb| {
        witness = Some(emb.clone());
        false
    })
    .unwrap();
    let emb = witness.unwrap();
    let gmap = |v: VertexId| -> usize {
        match v {
            VertexId::Num(0) => 0,
            VertexId::Num(1) => 1,
            VertexId::Num(4) => 2,
            VertexId::Num(5) => 3,
            VertexId::Num(3) => 4,
            VertexId::Num(2) => 5,
            VertexId::Num(6) => 6,
            _ => unreachable!(),
        }
    };
    // relabeled + tree-normalized target from the earlier experiment
    let mut rot = std::collections::BTreeMap::new();
    let mut twisted = std::collections::BTreeSet::new();
    for v in emb.rotation_system().vertices() {
        rot.insert(
            VertexId::num(gmap(v) as i64),
            emb.rotation_system()
                .rotation(v)
                .unwrap()
                .iter()
                .map(|&u| VertexId::num(gmap(u) as i64))
                .collect::<Vec<_>>(),
        );
    }
    for e in emb.rotation_system().twisted_edges() {
        twisted.insert(Edge::new(
            VertexId::num(gmap(e.0) as i64),
            VertexId::num(gmap(e.1) as i64),
        ));
    }
    let mut rs = crate::rotation::RotationSystem::new(rot, twisted).unwrap();
    let tree: [(i64, i64); 6] = [(0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (1, 2)];
    let mut par = std::collections::BTreeMap::from([(6i64, false)]);
    for _ in 0..7 {
        for &(a, b) in &tree {
            let tw = rs.is_twisted(Edge::new(VertexId::num(a), VertexId::num(b)));
            match (par.get(&a).copied(), par.get(&b).copied()) {
                (Some(x), None) => {
                    par.insert(b, x ^ tw);
                }
                (None, Some(x)) => {
                    par.insert(a, x ^ tw);
                }
                _ => {}
            }
        }
    }
    let flips: Vec<VertexId> = par
        .iter()
        .filter(|&(_, &f)| f)
        .map(|(&v, _)| VertexId::num(v))
        .collect();
    rs.apply_flips(&flips);
    // build the target succ table
    let mut target = vec![[u8::MAX; MAXN]; 7];
    for v in 0..7i64 {
        let ring = rs.rotation(VertexId::num(v)).unwrap();
        for i in 0..ring.len() {
            let VertexId::Num(a) = ring[i] else { unreachable!() };
            let VertexId::Num(b) = ring[(i + 1) % ring.len()] else {
                unreachable!()
            };
            target[v as usize][a as usize] = b as u8;
        }
    }
    let idx = index_graph(&g).unwrap();
    let mut count = 0u64;
    {
        let mut emit = |_: &RawEmbedding| -> bool {
            count += 1;
            true
        };
        let mut searcher = super::core::Searcher::new(
            idx.verts.len(),
            &idx.edges,
            FaceBudget::from_counts(&[(3, 12), (4, 1)]),
            Box::new(&mut emit),
        );
        searcher.explore_signatures();
        searcher.debug_target = Some(target);
        let ring: Vec<usize> = rs
            .rotation(VertexId::num(6))
            .unwrap()
            .iter()
            .map(|u| match u {
                VertexId::Num(k) => *k as usize,
                _ => unreachable!(),
            })
            .collect();
        for e in g.edges() {
            let (VertexId::Num(a), VertexId::Num(b)) = (e.0, e.1) else {
                unreachable!()
            };
            searcher.seed_lambda(a as usize, b as usize, rs.is_twisted(e));
        }
        searcher.seed_rotation(6, &ring);
        searcher.run();
    }
    eprintln!("target run count={count}");
}
