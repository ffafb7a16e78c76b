use std::time::Instant;
use surfaces::graph::Graph;
use surfaces::search::*;
use surfaces::surface::SurfaceId;

fn main() {
    let which = std::env::args().nth(1).unwrap_or_default();
    match which.as_str() {
        "k9" => {
            // criterion 7a: K9 in S2 admits no <=3-crossing drawing
            let t = Instant::now();
            let out = prove_nonexistence(
                &Graph::complete(9),
                SurfaceId::orientable(2),
                3,
                Budget::Unlimited,
            )
            .unwrap();
            println!("K9 S2 <=3: {:?} nodes={} tested={} in {:?}", out.status, out.stats.nodes, out.stats.embeddings_tested, t.elapsed());
        }
        "k9exc" => {
            let t = Instant::now();
            let out = find_drawing(&Graph::complete(9), SurfaceId::orientable(2), 4, Budget::Unlimited, false, None).unwrap();
            println!("K9 S2 =4: {:?} nodes={} in {:?}", out.status, out.stats.nodes, t.elapsed());
        }
        "k10" => {
            let t = Instant::now();
            let out = find_kainen(&Graph::complete(10), SurfaceId::orientable(3), Budget::Unlimited).unwrap();
            println!("K10 S3: {:?} nodes={} tested={} in {:?}", out.status, out.stats.nodes, out.stats.embeddings_tested, t.elapsed());
        }
        "k55" => {
            let t = Instant::now();
            let out = prove_nonexistence(
                &Graph::complete_bipartite(5, 5),
                SurfaceId::orientable(2),
                1,
                Budget::Unlimited,
            )
            .unwrap();
            println!("K55 S2 <=1: {:?} nodes={} tested={} in {:?}", out.status, out.stats.nodes, out.stats.embeddings_tested, t.elapsed());
        }
        "k7n2" => {
            let t = Instant::now();
            let out = prove_nonexistence(&Graph::complete(7), SurfaceId::nonorientable(2).unwrap(), 0, Budget::Unlimited).unwrap();
            println!("K7 N2 embed: {:?} nodes={} in {:?}", out.status, out.stats.nodes, t.elapsed());
            let t = Instant::now();
            let out = find_drawing(&Graph::complete(7), SurfaceId::nonorientable(2).unwrap(), 1, Budget::Unlimited, false, None).unwrap();
            println!("K7 N2 1cr: {:?} nodes={} in {:?}", out.status, out.stats.nodes, t.elapsed());
        }
        "k8n3" => {
            // K8-K2 has no triangular embedding in N3; K8 2-crossing drawing exists
            let t = Instant::now();
            let mut g = Graph::complete(8);
            g.remove_edge(surfaces::VertexId::Num(0), surfaces::VertexId::Num(1));
            let spec = SearchSpec {
                faces: Some(vec![(3, 18)]),
                ..SearchSpec::new(g, SurfaceId::nonorientable(3).unwrap())
            };
            let mut count = 0u64;
            let (stats, complete) = for_each_embedding(&spec, |_| { count += 1; true }).unwrap();
            println!("K8-K2 N3 triangular: count={count} complete={complete} nodes={} in {:?}", stats.nodes, t.elapsed());
            let t = Instant::now();
            let out = find_drawing(&Graph::complete(8), SurfaceId::nonorientable(3).unwrap(), 2, Budget::Unlimited, false, None).unwrap();
            println!("K8 N3 2cr: {:?} nodes={} in {:?}", out.status, out.stats.nodes, t.elapsed());
        }
        "k8" => {
            let t = Instant::now();
            let out = find_drawing(&Graph::complete(8), SurfaceId::orientable(1), 4, Budget::Unlimited, false, None).unwrap();
            println!("K8 S1 =4: {:?} nodes={} in {:?}", out.status, out.stats.nodes, t.elapsed());
        }
        "quads" => {
            for (m, n, g, orient) in [(3usize, 6usize, 1u32, true), (4, 4, 1, true), (3, 4, 1, false), (4, 5, 3, false)] {
                let t = Instant::now();
                let surf = if orient { SurfaceId::orientable(g) } else { SurfaceId::nonorientable(g).unwrap() };
                let spec = SearchSpec::new(Graph::complete_bipartite(m, n), surf);
                let mut first = None;
                for_each_embedding(&spec, |e| { first = Some(e.clone()); false }).unwrap();
                println!("K{m},{n} {surf} quad: found={} in {:?}", first.is_some(), t.elapsed());
            }
        }
        "k57" => {
            let t = Instant::now();
            let out = find_kainen(&Graph::complete_bipartite(5, 7), SurfaceId::orientable(3), Budget::Unlimited).unwrap();
            println!("K57 S3: {:?} crossings={:?} nodes={} in {:?}", out.status, out.witness.map(|w| w.crossing_count()), out.stats.nodes, t.elapsed());
        }
        "k59" => {
            let t = Instant::now();
            let out = find_kainen(&Graph::complete_bipartite(5, 9), SurfaceId::orientable(5), Budget::Unlimited).unwrap();
            println!("K59 S5: {:?} crossings={:?} nodes={} in {:?}", out.status, out.witness.map(|w| w.crossing_count()), out.stats.nodes, t.elapsed());
        }
        "k7e" => {
            let mut g = Graph::complete(7);
            g.remove_edge(surfaces::VertexId::Num(0), surfaces::VertexId::Num(1));
            let spec = SearchSpec { symmetry: std::env::args().nth(2).is_none(), ..SearchSpec::new(g, SurfaceId::nonorientable(2).unwrap()) };
            let mut count = 0u64;
            let mut completable = 0u64;
            for_each_embedding(&spec, |emb| {
                count += 1;
                let d = surfaces::drawing::Drawing::from_embedding(emb.clone());
                let missing = vec![surfaces::Edge::new(surfaces::VertexId::Num(0), surfaces::VertexId::Num(1))];
                if surfaces::drawing::complete_kainen(&d, &missing).is_some() { completable += 1; }
                true
            }).unwrap();
            println!("K7-e N2: embeddings={count} completable={completable}");
        }
        "k9sub" => {
            // K9 minus each 4-subset type: count embeddings in S2
            let g = Graph::complete(9);
            let subsets = missing_edge_subsets(&g, 4);
            println!("{} subset types", subsets.len());
            for (i, sub) in subsets.iter().enumerate() {
                let mut gg = g.clone();
                for e in sub { gg.remove_edge(e.0, e.1); }
                let spec = SearchSpec::new(gg, SurfaceId::orientable(2));
                let mut count = 0u64;
                let mut completable = 0u64;
                let t = Instant::now();
                for_each_embedding(&spec, |emb| {
                    count += 1;
                    let d = surfaces::drawing::Drawing::from_embedding(emb.clone());
                    if surfaces::drawing::complete_kainen(&d, sub).is_some() { completable += 1; }
                    true
                }).unwrap();
                println!("type {i} {sub:?}: embeddings={count} completable={completable} in {:?}", t.elapsed());
            }
        }
        "seedprobe" => {
            // collect rot(v0) rings of all K7-e N2 embeddings found without
            // seeds; compare against the rep list
            let mut g = Graph::complete(7);
            g.remove_edge(surfaces::VertexId::Num(0), surfaces::VertexId::Num(1));
            let spec = SearchSpec { symmetry: false, ..SearchSpec::new(g.clone(), SurfaceId::nonorientable(2).unwrap()) };
            let mut rings = std::collections::BTreeSet::new();
            for_each_embedding(&spec, |emb| {
                let ring: Vec<i64> = emb.rotation_system().rotation(surfaces::VertexId::Num(2)).unwrap().iter().map(|v| match v { surfaces::VertexId::Num(k) => *k, _ => -1 }).collect();
                rings.insert(ring);
                true
            }).unwrap();
            println!("distinct rot(2) rings among witnesses: {}", rings.len());
            for r in &rings { println!("  {r:?}"); }
            // reps
            let verts: Vec<i64> = (0..7).collect();
            let adj: Vec<Vec<bool>> = verts.iter().map(|&i| verts.iter().map(|&j| i != j && !(i+j == 1 && i*j == 0)).collect()).collect();
            let reps = rotation_seeds(7, &adj, 2);
            println!("reps at v0=2: {}", reps.len());
            for r in &reps { println!("  {r:?}"); }
        }
        "k12" => {
            for p in [3usize, 4, 6, 2] {
                let t = Instant::now();
                let spec = SearchSpec {
                    cyclic: Some((p, 12)),
                    symmetry: false,
                    faces: Some(vec![(3, 44)]),
                    budget: Budget::Nodes(2_000_000_000),
                    ..SearchSpec::new(Graph::complete(12), SurfaceId::orientable(3))
                };
                let mut first = None;
                let (stats, complete) = for_each_embedding(&spec, |e| { first = Some(e.clone()); false }).unwrap();
                println!("K12 S3 cyclic{p}: found={} complete={complete} nodes={} in {:?}", first.is_some(), stats.nodes, t.elapsed());
                if first.is_some() { break; }
            }
        }
        "k7sym" => {
            let t = Instant::now();
            let spec = SearchSpec {
                cyclic: Some((7, 7)),
                symmetry: false,
                ..SearchSpec::new(Graph::complete(7), SurfaceId::orientable(1))
            };
            let mut count = 0;
            for_each_embedding(&spec, |_| { count += 1; true }).unwrap();
            println!("K7 S1 cyclic7: count={count} in {:?}", t.elapsed());
        }
        "k13b" => {
            let t = Instant::now();
            let plan = VortexPlan { vortices: vec![('x', surfaces::current::VortexKind::V3), ('y', surfaces::current::VortexKind::V3), ('z', surfaces::current::VortexKind::V3)] };
            let out = find_current_graph(10, 2, &plan, true, Budget::Nodes(500_000_000)).unwrap();
            println!("Z10 index2 cg: {:?} nodes={} in {:?}", out.status, out.stats.nodes, t.elapsed());
            if let Some(cg) = out.witness {
                let emb = cg.derive().unwrap();
                let d = surfaces::drawing::Drawing::from_embedding(emb);
                let missing: Vec<surfaces::Edge> = [('x','y'),('y','z'),('x','z')].iter().map(|&(a,b)| surfaces::Edge::new(surfaces::VertexId::letter(a), surfaces::VertexId::letter(b))).collect();
                println!("completable: {}", surfaces::drawing::complete_kainen(&d, &missing).is_some());
            }
        }
        "k13" => {
            let t = Instant::now();
            let plan = VortexPlan { vortices: vec![('x', surfaces::current::VortexKind::V3), ('y', surfaces::current::VortexKind::V3), ('z', surfaces::current::VortexKind::V3)] };
            let out = find_current_graph(10, 1, &plan, true, Budget::Unlimited).unwrap();
            println!("Z10 cg: {:?} in {:?}", out.status, t.elapsed());
            if let Some(cg) = out.witness {
                let emb = cg.derive().unwrap();
                println!("derived: {} vertices {} edges {}", emb.graph().vertex_count(), emb.graph().edge_count(), emb.surface());
                // completion of the triangle on letters
                let d = surfaces::drawing::Drawing::from_embedding(emb);
                let missing: Vec<surfaces::Edge> = [('x','y'),('y','z'),('x','z')].iter().map(|&(a,b)| surfaces::Edge::new(surfaces::VertexId::letter(a), surfaces::VertexId::letter(b))).collect();
                let done = surfaces::drawing::complete_kainen(&d, &missing);
                println!("completable: {}", done.is_some());
            }
        }
        "k14" => {
            // letter-free symmetric search: K12 numbered with 2 hamiltonian faces
            let t = Instant::now();
            let spec = SearchSpec {
                cyclic: Some((4, 12)),
                symmetry: false,
                faces: Some(vec![(3, 36), (12, 2)]),
                hamiltonian_lengths: vec![12],
                ..SearchSpec::new(Graph::complete(12), SurfaceId::orientable(9))
            };
            let mut count = 0u64;
            let mut first = None;
            for_each_embedding(&spec, |e| { count += 1; first = Some(e.clone()); count > 5 }).unwrap();
            println!("K14 base cyclic4: found={count} in {:?}", t.elapsed());
            let _ = first;
        }
        "k65" => {
            let t = Instant::now();
            let out = find_drawing(&Graph::complete_bipartite(6, 5), SurfaceId::orientable(2), 4, Budget::Unlimited, false, None).unwrap();
            println!("K65 S2 =4: {:?} nodes={} in {:?}", out.status, out.stats.nodes, t.elapsed());
        }
        "nonor" => {
            for (n, k) in [(6usize, 1u32), (9, 5), (10, 7)] {
                let t = Instant::now();
                let out = find_drawing(&Graph::complete(n), SurfaceId::nonorientable(k).unwrap(), 0, Budget::Nodes(50_000_000), false, None).unwrap();
                println!("K{n} N{k}: {:?} nodes={} in {:?}", out.status, out.stats.nodes, t.elapsed());
            }
        }
        "nonorcg" => {
            for (n, k) in [(10i64, 1usize), (13, 1)] {
                let t = Instant::now();
                let out = find_current_graph(n, k, &VortexPlan::default(), false, Budget::Nodes(100_000_000)).unwrap();
                println!("Z{n} nonorientable cg: {:?} in {:?}", out.status, t.elapsed());
                if let Some(cg) = out.witness {
                    let emb = cg.derive().unwrap();
                    println!("  derived {} in {}", emb.graph().vertex_count(), emb.surface());
                }
            }
        }
        "k1213n" => {
            for (n, k) in [(12usize, 12u32), (13, 15)] {
                let t = Instant::now();
                let out = find_drawing(&Graph::complete(n), SurfaceId::nonorientable(k).unwrap(), 0, Budget::Nodes(20_000_000), false, None).unwrap();
                println!("K{n} N{k}: {:?} nodes={} in {:?}", out.status, out.stats.nodes, t.elapsed());
            }
        }
        other => println!("unknown bench {other}"),
    }
}
// appended probes
