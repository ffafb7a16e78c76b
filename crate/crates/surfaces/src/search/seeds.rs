//! Canonical first-vertex rotations: automorphism enumeration by
//! backtracking and orbit representatives of cyclic neighbor orders under
//! the stabilizer of the seed vertex extended by reflection. Fixing the
//! seed vertex rotation to these representatives quotients the search by
//! relabelings and chirality without losing any embedding class.

use std::collections::BTreeMap;

/// Automorphisms of a graph over compact indices, by backtracking with
/// degree pruning. `limit` caps the number of group elements collected;
/// None is returned when the cap is hit.
pub fn automorphisms(n: usize, adj: &[Vec<bool>], limit: usize) -> Option<Vec<Vec<u8>>> {
    let deg: Vec<usize> = (0..n).map(|v| adj[v].iter().filter(|&&b| b).count()).collect();
    let mut out: Vec<Vec<u8>> = Vec::new();
    let mut img: Vec<u8> = vec![u8::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        v: usize,
        n: usize,
        adj: &[Vec<bool>],
        deg: &[usize],
        img: &mut Vec<u8>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<u8>>,
        limit: usize,
    ) -> bool {
        if out.len() > limit {
            return false;
        }
        if v == n {
            out.push(img.clone());
            return true;
        }
        for w in 0..n {
            if used[w] || deg[w] != deg[v] {
                continue;
            }
            let ok = (0..v).all(|u| adj[v][u] == adj[w][img[u] as usize]);
            if !ok {
                continue;
            }
            img[v] = w as u8;
            used[w] = true;
            if !rec(v + 1, n, adj, deg, img, used, out, limit) {
                return false;
            }
            used[w] = false;
            img[v] = u8::MAX;
        }
        true
    }
    if rec(0, n, adj, &deg, &mut img, &mut used, &mut out, limit) {
        Some(out)
    } else {
        None
    }
}

/// Rotates a sequence so its smallest element comes first.
fn normalize(seq: &mut Vec<u8>) {
    let k = seq
        .iter()
        .enumerate()
        .min_by_key(|&(_, v)| v)
        .map(|(i, _)| i)
        .unwrap();
    seq.rotate_left(k);
}

/// Representatives of the cyclic neighbor orders of `v0` under the
/// stabilizer of `v0` in the automorphism group, with reflection. Falls
/// back to a reflection-only quotient when the group is too large to
/// enumerate, which never loses embeddings, only dedup strength.
pub fn rotation_seeds(n: usize, adj: &[Vec<bool>], v0: usize) -> Vec<Vec<u8>> {
    let nbrs: Vec<u8> = (0..n as u8).filter(|&u| adj[v0][u as usize]).collect();
    let d = nbrs.len();
    if d <= 2 {
        return vec![nbrs];
    }
    let stab: Option<Vec<Vec<u8>>> = automorphisms(n, adj, 20_000)
        .map(|auts| auts.into_iter().filter(|g| g[v0] == v0 as u8).collect());
    // permutations of nbrs[1..] with nbrs[0] fixed kill the cyclic shift
    let mut perm: Vec<usize> = (1..d).collect();
    let mut reps: Vec<Vec<u8>> = Vec::new();
    let too_many_seqs = d > 10;
    loop {
        let mut seq: Vec<u8> = Vec::with_capacity(d);
        seq.push(nbrs[0]);
        seq.extend(perm.iter().map(|&i| nbrs[i]));
        // reflection quotient: keep the lexicographically smaller direction
        let mut refl = seq.clone();
        refl[1..].reverse();
        if seq <= refl {
            let is_rep = match (&stab, too_many_seqs) {
                (Some(stab), false) => stab.iter().all(|g| {
                    let mut img: Vec<u8> = seq.iter().map(|&x| g[x as usize]).collect();
                    normalize(&mut img);
                    let mut img_r = img.clone();
                    img_r[1..].reverse();
                    normalize(&mut img_r);
                    seq <= img && seq <= img_r
                }),
                _ => true,
            };
            if is_rep {
                reps.push(seq);
            }
        }
        // next permutation of perm
        if !next_permutation(&mut perm) {
            break;
        }
    }
    reps
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Canonical form of a labeled graph restricted to the vertices touched by
/// an edge set: the lexicographically smallest relabeled edge list over
/// permutations of the touched vertices that respect `classes` (vertices
/// may only map within their class).
pub fn canonical_subset_key(edges: &[(u8, u8)], classes: &BTreeMap<u8, u8>) -> Vec<(u8, u8)> {
    let mut touched: Vec<u8> = edges
        .iter()
        .flat_map(|&(a, b)| [a, b])
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    touched.sort();
    let k = touched.len();
    let mut best: Option<Vec<(u8, u8)>> = None;
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        let ok = perm.iter().enumerate().all(|(i, &j)| {
            classes.get(&touched[i]).copied().unwrap_or(0)
                == classes.get(&touched[j]).copied().unwrap_or(0)
        });
        if ok {
            let pos: BTreeMap<u8, u8> = touched
                .iter()
                .enumerate()
                .map(|(i, &v)| (v, perm[i] as u8))
                .collect();
            let mut relabeled: Vec<(u8, u8)> = edges
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (pos[&a], pos[&b]);
                    (x.min(y), x.max(y))
                })
                .collect();
            relabeled.sort();
            if best.as_ref().is_none_or(|b| relabeled < *b) {
                best = Some(relabeled);
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_adj(n: usize) -> Vec<Vec<bool>> {
        (0..n)
            .map(|i| (0..n).map(|j| i != j).collect())
            .collect()
    }

    #[test]
    fn k4_automorphisms() {
        let adj = complete_adj(4);
        assert_eq!(automorphisms(4, &adj, 1000).unwrap().len(), 24);
    }

    #[test]
    fn complete_graph_has_one_seed() {
        // all rotations of a complete-graph vertex are equivalent
        for n in [4, 5, 6, 7] {
            let adj = complete_adj(n);
            let reps = rotation_seeds(n, &adj, 0);
            assert_eq!(reps.len(), 1, "n={n}");
        }
    }

    #[test]
    fn subset_keys_distinguish_types() {
        let classes: BTreeMap<u8, u8> = BTreeMap::new();
        // 3-edge types over a complete graph: triangle, path, star,
        // path+edge, matching
        let tri = canonical_subset_key(&[(0, 1), (1, 2), (0, 2)], &classes);
        let path = canonical_subset_key(&[(0, 1), (1, 2), (2, 3)], &classes);
        let star = canonical_subset_key(&[(0, 1), (0, 2), (0, 3)], &classes);
        let pe = canonical_subset_key(&[(0, 1), (1, 2), (3, 4)], &classes);
        let mat = canonical_subset_key(&[(0, 1), (2, 3), (4, 5)], &classes);
        let keys = [&tri, &path, &star, &pe, &mat];
        for i in 0..keys.len() {
            for j in i + 1..keys.len() {
                assert_ne!(keys[i], keys[j]);
            }
        }
        // relabelings collapse
        let path2 = canonical_subset_key(&[(5, 3), (3, 8), (8, 1)], &classes);
        assert_eq!(path, path2);
    }
}
