//! Closed-form genus and crossing-bound formulas for complete and complete
//! bipartite graphs, the girth-based Euler edge bound, and Kainen's lower
//! bound on surface crossing numbers. Everything here is exact integer
//! arithmetic.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::surface::SurfaceId;
use crate::{Error, Result};

/// Genus and crossing-bound profile of K_n or K_{m,n}.
///
/// `h_or` and `h_non` are the floor variants of the genus formulas; `t_or`
/// and `t_non` are the crossing lower bounds in the surfaces of genus
/// `h_or` (orientable) and `h_non` (nonorientable).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusProfile {
    pub family: GraphFamily,
    pub genus_or: u32,     // H
    pub h_or: u32,         // h
    pub genus_non: u32,    // H'
    pub h_non: u32,        // h'
    pub t_or: u32,         // t
    pub t_non: u32,        // t'
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphFamily {
    Complete { n: u32 },
    Bipartite { m: u32, n: u32 },
}

fn ceil_div(a: i64, b: i64) -> i64 {
    (a + b - 1).div_euclid(b)
}

/// Profile of the complete graph K_n, n >= 3.
pub fn complete_profile(n: u32) -> Result<GenusProfile> {
    if n < 3 {
        return Err(Error::input("complete_profile requires n >= 3"));
    }
    let p = (n as i64 - 3) * (n as i64 - 4);
    let half = p / 2; // p is a product of consecutive-parity integers, always even
    Ok(GenusProfile {
        family: GraphFamily::Complete { n },
        genus_or: ceil_div(p, 12) as u32,
        h_or: (p / 12) as u32,
        genus_non: ceil_div(p, 6) as u32,
        h_non: (p / 6) as u32,
        t_or: (half % 6) as u32,
        t_non: (half % 3) as u32,
    })
}

/// Profile of the complete bipartite graph K_{m,n}, m, n >= 2.
pub fn bipartite_profile(m: u32, n: u32) -> Result<GenusProfile> {
    if m < 2 || n < 2 {
        return Err(Error::input("bipartite_profile requires m, n >= 2"));
    }
    let p = (m as i64 - 2) * (n as i64 - 2);
    Ok(GenusProfile {
        family: GraphFamily::Bipartite { m, n },
        genus_or: ceil_div(p, 4) as u32,
        h_or: (p / 4) as u32,
        genus_non: ceil_div(p, 2) as u32,
        h_non: (p / 2) as u32,
        t_or: (p % 4) as u32,
        t_non: if m % 2 == 1 && n % 2 == 1 { 1 } else { 0 },
    })
}

/// Edge bound from the Euler polyhedral formula: a simple connected graph of
/// girth `girth` embedded in a surface of Euler characteristic `chi` has at
/// most floor(l/(l-2) * (V - chi)) edges.
pub fn euler_edge_bound(v_count: i64, chi: i64, girth: i64) -> i64 {
    assert!(girth >= 3);
    (girth * (v_count - chi)).div_euclid(girth - 2)
}

/// Kainen's lower bound on the number of crossings of any drawing of `g` in
/// `s`: the edge surplus over the Euler bound, clamped at zero. Exact
/// rational arithmetic (via ceiling division) before clamping.
pub fn kainen_lower_bound(g: &Graph, s: SurfaceId) -> Result<i64> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let girth = g.girth()? as i64;
    let bound = euler_edge_bound(g.vertex_count() as i64, s.euler_characteristic(), girth);
    Ok((g.edge_count() as i64 - bound).max(0))
}

/// Smallest number of vertices of a triangular embedding in S_g: the minimal
/// triangulation order ceil((7 + sqrt(1+48g)) / 2), computed without
/// floating point as the least k with 2k - 7 > 0 and (2k-7)^2 >= 1 + 48g.
pub fn min_triangulation_order(g: u64) -> u64 {
    let target = 1 + 48 * g;
    let mut s = integer_sqrt(target);
    if s * s < target {
        s += 1; // need (2k-7) >= ceil(sqrt(target))
    }
    // smallest k with 2k-7 >= s (s >= 1 here since target >= 1)
    (s + 7).div_ceil(2)
}

fn integer_sqrt(x: u64) -> u64 {
    if x < 2 {
        return x;
    }
    let mut r = (x as f64).sqrt() as u64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::VertexId;

    #[test]
    fn complete_profiles_match_paper_examples() {
        let p9 = complete_profile(9).unwrap();
        assert_eq!((p9.h_or, p9.t_or), (2, 3));
        let p7 = complete_profile(7).unwrap();
        assert_eq!((p7.genus_or, p7.h_or, p7.t_or), (1, 1, 0));
        let p11 = complete_profile(11).unwrap();
        assert_eq!(
            (p11.h_or, p11.t_or, p11.h_non, p11.t_non),
            (4, 4, 9, 1)
        );
        assert!(complete_profile(2).is_err());
    }

    #[test]
    fn bipartite_profiles_match_paper_examples() {
        let p55 = bipartite_profile(5, 5).unwrap();
        assert_eq!((p55.h_or, p55.t_or), (2, 1));
        for n in 2..20 {
            assert_eq!(bipartite_profile(6, n).unwrap().t_or, 0);
        }
        let p57 = bipartite_profile(5, 7).unwrap();
        assert_eq!((p57.h_or, p57.t_or), (3, 3));
    }

    #[test]
    fn case_table_residues() {
        // residue table for t(n), n mod 12
        let t_by_residue = |r: u32| match r {
            0 | 3 | 4 | 7 => 0,
            2 | 5 => 1,
            1 | 6 | 9 | 10 => 3,
            8 | 11 => 4,
            _ => unreachable!(),
        };
        for n in 3..=100 {
            assert_eq!(
                complete_profile(n).unwrap().t_or,
                t_by_residue(n % 12),
                "n={n}"
            );
        }
    }

    #[test]
    fn euler_bound_examples() {
        assert_eq!(euler_edge_bound(5, 2, 3), 9);
        assert_eq!(euler_edge_bound(10, 2, 4), 16);
        assert_eq!(euler_edge_bound(4, 2, 3), 6);
    }

    #[test]
    fn kainen_bound_examples() {
        let k9 = Graph::complete(9);
        assert_eq!(
            kainen_lower_bound(&k9, SurfaceId::orientable(2)).unwrap(),
            3
        );
        let k5 = Graph::complete(5);
        assert_eq!(kainen_lower_bound(&k5, SurfaceId::sphere()).unwrap(), 1);
        let k55 = Graph::complete_bipartite(5, 5);
        assert_eq!(
            kainen_lower_bound(&k55, SurfaceId::orientable(2)).unwrap(),
            1
        );
        // clamped at zero in large surfaces
        assert_eq!(
            kainen_lower_bound(&k5, SurfaceId::orientable(5)).unwrap(),
            0
        );
        let mut path = Graph::new();
        path.add_edge(VertexId::num(0), VertexId::num(1));
        assert!(kainen_lower_bound(&path, SurfaceId::sphere()).is_err());
    }

    #[test]
    fn delta_at_h_equals_t() {
        for n in 3..=40 {
            let p = complete_profile(n).unwrap();
            let g = Graph::complete(n as usize);
            assert_eq!(
                kainen_lower_bound(&g, SurfaceId::orientable(p.h_or)).unwrap(),
                p.t_or as i64,
                "n={n}"
            );
        }
        for m in 3..=12 {
            for n in m..=12 {
                let p = bipartite_profile(m, n).unwrap();
                let g = Graph::complete_bipartite(m as usize, n as usize);
                assert_eq!(
                    kainen_lower_bound(&g, SurfaceId::orientable(p.h_or)).unwrap(),
                    p.t_or as i64,
                    "m={m} n={n}"
                );
            }
        }
    }

    #[test]
    fn min_triangulation_orders() {
        assert_eq!(min_triangulation_order(0), 4);
        assert_eq!(min_triangulation_order(1), 7);
        assert_eq!(min_triangulation_order(2), 9);
        assert_eq!(min_triangulation_order(3), 10);
        assert_eq!(min_triangulation_order(17), 18);
    }
}
