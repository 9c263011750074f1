//! A chain of `K_6`-minus-two-edges pieces with one more triangle than edges.
//!
//! End pieces are `K_6 - {01, 12}` (13 edges, 13 triangles) and inner pieces
//! are `K_6 - {01, 23}` (13 edges, 12 triangles). Neighboring pieces share one
//! edge: an end piece shares `13`, an edge at the middle vertex of its removed
//! path; an inner piece shares `45` (which completes `01, 23` to a perfect
//! matching) on its left and `02` (joining the two removed edges) on its
//! right.
//!
//! An end piece cannot share an edge inside `{3, 4, 5}`: after deleting `13`
//! the ten triangles on `{0, 2, 3, 4, 5}` would have only nine private edges.
//!
//! After deleting an edge, each remaining triangle is matched to a private
//! edge of itself, and that edge is sent to another edge of the triangle. A
//! shared edge is private to the piece farther from where the edge was
//! deleted.

use super::{Claim, Construction, ConstructionSpec};
use crate::error::{param, Error, Result};
use crate::graph::{named::named, Graph};
use crate::mapping::{complete_mapping, Distance, Mode};
use crate::matching::hopcroft_karp;
use crate::patterns::PatternFamily;

const END_SHARED: (usize, usize) = (1, 3);
const INNER_LEFT: (usize, usize) = (4, 5);
const INNER_RIGHT: (usize, usize) = (0, 2);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainPiece {
    /// Global label of each local vertex `0..6`.
    pub vertices: [usize; 6],
    /// Global edges of the piece.
    pub edges: Vec<(usize, usize)>,
    pub left: Option<(usize, usize)>,
    pub right: Option<(usize, usize)>,
}

fn glob(v: &[usize; 6], (a, b): (usize, usize)) -> (usize, usize) {
    (v[a].min(v[b]), v[a].max(v[b]))
}

/// The pieces of the chain for `k >= 2`, left to right.
pub fn chain_pieces(k: usize) -> Result<Vec<ChainPiece>> {
    if k < 2 {
        return param("the chain needs k >= 2");
    }
    let end = named("H1")?;
    let inner = named("H2")?;
    let mut pieces: Vec<ChainPiece> = Vec::new();
    let mut next = 0;
    for j in 0..k {
        let (local, left, right) = if j == 0 {
            (&end, None, Some(END_SHARED))
        } else if j == k - 1 {
            (&end, Some(END_SHARED), None)
        } else {
            (&inner, Some(INNER_LEFT), Some(INNER_RIGHT))
        };
        let mut vertices = [usize::MAX; 6];
        if let Some((a, b)) = left {
            let prev = pieces.last().expect("left neighbor exists");
            let (ga, gb) = prev.right.expect("neighbor shares its right edge");
            vertices[a] = ga;
            vertices[b] = gb;
        }
        for v in vertices.iter_mut().filter(|v| **v == usize::MAX) {
            *v = next;
            next += 1;
        }
        let edges = local.edges().iter().map(|&e| glob(&vertices, e)).collect();
        pieces.push(ChainPiece {
            left: left.map(|e| glob(&vertices, e)),
            right: right.map(|e| glob(&vertices, e)),
            vertices,
            edges,
        });
    }
    Ok(pieces)
}

fn chain_graph(pieces: &[ChainPiece]) -> Result<Graph> {
    let order = pieces.iter().flat_map(|p| p.vertices).max().map_or(0, |m| m + 1);
    let mut edges: Vec<(usize, usize)> = pieces.iter().flat_map(|p| p.edges.iter().copied()).collect();
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(order, edges)
}

pub(super) fn build(spec: &ConstructionSpec, k: usize, delete: Option<usize>) -> Result<Construction> {
    let pieces = chain_pieces(k)?;
    let g = chain_graph(&pieces)?;
    let patterns = PatternFamily::single("K3", Graph::complete(3))?;
    let Some(del) = delete else {
        return Ok(Construction {
            spec: spec.clone(),
            host: g,
            mapping: None,
            patterns,
            mode: Mode::Free,
            d: Distance::D1,
            claim: Claim::UnavoidableByCount,
        });
    };
    if del >= g.size() {
        return param(format!("edge {del} out of range for {} edges", g.size()));
    }
    let gone = g.edge(del);
    let holders: Vec<usize> = (0..k).filter(|&j| pieces[j].edges.contains(&gone)).collect();
    let (lo, hi) = (holders[0], *holders.last().expect("some piece holds the edge"));
    let host = g.remove_edge(del);
    let mut image: Vec<Option<usize>> = vec![None; host.size()];

    for (j, piece) in pieces.iter().enumerate() {
        // edges this piece may use privately
        let mut own: Vec<(usize, usize)> = piece.edges.iter().copied().filter(|&x| x != gone).collect();
        if let Some(s) = piece.left {
            // shared with j - 1: kept by j iff j is the farther one, i.e. j > hi
            if j <= hi {
                own.retain(|&x| x != s);
            }
        }
        if let Some(s) = piece.right {
            // shared with j + 1: kept by j iff j + 1 <= lo
            if j >= lo {
                own.retain(|&x| x != s);
            }
        }
        let vs = piece.vertices;
        let mut triangles = Vec::new();
        for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    let t = [vs[a], vs[b], vs[c]];
                    let es = [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])].map(|(x, y)| (x.min(y), x.max(y)));
                    if es.iter().all(|&(x, y)| host.has_edge(x, y)) {
                        triangles.push(es);
                    }
                }
            }
        }
        let adj: Vec<Vec<usize>> = triangles
            .iter()
            .map(|es| {
                es.iter()
                    .filter_map(|x| own.iter().position(|y| y == x))
                    .collect()
            })
            .collect();
        let mate = hopcroft_karp(triangles.len(), own.len(), &adj);
        for (t, m) in mate.iter().enumerate() {
            let Some(m) = *m else {
                return Err(Error::Infeasible(format!(
                    "piece {j}: no private edge for triangle {:?} after deleting {gone:?}",
                    triangles[t]
                )));
            };
            let e = own[m];
            let other = triangles[t]
                .iter()
                .copied()
                .filter(|&x| x != e)
                .map(|(x, y)| host.edge_index(x, y).expect("triangle edge"))
                .min()
                .expect("a triangle has three edges");
            image[host.edge_index(e.0, e.1).expect("private edge")] = Some(other);
        }
    }
    let f = complete_mapping(host.clone(), &image, Distance::D1)?;
    Ok(super::avoider(spec, host, f, patterns, Mode::Free, Distance::D1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_construction;

    #[test]
    fn chain_counts() {
        for k in 2..=4 {
            let g = chain_graph(&chain_pieces(k).unwrap()).unwrap();
            assert_eq!(g.order(), 4 * k + 2);
            assert_eq!(g.size(), 12 * k + 1);
            assert_eq!(g.triangle_count(), 12 * k + 2);
        }
    }

    #[test]
    fn shared_edges_follow_the_piece_rules() {
        let h1 = named("H1").unwrap();
        let h2 = named("H2").unwrap();
        // 13 sits at the middle vertex of the removed path 0-1-2
        assert!(h1.has_edge(END_SHARED.0, END_SHARED.1) && END_SHARED.0 == 1);
        // 45 with 01 and 23 is a perfect matching; 02 meets both removed edges
        assert!(h2.has_edge(INNER_LEFT.0, INNER_LEFT.1) && h2.has_edge(INNER_RIGHT.0, INNER_RIGHT.1));
        let p = chain_pieces(4).unwrap();
        for w in p.windows(2) {
            assert_eq!(w[0].right, w[1].left);
        }
    }

    /// Private-edge assignments for one piece minus `gone`, excluding `shared`.
    fn piece_assignable(local: &Graph, gone: (usize, usize), shared: &[(usize, usize)]) -> bool {
        let host = local.remove_edge(local.edge_index(gone.0, gone.1).unwrap());
        let own: Vec<(usize, usize)> = host.edges().iter().copied().filter(|e| !shared.contains(e)).collect();
        let tris = host.triangles();
        let adj: Vec<Vec<usize>> = tris
            .iter()
            .map(|t| {
                own.iter()
                    .enumerate()
                    .filter(|(_, &(a, b))| t.contains(&a) && t.contains(&b))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        hopcroft_karp(tris.len(), own.len(), &adj).iter().all(Option::is_some)
    }

    #[test]
    fn which_end_edges_can_be_shared() {
        let h1 = named("H1").unwrap();
        let works = |s: (usize, usize)| h1.edges().iter().all(|&e| piece_assignable(&h1, e, &[s]));
        let good: Vec<(usize, usize)> = h1.edges().iter().copied().filter(|&s| works(s)).collect();
        assert_eq!(good, vec![(1, 3), (1, 4), (1, 5)]);
        let h2 = named("H2").unwrap();
        assert!(h2.edges().iter().all(|&e| piece_assignable(&h2, e, &[INNER_LEFT, INNER_RIGHT])));
    }

    #[test]
    fn every_deletion_k2() {
        for del in 0..25 {
            let c = build_construction(&ConstructionSpec::TriangleChain { k: 2, delete: Some(del) }).unwrap();
            assert!(c.verify().unwrap(), "delete {del}");
        }
    }

    #[test]
    fn every_deletion_k3() {
        for del in 0..37 {
            let c = build_construction(&ConstructionSpec::TriangleChain { k: 3, delete: Some(del) }).unwrap();
            assert!(c.verify().unwrap(), "delete {del}");
        }
    }
}
