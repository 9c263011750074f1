//! Labeled simple graphs with a stable edge indexing.
//!
//! Vertices are `0..order`. Edges are stored as `(u, v)` with `u < v`, sorted
//! lexicographically; the position of an edge in that table is its index, and
//! every edge mapping, pattern copy and certificate in this crate refers to
//! edges by that index.

pub mod canon;
pub mod graph6;
pub mod named;

use std::collections::VecDeque;
use std::fmt;

use crate::error::{param, Error, Result};

pub use canon::{CanonicalForm, SmallGraph, MAX_CANON_ORDER};
pub use named::NamedGraphSpec;

const NO_EDGE: u32 = u32::MAX;

pub type Edge = (usize, usize);

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    edges: Vec<Edge>,
    nbrs: Vec<Vec<usize>>,
    index: Vec<u32>,
}

impl Graph {
    pub fn empty(order: usize) -> Graph {
        Graph {
            order,
            edges: Vec::new(),
            nbrs: vec![Vec::new(); order],
            index: vec![NO_EDGE; order * order],
        }
    }

    /// Builds a graph from an edge list in any orientation and order.
    ///
    /// Loops, out-of-range endpoints and repeated edges are rejected.
    pub fn from_edges(order: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Graph> {
        let mut list: Vec<Edge> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return param(format!("loop at vertex {a}"));
            }
            if a >= order || b >= order {
                return param(format!("edge ({a},{b}) out of range for order {order}"));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return param(format!("repeated edge ({},{})", w[0].0, w[0].1));
        }
        Ok(Graph::from_sorted(order, list))
    }

    fn from_sorted(order: usize, edges: Vec<Edge>) -> Graph {
        let mut nbrs = vec![Vec::new(); order];
        let mut index = vec![NO_EDGE; order * order];
        for (i, &(u, v)) in edges.iter().enumerate() {
            nbrs[u].push(v);
            nbrs[v].push(u);
            index[u * order + v] = i as u32;
            index[v * order + u] = i as u32;
        }
        for list in &mut nbrs {
            list.sort_unstable();
        }
        Graph {
            order,
            edges,
            nbrs,
            index,
        }
    }

    pub fn complete(order: usize) -> Graph {
        let edges = (0..order).flat_map(|u| (u + 1..order).map(move |v| (u, v)));
        Graph::from_sorted(order, edges.collect())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of edges.
    #[inline]
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, i: usize) -> Edge {
        self.edges[i]
    }

    #[inline]
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        if a >= self.order || b >= self.order {
            return None;
        }
        match self.index[a * self.order + b] {
            NO_EDGE => None,
            i => Some(i as usize),
        }
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_index(a, b).is_some()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.nbrs.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// True when edges `i` and `j` have no endpoint in common.
    #[inline]
    pub fn edges_disjoint(&self, i: usize, j: usize) -> bool {
        let (a, b) = self.edges[i];
        let (c, d) = self.edges[j];
        a != c && a != d && b != c && b != d
    }

    /// Number of endpoints edge `i` shares with edge `j` (0, 1 or 2).
    #[inline]
    pub fn edge_overlap(&self, i: usize, j: usize) -> usize {
        let (a, b) = self.edges[i];
        let (c, d) = self.edges[j];
        usize::from(a == c || a == d) + usize::from(b == c || b == d)
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.order).filter(|&v| self.nbrs[v].is_empty()).collect()
    }

    /// Applies `perm` (old label -> new label) to every vertex.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.order {
            return param("relabeling has wrong length");
        }
        let mut seen = vec![false; self.order];
        for &p in perm {
            if p >= self.order || std::mem::replace(&mut seen[p], true) {
                return param("relabeling is not a permutation");
            }
        }
        Graph::from_edges(self.order, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Drops isolated vertices, keeping the relative order of the rest.
    pub fn strip_isolated(&self) -> Graph {
        let mut map = vec![usize::MAX; self.order];
        let mut next = 0;
        for v in 0..self.order {
            if !self.nbrs[v].is_empty() {
                map[v] = next;
                next += 1;
            }
        }
        let edges = self.edges.iter().map(|&(u, v)| (map[u], map[v])).collect();
        Graph::from_sorted(next, edges)
    }

    /// Same vertex set, one edge removed. Edge indices above `i` shift down.
    pub fn remove_edge(&self, i: usize) -> Graph {
        let mut edges = self.edges.clone();
        edges.remove(i);
        Graph::from_sorted(self.order, edges)
    }

    pub fn add_edge(&self, a: usize, b: usize) -> Result<Graph> {
        Graph::from_edges(self.order, self.edges.iter().copied().chain([(a, b)]))
    }

    /// Adds `extra` isolated vertices after the existing ones.
    pub fn pad(&self, extra: usize) -> Graph {
        Graph::from_sorted(self.order + extra, self.edges.clone())
    }

    pub fn complement(&self) -> Graph {
        let edges = (0..self.order)
            .flat_map(|u| (u + 1..self.order).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v))
            .collect();
        Graph::from_sorted(self.order, edges)
    }

    /// The subgraph spanned by the given edge indices, on the same vertex set.
    pub fn edge_subgraph(&self, edge_ids: &[usize]) -> Graph {
        let mut edges: Vec<Edge> = edge_ids.iter().map(|&i| self.edges[i]).collect();
        edges.sort_unstable();
        edges.dedup();
        Graph::from_sorted(self.order, edges)
    }

    /// Vertex-disjoint union; the vertices of `other` are shifted by `self.order()`.
    pub fn union(&self, other: &Graph) -> Graph {
        let off = self.order;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        Graph::from_sorted(self.order + other.order, edges)
    }

    /// Disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Graph {
        let off = self.order;
        let mut edges = self.edges.clone();
        for u in 0..self.order {
            for v in 0..other.order {
                edges.push((u, v + off));
            }
        }
        edges.extend(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        edges.sort_unstable();
        Graph::from_sorted(self.order + other.order, edges)
    }

    /// `k` vertex-disjoint copies.
    pub fn k_copies(&self, k: usize) -> Graph {
        let mut g = Graph::empty(0);
        for _ in 0..k {
            g = g.union(self);
        }
        g
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for s in 0..self.order {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.nbrs[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.order <= 1 || self.components().len() == 1
    }

    /// Connected and acyclic (the empty graph on one vertex counts).
    pub fn is_tree(&self) -> bool {
        self.order >= 1 && self.size() + 1 == self.order && self.is_connected()
    }

    /// A proper 2-coloring, each component's smallest vertex colored 0.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.order];
        for s in 0..self.order {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.nbrs[v] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles().len()
    }

    /// Triangles as sorted vertex triples, in lexicographic order.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for &(u, v) in &self.edges {
            for &w in &self.nbrs[v] {
                if w > v && self.has_edge(u, w) {
                    out.push([u, v, w]);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let degrees: Vec<usize> = (0..self.order).map(|v| self.degree(v)).collect();
        let max_degree = degrees.iter().copied().max().unwrap_or(0);
        let bipartite_min_max = self.two_coloring().map(|col| {
            let side_max = |c: u8| {
                (0..self.order)
                    .filter(|&v| col[v] == c)
                    .map(|v| degrees[v])
                    .max()
                    .unwrap_or(0)
            };
            side_max(0).min(side_max(1))
        });
        let mut sequence = degrees;
        sequence.sort_unstable_by(|a, b| b.cmp(a));
        DegreeStats {
            max_degree,
            bipartite_min_max,
            sequence,
        }
    }

    /// Converts to the fixed-width representation used for canonical labeling.
    pub fn to_small(&self) -> Result<SmallGraph> {
        SmallGraph::from_graph(self)
    }

    pub fn canonical_form(&self) -> Result<CanonicalForm> {
        Ok(self.to_small()?.canonical_form())
    }

    /// The canonically relabeled representative of this graph's isomorphism class.
    pub fn canonical_graph(&self) -> Result<Graph> {
        Ok(self.canonical_form()?.to_graph())
    }

    pub fn is_isomorphic(&self, other: &Graph) -> Result<bool> {
        if self.order != other.order || self.size() != other.size() {
            return Ok(false);
        }
        Ok(self.canonical_form()? == other.canonical_form()?)
    }

    pub fn to_graph6(&self) -> String {
        graph6::encode(self)
    }

    pub fn from_graph6(s: &str) -> Result<Graph> {
        graph6::decode(s)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, ", self.order)?;
        f.debug_list().entries(self.edges.iter()).finish()?;
        write!(f, ")")
    }
}

/// Degree summary of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeStats {
    pub max_degree: usize,
    /// `min(Δ(A), Δ(B))` over the 2-coloring parts; `None` when not bipartite.
    pub bipartite_min_max: Option<usize>,
    /// Degrees in non-increasing order.
    pub sequence: Vec<usize>,
}

impl DegreeStats {
    /// The bipartite min-max degree, or a domain error for non-bipartite graphs.
    pub fn delta_star(&self) -> Result<usize> {
        self.bipartite_min_max
            .ok_or_else(|| Error::Domain("Δ* requires a bipartite graph".into()))
    }
}

/// Graph operators used when assembling hosts and patterns.
#[derive(Clone, Debug)]
pub enum Combine<'a> {
    Union(&'a Graph, &'a Graph),
    Join(&'a Graph, &'a Graph),
    KCopies(&'a Graph, usize),
}

pub fn combine(op: Combine<'_>) -> Graph {
    match op {
        Combine::Union(a, b) => a.union(b),
        Combine::Join(a, b) => a.join(b),
        Combine::KCopies(g, k) => g.k_copies(k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn edge_table_is_sorted_and_indexed() {
        let g = Graph::from_edges(4, [(3, 2), (0, 1), (2, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (2, 3)]);
        assert_eq!(g.edge_index(2, 0), Some(1));
        assert_eq!(g.edge_index(1, 3), None);
        assert_eq!(g.neighbors(0), &[1, 2]);
    }

    #[test]
    fn rejects_loops_and_repeats() {
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn combine_examples() {
        let k3 = Graph::complete(3);
        let e5 = Graph::empty(5);
        let j = combine(Combine::Join(&k3, &e5));
        assert_eq!((j.order(), j.size()), (8, 18));
        let k2 = Graph::complete(2);
        let m = combine(Combine::KCopies(&k2, 4));
        assert_eq!((m.order(), m.size()), (8, 4));
        let u = combine(Combine::Union(&path(3), &k3));
        assert_eq!((u.order(), u.size()), (6, 5));
    }

    #[test]
    fn degree_stats_examples() {
        let p4 = path(4);
        let s = p4.degree_stats();
        assert_eq!(s.max_degree, 2);
        assert_eq!(s.delta_star().unwrap(), 2);

        let star = Graph::from_edges(6, (1..6).map(|i| (0, i))).unwrap();
        let s = star.degree_stats();
        assert_eq!((s.max_degree, s.delta_star().unwrap()), (5, 1));

        let err = Graph::complete(3).degree_stats().delta_star();
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn strip_and_remove() {
        let g = Graph::from_edges(5, [(0, 4), (1, 4)]).unwrap();
        let s = g.strip_isolated();
        assert_eq!((s.order(), s.edges()), (3, &[(0, 2), (1, 2)][..]));
        let r = g.remove_edge(0);
        assert_eq!(r.edges(), &[(1, 4)]);
        assert_eq!(r.order(), 5);
    }

    #[test]
    fn triangles_of_k4() {
        assert_eq!(Graph::complete(4).triangle_count(), 4);
        assert_eq!(Graph::complete(6).triangle_count(), 20);
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn join_edge_count(a in arb_graph(6), b in arb_graph(6)) {
            let j = a.join(&b);
            prop_assert_eq!(j.size(), a.size() + b.size() + a.order() * b.order());
        }

        #[test]
        fn relabel_preserves_degree_sequence(g in arb_graph(8), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut perm: Vec<usize> = (0..g.order()).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let h = g.relabel(&perm).unwrap();
            prop_assert_eq!(h.degree_stats().sequence, g.degree_stats().sequence);
            prop_assert_eq!(h.size(), g.size());
        }
    }
}
