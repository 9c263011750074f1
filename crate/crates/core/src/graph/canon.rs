//! Canonical labeling for graphs of order at most 16.
//!
//! The search individualizes vertices of the first non-singleton cell of an
//! equitable partition, refines, and keeps the leaf whose relabeled adjacency
//! code is largest. Automorphisms discovered at equal leaves prune sibling
//! branches by orbit and let the search return straight to the node where the
//! current path left an already explored one.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_CANON_ORDER: usize = 16;

/// Graph of order at most 16 stored as adjacency bit rows.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallGraph {
    n: u8,
    rows: [u16; MAX_CANON_ORDER],
}

impl SmallGraph {
    pub fn new(n: usize) -> Result<SmallGraph> {
        if n > MAX_CANON_ORDER {
            return Err(Error::Capacity {
                what: "graph order",
                actual: n,
                limit: MAX_CANON_ORDER,
            });
        }
        Ok(SmallGraph {
            n: n as u8,
            rows: [0; MAX_CANON_ORDER],
        })
    }

    pub fn from_graph(g: &Graph) -> Result<SmallGraph> {
        let mut s = SmallGraph::new(g.order())?;
        for &(u, v) in g.edges() {
            s.set_edge(u, v);
        }
        Ok(s)
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.order(), self.edge_list()).expect("small graph is simple")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn rows(&self) -> &[u16] {
        &self.rows[..self.order()]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    #[inline]
    pub fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.order() && v < self.order());
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    #[inline]
    pub fn clear_edge(&mut self, u: usize, v: usize) {
        self.rows[u] &= !(1 << v);
        self.rows[v] &= !(1 << u);
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn size(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        let n = self.order();
        let mut out = Vec::new();
        for u in 0..n {
            let mut r = self.rows[u] & !((2u16 << u).wrapping_sub(1));
            while r != 0 {
                let v = r.trailing_zeros() as usize;
                out.push((u, v));
                r &= r - 1;
            }
        }
        out
    }

    pub fn has_isolated(&self) -> bool {
        self.rows().contains(&0)
    }

    /// Adds one vertex with no edges.
    pub fn grow(&self) -> Result<SmallGraph> {
        let mut s = SmallGraph::new(self.order() + 1)?;
        s.rows[..self.order()].copy_from_slice(self.rows());
        Ok(s)
    }

    /// Removes isolated vertices, keeping the order of the others.
    pub fn strip_isolated(&self) -> SmallGraph {
        let n = self.order();
        let mut map = [0u8; MAX_CANON_ORDER];
        let mut next = 0usize;
        for (v, slot) in map.iter_mut().enumerate().take(n) {
            if self.rows[v] != 0 {
                *slot = next as u8;
                next += 1;
            }
        }
        let mut s = SmallGraph {
            n: next as u8,
            rows: [0; MAX_CANON_ORDER],
        };
        for (u, v) in self.edge_list() {
            s.set_edge(map[u] as usize, map[v] as usize);
        }
        s
    }

    /// Adjacency code of the graph relabeled so that `lab[i]` becomes vertex `i`.
    fn code_for(&self, lab: &[u8]) -> u128 {
        let n = self.order();
        let mut code = 0u128;
        let mut k = 0usize;
        for j in 1..n {
            let row = self.rows[lab[j] as usize];
            for &li in &lab[..j] {
                if row >> li & 1 == 1 {
                    code |= 1u128 << (127 - k);
                }
                k += 1;
            }
        }
        code
    }

    /// Canonical labeling: `lab[i]` is the vertex placed at canonical position `i`.
    pub fn canonical_labeling(&self) -> ([u8; MAX_CANON_ORDER], u128) {
        let n = self.order();
        if n <= 1 {
            let mut lab = [0u8; MAX_CANON_ORDER];
            lab.iter_mut().enumerate().for_each(|(i, x)| *x = i as u8);
            return (lab, 0);
        }
        let mut search = Search::new(self);
        let root = Partition::unit(n);
        search.node(root);
        (search.best_lab, search.best_code)
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        let (_, code) = self.canonical_labeling();
        CanonicalForm {
            order: self.n,
            bits: code,
        }
    }
}

impl fmt::Debug for SmallGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SmallGraph(n={}, {:?})", self.n, self.edge_list())
    }
}

/// Isomorphism-class fingerprint: order plus the canonically relabeled
/// upper-triangle adjacency, one bit per vertex pair in column order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    order: u8,
    bits: u128,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.order as usize
    }

    pub fn to_bytes(&self) -> [u8; 17] {
        let mut out = [0u8; 17];
        out[0] = self.order;
        out[1..].copy_from_slice(&self.bits.to_be_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8; 17]) -> Result<CanonicalForm> {
        let order = bytes[0];
        if order as usize > MAX_CANON_ORDER {
            return Err(Error::Parse("canonical form order above 16".into()));
        }
        let mut b = [0u8; 16];
        b.copy_from_slice(&bytes[1..]);
        Ok(CanonicalForm {
            order,
            bits: u128::from_be_bytes(b),
        })
    }

    pub fn to_hex(&self) -> String {
        self.to_bytes().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The canonical representative as a small graph.
    pub fn to_small(&self) -> SmallGraph {
        let n = self.order();
        let mut s = SmallGraph {
            n: self.order,
            rows: [0; MAX_CANON_ORDER],
        };
        let mut k = 0usize;
        for j in 1..n {
            for i in 0..j {
                if self.bits >> (127 - k) & 1 == 1 {
                    s.set_edge(i, j);
                }
                k += 1;
            }
        }
        s
    }

    pub fn to_graph(&self) -> Graph {
        self.to_small().to_graph()
    }

    pub fn size(&self) -> usize {
        self.bits.count_ones() as usize
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_graph().to_graph6())
    }
}

/// Ordered partition of the vertex set; each cell is a bit set.
#[derive(Clone, Copy)]
struct Partition {
    cells: [u16; MAX_CANON_ORDER],
    len: usize,
}

impl Partition {
    fn unit(n: usize) -> Partition {
        let mut cells = [0u16; MAX_CANON_ORDER];
        cells[0] = ((1u32 << n) - 1) as u16;
        Partition { cells, len: 1 }
    }

    fn is_discrete(&self, n: usize) -> bool {
        self.len == n
    }

    /// Splits cell `i` by neighbor count into `splitter`; returns true on a split.
    fn split(&mut self, i: usize, splitter: u16, rows: &[u16]) -> bool {
        let cell = self.cells[i];
        if cell.count_ones() < 2 {
            return false;
        }
        let mut groups = [0u16; MAX_CANON_ORDER + 1];
        let mut c = cell;
        while c != 0 {
            let x = c.trailing_zeros() as usize;
            groups[(rows[x] & splitter).count_ones() as usize] |= 1 << x;
            c &= c - 1;
        }
        let parts: Vec<u16> = groups.iter().copied().filter(|&g| g != 0).collect();
        if parts.len() == 1 {
            return false;
        }
        let extra = parts.len() - 1;
        self.cells.copy_within(i + 1..self.len, i + 1 + extra);
        self.cells[i..i + parts.len()].copy_from_slice(&parts);
        self.len += extra;
        true
    }

    /// Refines to the coarsest equitable partition finer than `self`.
    fn refine(&mut self, rows: &[u16]) {
        loop {
            let mut changed = false;
            let mut s = 0;
            while s < self.len {
                let splitter = self.cells[s];
                let mut i = 0;
                while i < self.len {
                    if self.split(i, splitter, rows) {
                        changed = true;
                    }
                    i += 1;
                }
                s += 1;
            }
            if !changed {
                break;
            }
        }
    }

    fn target_cell(&self) -> usize {
        (0..self.len)
            .find(|&i| self.cells[i].count_ones() > 1)
            .expect("non-discrete partition has a non-singleton cell")
    }

    fn individualize(&self, i: usize, v: usize) -> Partition {
        let mut p = *self;
        p.cells.copy_within(i + 1..p.len, i + 2);
        p.cells[i] = 1 << v;
        p.cells[i + 1] = self.cells[i] & !(1 << v);
        p.len += 1;
        p
    }

    fn labeling(&self) -> [u8; MAX_CANON_ORDER] {
        let mut lab = [0u8; MAX_CANON_ORDER];
        for (i, slot) in lab.iter_mut().enumerate() {
            *slot = if i < self.len {
                self.cells[i].trailing_zeros() as u8
            } else {
                i as u8
            };
        }
        lab
    }
}

struct Search<'a> {
    g: &'a SmallGraph,
    have_first: bool,
    first_path: Vec<u8>,
    first_lab: [u8; MAX_CANON_ORDER],
    first_code: u128,
    best_path: Vec<u8>,
    best_lab: [u8; MAX_CANON_ORDER],
    best_code: u128,
    gens: Vec<[u8; MAX_CANON_ORDER]>,
    path: Vec<u8>,
}

impl<'a> Search<'a> {
    fn new(g: &'a SmallGraph) -> Self {
        Search {
            g,
            have_first: false,
            first_path: Vec::new(),
            first_lab: [0; MAX_CANON_ORDER],
            first_code: 0,
            best_path: Vec::new(),
            best_lab: [0; MAX_CANON_ORDER],
            best_code: 0,
            gens: Vec::new(),
            path: Vec::new(),
        }
    }

    /// Returns `Some(d)` to unwind to the node at depth `d`.
    fn node(&mut self, mut part: Partition) -> Option<usize> {
        let n = self.g.order();
        part.refine(self.g.rows());
        if part.is_discrete(n) {
            return self.leaf(&part);
        }
        let depth = self.path.len();
        let ci = part.target_cell();
        let cell = part.cells[ci];
        let mut tried = 0u16;
        let mut c = cell;
        while c != 0 {
            let v = c.trailing_zeros() as usize;
            c &= c - 1;
            if tried != 0 && self.in_tried_orbit(v, tried) {
                continue;
            }
            tried |= 1 << v;
            let child = part.individualize(ci, v);
            self.path.push(v as u8);
            let r = self.node(child);
            self.path.pop();
            if let Some(d) = r {
                if d < depth {
                    return Some(d);
                }
            }
        }
        None
    }

    fn in_tried_orbit(&self, v: usize, tried: u16) -> bool {
        let n = self.g.order();
        let mut parent: [u8; MAX_CANON_ORDER] = std::array::from_fn(|i| i as u8);
        fn find(p: &mut [u8; MAX_CANON_ORDER], mut x: usize) -> usize {
            while p[x] as usize != x {
                p[x] = p[p[x] as usize];
                x = p[x] as usize;
            }
            x
        }
        let mut any = false;
        for gen in &self.gens {
            if self.path.iter().all(|&p| gen[p as usize] == p) {
                any = true;
                for x in 0..n {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, gen[x] as usize));
                    if a != b {
                        parent[a.max(b)] = a.min(b) as u8;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        let mut t = tried;
        while t != 0 {
            let w = t.trailing_zeros() as usize;
            t &= t - 1;
            if find(&mut parent, w) == root {
                return true;
            }
        }
        false
    }

    fn leaf(&mut self, part: &Partition) -> Option<usize> {
        let lab = part.labeling();
        let code = self.g.code_for(&lab[..self.g.order()]);
        if !self.have_first {
            self.have_first = true;
            self.first_path = self.path.clone();
            self.first_lab = lab;
            self.first_code = code;
            self.best_path = self.path.clone();
            self.best_lab = lab;
            self.best_code = code;
            return None;
        }
        if code == self.first_code {
            self.record_automorphism(&self.first_lab.clone(), &lab);
            return Some(divergence(&self.path, &self.first_path));
        }
        if code == self.best_code {
            self.record_automorphism(&self.best_lab.clone(), &lab);
            return Some(divergence(&self.path, &self.best_path));
        }
        if code > self.best_code {
            self.best_code = code;
            self.best_lab = lab;
            self.best_path = self.path.clone();
        }
        None
    }

    fn record_automorphism(&mut self, from: &[u8; MAX_CANON_ORDER], to: &[u8; MAX_CANON_ORDER]) {
        let n = self.g.order();
        let mut gen: [u8; MAX_CANON_ORDER] = std::array::from_fn(|i| i as u8);
        for i in 0..n {
            gen[from[i] as usize] = to[i];
        }
        self.gens.push(gen);
    }
}

fn divergence(a: &[u8], b: &[u8]) -> usize {
    a.iter()
        .zip(b)
        .position(|(x, y)| x != y)
        .unwrap_or(a.len().min(b.len()))
}

#[cfg(test)]
pub(crate) mod oracle {
    //! Brute-force canonical form: maximum adjacency code over all relabelings.
    use super::*;

    pub fn brute_canonical(g: &SmallGraph) -> (usize, u128) {
        let n = g.order();
        assert!(n <= 8, "brute-force oracle is for tiny graphs");
        let mut lab: Vec<u8> = (0..n as u8).collect();
        let mut best = 0u128;
        permute(&mut lab, 0, &mut |l| best = best.max(g.code_for(l)));
        (n, best)
    }

    fn permute(a: &mut Vec<u8>, k: usize, f: &mut dyn FnMut(&[u8])) {
        if k == a.len() {
            f(a);
            return;
        }
        for i in k..a.len() {
            a.swap(k, i);
            permute(a, k + 1, f);
            a.swap(k, i);
        }
    }

    /// All labeled graphs on `n` vertices grouped into isomorphism classes by the oracle.
    pub fn classes(n: usize) -> std::collections::BTreeMap<(usize, u128), Vec<SmallGraph>> {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut out: std::collections::BTreeMap<(usize, u128), Vec<SmallGraph>> =
            Default::default();
        for mask in 0u32..(1 << pairs.len()) {
            let mut g = SmallGraph::new(n).unwrap();
            for (k, &(u, v)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    g.set_edge(u, v);
                }
            }
            out.entry(brute_canonical(&g)).or_default().push(g);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn sg(n: usize, edges: &[(usize, usize)]) -> SmallGraph {
        SmallGraph::from_graph(&Graph::from_edges(n, edges.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn c4_relabelings_agree() {
        let a = sg(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let b = sg(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]);
        assert_eq!(a.canonical_form(), b.canonical_form());
    }

    #[test]
    fn k3_and_p3_differ() {
        let k3 = sg(3, &[(0, 1), (1, 2), (0, 2)]);
        let p3 = sg(3, &[(0, 1), (1, 2)]);
        assert_ne!(k3.canonical_form(), p3.canonical_form());
    }

    #[test]
    fn order_six_has_156_classes_matching_oracle() {
        let classes = oracle::classes(6);
        assert_eq!(classes.len(), 156);
        let mut seen = std::collections::HashSet::new();
        for members in classes.values() {
            let form = members[0].canonical_form();
            assert!(seen.insert(form), "two classes collided");
            for m in members {
                assert_eq!(m.canonical_form(), form);
            }
        }
    }

    #[test]
    fn order_five_and_four_class_counts() {
        assert_eq!(oracle::classes(4).len(), 11);
        assert_eq!(oracle::classes(5).len(), 34);
    }

    #[test]
    fn representative_round_trip() {
        let g = sg(7, &[(0, 1), (1, 2), (2, 0), (3, 4), (5, 6), (0, 6)]);
        let f = g.canonical_form();
        let rep = f.to_small();
        assert_eq!(rep.canonical_form(), f);
        assert_eq!(rep.size(), 6);
        let bytes = f.to_bytes();
        assert_eq!(CanonicalForm::from_bytes(&bytes).unwrap(), f);
    }

    #[test]
    fn symmetric_graphs_of_order_sixteen_finish() {
        let k16 = SmallGraph::from_graph(&Graph::complete(16)).unwrap();
        assert_eq!(k16.canonical_form().size(), 120);
        let m8 = SmallGraph::from_graph(&Graph::complete(2).k_copies(8)).unwrap();
        let shuffled = {
            let mut perm: Vec<usize> = (0..16).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(3));
            SmallGraph::from_graph(&m8.to_graph().relabel(&perm).unwrap()).unwrap()
        };
        assert_eq!(m8.canonical_form(), shuffled.canonical_form());
        let cube = {
            let edges = (0..16usize).flat_map(|u| {
                (0..4).map(move |b| (u, u ^ (1 << b))).filter(|&(u, v)| u < v)
            });
            SmallGraph::from_graph(&Graph::from_edges(16, edges).unwrap()).unwrap()
        };
        assert_eq!(cube.canonical_form().size(), 32);
    }

    #[test]
    fn capacity_error_above_sixteen() {
        assert!(matches!(
            Graph::complete(17).canonical_form(),
            Err(Error::Capacity { .. })
        ));
    }

    proptest! {
        #[test]
        fn invariant_under_random_relabeling(
            n in 1usize..=12,
            bits in proptest::collection::vec(any::<bool>(), 66),
            seed in any::<u64>(),
        ) {
            let mut g = SmallGraph::new(n).unwrap();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] { g.set_edge(u, v); }
                    k += 1;
                }
            }
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let h = SmallGraph::from_graph(&g.to_graph().relabel(&perm).unwrap()).unwrap();
            prop_assert_eq!(g.canonical_form(), h.canonical_form());
            // idempotent on the representative
            let rep = g.canonical_form().to_small();
            prop_assert_eq!(rep.canonical_form(), g.canonical_form());
        }
    }
}
