//! Explicit hosts with mappings, each checked mechanically by
//! [`verify_construction`].
//!
//! Wherever a recipe leaves an image unspecified, the edge gets its smallest
//! legal image, so every certificate is reproducible.

mod chain;
mod dstar;
mod euler;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{param, Error, Result};
use crate::extremal::compute_ex;
use crate::graph::{named::named, Graph, NamedGraphSpec};
use crate::mapping::{complete_mapping, Distance, EdgeMapping, Mode};
use crate::patterns::{contains_copy, surviving_copies, PatternFamily};
use crate::solver::{counting_shortcut, is_unavoidable, CountingPattern};

pub use chain::{chain_pieces, ChainPiece};
pub use euler::eulerian_circuit;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionSpec {
    /// `(t-1)K_{1,3(r-1)}`, each star split into cyclic triples; avoids `{K_{1,r}, tK_2}`.
    Delta { r: usize, t: usize },
    /// A pattern-free extremal graph plus one edge that absorbs every image.
    PlusEdge { n: usize, pattern: String },
    /// A pattern-free extremal graph plus a matching on an independent set.
    IndMatching { n: usize, pattern: String },
    /// Copies of a tree-free block, one hub joined to an independent set of each.
    TreeBlowup { tree: String, block: String, n: usize },
    /// Circulant host of degree `2(Δ(T)-1)` mapped along a closed Eulerian trail.
    EulerRegular { tree: String, n: usize },
    /// `K_{3(Δ*-1), n-3(Δ*-1)}` rotating each triple of the small side; pattern `D_{Δ*-1,Δ*-1}`.
    BipartiteCyclic { delta_star: usize, n: usize },
    /// `K_3 + E_{n-3}` rotating the triangle; pattern `P_5`.
    K3Join { n: usize },
    /// `K_{t-1} + E_{n-t+1}` plus a star inside the independent part; pattern `tK_2`.
    SplitMatching { t: usize, n: usize },
    /// `K_{1,n-1}` plus one edge between leaves; pattern `2K_2`.
    StarPlusEdge { n: usize },
    /// `K_4` plus a pendant edge; pattern `2K_2`.
    K4Pendant,
    /// `(3t-3)K_2` in cyclic triples; pattern `tK_2`.
    Matching3t { t: usize },
    /// `D_{3r-4,k,3r-6}` for `K_{1,r}`: unavoidable, or an avoider once an edge is deleted.
    DStar { r: usize, k: usize, delete: Option<usize> },
    /// Disjoint `K_6`s, each split into five perfect matchings rotated cyclically;
    /// exclusive mode, pattern `K_{1,2}`.
    K6Five { copies: usize },
    /// Chain of `K_6` pieces with more triangles than edges, or an avoider
    /// once an edge is deleted; pattern `K_3`.
    TriangleChain { k: usize, delete: Option<usize> },
}

/// What a construction asserts about its host.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    /// The attached mapping leaves no surviving copy.
    Avoider,
    /// More copies than edges able to kill one each.
    UnavoidableByCount,
    /// Every legal mapping leaves a survivor (checked exhaustively).
    Unavoidable,
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub spec: ConstructionSpec,
    pub host: Graph,
    pub mapping: Option<EdgeMapping>,
    pub patterns: PatternFamily,
    pub mode: Mode,
    pub d: Distance,
    pub claim: Claim,
}

impl Construction {
    pub fn verify(&self) -> Result<bool> {
        match self.claim {
            Claim::Avoider => Ok(self
                .mapping
                .as_ref()
                .is_some_and(|f| verify_construction(&self.host, f, &self.patterns, self.mode))),
            Claim::UnavoidableByCount => Ok(CountingPattern::detect(&self.patterns)
                .and_then(|kind| counting_shortcut(&self.host, kind))
                .is_some()),
            Claim::Unavoidable => is_unavoidable(&self.host, &self.patterns, self.d, self.mode),
        }
    }
}

/// True iff no copy of any family member in `g` survives `f` in `mode`.
pub fn verify_construction(g: &Graph, f: &EdgeMapping, patterns: &PatternFamily, mode: Mode) -> bool {
    f.host() == g && surviving_copies(f, patterns, mode).is_empty()
}

/// Assigns images by vertex pairs; unassigned edges get their smallest legal image.
struct Recipe<'a> {
    host: &'a Graph,
    image: Vec<Option<usize>>,
}

impl<'a> Recipe<'a> {
    fn new(host: &'a Graph) -> Recipe<'a> {
        Recipe {
            host,
            image: vec![None; host.size()],
        }
    }

    fn idx(&self, (a, b): (usize, usize)) -> usize {
        self.host
            .edge_index(a, b)
            .unwrap_or_else(|| panic!("recipe edge ({a},{b}) missing from host"))
    }

    fn set(&mut self, e: (usize, usize), x: (usize, usize)) {
        let (e, x) = (self.idx(e), self.idx(x));
        self.image[e] = Some(x);
    }

    /// `e_0 -> e_1 -> ... -> e_{k-1} -> e_0`.
    fn cycle(&mut self, edges: &[(usize, usize)]) {
        for (i, &e) in edges.iter().enumerate() {
            self.set(e, edges[(i + 1) % edges.len()]);
        }
    }

    /// Cyclic rotation inside consecutive triples.
    fn triples(&mut self, edges: &[(usize, usize)]) {
        assert_eq!(edges.len() % 3, 0, "triples need a multiple of three edges");
        for t in edges.chunks(3) {
            self.cycle(t);
        }
    }

    fn finish(self, d: Distance) -> Result<EdgeMapping> {
        complete_mapping(self.host.clone(), &self.image, d)
    }
}

/// A maximum independent set, lexicographically smallest among those of
/// maximum size.
pub(crate) fn max_independent_set(g: &Graph) -> Vec<usize> {
    let n = g.order();
    assert!(n <= 24, "exact independent set search is for small graphs");
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let mut best: Vec<usize> = Vec::new();
    fn go(v: usize, n: usize, adj: &[u32], banned: u32, cur: &mut Vec<usize>, best: &mut Vec<usize>) {
        if cur.len() + (n - v) <= best.len() {
            return;
        }
        if v == n {
            *best = cur.clone();
            return;
        }
        if banned >> v & 1 == 0 {
            cur.push(v);
            go(v + 1, n, adj, banned | adj[v], cur, best);
            cur.pop();
        }
        go(v + 1, n, adj, banned, cur, best);
    }
    go(0, n, &adj, 0, &mut Vec::new(), &mut best);
    best
}

fn family(spec: &str) -> Result<PatternFamily> {
    spec.parse()
}

fn avoider(
    spec: &ConstructionSpec,
    host: Graph,
    mapping: EdgeMapping,
    patterns: PatternFamily,
    mode: Mode,
    d: Distance,
) -> Construction {
    Construction {
        spec: spec.clone(),
        host,
        mapping: Some(mapping),
        patterns,
        mode,
        d,
        claim: Claim::Avoider,
    }
}

pub fn build_construction(spec: &ConstructionSpec) -> Result<Construction> {
    use ConstructionSpec::*;
    let free = |host: Graph, f: EdgeMapping, p: PatternFamily| avoider(spec, host, f, p, Mode::Free, Distance::D1);
    match spec {
        Delta { r, t } => {
            let (r, t) = (*r, *t);
            if r < 2 || t < 2 {
                return param("Delta needs r, t >= 2");
            }
            let host = named(&format!("S:{}", 3 * (r - 1)))?.k_copies(t - 1);
            let mut rc = Recipe::new(&host);
            let edges = host.edges().to_vec();
            rc.triples(&edges);
            let f = rc.finish(Distance::D1)?;
            Ok(free(host, f, PatternFamily::delta(r, t)?))
        }
        PlusEdge { n, pattern } => {
            let fam = family(pattern)?;
            let h = compute_ex(*n, &fam)?.witness.graph();
            if h.size() == 0 {
                return param("extremal graph has no edges");
            }
            let (a, b) = (0..*n)
                .flat_map(|a| (a + 1..*n).map(move |b| (a, b)))
                .find(|&(a, b)| !h.has_edge(a, b))
                .ok_or_else(|| Error::Parameter("extremal graph is complete".into()))?;
            let host = h.add_edge(a, b)?;
            let mut rc = Recipe::new(&host);
            for &e in h.edges() {
                rc.set(e, (a, b));
            }
            let f = rc.finish(Distance::D1)?;
            Ok(free(host, f, fam))
        }
        IndMatching { n, pattern } => {
            let fam = family(pattern)?;
            for g in fam.members() {
                if g.components().iter().any(|c| c.len() == 2) {
                    return param("pattern has an isolated edge");
                }
            }
            let h = compute_ex(*n, &fam)?.witness.graph();
            let ind = max_independent_set(&h);
            if ind.len() < 2 {
                return param("extremal graph has independence number below 2");
            }
            let matching: Vec<(usize, usize)> = ind.chunks_exact(2).map(|p| (p[0], p[1])).collect();
            let mut host = h.clone();
            for &(a, b) in &matching {
                host = host.add_edge(a, b)?;
            }
            let mut rc = Recipe::new(&host);
            for &(x, y) in h.edges() {
                // an edge of h meets at most one matching edge, as the set is independent
                if let Some(&m) = matching.iter().find(|&&(a, b)| [a, b].contains(&x) || [a, b].contains(&y)) {
                    rc.set((x, y), m);
                }
            }
            let f = rc.finish(Distance::D1)?;
            Ok(free(host, f, fam))
        }
        TreeBlowup { tree, block, n } => {
            let t = named(tree)?.strip_isolated();
            if !t.is_tree() || t.max_degree() == t.size() {
                return param("pattern must be a tree that is not a star");
            }
            let b = named(block)?;
            if contains_copy(&b, &t) {
                return param("block contains the tree");
            }
            let k = b.order();
            let copies = (n.saturating_sub(1)) / k.max(1);
            if copies == 0 {
                return param("n too small for one block");
            }
            let ind = max_independent_set(&b);
            let mut edges = Vec::new();
            let mut hub_edges = Vec::new();
            for c in 0..copies {
                let off = 1 + c * k;
                edges.extend(b.edges().iter().map(|&(x, y)| (x + off, y + off)));
                for &x in &ind {
                    edges.push((0, x + off));
                    hub_edges.push(x + off);
                }
            }
            let host = Graph::from_edges(*n, edges)?;
            let mut rc = Recipe::new(&host);
            for &(a, b2) in host.edges() {
                if a == 0 {
                    continue;
                }
                for (x, y) in [(a, b2), (b2, a)] {
                    if hub_edges.contains(&x) && y != 0 {
                        rc.set((a, b2), (0, x));
                    }
                }
            }
            let f = rc.finish(Distance::D1)?;
            Ok(free(host, f, PatternFamily::single(tree, t)?))
        }
        EulerRegular { tree, n } => {
            let t = named(tree)?.strip_isolated();
            if !t.is_tree() {
                return param("pattern must be a tree");
            }
            let delta = t.max_degree();
            if delta < 2 || *n <= 2 * (delta - 1) {
                return param("need max degree >= 2 and n > 2(max degree - 1)");
            }
            let host = NamedGraphSpec::Circulant(*n, (1..delta).collect()).build()?;
            let trail = eulerian_circuit(&host, 0)
                .ok_or_else(|| Error::Infeasible("circulant host is not Eulerian".into()))?;
            let mut image = vec![0; host.size()];
            for (i, &e) in trail.iter().enumerate() {
                image[e] = trail[(i + 1) % trail.len()];
            }
            let f = EdgeMapping::new(host.clone(), image, Distance::D1)?;
            Ok(free(host, f, PatternFamily::single(tree, t)?))
        }
        BipartiteCyclic { delta_star, n } => {
            if *delta_star < 2 {
                return param("need delta* >= 2");
            }
            let k = delta_star - 1;
            if *n <= 3 * k {
                return param("need n > 3(delta* - 1)");
            }
            let host = NamedGraphSpec::CompleteBipartite(3 * k, n - 3 * k).build()?;
            let mut rc = Recipe::new(&host);
            for i in 0..k {
                let tri = [3 * i, 3 * i + 1, 3 * i + 2];
                for x in 3 * k..*n {
                    rc.cycle(&tri.map(|a| (a, x)));
                }
            }
            let f = rc.finish(Distance::D1)?;
            let p = NamedGraphSpec::DoubleStar(k, k);
            Ok(free(host, f, PatternFamily::single(&p.to_string(), p.build()?)?))
        }
        K3Join { n } => {
            if *n < 3 {
                return param("need n >= 3");
            }
            let host = NamedGraphSpec::Split(3, n - 3).build()?;
            let mut rc = Recipe::new(&host);
            rc.cycle(&[(0, 1), (1, 2), (0, 2)]);
            for x in 3..*n {
                rc.cycle(&[(0, x), (1, x), (2, x)]);
            }
            let f = rc.finish(Distance::D1)?;
            Ok(free(host, f, family("P5")?))
        }
        SplitMatching { t, n } => {
            let (t, n) = (*t, *n);
            if t < 2 || n < 2 * t - 1 {
                return param("need t >= 2 and n >= 2t - 1");
            }
            let split = NamedGraphSpec::Split(t - 1, n - t + 1).build()?;
            let v = t - 1;
            let mut host = split;
            for i in 1..t {
                host = host.add_edge(v, v + i)?;
            }
            let mut rc = Recipe::new(&host);
            for u in 0..t - 1 {
                for x in t - 1..n {
                    rc.set((u, x), (v, v + u + 1));
                }
            }
            let f = rc.finish(Distance::D1)?;
            Ok(free(host, f, family(&format!("{t}K2"))?))
        }
        StarPlusEdge { n } => {
            if *n < 3 {
                return param("need n >= 3");
            }
            let host = named(&format!("S:{}", n - 1))?.add_edge(1, 2)?;
            let mut rc = Recipe::new(&host);
            for x in 1..*n {
                rc.set((0, x), (1, 2));
            }
            let f = rc.finish(Distance::D1)?;
            Ok(free(host, f, family("2K2")?))
        }
        K4Pendant => {
            let host = Graph::complete(4).pad(1).add_edge(0, 4)?;
            let mut rc = Recipe::new(&host);
            for (a, b) in [(1, 2), (1, 3), (2, 3)] {
                rc.set((a, b), (0, 4));
            }
            for (x, opposite) in [(1, (2, 3)), (2, (1, 3)), (3, (1, 2))] {
                rc.set((0, x), opposite);
            }
            let f = rc.finish(Distance::D1)?;
            Ok(free(host, f, family("2K2")?))
        }
        Matching3t { t } => {
            if *t < 2 {
                return param("need t >= 2");
            }
            let host = named(&format!("M:{}", 3 * t - 3))?;
            let mut rc = Recipe::new(&host);
            let edges = host.edges().to_vec();
            rc.triples(&edges);
            let f = rc.finish(Distance::D1)?;
            Ok(free(host, f, family(&format!("{t}K2"))?))
        }
        DStar { r, k, delete } => dstar::build(spec, *r, *k, *delete),
        K6Five { copies } => {
            if *copies == 0 {
                return param("need at least one copy");
            }
            let host = Graph::complete(6).k_copies(*copies);
            let mut rc = Recipe::new(&host);
            for c in 0..*copies {
                let o = 6 * c;
                for round in 0..5 {
                    let m = [
                        (o + 5, o + round),
                        (o + (round + 1) % 5, o + (round + 4) % 5),
                        (o + (round + 2) % 5, o + (round + 3) % 5),
                    ];
                    let mut m = m.map(|(a, b)| (a.min(b), a.max(b)));
                    m.sort_unstable();
                    rc.cycle(&m);
                }
            }
            let f = rc.finish(Distance::D0)?;
            Ok(avoider(spec, host, f, family("K1,2")?, Mode::Exclusive, Distance::D0))
        }
        TriangleChain { k, delete } => chain::build(spec, *k, *delete),
    }
}

fn kv(args: &str) -> Result<BTreeMap<String, String>> {
    // values may contain commas (`K1,3`), so a fragment without `=` continues the previous value
    let mut out: BTreeMap<String, String> = BTreeMap::new();
    let mut last: Option<String> = None;
    for frag in args.split(',').filter(|f| !f.trim().is_empty()) {
        match frag.split_once('=') {
            Some((k, v)) => {
                let k = k.trim().to_string();
                if out.insert(k.clone(), v.trim().to_string()).is_some() {
                    return Err(Error::Parse(format!("repeated key {k:?}")));
                }
                last = Some(k);
            }
            None => {
                let k = last
                    .as_ref()
                    .ok_or_else(|| Error::Parse(format!("expected key=value, got {frag:?}")))?;
                let v = out.get_mut(k).expect("key recorded");
                v.push(',');
                v.push_str(frag.trim());
            }
        }
    }
    Ok(out)
}

struct Args(BTreeMap<String, String>);

impl Args {
    fn num(&mut self, key: &str) -> Result<usize> {
        let v = self.text(key)?;
        v.parse().map_err(|_| Error::Parse(format!("{key} must be a number, got {v:?}")))
    }

    fn text(&mut self, key: &str) -> Result<String> {
        self.0
            .remove(key)
            .ok_or_else(|| Error::Parse(format!("missing parameter {key:?}")))
    }

    fn opt_num(&mut self, key: &str) -> Result<Option<usize>> {
        match self.0.remove(key) {
            None => Ok(None),
            Some(v) if v == "none" => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| Error::Parse(format!("{key} must be a number, got {v:?}"))),
        }
    }

    fn done(self) -> Result<()> {
        match self.0.keys().next() {
            Some(k) => Err(Error::Parse(format!("unknown parameter {k:?}"))),
            None => Ok(()),
        }
    }
}

impl FromStr for ConstructionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<ConstructionSpec> {
        use ConstructionSpec::*;
        let (kind, args) = s.trim().split_once(':').unwrap_or((s.trim(), ""));
        let mut a = Args(kv(args)?);
        let spec = match kind.to_ascii_lowercase().as_str() {
            "delta" => Delta { r: a.num("r")?, t: a.num("t")? },
            "plusedge" => PlusEdge { n: a.num("n")?, pattern: a.text("pattern")? },
            "indmatch" => IndMatching { n: a.num("n")?, pattern: a.text("pattern")? },
            "treeblowup" => TreeBlowup {
                tree: a.text("tree")?,
                block: a.text("block")?,
                n: a.num("n")?,
            },
            "euler" => EulerRegular { tree: a.text("tree")?, n: a.num("n")? },
            "bipcyclic" => BipartiteCyclic { delta_star: a.num("dstar")?, n: a.num("n")? },
            "k3join" => K3Join { n: a.num("n")? },
            "split" => SplitMatching { t: a.num("t")?, n: a.num("n")? },
            "starplus" => StarPlusEdge { n: a.num("n")? },
            "k4pendant" => K4Pendant,
            "matching3t" => Matching3t { t: a.num("t")? },
            "dstar" => DStar { r: a.num("r")?, k: a.num("k")?, delete: a.opt_num("delete")? },
            "k6five" => K6Five { copies: a.opt_num("copies")?.unwrap_or(1) },
            "trichain" => TriangleChain { k: a.num("k")?, delete: a.opt_num("delete")? },
            _ => return Err(Error::Parse(format!("unknown construction kind {kind:?}"))),
        };
        a.done()?;
        Ok(spec)
    }
}

impl fmt::Display for ConstructionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ConstructionSpec::*;
        let del = |d: &Option<usize>| d.map(|e| format!(",delete={e}")).unwrap_or_default();
        match self {
            Delta { r, t } => write!(f, "delta:r={r},t={t}"),
            PlusEdge { n, pattern } => write!(f, "plusedge:n={n},pattern={pattern}"),
            IndMatching { n, pattern } => write!(f, "indmatch:n={n},pattern={pattern}"),
            TreeBlowup { tree, block, n } => write!(f, "treeblowup:tree={tree},block={block},n={n}"),
            EulerRegular { tree, n } => write!(f, "euler:tree={tree},n={n}"),
            BipartiteCyclic { delta_star, n } => write!(f, "bipcyclic:dstar={delta_star},n={n}"),
            K3Join { n } => write!(f, "k3join:n={n}"),
            SplitMatching { t, n } => write!(f, "split:t={t},n={n}"),
            StarPlusEdge { n } => write!(f, "starplus:n={n}"),
            K4Pendant => write!(f, "k4pendant"),
            Matching3t { t } => write!(f, "matching3t:t={t}"),
            DStar { r, k, delete } => write!(f, "dstar:r={r},k={k}{}", del(delete)),
            K6Five { copies } => write!(f, "k6five:copies={copies}"),
            TriangleChain { k, delete } => write!(f, "trichain:k={k}{}", del(delete)),
        }
    }
}

/// Small-parameter instances of every kind, including all edge deletions of
/// the `D` graphs for `r = 2, 3` and of the triangle chain for `k = 2`.
pub fn default_grid() -> Vec<ConstructionSpec> {
    use ConstructionSpec::*;
    let mut grid = Vec::new();
    for (r, t) in [(2, 2), (3, 2), (2, 3), (3, 3), (4, 2)] {
        grid.push(Delta { r, t });
    }
    for (n, p) in [(5, "P3"), (5, "2K2"), (6, "K3"), (6, "P4")] {
        grid.push(PlusEdge { n, pattern: p.into() });
    }
    for (n, p) in [(5, "P3"), (5, "K3"), (6, "P4")] {
        grid.push(IndMatching { n, pattern: p.into() });
    }
    for (tree, block, n) in [("P4", "K3", 7), ("P5", "K4", 9), ("P4", "K2", 7)] {
        grid.push(TreeBlowup {
            tree: tree.into(),
            block: block.into(),
            n,
        });
    }
    for n in 6..=10 {
        grid.push(EulerRegular { tree: "P4".into(), n });
    }
    for n in 5..=7 {
        grid.push(EulerRegular { tree: "K1,3".into(), n });
    }
    for n in 8..=12 {
        grid.push(BipartiteCyclic { delta_star: 2, n });
    }
    grid.push(BipartiteCyclic { delta_star: 3, n: 9 });
    for n in 5..=8 {
        grid.push(K3Join { n });
    }
    for (t, n) in [(2, 5), (3, 8), (3, 12), (4, 10)] {
        grid.push(SplitMatching { t, n });
    }
    for n in 4..=8 {
        grid.push(StarPlusEdge { n });
    }
    grid.push(K4Pendant);
    for t in 2..=4 {
        grid.push(Matching3t { t });
    }
    for (r, k) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
        grid.push(DStar { r, k, delete: None });
        for e in 0..dstar::size(r, k) {
            grid.push(DStar { r, k, delete: Some(e) });
        }
    }
    grid.push(K6Five { copies: 1 });
    grid.push(K6Five { copies: 2 });
    for k in 2..=4 {
        grid.push(TriangleChain { k, delete: None });
    }
    for e in 0..25 {
        grid.push(TriangleChain { k: 2, delete: Some(e) });
    }
    grid
}
