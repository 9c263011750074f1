//! Pattern families, copy enumeration, and the free/exclusive predicates.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{named::named, Graph};
use crate::mapping::{EdgeMapping, Mode};

/// A non-empty list of patterns, each with at least one edge and no isolated vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternFamily {
    members: Vec<Graph>,
    labels: Vec<String>,
}

impl PatternFamily {
    pub fn new(members: Vec<(String, Graph)>) -> Result<PatternFamily> {
        if members.is_empty() {
            return Err(Error::Parameter("pattern family is empty".into()));
        }
        let mut labels = Vec::new();
        let mut graphs = Vec::new();
        for (label, g) in members {
            if g.size() == 0 {
                return Err(Error::Parameter(format!("pattern {label} has no edges")));
            }
            labels.push(label);
            graphs.push(g.strip_isolated());
        }
        Ok(PatternFamily {
            members: graphs,
            labels,
        })
    }

    pub fn single(label: &str, g: Graph) -> Result<PatternFamily> {
        PatternFamily::new(vec![(label.to_string(), g)])
    }

    /// The family `{K_{1,r}, tK_2}`.
    pub fn delta(r: usize, t: usize) -> Result<PatternFamily> {
        if r == 0 || t == 0 {
            return Err(Error::Parameter("Delta(r,t) needs r, t >= 1".into()));
        }
        PatternFamily::new(vec![
            (format!("K1,{r}"), named(&format!("S:{r}"))?),
            (format!("{t}K2"), named(&format!("M:{t}"))?),
        ])
    }

    pub fn members(&self) -> &[Graph] {
        &self.members
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn max_order(&self) -> usize {
        self.members.iter().map(Graph::order).max().unwrap_or(0)
    }

    pub fn min_size(&self) -> usize {
        self.members.iter().map(Graph::size).min().unwrap_or(0)
    }

    /// True when the only member is isomorphic to `g`.
    pub fn is_single(&self, g: &Graph) -> bool {
        self.members.len() == 1 && self.members[0].is_isomorphic(g).unwrap_or(false)
    }

    /// True when `host` contains no copy of any member.
    pub fn is_free_of(&self, host: &Graph) -> bool {
        self.members.iter().all(|p| !contains_copy(host, p))
    }

    pub fn graph6_list(&self) -> Vec<String> {
        self.members.iter().map(Graph::to_graph6).collect()
    }
}

impl FromStr for PatternFamily {
    type Err = Error;

    /// Members separated by `;`; `Delta:r,t` expands to `K1,r;tK2`.
    fn from_str(s: &str) -> Result<PatternFamily> {
        let mut members = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            if let Some(args) = part.strip_prefix("Delta:") {
                let v: Vec<usize> = args
                    .split(',')
                    .map(|a| a.trim().parse().map_err(|_| Error::Parse(format!("bad Delta {args:?}"))))
                    .collect::<Result<_>>()?;
                let [r, t] = v[..] else {
                    return Err(Error::Parse("Delta takes r,t".into()));
                };
                let fam = PatternFamily::delta(r, t)?;
                members.extend(fam.labels.into_iter().zip(fam.members));
            } else {
                members.push((part.to_string(), named(part)?));
            }
        }
        PatternFamily::new(members)
    }
}

impl fmt::Display for PatternFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.labels.join(";"))
    }
}

/// One copy of a pattern in a host, identified by its edge set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternCopy {
    /// Index of the family member this copy realizes.
    pub member: usize,
    /// Sorted host edge indices.
    pub edges: Vec<usize>,
    /// Sorted host vertices: exactly the endpoints of `edges`.
    pub vertices: Vec<usize>,
}

impl PatternCopy {
    pub fn from_edges(host: &Graph, member: usize, mut edges: Vec<usize>) -> PatternCopy {
        edges.sort_unstable();
        edges.dedup();
        let mut vertices: Vec<usize> = edges
            .iter()
            .flat_map(|&e| {
                let (u, v) = host.edge(e);
                [u, v]
            })
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        PatternCopy {
            member,
            edges,
            vertices,
        }
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Whether the copy survives `f`: no copy edge maps into the copy.
    pub fn is_free_under(&self, image: &[usize]) -> bool {
        self.edges.iter().all(|&e| !self.contains_edge(image[e]))
    }

    /// Whether every copy edge maps to an edge avoiding all copy vertices.
    pub fn is_exclusive_under(&self, host: &Graph, image: &[usize]) -> bool {
        self.edges.iter().all(|&e| {
            let (a, b) = host.edge(image[e]);
            !self.contains_vertex(a) && !self.contains_vertex(b)
        })
    }

    pub fn survives(&self, host: &Graph, image: &[usize], mode: Mode) -> bool {
        match mode {
            Mode::Free => self.is_free_under(image),
            Mode::Exclusive => self.is_exclusive_under(host, image),
        }
    }
}

pub fn is_f_free(copy: &PatternCopy, f: &EdgeMapping) -> bool {
    copy.is_free_under(f.image())
}

pub fn is_f_exclusive(copy: &PatternCopy, f: &EdgeMapping) -> bool {
    copy.is_exclusive_under(f.host(), f.image())
}

/// Pattern vertex order for embedding: breadth-first within each component,
/// each component rooted at a vertex of maximum degree.
struct Plan {
    order: Vec<usize>,
    /// For each position, earlier positions whose vertices are adjacent in the pattern.
    back: Vec<Vec<usize>>,
    /// For each position, earlier positions of twins whose image must be smaller.
    below: Vec<Vec<usize>>,
    degree: Vec<usize>,
}

fn plan(p: &Graph) -> Plan {
    let n = p.order();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let root = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (p.degree(v), std::cmp::Reverse(v)))
            .expect("unplaced vertex");
        placed[root] = true;
        let start = order.len();
        order.push(root);
        let mut head = start;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in p.neighbors(v) {
                if !placed[w] {
                    placed[w] = true;
                    order.push(w);
                }
            }
        }
    }
    let pos: Vec<usize> = {
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    };
    let twins = |u: usize, v: usize| {
        let nu: Vec<usize> = p.neighbors(u).iter().copied().filter(|&x| x != v).collect();
        let nv: Vec<usize> = p.neighbors(v).iter().copied().filter(|&x| x != u).collect();
        nu == nv
    };
    let mut back = vec![Vec::new(); n];
    let mut below = vec![Vec::new(); n];
    for (i, &v) in order.iter().enumerate() {
        for &w in p.neighbors(v) {
            if pos[w] < i {
                back[i].push(pos[w]);
            }
        }
        for (j, &u) in order[..i].iter().enumerate() {
            if twins(u, v) {
                below[i].push(j);
            }
        }
    }
    Plan {
        degree: order.iter().map(|&v| p.degree(v)).collect(),
        order,
        back,
        below,
    }
}

/// All copies (not necessarily induced) of `pattern` in `host`, sorted by edge set.
pub fn enumerate_copies(host: &Graph, pattern: &Graph) -> Vec<PatternCopy> {
    enumerate_member(host, &pattern.strip_isolated(), 0)
}

fn enumerate_member(host: &Graph, p: &Graph, member: usize) -> Vec<PatternCopy> {
    if p.size() == 0 || p.order() > host.order() || p.size() > host.size() {
        return Vec::new();
    }
    let pl = plan(p);
    let mut img = vec![usize::MAX; p.order()];
    let mut used = vec![false; host.order()];
    let mut found: Vec<Vec<usize>> = Vec::new();
    let pattern_edges: Vec<(usize, usize)> = {
        let mut pos = vec![0; p.order()];
        for (i, &v) in pl.order.iter().enumerate() {
            pos[v] = i;
        }
        p.edges().iter().map(|&(u, v)| (pos[u], pos[v])).collect()
    };
    embed(host, &pl, 0, &mut img, &mut used, &mut |img| {
        let mut es: Vec<usize> = pattern_edges
            .iter()
            .map(|&(a, b)| host.edge_index(img[a], img[b]).expect("embedded edge"))
            .collect();
        es.sort_unstable();
        found.push(es);
    });
    found.sort_unstable();
    found.dedup();
    found
        .into_iter()
        .map(|es| PatternCopy::from_edges(host, member, es))
        .collect()
}

fn embed(
    host: &Graph,
    pl: &Plan,
    i: usize,
    img: &mut [usize],
    used: &mut [bool],
    emit: &mut dyn FnMut(&[usize]),
) {
    if i == pl.order.len() {
        emit(img);
        return;
    }
    let lower = pl.below[i].iter().map(|&j| img[j]).max();
    let try_vertex = |x: usize, img: &[usize], used: &[bool]| {
        !used[x]
            && host.degree(x) >= pl.degree[i]
            && lower.is_none_or(|l| x > l)
            && pl.back[i].iter().all(|&j| host.has_edge(img[j], x))
    };
    match pl.back[i].first() {
        Some(&anchor) => {
            let a = img[anchor];
            for &x in host.neighbors(a) {
                if try_vertex(x, img, used) {
                    img[i] = x;
                    used[x] = true;
                    embed(host, pl, i + 1, img, used, emit);
                    used[x] = false;
                }
            }
        }
        None => {
            for x in 0..host.order() {
                if try_vertex(x, img, used) {
                    img[i] = x;
                    used[x] = true;
                    embed(host, pl, i + 1, img, used, emit);
                    used[x] = false;
                }
            }
        }
    }
}

/// Copies of every member, member by member, each list sorted by edge set.
pub fn enumerate_family(host: &Graph, family: &PatternFamily) -> Vec<PatternCopy> {
    family
        .members()
        .iter()
        .enumerate()
        .flat_map(|(k, p)| enumerate_member(host, p, k))
        .collect()
}

/// Whether `host` contains at least one copy of `pattern`.
pub fn contains_copy(host: &Graph, pattern: &Graph) -> bool {
    let p = pattern.strip_isolated();
    if p.size() == 0 {
        return true;
    }
    if p.order() > host.order() || p.size() > host.size() {
        return false;
    }
    let pl = plan(&p);
    let mut img = vec![usize::MAX; p.order()];
    let mut used = vec![false; host.order()];
    exists(host, &pl, 0, &mut img, &mut used)
}

fn exists(host: &Graph, pl: &Plan, i: usize, img: &mut [usize], used: &mut [bool]) -> bool {
    if i == pl.order.len() {
        return true;
    }
    let lower = pl.below[i].iter().map(|&j| img[j]).max();
    let candidates: Box<dyn Iterator<Item = usize>> = match pl.back[i].first() {
        Some(&anchor) => Box::new(host.neighbors(img[anchor]).to_vec().into_iter()),
        None => Box::new(0..host.order()),
    };
    for x in candidates {
        if used[x]
            || host.degree(x) < pl.degree[i]
            || lower.is_some_and(|l| x <= l)
            || !pl.back[i].iter().all(|&j| host.has_edge(img[j], x))
        {
            continue;
        }
        img[i] = x;
        used[x] = true;
        let ok = exists(host, pl, i + 1, img, used);
        used[x] = false;
        if ok {
            return true;
        }
    }
    false
}

/// The copies of the family that survive `f` in the given mode.
pub fn surviving_copies(f: &EdgeMapping, family: &PatternFamily, mode: Mode) -> Vec<PatternCopy> {
    enumerate_family(f.host(), family)
        .into_iter()
        .filter(|c| c.survives(f.host(), f.image(), mode))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping::Distance;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn g(spec: &str) -> Graph {
        named(spec).unwrap()
    }

    /// Independent count: edge subsets of the right size whose subgraph is isomorphic.
    fn brute_count(host: &Graph, pattern: &Graph) -> usize {
        let m = host.size();
        let k = pattern.size();
        let target = pattern.strip_isolated().canonical_form().unwrap();
        let mut count = 0;
        for mask in 0u64..(1 << m) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let es: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
            let sub = host.edge_subgraph(&es).strip_isolated();
            if sub.canonical_form().unwrap() == target {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn example_counts() {
        assert_eq!(enumerate_copies(&g("K4"), &g("2K2")).len(), 3);
        assert_eq!(enumerate_copies(&g("K6"), &g("K3")).len(), 20);
        assert_eq!(enumerate_copies(&g("K6"), &g("K1,2")).len(), 60);
        assert_eq!(enumerate_copies(&g("K5"), &g("2K2")).len(), 15);
        assert_eq!(enumerate_copies(&g("P6"), &g("2K2")).len(), 6);
    }

    #[test]
    fn matching_counts_match_closed_form() {
        fn fact(n: usize) -> usize {
            (1..=n).product()
        }
        for n in 2..=8 {
            for t in 1..=3 {
                if 2 * t > n {
                    continue;
                }
                let expect = fact(n) / (fact(t) * (1 << t) * fact(n - 2 * t));
                let got = enumerate_copies(&Graph::complete(n), &g(&format!("{t}K2"))).len();
                assert_eq!(got, expect, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn matches_brute_force_on_small_hosts() {
        let hosts = ["K5", "W4minus", "C4pp", "P3|K3", "K2,3", "H2"];
        let pats = ["2K2", "P3", "K3", "P4", "C4", "K1,3", "3K2", "P3|K2"];
        for h in hosts {
            for p in pats {
                let host = g(h);
                if host.size() > 16 {
                    continue;
                }
                assert_eq!(
                    enumerate_copies(&host, &g(p)).len(),
                    brute_count(&host, &g(p)),
                    "{p} in {h}"
                );
            }
        }
    }

    #[test]
    fn cyclic_mapping_on_3k2() {
        let h = g("3K2");
        let f = EdgeMapping::new(h.clone(), vec![1, 2, 0], Distance::D0).unwrap();
        let copies = enumerate_copies(&h, &g("2K2"));
        assert_eq!(copies.len(), 3);
        assert!(copies.iter().all(|c| !is_f_free(c, &f)));
        let first = copies.iter().find(|c| c.edges == vec![0, 1]).unwrap();
        assert!(!is_f_free(first, &f));
    }

    #[test]
    fn k4_opposite_edges() {
        let k4 = Graph::complete(4);
        let f = EdgeMapping::new(k4.clone(), vec![5, 4, 3, 2, 1, 0], Distance::D0).unwrap();
        for c in enumerate_copies(&k4, &g("2K2")) {
            assert!(!is_f_free(&c, &f));
        }
        let paths = enumerate_copies(&k4, &g("P3"));
        assert_eq!(paths.len(), 12);
        assert!(paths.iter().all(|c| !is_f_exclusive(c, &f)));
    }

    #[test]
    fn exclusive_copy_far_from_images() {
        let h = g("K2|K2|K2");
        let f = EdgeMapping::new(h.clone(), vec![2, 2, 0], Distance::D0).unwrap();
        let c = PatternCopy::from_edges(&h, 0, vec![0]);
        assert!(is_f_exclusive(&c, &f));
        assert!(is_f_free(&c, &f));
    }

    #[test]
    fn family_parsing() {
        let fam: PatternFamily = "Delta:3,2".parse().unwrap();
        assert_eq!(fam.len(), 2);
        assert_eq!(fam.labels(), &["K1,3".to_string(), "2K2".to_string()]);
        let fam: PatternFamily = "P3;2K2".parse().unwrap();
        assert_eq!(fam.len(), 2);
        assert!("".parse::<PatternFamily>().is_err());
        assert!("E3".parse::<PatternFamily>().is_err());
    }

    #[test]
    fn contains_copy_agrees_with_enumeration() {
        for h in ["P6", "C4pp", "K4", "3K2", "K1,4"] {
            for p in ["2K2", "P4", "K3", "C4", "K1,3", "3K2"] {
                assert_eq!(
                    contains_copy(&g(h), &g(p)),
                    !enumerate_copies(&g(h), &g(p)).is_empty(),
                    "{p} in {h}"
                );
            }
        }
    }

    fn random_graph(n: usize, bits: &[bool]) -> Graph {
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
    }

    proptest! {
        #[test]
        fn exclusive_implies_free(
            n in 4usize..=7,
            bits in proptest::collection::vec(any::<bool>(), 21),
            seed in any::<u64>(),
        ) {
            let host = random_graph(n, &bits);
            prop_assume!(crate::mapping::has_legal_mapping(&host, Distance::D0) && host.size() > 0);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let image: Vec<usize> = (0..host.size())
                .map(|e| {
                    let opts: Vec<usize> = crate::mapping::legal_images(&host, e, Distance::D0).collect();
                    *opts.choose(&mut rng).unwrap()
                })
                .collect();
            let f = EdgeMapping::new(host.clone(), image, Distance::D0).unwrap();
            for p in ["P3", "2K2", "K3"] {
                for c in enumerate_copies(&host, &g(p)) {
                    prop_assert!(!is_f_exclusive(&c, &f) || is_f_free(&c, &f));
                }
            }
        }

        #[test]
        fn copies_invariant_under_relabeling(
            n in 3usize..=7,
            bits in proptest::collection::vec(any::<bool>(), 21),
            seed in any::<u64>(),
        ) {
            let host = random_graph(n, &bits);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let moved = host.relabel(&perm).unwrap();
            for p in ["P3", "2K2", "K3", "P4"] {
                let a = enumerate_copies(&host, &g(p));
                let mut mapped: Vec<Vec<usize>> = a
                    .iter()
                    .map(|c| {
                        let mut es: Vec<usize> = c
                            .edges
                            .iter()
                            .map(|&e| {
                                let (u, v) = host.edge(e);
                                moved.edge_index(perm[u], perm[v]).unwrap()
                            })
                            .collect();
                        es.sort_unstable();
                        es
                    })
                    .collect();
                mapped.sort();
                let b: Vec<Vec<usize>> = enumerate_copies(&moved, &g(p)).into_iter().map(|c| c.edges).collect();
                prop_assert_eq!(mapped, b);
            }
        }
    }
}
