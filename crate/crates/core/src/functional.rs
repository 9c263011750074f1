//! Digraphs of bounded out-degree built from edge mappings, their large
//! independent sets, and the exclusive star extractions that rest on them.

use crate::error::{param, Result};
use crate::graph::Graph;
use crate::mapping::{Distance, EdgeMapping};
use crate::patterns::PatternCopy;

/// A digraph on `0..n` whose out-lists have length at most `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalDigraph {
    out: Vec<Vec<usize>>,
    d: usize,
}

impl FunctionalDigraph {
    /// Self-arcs and repeated arcs are dropped.
    pub fn new(out: Vec<Vec<usize>>, d: usize) -> Result<FunctionalDigraph> {
        let n = out.len();
        let mut clean = Vec::with_capacity(n);
        for (v, list) in out.into_iter().enumerate() {
            let mut list: Vec<usize> = list.into_iter().filter(|&w| w != v).collect();
            list.sort_unstable();
            list.dedup();
            if let Some(&w) = list.iter().find(|&&w| w >= n) {
                return param(format!("arc {v} -> {w} leaves the vertex set"));
            }
            if list.len() > d {
                return param(format!("vertex {v} has out-degree {} above {d}", list.len()));
            }
            clean.push(list);
        }
        Ok(FunctionalDigraph { out: clean, d })
    }

    pub fn order(&self) -> usize {
        self.out.len()
    }

    pub fn out(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn bound(&self) -> usize {
        self.d
    }

    pub fn max_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    /// Underlying simple undirected graph.
    pub fn underlying(&self) -> Graph {
        let mut edges: Vec<(usize, usize)> = self
            .out
            .iter()
            .enumerate()
            .flat_map(|(v, l)| l.iter().map(move |&w| (v.min(w), v.max(w))))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Graph::from_edges(self.order(), edges).expect("arcs are loop-free")
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .all(|&u| set.iter().all(|&v| !self.has_arc(u, v)))
    }
}

/// Arc `E_i -> E_j` whenever some edge of `E_i` maps into `E_j` (`i != j`).
/// Without a partition every edge is its own part.
pub fn build_gamma(f: &EdgeMapping, partition: Option<&[Vec<usize>]>) -> Result<FunctionalDigraph> {
    let m = f.host().size();
    let parts: Vec<Vec<usize>> = match partition {
        Some(p) => p.to_vec(),
        None => (0..m).map(|e| vec![e]).collect(),
    };
    let mut owner = vec![usize::MAX; m];
    for (i, part) in parts.iter().enumerate() {
        for &e in part {
            if e >= m {
                return param(format!("partition mentions edge {e} outside the host"));
            }
            if owner[e] != usize::MAX {
                return param(format!("edge {e} lies in two parts"));
            }
            owner[e] = i;
        }
    }
    if let Some(e) = owner.iter().position(|&o| o == usize::MAX) {
        return param(format!("edge {e} is in no part"));
    }
    let out = parts
        .iter()
        .map(|part| part.iter().map(|&e| owner[f.apply(e)]).collect())
        .collect();
    let d = parts.iter().map(Vec::len).max().unwrap_or(0);
    FunctionalDigraph::new(out, d)
}

/// A large independent set of the underlying graph, sorted.
///
/// With out-degree at most one, tree components are 2-colored and components
/// with a cycle lose one cycle vertex first; otherwise a smallest-last greedy
/// coloring uses at most `2d + 1` colors. Each component contributes its
/// largest color class, ties going to the class with the smallest vertex.
pub fn independent_set(g: &FunctionalDigraph) -> Vec<usize> {
    let u = g.underlying();
    let mut chosen = Vec::new();
    for comp in u.components() {
        let classes = if g.max_out_degree() <= 1 {
            low_degree_classes(&u, &comp)
        } else {
            greedy_classes(&u, &comp)
        };
        let best = classes
            .into_iter()
            .filter(|c| !c.is_empty())
            .max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))
            .unwrap_or_default();
        chosen.extend(best);
    }
    chosen.sort_unstable();
    chosen
}

/// Candidate classes for a component of a graph with at most one cycle.
fn low_degree_classes(u: &Graph, comp: &[usize]) -> Vec<Vec<usize>> {
    let edges: usize = comp.iter().map(|&v| u.degree(v)).sum::<usize>() / 2;
    let removed = if edges + 1 == comp.len() {
        None
    } else {
        Some(smallest_cycle_vertex(u, comp))
    };
    // 2-color what remains; each remaining tree picks its larger side
    let mut color = vec![u8::MAX; u.order()];
    let mut picked = Vec::new();
    for &s in comp {
        if Some(s) == removed || color[s] != u8::MAX {
            continue;
        }
        let mut sides = [Vec::new(), Vec::new()];
        color[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            sides[color[v] as usize].push(v);
            for &w in u.neighbors(v) {
                if Some(w) != removed && color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    stack.push(w);
                }
            }
        }
        for side in &mut sides {
            side.sort_unstable();
        }
        let [a, b] = sides;
        picked.extend(if b.len() > a.len() { b } else { a });
    }
    picked.sort_unstable();
    vec![picked]
}

fn smallest_cycle_vertex(u: &Graph, comp: &[usize]) -> usize {
    let mut deg: Vec<usize> = (0..u.order()).map(|v| u.degree(v)).collect();
    let mut alive = vec![false; u.order()];
    comp.iter().for_each(|&v| alive[v] = true);
    let mut leaves: Vec<usize> = comp.iter().copied().filter(|&v| deg[v] <= 1).collect();
    while let Some(v) = leaves.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &w in u.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    leaves.push(w);
                }
            }
        }
    }
    *comp.iter().find(|&&v| alive[v]).expect("component has a cycle")
}

/// Color classes of a smallest-last greedy coloring of one component.
fn greedy_classes(u: &Graph, comp: &[usize]) -> Vec<Vec<usize>> {
    let n = u.order();
    let mut in_comp = vec![false; n];
    comp.iter().for_each(|&v| in_comp[v] = true);
    let mut deg: Vec<usize> = (0..n).map(|v| u.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(comp.len());
    for _ in 0..comp.len() {
        let v = *comp
            .iter()
            .filter(|&&v| !removed[v])
            .min_by_key(|&&v| (deg[v], v))
            .expect("vertex left");
        removed[v] = true;
        order.push(v);
        for &w in u.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    let mut color = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in order.iter().rev() {
        let used: Vec<usize> = u.neighbors(v).iter().map(|&w| color[w]).collect();
        let c = (0..).find(|c| !used.contains(c)).expect("free color");
        color[v] = c;
        if c == classes.len() {
            classes.push(Vec::new());
        }
        classes[c].push(v);
    }
    for c in &mut classes {
        c.sort_unstable();
    }
    classes
}

fn require_d0(f: &EdgeMapping) -> Result<()> {
    if f.d() != Distance::D0 {
        return param("exclusive star extraction needs a distance-0 mapping");
    }
    Ok(())
}

/// Edges at `v` among `candidates`, keeping an independent set of the digraph
/// with arc `e_i -> e_j` iff `f(e_i)` meets `e_j`. Such a set spans an
/// f-exclusive star, since `f(e_i)` never contains `v`.
fn exclusive_edges_at(f: &EdgeMapping, candidates: &[usize]) -> Vec<usize> {
    let host = f.host();
    let out: Vec<Vec<usize>> = candidates
        .iter()
        .map(|&ei| {
            let (a, b) = host.edge(f.apply(ei));
            candidates
                .iter()
                .enumerate()
                .filter(|&(_, &ej)| {
                    let (c, d) = host.edge(ej);
                    a == c || a == d || b == c || b == d
                })
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    let g = FunctionalDigraph::new(out, 2).expect("image meets at most two star edges");
    independent_set(&g).into_iter().map(|j| candidates[j]).collect()
}

/// An f-exclusive `K_{1,r}`. Centers are tried by decreasing degree, so a
/// vertex of degree at least `5r - 4` guarantees success.
pub fn find_exclusive_star(host: &Graph, f: &EdgeMapping, r: usize) -> Result<Option<PatternCopy>> {
    require_d0(f)?;
    if f.host() != host {
        return param("mapping belongs to a different host");
    }
    if r == 0 {
        return param("star size must be at least 1");
    }
    let mut centers: Vec<usize> = (0..host.order()).filter(|&v| host.degree(v) >= r).collect();
    centers.sort_by_key(|&v| (std::cmp::Reverse(host.degree(v)), v));
    for v in centers {
        let incident: Vec<usize> = host
            .neighbors(v)
            .iter()
            .map(|&w| host.edge_index(v, w).expect("incident edge"))
            .collect();
        let chosen = exclusive_edges_at(f, &incident);
        if chosen.len() >= r {
            return Ok(Some(PatternCopy::from_edges(host, 0, chosen[..r].to_vec())));
        }
    }
    Ok(None)
}

/// An f-exclusive `t K_{1,r}`, assembled from exclusive stars inside greedily
/// chosen vertex-disjoint copies of `K_{1,5r-4}`. The star-level digraph has
/// out-degree at most `2r`, so `(4r+1)(t-1)+1` disjoint big stars suffice.
pub fn find_exclusive_star_forest(
    host: &Graph,
    f: &EdgeMapping,
    r: usize,
    t: usize,
) -> Result<Option<PatternCopy>> {
    require_d0(f)?;
    if f.host() != host {
        return param("mapping belongs to a different host");
    }
    if r == 0 || t == 0 {
        return param("star size and count must be at least 1");
    }
    let big = 5 * r - 4;
    let mut used = vec![false; host.order()];
    let mut centers: Vec<usize> = (0..host.order()).collect();
    centers.sort_by_key(|&v| (std::cmp::Reverse(host.degree(v)), v));
    let mut small_stars: Vec<Vec<usize>> = Vec::new();
    for v in centers {
        if used[v] {
            continue;
        }
        let leaves: Vec<usize> = host.neighbors(v).iter().copied().filter(|&w| !used[w]).take(big).collect();
        if leaves.len() < big {
            continue;
        }
        used[v] = true;
        leaves.iter().for_each(|&w| used[w] = true);
        let incident: Vec<usize> = leaves
            .iter()
            .map(|&w| host.edge_index(v, w).expect("incident edge"))
            .collect();
        let chosen = exclusive_edges_at(f, &incident);
        if chosen.len() >= r {
            small_stars.push(chosen[..r].to_vec());
        }
    }
    let copies: Vec<PatternCopy> = small_stars
        .iter()
        .map(|s| PatternCopy::from_edges(host, 0, s.clone()))
        .collect();
    let out: Vec<Vec<usize>> = copies
        .iter()
        .map(|ci| {
            let hit: Vec<usize> = ci
                .edges
                .iter()
                .flat_map(|&e| {
                    let (a, b) = host.edge(f.apply(e));
                    [a, b]
                })
                .collect();
            copies
                .iter()
                .enumerate()
                .filter(|(_, cj)| hit.iter().any(|&x| cj.contains_vertex(x)))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    let g = FunctionalDigraph::new(out, 2 * r).expect("each star edge image meets at most two stars");
    let pick = independent_set(&g);
    if pick.len() < t {
        return Ok(None);
    }
    let edges: Vec<usize> = pick[..t].iter().flat_map(|&i| small_stars[i].clone()).collect();
    Ok(Some(PatternCopy::from_edges(host, 0, edges)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::named;
    use crate::mapping::legal_images;
    use crate::patterns::is_f_exclusive;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_alpha(g: &FunctionalDigraph) -> usize {
        let n = g.order();
        (0u32..1 << n)
            .filter(|&mask| {
                let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                g.is_independent(&set)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn cyclic_3k2_gamma_is_a_directed_triangle() {
        let h = named("3K2").unwrap();
        let f = EdgeMapping::new(h, vec![1, 2, 0], Distance::D0).unwrap();
        let g = build_gamma(&f, None).unwrap();
        assert_eq!(g.out(0), &[1]);
        assert_eq!(g.out(2), &[0]);
        assert_eq!(independent_set(&g).len(), 1);
        let whole = build_gamma(&f, Some(&[vec![0, 1, 2]])).unwrap();
        assert_eq!(whole.order(), 1);
        assert_eq!(whole.out(0), &[] as &[usize]);
        assert!(build_gamma(&f, Some(&[vec![0, 1], vec![1, 2]])).is_err());
        assert!(build_gamma(&f, Some(&[vec![0, 1]])).is_err());
    }

    #[test]
    fn star_with_four_cycle_mapping() {
        let h = named("K1,4").unwrap();
        let f = EdgeMapping::new(h, vec![1, 2, 3, 0], Distance::D1).unwrap();
        let g = build_gamma(&f, None).unwrap();
        assert!(g.underlying().is_isomorphic(&named("C4").unwrap()).unwrap());
        assert_eq!(independent_set(&g).len(), 2);
    }

    #[test]
    fn small_examples() {
        let iso = FunctionalDigraph::new(vec![vec![]; 6], 1).unwrap();
        assert_eq!(independent_set(&iso), vec![0, 1, 2, 3, 4, 5]);
        let two = FunctionalDigraph::new(vec![vec![1], vec![2], vec![0], vec![4], vec![5], vec![3]], 1).unwrap();
        assert_eq!(independent_set(&two).len(), 2);
        assert_eq!(brute_alpha(&two), 2);
    }

    fn random_digraph(rng: &mut ChaCha8Rng, n: usize, d: usize) -> FunctionalDigraph {
        let out = (0..n)
            .map(|v| {
                let k = rng.gen_range(0..=d);
                let mut others: Vec<usize> = (0..n).filter(|&w| w != v).collect();
                others.shuffle(rng);
                others.truncate(k);
                others
            })
            .collect();
        FunctionalDigraph::new(out, d).unwrap()
    }

    #[test]
    fn independence_bounds_on_random_digraphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let n = rng.gen_range(1..40);
            let d = rng.gen_range(1..4);
            let g = random_digraph(&mut rng, n, d);
            let s = independent_set(&g);
            assert!(g.is_independent(&s));
            assert!(s.len() * (2 * d + 1) >= n, "n={n} d={d} got {}", s.len());
            if g.max_out_degree() <= 1 {
                let sinks = (0..n).filter(|&v| g.out(v).is_empty()).count();
                let a = n as i64 - 2 * sinks as i64;
                let bound = sinks as i64 + if a >= 0 { (a + 2) / 3 } else { -(-a / 3) };
                assert!(s.len() as i64 >= bound, "d=1 bound: n={n} m={sinks} got {}", s.len());
            }
        }
    }

    /// Every fixed-point-free function on `n` vertices, as a digraph.
    fn all_functions(n: usize) -> Vec<FunctionalDigraph> {
        let mut out = Vec::new();
        let total = (n - 1).pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let lists = (0..n)
                .map(|v| {
                    let k = c % (n - 1);
                    c /= n - 1;
                    vec![if k >= v { k + 1 } else { k }]
                })
                .collect();
            out.push(FunctionalDigraph::new(lists, 1).unwrap());
        }
        out
    }

    fn is_triangle_union(g: &FunctionalDigraph) -> bool {
        (0..g.order()).all(|v| {
            let a = g.out(v)[0];
            let b = g.out(a)[0];
            b != v && g.out(b)[0] == v
        })
    }

    #[test]
    fn third_bound_is_tight_only_for_directed_triangles() {
        for n in [3, 6] {
            for g in all_functions(n) {
                let alpha = brute_alpha(&g);
                assert!(alpha * 3 >= n);
                assert_eq!(alpha * 3 == n, is_triangle_union(&g), "{g:?}");
                assert!(independent_set(&g).len() * 3 >= n);
            }
        }
    }

    fn random_d0(rng: &mut ChaCha8Rng, host: &Graph) -> EdgeMapping {
        let image = (0..host.size())
            .map(|e| {
                let opts: Vec<usize> = legal_images(host, e, Distance::D0).collect();
                *opts.choose(rng).unwrap()
            })
            .collect();
        EdgeMapping::new(host.clone(), image, Distance::D0).unwrap()
    }

    #[test]
    fn forced_star_example() {
        let host = named("K1,6|K2").unwrap();
        let f = crate::mapping::complete_mapping(host.clone(), &[None; 7], Distance::D0).unwrap();
        let star = find_exclusive_star(&host, &f, 2).unwrap().unwrap();
        assert_eq!(star.edges.len(), 2);
        assert!(is_f_exclusive(&star, &f));
        let one = find_exclusive_star(&host, &f, 1).unwrap().unwrap();
        assert!(is_f_exclusive(&one, &f));
    }

    #[test]
    fn stars_against_random_mappings() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        // max degree 6 = 5r - 4 at r = 2
        let host = named("K1,6|K1,6|K2").unwrap();
        for _ in 0..300 {
            let f = random_d0(&mut rng, &host);
            let star = find_exclusive_star(&host, &f, 2).unwrap().expect("degree bound met");
            assert!(is_f_exclusive(&star, &f));
        }
        let k7 = Graph::complete(7);
        for _ in 0..300 {
            let f = random_d0(&mut rng, &k7);
            let star = find_exclusive_star(&k7, &f, 2).unwrap().expect("degree bound met");
            assert!(is_f_exclusive(&star, &f));
        }
    }

    #[test]
    fn rejects_distance_one_mapping() {
        let h = named("3K2").unwrap();
        let f = EdgeMapping::new(h.clone(), vec![1, 2, 0], Distance::D1).unwrap();
        assert!(find_exclusive_star(&h, &f, 1).is_err());
    }

    #[test]
    fn matching_forest_exhaustive() {
        // six disjoint edges, every distance-0 mapping (5^6 of them)
        let host = named("6K2").unwrap();
        for code in 0..5usize.pow(6) {
            let mut c = code;
            let image = (0..6)
                .map(|e| {
                    let k = c % 5;
                    c /= 5;
                    if k >= e { k + 1 } else { k }
                })
                .collect();
            let f = EdgeMapping::new(host.clone(), image, Distance::D0).unwrap();
            let forest = find_exclusive_star_forest(&host, &f, 1, 2).unwrap().expect("6 = 5*1+1 stars");
            assert_eq!(forest.edges.len(), 2);
            assert!(is_f_exclusive(&forest, &f));
        }
    }

    #[test]
    fn star_forest_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let host = named("11K1,6").unwrap();
        for _ in 0..200 {
            let f = random_d0(&mut rng, &host);
            let forest = find_exclusive_star_forest(&host, &f, 2, 2).unwrap().expect("11 big stars");
            assert_eq!(forest.edges.len(), 4);
            assert!(is_f_exclusive(&forest, &f));
        }
        // t = 1 agrees with the single-star extraction on exclusivity
        for _ in 0..50 {
            let f = random_d0(&mut rng, &host);
            let one = find_exclusive_star_forest(&host, &f, 2, 1).unwrap().unwrap();
            assert!(is_f_exclusive(&one, &f));
        }
    }
}
