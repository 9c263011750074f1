//! Polynomial decision for the pattern 2K2 with `f(e) != e`.
//!
//! Copies of 2K2 are exactly the edges of the line-graph complement, and an
//! edge mapping kills the copy `{e, e'}` iff it sends one of them to the
//! other. So a mapping kills every copy iff it orients every complement edge,
//! each vertex having out-degree at most one. That is possible iff every
//! component has at most as many edges as vertices.

use std::collections::VecDeque;

use crate::graph::Graph;
use crate::mapping::{Distance, EdgeMapping};
use crate::solver::{AvoidanceVerdict, SearchStats, Shortcut, UnavoidableProof};

/// Graph on the host's edge indices, adjacent when vertex-disjoint in the host.
pub fn line_complement(host: &Graph) -> Graph {
    let m = host.size();
    let mut edges = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if host.edges_disjoint(i, j) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(m, edges).expect("line complement is simple")
}

pub fn fast_2k2_decide(host: &Graph) -> AvoidanceVerdict {
    let m = host.size();
    if m == 1 {
        return AvoidanceVerdict::NoLegalMapping { edge: 0 };
    }
    let lc = line_complement(host);
    let comps = lc.components();
    let comp_edges = |comp: &[usize]| comp.iter().map(|&v| lc.degree(v)).sum::<usize>() / 2;
    for comp in &comps {
        let e = comp_edges(comp);
        if e > comp.len() {
            return AvoidanceVerdict::Unavoidable(UnavoidableProof {
                stats: SearchStats::default(),
                shortcut: Some(Shortcut::LineComplement {
                    component: comp.clone(),
                    vertices: comp.len(),
                    edges: e,
                }),
            });
        }
    }

    let mut image = vec![usize::MAX; m];
    for comp in &comps {
        if comp.len() == 1 {
            let e = comp[0];
            image[e] = usize::from(e == 0);
            continue;
        }
        let roots: Vec<usize> = if comp_edges(comp) + 1 == comp.len() {
            // tree: double the smallest edge into a 2-cycle
            let (a, b) = comp
                .iter()
                .flat_map(|&u| lc.neighbors(u).iter().filter(move |&&w| w > u).map(move |&w| (u, w)))
                .min()
                .expect("tree component with two vertices has an edge");
            image[a] = b;
            image[b] = a;
            vec![a, b]
        } else {
            let cycle = cycle_of_unicyclic(&lc, comp);
            for (i, &c) in cycle.iter().enumerate() {
                image[c] = cycle[(i + 1) % cycle.len()];
            }
            cycle
        };
        // every other vertex points to its parent toward the roots
        let mut queue: VecDeque<usize> = roots.into_iter().collect();
        let mut seen: Vec<bool> = (0..m).map(|v| image[v] != usize::MAX).collect();
        while let Some(v) = queue.pop_front() {
            for &w in lc.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    image[w] = v;
                    queue.push_back(w);
                }
            }
        }
    }
    let f = EdgeMapping::new(host.clone(), image, Distance::D1).expect("orientation has no fixed point");
    AvoidanceVerdict::Avoider(f)
}

/// The cycle of a unicyclic component, in cyclic order from its smallest vertex.
fn cycle_of_unicyclic(lc: &Graph, comp: &[usize]) -> Vec<usize> {
    let mut deg: Vec<usize> = (0..lc.order()).map(|v| lc.degree(v)).collect();
    let mut alive = vec![false; lc.order()];
    for &v in comp {
        alive[v] = true;
    }
    let mut leaves: Vec<usize> = comp.iter().copied().filter(|&v| deg[v] == 1).collect();
    while let Some(v) = leaves.pop() {
        alive[v] = false;
        for &w in lc.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    leaves.push(w);
                }
            }
        }
    }
    let start = *comp.iter().find(|&&v| alive[v]).expect("unicyclic component has a cycle");
    let mut cycle = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = *lc
            .neighbors(cur)
            .iter()
            .filter(|&&w| alive[w] && w != prev)
            .min()
            .expect("cycle continues");
        if next == start {
            break;
        }
        cycle.push(next);
        prev = cur;
        cur = next;
    }
    cycle
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::named;
    use crate::mapping::Mode;
    use crate::patterns::{surviving_copies, PatternFamily};

    fn two_k2() -> PatternFamily {
        "2K2".parse().unwrap()
    }

    #[test]
    fn p6_is_unavoidable_with_witness_component() {
        match fast_2k2_decide(&named("P6").unwrap()) {
            AvoidanceVerdict::Unavoidable(p) => match p.shortcut {
                Some(Shortcut::LineComplement { vertices, edges, .. }) => {
                    assert_eq!((vertices, edges), (5, 6));
                }
                other => panic!("unexpected shortcut {other:?}"),
            },
            v => panic!("unexpected verdict {v:?}"),
        }
    }

    #[test]
    fn avoiders_verify() {
        for h in ["P5", "3K2", "K4", "K1,7|K2", "C5", "P3|P3", "K2,3", "E3", "P3"] {
            let v = fast_2k2_decide(&named(h).unwrap());
            let f = v.mapping().unwrap_or_else(|| panic!("{h} should be avoidable"));
            assert!(surviving_copies(f, &two_k2(), Mode::Free).is_empty(), "{h}");
        }
    }

    #[test]
    fn p5_complement_is_a_tree() {
        let lc = line_complement(&named("P5").unwrap());
        assert!(lc.is_tree());
        let lc = line_complement(&named("3K2").unwrap());
        assert!(lc.is_isomorphic(&Graph::complete(3)).unwrap());
    }

    #[test]
    fn single_edge_host_has_no_mapping() {
        assert_eq!(
            fast_2k2_decide(&Graph::complete(2)),
            AvoidanceVerdict::NoLegalMapping { edge: 0 }
        );
    }
}
