//! Exhaustive generation of small unlabeled graphs by edge augmentation.
//!
//! Every graph with `m + 1` edges arises from one with `m` edges by adding an
//! edge, so a level-by-level sweep with canonical deduplication reaches every
//! isomorphism class exactly once.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{param, Result};
use crate::graph::{CanonicalForm, SmallGraph, MAX_CANON_ORDER};

/// All graphs on exactly `n` vertices (isolated vertices allowed), indexed by
/// edge count; each level is sorted by canonical form.
pub fn graphs_by_size(n: usize) -> Result<Vec<Vec<CanonicalForm>>> {
    if n > MAX_CANON_ORDER {
        return param(format!("order {n} exceeds {MAX_CANON_ORDER}"));
    }
    let empty = SmallGraph::new(n)?;
    let mut levels = vec![vec![empty.canonical_form()]];
    for _ in 0..n * n.saturating_sub(1) / 2 {
        let prev = levels.last().expect("level 0 exists");
        let next: BTreeSet<CanonicalForm> = prev
            .par_iter()
            .flat_map_iter(|cf| {
                let g = cf.to_small();
                let mut out = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if !g.has_edge(u, v) {
                            let mut c = g;
                            c.set_edge(u, v);
                            out.push(c.canonical_form());
                        }
                    }
                }
                out
            })
            .collect();
        levels.push(next.into_iter().collect());
    }
    Ok(levels)
}

/// One-edge extensions of an isolate-free graph that stay isolate-free and
/// within `max_order` vertices: a chord, a pendant edge, or a disjoint edge.
pub fn isolate_free_children(g: &SmallGraph, max_order: usize) -> Vec<SmallGraph> {
    let n = g.order();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                let mut c = *g;
                c.set_edge(u, v);
                out.push(c);
            }
        }
    }
    if n < max_order {
        let grown = g.grow().expect("order checked against the bound");
        for u in 0..n {
            let mut c = grown;
            c.set_edge(u, n);
            out.push(c);
        }
    }
    if n + 2 <= max_order {
        let mut c = g.grow().and_then(|h| h.grow()).expect("order checked against the bound");
        c.set_edge(n, n + 1);
        out.push(c);
    }
    out
}

/// Canonical forms of the graphs obtained by deleting one edge and then
/// dropping any vertex left isolated.
pub fn edge_deletions(g: &SmallGraph) -> Vec<CanonicalForm> {
    g.edge_list()
        .into_iter()
        .map(|(u, v)| {
            let mut c = *g;
            c.clear_edge(u, v);
            c.strip_isolated().canonical_form()
        })
        .collect()
}

/// Isolate-free graphs with at least one edge, at most `max_order` vertices
/// and at most `max_edges` edges, one per isomorphism class, grouped by edge
/// count starting at one edge.
pub fn enumerate_graphs(max_order: usize, max_edges: usize) -> Result<Vec<Vec<CanonicalForm>>> {
    if max_order > MAX_CANON_ORDER {
        return param(format!("order {max_order} exceeds {MAX_CANON_ORDER}"));
    }
    let mut levels: Vec<Vec<CanonicalForm>> = Vec::new();
    if max_order < 2 || max_edges == 0 {
        return Ok(levels);
    }
    let mut k2 = SmallGraph::new(2)?;
    k2.set_edge(0, 1);
    levels.push(vec![k2.canonical_form()]);
    while levels.len() < max_edges {
        let prev = levels.last().expect("nonempty");
        let next: BTreeSet<CanonicalForm> = prev
            .par_iter()
            .flat_map_iter(|cf| {
                isolate_free_children(&cf.to_small(), max_order)
                    .into_iter()
                    .map(|c| c.canonical_form())
            })
            .collect();
        if next.is_empty() {
            break;
        }
        levels.push(next.into_iter().collect());
    }
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canon::oracle;

    #[test]
    fn all_graphs_small_orders() {
        // total numbers of unlabeled graphs on n vertices
        for (n, total) in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156), (7, 1044)] {
            let levels = graphs_by_size(n).unwrap();
            assert_eq!(levels.iter().map(Vec::len).sum::<usize>(), total, "n = {n}");
        }
    }

    #[test]
    fn levels_match_permutation_oracle() {
        for n in 1..=6 {
            let levels = graphs_by_size(n).unwrap();
            let classes = oracle::classes(n);
            for (m, level) in levels.iter().enumerate() {
                let expected = classes.values().filter(|reps| reps[0].size() == m).count();
                assert_eq!(level.len(), expected, "n = {n}, m = {m}");
            }
        }
    }

    #[test]
    fn isolate_free_counts() {
        let count = |n, m| enumerate_graphs(n, m).unwrap().iter().map(Vec::len).sum::<usize>();
        assert_eq!(count(2, 10), 1);
        assert_eq!(count(4, 6), 10);
        // oracle: classes on at most six vertices without isolated vertices
        let mut expected = 0;
        for n in 2..=6 {
            expected += oracle::classes(n)
                .values()
                .filter(|reps| reps[0].size() > 0 && !reps[0].has_isolated())
                .count();
        }
        assert_eq!(count(6, 15), expected);
        // 1 + 2 + 7 + 23 + 122 classes on exactly 2..=6 vertices
        assert_eq!(expected, 155);
    }

    #[test]
    fn deletions_are_isolate_free() {
        for level in enumerate_graphs(5, 10).unwrap() {
            for cf in level {
                for d in edge_deletions(&cf.to_small()) {
                    assert!(d.size() == 0 || !d.to_small().has_isolated());
                }
            }
        }
    }
}
