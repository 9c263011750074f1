//! `D_{3r-4,k,3r-6}`: unavoidable for `K_{1,r}`, with an explicit avoider for
//! every one-edge deletion.
//!
//! Labeling follows the catalog: path `0-1-...-k` (ends `u = 0`, `v = k`), then
//! the leaves of `u`, of `v`, and of each internal path vertex in order.

use std::collections::BTreeMap;

use super::{Claim, Construction, ConstructionSpec, Recipe};
use crate::error::{param, Result};
use crate::graph::{Graph, NamedGraphSpec};
use crate::mapping::{Distance, Mode};
use crate::patterns::PatternFamily;

type E = (usize, usize);

fn e(a: usize, b: usize) -> E {
    (a.min(b), a.max(b))
}

struct Layout {
    k: usize,
    /// Leaves of path vertex `h`, for `h = 0..=k`.
    leaves: Vec<Vec<usize>>,
}

impl Layout {
    fn new(r: usize, k: usize) -> Layout {
        let (end, mid) = (3 * r - 4, 3 * r - 6);
        let mut leaves = vec![Vec::new(); k + 1];
        let mut next = k + 1;
        for h in [0, k] {
            leaves[h] = (next..next + end).collect();
            next += end;
        }
        for l in leaves.iter_mut().take(k).skip(1) {
            *l = (next..next + mid).collect();
            next += mid;
        }
        Layout { k, leaves }
    }

    fn leaf_edges(&self, h: usize) -> Vec<E> {
        self.leaves[h].iter().map(|&x| e(h, x)).collect()
    }
}

pub(super) fn size(r: usize, k: usize) -> usize {
    2 * (3 * r - 4) + k + (k - 1) * (3 * r - 6)
}

/// The recipe for a deleted leaf at one end. `p` lists the path vertices
/// starting from the end that lost the leaf.
fn end_leaf(lay: &Layout, p: &[usize], deleted: E) -> BTreeMap<E, E> {
    let k = lay.k;
    let q = |j: usize| e(p[j], p[j + 1]);
    let mut map = BTreeMap::new();
    let cyc = |edges: &[E], map: &mut BTreeMap<E, E>| {
        for t in edges.chunks(3) {
            for i in 0..t.len() {
                map.insert(t[i], t[(i + 1) % t.len()]);
            }
        }
    };
    let rest: Vec<E> = lay.leaf_edges(p[0]).into_iter().filter(|&x| x != deleted).collect();
    let (tri, last) = rest.split_at(rest.len() - 1);
    cyc(tri, &mut map);
    map.insert(last[0], q(0));
    for j in 0..k.saturating_sub(1) {
        map.insert(q(j), q(j + 1));
    }
    for &w in &p[1..k] {
        cyc(&lay.leaf_edges(w), &mut map);
    }
    let mut far = vec![q(k - 1)];
    far.extend(lay.leaf_edges(p[k]));
    cyc(&far, &mut map);
    map
}

/// The recipe for a deleted leaf at internal vertex `i`.
fn path_leaf(lay: &Layout, i: usize, deleted: E) -> BTreeMap<E, E> {
    let k = lay.k;
    let q = |j: usize| e(j, j + 1);
    let mut map = BTreeMap::new();
    let cyc = |edges: &[E], map: &mut BTreeMap<E, E>| {
        for t in edges.chunks(3) {
            for x in 0..t.len() {
                map.insert(t[x], t[(x + 1) % t.len()]);
            }
        }
    };
    for (end, path_edge) in [(0, q(0)), (k, q(k - 1))] {
        let mut edges = vec![path_edge];
        edges.extend(lay.leaf_edges(end));
        cyc(&edges, &mut map);
    }
    for h in 1..i {
        map.insert(q(h), q(h - 1));
    }
    for h in i..k - 1 {
        map.insert(q(h), q(h + 1));
    }
    for w in (1..k).filter(|&w| w != i) {
        cyc(&lay.leaf_edges(w), &mut map);
    }
    let rest: Vec<E> = lay.leaf_edges(i).into_iter().filter(|&x| x != deleted).collect();
    let (tri, two) = rest.split_at(rest.len() - 2);
    cyc(tri, &mut map);
    map.insert(two[0], q(i - 1));
    map.insert(two[1], q(i));
    map
}

/// Vertices on the `0` side of path edge `h`.
fn left_side(lay: &Layout, h: usize) -> Vec<usize> {
    let mut side: Vec<usize> = (0..=h).collect();
    for w in 0..=h {
        side.extend(&lay.leaves[w]);
    }
    side
}

pub(super) fn build(spec: &ConstructionSpec, r: usize, k: usize, delete: Option<usize>) -> Result<Construction> {
    if r < 2 || k < 1 {
        return param("need r >= 2 and k >= 1");
    }
    let d = NamedGraphSpec::Dlkl(3 * r - 4, k, 3 * r - 6).build()?;
    debug_assert_eq!(d.size(), size(r, k));
    let patterns = PatternFamily::single(&format!("K1,{r}"), NamedGraphSpec::Star(r).build()?)?;
    let Some(del) = delete else {
        return Ok(Construction {
            spec: spec.clone(),
            host: d,
            mapping: None,
            patterns,
            mode: Mode::Free,
            d: Distance::D1,
            claim: Claim::Unavoidable,
        });
    };
    if del >= d.size() {
        return param(format!("edge {del} out of range for {} edges", d.size()));
    }
    let lay = Layout::new(r, k);
    let (a, b) = d.edge(del);
    let forward: Vec<usize> = (0..=k).collect();
    let backward: Vec<usize> = (0..=k).rev().collect();
    let map = if b <= k {
        // path edge a-(a+1): combine the two end-leaf recipes, each restricted
        // to the side it keeps intact
        let left = left_side(&lay, a);
        let in_left = |x: E| left.contains(&x.0);
        let from_right = end_leaf(&lay, &backward, lay.leaf_edges(k)[0]);
        let from_left = end_leaf(&lay, &forward, lay.leaf_edges(0)[0]);
        let mut map = BTreeMap::new();
        for (x, y) in from_right {
            if x != (a, b) && in_left(x) && in_left(y) && y != (a, b) {
                map.insert(x, y);
            }
        }
        for (x, y) in from_left {
            if x != (a, b) && !in_left(x) && !in_left(y) && y != (a, b) {
                map.insert(x, y);
            }
        }
        map
    } else if a == 0 {
        end_leaf(&lay, &forward, (a, b))
    } else if a == k {
        end_leaf(&lay, &backward, (a, b))
    } else {
        path_leaf(&lay, a, (a, b))
    };
    let host: Graph = d.remove_edge(del);
    let mut rc = Recipe::new(&host);
    for (x, y) in map {
        rc.set(x, y);
    }
    let f = rc.finish(Distance::D1)?;
    Ok(super::avoider(spec, host, f, patterns, Mode::Free, Distance::D1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_construction;
    use crate::graph::named::named;

    #[test]
    fn r2_matches_catalog_b() {
        for k in 1..=4 {
            let c = build_construction(&ConstructionSpec::DStar { r: 2, k, delete: None }).unwrap();
            let b = named(&format!("B:{k}")).unwrap();
            assert!(c.host.is_isomorphic(&b).unwrap());
        }
    }

    #[test]
    fn every_deletion_r2_r3() {
        for (r, k) in [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3)] {
            for del in 0..size(r, k) {
                let c = build_construction(&ConstructionSpec::DStar { r, k, delete: Some(del) }).unwrap();
                assert!(c.verify().unwrap(), "r={r} k={k} delete={del}");
            }
        }
    }
}
