use crate::graph::Graph;

/// Closed Eulerian trail from `start` as a sequence of edge indices
/// (Hierholzer's splicing), or `None` if the edges do not form one.
pub fn eulerian_circuit(g: &Graph, start: usize) -> Option<Vec<usize>> {
    let m = g.size();
    if m == 0 {
        return Some(Vec::new());
    }
    if start >= g.order() || (0..g.order()).any(|v| g.degree(v) % 2 == 1) {
        return None;
    }
    let mut used = vec![false; m];
    let mut next = vec![0usize; g.order()];
    let mut stack: Vec<(usize, Option<usize>)> = vec![(start, None)];
    let mut circuit = Vec::with_capacity(m);
    while let Some(&(v, via)) = stack.last() {
        let nb = g.neighbors(v);
        while next[v] < nb.len() && used[g.edge_index(v, nb[next[v]]).expect("neighbor edge")] {
            next[v] += 1;
        }
        if next[v] < nb.len() {
            let w = nb[next[v]];
            let e = g.edge_index(v, w).expect("neighbor edge");
            used[e] = true;
            stack.push((w, Some(e)));
        } else {
            stack.pop();
            if let Some(e) = via {
                circuit.push(e);
            }
        }
    }
    if circuit.len() != m {
        return None;
    }
    circuit.reverse();
    Some(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::named;

    fn check(g: &Graph) {
        let t = eulerian_circuit(g, 0).expect("eulerian");
        assert_eq!(t.len(), g.size());
        let mut seen = vec![false; g.size()];
        let mut at = 0;
        for &e in &t {
            assert!(!std::mem::replace(&mut seen[e], true));
            let (a, b) = g.edge(e);
            at = if a == at {
                b
            } else {
                assert_eq!(b, at, "trail is not contiguous");
                a
            };
        }
        assert_eq!(at, 0);
    }

    #[test]
    fn circulants_and_complete_graphs() {
        for s in ["Circ:7,1,2", "Circ:9,1,2,3", "C5", "K5", "K7"] {
            check(&named(s).unwrap());
        }
        assert!(eulerian_circuit(&named("P3").unwrap(), 0).is_none());
        assert!(eulerian_circuit(&named("C3|C3").unwrap(), 0).is_none());
    }
}
