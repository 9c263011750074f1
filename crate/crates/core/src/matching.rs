//! Maximum bipartite matching (Hopcroft–Karp).

use std::collections::VecDeque;

const FREE: usize = usize::MAX;

/// Maximum matching between `0..left` and `0..right`; `adj[l]` lists the right
/// neighbors of `l`. Returns the partner of every left vertex.
pub fn hopcroft_karp(left: usize, right: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    assert_eq!(adj.len(), left, "one adjacency list per left vertex");
    let mut mate_l = vec![FREE; left];
    let mut mate_r = vec![FREE; right];
    let mut dist = vec![0usize; left];
    loop {
        // layer the free left vertices and everything reachable by alternating paths
        let mut queue = VecDeque::new();
        for l in 0..left {
            if mate_l[l] == FREE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                match mate_r[r] {
                    FREE => found = true,
                    l2 if dist[l2] == usize::MAX => {
                        dist[l2] = dist[l] + 1;
                        queue.push_back(l2);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        for l in 0..left {
            if mate_l[l] == FREE {
                augment(l, adj, &mut mate_l, &mut mate_r, &mut dist);
            }
        }
    }
    mate_l.into_iter().map(|r| (r != FREE).then_some(r)).collect()
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    mate_l: &mut [usize],
    mate_r: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &r in &adj[l] {
        let next = mate_r[r];
        let ok = next == FREE
            || (dist[next] == dist[l] + 1 && augment(next, adj, mate_l, mate_r, dist));
        if ok {
            mate_l[l] = r;
            mate_r[r] = l;
            return true;
        }
    }
    dist[l] = usize::MAX;
    false
}
