//! Avoidance decisions: does some legal edge mapping leave no surviving copy?

pub mod engine;

use serde::Serialize;

use crate::error::Result;
use crate::fastpath;
use crate::graph::Graph;
use crate::mapping::{is_legal, Distance, EdgeMapping, Mode, QMapping};
use crate::patterns::{enumerate_copies, enumerate_family, PatternCopy, PatternFamily};

pub use engine::{Budget, KillProblem, MAX_EDGES};
use engine::{Outcome, WILD};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
}

/// A reason an unavoidability verdict holds without (or besides) exhaustion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shortcut {
    /// More copies than edges able to kill one each.
    Counting { copies: usize, killing_edges: usize },
    /// A component of the line-graph complement with more edges than vertices.
    LineComplement {
        component: Vec<usize>,
        vertices: usize,
        edges: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnavoidableProof {
    pub stats: SearchStats,
    pub shortcut: Option<Shortcut>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AvoidanceVerdict {
    Avoider(EdgeMapping),
    Unavoidable(UnavoidableProof),
    /// Some edge has no admissible image, so no mapping of this class exists.
    NoLegalMapping { edge: usize },
}

impl AvoidanceVerdict {
    pub fn is_avoider(&self) -> bool {
        matches!(self, AvoidanceVerdict::Avoider(_))
    }

    pub fn is_unavoidable(&self) -> bool {
        matches!(self, AvoidanceVerdict::Unavoidable(_))
    }

    pub fn mapping(&self) -> Option<&EdgeMapping> {
        match self {
            AvoidanceVerdict::Avoider(f) => Some(f),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            AvoidanceVerdict::Avoider(_) => "avoider",
            AvoidanceVerdict::Unavoidable(_) => "unavoidable",
            AvoidanceVerdict::NoLegalMapping { .. } => "no_legal_mapping",
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            AvoidanceVerdict::Unavoidable(p) => p.stats.nodes,
            _ => 0,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub budget: Budget,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget: Budget::unlimited(),
        }
    }
}

fn bit(x: usize) -> u64 {
    1u64 << x
}

/// Images of a copy edge that kill `copy` in the given mode.
fn kill_mask(host: &Graph, copy: &PatternCopy, mode: Mode) -> u64 {
    match mode {
        Mode::Free => copy.edges.iter().fold(0, |m, &x| m | bit(x)),
        Mode::Exclusive => (0..host.size())
            .filter(|&x| {
                let (a, b) = host.edge(x);
                copy.contains_vertex(a) || copy.contains_vertex(b)
            })
            .fold(0, |m, x| m | bit(x)),
    }
}

fn legal_mask(host: &Graph, e: usize, d: Distance) -> u64 {
    (0..host.size())
        .filter(|&x| is_legal(host, e, x, d))
        .fold(0, |m, x| m | bit(x))
}

fn kill_problem(host: &Graph, copies: &[PatternCopy], d: Distance, mode: Mode) -> KillProblem {
    KillProblem {
        legal: (0..host.size()).map(|e| legal_mask(host, e, d)).collect(),
        copies: copies
            .iter()
            .map(|c| c.edges.iter().map(|&e| (e, kill_mask(host, c, mode))).collect())
            .collect(),
        wild_budget: None,
    }
}

/// Generic exhaustive decision with the kill-model search.
pub fn exists_avoider(
    host: &Graph,
    patterns: &PatternFamily,
    d: Distance,
    mode: Mode,
) -> Result<AvoidanceVerdict> {
    exists_avoider_with(host, patterns, d, mode, &SolveOptions::default())
}

pub fn exists_avoider_with(
    host: &Graph,
    patterns: &PatternFamily,
    d: Distance,
    mode: Mode,
    opts: &SolveOptions,
) -> Result<AvoidanceVerdict> {
    if host.size() > MAX_EDGES {
        return Err(crate::Error::Capacity {
            what: "host edges for the search engine",
            actual: host.size(),
            limit: MAX_EDGES,
        });
    }
    let copies = enumerate_family(host, patterns);
    solve_copies(host, &copies, d, mode, opts)
}

fn solve_copies(
    host: &Graph,
    copies: &[PatternCopy],
    d: Distance,
    mode: Mode,
    opts: &SolveOptions,
) -> Result<AvoidanceVerdict> {
    let problem = kill_problem(host, copies, d, mode);
    if let Some(edge) = problem.legal.iter().position(|&m| m == 0) {
        return Ok(AvoidanceVerdict::NoLegalMapping { edge });
    }
    match engine::solve(&problem, opts.budget)? {
        Outcome::Found(sol) => Ok(AvoidanceVerdict::Avoider(EdgeMapping::new(
            host.clone(),
            sol.image,
            d,
        )?)),
        Outcome::Exhausted { nodes } => Ok(AvoidanceVerdict::Unavoidable(UnavoidableProof {
            stats: SearchStats { nodes },
            shortcut: None,
        })),
    }
}

/// True iff every legal mapping leaves a surviving copy. Hosts without any
/// legal mapping count as not unavoidable.
pub fn is_unavoidable(host: &Graph, patterns: &PatternFamily, d: Distance, mode: Mode) -> Result<bool> {
    Ok(exists_avoider(host, patterns, d, mode)?.is_unavoidable())
}

/// Unavoidable, and every one-edge-deleted subgraph (isolates removed) is not.
pub fn is_minimal_unavoidable(
    host: &Graph,
    patterns: &PatternFamily,
    d: Distance,
    mode: Mode,
) -> Result<bool> {
    if !decide(host, patterns, d, mode, &SolveOptions::default())?.is_unavoidable() {
        return Ok(false);
    }
    for e in 0..host.size() {
        let sub = host.remove_edge(e).strip_isolated();
        if decide(&sub, patterns, d, mode, &SolveOptions::default())?.is_unavoidable() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Patterns with a counting argument: each edge can kill at most one copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountingPattern {
    TwoK2,
    K3,
}

impl CountingPattern {
    pub fn detect(patterns: &PatternFamily) -> Option<CountingPattern> {
        let two_k2 = Graph::from_edges(4, [(0, 1), (2, 3)]).expect("2K2");
        if patterns.is_single(&two_k2) {
            Some(CountingPattern::TwoK2)
        } else if patterns.is_single(&Graph::complete(3)) {
            Some(CountingPattern::K3)
        } else {
            None
        }
    }
}

/// Unavoidability by counting, for free mode with `f(e) != e`.
///
/// For 2K2, an edge kills at most the one copy formed with its image, so
/// more copies than edges lying in some copy forces a survivor. For K3, an
/// edge kills at most the one triangle spanned with its image.
pub fn counting_shortcut(host: &Graph, pattern: CountingPattern) -> Option<UnavoidableProof> {
    let (copies, killing_edges) = match pattern {
        CountingPattern::TwoK2 => {
            let copies = enumerate_copies(host, &Graph::from_edges(4, [(0, 1), (2, 3)]).ok()?);
            let mut covered = vec![false; host.size()];
            for c in &copies {
                for &e in &c.edges {
                    covered[e] = true;
                }
            }
            (copies.len(), covered.iter().filter(|&&x| x).count())
        }
        CountingPattern::K3 => (host.triangle_count(), host.size()),
    };
    (copies > killing_edges).then_some(UnavoidableProof {
        stats: SearchStats::default(),
        shortcut: Some(Shortcut::Counting {
            copies,
            killing_edges,
        }),
    })
}

/// Fastest available sound decision: counting bounds and the 2K2 line-graph
/// criterion where they apply, otherwise the generic search.
pub fn decide(
    host: &Graph,
    patterns: &PatternFamily,
    d: Distance,
    mode: Mode,
    opts: &SolveOptions,
) -> Result<AvoidanceVerdict> {
    if d == Distance::D1 && mode == Mode::Free {
        if let Some(kind) = CountingPattern::detect(patterns) {
            if host.size() >= 2 {
                if let Some(proof) = counting_shortcut(host, kind) {
                    return Ok(AvoidanceVerdict::Unavoidable(proof));
                }
            }
            if kind == CountingPattern::TwoK2 {
                return Ok(fastpath::fast_2k2_decide(host));
            }
        }
    }
    exists_avoider_with(host, patterns, d, mode, opts)
}

/// A map on `E(K_n)` respecting class `d` on at least `m` edges, under which no
/// copy survives in `mode`. Unconstrained edges become fixed points, which
/// kill every copy through them in either mode.
pub fn exists_partial_mapping(
    n: usize,
    patterns: &PatternFamily,
    d: Distance,
    mode: Mode,
    m: usize,
    opts: &SolveOptions,
) -> Result<(Option<QMapping>, SearchStats)> {
    let kn = Graph::complete(n);
    let total = kn.size();
    if m > total {
        return Ok((None, SearchStats::default()));
    }
    if total > MAX_EDGES {
        return Err(crate::Error::Capacity {
            what: "complete host edges",
            actual: total,
            limit: MAX_EDGES,
        });
    }
    let copies = enumerate_family(&kn, patterns);
    let mut problem = kill_problem(&kn, &copies, d, mode);
    for l in &mut problem.legal {
        *l |= bit(WILD);
    }
    problem.wild_budget = Some(total - m);
    match engine::solve(&problem, opts.budget)? {
        Outcome::Found(sol) => {
            let image: Vec<usize> = sol
                .image
                .iter()
                .enumerate()
                .map(|(e, &x)| if x == WILD { e } else { x })
                .collect();
            let q = QMapping::new(n, image, d)?;
            debug_assert!(q.free_count() >= m);
            Ok((Some(q), SearchStats { nodes: sol.nodes }))
        }
        Outcome::Exhausted { nodes } => Ok((None, SearchStats { nodes })),
    }
}

/// The q-variant: free mode over `K_n`.
pub fn exists_q_mapping(n: usize, patterns: &PatternFamily, d: Distance, m: usize) -> Result<Option<QMapping>> {
    Ok(exists_partial_mapping(n, patterns, d, Mode::Free, m, &SolveOptions::default())?.0)
}

/// Copies of the family surviving a q-mapping on `K_n`.
pub fn q_survivors(q: &QMapping, patterns: &PatternFamily, mode: Mode) -> Vec<PatternCopy> {
    let kn = q.host();
    enumerate_family(&kn, patterns)
        .into_iter()
        .filter(|c| c.survives(&kn, q.image(), mode))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::named;
    use crate::patterns::surviving_copies;

    fn fam(s: &str) -> PatternFamily {
        s.parse().unwrap()
    }

    fn avoid(h: &str, p: &str) -> AvoidanceVerdict {
        exists_avoider(&named(h).unwrap(), &fam(p), Distance::D1, Mode::Free).unwrap()
    }

    #[test]
    fn spec_examples() {
        let v = avoid("K4", "2K2");
        let f = v.mapping().expect("K4 avoids 2K2");
        assert!(surviving_copies(f, &fam("2K2"), Mode::Free).is_empty());
        assert!(avoid("4K2", "2K2").is_unavoidable());
        assert!(avoid("P3", "2K2").is_avoider());
        assert!(avoid("K1,4", "P3").is_unavoidable());
        assert!(avoid("W4minus", "2K2").is_unavoidable());
        assert!(avoid("P5", "2K2").is_avoider());
        let k6e = Graph::complete(6).remove_edge(0);
        assert!(is_unavoidable(&k6e, &fam("K3"), Distance::D1, Mode::Free).unwrap());
    }

    #[test]
    fn no_legal_mapping() {
        let v = avoid("K2", "2K2");
        assert_eq!(v, AvoidanceVerdict::NoLegalMapping { edge: 0 });
        let v = exists_avoider(&named("P3").unwrap(), &fam("P3"), Distance::D0, Mode::Exclusive).unwrap();
        assert!(matches!(v, AvoidanceVerdict::NoLegalMapping { .. }));
        assert!(!v.is_unavoidable());
    }

    #[test]
    fn minimality_examples() {
        let one = |h: &str, p: &str| {
            is_minimal_unavoidable(&named(h).unwrap(), &fam(p), Distance::D1, Mode::Free).unwrap()
        };
        assert!(one("P6", "2K2"));
        assert!(!one("K6", "2K2"));
        assert!(one("4K2", "2K2"));
        assert!(one("7K2", "3K2"));
        assert!(!one("8K2", "3K2"));
    }

    #[test]
    fn counting_examples() {
        let k5 = Graph::complete(5);
        let p = counting_shortcut(&k5, CountingPattern::TwoK2).unwrap();
        assert_eq!(
            p.shortcut,
            Some(Shortcut::Counting {
                copies: 15,
                killing_edges: 10
            })
        );
        let k6e = Graph::complete(6).remove_edge(0);
        let p = counting_shortcut(&k6e, CountingPattern::K3).unwrap();
        assert_eq!(
            p.shortcut,
            Some(Shortcut::Counting {
                copies: 16,
                killing_edges: 14
            })
        );
        // P6 has 6 copies of 2K2 over 5 edges, so counting already settles it.
        let p = counting_shortcut(&named("P6").unwrap(), CountingPattern::TwoK2).unwrap();
        assert_eq!(
            p.shortcut,
            Some(Shortcut::Counting {
                copies: 6,
                killing_edges: 5
            })
        );
        assert!(counting_shortcut(&named("P5").unwrap(), CountingPattern::TwoK2).is_none());
    }

    #[test]
    fn q_examples() {
        let f = fam("2K2");
        let q = exists_q_mapping(4, &f, Distance::D1, 6).unwrap().unwrap();
        assert_eq!(q.free_count(), 6);
        assert!(q_survivors(&q, &f, Mode::Free).is_empty());
        assert!(exists_q_mapping(4, &f, Distance::D1, 7).unwrap().is_none());
        assert!(exists_q_mapping(5, &f, Distance::D1, 7).unwrap().is_some());
        assert!(exists_q_mapping(5, &f, Distance::D1, 8).unwrap().is_none());
    }

    #[test]
    fn budget_is_enforced() {
        let opts = SolveOptions {
            budget: Budget {
                deadline: None,
                max_nodes: Some(10),
            },
        };
        let r = exists_avoider_with(&Graph::complete(8), &fam("K4"), Distance::D1, Mode::Free, &opts);
        assert!(matches!(r, Err(crate::Error::Budget(_))));
    }
}
