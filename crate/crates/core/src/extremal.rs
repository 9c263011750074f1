//! Exact small values of ex, h, s, q and p.
//!
//! ex, h and s scan all hosts on `n` vertices by descending edge count and
//! stop at the first count with a success; within a count the hosts are tried
//! in canonical order, so the witness is the smallest canonical form.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::census::{CensusBounds, CensusResult};
use crate::enumerate::graphs_by_size;
use crate::error::{param, Result};
use crate::graph::{CanonicalForm, Graph};
use crate::mapping::{Distance, EdgeMapping, Mode, QMapping};
use crate::patterns::{contains_copy, PatternFamily};
use crate::solver::{decide, exists_partial_mapping, AvoidanceVerdict, SolveOptions};

pub const MAX_EX_ORDER: usize = 9;
pub const MAX_H_ORDER: usize = 8;
pub const MAX_S_ORDER: usize = 6;
pub const MAX_Q_ORDER: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremalFunction {
    Ex,
    H,
    S,
    Q,
    P,
}

impl fmt::Display for ExtremalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExtremalFunction::Ex => "ex",
            ExtremalFunction::H => "h",
            ExtremalFunction::S => "s",
            ExtremalFunction::Q => "q",
            ExtremalFunction::P => "p",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Host(Graph),
    Mapped(EdgeMapping),
    Partial(QMapping),
}

impl Witness {
    pub fn graph(&self) -> Graph {
        match self {
            Witness::Host(g) => g.clone(),
            Witness::Mapped(f) => f.host().clone(),
            Witness::Partial(q) => q.host(),
        }
    }

    pub fn pairs(&self) -> Option<Vec<[usize; 2]>> {
        match self {
            Witness::Host(_) => None,
            Witness::Mapped(f) => Some(f.pairs()),
            Witness::Partial(q) => Some(q.pairs()),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExtremalStats {
    pub hosts_checked: u64,
    pub nodes: u64,
}

#[derive(Clone, Debug)]
pub struct ExtremalResult {
    pub function: ExtremalFunction,
    pub n: usize,
    pub patterns: PatternFamily,
    pub value: usize,
    pub witness: Witness,
    pub stats: ExtremalStats,
}

/// Caches the host levels per order; share one across queries.
#[derive(Clone, Default)]
pub struct ExtremalContext {
    levels: Arc<Mutex<BTreeMap<usize, Arc<Vec<Vec<CanonicalForm>>>>>>,
    solve: SolveOptions,
    prune: Option<Arc<PruneSet>>,
}

/// Minimal unavoidable graphs from a complete census.
struct PruneSet {
    family: Vec<String>,
    max_order: usize,
    members: Vec<Graph>,
}

impl PruneSet {
    fn applies_to(&self, n: usize, patterns: &PatternFamily) -> bool {
        n <= self.max_order && self.family == patterns.graph6_list()
    }
}

impl ExtremalContext {
    pub fn new() -> ExtremalContext {
        ExtremalContext::default()
    }

    pub fn with_solve_options(mut self, solve: SolveOptions) -> ExtremalContext {
        self.solve = solve;
        self
    }

    /// Skip h-hosts containing a member of a complete census, for queries on
    /// the same family within the census order. Incomplete censuses and other
    /// mapping classes are ignored.
    pub fn with_census(mut self, bounds: &CensusBounds, census: &CensusResult) -> Result<ExtremalContext> {
        if census.complete() && bounds.inherits_avoidability() {
            self.prune = Some(Arc::new(PruneSet {
                family: bounds.patterns.graph6_list(),
                max_order: bounds.max_order,
                members: census.graphs()?,
            }));
        }
        Ok(self)
    }

    pub fn levels(&self, n: usize) -> Result<Arc<Vec<Vec<CanonicalForm>>>> {
        if let Some(l) = self.levels.lock().expect("level cache lock").get(&n) {
            return Ok(l.clone());
        }
        let l = Arc::new(graphs_by_size(n)?);
        self.levels.lock().expect("level cache lock").insert(n, l.clone());
        Ok(l)
    }

    /// Scans levels from `top` down; `test` returns `Some` on success.
    fn descend<T: Send>(
        &self,
        n: usize,
        top: usize,
        stats: &mut ExtremalStats,
        test: impl Fn(&Graph) -> Result<Option<(T, u64)>> + Sync,
    ) -> Result<Option<(usize, T)>> {
        let levels = self.levels(n)?;
        for m in (0..=top.min(levels.len() - 1)).rev() {
            let level = &levels[m];
            let outcomes: Vec<Result<Option<(T, u64)>>> =
                level.par_iter().map(|cf| test(&cf.to_graph())).collect();
            stats.hosts_checked += level.len() as u64;
            let mut found = None;
            for o in outcomes {
                if let Some((t, nodes)) = o? {
                    stats.nodes += nodes;
                    if found.is_none() {
                        found = Some(t);
                    }
                }
            }
            if let Some(t) = found {
                return Ok(Some((m, t)));
            }
        }
        Ok(None)
    }

    pub fn compute_ex(&self, n: usize, patterns: &PatternFamily) -> Result<ExtremalResult> {
        if n > MAX_EX_ORDER {
            return param(format!("ex is computed for n <= {MAX_EX_ORDER}"));
        }
        let mut stats = ExtremalStats::default();
        let (value, g) = self
            .descend(n, n * n.saturating_sub(1) / 2, &mut stats, |g| {
                Ok(patterns.is_free_of(g).then(|| (g.clone(), 0)))
            })?
            .expect("the empty graph is pattern-free");
        Ok(ExtremalResult {
            function: ExtremalFunction::Ex,
            n,
            patterns: patterns.clone(),
            value,
            witness: Witness::Host(g),
            stats,
        })
    }

    pub fn compute_h(&self, n: usize, patterns: &PatternFamily) -> Result<ExtremalResult> {
        if n > MAX_H_ORDER {
            return param(format!("h is computed for n <= {MAX_H_ORDER}"));
        }
        let ex = self.compute_ex(n, patterns)?;
        let cap = (n * n.saturating_sub(1) / 2).min(3 * ex.value);
        let mut stats = ex.stats;
        let solve = self.solve;
        let prune: &[Graph] = match &self.prune {
            Some(p) if p.applies_to(n, patterns) => &p.members,
            _ => &[],
        };
        let found = self.descend(n, cap, &mut stats, |g| {
            if prune.iter().any(|m| contains_copy(g, m)) {
                return Ok(None);
            }
            match decide(g, patterns, Distance::D1, Mode::Free, &solve)? {
                AvoidanceVerdict::Avoider(f) => Ok(Some((f, 0))),
                _ => Ok(None),
            }
        })?;
        let (value, f) = found.ok_or_else(|| {
            crate::Error::Infeasible(format!("no host on {n} vertices avoids the family"))
        })?;
        Ok(ExtremalResult {
            function: ExtremalFunction::H,
            n,
            patterns: patterns.clone(),
            value,
            witness: Witness::Mapped(f),
            stats,
        })
    }

    pub fn compute_s(&self, n: usize, patterns: &PatternFamily) -> Result<ExtremalResult> {
        if n > MAX_S_ORDER {
            return param(format!("s is computed for n <= {MAX_S_ORDER}"));
        }
        let mut stats = ExtremalStats::default();
        let solve = self.solve;
        let found = self.descend(n, n * n.saturating_sub(1) / 2, &mut stats, |g| {
            match decide(g, patterns, Distance::D0, Mode::Exclusive, &solve)? {
                AvoidanceVerdict::Avoider(f) => Ok(Some((f, 0))),
                _ => Ok(None),
            }
        })?;
        let (value, f) = found.ok_or_else(|| {
            crate::Error::Infeasible(format!("no host on {n} vertices has an exclusive avoider"))
        })?;
        Ok(ExtremalResult {
            function: ExtremalFunction::S,
            n,
            patterns: patterns.clone(),
            value,
            witness: Witness::Mapped(f),
            stats,
        })
    }

    /// Largest `m` with a partial mapping on `K_n`, by bisection; feasibility
    /// is monotone in `m` and `m = 0` is always feasible.
    fn partial(&self, n: usize, patterns: &PatternFamily, d: Distance, mode: Mode, function: ExtremalFunction) -> Result<ExtremalResult> {
        if n > MAX_Q_ORDER {
            return param(format!("{function} is computed for n <= {MAX_Q_ORDER}"));
        }
        let mut stats = ExtremalStats::default();
        let mut run = |m: usize| -> Result<Option<QMapping>> {
            let (q, s) = exists_partial_mapping(n, patterns, d, mode, m, &self.solve)?;
            stats.hosts_checked += 1;
            stats.nodes += s.nodes;
            Ok(q)
        };
        let mut best = run(0)?.expect("all edges unconstrained kill every copy");
        let (mut lo, mut hi) = (best.free_count(), n * n.saturating_sub(1) / 2);
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            match run(mid)? {
                Some(q) => {
                    lo = q.free_count().max(mid);
                    best = q;
                }
                None => hi = mid - 1,
            }
        }
        Ok(ExtremalResult {
            function,
            n,
            patterns: patterns.clone(),
            value: lo,
            witness: Witness::Partial(best),
            stats,
        })
    }

    pub fn compute_q(&self, n: usize, patterns: &PatternFamily) -> Result<ExtremalResult> {
        self.partial(n, patterns, Distance::D1, Mode::Free, ExtremalFunction::Q)
    }

    pub fn compute_p(&self, n: usize, patterns: &PatternFamily) -> Result<ExtremalResult> {
        self.partial(n, patterns, Distance::D0, Mode::Exclusive, ExtremalFunction::P)
    }
}

pub fn compute_ex(n: usize, patterns: &PatternFamily) -> Result<ExtremalResult> {
    ExtremalContext::new().compute_ex(n, patterns)
}

pub fn compute_h(n: usize, patterns: &PatternFamily) -> Result<ExtremalResult> {
    ExtremalContext::new().compute_h(n, patterns)
}

pub fn compute_s(n: usize, patterns: &PatternFamily) -> Result<ExtremalResult> {
    ExtremalContext::new().compute_s(n, patterns)
}

pub fn compute_q(n: usize, patterns: &PatternFamily) -> Result<ExtremalResult> {
    ExtremalContext::new().compute_q(n, patterns)
}

pub fn compute_p(n: usize, patterns: &PatternFamily) -> Result<ExtremalResult> {
    ExtremalContext::new().compute_p(n, patterns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::surviving_copies;

    fn fam(s: &str) -> PatternFamily {
        s.parse().unwrap()
    }

    #[test]
    fn turan_numbers() {
        let ctx = ExtremalContext::new();
        assert_eq!(ctx.compute_ex(5, &fam("2K2")).unwrap().value, 4);
        assert_eq!(ctx.compute_ex(4, &fam("P3")).unwrap().value, 2);
        assert_eq!(ctx.compute_ex(6, &PatternFamily::delta(5, 2).unwrap()).unwrap().value, 4);
        let r = ctx.compute_ex(6, &fam("K3")).unwrap();
        assert_eq!(r.value, 9);
        assert!(fam("K3").is_free_of(&r.witness.graph()));
    }

    #[test]
    fn h_small_values() {
        let ctx = ExtremalContext::new();
        let r = ctx.compute_h(4, &fam("2K2")).unwrap();
        assert_eq!(r.value, 6);
        let Witness::Mapped(f) = &r.witness else { panic!("h carries a mapping") };
        assert!(surviving_copies(f, &fam("2K2"), Mode::Free).is_empty());
        assert_eq!(ctx.compute_h(4, &fam("K1,2")).unwrap().value, 4);
    }

    #[test]
    fn s_and_p_small_values() {
        let ctx = ExtremalContext::new();
        let s = ctx.compute_s(4, &fam("K1,2")).unwrap();
        assert_eq!(s.value, 6);
        let Witness::Mapped(f) = &s.witness else { panic!("s carries a mapping") };
        assert!(surviving_copies(f, &fam("K1,2"), Mode::Exclusive).is_empty());
        // in K3 every two edges meet, so no edge can respect d = 0
        assert_eq!(ctx.compute_p(3, &fam("K1,3")).unwrap().value, 0);
    }

    #[test]
    fn q_equals_h_for_p3_on_four_vertices() {
        let ctx = ExtremalContext::new();
        let q = ctx.compute_q(4, &fam("P3")).unwrap();
        let h = ctx.compute_h(4, &fam("P3")).unwrap();
        assert_eq!(q.value, h.value);
        let Witness::Partial(qm) = &q.witness else { panic!("q carries a partial mapping") };
        assert!(qm.free_count() >= q.value);
    }
}
