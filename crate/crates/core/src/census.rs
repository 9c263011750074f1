//! Minimal unavoidable graphs within order and size bounds.
//!
//! The sweep keeps the frontier of all isolate-free graphs with `m` edges that
//! are not unavoidable. Avoidability is inherited by subgraphs (for `d = 1`,
//! free mode), so every graph with `m + 1` edges whose one-edge deletions all
//! lie in the frontier is a child of some frontier graph; such a child is
//! either a minimal unavoidable graph or joins the next frontier. A child with
//! a deletion outside the frontier contains an unavoidable graph and is
//! dropped. When the frontier empties, no larger member exists within the
//! order bound.
//!
//! Other distance classes and the exclusive mode run through the same sweep,
//! but hosts without any legal mapping count as not unavoidable there, which
//! is not inherited by subgraphs; results for them are only "members found".

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{edge_deletions, isolate_free_children};
use crate::error::{param, Error, Result};
use crate::graph::{CanonicalForm, Graph, SmallGraph};
use crate::mapping::{Distance, Mode};
use crate::patterns::PatternFamily;
use crate::solver::{decide, AvoidanceVerdict, SolveOptions};

pub const MAX_CENSUS_ORDER: usize = 10;
pub const MAX_CENSUS_EDGES: usize = 20;

#[derive(Clone, Debug)]
pub struct CensusBounds {
    pub max_order: usize,
    pub max_edges: usize,
    pub patterns: PatternFamily,
    pub d: Distance,
    pub mode: Mode,
}

impl CensusBounds {
    /// Free mode, `d = 1`, edges capped by the order or the engine limit.
    pub fn new(patterns: PatternFamily, max_order: usize) -> CensusBounds {
        let all = max_order * max_order.saturating_sub(1) / 2;
        CensusBounds {
            max_order,
            max_edges: all.min(MAX_CENSUS_EDGES),
            patterns,
            d: Distance::D1,
            mode: Mode::Free,
        }
    }

    pub fn with_max_edges(mut self, m: usize) -> CensusBounds {
        self.max_edges = m;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_order > MAX_CENSUS_ORDER {
            return param(format!("census order {} exceeds {MAX_CENSUS_ORDER}", self.max_order));
        }
        if self.max_edges > MAX_CENSUS_EDGES {
            return param(format!("census size {} exceeds {MAX_CENSUS_EDGES}", self.max_edges));
        }
        Ok(())
    }

    /// Whether an empty frontier proves the member list complete.
    pub fn inherits_avoidability(&self) -> bool {
        self.d == Distance::D1 && self.mode == Mode::Free
    }

    fn key(&self) -> String {
        format!(
            "N={} M={} d={} mode={} patterns={}",
            self.max_order,
            self.max_edges,
            self.d,
            self.mode,
            self.patterns.graph6_list().join(",")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    /// graph6 of the canonical representative.
    pub graph6: String,
    pub order: usize,
    pub edges: usize,
    pub unavoidable: bool,
    pub minimal: bool,
    pub nodes: u64,
    pub shortcut: Option<String>,
}

impl CensusRecord {
    pub fn graph(&self) -> Result<Graph> {
        Graph::from_graph6(&self.graph6)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusStatus {
    /// The frontier emptied: no further members within the order bound.
    Complete,
    /// Stopped at the edge bound with graphs still to extend.
    EdgeBound,
    /// A resource limit interrupted the sweep; completed levels are reported.
    Interrupted,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusResult {
    pub members: Vec<CensusRecord>,
    pub status: CensusStatus,
    /// Largest edge count fully processed.
    pub levels_done: usize,
    /// Number of not-unavoidable graphs per edge count, starting at one edge.
    pub frontier_sizes: Vec<usize>,
}

impl CensusResult {
    pub fn complete(&self) -> bool {
        self.status == CensusStatus::Complete
    }

    pub fn graphs(&self) -> Result<Vec<Graph>> {
        self.members.iter().map(CensusRecord::graph).collect()
    }
}

#[derive(Clone, Debug, Default)]
pub struct CensusOptions {
    pub solve: SolveOptions,
    /// Level checkpoint, written after each completed edge count and resumed
    /// from when its bounds match.
    pub checkpoint: Option<PathBuf>,
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    key: String,
    levels_done: usize,
    frontier: Vec<String>,
    members: Vec<CensusRecord>,
    frontier_sizes: Vec<usize>,
}

fn load_checkpoint(path: &Path, key: &str) -> Result<Option<Checkpoint>> {
    if !path.exists() {
        return Ok(None);
    }
    let cp: Checkpoint = serde_json::from_str(&fs::read_to_string(path)?)?;
    if cp.key != key {
        return Err(Error::Parse(format!(
            "checkpoint {} belongs to a different census ({})",
            path.display(),
            cp.key
        )));
    }
    Ok(Some(cp))
}

fn save_checkpoint(path: &Path, cp: &Checkpoint) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, serde_json::to_string(cp)?)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn canon_of_g6(s: &str) -> Result<CanonicalForm> {
    Graph::from_graph6(s)?.canonical_form()
}

enum Fate {
    Member(CensusRecord),
    Frontier(CanonicalForm),
    Dropped,
}

fn classify(
    child: CanonicalForm,
    frontier: &BTreeSet<CanonicalForm>,
    bounds: &CensusBounds,
    solve: &SolveOptions,
) -> Result<Fate> {
    let small: SmallGraph = child.to_small();
    if edge_deletions(&small).iter().any(|d| !frontier.contains(d)) {
        return Ok(Fate::Dropped);
    }
    let host = child.to_graph();
    match decide(&host, &bounds.patterns, bounds.d, bounds.mode, solve)? {
        AvoidanceVerdict::Unavoidable(proof) => Ok(Fate::Member(CensusRecord {
            graph6: host.to_graph6(),
            order: host.order(),
            edges: host.size(),
            unavoidable: true,
            minimal: true,
            nodes: proof.stats.nodes,
            shortcut: proof.shortcut.map(|s| serde_json::to_string(&s).expect("serializable")),
        })),
        _ => Ok(Fate::Frontier(child)),
    }
}

pub fn census_minimal(bounds: &CensusBounds, opts: &CensusOptions) -> Result<CensusResult> {
    bounds.validate()?;
    let key = bounds.key();
    let resumed = match &opts.checkpoint {
        Some(p) => load_checkpoint(p, &key)?,
        None => None,
    };
    let (mut frontier, mut members, mut levels_done, mut frontier_sizes) = match resumed {
        Some(cp) => (
            cp.frontier.iter().map(|s| canon_of_g6(s)).collect::<Result<BTreeSet<_>>>()?,
            cp.members,
            cp.levels_done,
            cp.frontier_sizes,
        ),
        None => {
            let mut k2 = SmallGraph::new(2)?;
            k2.set_edge(0, 1);
            let mut start = BTreeSet::new();
            // a single edge never has a legal image, so it is never unavoidable
            if bounds.max_order >= 2 && bounds.max_edges >= 1 {
                start.insert(k2.canonical_form());
            }
            (start, Vec::new(), 1, vec![1])
        }
    };

    let mut status = CensusStatus::EdgeBound;
    while levels_done < bounds.max_edges {
        if frontier.is_empty() {
            break;
        }
        let children: BTreeSet<CanonicalForm> = frontier
            .par_iter()
            .flat_map_iter(|cf| {
                isolate_free_children(&cf.to_small(), bounds.max_order)
                    .into_iter()
                    .map(|c| c.canonical_form())
            })
            .collect();
        let children: Vec<CanonicalForm> = children.into_iter().collect();
        let fates: Result<Vec<Fate>> = children
            .par_iter()
            .map(|&c| classify(c, &frontier, bounds, &opts.solve))
            .collect();
        let fates = match fates {
            Ok(f) => f,
            Err(Error::Budget(_)) => {
                status = CensusStatus::Interrupted;
                break;
            }
            Err(e) => return Err(e),
        };
        let mut next = BTreeSet::new();
        for fate in fates {
            match fate {
                Fate::Member(r) => members.push(r),
                Fate::Frontier(c) => {
                    next.insert(c);
                }
                Fate::Dropped => {}
            }
        }
        frontier = next;
        levels_done += 1;
        frontier_sizes.push(frontier.len());
        if let Some(p) = &opts.checkpoint {
            save_checkpoint(
                p,
                &Checkpoint {
                    key: key.clone(),
                    levels_done,
                    frontier: frontier.iter().map(|c| c.to_graph().to_graph6()).collect(),
                    members: members.clone(),
                    frontier_sizes: frontier_sizes.clone(),
                },
            )?;
        }
    }
    if frontier.is_empty() && status != CensusStatus::Interrupted && bounds.inherits_avoidability() {
        status = CensusStatus::Complete;
    }
    Ok(CensusResult {
        members,
        status,
        levels_done,
        frontier_sizes,
    })
}
