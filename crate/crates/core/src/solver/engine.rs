//! Backtracking search for an edge mapping that kills every pattern copy.
//!
//! Variables are host edges; the value of edge `e` is its image. A copy is
//! killed once one of its edges receives an image in that edge's kill set for
//! the copy. The search repeatedly picks the unkilled copy with the fewest
//! remaining kill options and branches over those options; after an option
//! `e -> x` is refuted, `x` is removed from the domain of `e` for the sibling
//! branches, so no assignment is explored twice.
//!
//! Edge images are bit positions in a `u64`; bit 63 is reserved for the
//! "unconstrained" image used by partial mappings over complete hosts, which
//! behaves like a fixed point and kills every copy through its edge.

use std::time::Instant;

use crate::error::{Error, Result};

pub const WILD: usize = 63;
pub const MAX_EDGES: usize = 63;

const WILD_BIT: u64 = 1 << WILD;

/// Cooperative resource limits, checked every few hundred search nodes.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub deadline: Option<Instant>,
    pub max_nodes: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget::default()
    }

    pub fn with_seconds(secs: f64) -> Budget {
        Budget {
            deadline: Some(Instant::now() + std::time::Duration::from_secs_f64(secs)),
            max_nodes: None,
        }
    }

    fn check(&self, nodes: u64) -> Result<()> {
        if let Some(limit) = self.max_nodes {
            if nodes > limit {
                return Err(Error::Budget(format!("search exceeded {limit} nodes")));
            }
        }
        if nodes & 0xff != 0 {
            return Ok(());
        }
        if let Some(deadline) = self.deadline {
            if Instant::now() >= deadline {
                return Err(Error::Budget("search deadline reached".into()));
            }
        }
        Ok(())
    }
}

/// A kill-model instance. `legal[e]` is the set of admissible images of `e`;
/// `copies[c]` lists, for each edge of copy `c`, the images that kill it.
#[derive(Clone, Debug)]
pub struct KillProblem {
    pub legal: Vec<u64>,
    pub copies: Vec<Vec<(usize, u64)>>,
    /// How many edges may take the unconstrained image; `None` disables it.
    pub wild_budget: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Solution {
    /// Image of each edge; [`WILD`] marks an unconstrained edge.
    pub image: Vec<usize>,
    pub nodes: u64,
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Found(Solution),
    Exhausted { nodes: u64 },
}

struct State<'a> {
    p: &'a KillProblem,
    budget: Budget,
    by_edge: Vec<Vec<(u32, u64)>>,
    cmasks: Vec<Vec<(usize, u64)>>,
    static_max: Vec<usize>,
    domain: Vec<u64>,
    assigned: Vec<usize>,
    hits: Vec<u32>,
    unkilled: usize,
    capacity: usize,
    wild_used: usize,
    nodes: u64,
    solution: Option<Vec<usize>>,
}

const UNASSIGNED: usize = usize::MAX;

pub fn solve(p: &KillProblem, budget: Budget) -> Result<Outcome> {
    let m = p.legal.len();
    if m > MAX_EDGES {
        return Err(Error::Capacity {
            what: "host edges for the search engine",
            actual: m,
            limit: MAX_EDGES,
        });
    }
    let wild_mask = if p.wild_budget.is_some() { WILD_BIT } else { 0 };
    let mut by_edge: Vec<Vec<(u32, u64)>> = vec![Vec::new(); m];
    let mut cmasks: Vec<Vec<(usize, u64)>> = Vec::with_capacity(p.copies.len());
    for (c, copy) in p.copies.iter().enumerate() {
        let mut row = Vec::with_capacity(copy.len());
        for &(e, mask) in copy {
            let mk = (mask | wild_mask) & p.legal[e];
            by_edge[e].push((c as u32, mk));
            row.push((e, mk));
        }
        cmasks.push(row);
    }
    let static_max: Vec<usize> = (0..m)
        .map(|e| {
            let mut best = 0;
            let mut dom = p.legal[e] & !WILD_BIT;
            while dom != 0 {
                let x = dom.trailing_zeros();
                dom &= dom - 1;
                let k = by_edge[e].iter().filter(|&&(_, mk)| mk >> x & 1 == 1).count();
                best = best.max(k);
            }
            best
        })
        .collect();
    let mut st = State {
        p,
        budget,
        by_edge,
        cmasks,
        capacity: static_max.iter().sum(),
        static_max,
        domain: p.legal.clone(),
        assigned: vec![UNASSIGNED; m],
        hits: vec![0; p.copies.len()],
        unkilled: p.copies.len(),
        wild_used: 0,
        nodes: 0,
        solution: None,
    };
    let found = st.search()?;
    Ok(if found {
        Outcome::Found(Solution {
            image: st.solution.take().expect("solution recorded"),
            nodes: st.nodes,
        })
    } else {
        Outcome::Exhausted { nodes: st.nodes }
    })
}

impl State<'_> {
    fn wild_allowed(&self) -> bool {
        self.p.wild_budget.is_some_and(|b| self.wild_used < b)
    }

    fn assign(&mut self, e: usize, x: usize) {
        self.assigned[e] = x;
        self.capacity -= self.static_max[e];
        if x == WILD {
            self.wild_used += 1;
        }
        for &(c, mask) in &self.by_edge[e] {
            if mask >> x & 1 == 1 {
                let h = &mut self.hits[c as usize];
                if *h == 0 {
                    self.unkilled -= 1;
                }
                *h += 1;
            }
        }
    }

    fn unassign(&mut self, e: usize, x: usize) {
        self.assigned[e] = UNASSIGNED;
        self.capacity += self.static_max[e];
        if x == WILD {
            self.wild_used -= 1;
        }
        for &(c, mask) in &self.by_edge[e] {
            if mask >> x & 1 == 1 {
                let h = &mut self.hits[c as usize];
                *h -= 1;
                if *h == 0 {
                    self.unkilled += 1;
                }
            }
        }
    }

    /// Images still available to `e` among those in `mask`.
    fn option_mask(&self, e: usize, mask: u64) -> u64 {
        let mut opts = self.domain[e] & mask;
        if !self.wild_allowed() {
            opts &= !WILD_BIT;
        }
        opts
    }

    fn finish(&mut self) -> bool {
        let mut image = self.assigned.clone();
        let mut wild = self.wild_used;
        for (e, slot) in image.iter_mut().enumerate() {
            if *slot != UNASSIGNED {
                continue;
            }
            let plain = self.p.legal[e] & !WILD_BIT;
            if plain != 0 {
                *slot = plain.trailing_zeros() as usize;
            } else if self.p.legal[e] & WILD_BIT != 0 {
                *slot = WILD;
                wild += 1;
            } else {
                return false;
            }
        }
        if self.p.wild_budget.is_some_and(|b| wild > b) {
            return false;
        }
        self.solution = Some(image);
        true
    }

    fn search(&mut self) -> Result<bool> {
        self.nodes += 1;
        self.budget.check(self.nodes)?;
        if self.unkilled == 0 {
            return Ok(self.finish());
        }
        if self.p.wild_budget.is_none() && self.unkilled > self.capacity {
            return Ok(false);
        }

        let mut best: Option<(usize, u32)> = None;
        for (c, copy) in self.cmasks.iter().enumerate() {
            if self.hits[c] != 0 {
                continue;
            }
            let mut count = 0u32;
            for &(e, mask) in copy {
                if self.assigned[e] != UNASSIGNED {
                    continue;
                }
                count += self.option_mask(e, mask).count_ones();
            }
            if count == 0 {
                return Ok(false);
            }
            if best.is_none_or(|(_, b)| count < b) {
                best = Some((c, count));
                if count == 1 {
                    break;
                }
            }
        }
        let (c, _) = best.expect("an unkilled copy exists");

        let mut options: Vec<(usize, usize, usize)> = Vec::new();
        for &(e, mask) in &self.cmasks[c] {
            if self.assigned[e] != UNASSIGNED {
                continue;
            }
            let mut opts = self.option_mask(e, mask);
            while opts != 0 {
                let x = opts.trailing_zeros() as usize;
                opts &= opts - 1;
                let gain = self.by_edge[e]
                    .iter()
                    .filter(|&&(k, mk)| self.hits[k as usize] == 0 && mk >> x & 1 == 1)
                    .count();
                options.push((e, x, gain));
            }
        }
        options.sort_by(|a, b| b.2.cmp(&a.2).then((a.0, a.1).cmp(&(b.0, b.1))));

        let mut removed: Vec<(usize, usize)> = Vec::new();
        let mut found = false;
        for &(e, x, _) in &options {
            if self.domain[e] >> x & 1 == 0 {
                continue;
            }
            self.assign(e, x);
            let r = self.search();
            self.unassign(e, x);
            match r {
                Ok(true) => {
                    found = true;
                    break;
                }
                Ok(false) => {}
                Err(err) => {
                    self.restore(&removed);
                    return Err(err);
                }
            }
            self.domain[e] &= !(1u64 << x);
            removed.push((e, x));
            if self.domain[e] == 0 {
                break;
            }
        }
        self.restore(&removed);
        Ok(found)
    }

    fn restore(&mut self, removed: &[(usize, usize)]) {
        for &(e, x) in removed {
            self.domain[e] |= 1u64 << x;
        }
    }
}
