//! The acceptance suite: eleven end-to-end checks, each with a time limit.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::census::{census_minimal, CensusBounds, CensusOptions, CensusResult};
use crate::constructions::{build_construction, default_grid, ConstructionSpec};
use crate::enumerate::graphs_by_size;
use crate::error::Result;
use crate::extremal::{ExtremalContext, ExtremalResult};
use crate::fastpath::fast_2k2_decide;
use crate::functional::{independent_set, FunctionalDigraph};
use crate::graph::named::named;
use crate::graph::{CanonicalForm, Graph};
use crate::mapping::{Distance, Mode};
use crate::patterns::PatternFamily;
use crate::report::{verify_certificate, Certificate};
use crate::solver::{decide, exists_avoider, is_minimal_unavoidable, SolveOptions};

pub const CRITERIA: usize = 11;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: usize,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
    pub limit_seconds: u64,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {}  {}: {}  ({:.2}s, limit {}s)",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.seconds,
            self.limit_seconds
        )
    }
}

fn title(id: usize) -> (&'static str, u64) {
    match id {
        1 => ("h(n,2K2) for n = 4..7", 120),
        2 => ("h(8,2K2)", 300),
        3 => ("minimal unavoidable graphs for 2K2, N=8, M=8", 600),
        4 => ("minimal unavoidable graphs for P3, N=7", 600),
        5 => ("2K2 fast path agrees with the search", 60),
        6 => ("(3t-2)K2 minimal unavoidable for tK2, t = 2, 3", 60),
        7 => ("s(6,K1,2) and the five-matching K6 mapping", 600),
        8 => ("q(n,2K2) = h(n,2K2) for n = 4, 5", 300),
        9 => ("h(n,K1,2) = min(C(n,2), n) for n = 4, 5", 60),
        10 => ("construction grid verifies", 300),
        11 => ("property suites", 600),
        _ => ("unknown criterion", 0),
    }
}

/// Runs one criterion; errors count as failures.
pub fn run_criterion(id: usize) -> CriterionOutcome {
    let (title, limit) = title(id);
    let start = Instant::now();
    let result = match id {
        1 => h_small(),
        2 => h_eight(),
        3 => census_2k2(),
        4 => census_p3(),
        5 => fastpath_agreement(),
        6 => matchings_minimal(),
        7 => s_six(),
        8 => q_equals_h(),
        9 => h_stars(),
        10 => construction_grid(),
        11 => properties(),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let elapsed = start.elapsed();
    let (ok, detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
    let in_time = elapsed <= Duration::from_secs(limit);
    CriterionOutcome {
        id,
        title,
        pass: ok && in_time,
        detail: if in_time { detail } else { format!("{detail}; over the time limit") },
        seconds: elapsed.as_secs_f64(),
        limit_seconds: limit,
    }
}

pub fn run_all() -> Vec<CriterionOutcome> {
    (1..=CRITERIA).map(run_criterion).collect()
}

type Check = Result<(bool, String)>;

fn fam(s: &str) -> Result<PatternFamily> {
    s.parse()
}

fn witness_ok(r: &ExtremalResult) -> Result<bool> {
    verify_certificate(&Certificate::from_extremal(r))
}

fn h_small() -> Check {
    let ctx = ExtremalContext::new();
    let two = fam("2K2")?;
    let mut got = Vec::new();
    let mut witnesses = true;
    for n in 4..=7 {
        let r = ctx.compute_h(n, &two)?;
        witnesses &= witness_ok(&r)?;
        got.push(r.value);
    }
    Ok((got == [6, 7, 7, 7] && witnesses, format!("got {got:?}, witnesses verify: {witnesses}")))
}

fn h_eight() -> Check {
    let r = ExtremalContext::new().compute_h(8, &fam("2K2")?)?;
    let w = witness_ok(&r)?;
    Ok((r.value == 8 && w, format!("got {}, witness verifies: {w}", r.value)))
}

fn forms(specs: &[&str]) -> Result<BTreeSet<CanonicalForm>> {
    specs.iter().map(|s| named(s)?.canonical_form()).collect()
}

fn census_matches(c: &CensusResult, expected: &[&str]) -> Check {
    let want = forms(expected)?;
    let got: BTreeSet<CanonicalForm> = c
        .graphs()?
        .iter()
        .map(Graph::canonical_form)
        .collect::<Result<_>>()?;
    let g6: Vec<&str> = c.members.iter().map(|m| m.graph6.as_str()).collect();
    Ok((
        got == want && got.len() == c.members.len(),
        format!("{} members {:?}, status {:?}", c.members.len(), g6, c.status),
    ))
}

fn census_2k2() -> Check {
    let b = CensusBounds::new(fam("2K2")?, 8).with_max_edges(8);
    let c = census_minimal(&b, &CensusOptions::default())?;
    census_matches(
        &c,
        &["4K2", "P3|2K2", "P3|K3", "P3|K1,3", "C4|K2", "P6", "W4minus", "C4pp"],
    )
}

fn census_p3() -> Check {
    let b = CensusBounds::new(fam("P3")?, 7);
    let c = census_minimal(&b, &CensusOptions::default())?;
    let (ok, detail) = census_matches(
        &c,
        &["K1,4", "Ckplus:3", "Ckplus:4", "Ckplus:5", "Ckplus:6", "B:1", "B:2"],
    )?;
    Ok((ok && c.complete(), detail))
}

fn fastpath_agreement() -> Check {
    let two = fam("2K2")?;
    let mut total = 0;
    let mut agree = 0;
    for level in graphs_by_size(6)?.iter() {
        for cf in level {
            let g = cf.to_graph();
            total += 1;
            let fast = fast_2k2_decide(&g);
            let slow = exists_avoider(&g, &two, Distance::D1, Mode::Free)?;
            let mapping_ok = fast
                .mapping()
                .is_none_or(|f| crate::constructions::verify_construction(&g, f, &two, Mode::Free));
            if fast.name() == slow.name() && mapping_ok {
                agree += 1;
            }
        }
    }
    Ok((total == 156 && agree == total, format!("{agree}/{total} graphs agree")))
}

fn matchings_minimal() -> Check {
    let mut flags = Vec::new();
    for t in [2, 3] {
        let host = named(&format!("{}K2", 3 * t - 2))?;
        flags.push(is_minimal_unavoidable(&host, &fam(&format!("{t}K2"))?, Distance::D1, Mode::Free)?);
    }
    Ok((flags.iter().all(|&x| x), format!("t=2: {}, t=3: {}", flags[0], flags[1])))
}

fn s_six() -> Check {
    let r = ExtremalContext::new().compute_s(6, &fam("K1,2")?)?;
    let w = witness_ok(&r)?;
    let t = Instant::now();
    let k6 = build_construction(&ConstructionSpec::K6Five { copies: 1 })?;
    let k6_ok = k6.verify()?;
    let k6_fast = t.elapsed() < Duration::from_secs(1);
    Ok((
        r.value == 15 && w && k6_ok && k6_fast,
        format!(
            "s(6,K1,2) = {} (expected 15), witness verifies: {w}; K6 five-matching mapping verifies: {k6_ok}",
            r.value
        ),
    ))
}

fn q_equals_h() -> Check {
    let ctx = ExtremalContext::new();
    let two = fam("2K2")?;
    let mut pairs = Vec::new();
    let mut witnesses = true;
    for n in [4, 5] {
        let q = ctx.compute_q(n, &two)?;
        let h = ctx.compute_h(n, &two)?;
        witnesses &= witness_ok(&q)? && witness_ok(&h)?;
        pairs.push((q.value, h.value));
    }
    Ok((
        pairs.iter().all(|(q, h)| q == h) && witnesses,
        format!("(q, h) = {pairs:?}, witnesses verify: {witnesses}"),
    ))
}

fn h_stars() -> Check {
    let ctx = ExtremalContext::new();
    let star = fam("K1,2")?;
    let mut got = Vec::new();
    let mut ok = true;
    for n in [4usize, 5] {
        let r = ctx.compute_h(n, &star)?;
        ok &= r.value == (n * (n - 1) / 2).min(n) && witness_ok(&r)?;
        got.push(r.value);
    }
    Ok((ok, format!("got {got:?}, expected [4, 5]")))
}

fn construction_grid() -> Check {
    let grid = default_grid();
    let mut kinds = BTreeSet::new();
    let mut failed = Vec::new();
    for spec in &grid {
        kinds.insert(spec.to_string().split(':').next().unwrap_or_default().to_string());
        match build_construction(spec).and_then(|c| c.verify()) {
            Ok(true) => {}
            Ok(false) => failed.push(spec.to_string()),
            Err(e) => failed.push(format!("{spec} ({e})")),
        }
    }
    let chain_deletions = grid
        .iter()
        .filter(|s| matches!(s, ConstructionSpec::TriangleChain { k: 2, delete: Some(_) }))
        .count();
    let ok = failed.is_empty() && grid.len() >= 25 && kinds.len() == 14 && chain_deletions == 25;
    Ok((
        ok,
        format!(
            "{} instances over {} kinds, {} failed{}",
            grid.len(),
            kinds.len(),
            failed.len(),
            if failed.is_empty() { String::new() } else { format!(": {}", failed.join(", ")) }
        ),
    ))
}

fn properties() -> Check {
    let mut notes = Vec::new();
    let mut ok = true;
    for (name, r) in [
        ("sandwich", sandwich()),
        ("unavoid identity", identity()),
        ("monotonicity", monotonicity()),
        ("independence", independence()),
    ] {
        let (pass, detail) = r?;
        ok &= pass;
        notes.push(format!("{name}: {detail}"));
    }
    Ok((ok, notes.join("; ")))
}

/// ex <= h <= 3 ex and h > ex, with every witness re-verified.
fn sandwich() -> Check {
    let ctx = ExtremalContext::new();
    let mut pairs = 0;
    let mut bad = Vec::new();
    let mut certs = 0;
    for p in ["P3", "2K2", "K3", "K1,3", "P4"] {
        let fam = fam(p)?;
        for n in fam.max_order()..=6 {
            let ex = ctx.compute_ex(n, &fam)?;
            let h = ctx.compute_h(n, &fam)?;
            pairs += 1;
            if !(ex.value < h.value && h.value <= 3 * ex.value) {
                bad.push(format!("{p} n={n}: ex={} h={}", ex.value, h.value));
            }
            for r in [&ex, &h] {
                let c = Certificate::from_extremal(r);
                let back = Certificate::from_json(&c.to_json())?;
                certs += 1;
                if !verify_certificate(&back)? {
                    bad.push(format!("{} certificate for {p} n={n}", r.function));
                }
            }
        }
    }
    for r in [ctx.compute_s(5, &fam("K1,2")?)?, ctx.compute_q(4, &fam("P3")?)?, ctx.compute_p(4, &fam("K1,2")?)?] {
        certs += 1;
        if !verify_certificate(&Certificate::from_extremal(&r))? {
            bad.push(format!("{} certificate", r.function));
        }
    }
    Ok((bad.is_empty(), format!("{pairs} pairs, {certs} certificates, violations {bad:?}")))
}

/// h(n, H) equals the Turán number of the minimal unavoidable graphs on at
/// most n vertices.
fn identity() -> Check {
    let ctx = ExtremalContext::new();
    let mut bad = Vec::new();
    let mut checked = 0;
    for p in ["P3", "2K2"] {
        let pattern = fam(p)?;
        let census = census_minimal(&CensusBounds::new(pattern.clone(), 7), &CensusOptions::default())?;
        if !census.complete() {
            bad.push(format!("{p} census incomplete"));
            continue;
        }
        let members = census.graphs()?;
        for n in pattern.max_order()..=7 {
            let small: Vec<(String, Graph)> = members
                .iter()
                .filter(|g| g.order() <= n)
                .map(|g| (g.to_graph6(), g.clone()))
                .collect();
            let ex = if small.is_empty() {
                n * (n - 1) / 2
            } else {
                ctx.compute_ex(n, &PatternFamily::new(small)?)?.value
            };
            let h = ctx.compute_h(n, &pattern)?.value;
            checked += 1;
            if ex != h {
                bad.push(format!("{p} n={n}: h={h} ex={ex}"));
            }
        }
    }
    Ok((bad.is_empty(), format!("{checked} cases, violations {bad:?}")))
}

/// A graph containing an unavoidable subgraph is unavoidable.
fn monotonicity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let patterns = ["P3", "2K2", "K3", "K1,3"];
    let opts = SolveOptions::default();
    let mut bad = Vec::new();
    let mut unavoidable_subs = 0;
    let mut certs = 0;
    for i in 0..200 {
        let n = rng.gen_range(4..=6);
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(0.6) {
                    edges.push((a, b));
                }
            }
        }
        let keep: Vec<(usize, usize)> = edges.iter().copied().filter(|_| rng.gen_bool(0.7)).collect();
        let g = Graph::from_edges(n, edges)?;
        let sub = Graph::from_edges(n, keep)?.strip_isolated();
        let p = fam(patterns.choose(&mut rng).expect("nonempty"))?;
        let vs = decide(&sub, &p, Distance::D1, Mode::Free, &opts)?;
        let vg = decide(&g, &p, Distance::D1, Mode::Free, &opts)?;
        if vs.is_unavoidable() {
            unavoidable_subs += 1;
            if !vg.is_unavoidable() {
                bad.push(format!("pair {i}: {} inside {}", sub.to_graph6(), g.to_graph6()));
            }
        }
        for (h, v) in [(&sub, &vs), (&g, &vg)] {
            if let Some(c) = Certificate::from_verdict(h, &p, Distance::D1, Mode::Free, v) {
                certs += 1;
                if !verify_certificate(&c)? {
                    bad.push(format!("pair {i}: {} certificate for {}", c.kind(), h.to_graph6()));
                }
            }
        }
    }
    Ok((
        bad.is_empty(),
        format!("200 pairs ({unavoidable_subs} with unavoidable subgraph), {certs} certificates, violations {bad:?}"),
    ))
}

/// Independent sets in digraphs of bounded out-degree meet the coloring bounds.
fn independence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd16a);
    let mut bad = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=14);
        let d = rng.gen_range(1..=3);
        let out: Vec<Vec<usize>> = (0..n)
            .map(|_| {
                let k = rng.gen_range(0..=d);
                (0..k).map(|_| rng.gen_range(0..n)).collect()
            })
            .collect();
        let g = FunctionalDigraph::new(out, d)?;
        let set = independent_set(&g);
        let mut need = n.div_ceil(2 * d + 1);
        if d == 1 {
            let sinks = (0..n).filter(|&v| g.out(v).is_empty()).count();
            need = need.max(sinks + n.saturating_sub(2 * sinks).div_ceil(3));
        }
        if !g.is_independent(&set) || set.len() < need {
            bad += 1;
        }
    }
    Ok((bad == 0, format!("1000 digraphs, {bad} violations")))
}
