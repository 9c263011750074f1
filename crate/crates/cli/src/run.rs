use std::fmt::Write as _;
use std::io::{self, BufRead, Read};
use std::time::{Duration, Instant};

use edgemap::acceptance::{run_criterion, CRITERIA};
use edgemap::census::{census_minimal, CensusBounds, CensusOptions, CensusStatus};
use edgemap::constructions::{build_construction, Claim, ConstructionSpec};
use edgemap::extremal::{ExtremalContext, ExtremalFunction, ExtremalResult};
use edgemap::fastpath::fast_2k2_decide;
use edgemap::graph::named::named;
use edgemap::report::{verify_certificate, Certificate};
use edgemap::solver::{exists_avoider_with, AvoidanceVerdict};
use edgemap::{Budget, Distance, Error, Graph, Mode, PatternFamily, SolveOptions};
use serde_json::{json, Value};

use crate::{ClassArgs, Cli, Command, ExtremalArgs, HostArgs};

pub const OK: u8 = 0;
pub const FAILED: u8 = 1;
pub const BUDGET: u8 = 2;
pub const USAGE: u8 = 3;

struct Outcome {
    report: Value,
    table: String,
    code: u8,
}

fn code_of(e: &Error) -> u8 {
    match e {
        Error::Budget(_) => BUDGET,
        Error::Infeasible(_) => FAILED,
        _ => USAGE,
    }
}

pub fn run(cli: Cli) -> u8 {
    if let Some(t) = cli.time_limit {
        if !(t > 0.0 && t.is_finite()) {
            eprintln!("error: --time-limit must be a positive number of seconds");
            return USAGE;
        }
    }
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be at least 1");
            return USAGE;
        }
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w).build_global();
    }
    let budget = Budget {
        deadline: cli.time_limit.map(|t| Instant::now() + Duration::from_secs_f64(t)),
        max_nodes: cli.max_nodes,
    };
    let solve = SolveOptions { budget };
    let outcome = match dispatch(&cli.command, &solve, cli.json) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            let code = code_of(&e);
            if code != BUDGET {
                return code;
            }
            Outcome {
                report: json!({ "command": name(&cli.command), "complete": false, "error": e.to_string() }),
                table: format!("incomplete: {e}\n"),
                code,
            }
        }
    };
    let text = serde_json::to_string_pretty(&outcome.report).expect("reports serialize") + "\n";
    if cli.json {
        print!("{text}");
    } else {
        print!("{}", outcome.table);
    }
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: writing {}: {e}", path.display());
            return USAGE;
        }
    }
    outcome.code
}

fn name(c: &Command) -> &'static str {
    match c {
        Command::Avoid { .. } => "avoid",
        Command::Fast2k2 { .. } => "fast2k2",
        Command::Census { .. } => "census",
        Command::Ex(_) => "ex",
        Command::H(_) => "h",
        Command::S(_) => "s",
        Command::Q(_) => "q",
        Command::P(_) => "p",
        Command::Construct { .. } => "construct",
        Command::Verify { .. } => "verify",
        Command::Acceptance { .. } => "acceptance",
    }
}

fn dispatch(c: &Command, solve: &SolveOptions, json: bool) -> edgemap::Result<Outcome> {
    match c {
        Command::Avoid { host, class } => avoid(host, class, solve),
        Command::Fast2k2 { host } => fast2k2(host),
        Command::Census {
            class,
            max_order,
            max_edges,
            checkpoint,
        } => {
            let (patterns, d, mode) = parse_class(class)?;
            let mut bounds = CensusBounds::new(patterns, *max_order);
            bounds.d = d;
            bounds.mode = mode;
            if let Some(m) = max_edges {
                bounds = bounds.with_max_edges(*m);
            }
            let opts = CensusOptions {
                solve: *solve,
                checkpoint: checkpoint.clone(),
            };
            census(&bounds, &opts)
        }
        Command::Ex(a) => extremal(ExtremalFunction::Ex, a, solve),
        Command::H(a) => extremal(ExtremalFunction::H, a, solve),
        Command::S(a) => extremal(ExtremalFunction::S, a, solve),
        Command::Q(a) => extremal(ExtremalFunction::Q, a, solve),
        Command::P(a) => extremal(ExtremalFunction::P, a, solve),
        Command::Construct { spec, verify } => construct(spec, *verify),
        Command::Verify { certificate } => verify(certificate),
        Command::Acceptance { only } => acceptance(only, json),
    }
}

fn parse_class(c: &ClassArgs) -> edgemap::Result<(PatternFamily, Distance, Mode)> {
    Ok((c.pattern.parse()?, Distance::from_value(c.d)?, c.mode.parse()?))
}

fn read_source(src: &str) -> edgemap::Result<String> {
    if src == "-" {
        let mut s = String::new();
        io::stdin().lock().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(src)?)
    }
}

fn hosts(h: &HostArgs) -> edgemap::Result<Vec<Graph>> {
    match (&h.host, &h.named) {
        (_, Some(spec)) => Ok(vec![named(spec)?]),
        (Some(src), None) if src == "-" => io::stdin()
            .lock()
            .lines()
            .map(|l| l.map_err(Error::from))
            .filter(|l| l.as_ref().map_or(true, |s| !s.trim().is_empty()))
            .map(|l| Graph::from_graph6(l?.trim()))
            .collect(),
        (Some(src), None) => match src.strip_prefix('@') {
            Some(path) => read_source(path)?
                .lines()
                .filter(|l| !l.trim().is_empty())
                .map(|l| Graph::from_graph6(l.trim()))
                .collect(),
            None => Ok(vec![Graph::from_graph6(src.trim())?]),
        },
        (None, None) => Err(Error::Parameter("give --host or --named".into())),
    }
}

fn family_json(p: &PatternFamily) -> Value {
    json!({ "labels": p.labels(), "graph6": p.graph6_list() })
}

fn arrows(g: &Graph, image: &[usize]) -> Value {
    image
        .iter()
        .enumerate()
        .map(|(e, &x)| {
            let (a, b) = g.edge(e);
            let (c, d) = g.edge(x);
            json!([[a, b], [c, d]])
        })
        .collect()
}

fn verdict_json(g: &Graph, p: &PatternFamily, d: Distance, mode: Mode, v: &AvoidanceVerdict) -> Value {
    let mut r = json!({
        "host": g.to_graph6(),
        "order": g.order(),
        "edges": g.size(),
        "verdict": v.name(),
        "nodes": v.nodes(),
    });
    match v {
        AvoidanceVerdict::Avoider(f) => r["mapping"] = arrows(g, f.image()),
        AvoidanceVerdict::Unavoidable(proof) => r["shortcut"] = json!(proof.shortcut),
        AvoidanceVerdict::NoLegalMapping { edge } => r["edge_without_image"] = json!(g.edge(*edge)),
    }
    if let Some(c) = Certificate::from_verdict(g, p, d, mode, v) {
        r["certificate"] = serde_json::to_value(&c).expect("certificates serialize");
    }
    r
}

fn verdict_table(rows: &[Value]) -> String {
    let mut t = format!("{:<24} {:>5} {:>5}  {:<16} {:>8}\n", "host", "order", "edges", "verdict", "nodes");
    for r in rows {
        let _ = writeln!(
            t,
            "{:<24} {:>5} {:>5}  {:<16} {:>8}",
            r["host"].as_str().unwrap_or_default(),
            r["order"].as_u64().unwrap_or_default(),
            r["edges"].as_u64().unwrap_or_default(),
            r["verdict"].as_str().unwrap_or_default(),
            r["nodes"].as_u64().unwrap_or_default()
        );
    }
    t
}

fn avoid(h: &HostArgs, class: &ClassArgs, solve: &SolveOptions) -> edgemap::Result<Outcome> {
    let (p, d, mode) = parse_class(class)?;
    let mut rows = Vec::new();
    let mut error = None;
    for g in hosts(h)? {
        match exists_avoider_with(&g, &p, d, mode, solve) {
            Ok(v) => rows.push(verdict_json(&g, &p, d, mode, &v)),
            Err(e @ Error::Budget(_)) => {
                error = Some(e);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let mut table = verdict_table(&rows);
    let mut report = json!({
        "command": "avoid",
        "patterns": family_json(&p),
        "d": d,
        "mode": mode,
        "results": rows,
        "complete": error.is_none(),
    });
    let code = match error {
        Some(e) => {
            report["error"] = json!(e.to_string());
            let _ = writeln!(table, "incomplete: {e}");
            BUDGET
        }
        None => OK,
    };
    Ok(Outcome { report, table, code })
}

fn fast2k2(h: &HostArgs) -> edgemap::Result<Outcome> {
    let p: PatternFamily = "2K2".parse()?;
    let rows: Vec<Value> = hosts(h)?
        .iter()
        .map(|g| verdict_json(g, &p, Distance::D1, Mode::Free, &fast_2k2_decide(g)))
        .collect();
    Ok(Outcome {
        table: verdict_table(&rows),
        report: json!({ "command": "fast2k2", "results": rows, "complete": true }),
        code: OK,
    })
}

fn census(bounds: &CensusBounds, opts: &CensusOptions) -> edgemap::Result<Outcome> {
    let r = census_minimal(bounds, opts)?;
    let mut table = format!(
        "{} minimal unavoidable graph(s), status {:?}, levels done {}\n",
        r.members.len(),
        r.status,
        r.levels_done
    );
    for m in &r.members {
        let _ = writeln!(table, "  {:<12} order {} edges {}", m.graph6, m.order, m.edges);
    }
    let report = json!({
        "command": "census",
        "patterns": family_json(&bounds.patterns),
        "max_order": bounds.max_order,
        "max_edges": bounds.max_edges,
        "d": bounds.d,
        "mode": bounds.mode,
        "status": r.status,
        "complete": r.status != CensusStatus::Interrupted,
        "exhaustive": r.complete(),
        "levels_done": r.levels_done,
        "frontier_sizes": r.frontier_sizes,
        "members": r.members,
    });
    let code = if r.status == CensusStatus::Interrupted { BUDGET } else { OK };
    Ok(Outcome { report, table, code })
}

fn extremal(function: ExtremalFunction, a: &ExtremalArgs, solve: &SolveOptions) -> edgemap::Result<Outcome> {
    let p: PatternFamily = a.pattern.parse()?;
    let ctx = ExtremalContext::new().with_solve_options(*solve);
    let r: ExtremalResult = match function {
        ExtremalFunction::Ex => ctx.compute_ex(a.n, &p)?,
        ExtremalFunction::H => ctx.compute_h(a.n, &p)?,
        ExtremalFunction::S => ctx.compute_s(a.n, &p)?,
        ExtremalFunction::Q => ctx.compute_q(a.n, &p)?,
        ExtremalFunction::P => ctx.compute_p(a.n, &p)?,
    };
    let w = r.witness.graph();
    let cert = Certificate::from_extremal(&r);
    let mapping = match &r.witness {
        edgemap::extremal::Witness::Host(_) => Value::Null,
        edgemap::extremal::Witness::Mapped(f) => arrows(&w, f.image()),
        edgemap::extremal::Witness::Partial(q) => arrows(&w, q.image()),
    };
    let table = format!(
        "{function}({}, {}) = {}\nwitness {} ({} vertices, {} edges), {} hosts checked, {} search nodes\n",
        r.n,
        p,
        r.value,
        w.to_graph6(),
        w.order(),
        w.size(),
        r.stats.hosts_checked,
        r.stats.nodes
    );
    let report = json!({
        "command": function.to_string(),
        "n": r.n,
        "patterns": family_json(&p),
        "value": r.value,
        "witness": { "graph6": w.to_graph6(), "mapping": mapping },
        "stats": r.stats,
        "certificate": cert,
        "complete": true,
    });
    Ok(Outcome { report, table, code: OK })
}

fn construct(spec: &str, verify: bool) -> edgemap::Result<Outcome> {
    let spec: ConstructionSpec = spec.parse()?;
    let c = build_construction(&spec)?;
    let claim = match c.claim {
        Claim::Avoider => "avoider",
        Claim::UnavoidableByCount => "unavoidable_by_count",
        Claim::Unavoidable => "unavoidable",
    };
    let mut report = json!({
        "command": "construct",
        "spec": spec.to_string(),
        "host": c.host.to_graph6(),
        "order": c.host.order(),
        "edges": c.host.size(),
        "patterns": family_json(&c.patterns),
        "mode": c.mode,
        "d": c.d,
        "claim": claim,
        "mapping": c.mapping.as_ref().map(|f| arrows(&c.host, f.image())),
        "certificate": Certificate::from_construction(&c)?,
        "complete": true,
    });
    let mut table = format!(
        "{spec}: host {} ({} vertices, {} edges), claim {claim}\n",
        c.host.to_graph6(),
        c.host.order(),
        c.host.size()
    );
    let mut code = OK;
    if verify {
        let ok = c.verify()?;
        report["verified"] = json!(ok);
        let _ = writeln!(table, "verified: {ok}");
        if !ok {
            code = FAILED;
        }
    }
    Ok(Outcome { report, table, code })
}

fn verify(src: &str) -> edgemap::Result<Outcome> {
    // a whole report is accepted too; its certificate is checked
    let mut v: Value = serde_json::from_str(&read_source(src)?)?;
    if let Some(inner) = v.get_mut("certificate") {
        v = inner.take();
    }
    let cert: Certificate = serde_json::from_value(v)?;
    let ok = verify_certificate(&cert)?;
    Ok(Outcome {
        report: json!({ "command": "verify", "kind": cert.kind(), "verified": ok, "complete": true }),
        table: format!("{} certificate: {}\n", cert.kind(), if ok { "verified" } else { "REJECTED" }),
        code: if ok { OK } else { FAILED },
    })
}

fn acceptance(only: &[usize], json: bool) -> edgemap::Result<Outcome> {
    let ids: Vec<usize> = if only.is_empty() { (1..=CRITERIA).collect() } else { only.to_vec() };
    if let Some(bad) = ids.iter().find(|&&i| i == 0 || i > CRITERIA) {
        return Err(Error::Parameter(format!("criteria are numbered 1..={CRITERIA}, got {bad}")));
    }
    let mut outcomes = Vec::new();
    for id in ids {
        let o = run_criterion(id);
        if !json {
            // stream lines as criteria finish
            println!("{o}");
        }
        outcomes.push(o);
    }
    let failed: Vec<usize> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    let table = if failed.is_empty() {
        format!("all {} criteria pass\n", outcomes.len())
    } else {
        format!("failing criteria: {failed:?}\n")
    };
    Ok(Outcome {
        report: json!({ "command": "acceptance", "criteria": outcomes, "failed": failed, "complete": true }),
        table,
        code: if failed.is_empty() { OK } else { FAILED },
    })
}
