//! JSON certificates that are re-checked from scratch, without the search
//! that produced them.
//!
//! Graphs travel as graph6 and mappings as edge-to-edge vertex pairs, so a
//! certificate does not depend on internal edge numbering.

use serde::{Deserialize, Serialize};

use crate::constructions::{verify_construction, Claim, Construction};
use crate::error::{param, Error, Result};
use crate::extremal::{ExtremalFunction, ExtremalResult, Witness};
use crate::graph::Graph;
use crate::mapping::{Distance, EdgeMapping, Mode, QMapping};
use crate::patterns::PatternFamily;
use crate::solver::{exists_avoider, q_survivors, AvoidanceVerdict};

type Edge = [usize; 2];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternEntry {
    pub label: String,
    pub graph6: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// A mapping of `host` leaving no surviving copy.
    Avoider {
        host: String,
        patterns: Vec<PatternEntry>,
        d: Distance,
        mode: Mode,
        mapping: Vec<(Edge, Edge)>,
    },
    /// Checked by rerunning the exhaustive search.
    Unavoidable {
        host: String,
        patterns: Vec<PatternEntry>,
        d: Distance,
        mode: Mode,
    },
    /// Checked by counting copies against edges able to kill them.
    UnavoidableByCount { host: String, patterns: Vec<PatternEntry> },
    /// A host with no copy of any member.
    PatternFree { host: String, patterns: Vec<PatternEntry> },
    /// A map on `E(K_n)` with at least `respecting` edges in class `d`.
    Partial {
        n: usize,
        patterns: Vec<PatternEntry>,
        d: Distance,
        mode: Mode,
        respecting: usize,
        mapping: Vec<(Edge, Edge)>,
    },
    /// A lower-bound witness for an extremal value on `n` vertices.
    Extremal {
        function: ExtremalFunction,
        n: usize,
        value: usize,
        witness: Box<Certificate>,
    },
}

fn entries(p: &PatternFamily) -> Vec<PatternEntry> {
    p.labels()
        .iter()
        .zip(p.members())
        .map(|(l, g)| PatternEntry {
            label: l.clone(),
            graph6: g.to_graph6(),
        })
        .collect()
}

fn family(entries: &[PatternEntry]) -> Result<PatternFamily> {
    PatternFamily::new(
        entries
            .iter()
            .map(|e| Ok((e.label.clone(), Graph::from_graph6(&e.graph6)?)))
            .collect::<Result<_>>()?,
    )
}

fn arrows(host: &Graph, image: &[usize]) -> Vec<(Edge, Edge)> {
    image
        .iter()
        .enumerate()
        .map(|(e, &x)| {
            let (a, b) = host.edge(e);
            let (c, d) = host.edge(x);
            ([a, b], [c, d])
        })
        .collect()
}

fn image_of(host: &Graph, mapping: &[(Edge, Edge)]) -> Result<Vec<usize>> {
    let idx = |[a, b]: Edge| {
        host.edge_index(a, b)
            .ok_or_else(|| Error::Parse(format!("({a},{b}) is not an edge of the host")))
    };
    let mut image = vec![None; host.size()];
    for &(e, x) in mapping {
        let e = idx(e)?;
        if image[e].replace(idx(x)?).is_some() {
            return param(format!("edge {:?} mapped twice", host.edge(e)));
        }
    }
    image
        .into_iter()
        .enumerate()
        .map(|(e, x)| x.ok_or_else(|| Error::Parse(format!("edge {:?} has no image", host.edge(e)))))
        .collect()
}

impl Certificate {
    pub fn avoider(f: &EdgeMapping, patterns: &PatternFamily, mode: Mode) -> Certificate {
        Certificate::Avoider {
            host: f.host().to_graph6(),
            patterns: entries(patterns),
            d: f.d(),
            mode,
            mapping: arrows(f.host(), f.image()),
        }
    }

    /// `None` when the host has no legal mapping at all.
    pub fn from_verdict(
        host: &Graph,
        patterns: &PatternFamily,
        d: Distance,
        mode: Mode,
        v: &AvoidanceVerdict,
    ) -> Option<Certificate> {
        match v {
            AvoidanceVerdict::Avoider(f) => Some(Certificate::avoider(f, patterns, mode)),
            AvoidanceVerdict::Unavoidable(_) => Some(Certificate::Unavoidable {
                host: host.to_graph6(),
                patterns: entries(patterns),
                d,
                mode,
            }),
            AvoidanceVerdict::NoLegalMapping { .. } => None,
        }
    }

    pub fn from_extremal(r: &ExtremalResult) -> Certificate {
        let (mode, d) = match r.function {
            ExtremalFunction::S | ExtremalFunction::P => (Mode::Exclusive, Distance::D0),
            _ => (Mode::Free, Distance::D1),
        };
        let witness = match &r.witness {
            Witness::Host(g) => Certificate::PatternFree {
                host: g.to_graph6(),
                patterns: entries(&r.patterns),
            },
            Witness::Mapped(f) => Certificate::avoider(f, &r.patterns, mode),
            Witness::Partial(q) => Certificate::Partial {
                n: q.n(),
                patterns: entries(&r.patterns),
                d,
                mode,
                respecting: q.free_count(),
                mapping: arrows(&q.host(), q.image()),
            },
        };
        Certificate::Extremal {
            function: r.function,
            n: r.n,
            value: r.value,
            witness: Box::new(witness),
        }
    }

    pub fn from_construction(c: &Construction) -> Result<Certificate> {
        let patterns = entries(&c.patterns);
        let host = c.host.to_graph6();
        Ok(match (&c.claim, &c.mapping) {
            (Claim::Avoider, Some(f)) => Certificate::avoider(f, &c.patterns, c.mode),
            (Claim::Avoider, None) => return param("avoider construction without a mapping"),
            (Claim::UnavoidableByCount, _) => Certificate::UnavoidableByCount { host, patterns },
            (Claim::Unavoidable, _) => Certificate::Unavoidable {
                host,
                patterns,
                d: c.d,
                mode: c.mode,
            },
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Avoider { .. } => "avoider",
            Certificate::Unavoidable { .. } => "unavoidable",
            Certificate::UnavoidableByCount { .. } => "unavoidable_by_count",
            Certificate::PatternFree { .. } => "pattern_free",
            Certificate::Partial { .. } => "partial",
            Certificate::Extremal { .. } => "extremal",
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> Result<Certificate> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Re-checks a certificate. Malformed input is an error; a well-formed
/// certificate whose claim does not hold gives `Ok(false)`.
pub fn verify_certificate(c: &Certificate) -> Result<bool> {
    match c {
        Certificate::Avoider {
            host,
            patterns,
            d,
            mode,
            mapping,
        } => {
            let g = Graph::from_graph6(host)?;
            let image = image_of(&g, mapping)?;
            let Ok(f) = EdgeMapping::new(g.clone(), image, *d) else {
                return Ok(false);
            };
            Ok(verify_construction(&g, &f, &family(patterns)?, *mode))
        }
        Certificate::Unavoidable { host, patterns, d, mode } => {
            let g = Graph::from_graph6(host)?;
            Ok(exists_avoider(&g, &family(patterns)?, *d, *mode)?.is_unavoidable())
        }
        Certificate::UnavoidableByCount { host, patterns } => {
            let g = Graph::from_graph6(host)?;
            let fam = family(patterns)?;
            Ok(crate::solver::CountingPattern::detect(&fam)
                .and_then(|k| crate::solver::counting_shortcut(&g, k))
                .is_some())
        }
        Certificate::PatternFree { host, patterns } => {
            Ok(family(patterns)?.is_free_of(&Graph::from_graph6(host)?))
        }
        Certificate::Partial {
            n,
            patterns,
            d,
            mode,
            respecting,
            mapping,
        } => {
            let image = image_of(&Graph::complete(*n), mapping)?;
            let q = QMapping::new(*n, image, *d)?;
            Ok(q.free_count() >= *respecting && q_survivors(&q, &family(patterns)?, *mode).is_empty())
        }
        Certificate::Extremal { n, value, witness, .. } => {
            let size_ok = match witness.as_ref() {
                Certificate::Avoider { host, .. } | Certificate::PatternFree { host, .. } => {
                    let g = Graph::from_graph6(host)?;
                    g.order() == *n && g.size() == *value
                }
                Certificate::Partial { n: m, respecting, .. } => m == n && respecting >= value,
                _ => return param("extremal witness must be a host or a mapping"),
            };
            Ok(size_ok && verify_certificate(witness)?)
        }
    }
}
