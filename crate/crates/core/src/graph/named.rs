//! Catalog of named graphs with fixed labelings, addressable by spec strings.
//!
//! Spec syntax: `kind:arg,arg,...` (for example `Ckplus:5`, `D:2,3,0`), short
//! forms such as `K4`, `P6`, `C5`, `E3`, `K2,3`, an optional copy count prefix
//! (`4K2`, `2P3`), and `|` for vertex-disjoint union (`P3|K3`).

use std::fmt;
use std::str::FromStr;

use crate::error::{param, Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NamedGraphSpec {
    Complete(usize),
    Empty(usize),
    /// Path on `n` vertices `0-1-...-(n-1)`.
    Path(usize),
    /// Cycle `0-1-...-(n-1)-0`.
    Cycle(usize),
    /// Parts `0..a` and `a..a+b`.
    CompleteBipartite(usize, usize),
    /// `K_{1,r}` with center 0.
    Star(usize),
    /// Adjacent centers 0 and 1 carrying `a` and `b` leaves.
    DoubleStar(usize, usize),
    /// `t` disjoint edges `(2i, 2i+1)`.
    Matching(usize),
    /// Cycle on `0..k` plus pendant vertex `k` attached to 0.
    CyclePlus(usize),
    /// Centers at distance `k`, two leaves on each; same labeling as `Dlkl(2, k, 0)`.
    SubdividedDoubleStar(usize),
    /// Cycle `0-1-2-3-0` plus vertex 4 adjacent to 0, 1, 2.
    W4Minus,
    /// Cycle `0-1-2-3-0` plus pendants 4 on 0 and 5 on 2.
    C4PlusPlus,
    /// `K6` minus the path `0-1-2`.
    H1,
    /// `K6` minus the edges `01` and `23`.
    H2,
    /// `K_a` on `0..a` joined to an independent set on `a..a+b`.
    Split(usize, usize),
    /// Centers `u = 0`, `v = k`, path `0-1-...-k`; then `l` leaves on `u`, `l` on
    /// `v`, and `l2` leaves on each internal path vertex in order.
    Dlkl(usize, usize, usize),
    /// Vertex `i` adjacent to `i ± s (mod n)` for every step `s`.
    Circulant(usize, Vec<usize>),
    Copies(usize, Box<NamedGraphSpec>),
    Union(Vec<NamedGraphSpec>),
}

impl NamedGraphSpec {
    pub fn build(&self) -> Result<Graph> {
        build_named(self)
    }
}

pub fn build_named(spec: &NamedGraphSpec) -> Result<Graph> {
    use NamedGraphSpec::*;
    let g = match spec {
        Complete(n) => Graph::complete(*n),
        Empty(n) => Graph::empty(*n),
        Path(n) => {
            if *n == 0 {
                return param("P_n needs n >= 1");
            }
            Graph::from_edges(*n, (1..*n).map(|i| (i - 1, i)))?
        }
        Cycle(n) => {
            if *n < 3 {
                return param("C_n needs n >= 3");
            }
            Graph::from_edges(*n, (0..*n).map(|i| (i, (i + 1) % n)))?
        }
        CompleteBipartite(a, b) => {
            Graph::from_edges(a + b, (0..*a).flat_map(|u| (*a..a + b).map(move |v| (u, v))))?
        }
        Star(r) => {
            if *r == 0 {
                return param("K_{1,r} needs r >= 1");
            }
            Graph::from_edges(r + 1, (1..=*r).map(|i| (0, i)))?
        }
        DoubleStar(a, b) => {
            let edges = std::iter::once((0, 1))
                .chain((0..*a).map(|i| (0, 2 + i)))
                .chain((0..*b).map(|i| (1, 2 + a + i)));
            Graph::from_edges(2 + a + b, edges)?
        }
        Matching(t) => Graph::from_edges(2 * t, (0..*t).map(|i| (2 * i, 2 * i + 1)))?,
        CyclePlus(k) => {
            if *k < 3 {
                return param("C_k^+ needs k >= 3");
            }
            Graph::from_edges(k + 1, (0..*k).map(|i| (i, (i + 1) % k)).chain([(0, *k)]))?
        }
        SubdividedDoubleStar(k) => build_named(&Dlkl(2, *k, 0))?,
        W4Minus => Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (1, 4), (2, 4)])?,
        C4PlusPlus => Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (2, 5)])?,
        H1 => without(&Graph::complete(6), &[(0, 1), (1, 2)]),
        H2 => without(&Graph::complete(6), &[(0, 1), (2, 3)]),
        Split(a, b) => Graph::complete(*a).join(&Graph::empty(*b)),
        Dlkl(l, k, l2) => {
            if *k == 0 {
                return param("D_{l,k,l'} needs k >= 1");
            }
            let (l, k, l2) = (*l, *k, *l2);
            let mut edges: Vec<(usize, usize)> = (1..=k).map(|i| (i - 1, i)).collect();
            let mut next = k + 1;
            for center in [0, k] {
                for _ in 0..l {
                    edges.push((center, next));
                    next += 1;
                }
            }
            for w in 1..k {
                for _ in 0..l2 {
                    edges.push((w, next));
                    next += 1;
                }
            }
            Graph::from_edges(next, edges)?
        }
        Circulant(n, steps) => {
            let n = *n;
            let mut edges = Vec::new();
            for &s in steps {
                if s == 0 || 2 * s > n {
                    return param(format!("circulant step {s} invalid for n = {n}"));
                }
                for i in 0..n {
                    let j = (i + s) % n;
                    let e = (i.min(j), i.max(j));
                    if !edges.contains(&e) {
                        edges.push(e);
                    }
                }
            }
            Graph::from_edges(n, edges)?
        }
        Copies(k, inner) => build_named(inner)?.k_copies(*k),
        Union(parts) => {
            let mut g = Graph::empty(0);
            for p in parts {
                g = g.union(&build_named(p)?);
            }
            g
        }
    };
    Ok(g)
}

fn without(g: &Graph, remove: &[(usize, usize)]) -> Graph {
    let keep: Vec<usize> = (0..g.size())
        .filter(|&i| !remove.contains(&g.edge(i)))
        .collect();
    g.edge_subgraph(&keep)
}

fn nums(args: &str) -> Result<Vec<usize>> {
    args.split(',')
        .map(|a| {
            a.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad number {a:?}")))
        })
        .collect()
}

fn exactly<const N: usize>(kind: &str, args: &str) -> Result<[usize; N]> {
    let v = nums(args)?;
    v.try_into()
        .map_err(|_| Error::Parse(format!("{kind} takes {N} argument(s)")))
}

fn parse_atom(s: &str) -> Result<NamedGraphSpec> {
    use NamedGraphSpec::*;
    let s = s.trim();
    if let Some((kind, args)) = s.split_once(':') {
        return Ok(match kind {
            "K" => Complete(exactly::<1>(kind, args)?[0]),
            "E" => Empty(exactly::<1>(kind, args)?[0]),
            "P" => Path(exactly::<1>(kind, args)?[0]),
            "C" => Cycle(exactly::<1>(kind, args)?[0]),
            "Kab" => {
                let [a, b] = exactly(kind, args)?;
                CompleteBipartite(a, b)
            }
            "S" => Star(exactly::<1>(kind, args)?[0]),
            "DS" => {
                let [a, b] = exactly(kind, args)?;
                DoubleStar(a, b)
            }
            "M" => Matching(exactly::<1>(kind, args)?[0]),
            "Ckplus" => CyclePlus(exactly::<1>(kind, args)?[0]),
            "B" => SubdividedDoubleStar(exactly::<1>(kind, args)?[0]),
            "Split" => {
                let [a, b] = exactly(kind, args)?;
                Split(a, b)
            }
            "D" => {
                let [l, k, l2] = exactly(kind, args)?;
                Dlkl(l, k, l2)
            }
            "Circ" => {
                let v = nums(args)?;
                if v.len() < 2 {
                    return Err(Error::Parse("Circ takes n and at least one step".into()));
                }
                Circulant(v[0], v[1..].to_vec())
            }
            _ => return Err(Error::Parse(format!("unknown graph kind {kind:?}"))),
        });
    }
    match s {
        "W4minus" | "W4-" => return Ok(W4Minus),
        "C4pp" | "C4++" => return Ok(C4PlusPlus),
        "H1" => return Ok(H1),
        "H2" => return Ok(H2),
        _ => {}
    }
    let digits = s.bytes().take_while(u8::is_ascii_digit).count();
    if digits > 0 && digits < s.len() {
        let k: usize = s[..digits].parse().map_err(|_| Error::Parse(s.into()))?;
        let inner = parse_atom(&s[digits..])?;
        return Ok(match inner {
            Complete(2) => Matching(k),
            other => Copies(k, Box::new(other)),
        });
    }
    let (head, rest) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
    let bad = || Error::Parse(format!("unrecognized graph spec {s:?}"));
    if rest.is_empty() {
        return Err(bad());
    }
    match head {
        "K" if rest.contains(',') => {
            let [a, b] = exactly("K", rest)?;
            Ok(if a == 1 { Star(b) } else { CompleteBipartite(a, b) })
        }
        "K" => Ok(Complete(nums(rest)?[0])),
        "E" => Ok(Empty(nums(rest)?[0])),
        "P" => Ok(Path(nums(rest)?[0])),
        "C" => Ok(Cycle(nums(rest)?[0])),
        "B" => Ok(SubdividedDoubleStar(nums(rest)?[0])),
        _ => Err(bad()),
    }
}

impl FromStr for NamedGraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split('|').collect();
        if parts.len() == 1 {
            return parse_atom(parts[0]);
        }
        Ok(NamedGraphSpec::Union(
            parts.into_iter().map(parse_atom).collect::<Result<_>>()?,
        ))
    }
}

impl fmt::Display for NamedGraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use NamedGraphSpec::*;
        match self {
            Complete(n) => write!(f, "K{n}"),
            Empty(n) => write!(f, "E{n}"),
            Path(n) => write!(f, "P{n}"),
            Cycle(n) => write!(f, "C{n}"),
            CompleteBipartite(a, b) => write!(f, "K{a},{b}"),
            Star(r) => write!(f, "K1,{r}"),
            DoubleStar(a, b) => write!(f, "DS:{a},{b}"),
            Matching(t) => write!(f, "{t}K2"),
            CyclePlus(k) => write!(f, "Ckplus:{k}"),
            SubdividedDoubleStar(k) => write!(f, "B:{k}"),
            W4Minus => write!(f, "W4minus"),
            C4PlusPlus => write!(f, "C4pp"),
            H1 => write!(f, "H1"),
            H2 => write!(f, "H2"),
            Split(a, b) => write!(f, "Split:{a},{b}"),
            Dlkl(l, k, l2) => write!(f, "D:{l},{k},{l2}"),
            Circulant(n, steps) => {
                write!(f, "Circ:{n}")?;
                steps.iter().try_for_each(|s| write!(f, ",{s}"))
            }
            Copies(k, inner) => write!(f, "{k}{inner}"),
            Union(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("|")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

/// Parses and builds in one step.
pub fn named(spec: &str) -> Result<Graph> {
    spec.parse::<NamedGraphSpec>()?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(spec: &str) -> (usize, usize) {
        let g = named(spec).unwrap();
        (g.order(), g.size())
    }

    #[test]
    fn catalog_counts() {
        assert_eq!(counts("W4minus"), (5, 7));
        assert_eq!(counts("C4pp"), (6, 6));
        assert_eq!(counts("H1"), (6, 13));
        assert_eq!(counts("H2"), (6, 13));
        assert_eq!(counts("B:1"), (6, 5));
        assert_eq!(counts("B:3"), (8, 7));
        assert_eq!(counts("4K2"), (8, 4));
        assert_eq!(counts("P3|K3"), (6, 5));
        assert_eq!(counts("K1,4"), (5, 4));
        assert_eq!(counts("K2,3"), (5, 6));
        assert_eq!(counts("Split:2,3"), (5, 7));
        assert_eq!(counts("D:1,3,2"), (10, 9));
        assert_eq!(counts("Circ:7,1,2"), (7, 14));
        assert_eq!(counts("2P3"), (6, 4));
    }

    #[test]
    fn triangle_counts_of_h_pieces() {
        assert_eq!(named("H1").unwrap().triangle_count(), 13);
        assert_eq!(named("H2").unwrap().triangle_count(), 12);
    }

    #[test]
    fn w4_minus_contains_c4_and_c4pp_has_no_chord() {
        let w = named("W4minus").unwrap();
        for (u, v) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
            assert!(w.has_edge(u, v));
        }
        assert_eq!(w.degree(4), 3);
        let c = named("C4pp").unwrap();
        assert!(!c.has_edge(0, 2));
        assert_eq!((c.degree(4), c.degree(5)), (1, 1));
    }

    #[test]
    fn b1_is_double_star_d22() {
        let b1 = named("B:1").unwrap();
        assert!(b1.is_isomorphic(&named("DS:2,2").unwrap()).unwrap());
    }

    #[test]
    fn double_star_delta_star() {
        for k in 1..5 {
            let g = NamedGraphSpec::DoubleStar(k, k).build().unwrap();
            assert_eq!(g.degree_stats().delta_star().unwrap(), k + 1);
        }
    }

    #[test]
    fn cycle_plus_counts() {
        for k in 3..=10 {
            assert_eq!(counts(&format!("Ckplus:{k}")), (k + 1, k + 1));
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(named("C:2").is_err());
        assert!(named("Ckplus:2").is_err());
        assert!(named("D:1,0,1").is_err());
        assert!(named("Q7").is_err());
        assert!(named("Circ:6,4").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["K4", "2K2", "K1,3", "D:2,3,0", "P3|K3", "Circ:8,1,3", "W4minus", "3P3"] {
            let spec: NamedGraphSpec = s.parse().unwrap();
            let again: NamedGraphSpec = spec.to_string().parse().unwrap();
            assert_eq!(spec, again, "{s}");
        }
    }
}
