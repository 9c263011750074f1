//! Edge mappings and the distance/mode vocabulary shared by every engine.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::graph::Graph;

/// Upper bound on how many endpoints `f(e)` may share with `e`.
///
/// `D1` is exactly `f(e) != e`, since two distinct edges share at most one
/// vertex. `D0` asks for `f(e)` vertex-disjoint from `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Distance {
    D0,
    D1,
}

impl Distance {
    pub fn value(self) -> u8 {
        match self {
            Distance::D0 => 0,
            Distance::D1 => 1,
        }
    }

    pub fn from_value(d: u8) -> Result<Distance> {
        match d {
            0 => Ok(Distance::D0),
            1 => Ok(Distance::D1),
            _ => param(format!("distance class must be 0 or 1, got {d}")),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.value())
    }
}

impl<'de> Deserialize<'de> for Distance {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = u8::deserialize(d)?;
        Distance::from_value(v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Which copies count as surviving a mapping.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// A copy survives when no edge of it maps into its own edge set.
    Free,
    /// A copy survives when every edge maps to an edge missing all its vertices.
    Exclusive,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "free" => Ok(Mode::Free),
            "exclusive" => Ok(Mode::Exclusive),
            _ => Err(Error::Parse(format!("mode must be free or exclusive, got {s:?}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Free => "free",
            Mode::Exclusive => "exclusive",
        })
    }
}

/// Whether `f(e) = x` is allowed under distance class `d`.
#[inline]
pub fn is_legal(host: &Graph, e: usize, x: usize, d: Distance) -> bool {
    match d {
        Distance::D1 => e != x,
        Distance::D0 => host.edges_disjoint(e, x),
    }
}

pub fn legal_images(host: &Graph, e: usize, d: Distance) -> impl Iterator<Item = usize> + '_ {
    (0..host.size()).filter(move |&x| is_legal(host, e, x, d))
}

/// True when the host admits at least one mapping of class `d`.
pub fn has_legal_mapping(host: &Graph, d: Distance) -> bool {
    (0..host.size()).all(|e| legal_images(host, e, d).next().is_some())
}

/// A total map from a host's edges to its edges, legal for its distance class.
#[derive(Clone, PartialEq, Eq)]
pub struct EdgeMapping {
    host: Graph,
    image: Vec<usize>,
    d: Distance,
}

impl EdgeMapping {
    pub fn new(host: Graph, image: Vec<usize>, d: Distance) -> Result<EdgeMapping> {
        if image.len() != host.size() {
            return param(format!(
                "mapping has {} images for {} edges",
                image.len(),
                host.size()
            ));
        }
        for (e, &x) in image.iter().enumerate() {
            if x >= host.size() {
                return param(format!("image {x} of edge {e} is not an edge index"));
            }
            if !is_legal(&host, e, x, d) {
                return param(format!(
                    "f({e}) = {x} violates distance class {d}: {:?} -> {:?}",
                    host.edge(e),
                    host.edge(x)
                ));
            }
        }
        Ok(EdgeMapping { host, image, d })
    }

    /// Builds from `(e, f(e))` pairs; unlisted edges get the smallest legal image.
    pub fn from_pairs(host: Graph, pairs: &[(usize, usize)], d: Distance) -> Result<EdgeMapping> {
        let mut partial = vec![None; host.size()];
        for &(e, x) in pairs {
            if e >= host.size() {
                return param(format!("edge index {e} out of range"));
            }
            partial[e] = Some(x);
        }
        complete_mapping(host, &partial, d)
    }

    #[inline]
    pub fn host(&self) -> &Graph {
        &self.host
    }

    #[inline]
    pub fn image(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, e: usize) -> usize {
        self.image[e]
    }

    #[inline]
    pub fn d(&self) -> Distance {
        self.d
    }

    pub fn pairs(&self) -> Vec<[usize; 2]> {
        self.image.iter().enumerate().map(|(e, &x)| [e, x]).collect()
    }

    /// The same mapping viewed under a stricter or looser class, if still legal.
    pub fn with_distance(&self, d: Distance) -> Result<EdgeMapping> {
        EdgeMapping::new(self.host.clone(), self.image.clone(), d)
    }
}

impl fmt::Debug for EdgeMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeMapping(d={}, ", self.d)?;
        f.debug_map()
            .entries(
                self.image
                    .iter()
                    .enumerate()
                    .map(|(e, &x)| (self.host.edge(e), self.host.edge(x))),
            )
            .finish()?;
        write!(f, ")")
    }
}

/// Fills unassigned edges with their smallest legal image.
pub fn complete_mapping(host: Graph, partial: &[Option<usize>], d: Distance) -> Result<EdgeMapping> {
    let mut image = Vec::with_capacity(host.size());
    for (e, p) in partial.iter().enumerate() {
        match p {
            Some(x) => image.push(*x),
            None => match legal_images(&host, e, d).next() {
                Some(x) => image.push(x),
                None => {
                    return Err(Error::Domain(format!(
                        "edge {:?} has no legal image under distance class {d}",
                        host.edge(e)
                    )))
                }
            },
        }
    }
    EdgeMapping::new(host, image, d)
}

/// A map on the edges of `K_n` in which only some edges respect the distance
/// class; the others are unconstrained. Fixed points are allowed only among
/// the unconstrained edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMapping {
    n: usize,
    image: Vec<usize>,
    d: Distance,
    free_count: usize,
}

impl QMapping {
    pub fn new(n: usize, image: Vec<usize>, d: Distance) -> Result<QMapping> {
        let kn = Graph::complete(n);
        if image.len() != kn.size() {
            return param("q-mapping must cover every edge of K_n");
        }
        if image.iter().any(|&x| x >= kn.size()) {
            return param("q-mapping image out of range");
        }
        let free_count = (0..kn.size())
            .filter(|&e| is_legal(&kn, e, image[e], d))
            .count();
        Ok(QMapping {
            n,
            image,
            d,
            free_count,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn d(&self) -> Distance {
        self.d
    }

    /// Number of edges whose image respects the distance class.
    pub fn free_count(&self) -> usize {
        self.free_count
    }

    pub fn host(&self) -> Graph {
        Graph::complete(self.n)
    }

    pub fn pairs(&self) -> Vec<[usize; 2]> {
        self.image.iter().enumerate().map(|(e, &x)| [e, x]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_opposite_edges_is_distance_zero() {
        let k4 = Graph::complete(4);
        // edges: 01 02 03 12 13 23
        let f = EdgeMapping::new(k4.clone(), vec![5, 4, 3, 2, 1, 0], Distance::D0).unwrap();
        assert_eq!(f.apply(0), 5);
        assert!(EdgeMapping::new(k4, vec![1, 0, 3, 2, 5, 4], Distance::D0).is_err());
    }

    #[test]
    fn d1_forbids_only_fixed_points() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(EdgeMapping::new(p3.clone(), vec![1, 0], Distance::D1).is_ok());
        assert!(EdgeMapping::new(p3.clone(), vec![0, 0], Distance::D1).is_err());
        assert!(!has_legal_mapping(&p3, Distance::D0));
        assert!(!has_legal_mapping(&Graph::complete(2), Distance::D1));
    }

    #[test]
    fn completion_uses_smallest_legal_image() {
        let k4 = Graph::complete(4);
        let f = complete_mapping(k4, &[None, Some(0), None, None, None, None], Distance::D1).unwrap();
        assert_eq!(f.image(), &[1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn q_mapping_counts_constrained_edges() {
        let q = QMapping::new(3, vec![0, 0, 1], Distance::D1).unwrap();
        assert_eq!(q.free_count(), 2);
        let q = QMapping::new(4, vec![5, 4, 3, 2, 1, 0], Distance::D0).unwrap();
        assert_eq!(q.free_count(), 6);
    }

    #[test]
    fn distance_serializes_as_number() {
        assert_eq!(serde_json::to_string(&Distance::D0).unwrap(), "0");
        let d: Distance = serde_json::from_str("1").unwrap();
        assert_eq!(d, Distance::D1);
        assert!(serde_json::from_str::<Distance>("2").is_err());
    }
}
