//! graph6 encoding: order header followed by the upper triangle of the
//! adjacency matrix in column order, six bits per printable byte.

use crate::error::{Error, Result};
use crate::graph::Graph;

const BIAS: u8 = 63;
const MAX_ORDER: usize = 258_047;

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::with_capacity(4 + n * n / 12);
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(126);
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|x| x as u8 + BIAS));
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            nbits += 1;
            if nbits == 6 {
                out.push(acc + BIAS);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

pub fn decode(text: &str) -> Result<Graph> {
    let s = text.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 string".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("byte {b:#x} outside graph6 range")));
    }
    let (n, body) = if bytes[0] != 126 {
        ((bytes[0] - BIAS) as usize, &bytes[1..])
    } else {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(Error::Parse("unsupported graph6 order header".into()));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
        (n, &bytes[4..])
    };
    if n > MAX_ORDER {
        return Err(Error::Parse("graph6 order too large".into()));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    if body.len() != need {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, order {n} needs {need}",
            body.len()
        )));
    }
    let bit = |k: usize| (body[k / 6] - BIAS) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if (k..need * 6).any(bit) {
        return Err(Error::Parse("graph6 padding bits are not zero".into()));
    }
    Graph::from_edges(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_vectors() {
        assert_eq!(encode(&Graph::complete(4)), "C~");
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
        assert_eq!(decode("DQc").unwrap(), g);
        assert_eq!(encode(&Graph::empty(0)), "?");
        assert_eq!(decode("?").unwrap().order(), 0);
    }

    #[test]
    fn long_header() {
        let g = Graph::from_edges(70, [(0, 69), (3, 4)]).unwrap();
        let s = encode(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn malformed_inputs() {
        assert!(decode("").is_err());
        assert!(decode("C").is_err());
        assert!(decode("C~~").is_err());
        assert!(decode("C\x7f").is_err());
        // K2 uses one bit; the remaining five must be zero
        assert!(decode("A_").is_ok());
        assert!(decode("A`").is_err());
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..20, bits in proptest::collection::vec(any::<bool>(), 190)) {
            let mut edges = Vec::new();
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    if bits[k] { edges.push((i, j)); }
                    k += 1;
                }
            }
            let g = Graph::from_edges(n, edges).unwrap();
            prop_assert_eq!(decode(&encode(&g)).unwrap(), g);
        }
    }
}
