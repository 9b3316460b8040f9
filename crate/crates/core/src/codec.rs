//! Text codecs: graph6 (read/write), sparse6 (read/write) and a plain
//! edge-list format (`n` on the first line, then `u v` per line, 0-based).

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("empty input")]
    Empty,
    #[error("malformed length header")]
    BadHeader,
    #[error("byte {0:#x} outside the printable range 63..=126")]
    BadByte(u8),
    #[error("expected {expected} data bytes, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("nonzero padding bits")]
    NonzeroPadding,
    #[error("sparse6 input describes a loop or multi-edge")]
    NotSimple,
    #[error("edge list: {0}")]
    EdgeList(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn encode_n(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Returns `(n, rest)`.
fn decode_n(bytes: &[u8]) -> Result<(usize, &[u8]), CodecError> {
    let first = *bytes.first().ok_or(CodecError::Empty)?;
    if first != 126 {
        return Ok(((first - 63) as usize, &bytes[1..]));
    }
    let (width, start) = if bytes.get(1) == Some(&126) { (6, 2) } else { (3, 1) };
    let digits = bytes.get(start..start + width).ok_or(CodecError::BadHeader)?;
    let n = digits.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    // the long forms must not be used for orders the shorter form can express
    if (width == 3 && n <= 62) || (width == 6 && n <= 258_047) {
        return Err(CodecError::BadHeader);
    }
    Ok((n, &bytes[start + width..]))
}

fn check_printable(bytes: &[u8]) -> Result<(), CodecError> {
    match bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        Some(&b) => Err(CodecError::BadByte(b)),
        None => Ok(()),
    }
}

fn strip_header<'a>(line: &'a str, header: &str) -> &'a str {
    line.strip_prefix(header).unwrap_or(line)
}

/// graph6 encoding (no header, no newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    encode_n(n, &mut out);
    let total = n * n.saturating_sub(1) / 2;
    let mut bits = vec![0u8; total.div_ceil(6)];
    for &(u, v) in g.edges() {
        // column-major upper triangle: x(0,1) x(0,2) x(1,2) x(0,3) ...
        let (u, v) = (u as usize, v as usize);
        let k = v * (v - 1) / 2 + u;
        bits[k / 6] |= 1 << (5 - k % 6);
    }
    out.extend(bits.into_iter().map(|b| b + 63));
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Decodes one graph6 line; a leading `>>graph6<<` header and surrounding
/// whitespace are accepted.
pub fn from_graph6(line: &str) -> Result<Graph, CodecError> {
    let line = strip_header(line.trim(), ">>graph6<<");
    let bytes = line.as_bytes();
    check_printable(bytes)?;
    let (n, data) = decode_n(bytes)?;
    let total = n * n.saturating_sub(1) / 2;
    let expected = total.div_ceil(6);
    if data.len() != expected {
        return Err(CodecError::WrongLength { expected, found: data.len() });
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1 {
                edges.push((u as u32, v as u32));
            }
            k += 1;
        }
    }
    if total % 6 != 0 {
        let last = data[expected - 1] - 63;
        let pad = 6 - total % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(CodecError::NonzeroPadding);
        }
    }
    edges.sort_unstable();
    Ok(Graph::from_sorted_unchecked(n, edges))
}

fn bits_for(n: usize) -> usize {
    let mut k = 0;
    while (1usize << k) < n {
        k += 1;
    }
    k
}

/// sparse6 encoding, including the leading `:`.
pub fn to_sparse6(g: &Graph) -> String {
    let n = g.order();
    let k = bits_for(n);
    let mut out = vec![b':'];
    encode_n(n, &mut out);
    let mut bits: Vec<bool> = Vec::new();
    let push = |bits: &mut Vec<bool>, b: bool, x: usize| {
        bits.push(b);
        for i in (0..k).rev() {
            bits.push(x >> i & 1 == 1);
        }
    };
    // edges sorted by larger endpoint, then smaller
    let mut edges: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| (v as usize, u as usize)).collect();
    edges.sort_unstable();
    let mut cur = 0usize;
    for &(v, u) in &edges {
        if v == cur {
            push(&mut bits, false, u);
        } else if v == cur + 1 {
            cur = v;
            push(&mut bits, true, u);
        } else {
            cur = v;
            push(&mut bits, true, v);
            push(&mut bits, false, u);
        }
    }
    let pad = (6 - bits.len() % 6) % 6;
    if k < 6 && n >= 2 && n == (1 << k) && pad > k && cur == n - 2 {
        // avoid the padding being read as an edge to vertex n-1
        bits.push(false);
    }
    while bits.len() % 6 != 0 {
        bits.push(true);
    }
    for chunk in bits.chunks(6) {
        let byte = chunk.iter().fold(0u8, |acc, &b| (acc << 1) | b as u8);
        out.push(byte + 63);
    }
    String::from_utf8(out).expect("sparse6 output is ASCII")
}

/// Decodes one sparse6 line (leading `:`; optional `>>sparse6<<` header).
pub fn from_sparse6(line: &str) -> Result<Graph, CodecError> {
    let line = strip_header(line.trim(), ">>sparse6<<");
    let body = line.strip_prefix(':').ok_or(CodecError::BadHeader)?.as_bytes();
    check_printable(body)?;
    let (n, data) = decode_n(body)?;
    let k = bits_for(n);
    let mut bits = data
        .iter()
        .flat_map(|&b| (0..6).rev().map(move |i| (b - 63) >> i & 1 == 1));
    let mut edges = Vec::new();
    let mut v = 0usize;
    'outer: loop {
        let Some(b) = bits.next() else { break };
        let mut x = 0usize;
        for _ in 0..k {
            match bits.next() {
                Some(bit) => x = (x << 1) | bit as usize,
                None => break 'outer,
            }
        }
        if b {
            v += 1;
        }
        if v >= n {
            break;
        }
        if x > v {
            v = x;
        } else {
            if x == v {
                return Err(CodecError::NotSimple);
            }
            edges.push((x, v));
        }
    }
    match Graph::new(n, &edges) {
        Ok(g) => Ok(g),
        Err(GraphError::DuplicateEdge(..)) => Err(CodecError::NotSimple),
        Err(e) => Err(e.into()),
    }
}

/// Decodes a graph6 or sparse6 line, chosen by the leading character.
pub fn decode_line(line: &str) -> Result<Graph, CodecError> {
    let t = line.trim();
    if t.starts_with(':') || t.starts_with(">>sparse6<<") {
        from_sparse6(t)
    } else {
        from_graph6(t)
    }
}

/// Edge-list text: first non-comment line is `n`, then one `u v` pair per line.
/// Lines starting with `#` are ignored.
pub fn from_edge_list(text: &str) -> Result<Graph, CodecError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let n: usize = lines
        .next()
        .ok_or(CodecError::Empty)?
        .parse()
        .map_err(|_| CodecError::EdgeList("first line must be the vertex count".into()))?;
    let mut edges = Vec::new();
    for line in lines {
        let mut it = line.split_whitespace().map(str::parse::<usize>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
            _ => return Err(CodecError::EdgeList(format!("bad edge line {line:?}"))),
        }
    }
    Ok(Graph::new(n, &edges)?)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{}\n", g.order());
    for &(u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_codes() {
        // K2, K3, P3 and the 5-vertex example from the nauty format notes
        assert_eq!(to_graph6(&Graph::complete(2)), "A_");
        assert_eq!(to_graph6(&Graph::complete(3)), "Bw");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        let g = Graph::new(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(from_graph6("DQc").unwrap(), g);
        assert_eq!(from_graph6(">>graph6<<DQc\n").unwrap(), g);
    }

    #[test]
    fn sparse6_reference_example() {
        // n = 7, edges 0-1 0-2 1-2 5-6 (documented example)
        let g = Graph::new(7, &[(0, 1), (0, 2), (1, 2), (5, 6)]).unwrap();
        assert_eq!(from_sparse6(":Fa@x^").unwrap(), g);
        assert_eq!(to_sparse6(&g), ":Fa@x^");
    }

    #[test]
    fn long_orders() {
        let g = Graph::cycle(100);
        let code = to_graph6(&g);
        assert!(code.starts_with('~'));
        assert_eq!(from_graph6(&code).unwrap(), g);
        assert_eq!(from_sparse6(&to_sparse6(&g)).unwrap(), g);
    }

    #[test]
    fn rejects_malformed() {
        assert_eq!(from_graph6(""), Err(CodecError::Empty));
        assert!(matches!(from_graph6("Dx"), Err(CodecError::WrongLength { .. })));
        // K2 with a stray padding bit
        assert_eq!(from_graph6("A`"), Err(CodecError::NonzeroPadding));
        assert!(matches!(from_graph6("A\u{7}"), Err(CodecError::BadByte(_))));
        assert_eq!(from_graph6("~??A"), Err(CodecError::BadHeader));
    }

    #[test]
    fn edge_list_text() {
        let g = from_edge_list("# triangle\n3\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(g, Graph::complete(3));
        assert_eq!(from_edge_list(&to_edge_list(&g)).unwrap(), g);
        assert!(from_edge_list("3\n0 1 2\n").is_err());
        assert!(matches!(from_edge_list("2\n0 0\n"), Err(CodecError::Graph(GraphError::SelfLoop(0)))));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..40).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for v in 1..n {
                    for u in 0..v {
                        if bits[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::new(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn graph6_round_trip(g in arb_graph()) {
            let code = to_graph6(&g);
            prop_assert_eq!(&from_graph6(&code).unwrap(), &g);
            prop_assert_eq!(to_graph6(&from_graph6(&code).unwrap()), code);
        }

        #[test]
        fn sparse6_round_trip(g in arb_graph()) {
            prop_assert_eq!(from_sparse6(&to_sparse6(&g)).unwrap(), g);
        }
    }
}
