//! Versioned gadget library files.
//!
//! Each record is two lines: a header
//!
//! ```text
//! #gadget v1 kind=thm2-proto-d8 roots=12 proto=<graph6> code=<graph6> provenance=<free text>
//! <graph6 of the gadget>
//! ```
//!
//! `proto` is `-` when absent, `code` is the canonical form of the gadget,
//! and `provenance` runs to the end of the line. Blank lines and lines
//! starting with `%` are ignored.

use super::{GadgetError, GadgetKind, GadgetRecord};
use crate::codec::{from_graph6, to_graph6};

pub const LIBRARY_VERSION: &str = "v1";

const Q0_LIB: &str = include_str!("../../data/gadgets/v1/thm1-q0.g6lib");
const PROTO_LIBS: [(usize, &str); 5] = [
    (8, include_str!("../../data/gadgets/v1/thm2-d8.g6lib")),
    (12, include_str!("../../data/gadgets/v1/thm2-d12.g6lib")),
    (16, include_str!("../../data/gadgets/v1/thm2-d16.g6lib")),
    (20, include_str!("../../data/gadgets/v1/thm2-d20.g6lib")),
    (24, include_str!("../../data/gadgets/v1/thm2-d24.g6lib")),
];

/// The pinned order-8 symmetry breaker: the least canonical code among
/// all valid ones.
pub fn default_q0() -> GadgetRecord {
    parse_library(Q0_LIB).expect("pinned library parses").swap_remove(0)
}

/// The pinned apex gadgets for degree `d`, if shipped.
pub fn default_protos(d: usize) -> Option<Vec<GadgetRecord>> {
    let (_, text) = PROTO_LIBS.iter().find(|(dd, _)| *dd == d)?;
    let recs = parse_library(text).expect("pinned library parses");
    (!recs.is_empty()).then_some(recs)
}

pub fn format_library(records: &[GadgetRecord]) -> String {
    let mut out = String::new();
    for r in records {
        let roots: Vec<String> = r.roots.iter().map(usize::to_string).collect();
        let proto = r.proto.as_ref().map_or_else(|| "-".to_string(), to_graph6);
        out.push_str(&format!(
            "#gadget {LIBRARY_VERSION} kind={} roots={} proto={} code={} provenance={}\n{}\n",
            r.kind,
            roots.join(","),
            proto,
            r.code().as_str(),
            r.provenance,
            to_graph6(&r.gadget)
        ));
    }
    out
}

/// Parses library text. Every record is re-verified and its stored code
/// checked against the gadget.
pub fn parse_library(text: &str) -> Result<Vec<GadgetRecord>, GadgetError> {
    let mut out = Vec::new();
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('%'));
    while let Some((i, header)) = lines.next() {
        let line = i + 1;
        let err = |reason: String| GadgetError::Library { line, reason };
        let rest = header
            .strip_prefix("#gadget ")
            .ok_or_else(|| err("expected a #gadget header".into()))?;
        let (version, rest) = rest.split_once(' ').ok_or_else(|| err("truncated header".into()))?;
        if version != LIBRARY_VERSION {
            return Err(err(format!("unsupported version `{version}`")));
        }
        let (fields, provenance) = match rest.split_once(" provenance=") {
            Some((f, p)) => (f, p.to_string()),
            None => (rest, String::new()),
        };
        let mut kind = None;
        let mut roots = None;
        let mut proto = None;
        let mut code = None;
        for kv in fields.split_whitespace() {
            let (k, v) = kv.split_once('=').ok_or_else(|| err(format!("bad field `{kv}`")))?;
            match k {
                "kind" => kind = Some(v.parse::<GadgetKind>().map_err(err)?),
                "roots" => {
                    roots = Some(
                        v.split(',')
                            .map(|x| x.parse::<usize>().map_err(|_| err(format!("bad root `{x}`"))))
                            .collect::<Result<Vec<_>, _>>()?,
                    )
                }
                "proto" if v == "-" => proto = Some(None),
                "proto" => proto = Some(Some(from_graph6(v).map_err(|e| err(e.to_string()))?)),
                "code" => code = Some(v.to_string()),
                _ => return Err(err(format!("unknown field `{k}`"))),
            }
        }
        let (_, body) = lines.next().ok_or_else(|| err("missing graph6 line".into()))?;
        let gadget = from_graph6(body.trim()).map_err(|e| err(e.to_string()))?;
        let rec = GadgetRecord {
            kind: kind.ok_or_else(|| err("missing kind".into()))?,
            gadget,
            roots: roots.ok_or_else(|| err("missing roots".into()))?,
            proto: proto.unwrap_or(None),
            provenance,
        };
        if let Some(c) = code {
            if rec.code().as_str() != c {
                return Err(err("stored code does not match the gadget".into()));
            }
        }
        rec.verify().map_err(|e| err(e.to_string()))?;
        out.push(rec);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pinned_libraries_load() {
        let q0 = default_q0();
        assert_eq!(q0.gadget.order(), 8);
        assert_eq!(q0, super::super::search_q0(8).swap_remove(0));
        let d8 = default_protos(8).unwrap();
        assert_eq!(d8.len(), 3);
        assert_eq!(parse_library(&format_library(&d8)).unwrap(), d8);
    }

    #[test]
    fn tampered_records_are_rejected() {
        let text = format_library(&[default_q0()]);
        let broken = text.replace("roots=", "roots=0,");
        assert!(parse_library(&broken).is_err());
        assert!(parse_library("#gadget v9 kind=thm1-q0\n").is_err());
    }
}
