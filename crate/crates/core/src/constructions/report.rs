//! Pipeline reports and their text form.
//!
//! One `key: value` per line after the header; graphs are graph6, groups
//! are 1-based cycle strings separated by `;`, tags are space separated.
//!
//! ```text
//! # nut pipeline report v1
//! theorem: 1
//! sigma: 0
//! d: -
//! kappa: 10
//! omega: 19
//! order_formula.expected: 190
//! order_formula.actual: 190
//! H: <graph6>
//! G: <graph6>
//! input_group.degree: 10
//! input_group.generators: (1,2)(3,4)
//! gadget.1: kind=thm1-q0 roots=0,3 proto=- g6=<graph6> provenance=...
//! tags: h1 h2 ... t1.1.1 ... g1.0 ... s1.1 ...
//! nut_certificate.is_nut: true
//! nut_certificate.nullity: 1
//! nut_certificate.full: true
//! nut_certificate.failure: -
//! nut_certificate.kernel_vector: 1 -2 1 ...
//! aut_order: 2
//! restriction_equal: true
//! iso_verdict: isomorphic
//! regular_degree: -
//! certified: true
//! ```

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use thiserror::Error;

use super::{assemble_thm1, assemble_thm2, check_group, thm2_omega};
use crate::aut::automorphism_group;
use crate::codec::{from_graph6, to_graph6};
use crate::gadgets::{GadgetKind, GadgetRecord};
use crate::graph::{Graph, VertexTag};
use crate::kernel::{nut_certificate, NutCertificate, NutFailure};
use crate::perm::{format_generators, parse_generators, IsoVerdict, PermGroup};

pub const REPORT_HEADER: &str = "# nut pipeline report v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    /// Quartic input, order-8 gadget, optional subdivision.
    One,
    /// `(d/2)`-regular input, apex gadgets, `d`-regular output.
    Two,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::One => "1",
            Theorem::Two => "2",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("report line {line}: {reason}")]
pub struct ReportError {
    pub line: usize,
    pub reason: String,
}

/// A decorated graph with everything needed to re-check it.
#[derive(Debug, Clone)]
pub struct PipelineReport {
    pub theorem: Theorem,
    pub sigma: usize,
    /// Output degree, for the degree-`d` build only.
    pub d: Option<usize>,
    pub kappa: usize,
    /// Group the output is meant to realise; `Aut(H)` unless replaced.
    pub input_group: PermGroup,
    pub h: Graph,
    pub g: Graph,
    pub gadgets: Vec<GadgetRecord>,
    pub tags: Vec<VertexTag>,
    pub order_expected: usize,
    pub order_actual: usize,
    pub nut_certificate: NutCertificate,
    pub aut_order: BigUint,
    /// `Aut(G)` acts on `V(H)` exactly as `Aut(H)` and has the same order.
    pub restriction_equal: bool,
    pub iso_verdict: IsoVerdict,
    pub regular_degree: Option<usize>,
    pub certified: bool,
}

impl PipelineReport {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn certify(
        theorem: Theorem,
        sigma: usize,
        d: Option<usize>,
        h: Graph,
        g: Graph,
        tags: Vec<VertexTag>,
        gadgets: Vec<GadgetRecord>,
        order_expected: usize,
        input_group: Option<PermGroup>,
    ) -> Self {
        let input_group = input_group.unwrap_or_else(|| automorphism_group(&h));
        let nut = nut_certificate(&g);
        let grp = check_group(&g, &h, &input_group);
        let mut r = PipelineReport {
            theorem,
            sigma,
            d,
            kappa: h.order(),
            order_actual: g.order(),
            regular_degree: g.regular_degree(),
            input_group,
            h,
            g,
            gadgets,
            tags,
            order_expected,
            nut_certificate: nut,
            aut_order: grp.aut_order,
            restriction_equal: grp.restriction_equal,
            iso_verdict: grp.iso_verdict,
            certified: false,
        };
        r.certified = r.verdict();
        r
    }

    /// Every stored verdict taken together.
    fn verdict(&self) -> bool {
        self.nut_certificate.is_nut
            && self.order_expected == self.order_actual
            && self.restriction_equal
            && self.iso_verdict != IsoVerdict::NotIsomorphic
            && (self.theorem == Theorem::One || self.regular_degree == self.d)
    }

    /// Replaces the target group (e.g. one given by generators) and redoes
    /// the group checks.
    pub fn with_input_group(self, group: PermGroup) -> Self {
        PipelineReport::certify(
            self.theorem,
            self.sigma,
            self.d,
            self.h,
            self.g,
            self.tags,
            self.gadgets,
            self.order_expected,
            Some(group),
        )
    }

    /// `|V(G)| / κ`.
    pub fn omega(&self) -> usize {
        self.order_actual / self.kappa.max(1)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(": ");
            out.push_str(&v);
            out.push('\n');
        };
        let opt = |x: Option<usize>| x.map_or_else(|| "-".to_string(), |v| v.to_string());
        kv("theorem", self.theorem.to_string());
        kv("sigma", self.sigma.to_string());
        kv("d", opt(self.d));
        kv("kappa", self.kappa.to_string());
        kv("omega", self.omega().to_string());
        kv("order_formula.expected", self.order_expected.to_string());
        kv("order_formula.actual", self.order_actual.to_string());
        kv("H", to_graph6(&self.h));
        kv("G", to_graph6(&self.g));
        kv("input_group.degree", self.input_group.degree().to_string());
        kv("input_group.generators", format_generators(self.input_group.generators()));
        for (n, r) in self.gadgets.iter().enumerate() {
            let roots: Vec<String> = r.roots.iter().map(usize::to_string).collect();
            kv(
                &format!("gadget.{}", n + 1),
                format!(
                    "kind={} roots={} proto={} g6={} provenance={}",
                    r.kind,
                    roots.join(","),
                    r.proto.as_ref().map_or_else(|| "-".to_string(), to_graph6),
                    to_graph6(&r.gadget),
                    r.provenance
                ),
            );
        }
        kv("tags", self.tags.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" "));
        let c = &self.nut_certificate;
        kv("nut_certificate.is_nut", c.is_nut.to_string());
        kv("nut_certificate.nullity", c.nullity.to_string());
        kv("nut_certificate.full", c.is_full().to_string());
        kv("nut_certificate.failure", c.failure.map_or_else(|| "-".to_string(), |f| f.to_string()));
        kv(
            "nut_certificate.kernel_vector",
            c.kernel_vector.as_ref().map_or_else(
                || "-".to_string(),
                |x| x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "),
            ),
        );
        kv("aut_order", self.aut_order.to_string());
        kv("restriction_equal", self.restriction_equal.to_string());
        kv("iso_verdict", self.iso_verdict.to_string());
        kv("regular_degree", opt(self.regular_degree));
        kv("certified", self.certified.to_string());
        format!("{REPORT_HEADER}\n{out}")
    }

    /// Parses [`PipelineReport::to_text`] output. Values are taken as
    /// written; use [`verify_report`] to re-check them.
    pub fn parse(text: &str) -> Result<Self, ReportError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        match lines.next() {
            Some((_, h)) if h.trim() == REPORT_HEADER => {}
            Some((i, _)) => return Err(ReportError { line: i + 1, reason: "missing report header".into() }),
            None => return Err(ReportError { line: 0, reason: "empty report".into() }),
        }
        let mut fields: HashMap<String, (usize, String)> = HashMap::new();
        let mut gadget_lines = Vec::new();
        for (i, l) in lines {
            let (k, v) = l
                .split_once(':')
                .ok_or_else(|| ReportError { line: i + 1, reason: "expected `key: value`".into() })?;
            let v = v.strip_prefix(' ').unwrap_or(v).to_string();
            if let Some(n) = k.strip_prefix("gadget.") {
                let n: usize = n.parse().map_err(|_| ReportError { line: i + 1, reason: format!("bad key `{k}`") })?;
                gadget_lines.push((n, i + 1, v));
            } else if fields.insert(k.to_string(), (i + 1, v)).is_some() {
                return Err(ReportError { line: i + 1, reason: format!("duplicate key `{k}`") });
            }
        }
        let p = Fields(&fields);
        let theorem = match p.get("theorem")?.1 {
            "1" => Theorem::One,
            "2" => Theorem::Two,
            other => return Err(p.bad("theorem", format!("unknown theorem `{other}`"))),
        };
        let h = p.graph("H")?;
        let g = p.graph("G")?;
        let degree: usize = p.num("input_group.degree")?;
        let gens = parse_generators(p.get("input_group.generators")?.1, degree)
            .map_err(|e| p.bad("input_group.generators", e.to_string()))?;
        let input_group =
            PermGroup::from_generators(degree, &gens).map_err(|e| p.bad("input_group.generators", e.to_string()))?;
        gadget_lines.sort_by_key(|x| x.0);
        let mut gadgets = Vec::new();
        for (want, (n, line, v)) in gadget_lines.into_iter().enumerate() {
            if n != want + 1 {
                return Err(ReportError { line, reason: format!("gadget numbering: expected {}", want + 1) });
            }
            gadgets.push(parse_gadget(&v).map_err(|reason| ReportError { line, reason })?);
        }
        let tags = p
            .get("tags")?
            .1
            .split_whitespace()
            .map(|t| t.parse::<VertexTag>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| p.bad("tags", e))?;
        let kernel_vector = match p.get("nut_certificate.kernel_vector")?.1 {
            "-" => None,
            s => Some(
                s.split_whitespace()
                    .map(|x| x.parse::<BigInt>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| p.bad("nut_certificate.kernel_vector", e.to_string()))?,
            ),
        };
        let failure = match p.get("nut_certificate.failure")?.1 {
            "-" => None,
            s => Some(parse_failure(s).ok_or_else(|| p.bad("nut_certificate.failure", format!("unknown failure `{s}`")))?),
        };
        let nut_certificate = NutCertificate {
            is_nut: p.num("nut_certificate.is_nut")?,
            nullity: p.num("nut_certificate.nullity")?,
            kernel_vector,
            failure,
        };
        Ok(PipelineReport {
            theorem,
            sigma: p.num("sigma")?,
            d: p.opt("d")?,
            kappa: p.num("kappa")?,
            input_group,
            h,
            g,
            gadgets,
            tags,
            order_expected: p.num("order_formula.expected")?,
            order_actual: p.num("order_formula.actual")?,
            nut_certificate,
            aut_order: p.num("aut_order")?,
            restriction_equal: p.num("restriction_equal")?,
            iso_verdict: p.get("iso_verdict")?.1.parse().map_err(|e| p.bad("iso_verdict", e))?,
            regular_degree: p.opt("regular_degree")?,
            certified: p.num("certified")?,
        })
    }
}

struct Fields<'a>(&'a HashMap<String, (usize, String)>);

impl Fields<'_> {
    fn get(&self, k: &str) -> Result<(usize, &str), ReportError> {
        self.0
            .get(k)
            .map(|(l, v)| (*l, v.as_str()))
            .ok_or_else(|| ReportError { line: 0, reason: format!("missing key `{k}`") })
    }

    fn bad(&self, k: &str, reason: String) -> ReportError {
        ReportError { line: self.0.get(k).map_or(0, |x| x.0), reason: format!("{k}: {reason}") }
    }

    fn num<T: std::str::FromStr>(&self, k: &str) -> Result<T, ReportError> {
        let (_, v) = self.get(k)?;
        v.trim().parse().map_err(|_| self.bad(k, format!("cannot parse `{v}`")))
    }

    fn opt(&self, k: &str) -> Result<Option<usize>, ReportError> {
        match self.get(k)?.1.trim() {
            "-" => Ok(None),
            _ => self.num(k).map(Some),
        }
    }

    fn graph(&self, k: &str) -> Result<Graph, ReportError> {
        from_graph6(self.get(k)?.1.trim()).map_err(|e| self.bad(k, e.to_string()))
    }
}

fn parse_failure(s: &str) -> Option<NutFailure> {
    match s {
        "order<2" => Some(NutFailure::TooSmall),
        "disconnected" => Some(NutFailure::Disconnected),
        _ => {
            if let Some(k) = s.strip_prefix("nullity=") {
                k.parse().ok().map(NutFailure::Nullity)
            } else {
                s.strip_prefix("zero-entry@")?.parse().ok().map(NutFailure::ZeroEntry)
            }
        }
    }
}

fn parse_gadget(v: &str) -> Result<GadgetRecord, String> {
    let (head, provenance) = match v.split_once(" provenance=") {
        Some((h, p)) => (h, p.to_string()),
        None => (v, String::new()),
    };
    let (mut kind, mut roots, mut proto, mut gadget) = (None, None, None, None);
    for kv in head.split_whitespace() {
        let (k, x) = kv.split_once('=').ok_or_else(|| format!("bad gadget field `{kv}`"))?;
        match k {
            "kind" => kind = Some(x.parse::<GadgetKind>()?),
            "roots" => {
                roots = Some(x.split(',').map(|r| r.parse::<usize>()).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?)
            }
            "proto" if x == "-" => proto = Some(None),
            "proto" => proto = Some(Some(from_graph6(x).map_err(|e| e.to_string())?)),
            "g6" => gadget = Some(from_graph6(x).map_err(|e| e.to_string())?),
            _ => return Err(format!("unknown gadget field `{k}`")),
        }
    }
    Ok(GadgetRecord {
        kind: kind.ok_or("gadget kind missing")?,
        gadget: gadget.ok_or("gadget graph missing")?,
        roots: roots.ok_or("gadget roots missing")?,
        proto: proto.unwrap_or(None),
        provenance,
    })
}

/// Rebuilds `G` from `H`, the gadgets and the parameters, then recomputes
/// every stored verdict. True iff everything matches.
pub fn verify_report(r: &PipelineReport) -> bool {
    if r.kappa != r.h.order() || r.gadgets.iter().any(|q| q.verify().is_err()) {
        return false;
    }
    let (built, expected) = match (r.theorem, r.d) {
        (Theorem::One, None) => {
            let [q0] = &r.gadgets[..] else { return false };
            (assemble_thm1(&r.h, q0, r.sigma), (19 + 4 * r.sigma) * r.kappa)
        }
        (Theorem::Two, Some(d)) if r.sigma == 0 => {
            let Ok(omega) = thm2_omega(d, &r.gadgets) else { return false };
            let expected = if d == 8 { 53 * r.kappa } else { omega * r.kappa };
            (assemble_thm2(&r.h, d, &r.gadgets), expected)
        }
        _ => return false,
    };
    let Ok((g, tags)) = built else { return false };
    if g != r.g || tags != r.tags || expected != r.order_expected {
        return false;
    }
    let fresh = PipelineReport::certify(
        r.theorem,
        r.sigma,
        r.d,
        r.h.clone(),
        g,
        tags,
        r.gadgets.clone(),
        expected,
        Some(r.input_group.clone()),
    );
    fresh.order_actual == r.order_actual
        && fresh.nut_certificate == r.nut_certificate
        && fresh.aut_order == r.aut_order
        && fresh.restriction_equal == r.restriction_equal
        && fresh.iso_verdict == r.iso_verdict
        && fresh.regular_degree == r.regular_degree
        && fresh.certified == r.certified
}

#[cfg(test)]
mod tests {
    use super::super::build_thm1;
    use super::*;
    use crate::gadgets::default_q0;

    fn k5_report() -> PipelineReport {
        build_thm1(&Graph::complete(5), &default_q0(), 0).unwrap()
    }

    #[test]
    fn text_round_trip() {
        let r = k5_report();
        let text = r.to_text();
        let back = PipelineReport::parse(&text).unwrap();
        assert_eq!(back.to_text(), text);
        assert!(verify_report(&back));
    }

    #[test]
    fn tampering_is_caught() {
        let r = k5_report();
        assert!(verify_report(&r));
        let mut cut = r.clone();
        let &(u, v) = r.g.edges().last().unwrap();
        let edges: Vec<(usize, usize)> =
            r.g.edges().iter().filter(|&&e| e != (u, v)).map(|&(a, b)| (a as usize, b as usize)).collect();
        cut.g = Graph::new(r.g.order(), &edges).unwrap();
        assert!(!verify_report(&cut));
        let mut sig = r.clone();
        sig.sigma = 1;
        assert!(!verify_report(&sig));
        let mut claim = r;
        claim.aut_order = BigUint::from(60u32);
        assert!(!verify_report(&claim));
    }

    #[test]
    fn parse_errors_name_the_line() {
        assert!(PipelineReport::parse("").is_err());
        let text = k5_report().to_text().replace("aut_order: 120", "aut_order: many");
        let e = PipelineReport::parse(&text).unwrap_err();
        assert!(e.reason.contains("aut_order"), "{e}");
        assert!(e.line > 1);
    }
}
