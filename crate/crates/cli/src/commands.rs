use std::fmt::Display;
use std::path::PathBuf;

use nutaut::aut::automorphism_group;
use nutaut::codec::to_graph6;
use nutaut::constructions::{
    build_thm1, build_thm2, pairing_schedule, triangle_multiplier, verify_report, PipelineReport,
};
use nutaut::enumeration::{census_within, minimal_orders_within, CensusFilter, Predicate, DEFAULT_CEILING, STRETCH_CEILING};
use nutaut::gadgets::{default_protos, default_q0, search_proto, search_q0, GadgetKind};
use nutaut::kernel::nut_certificate;
use nutaut::perm::{format_generators, parse_generators, PermGroup};

use crate::io::{append_library, emit, load_library, read_graph, read_graphs, read_text};
use crate::{BuildArgs, Command, GadgetChoice};

/// Ordered `key: value` lines.
#[derive(Default)]
struct Kv(String);

impl Kv {
    fn put(&mut self, k: &str, v: impl Display) {
        self.0.push_str(&format!("{k}: {v}\n"));
    }
}

fn group_from(gens: &str, degree: usize, flag: &str) -> Result<PermGroup, String> {
    let gs = parse_generators(gens, degree).map_err(|e| format!("{flag}: {e}"))?;
    PermGroup::from_generators(degree, &gs).map_err(|e| format!("{flag}: {e}"))
}

fn orbits_text(g: &PermGroup) -> String {
    g.orbits()
        .iter()
        .map(|o| o.iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Runs one command; `Ok(false)` means a certification failed.
pub fn run(cmd: Command) -> Result<bool, String> {
    match cmd {
        Command::Verify { input: Some(path), out, .. } => verify_graphs(&path, out),
        Command::Verify { report: Some(path), out, .. } => verify_pipeline(&path, out),
        Command::Verify { .. } => Err("verify: give --in or --report".into()),
        Command::Aut { input, out } => {
            let g = read_graph(&input, "--in")?;
            let aut = automorphism_group(&g);
            let mut kv = Kv::default();
            kv.put("order", g.order());
            kv.put("aut_order", aut.order());
            kv.put("generators", format_generators(aut.generators()));
            kv.put("orbits", orbits_text(&aut));
            emit(out.as_ref(), &kv.0)?;
            eprintln!("|Aut| = {}", aut.order());
            Ok(true)
        }
        Command::ConstructThm1 { h, sigma, common } => {
            let h = read_graph(&h, "--H")?;
            let q0 = match &common.gadget_lib {
                Some(dir) => load_library(dir, GadgetKind::Q0)?.swap_remove(0),
                None => default_q0(),
            };
            let r = build_thm1(&h, &q0, sigma).map_err(|e| format!("--H: {e}"))?;
            finish_report(r, &common)
        }
        Command::ConstructThm2 { h, degree, common } => {
            pairing_schedule(degree).map_err(|e| format!("--degree: {e}"))?;
            let h = read_graph(&h, "--H")?;
            let gadgets = match &common.gadget_lib {
                Some(dir) => load_library(dir, GadgetKind::Proto(degree))?,
                None => default_protos(degree).ok_or(format!("--degree: no pinned gadgets for d={degree}"))?,
            };
            let r = build_thm2(&h, degree, &gadgets).map_err(|e| format!("--H: {e}"))?;
            finish_report(r, &common)
        }
        Command::Multiplier { h, out } => {
            let h = read_graph(&h, "--H")?;
            let m = triangle_multiplier(&h).map_err(|e| format!("--H: {e}"))?;
            let cert = nut_certificate(&m.graph);
            let aut_h = automorphism_group(&h).order();
            let aut_m = automorphism_group(&m.graph).order();
            let bouquet = num_bigint::BigUint::from(1u64 << m.t) * (1..=m.t as u64).product::<u64>();
            let law = bouquet.pow(m.kappa as u32) * &aut_h == aut_m;
            let mut kv = Kv::default();
            kv.put("t", m.t);
            kv.put("kappa", m.kappa);
            kv.put("order", m.graph.order());
            kv.put("H", to_graph6(&h));
            kv.put("G", to_graph6(&m.graph));
            kv.put("tags", m.tags.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" "));
            kv.put("is_nut", cert.is_nut);
            kv.put("nullity", cert.nullity);
            kv.put("full", cert.is_full());
            kv.put("aut_order.H", &aut_h);
            kv.put("aut_order", &aut_m);
            kv.put("aut_law", law);
            emit(out.as_ref(), &kv.0)?;
            eprintln!("M3: order {}, nut {}, |Aut| {aut_m}", m.graph.order(), cert.is_nut);
            Ok(cert.is_nut && law)
        }
        Command::SearchGadgets { kind, degree, count, seed, max_order, out } => {
            let (kind, recs) = match kind {
                GadgetChoice::Q0 => (GadgetKind::Q0, search_q0(max_order)),
                GadgetChoice::Proto => {
                    let d = degree.ok_or("--degree is required for proto gadgets")?;
                    let s = pairing_schedule(d).map_err(|e| format!("--degree: {e}"))?.s;
                    let seed = seed.ok_or("--seed is required for proto gadgets")?;
                    let recs = search_proto(d, count.unwrap_or(s), seed).map_err(|e| e.to_string())?;
                    (GadgetKind::Proto(d), recs)
                }
            };
            let added = append_library(&out, kind, &recs)?;
            let mut kv = Kv::default();
            kv.put("kind", kind);
            kv.put("found", recs.len());
            kv.put("added", added);
            for (i, r) in recs.iter().enumerate() {
                kv.put(&format!("gadget.{}", i + 1), format!("order={} code={}", r.gadget.order(), r.code().as_str()));
            }
            emit(None, &kv.0)?;
            eprintln!("{} gadgets found, {added} new in {}", recs.len(), out.display());
            Ok(!recs.is_empty())
        }
        Command::Census { n, filter, witnesses, stretch, out } => {
            let filter: CensusFilter = filter.parse().map_err(|e| format!("--filter: {e}"))?;
            let ceiling = if stretch { STRETCH_CEILING } else { DEFAULT_CEILING };
            let c = census_within(n, filter, witnesses, ceiling).map_err(|e| format!("--n: {e}"))?;
            let mut kv = Kv::default();
            kv.put("n", c.n);
            kv.put("filter", c.filter);
            kv.put("count", c.count);
            if let Some(w) = &c.witnesses {
                for code in w {
                    kv.put("witness", code.as_str());
                }
            }
            emit(out.as_ref(), &kv.0)?;
            eprintln!("{} {} graphs of order {}", c.count, c.filter, c.n);
            Ok(true)
        }
        Command::Minimal { gens, degree, predicate, max_n, stretch, out } => {
            let group = group_from(&gens, degree, "--gens")?;
            let predicate: Predicate = predicate.parse().map_err(|e| format!("--predicate: {e}"))?;
            let ceiling = if stretch { STRETCH_CEILING } else { DEFAULT_CEILING };
            let r = minimal_orders_within(&[group], predicate, max_n, ceiling)
                .map_err(|e| format!("--max-n: {e}"))?
                .remove(0);
            let mut kv = Kv::default();
            kv.put("group_order", r.group.order());
            kv.put("predicate", r.predicate);
            kv.put("max_n", r.max_n);
            kv.put("min_order", r.min_order.map_or_else(|| "open".to_string(), |n| n.to_string()));
            kv.put("candidate_count", r.candidate_count);
            kv.put("undecided", r.undecided);
            for g in &r.witnesses {
                kv.put("witness", to_graph6(g));
            }
            emit(out.as_ref(), &kv.0)?;
            match r.min_order {
                Some(n) => eprintln!("minimal order {n} with {} candidates", r.candidate_count),
                None => eprintln!("open: no witness up to order {max_n}"),
            }
            Ok(true)
        }
        Command::GroupOrder { gens, degree } => {
            let g = group_from(&gens, degree, "--gens")?;
            let mut kv = Kv::default();
            kv.put("degree", degree);
            kv.put("order", g.order());
            emit(None, &kv.0)?;
            Ok(true)
        }
    }
}

fn verify_graphs(path: &PathBuf, out: Option<PathBuf>) -> Result<bool, String> {
    let graphs = read_graphs(path, "--in")?;
    let mut text = String::new();
    let mut nuts = 0;
    for (i, g) in graphs.iter().enumerate() {
        let cert = nut_certificate(g);
        let prof = g.degree_profile();
        let mut kv = Kv::default();
        kv.put("graph6", to_graph6(g));
        kv.put("order", g.order());
        kv.put("size", g.size());
        kv.put("degree.min", prof.min);
        kv.put("degree.max", prof.max);
        kv.put("regular", prof.is_regular());
        kv.put("connected", g.is_connected());
        kv.put("nullity", cert.nullity);
        kv.put("full", cert.is_full());
        kv.put("is_nut", cert.is_nut);
        kv.put("failure", cert.failure.map_or_else(|| "-".to_string(), |f| f.to_string()));
        kv.put(
            "kernel_vector",
            cert.kernel_vector.as_ref().map_or_else(
                || "-".to_string(),
                |x| x.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "),
            ),
        );
        kv.put("aut_order", automorphism_group(g).order());
        if i > 0 {
            text.push('\n');
        }
        text.push_str(&kv.0);
        nuts += cert.is_nut as usize;
    }
    emit(out.as_ref(), &text)?;
    eprintln!("{nuts} of {} graphs are nut graphs", graphs.len());
    Ok(nuts == graphs.len())
}

fn verify_pipeline(path: &PathBuf, out: Option<PathBuf>) -> Result<bool, String> {
    let text = read_text(path, "--report")?;
    let r = PipelineReport::parse(&text).map_err(|e| format!("--report {}: {e}", path.display()))?;
    let ok = verify_report(&r);
    let mut kv = Kv::default();
    kv.put("report.verified", ok);
    kv.put("certified", r.certified);
    kv.put("order", r.g.order());
    kv.put("is_nut", r.nut_certificate.is_nut);
    kv.put("aut_order", &r.aut_order);
    emit(out.as_ref(), &kv.0)?;
    eprintln!("report {}", if ok { "reproduced" } else { "does not reproduce" });
    Ok(ok && r.certified)
}

fn finish_report(r: PipelineReport, args: &BuildArgs) -> Result<bool, String> {
    let r = match &args.gens {
        Some(g) => {
            let group = group_from(g, r.kappa, "--gens")?;
            r.with_input_group(group)
        }
        None => r,
    };
    emit(args.out.as_ref(), &r.to_text())?;
    eprintln!(
        "G: order {} (expected {}), nut {}, |Aut| {}, {}",
        r.order_actual,
        r.order_expected,
        r.nut_certificate.is_nut,
        r.aut_order,
        if r.certified { "certified" } else { "NOT certified" }
    );
    Ok(r.certified)
}
