//! Files in and out. Errors name the flag they came from.

use std::path::{Path, PathBuf};

use nutaut::codec::{decode_line, from_edge_list};
use nutaut::gadgets::{format_library, parse_library, GadgetKind, GadgetRecord};
use nutaut::graph::Graph;

fn read(path: &Path, flag: &str) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{flag} {}: {e}", path.display()))
}

/// Graphs in a file: graph6/sparse6 lines, or an edge list whose first
/// line is the vertex count.
pub fn read_graphs(path: &Path, flag: &str) -> Result<Vec<Graph>, String> {
    let text = read(path, flag)?;
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let bad = |e: String| format!("{flag} {}: {e}", path.display());
    if lines.first().is_some_and(|l| l.parse::<usize>().is_ok()) {
        return Ok(vec![from_edge_list(&text).map_err(|e| bad(e.to_string()))?]);
    }
    let graphs: Vec<Graph> = lines
        .iter()
        .enumerate()
        .map(|(i, l)| decode_line(l).map_err(|e| bad(format!("line {}: {e}", i + 1))))
        .collect::<Result<_, _>>()?;
    if graphs.is_empty() {
        return Err(bad("no graphs".into()));
    }
    Ok(graphs)
}

pub fn read_graph(path: &Path, flag: &str) -> Result<Graph, String> {
    let mut gs = read_graphs(path, flag)?;
    if gs.len() != 1 {
        return Err(format!("{flag} {}: expected one graph, found {}", path.display(), gs.len()));
    }
    Ok(gs.remove(0))
}

pub fn read_text(path: &Path, flag: &str) -> Result<String, String> {
    read(path, flag)
}

/// Writes `text` to `out` or stdout.
pub fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("--out {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn library_file(dir: &Path, kind: GadgetKind) -> PathBuf {
    match kind {
        GadgetKind::Q0 => dir.join("thm1-q0.g6lib"),
        GadgetKind::Proto(d) => dir.join(format!("thm2-d{d}.g6lib")),
    }
}

/// Records of one kind from a library directory.
pub fn load_library(dir: &Path, kind: GadgetKind) -> Result<Vec<GadgetRecord>, String> {
    let path = library_file(dir, kind);
    let text = read(&path, "--gadget-lib")?;
    let recs = parse_library(&text).map_err(|e| format!("--gadget-lib {}: {e}", path.display()))?;
    if recs.is_empty() {
        return Err(format!("--gadget-lib {}: no records", path.display()));
    }
    Ok(recs)
}

/// Appends the records whose canonical codes are not yet in the library
/// file. Returns how many were new.
pub fn append_library(dir: &Path, kind: GadgetKind, records: &[GadgetRecord]) -> Result<usize, String> {
    std::fs::create_dir_all(dir).map_err(|e| format!("--out {}: {e}", dir.display()))?;
    let path = library_file(dir, kind);
    let mut text = if path.exists() { read(&path, "--out")? } else { String::new() };
    let existing = parse_library(&text).map_err(|e| format!("--out {}: {e}", path.display()))?;
    let known: std::collections::HashSet<_> = existing.iter().map(GadgetRecord::code).collect();
    let fresh: Vec<GadgetRecord> = records.iter().filter(|r| !known.contains(&r.code())).cloned().collect();
    text.push_str(&format_library(&fresh));
    std::fs::write(&path, text).map_err(|e| format!("--out {}: {e}", path.display()))?;
    Ok(fresh.len())
}
