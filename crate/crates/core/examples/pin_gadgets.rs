//! Regenerates the pinned gadget libraries under `data/gadgets/v1`.
//!
//! cargo run --release --example pin_gadgets -- [seed]

use std::time::Instant;

use nutaut::constructions::{pairing_schedule, SUPPORTED_DEGREES};
use nutaut::gadgets::{format_library, search_proto, search_q0};

fn main() {
    let seed: u64 = std::env::args().nth(1).map_or(1, |s| s.parse().expect("seed"));
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data/gadgets/v1");
    let t = Instant::now();
    let q0 = search_q0(8);
    std::fs::write(format!("{dir}/thm1-q0.g6lib"), format_library(&q0[..1])).unwrap();
    eprintln!("q0: {} candidates, {:?}", q0.len(), t.elapsed());
    for d in SUPPORTED_DEGREES {
        let t = Instant::now();
        let s = pairing_schedule(d).unwrap().s;
        let recs = search_proto(d, s, seed).unwrap_or_else(|e| panic!("d={d}: {e}"));
        let orders: Vec<usize> = recs.iter().map(|r| r.gadget.order()).collect();
        std::fs::write(format!("{dir}/thm2-d{d}.g6lib"), format_library(&recs)).unwrap();
        eprintln!("d={d}: gadget orders {orders:?}, {:?}", t.elapsed());
    }
}
