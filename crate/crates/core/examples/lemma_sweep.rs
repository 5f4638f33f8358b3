// Why only five slopes can appear in a cube quasigeodesic.
//
// For each slope in (0, 1] the ray from a corner either crosses itself at a
// right angle or cannot be continued backward into a closed curve.

use quasigeo::geometry::BoxGeometry;
use quasigeo::lemma::{cases, check_backward_obstruction, check_self_crossing, sweep, Disposition, DEFAULT_MAX_CHAIN_DEPTH, DEFAULT_POOL_BOUND};
use quasigeo::rational::{int, rat};

pub fn run_example() -> anyhow::Result<()> {
    let cube = BoxGeometry::cube();
    for c in cases() {
        println!("{c}  {:?}", c.verdict);
    }

    if let Some(w) = check_self_crossing(&cube, rat(2, 7))? {
        println!("slope 2/7 crosses itself on {} at ({}, {}), perpendicular: {}", w.face, w.at[0], w.at[1], w.perpendicular);
    }

    let cert = check_backward_obstruction(&cube, rat(1, 5), DEFAULT_MAX_CHAIN_DEPTH)?;
    println!("slope 1/5: {} -> {}, {} candidates, complete: {}", cert.g.start, cert.g.end, cert.candidates.len(), cert.complete());
    for cand in cert.candidates.iter().take(6) {
        let how = match &cand.disposition {
            Disposition::Continued { next } => format!("continued, {} more", next.len()),
            d => format!("{d:?}"),
        };
        println!("  {} -> {} slope {}: {how}", cand.segment.start, cand.segment.end, cand.segment.slope);
    }
    println!("  ...");

    let report = sweep(&cube, 20, int(DEFAULT_POOL_BOUND), DEFAULT_MAX_CHAIN_DEPTH)?;
    for c in &report.cases {
        println!("{:<22} {:>3}/{:<3}", c.case.to_string(), c.passed, c.samples);
    }
    anyhow::ensure!(report.passed(), "sweep failed");
    Ok(())
}

fn main() -> anyhow::Result<()> {
    run_example()
}
