use quasigeo::cli::{Inventory, SegmentSource};
use quasigeo::geometry::BoxGeometry;
use quasigeo::symmetry::GroupMode;
use quasigeo::verify::verify_quasigeo;

/// Re-checks every labeled cube curve from its 3D embedding.
pub fn run_example() -> anyhow::Result<()> {
    let cube = BoxGeometry::cube();
    let inv = Inventory::build(&cube, SegmentSource::FiveSlopes, GroupMode::Off)?;
    let mut bad = 0;
    for q in &inv.labeled {
        let r = verify_quasigeo(&cube, q);
        if !r.ok() {
            bad += 1;
            println!("{:?}: {}", q.vertex_cycle(), r.problems.join("; "));
        }
    }
    println!("{} curves checked, {bad} failed", inv.labeled.len());
    anyhow::ensure!(bad == 0);
    Ok(())
}

fn main() -> anyhow::Result<()> {
    run_example()
}
