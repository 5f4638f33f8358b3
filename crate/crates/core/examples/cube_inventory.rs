// Every simple closed quasigeodesic on the unit cube, up to symmetry.
//
// ```text
// cargo run --example cube_inventory
// ```

use quasigeo::cli::{summary_table, Inventory, SegmentSource};
use quasigeo::geometry::BoxGeometry;
use quasigeo::symmetry::GroupMode;

pub fn run_example() -> anyhow::Result<()> {
    let cube = BoxGeometry::cube();
    let inv = Inventory::build(&cube, SegmentSource::FiveSlopes, GroupMode::Full)?;
    print!("{}", summary_table(&inv));

    for (id, class) in inv.class_ids().iter().zip(&inv.classes) {
        let q = &class.representative;
        let cycle: Vec<String> = q.vertex_cycle().iter().map(|v| v.to_string()).collect();
        let slopes: Vec<String> = q.slopes().iter().map(|s| s.to_string()).collect();
        println!("{id:<4} {:<28} slopes {:<24} orbit {}", cycle.join(" "), slopes.join(" "), class.orbit_size);
    }
    anyhow::ensure!(inv.classes.len() == 15, "expected 15 classes, got {}", inv.classes.len());
    Ok(())
}

fn main() -> anyhow::Result<()> {
    run_example()
}
