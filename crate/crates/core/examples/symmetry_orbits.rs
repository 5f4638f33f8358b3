// Box symmetries and how the cube's curves fall into orbits.

use quasigeo::cli::{Inventory, SegmentSource};
use quasigeo::geometry::BoxGeometry;
use quasigeo::rational::{int, rat};
use quasigeo::symmetry::{apply, group_for_mode, reduce_to_classes, GroupMode};

pub fn run_example() -> anyhow::Result<()> {
    for dims in [(int(1), int(1), int(1)), (int(1), int(1), int(3)), (int(1), rat(3, 2), int(2))] {
        let geom = BoxGeometry::new(dims.0, dims.1, dims.2)?;
        let full = group_for_mode(&geom, GroupMode::Full).len();
        let rot = group_for_mode(&geom, GroupMode::Rotations).len();
        println!("{} x {} x {}: {full} isometries, {rot} rotations", dims.0, dims.1, dims.2);
    }

    let cube = BoxGeometry::cube();
    let inv = Inventory::build(&cube, SegmentSource::FiveSlopes, GroupMode::Off)?;
    for mode in [GroupMode::Off, GroupMode::Rotations, GroupMode::Full] {
        let classes = reduce_to_classes(&cube, &inv.labeled, &group_for_mode(&cube, mode))?;
        println!("{mode:<5} {} classes", classes.len());
    }

    let group = group_for_mode(&cube, GroupMode::Full);
    let q = &inv.labeled[0];
    let mut images: Vec<Vec<String>> = group
        .iter()
        .map(|op| Ok(apply(&cube, op, q)?.vertex_cycle().iter().map(|v| v.to_string()).collect()))
        .collect::<anyhow::Result<_>>()?;
    images.sort();
    images.dedup();
    println!("orbit of {:?}:", q.vertex_cycle().iter().map(|v| v.to_string()).collect::<Vec<_>>());
    for cycle in &images {
        println!("  {}", cycle.join(" "));
    }
    Ok(())
}

fn main() -> anyhow::Result<()> {
    run_example()
}
