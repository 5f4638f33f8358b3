// A quasigeodesic with a single vertex on a 1 x 1 x 5/4 box.
//
// The cube has none; stretching one side makes room for a loop that leaves
// a corner and comes back to it.

use quasigeo::cli::{default_bound, default_max_crossings, Inventory, SegmentSource};
use quasigeo::geometry::BoxGeometry;
use quasigeo::rational::{int, rat};
use quasigeo::symmetry::GroupMode;
use quasigeo::verify::verify_quasigeo;

pub fn run_example() -> anyhow::Result<()> {
    let geom = BoxGeometry::new(int(1), int(1), rat(5, 4))?;
    let source = SegmentSource::Bounded {
        length_sq_bound: default_bound(&geom),
        max_crossings: default_max_crossings(&geom),
    };
    let inv = Inventory::build(&geom, source, GroupMode::Full)?;
    println!("{} labeled curves in {} classes", inv.labeled.len(), inv.classes.len());

    let mut found = 0;
    for (id, class) in inv.class_ids().iter().zip(&inv.classes) {
        let q = &class.representative;
        if q.vertex_count() != 1 {
            continue;
        }
        found += 1;
        let s = &q.segments()[0];
        let faces: String = s.faces().iter().map(|f| f.letter()).collect();
        println!("{id}: loop at {} with direction ({}, {}) on {}, faces {faces}, length^2 {}", s.start, s.direction.dx, s.direction.dy, s.start_face, s.length_sq);
        anyhow::ensure!(verify_quasigeo(&geom, q).ok(), "{id} fails re-validation");
    }
    anyhow::ensure!(found > 0, "no one-vertex curve");
    Ok(())
}

fn main() -> anyhow::Result<()> {
    run_example()
}
