// More quasigeodesics appear as a square box gets longer.

use quasigeo::cli::{Inventory, SegmentSource};
use quasigeo::geometry::BoxGeometry;
use quasigeo::lemma::verify_corollary;
use quasigeo::rational::int;
use quasigeo::symmetry::GroupMode;

pub fn run_example() -> anyhow::Result<()> {
    println!("{:>3} {:>9} {:>8} {:>10}", "h", "segments", "labeled", "classes");
    let mut last = 0;
    for h in 2..=4 {
        let geom = BoxGeometry::new(int(1), int(1), int(h))?;
        let source = SegmentSource::Bounded {
            length_sq_bound: int(4 * h * h),
            max_crossings: (4 * h + 8) as usize,
        };
        let inv = Inventory::build(&geom, source, GroupMode::Full)?;
        let wrapping = inv.labeled.iter().filter(|q| !verify_corollary(std::slice::from_ref(q))).count();
        println!("{h:>3} {:>9} {:>8} {:>10}   {wrapping} cross some face twice", inv.segment_count, inv.labeled.len(), inv.classes.len());
        anyhow::ensure!(inv.labeled.len() >= last, "count dropped at h = {h}");
        last = inv.labeled.len();
    }
    Ok(())
}

fn main() -> anyhow::Result<()> {
    run_example()
}
