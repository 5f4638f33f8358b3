// Draws the cube classes and three closed geodesics on the unfolded net.
//
// Writes SVG files to the directory given as the first argument, or to a
// temporary directory.

use std::path::PathBuf;

use quasigeo::cli::{Inventory, SegmentSource};
use quasigeo::geometry::BoxGeometry;
use quasigeo::render::{emit_svg, known_geodesics, NetCurve};
use quasigeo::symmetry::GroupMode;

pub fn run_example() -> anyhow::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("quasigeo-nets"));
    std::fs::create_dir_all(&dir)?;

    let cube = BoxGeometry::cube();
    let inv = Inventory::build(&cube, SegmentSource::FiveSlopes, GroupMode::Full)?;
    let mut curves: Vec<NetCurve> = inv
        .class_ids()
        .into_iter()
        .zip(&inv.classes)
        .map(|(id, c)| NetCurve::from_quasigeo(id, &c.representative))
        .collect();
    curves.extend(known_geodesics(&cube)?);

    for curve in &curves {
        let name = curve.title.replace([' ', '/'], "-");
        std::fs::write(dir.join(format!("{name}.svg")), emit_svg(&cube, curve)?)?;
    }
    println!("wrote {} drawings to {}", curves.len(), dir.display());
    Ok(())
}

fn main() -> anyhow::Result<()> {
    run_example()
}
