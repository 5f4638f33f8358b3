// Geodesic segments between cube vertices.
//
// Traces one ray by hand, then compares the five-slope list with the
// all-slopes enumerator.

use quasigeo::geometry::{v, BoxGeometry, FaceId};
use quasigeo::rational::{int, Direction};
use quasigeo::tracer::{enumerate_segments_box, enumerate_segments_cube, trace_ray};

pub fn run_example() -> anyhow::Result<()> {
    let cube = BoxGeometry::cube();

    let seg = trace_ray(&cube, v(1), FaceId::F, Direction::new(3, 1)?, 16)?
        .segment()
        .ok_or_else(|| anyhow::anyhow!("slope 1/3 should reach a vertex"))?;
    let faces: String = seg.faces().iter().map(|f| f.letter()).collect();
    println!("{} -> {} across {faces}, length^2 {}", seg.start, seg.end, seg.length_sq);

    let five = enumerate_segments_cube(&cube)?;
    println!("five slopes: {} segments", five.len());
    for s in five.iter().filter(|s| s.start == v(1) || s.end == v(1)) {
        let r = s.record();
        println!("  {} -> {}  slope {:<4} length^2 {:<3} {}", r.start, r.end, r.slope, r.length_sq, r.faces.iter().map(|f| f.letter()).collect::<String>());
    }

    for bound in [13, 25, 50] {
        let all = enumerate_segments_box(&cube, int(bound), 4 * bound as usize)?;
        let loops = all.iter().filter(|s| s.is_loop()).count();
        println!("length^2 <= {bound}: {} segments, {loops} loops", all.len());
    }
    Ok(())
}

fn main() -> anyhow::Result<()> {
    run_example()
}
