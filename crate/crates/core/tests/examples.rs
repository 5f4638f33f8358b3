#[allow(dead_code)]
mod cube_inventory {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cube_inventory.rs"));
}

#[test]
fn cube_inventory_runs() {
    cube_inventory::run_example().expect("cube_inventory example should run");
}

#[allow(dead_code)]
mod segments {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/segments.rs"));
}

#[test]
fn segments_runs() {
    segments::run_example().expect("segments example should run");
}

#[allow(dead_code)]
mod symmetry_orbits {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/symmetry_orbits.rs"));
}

#[test]
fn symmetry_orbits_runs() {
    symmetry_orbits::run_example().expect("symmetry_orbits example should run");
}

#[allow(dead_code)]
mod lemma_sweep {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lemma_sweep.rs"));
}

#[test]
fn lemma_sweep_runs() {
    lemma_sweep::run_example().expect("lemma_sweep example should run");
}

#[allow(dead_code)]
mod box_diamond {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/box_diamond.rs"));
}

#[test]
fn box_diamond_runs() {
    box_diamond::run_example().expect("box_diamond example should run");
}

#[allow(dead_code)]
mod long_box_spirals {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/long_box_spirals.rs"));
}

#[test]
fn long_box_spirals_runs() {
    long_box_spirals::run_example().expect("long_box_spirals example should run");
}

#[allow(dead_code)]
mod verify_inventory {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/verify_inventory.rs"));
}

#[test]
fn verify_inventory_runs() {
    verify_inventory::run_example().expect("verify_inventory example should run");
}
