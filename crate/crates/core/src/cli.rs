//! Command-line front end: argument parsing, mode dispatch and report output.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{BoxGeometry, FaceId, VertexId};
use crate::lemma::{self, DEFAULT_DENOMINATOR_BOUND, DEFAULT_MAX_CHAIN_DEPTH, DEFAULT_POOL_BOUND};
use crate::rational::{int, parse_rational, serialize_rational, Rational, Slope};
use crate::render::{emit_svg, known_geodesics, NetCurve};
use crate::search::{dfs_search, Category, QuasiGeo};
use crate::symmetry::{group_for_mode, reduce_to_classes, CanonicalClass, GroupMode};
use crate::tracer::{
    enumerate_segments_box, enumerate_segments_cube, GeodesicSegment, SegmentRecord, DEFAULT_CUBE_MAX_CROSSINGS,
};
use crate::verify::verify_quasigeo;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Labeled count the original cube search reported before symmetry reduction.
pub const REPORTED_PREREDUCTION_COUNT: usize = 29;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Mode {
    /// List vertex-to-vertex geodesic segments
    Segments,
    /// Enumerate simple closed quasigeodesics and reduce them by symmetry
    Search,
    /// Report the curve counts under each counting convention
    Canon,
    /// Check the slope case analysis on the cube
    Lemma,
    /// Re-validate every found curve independently of the search
    Verify,
    /// Draw every class on the unfolded net as SVG
    Render,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SymmetryArg {
    Full,
    Rot,
    Off,
}

impl From<SymmetryArg> for GroupMode {
    fn from(s: SymmetryArg) -> Self {
        match s {
            SymmetryArg::Full => GroupMode::Full,
            SymmetryArg::Rot => GroupMode::Rotations,
            SymmetryArg::Off => GroupMode::Off,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "quasigeo", version, about = "Simple closed quasigeodesics on boxes, in exact arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub mode: Mode,
    /// Box dimensions as integers or fractions p/q
    #[arg(long, num_args = 3, value_names = ["A", "B", "C"], default_values = ["1", "1", "1"], global = true)]
    pub dims: Vec<String>,
    /// Squared-length bound for the all-slopes segment enumerator
    #[arg(long, value_name = "Q", global = true)]
    pub bound: Option<String>,
    /// Face-crossing budget per segment
    #[arg(long, value_name = "N", global = true)]
    pub max_crossings: Option<usize>,
    #[arg(long, value_enum, default_value = "full", global = true)]
    pub symmetry: SymmetryArg,
    /// Largest slope denominator sampled by `lemma`
    #[arg(long, value_name = "D", default_value_t = DEFAULT_DENOMINATOR_BOUND, global = true)]
    pub denominator_bound: i128,
    /// Write the JSON report here instead of standard output
    #[arg(long, value_name = "PATH", global = true)]
    pub out: Option<PathBuf>,
    /// Directory for SVG files
    #[arg(long, value_name = "PATH", global = true)]
    pub svg_dir: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub mode: Mode,
    pub dims: [String; 3],
    pub bound: Option<String>,
    pub max_crossings: Option<usize>,
    pub symmetry: GroupMode,
    pub denominator_bound: i128,
    pub out: Option<PathBuf>,
    pub svg_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(mode: Mode) -> Self {
        Self {
            mode,
            dims: ["1".into(), "1".into(), "1".into()],
            bound: None,
            max_crossings: None,
            symmetry: GroupMode::Full,
            denominator_bound: DEFAULT_DENOMINATOR_BOUND,
            out: None,
            svg_dir: None,
        }
    }

    pub fn dims(mut self, a: &str, b: &str, c: &str) -> Self {
        self.dims = [a.into(), b.into(), c.into()];
        self
    }

    pub fn geometry(&self) -> Result<BoxGeometry, CliError> {
        let d = self
            .dims
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        BoxGeometry::new(d[0], d[1], d[2]).map_err(|e| CliError::Usage(e.to_string()))
    }

    fn bound(&self) -> Result<Option<Rational>, CliError> {
        self.bound
            .as_deref()
            .map(parse_rational)
            .transpose()
            .map_err(|e| CliError::Usage(e.to_string()))
    }
}

impl TryFrom<Cli> for RunConfig {
    type Error = CliError;
    fn try_from(c: Cli) -> Result<Self, CliError> {
        let dims: [String; 3] = c
            .dims
            .try_into()
            .map_err(|_| CliError::Usage("--dims takes exactly three values".into()))?;
        Ok(Self {
            mode: c.mode,
            dims,
            bound: c.bound,
            max_crossings: c.max_crossings,
            symmetry: c.symmetry.into(),
            denominator_bound: c.denominator_bound,
            out: c.out,
            svg_dir: c.svg_dir,
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error(transparent)]
    Internal(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Internal(_) => EXIT_VERIFY,
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

/// Squared-length bound used when none is given: 16 times the longest side squared.
pub fn default_bound(geom: &BoxGeometry) -> Rational {
    let longest = geom.dims().into_iter().max().expect("three sides");
    int(16) * longest * longest
}

/// Crossing budget used when none is given.
pub fn default_max_crossings(geom: &BoxGeometry) -> usize {
    if geom.is_cube() {
        return DEFAULT_CUBE_MAX_CROSSINGS;
    }
    let d = geom.dims();
    let longest = d.into_iter().max().expect("three sides");
    let shortest = d.into_iter().min().expect("three sides");
    let ratio = (longest / shortest).ceil().to_integer() as usize;
    DEFAULT_CUBE_MAX_CROSSINGS.max(4 * ratio + 8)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SegmentSource {
    /// The five lemma slopes on the cube.
    FiveSlopes,
    /// Every vertex-to-vertex segment within the bounds.
    Bounded {
        #[serde(serialize_with = "serialize_rational")]
        length_sq_bound: Rational,
        max_crossings: usize,
    },
}

impl SegmentSource {
    /// Five slopes on the cube unless a bound is given; bounded enumeration otherwise.
    pub fn choose(geom: &BoxGeometry, bound: Option<Rational>, max_crossings: Option<usize>) -> Self {
        if geom.is_cube() && bound.is_none() && max_crossings.is_none() {
            return SegmentSource::FiveSlopes;
        }
        SegmentSource::Bounded {
            length_sq_bound: bound.unwrap_or_else(|| default_bound(geom)),
            max_crossings: max_crossings.unwrap_or_else(|| default_max_crossings(geom)),
        }
    }

    pub fn segments(&self, geom: &BoxGeometry) -> Result<Vec<GeodesicSegment>> {
        match self {
            SegmentSource::FiveSlopes => enumerate_segments_cube(geom),
            SegmentSource::Bounded {
                length_sq_bound,
                max_crossings,
            } => enumerate_segments_box(geom, *length_sq_bound, *max_crossings),
        }
    }
}

/// Search results for one box.
#[derive(Clone, Debug)]
pub struct Inventory {
    pub geom: BoxGeometry,
    pub source: SegmentSource,
    pub symmetry: GroupMode,
    pub group_order: usize,
    pub segment_count: usize,
    pub raw_emissions: usize,
    pub labeled: Vec<QuasiGeo>,
    pub classes: Vec<CanonicalClass>,
}

impl Inventory {
    pub fn build(geom: &BoxGeometry, source: SegmentSource, symmetry: GroupMode) -> Result<Self> {
        let segments = source.segments(geom)?;
        let out = dfs_search(geom, &segments)?;
        let group = group_for_mode(geom, symmetry);
        let classes = reduce_to_classes(geom, &out.quasigeos, &group)?;
        Ok(Self {
            geom: geom.clone(),
            source,
            symmetry,
            group_order: group.len(),
            segment_count: segments.len(),
            raw_emissions: out.raw_emissions,
            labeled: out.quasigeos,
            classes,
        })
    }

    /// Class identifiers: category letter and rank within the category.
    pub fn class_ids(&self) -> Vec<String> {
        let mut seen: BTreeMap<Option<Category>, usize> = BTreeMap::new();
        self.classes
            .iter()
            .map(|c| {
                let cat = self.category_of(&c.representative);
                let n = seen.entry(cat).or_insert(0);
                *n += 1;
                match cat {
                    Some(cat) => format!("{cat}{n}"),
                    None => format!("Q{n}"),
                }
            })
            .collect()
    }

    /// Table category of `q`; categories are defined on the cube only.
    pub fn category_of(&self, q: &QuasiGeo) -> Option<Category> {
        if self.geom.is_cube() {
            q.category()
        } else {
            None
        }
    }

    pub fn category_counts(&self) -> BTreeMap<Option<Category>, (usize, usize)> {
        let mut out: BTreeMap<Option<Category>, (usize, usize)> = BTreeMap::new();
        for c in &self.classes {
            out.entry(self.category_of(&c.representative)).or_default().0 += 1;
        }
        for q in &self.labeled {
            out.entry(self.category_of(q)).or_default().1 += 1;
        }
        out
    }
}

#[derive(Serialize)]
struct GeometryJson {
    dims: [String; 3],
    is_cube: bool,
}

impl GeometryJson {
    fn of(geom: &BoxGeometry) -> Self {
        Self {
            dims: geom.dims().map(|d| d.to_string()),
            is_cube: geom.is_cube(),
        }
    }
}

#[derive(Serialize)]
struct SegmentJson {
    from: VertexId,
    to: VertexId,
    slope: Slope,
    faces: Vec<FaceId>,
    #[serde(serialize_with = "serialize_rational")]
    length_sq: Rational,
}

#[derive(Serialize)]
struct ClassJson {
    id: String,
    category: Option<Category>,
    vertex_cycle: Vec<VertexId>,
    segments: Vec<SegmentJson>,
    orbit_size: usize,
    stabilizer_size: usize,
}

#[derive(Serialize)]
struct ConventionsJson {
    labeled_count: &'static str,
    raw_emissions: usize,
    raw_emissions_meaning: &'static str,
    classes: &'static str,
    reported_prereduction_count: usize,
}

#[derive(Serialize)]
struct InventoryJson {
    geometry: GeometryJson,
    segment_source: SegmentSource,
    segment_count: usize,
    symmetry: String,
    group_order: usize,
    labeled_count: usize,
    count_conventions: ConventionsJson,
    classes: Vec<ClassJson>,
}

fn segment_json(s: &GeodesicSegment) -> SegmentJson {
    SegmentJson {
        from: s.start,
        to: s.end,
        slope: s.slope(),
        faces: s.faces(),
        length_sq: s.length_sq,
    }
}

/// Stable JSON document for an inventory.
pub fn emit_json(inv: &Inventory) -> String {
    let ids = inv.class_ids();
    let doc = InventoryJson {
        geometry: GeometryJson::of(&inv.geom),
        segment_source: inv.source.clone(),
        segment_count: inv.segment_count,
        symmetry: inv.symmetry.to_string(),
        group_order: inv.group_order,
        labeled_count: inv.labeled.len(),
        count_conventions: ConventionsJson {
            labeled_count: "distinct curves with concrete vertex labels; starting vertex and direction of travel are ignored",
            raw_emissions: inv.raw_emissions,
            raw_emissions_meaning: "closed chains produced by the search, one per direction of travel",
            classes: "orbits of labeled curves under the selected symmetry group",
            reported_prereduction_count: REPORTED_PREREDUCTION_COUNT,
        },
        classes: inv
            .classes
            .iter()
            .zip(ids)
            .map(|(c, id)| ClassJson {
                id,
                category: inv.category_of(&c.representative),
                vertex_cycle: c.representative.vertex_cycle(),
                segments: c.representative.segments().iter().map(segment_json).collect(),
                orbit_size: c.orbit_size,
                stabilizer_size: c.stabilizer_size,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

fn category_blurb(cat: Option<Category>, cube: bool) -> &'static str {
    match cat {
        Some(Category::A) => "only 0/1 segments (length 1)",
        Some(Category::B) => "some 1/1 segment (length sqrt 2), none longer",
        Some(Category::C) => "some 1/2 segment (length sqrt 5), none longer",
        Some(Category::D) => "a 1/3 segment (length sqrt 10), none longer",
        Some(Category::E) => "a 2/3 segment (length sqrt 13)",
        None if cube => "a slope outside the five cube slopes",
        None => "not categorized off the cube",
    }
}

/// Plain-text table of classes per category.
pub fn summary_table(inv: &Inventory) -> String {
    let mut s = format!(
        "box {} x {} x {}, {} segments, symmetry {} (order {})\n",
        inv.geom.dims()[0],
        inv.geom.dims()[1],
        inv.geom.dims()[2],
        inv.segment_count,
        inv.symmetry,
        inv.group_order
    );
    s += &format!("{:<9}{:>8}{:>9}  {}\n", "category", "classes", "labeled", "description");
    for (cat, (classes, labeled)) in inv.category_counts() {
        let name = cat.map_or("-".to_string(), |c| c.to_string());
        s += &format!("{name:<9}{classes:>8}{labeled:>9}  {}\n", category_blurb(cat, inv.geom.is_cube()));
    }
    s += &format!("{:<9}{:>8}{:>9}\n", "total", inv.classes.len(), inv.labeled.len());
    s
}

fn write_output(cfg: &RunConfig, stdout: &mut dyn Write, text: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => fs::write(path, text).map_err(|e| io_err(path, e)),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

fn say(stdout: &mut dyn Write, text: &str) -> Result<(), CliError> {
    stdout.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))
}

/// Whether the run's checks passed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunStatus {
    Passed,
    Failed,
}

impl RunStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            RunStatus::Passed => EXIT_OK,
            RunStatus::Failed => EXIT_VERIFY,
        }
    }
}

fn inventory(cfg: &RunConfig, geom: &BoxGeometry) -> Result<Inventory, CliError> {
    if cfg.max_crossings == Some(0) {
        return Err(CliError::Usage("--max-crossings must be positive".into()));
    }
    let bound = cfg.bound()?;
    if bound.is_some_and(|b| b <= int(0)) {
        return Err(CliError::Usage("--bound must be positive".into()));
    }
    let source = SegmentSource::choose(geom, bound, cfg.max_crossings);
    Ok(Inventory::build(geom, source, cfg.symmetry)?)
}

#[derive(Serialize)]
struct SegmentsJson {
    geometry: GeometryJson,
    segment_source: SegmentSource,
    count: usize,
    loops: usize,
    segments: Vec<SegmentRecord>,
}

#[derive(Serialize)]
struct CountJson {
    convention: &'static str,
    group_order: Option<usize>,
    count: usize,
}

#[derive(Serialize)]
struct CanonJson {
    geometry: GeometryJson,
    segment_source: SegmentSource,
    counts: Vec<CountJson>,
    reported_prereduction_count: usize,
}

#[derive(Serialize)]
struct VerifyLine {
    id: String,
    labeled_checked: usize,
    ok: bool,
    problems: Vec<String>,
}

#[derive(Serialize)]
struct VerifyJson {
    geometry: GeometryJson,
    labeled_count: usize,
    labeled_failures: usize,
    inventory_matches_cube_table: Option<bool>,
    classes: Vec<VerifyLine>,
    passed: bool,
}

/// Expected classes per category on the cube.
pub const CUBE_TABLE: [(Category, usize); 5] = [
    (Category::A, 4),
    (Category::B, 5),
    (Category::C, 4),
    (Category::D, 1),
    (Category::E, 1),
];

pub fn matches_cube_table(inv: &Inventory) -> bool {
    let counts = inv.category_counts();
    inv.classes.len() == 15 && CUBE_TABLE.iter().all(|(c, n)| counts.get(&Some(*c)).map(|x| x.0) == Some(*n))
}

/// Executes one mode. Reports go to `--out` or `stdout`; summaries to `stdout`.
pub fn run(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<RunStatus, CliError> {
    let geom = cfg.geometry()?;
    match cfg.mode {
        Mode::Segments => {
            if cfg.max_crossings == Some(0) {
                return Err(CliError::Usage("--max-crossings must be positive".into()));
            }
            let source = SegmentSource::choose(&geom, cfg.bound()?, cfg.max_crossings);
            let segs = source.segments(&geom).map_err(|e| CliError::Usage(e.to_string()))?;
            let doc = SegmentsJson {
                geometry: GeometryJson::of(&geom),
                segment_source: source,
                count: segs.len(),
                loops: segs.iter().filter(|s| s.is_loop()).count(),
                segments: segs.iter().map(GeodesicSegment::record).collect(),
            };
            write_output(cfg, stdout, &(serde_json::to_string_pretty(&doc).expect("serializable") + "\n"))?;
            Ok(RunStatus::Passed)
        }
        Mode::Search => {
            let inv = inventory(cfg, &geom)?;
            write_output(cfg, stdout, &emit_json(&inv))?;
            if cfg.out.is_some() {
                say(stdout, &summary_table(&inv))?;
            }
            Ok(RunStatus::Passed)
        }
        Mode::Canon => {
            let bound = cfg.bound()?;
            let source = SegmentSource::choose(&geom, bound, cfg.max_crossings);
            let full = Inventory::build(&geom, source.clone(), GroupMode::Full)?;
            let rot = reduce_to_classes(&geom, &full.labeled, &group_for_mode(&geom, GroupMode::Rotations))?;
            let counts = vec![
                CountJson {
                    convention: "raw emissions (each direction of travel)",
                    group_order: None,
                    count: full.raw_emissions,
                },
                CountJson {
                    convention: "labeled curves",
                    group_order: Some(1),
                    count: full.labeled.len(),
                },
                CountJson {
                    convention: "classes under rotations",
                    group_order: Some(group_for_mode(&geom, GroupMode::Rotations).len()),
                    count: rot.len(),
                },
                CountJson {
                    convention: "classes under all isometries",
                    group_order: Some(full.group_order),
                    count: full.classes.len(),
                },
            ];
            let mut text = String::new();
            for c in &counts {
                text += &format!("{:<44}{:>6}\n", c.convention, c.count);
            }
            text += &format!("{:<44}{:>6}\n", "reported in the literature before reduction", REPORTED_PREREDUCTION_COUNT);
            let doc = CanonJson {
                geometry: GeometryJson::of(&geom),
                segment_source: source,
                counts,
                reported_prereduction_count: REPORTED_PREREDUCTION_COUNT,
            };
            match &cfg.out {
                Some(path) => {
                    fs::write(path, serde_json::to_string_pretty(&doc).expect("serializable") + "\n")
                        .map_err(|e| io_err(path, e))?;
                    say(stdout, &text)?;
                }
                None => say(stdout, &text)?,
            }
            Ok(RunStatus::Passed)
        }
        Mode::Lemma => {
            if !geom.is_cube() {
                return Err(CliError::Usage("lemma checks run on the cube only".into()));
            }
            if cfg.denominator_bound < 0 {
                return Err(CliError::Usage("--denominator-bound must be non-negative".into()));
            }
            let report = lemma::sweep(&geom, cfg.denominator_bound, int(DEFAULT_POOL_BOUND), DEFAULT_MAX_CHAIN_DEPTH)?;
            let mut text = format!(
                "slopes with denominator <= {}: {} samples, tiling {}\n",
                report.denominator_bound,
                report.samples(),
                if report.tiling_ok { "ok" } else { "FAILED" }
            );
            for c in &report.cases {
                text += &format!(
                    "{:<22} {:<20} {:>4}/{:<4} {}\n",
                    c.case.to_string(),
                    match c.case.verdict {
                        lemma::Verdict::SelfCrossing => "self-crossing",
                        lemma::Verdict::BackwardObstructed => "backward-obstructed",
                    },
                    c.passed,
                    c.samples,
                    if c.failures.is_empty() { "ok".to_string() } else { format!("FAILED {:?}", c.failures.iter().map(|r| r.to_string()).collect::<Vec<_>>()) }
                );
            }
            if let Some(path) = &cfg.out {
                fs::write(path, serde_json::to_string_pretty(&report).expect("serializable") + "\n")
                    .map_err(|e| io_err(path, e))?;
            }
            say(stdout, &text)?;
            Ok(if report.passed() { RunStatus::Passed } else { RunStatus::Failed })
        }
        Mode::Verify => {
            let inv = inventory(cfg, &geom)?;
            let ids = inv.class_ids();
            let reports: Vec<_> = inv.labeled.iter().map(|q| verify_quasigeo(&geom, q)).collect();
            let labeled_failures = reports.iter().filter(|r| !r.ok()).count();
            let classes: Vec<VerifyLine> = inv
                .classes
                .iter()
                .zip(ids)
                .map(|(c, id)| {
                    let r = verify_quasigeo(&geom, &c.representative);
                    VerifyLine {
                        id,
                        labeled_checked: c.orbit_size,
                        ok: r.ok(),
                        problems: r.problems,
                    }
                })
                .collect();
            let table = (geom.is_cube() && inv.symmetry == GroupMode::Full).then(|| matches_cube_table(&inv));
            let passed = labeled_failures == 0 && classes.iter().all(|c| c.ok) && table != Some(false);
            let mut text = String::new();
            for c in &classes {
                text += &format!("{:<6} {}\n", c.id, if c.ok { "ok".to_string() } else { c.problems.join("; ") });
            }
            text += &format!("labeled curves re-validated: {} ({} failed)\n", inv.labeled.len(), labeled_failures);
            if let Some(t) = table {
                text += &format!("cube inventory 15 classes A4 B5 C4 D1 E1: {}\n", if t { "ok" } else { "FAILED" });
            }
            text += if passed { "verify: passed\n" } else { "verify: FAILED\n" };
            let doc = VerifyJson {
                geometry: GeometryJson::of(&geom),
                labeled_count: inv.labeled.len(),
                labeled_failures,
                inventory_matches_cube_table: table,
                classes,
                passed,
            };
            if let Some(path) = &cfg.out {
                fs::write(path, serde_json::to_string_pretty(&doc).expect("serializable") + "\n")
                    .map_err(|e| io_err(path, e))?;
            }
            say(stdout, &text)?;
            Ok(if passed { RunStatus::Passed } else { RunStatus::Failed })
        }
        Mode::Render => {
            let dir = cfg
                .svg_dir
                .as_ref()
                .ok_or_else(|| CliError::Usage("render needs --svg-dir".into()))?;
            let inv = inventory(cfg, &geom)?;
            fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
            let mut drawings: Vec<(String, NetCurve)> = inv
                .classes
                .iter()
                .zip(inv.class_ids())
                .map(|(c, id)| (format!("{id}.svg"), NetCurve::from_quasigeo(id, &c.representative)))
                .collect();
            if geom.is_cube() {
                let names = ["geodesic-band.svg", "geodesic-hexagon.svg", "geodesic-slope-1-2.svg"];
                drawings.extend(names.iter().map(|n| n.to_string()).zip(known_geodesics(&geom)?));
            }
            for (name, curve) in &drawings {
                let path = dir.join(name);
                fs::write(&path, emit_svg(&geom, curve)?).map_err(|e| io_err(&path, e))?;
            }
            say(stdout, &format!("wrote {} drawings to {}\n", drawings.len(), dir.display()))?;
            Ok(RunStatus::Passed)
        }
    }
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    let result = RunConfig::try_from(cli).and_then(|cfg| run(&cfg, stdout));
    match result {
        Ok(status) => status.exit_code(),
        Err(e) => {
            let _ = writeln!(stderr, "quasigeo: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = main_with_args(std::iter::once("quasigeo").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&[]).0, EXIT_USAGE);
        assert_eq!(run_args(&["search", "--dims", "1", "0", "1"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["search", "--dims", "1", "x", "1"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["search", "--symmetry", "mirror"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["render"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["lemma", "--dims", "1", "1", "2"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["search", "--bound", "-3"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn io_error_code() {
        let (code, _, err) = run_args(&["search", "--out", "/nonexistent-dir/x/out.json"]);
        assert_eq!(code, EXIT_IO, "{err}");
    }

    #[test]
    fn lemma_vacuous() {
        let (code, out, _) = run_args(&["lemma", "--denominator-bound", "1"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("0 samples"));
    }

    #[test]
    fn default_budgets() {
        let cube = BoxGeometry::cube();
        assert_eq!(SegmentSource::choose(&cube, None, None), SegmentSource::FiveSlopes);
        let long = BoxGeometry::new(int(1), int(1), int(4)).unwrap();
        assert_eq!(default_max_crossings(&long), 24);
        assert_eq!(default_bound(&long), int(256));
    }
}
