//! Command-line interface for combinatorial polygonal surfaces.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use polysurf::catalog::{self, CatalogQuery, CurvatureSign};
use polysurf::complex::{PolygonalComplex, VertexType};
use polysurf::cover::{develop_universal_cover, verify_covering, DevelopmentLimit, HaltReason};
use polysurf::curvature::{angle_sum, classify, curvature, CurvatureProfile, TypeVerdict};
use polysurf::gauss_bonnet::check_gauss_bonnet;
use polysurf::generators::{generate_data, GeneratorSpec};
use polysurf::isoperimetric::ball_profile;
use polysurf::metric::{approx_diameter, build_mesh, vertex_avoidance_probe, MetricError};
use polysurf::psc::{parse_psc, write_psc};
use polysurf::render::{render_svg, RenderOptions};
use polysurf::spherical::{
    angle_sum_threshold_radius, critical_radius, polygon_spec, SphericalError,
};

#[derive(Parser)]
#[command(name = "polysurf", version, about = "Polygonal surfaces as combinatorics")]
struct Cli {
    /// Output style: human tables or stable machine lines.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a psc-1 file and check the gluing data.
    Validate { file: PathBuf },
    /// Per-vertex table: type, exact angle-sum, exact curvature.
    Report { file: PathBuf },
    /// Conformal type of the universal cover from the curvature signs.
    Classify(ClassifyArgs),
    /// Euler characteristic and the curvature-sum identity.
    Euler { file: PathBuf },
    /// Enumerate canonical vertex-types by curvature sign.
    Catalog(CatalogArgs),
    /// Develop a ball of the universal cover.
    Cover(CoverArgs),
    /// Geometry of one unit regular r-spherical n-gon.
    Spherical(SphericalArgs),
    /// Radius beyond which all angle-sums drop below 2π.
    CriticalRadius(CriticalRadiusArgs),
    /// Upper bound on the diameter of the r-spherical realization.
    Diameter(DiameterArgs),
    /// Probe that shortest paths avoid vertices.
    Avoidance(AvoidanceArgs),
    /// Isoperimetric profile of dual-BFS balls.
    Isoperimetric(IsoperimetricArgs),
    /// Emit a built-in complex as psc-1.
    Generate(GenerateArgs),
    /// Draw a planar ball (or punctured sphere) as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    /// psc-1 file; omit when using --types.
    file: Option<PathBuf>,
    /// Vertex-types like "[7,7,7]"; repeatable.
    #[arg(long)]
    types: Vec<String>,
    /// Upper bound N on face sizes (needed for elliptic/hyperbolic verdicts
    /// on declared type sets).
    #[arg(long)]
    side_bound: Option<usize>,
}

#[derive(Args)]
struct CatalogArgs {
    #[arg(long)]
    sides: usize,
    #[arg(long, value_enum)]
    sign: SignArg,
    #[arg(long, default_value_t = 3)]
    degree_min: usize,
    #[arg(long)]
    degree_max: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Pos,
    Zero,
    Neg,
}

#[derive(Args)]
struct CoverArgs {
    file: PathBuf,
    #[arg(long, conflicts_with = "max_faces")]
    max_generation: Option<usize>,
    #[arg(long)]
    max_faces: Option<usize>,
    /// Write the ball as psc-1 here, plus a `.proj` sidecar face table.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SphericalArgs {
    #[arg(long)]
    r: f64,
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct CriticalRadiusArgs {
    file: Option<PathBuf>,
    #[arg(long)]
    types: Vec<String>,
    #[arg(long, default_value_t = 0.01)]
    margin: f64,
}

#[derive(Args)]
struct DiameterArgs {
    file: PathBuf,
    #[arg(long)]
    r: f64,
    #[arg(long)]
    resolution: f64,
    /// Node budget for the mesh.
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Args)]
struct AvoidanceArgs {
    file: PathBuf,
    #[arg(long)]
    r: f64,
    #[arg(long, default_value_t = 50)]
    pairs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.1)]
    resolution: f64,
}

#[derive(Args)]
struct IsoperimetricArgs {
    file: PathBuf,
    #[arg(long)]
    center: usize,
    #[arg(long)]
    max_radius: usize,
}

#[derive(Args)]
struct GenerateArgs {
    /// Family and parameters, e.g. `dodecahedron`, `prism 6`, `pq-ball 7 3 2`.
    #[arg(num_args = 1.., required = true)]
    family: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    file: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Label interior vertices with exact curvature.
    #[arg(long)]
    labels: bool,
    #[arg(long, default_value_t = 720.0)]
    size: f64,
}

/// 0 = success, 2 = validation failure, 3 = numerical non-convergence.
struct CliFailure {
    message: String,
    code: u8,
}

impl CliFailure {
    fn validation(message: impl Into<String>) -> Self {
        CliFailure { message: message.into(), code: 2 }
    }

    fn numerical(message: impl Into<String>) -> Self {
        CliFailure { message: message.into(), code: 3 }
    }
}

macro_rules! validation_from {
    ($($ty:ty),+ $(,)?) => {
        $(impl From<$ty> for CliFailure {
            fn from(e: $ty) -> Self {
                CliFailure::validation(e.to_string())
            }
        })+
    };
}

validation_from!(
    polysurf::complex::ComplexError,
    polysurf::curvature::CurvatureError,
    polysurf::gauss_bonnet::GaussBonnetError,
    polysurf::catalog::CatalogError,
    polysurf::cover::CoverError,
    polysurf::generators::GeneratorError,
    polysurf::isoperimetric::IsoperimetricError,
    polysurf::psc::PscError,
    polysurf::render::RenderError,
    std::io::Error,
);

impl From<SphericalError> for CliFailure {
    fn from(e: SphericalError) -> Self {
        match e {
            SphericalError::NonConvergence(_) => CliFailure::numerical(e.to_string()),
            _ => CliFailure::validation(e.to_string()),
        }
    }
}

impl From<MetricError> for CliFailure {
    fn from(e: MetricError) -> Self {
        match e {
            MetricError::Disconnected => CliFailure::numerical(e.to_string()),
            MetricError::Spherical(inner) => inner.into(),
            _ => CliFailure::validation(e.to_string()),
        }
    }
}

fn load(path: &PathBuf) -> Result<PolygonalComplex, CliFailure> {
    let text = std::fs::read_to_string(path)?;
    let data = parse_psc(&text)?;
    Ok(PolygonalComplex::build(&data)?)
}

/// Accepts "[5,5,5]" or "5,5,5".
fn parse_type(text: &str) -> Result<VertexType, CliFailure> {
    let cleaned = text.trim().trim_start_matches('[').trim_end_matches(']');
    let sizes: Vec<usize> = cleaned
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| CliFailure::validation(format!("bad vertex-type entry {p:?}")))
        })
        .collect::<Result<_, _>>()?;
    Ok(VertexType::cyclic(&sizes)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliFailure> {
    let machine = cli.format == Format::Machine;
    match cli.command {
        Command::Validate { file } => {
            let complex = load(&file)?;
            if machine {
                println!("valid=true");
                println!("faces={}", complex.num_faces());
                println!("edges={}", complex.num_edges());
                println!("vertices={}", complex.num_vertices());
                println!("closed={}", complex.is_closed());
                println!("orientable={}", complex.is_orientable());
                println!("edge_to_edge={}", complex.is_edge_to_edge());
            } else {
                println!(
                    "ok: {} faces, {} edges, {} vertices",
                    complex.num_faces(),
                    complex.num_edges(),
                    complex.num_vertices()
                );
                println!(
                    "closed: {}   orientable: {}   edge-to-edge: {}",
                    complex.is_closed(),
                    complex.is_orientable(),
                    complex.is_edge_to_edge()
                );
                if let Some(witness) = complex.edge_to_edge_violation() {
                    println!("edge-to-edge witness: {witness}");
                }
            }
            Ok(())
        }
        Command::Report { file } => {
            let complex = load(&file)?;
            if !machine {
                println!(
                    "{:>6}  {:<18} {:>12} {:>10}  boundary",
                    "vertex", "type", "A/pi", "kappa"
                );
            }
            for v in complex.vertex_records() {
                let a = angle_sum(&v.vertex_type);
                let k = curvature(&v.vertex_type);
                if machine {
                    println!(
                        "{}\t{}\t{}\t{}\t{}",
                        v.id, v.vertex_type, a.coefficient_of_pi, k, v.is_boundary
                    );
                } else {
                    println!(
                        "{:>6}  {:<18} {:>12} {:>10}  {}",
                        v.id,
                        v.vertex_type.to_string(),
                        a.coefficient_of_pi.to_string(),
                        k.to_string(),
                        if v.is_boundary { "yes" } else { "no" }
                    );
                }
            }
            Ok(())
        }
        Command::Classify(args) => {
            let profile = match (&args.file, args.types.is_empty()) {
                (Some(file), _) => {
                    let complex = load(file)?;
                    CurvatureProfile::from_complex(&complex)?
                }
                (None, false) => {
                    let types: Vec<VertexType> =
                        args.types.iter().map(|t| parse_type(t)).collect::<Result<_, _>>()?;
                    CurvatureProfile::from_types(types, args.side_bound)?
                }
                (None, true) => {
                    return Err(CliFailure::validation("supply a psc file or --types"));
                }
            };
            let verdict = classify(&profile);
            if machine {
                let tag = match &verdict {
                    TypeVerdict::Elliptic => "elliptic",
                    TypeVerdict::Parabolic => "parabolic",
                    TypeVerdict::Hyperbolic => "hyperbolic",
                    TypeVerdict::Indeterminate(_) => "indeterminate",
                };
                println!("verdict={tag}");
                println!("signs={}", profile.signs());
                println!("min_curvature={}", profile.min_curvature());
                match profile.side_bound() {
                    Some(n) => println!("side_bound={n}"),
                    None => println!("side_bound=none"),
                }
            } else {
                println!("verdict: {verdict}");
                println!(
                    "justification: curvature signs {} over {} distinct vertex-type(s); \
                     minimum curvature {}; side bound {}",
                    profile.signs(),
                    profile.types().count(),
                    profile.min_curvature(),
                    profile
                        .side_bound()
                        .map(|n| n.to_string())
                        .unwrap_or_else(|| "none".to_string())
                );
                if matches!(verdict, TypeVerdict::Parabolic | TypeVerdict::Hyperbolic) {
                    println!(
                        "note: for a closed surface of positive genus the verdict describes \
                         the universal cover, not the surface itself"
                    );
                }
            }
            Ok(())
        }
        Command::Euler { file } => {
            let complex = load(&file)?;
            let report = check_gauss_bonnet(&complex)?;
            if machine {
                println!("V={}", report.vertices);
                println!("E={}", report.edges);
                println!("F={}", report.faces);
                println!("chi={}", report.chi_euler);
                println!("curvature_sum={}", report.curvature_sum);
                println!("consistent={}", report.consistent);
            } else {
                println!("{report}");
            }
            Ok(())
        }
        Command::Catalog(args) => {
            let sign = match args.sign {
                SignArg::Pos => CurvatureSign::Positive,
                SignArg::Zero => CurvatureSign::Zero,
                SignArg::Neg => CurvatureSign::Negative,
            };
            let query = CatalogQuery {
                side_bound: args.sides,
                degree_min: args.degree_min,
                degree_max: args.degree_max,
                sign,
            };
            for vt in catalog::enumerate_vertex_types(&query)? {
                let k = curvature(&vt);
                if machine {
                    println!("{vt}\t{k}");
                } else {
                    println!("{vt:<24} kappa = {k}");
                }
            }
            Ok(())
        }
        Command::Cover(args) => {
            let complex = load(&args.file)?;
            let limit = match (args.max_generation, args.max_faces) {
                (Some(g), None) => DevelopmentLimit::MaxGeneration(g),
                (None, Some(k)) => DevelopmentLimit::MaxFaces(k),
                (None, None) => {
                    return Err(CliFailure::validation(
                        "supply --max-generation or --max-faces",
                    ))
                }
                (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
            };
            let ball = develop_universal_cover(&complex, limit)?;
            let violations = verify_covering(&ball, &complex)
                .map_err(|e| CliFailure::validation(e.to_string()))?;
            if let Some(out) = &args.out {
                std::fs::write(out, write_psc(&ball.complex.to_gluing_data()))?;
                let mut table = String::from("# cover_face\tbase_face\n");
                for f in 0..ball.complex.num_faces() {
                    let base_dart =
                        ball.projection[ball.complex.dart(polysurf::complex::Slot::new(f, 0))];
                    table.push_str(&format!("{f}\t{}\n", complex.face_of(base_dart)));
                }
                let proj_path = out.with_extension("proj");
                std::fs::write(proj_path, table)?;
            }
            let halted = match ball.halted {
                HaltReason::Closure => "closure",
                HaltReason::Limit => "limit",
            };
            if machine {
                println!("faces={}", ball.complex.num_faces());
                println!("boundary_darts={}", ball.complex.boundary_darts().count());
                println!("halted={halted}");
                println!("verified={}", violations.is_empty());
                for g in 0..=ball.max_generation() {
                    println!("generation_{g}={}", ball.faces_of_generation(g));
                }
            } else {
                println!(
                    "developed {} faces ({} boundary darts), halted by {halted}",
                    ball.complex.num_faces(),
                    ball.complex.boundary_darts().count()
                );
                let counts: Vec<String> = (0..=ball.max_generation())
                    .map(|g| ball.faces_of_generation(g).to_string())
                    .collect();
                println!("faces per generation: {}", counts.join(", "));
                println!(
                    "covering conditions: {}",
                    if violations.is_empty() { "verified" } else { "VIOLATED" }
                );
                for v in &violations {
                    println!("  {v}");
                }
            }
            Ok(())
        }
        Command::Spherical(args) => {
            let spec = polygon_spec(args.r, args.n)?;
            if machine {
                println!("phi={:.12}", spec.phi);
                println!("interior_angle={:.12}", spec.interior_angle);
                println!("circumradius={:.12}", spec.circumradius);
                println!("area={:.12}", spec.area);
            } else {
                println!("unit regular {}-gon on the radius-{} sphere:", args.n, args.r);
                println!("  base angle phi   = {:.9}", spec.phi);
                println!("  interior angle   = {:.9}", spec.interior_angle);
                println!("  circumradius     = {:.9}", spec.circumradius);
                println!("  area             = {:.9}", spec.area);
            }
            Ok(())
        }
        Command::CriticalRadius(args) => {
            let types: Vec<VertexType> = match (&args.file, args.types.is_empty()) {
                (Some(file), _) => {
                    let complex = load(file)?;
                    let mut set = std::collections::BTreeSet::new();
                    for v in complex.vertex_records() {
                        if !v.is_boundary {
                            set.insert(v.vertex_type.clone());
                        }
                    }
                    set.into_iter().collect()
                }
                (None, false) => {
                    args.types.iter().map(|t| parse_type(t)).collect::<Result<_, _>>()?
                }
                (None, true) => {
                    return Err(CliFailure::validation("supply a psc file or --types"));
                }
            };
            let t0 = critical_radius(&types, args.margin)?;
            for vt in &types {
                let r = angle_sum_threshold_radius(vt)?;
                if machine {
                    println!("threshold\t{vt}\t{r:.12}");
                } else {
                    println!("angle-sum threshold for {vt}: r* = {r:.9}");
                }
            }
            if machine {
                println!("critical_radius={t0:.12}");
            } else {
                println!("critical radius (margin {}): t0 = {t0:.9}", args.margin);
            }
            Ok(())
        }
        Command::Diameter(args) => {
            let complex = load(&args.file)?;
            let mesh = build_mesh(&complex, args.r, args.resolution, args.budget)?;
            let estimate = approx_diameter(&mesh)?;
            let bound = std::f64::consts::PI * args.r;
            if machine {
                println!("nodes={}", mesh.num_nodes());
                println!("diameter_estimate={:.9}", estimate.value);
                println!("pi_r={bound:.9}");
                println!("within_bound={}", estimate.value <= bound + 1e-6);
            } else {
                println!(
                    "diameter estimate {:.6} over {} mesh nodes at h = {}",
                    estimate.value,
                    mesh.num_nodes(),
                    args.resolution
                );
                println!(
                    "pi*r = {bound:.6}; estimate {} the bound",
                    if estimate.value <= bound + 1e-6 { "respects" } else { "EXCEEDS" }
                );
            }
            Ok(())
        }
        Command::Avoidance(args) => {
            let complex = load(&args.file)?;
            let mesh = build_mesh(&complex, args.r, args.resolution, None)?;
            let report = vertex_avoidance_probe(&mesh, &complex, args.pairs, args.seed)?;
            if machine {
                for p in &report.pairs {
                    println!(
                        "pair\t{}\t{}\t{:.9}\t{:.9}\t{}",
                        p.a, p.b, p.distance, p.min_detour, p.vertex
                    );
                }
                println!("min_detour={:.9}", report.min_detour());
            } else {
                println!(
                    "{} seeded pairs at h = {}, seed {}:",
                    report.pairs.len(),
                    args.resolution,
                    args.seed
                );
                for p in &report.pairs {
                    println!(
                        "  nodes {} - {}: distance {:.6}, min detour via a vertex {:.6} (vertex {})",
                        p.a, p.b, p.distance, p.min_detour, p.vertex
                    );
                }
                println!("minimum detour over all pairs: {:.6}", report.min_detour());
            }
            Ok(())
        }
        Command::Isoperimetric(args) => {
            let complex = load(&args.file)?;
            let reports = ball_profile(&complex, args.center, args.max_radius)?;
            if !machine {
                println!(
                    "{:>6} {:>8} {:>8} {:>12} {:>12}",
                    "radius", "|F|", "|dE|", "ratio", "rho_area"
                );
            }
            for r in &reports {
                let radius = r.radius.expect("profile rows carry radii");
                if machine {
                    println!(
                        "{radius}\t{}\t{}\t{}\t{:.6}",
                        r.face_count, r.boundary_edge_count, r.ratio, r.rho_area
                    );
                } else {
                    println!(
                        "{:>6} {:>8} {:>8} {:>12} {:>12.4}",
                        radius,
                        r.face_count,
                        r.boundary_edge_count,
                        r.ratio.to_string(),
                        r.rho_area
                    );
                }
            }
            Ok(())
        }
        Command::Generate(args) => {
            let spec = GeneratorSpec::parse(&args.family.join(" "))?;
            let data = generate_data(spec)?;
            let text = write_psc(&data);
            match &args.out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(())
        }
        Command::Render(args) => {
            let complex = load(&args.file)?;
            let options = RenderOptions {
                size: args.size,
                label_curvature: args.labels,
                ..RenderOptions::default()
            };
            let svg = render_svg(&complex, &options)?;
            match &args.out {
                Some(path) => std::fs::write(path, svg)?,
                None => print!("{svg}"),
            }
            Ok(())
        }
    }
}
