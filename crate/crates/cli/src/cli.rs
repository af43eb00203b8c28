//! Argument handling and subcommands.
//!
//! Exit codes: 0 success, 1 usage or input format error, 2 invalid
//! polyhedron, 3 infeasible, 4 search limit reached.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use tetrify_core::generators::*;
use tetrify_core::polyhedron::{bounds, volume6, PolyhedronError};
use tetrify_core::solver::{best_star, check_triangulation, solve, star_triangulation, Edge, Mode, SolveError, SolveSpec, Status};
use tetrify_core::{enumerate_candidates, validate, Polyhedron, Rat};

use crate::json;
use crate::off::{parse_off_unchecked, write_off};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_LIMIT: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "tetrify", version, about = "Exact tetrahedralizations of small polyhedra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Shape {
    Tetrahedron,
    Cube,
    Prism,
    Schoenhardt,
    SchoenhardtEnlarged,
    Fan,
    PrismTwisted,
    Random,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Min,
    Max,
    Decide,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a generated polyhedron as OFF.
    Gen {
        shape: Shape,
        /// Twist of the top triangle as `cos,sin`, e.g. `24/25,7/25`.
        #[arg(long)]
        twist: Option<String>,
        /// Base scale of the twisted prism.
        #[arg(long)]
        scale: Option<Rat>,
        /// Number of arc gaps of the fan.
        #[arg(long)]
        spokes: Option<usize>,
        /// Vertex count of a random polytope.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Report structural and geometric validity.
    Validate { file: PathBuf },
    /// Search for a minimum, maximum or bounded-size triangulation.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// With `--mode decide`: ask for fewer than K tetrahedra.
        #[arg(long)]
        k: Option<usize>,
        /// An edge `i-j` every solution must use.
        #[arg(long = "force", value_parser = parse_edge)]
        force: Vec<Edge>,
        /// An edge `i-j` no solution may use.
        #[arg(long = "forbid", value_parser = parse_edge)]
        forbid: Vec<Edge>,
        /// Required boundary triangles, as `{"triangles": [[i,j,k], ...]}`.
        #[arg(long)]
        surface: Option<PathBuf>,
        #[arg(long)]
        node_limit: Option<u64>,
        /// Wall-clock limit in milliseconds.
        #[arg(long)]
        time_limit: Option<u64>,
        /// Include the wall time in the output.
        #[arg(long)]
        stats: bool,
    },
    /// Star triangulation from one vertex, or the smallest over all vertices.
    Star {
        file: PathBuf,
        #[arg(long, conflicts_with = "best")]
        vertex: Option<usize>,
        #[arg(long)]
        best: bool,
    },
    /// Exit 0 iff the triangulation is valid for the polyhedron.
    Check {
        file: PathBuf,
        triangulation: PathBuf,
        #[arg(long)]
        surface: Option<PathBuf>,
    },
    /// Print the smallest and largest possible triangulation sizes.
    Bounds {
        #[arg(long)]
        n: usize,
    },
}

fn parse_edge(s: &str) -> Result<Edge, String> {
    let (a, b) = s.split_once('-').ok_or_else(|| format!("expected `i-j`, found `{s}`"))?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad vertex index in `{s}`"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad vertex index in `{s}`"))?;
    Edge::new(a, b).ok_or_else(|| format!("`{s}` is a loop"))
}

fn parse_twist(s: &str) -> Result<(Rat, Rat), String> {
    let (c, v) = s.split_once(',').ok_or_else(|| format!("expected `cos,sin`, found `{s}`"))?;
    let c: Rat = c.trim().parse().map_err(|e| format!("{e}"))?;
    let v: Rat = v.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((c, v))
}

/// A failed run: exit code and message for stderr.
struct Failure(i32, String);

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure(EXIT_USAGE, msg.into())
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = match e {
            SolveError::InvalidPolyhedron(_) | SolveError::NotConvex => EXIT_INVALID,
            _ => EXIT_USAGE,
        };
        Failure(code, e.to_string())
    }
}

impl From<PolyhedronError> for Failure {
    fn from(e: PolyhedronError) -> Self {
        Failure(EXIT_INVALID, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Polyhedron, Failure> {
    parse_off_unchecked(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_valid(path: &Path) -> Result<Polyhedron, Failure> {
    let p = load(path)?;
    p.ensure_valid()?;
    Ok(p)
}

fn load_surface(path: &Path) -> Result<BTreeSet<tetrify_core::Triangle>, Failure> {
    json::parse_surface(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Runs the CLI with `argv` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn emit(out: &mut dyn Write, line: &str) -> Result<(), Failure> {
    writeln!(out, "{line}").map_err(|e| Failure::usage(format!("cannot write output: {e}")))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Gen {
            shape,
            twist,
            scale,
            spokes,
            n,
            seed,
            output,
        } => generate(shape, twist, scale, spokes, n, seed, &output),
        Command::Validate { file } => validate_cmd(&file, out),
        Command::Solve {
            file,
            mode,
            k,
            force,
            forbid,
            surface,
            node_limit,
            time_limit,
            stats,
        } => {
            let mode = match (mode, k) {
                (ModeArg::Decide, Some(k)) => Mode::Decide(k),
                (ModeArg::Decide, None) => return Err(Failure::usage("--mode decide needs --k")),
                (_, Some(_)) => return Err(Failure::usage("--k only applies to --mode decide")),
                (ModeArg::Min, None) => Mode::Minimize,
                (ModeArg::Max, None) => Mode::Maximize,
            };
            let mut spec = SolveSpec::new(mode);
            spec.forced_edges = force.into_iter().collect();
            spec.forbidden_edges = forbid.into_iter().collect();
            spec.surface = surface.as_deref().map(load_surface).transpose()?;
            spec.node_limit = node_limit;
            spec.time_limit_ms = time_limit;
            let p = load_valid(&file)?;
            let c = enumerate_candidates(&p).map_err(SolveError::from)?;
            let r = solve(&p, &c, &spec)?;
            emit(out, &json::result_to_json(&r, stats))?;
            Ok(match r.status {
                Status::Optimal | Status::Feasible => EXIT_OK,
                Status::Infeasible => EXIT_INFEASIBLE,
                Status::Limit => EXIT_LIMIT,
            })
        }
        Command::Star { file, vertex, best: _ } => {
            let p = load_valid(&file)?;
            let (v, t) = match vertex {
                Some(v) => (v, star_triangulation(&p, v)?),
                None => best_star(&p)?,
            };
            emit(out, &json::star_to_json(&t, v))?;
            Ok(EXIT_OK)
        }
        Command::Check {
            file,
            triangulation,
            surface,
        } => {
            let p = load_valid(&file)?;
            let t = json::parse_triangulation(&read(&triangulation)?)
                .map_err(|e| Failure::usage(format!("{}: {e}", triangulation.display())))?;
            let surface = surface.as_deref().map(load_surface).transpose()?;
            let ok = check_triangulation(&p, &t, surface.as_ref())?;
            emit(out, if ok { "valid" } else { "invalid" })?;
            Ok(if ok { EXIT_OK } else { EXIT_INVALID })
        }
        Command::Bounds { n } => {
            let (lo, hi) = bounds(n).map_err(|e| Failure::usage(e.to_string()))?;
            emit(out, &format!("{lo} {hi}"))?;
            Ok(EXIT_OK)
        }
    }
}

fn generate(
    shape: Shape,
    twist: Option<String>,
    scale: Option<Rat>,
    spokes: Option<usize>,
    n: Option<usize>,
    seed: Option<u64>,
    output: &Path,
) -> Result<i32, Failure> {
    let twisted = matches!(shape, Shape::Schoenhardt | Shape::SchoenhardtEnlarged);
    let unused = [
        ("--twist", twist.is_some() && !twisted),
        ("--scale", scale.is_some() && !twisted),
        ("--spokes", spokes.is_some() && !matches!(shape, Shape::Fan)),
        ("--n", n.is_some() && !matches!(shape, Shape::Random)),
        ("--seed", seed.is_some() && !matches!(shape, Shape::Random)),
    ];
    if let Some((flag, _)) = unused.iter().find(|(_, bad)| *bad) {
        return Err(Failure::usage(format!("{flag} does not apply to this shape")));
    }
    let gen_err = |e: GeneratorError| Failure::usage(e.to_string());
    let mut surface = None;
    let p = match shape {
        Shape::Tetrahedron => gen_tetrahedron(),
        Shape::Cube => gen_cube(),
        Shape::Prism => gen_prism(),
        Shape::Schoenhardt | Shape::SchoenhardtEnlarged => {
            let mut params = if matches!(shape, Shape::SchoenhardtEnlarged) {
                SchoenhardtParams::enlarged()
            } else {
                SchoenhardtParams::default()
            };
            if let Some(t) = twist {
                params.twist = parse_twist(&t).map_err(Failure::usage)?;
            }
            if let Some(s) = scale {
                params.base_scale = s;
            }
            gen_schoenhardt(&params).map_err(gen_err)?
        }
        Shape::Fan => gen_fan(&FanParams::new(spokes.unwrap_or(4))).map_err(gen_err)?,
        Shape::PrismTwisted => {
            let (p, s) = gen_prism_twisted_surface();
            surface = Some(s);
            p
        }
        Shape::Random => {
            let n = n.ok_or_else(|| Failure::usage("random needs --n"))?;
            gen_random_convex(n, seed.unwrap_or(0)).map_err(gen_err)?
        }
    };
    write(output, &write_off(&p))?;
    if let Some(s) = surface {
        write(&surface_path(output), &(json::surface_to_json(&s) + "\n"))?;
    }
    Ok(EXIT_OK)
}

/// `dir/name.off` becomes `dir/name.surface.json`.
pub fn surface_path(off: &Path) -> PathBuf {
    off.with_extension("surface.json")
}

fn validate_cmd(file: &Path, out: &mut dyn Write) -> Result<i32, Failure> {
    let p = load(file)?;
    let report = validate(&p);
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    emit(out, &format!("valid: {}", yes_no(report.is_ok())))?;
    for v in &report.violations {
        emit(out, &format!("violation: {v}"))?;
    }
    if !report.is_ok() {
        return Ok(EXIT_INVALID);
    }
    let volume = volume6(&p)? / Rat::from_int(6);
    emit(out, &format!("convex: {}", yes_no(report.convex)))?;
    emit(out, &format!("n: {}", report.vertex_count))?;
    emit(out, &format!("F: {}", report.face_count))?;
    emit(out, &format!("volume: {volume}"))?;
    Ok(EXIT_OK)
}
