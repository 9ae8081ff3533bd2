use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mod3orient::dot::to_dot;
use mod3orient::format::{parse_orientation, parse_smap, write_orientation, write_smap};
use mod3orient::instances::{self, FIXTURE_NAMES};
use mod3orient::oracle::{brute_force_orient_jobs, verify, OracleError, SearchOutcome, Violation, DEFAULT_EDGE_LIMIT};
use mod3orient::reductions::{solve_logged, ReductionKind};
use mod3orient::{SolveError, SolveOptions, SurfaceMap};

#[derive(Parser)]
#[command(name = "mod3orient", version, about = "Orient surface triangulations so every outdegree is a positive multiple of 3")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a map and report its counts, genus and triangulation status.
    Validate { map: PathBuf },
    /// Print the Euler genus.
    Genus { map: PathBuf },
    /// Compute an orientation.
    Orient {
        map: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Check the exploration invariants after every step.
        #[arg(long)]
        check_invariants: bool,
        /// Write the step log to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Check an orientation file against a map.
    Verify { map: PathBuf, orientation: PathBuf },
    /// Exhaustive search for a valid orientation on small maps.
    Oracle {
        map: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_EDGE_LIMIT)]
        max_edges: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Write a built-in fixture, optionally with stacked face subdivisions.
    Gen {
        #[arg(long)]
        fixture: String,
        #[arg(long, default_value_t = 0)]
        subdivide: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Render an orientation as Graphviz DOT.
    ExportDot {
        map: PathBuf,
        /// Render this orientation instead of solving.
        #[arg(long, conflicts_with = "classes")]
        orientation: Option<PathBuf>,
        /// Colour edges by exploration class.
        #[arg(long)]
        classes: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(1, format!("{}: {e}", path.display())))
}

fn load_map(path: &Path) -> Result<SurfaceMap, Failure> {
    parse_smap(&read(path)?).map_err(|e| fail(1, format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Outcome {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| fail(1, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn solve_error(e: SolveError) -> Failure {
    let code = match e {
        SolveError::InternalInvariantViolation(_) => 3,
        SolveError::GenusTooSmall { .. } | SolveError::NotATriangulation(_) => 1,
    };
    fail(code, e.to_string())
}

fn describe(v: &Violation) -> String {
    match v {
        Violation::TooSmall { vertex, outdeg } => format!("vertex {vertex} outdegree {outdeg} below 3"),
        Violation::NotDivisible { vertex, outdeg } => format!("vertex {vertex} outdegree {outdeg} not divisible by 3"),
    }
}

fn run(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::Validate { map } => {
            let m = load_map(&map)?;
            let tri = match m.triangulation_defect() {
                None => "yes".to_string(),
                Some(d) => d.to_string(),
            };
            println!(
                "vertices {} edges {} faces {} genus {} orientable {} triangulation {tri}",
                m.num_vertices(),
                m.num_edges(),
                m.num_faces(),
                m.euler_genus(),
                if m.is_orientable() { "yes" } else { "no" }
            );
            match m.triangulation_defect() {
                None => Ok(()),
                Some(d) => Err(fail(2, format!("not a triangulation: {d}"))),
            }
        }
        Cmd::Genus { map } => {
            println!("genus {}", load_map(&map)?.euler_genus());
            Ok(())
        }
        Cmd::Orient { map, output, check_invariants, trace } => {
            let m = load_map(&map)?;
            let opts = SolveOptions { check_invariants, trace: trace.is_some() };
            let mut log = Vec::new();
            let result = solve_logged(&m, opts, &mut log);
            if let Some(p) = &trace {
                let mut text = log.join("\n");
                if !text.is_empty() {
                    text.push('\n');
                }
                fs::write(p, text).map_err(|e| fail(1, format!("{}: {e}", p.display())))?;
            }
            let report = result.map_err(|e| {
                let mut f = solve_error(e);
                if f.code == 3 && trace.is_none() && !log.is_empty() {
                    f.message = format!("{}\n{}", log.join("\n"), f.message);
                }
                f
            })?;
            eprintln!(
                "reductions 3-disk {} 4-disk {} steps {}",
                report.count(ReductionKind::ThreeDisk),
                report.count(ReductionKind::FourDisk),
                report.steps
            );
            emit(output.as_deref(), &write_orientation(&report.orientation))
        }
        Cmd::Verify { map, orientation } => {
            let m = load_map(&map)?;
            let text = read(&orientation)?;
            let o = parse_orientation(&m, &text).map_err(|e| fail(1, format!("{}: {e}", orientation.display())))?;
            let report = match verify(&m, &o) {
                Ok(r) => r,
                Err(e) => {
                    println!("fail {e}");
                    return Err(fail(2, e.to_string()));
                }
            };
            match report.violations.first() {
                None => {
                    println!("pass");
                    Ok(())
                }
                Some(v) => {
                    println!("fail {}", describe(v));
                    Err(fail(2, format!("{} violation(s), first: {}", report.violations.len(), describe(v))))
                }
            }
        }
        Cmd::Oracle { map, output, max_edges, jobs } => {
            let m = load_map(&map)?;
            match brute_force_orient_jobs(&m, max_edges, jobs.max(1)) {
                Ok(SearchOutcome::Found(o)) => emit(output.as_deref(), &write_orientation(&o)),
                Ok(SearchOutcome::Unsatisfiable) => {
                    println!("unsatisfiable");
                    Err(fail(2, "no valid orientation exists"))
                }
                Err(e @ OracleError::LimitExceeded { .. }) => Err(fail(1, e.to_string())),
                Err(e) => Err(fail(3, e.to_string())),
            }
        }
        Cmd::Gen { fixture, subdivide, output } => {
            let base = instances::fixture(&fixture).ok_or_else(|| {
                fail(1, format!("unknown fixture {fixture}; known: {}", FIXTURE_NAMES.join(", ")))
            })?;
            let m = instances::subdivide_face(&base, 0, subdivide);
            emit(output.as_deref(), &write_smap(&m))
        }
        Cmd::ExportDot { map, orientation, classes, output } => {
            let m = load_map(&map)?;
            let dot = match orientation {
                Some(p) => {
                    let o = parse_orientation(&m, &read(&p)?).map_err(|e| fail(1, format!("{}: {e}", p.display())))?;
                    to_dot(&m, &o, None)
                }
                None => {
                    let report = mod3orient::solve(&m, SolveOptions::default()).map_err(solve_error)?;
                    to_dot(&m, &report.orientation, classes.then_some(report.classes.as_slice()))
                }
            };
            emit(output.as_deref(), &dot)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
