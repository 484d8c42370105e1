//! `liewa`: analyze Lie algebras, build examples, and run the lattice and
//! orbit experiments from the command line.
//!
//! Exit codes: 0 success (whatever the verdict), 1 operational failure,
//! 2 unparseable input or arguments, 3 unrecognized real form.

use std::fmt::Display;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use liewa_core::catalog::{Catalog, CATALOG_ENV};
use liewa_core::constructions::Builder;
use liewa_core::format;
use liewa_core::orbit::{
    free_pair_witness, lattice_nilpotency_witness, nilpotency_witness, parse_point, partition_check,
    stabilizers_commute_on_box, BallAction, Point, Space, DEFAULT_MAX_RADIUS,
};
use liewa_core::report::{self, OrbitReport, PartitionReport, StabilizerReport, WitnessReport, SCHEMA_VERSION};
use liewa_core::selftest::{run_rep_check, run_selftest, RepCheck};
use liewa_core::structure::StructureError;
use serde_json::json;

const EXIT_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_UNRECOGNIZED: u8 = 3;

#[derive(Parser)]
#[command(name = "liewa", version, about = "Weak amenability of simply connected Lie groups, decided exactly")]
struct Cli {
    /// Emit structured JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Hard cap on ball radii.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_RADIUS)]
    max_radius: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide weak amenability for a structure-constant file ("-" for stdin).
    Analyze {
        file: PathBuf,
        /// Name recorded in the report; defaults to the file path.
        #[arg(long)]
        name: Option<String>,
    },
    /// Emit the structure-constant file of a built-in algebra, e.g. `build v_sl2 3`.
    Build {
        #[arg(required = true, num_args = 1..)]
        builder: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact checks of the rescaled representation and lattice groups.
    Rep {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "hom")]
        check: RepCheck,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Orbit of a point under the ball of the given radius.
    Orbit {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        vector: String,
        #[arg(long, default_value_t = 3)]
        radius: usize,
    },
    /// Ball elements fixing a point.
    Stabilizer {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        vector: String,
        #[arg(long, default_value_t = 4)]
        radius: usize,
    },
    /// Split a coordinate box into N0 and ball-connected classes.
    Partition {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long = "box", default_value_t = 3)]
        box_radius: i64,
        #[arg(long, default_value_t = 3)]
        radius: usize,
    },
    /// Check the orbit criterion hypotheses on a box.
    Witness {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long = "box", default_value_t = 3)]
        box_radius: i64,
        #[arg(long, default_value_t = 5)]
        radius: usize,
    },
    /// Run every seeded property suite.
    Selftest {
        #[arg(long, default_value_t = 25)]
        trials: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SpaceArgs {
    /// Act on Z^m.
    #[arg(long)]
    m: Option<usize>,
    /// Act on the Heisenberg lattice of dimension 2n+1.
    #[arg(long)]
    n: Option<usize>,
}

impl SpaceArgs {
    fn space(&self) -> Result<Space, Failure> {
        match (self.m, self.n) {
            (Some(m), None) if m >= 1 => Ok(Space::Lattice { m }),
            (None, Some(n)) if n >= 1 => Ok(Space::Heisenberg { n }),
            _ => Err(Failure::usage("--m and --n must be at least 1")),
        }
    }
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn usage(message: impl Display) -> Self {
        Failure { code: EXIT_PARSE, kind: "usage", message: message.to_string() }
    }

    fn parse(message: impl Display) -> Self {
        Failure { code: EXIT_PARSE, kind: "parse_error", message: message.to_string() }
    }

    fn operational(message: impl Display) -> Self {
        Failure { code: EXIT_FAILURE, kind: "failure", message: message.to_string() }
    }
}

impl From<StructureError> for Failure {
    fn from(e: StructureError) -> Self {
        let code = if matches!(e, StructureError::UnrecognizedRealForm { .. }) { EXIT_UNRECOGNIZED } else { EXIT_FAILURE };
        let kind = if code == EXIT_UNRECOGNIZED { "unrecognized_real_form" } else { "failure" };
        Failure { code, kind, message: e.to_string() }
    }
}

struct Output {
    json: bool,
}

impl Output {
    fn emit(&self, json: String, text: impl Display) {
        if self.json {
            write_stdout(&json);
        } else {
            write_stdout(&format!("{text}\n"));
        }
    }
}

/// Writes to stdout, ignoring failures such as a closed pipe.
fn write_stdout(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

fn load_catalog() -> Result<Catalog, Failure> {
    Catalog::from_env().map_err(|e| Failure::operational(format!("{e} (set via {CATALOG_ENV} or built-in)")))
}

fn check_radius(radius: usize, cap: usize) -> Result<(), Failure> {
    if radius > cap {
        return Err(Failure::usage(format!("radius {radius} exceeds --max-radius {cap}")));
    }
    Ok(())
}

fn point_arg(space: Space, text: &str) -> Result<Point, Failure> {
    let p = parse_point(text).ok_or_else(|| Failure::usage(format!("bad --vector '{text}'")))?;
    if p.len() != space.point_dim() {
        return Err(Failure::usage(format!("--vector needs {} coordinates for {space}, got {}", space.point_dim(), p.len())));
    }
    Ok(p)
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(Failure::operational)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::operational(format!("cannot read {}: {e}", path.display())))
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let out = Output { json: cli.json };
    match cli.command {
        Command::Analyze { file, name } => {
            let text = read_input(&file)?;
            let g = format::parse(&text).map_err(Failure::parse)?;
            let catalog = load_catalog()?;
            let name = name.unwrap_or_else(|| file.display().to_string());
            let r = report::analyze(&name, &g, &catalog)?;
            out.emit(r.to_json(), &r);
        }
        Command::Build { builder, output } => {
            let tokens: Vec<&str> = builder.iter().map(String::as_str).collect();
            let b = Builder::parse_all(&tokens).map_err(Failure::usage)?;
            let g = b.build().map_err(Failure::usage)?;
            let text = format::emit(&g);
            match output {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| Failure::operational(format!("cannot write {}: {e}", path.display())))?,
                None => write_stdout(&text),
            }
        }
        Command::Rep { m, check, trials } => {
            if m == 0 {
                return Err(Failure::usage("--m must be at least 1"));
            }
            let r = run_rep_check(check, m, trials, cli.seed);
            let ok = r.ok();
            let json = serde_json::to_string_pretty(&json!({"schema_version": SCHEMA_VERSION, "seed": cli.seed, "result": r}))
                .expect("serializable");
            out.emit(json + "\n", &r);
            if !ok {
                return Ok(EXIT_FAILURE);
            }
        }
        Command::Orbit { space, vector, radius } => {
            check_radius(radius, cli.max_radius)?;
            let space = space.space()?;
            let x = point_arg(space, &vector)?;
            let r = OrbitReport::new(&BallAction::new(space, radius), &x);
            out.emit(r.to_json(), &r);
        }
        Command::Stabilizer { space, vector, radius } => {
            check_radius(radius, cli.max_radius)?;
            let space = space.space()?;
            let x = point_arg(space, &vector)?;
            let r = StabilizerReport::new(&BallAction::new(space, radius), &x);
            out.emit(r.to_json(), &r);
        }
        Command::Partition { space, box_radius, radius } => {
            check_radius(radius, cli.max_radius)?;
            let space = space.space()?;
            if box_radius < 0 {
                return Err(Failure::usage("--box must be nonnegative"));
            }
            let r = PartitionReport::from(&partition_check(space, box_radius, radius));
            out.emit(r.to_json(), &r);
        }
        Command::Witness { space, box_radius, radius } => {
            check_radius(radius, cli.max_radius)?;
            let space = space.space()?;
            if box_radius < 0 {
                return Err(Failure::usage("--box must be nonnegative"));
            }
            let nilpotency = match space {
                Space::Lattice { m } => lattice_nilpotency_witness(m),
                Space::Heisenberg { n } => nilpotency_witness(n),
            };
            let stab = stabilizers_commute_on_box(space, box_radius, radius);
            let r = WitnessReport {
                schema_version: SCHEMA_VERSION,
                space,
                radius,
                box_radius,
                free_pair: free_pair_witness(radius.max(1)),
                nilpotency,
                stabilizers_commute: stab.is_ok(),
                counterexample: stab.err().map(|e| liewa_core::orbit::format_point(&e.0)),
                partition_consistent: partition_check(space, box_radius, radius.min(3)).is_consistent(),
            };
            out.emit(r.to_json(), &r);
            if !r.holds() {
                return Ok(EXIT_FAILURE);
            }
        }
        Command::Selftest { trials } => {
            let catalog = load_catalog()?;
            if trials == 0 {
                eprintln!("warning: --trials 0 runs no checks; passing vacuously");
            }
            let r = run_selftest(trials, cli.seed, &catalog);
            out.emit(r.to_json(), &r);
            if !r.ok() {
                return Ok(EXIT_FAILURE);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { 0 });
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if json {
                let body = json!({"schema_version": SCHEMA_VERSION, "error": {"kind": f.kind, "message": f.message}});
                write_stdout(&format!("{}\n", serde_json::to_string_pretty(&body).expect("serializable")));
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
