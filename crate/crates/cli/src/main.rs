use clap::{Parser, Subcommand};
use hopfkit::based::verify_based;
use hopfkit::families::{parse_family, Family, FamilyError};
use hopfkit::hopf::{Check, FdHopf, HopfFile};
use hopfkit::scalars::FieldDesc;
use hopfkit::suites::{run_suite, SuiteError, SuiteReport};
use serde::Serialize;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "hopfkit", version, about = "Exact checks for Hopf algebras and their finite duals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Truncation degree for word-based checks.
    #[arg(long, global = true, default_value_t = 6)]
    degree: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Coefficient field override: Q, Q(zetaN), GF(p).
    #[arg(long, global = true)]
    field: Option<FieldDesc>,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Worker threads for concurrent checks.
    #[arg(long, global = true, env = "HOPFKIT_JOBS")]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Hopf axioms of a structure-constant file or family.
    Verify { input: String },
    /// Emit the dual of a finite-dimensional Hopf algebra as a structure-constant file.
    Dual { input: String },
    /// Run a named suite, optionally on a non-default family.
    Suite { name: String, family: Option<String> },
    /// Based orbits against the finite orbit engine.
    Orbits { input: String },
    /// Coideal complement checks.
    Cosplit { input: String },
}

enum Status {
    Pass,
    Fail,
    Conditional,
}

impl Status {
    fn label(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Conditional => "conditional",
        }
    }
    fn code(&self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Conditional => 3,
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Compute(String),
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SuiteError> for CliError {
    fn from(e: SuiteError) -> Self {
        match e {
            SuiteError::UnknownSuite(_) | SuiteError::NotApplicable(..) | SuiteError::Family(_) => CliError::Input(e.to_string()),
            other => CliError::Compute(other.to_string()),
        }
    }
}

struct Outcome {
    status: Status,
    lines: Vec<(bool, String, Option<String>)>,
    report: Value,
    /// A structure-constant file written to stdout in place of the check lines.
    emit: Option<String>,
}

enum Input {
    File(FdHopf),
    Family(Family),
}

fn load(input: &str, field: Option<FieldDesc>) -> Result<Input, CliError> {
    if input.ends_with(".json") || Path::new(input).is_file() {
        let text = std::fs::read_to_string(input).map_err(|e| CliError::Input(format!("{input}: {e}")))?;
        let file: HopfFile = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{input}: parse error: {e}")))?;
        let h = file.to_hopf().map_err(|e| CliError::Input(format!("{input}: {e}")))?;
        return Ok(Input::File(match field {
            Some(f) => h.coerce(&f).map_err(|e| CliError::Input(e.to_string()))?,
            None => h,
        }));
    }
    Ok(Input::Family(parse_family(input, field)?))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn check_line(name: &str, c: &Check) -> (bool, String, Option<String>) {
    (c.pass, name.to_string(), c.witness.clone())
}

fn verify_fd(h: &FdHopf) -> Outcome {
    let r = h.verify();
    let lines = [
        ("associativity", &r.associativity),
        ("unit", &r.unit),
        ("coassociativity", &r.coassociativity),
        ("counit", &r.counit),
        ("Δ is an algebra map", &r.comult_algebra_map),
        ("ε is an algebra map", &r.counit_algebra_map),
        ("antipode", &r.antipode),
    ]
    .iter()
    .map(|(n, c)| check_line(n, c))
    .collect();
    Outcome { status: if r.all_pass() { Status::Pass } else { Status::Fail }, lines, report: to_value(&r), emit: None }
}

fn cmd_verify(input: &str, cli: &Cli) -> Result<Outcome, CliError> {
    match load(input, cli.field)? {
        Input::File(h) => Ok(verify_fd(&h)),
        Input::Family(Family::Based(h)) => {
            let r = verify_based(h.as_ref(), cli.degree);
            let lines = r.checks.iter().map(|c| check_line(&c.name, &c.check)).collect();
            Ok(Outcome { status: if r.pass() { Status::Pass } else { Status::Fail }, lines, report: to_value(&r), emit: None })
        }
        Input::Family(Family::Restricted(u)) => {
            let mut out = verify_fd(&u.hbar);
            let r = u.report()?;
            out.lines.push(check_line("(x⊗1 + 1⊗x)^p = x^p⊗1 + 1⊗x^p", &r.y_primitive));
            out.lines.push(check_line("x^p − x^[p] is central", &r.y_central));
            if !(r.y_primitive.pass && r.y_central.pass) {
                out.status = Status::Fail;
            }
            out.report = json!({ "hopf": out.report, "restricted": to_value(&r) });
            Ok(out)
        }
    }
}

fn cmd_dual(input: &str, cli: &Cli) -> Result<Outcome, CliError> {
    let h = match load(input, cli.field)? {
        Input::File(h) => h,
        Input::Family(Family::Restricted(u)) => u.hbar,
        Input::Family(Family::Based(_)) => return Err(CliError::Input("finite dual of based families is handled by suites, not cmd_dual".into())),
    };
    let d = h.dual();
    let round_trip = Check::from_bool(d.dual().same_structure(&h), || "dual of the dual differs from the input".into());
    let axioms = d.verify();
    let ok = round_trip.pass && axioms.all_pass();
    Ok(Outcome {
        status: if ok { Status::Pass } else { Status::Fail },
        lines: vec![check_line("dual passes the Hopf axioms", &Check::from_bool(axioms.all_pass(), || "axiom failure".into())), check_line("dual ∘ dual = id", &round_trip)],
        report: json!({ "round_trip": to_value(&round_trip) }),
        emit: Some(serde_json::to_string_pretty(&HopfFile::from_hopf(&d)).expect("json")),
    })
}

fn suite_outcome(r: SuiteReport) -> Outcome {
    let status = if !r.pass() {
        Status::Fail
    } else if r.conditional {
        Status::Conditional
    } else {
        Status::Pass
    };
    let lines = r.checks.iter().map(|c| (c.pass, c.name.clone(), c.witness.clone().or_else(|| c.detail.clone()))).collect();
    Outcome { status, lines, report: to_value(&r), emit: None }
}

fn family_only(input: &str) -> Result<&str, CliError> {
    if input.ends_with(".json") || Path::new(input).is_file() {
        return Err(CliError::Input(format!("{input}: this command needs a family reference")));
    }
    Ok(input)
}

fn run(cli: &Cli) -> Result<(String, String, Outcome), CliError> {
    let (cmd, input, out) = match &cli.command {
        Command::Verify { input } => ("verify", input.clone(), cmd_verify(input, cli)?),
        Command::Dual { input } => ("dual", input.clone(), cmd_dual(input, cli)?),
        Command::Suite { name, family } => {
            let r = run_suite(name, family.as_deref(), cli.field, cli.degree, cli.seed)?;
            ("suite", format!("{name} {}", r.family), suite_outcome(r))
        }
        Command::Orbits { input } => ("orbits", input.clone(), suite_outcome(run_suite("orbits", Some(family_only(input)?), cli.field, cli.degree, cli.seed)?)),
        Command::Cosplit { input } => ("cosplit", input.clone(), suite_outcome(run_suite("cosplit", Some(family_only(input)?), cli.field, cli.degree, cli.seed)?)),
    };
    Ok((cmd.to_string(), input, out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let start = Instant::now();
    let (cmd, input, out) = match run(&cli) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(match e {
                CliError::Input(_) => 2,
                CliError::Compute(_) => 1,
            });
        }
    };
    let mut text = String::new();
    for (pass, name, note) in &out.lines {
        let tag = if *pass { "PASS" } else { "FAIL" };
        match note {
            Some(n) => text += &format!("{tag} {name}  [{n}]\n"),
            None => text += &format!("{tag} {name}\n"),
        }
    }
    text += &format!("{}: {}", cmd, out.status.label());
    match &out.emit {
        Some(file) => {
            println!("{file}");
            eprintln!("{text}");
        }
        None => println!("{text}"),
    }
    eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
    if let Some(path) = &cli.json {
        let doc = json!({
            "schema": SCHEMA,
            "tool": format!("hopfkit {}", env!("CARGO_PKG_VERSION")),
            "command": cmd,
            "input": input,
            "degree": cli.degree,
            "seed": cli.seed,
            "field": cli.field.map(|f| f.to_string()),
            "status": out.status.label(),
            "report": out.report,
        });
        let text = serde_json::to_string_pretty(&doc).expect("json") + "\n";
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(out.status.code())
}
