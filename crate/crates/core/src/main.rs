use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use zlat::mlat::{parse_mlat, MlatDocument, MlatError};
use zlat::query::{run_on, run_standalone, Command, Format, QueryError, Status};
use zlat::verifier::MultMode;

/// Finite multiplicative lattices: z-elements, closures, theorem checks.
#[derive(Parser)]
#[command(name = "zlat", version)]
struct Cli {
    /// Emit JSON instead of text tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check that FILE describes a multiplicative lattice.
    Validate { file: PathBuf },
    /// Prime-type and irreducible-type flags per element.
    Classify {
        file: PathBuf,
        #[arg(long)]
        element: Option<String>,
    },
    /// M_a, m_a, cz(a) and every z-flag per element.
    Zmap { file: PathBuf },
    /// The z-closure of one element.
    Closure {
        file: PathBuf,
        #[arg(long)]
        element: String,
    },
    /// Run theorem checks (all of them unless --theorem is given).
    Verify {
        file: PathBuf,
        #[arg(long = "theorem", value_name = "ID")]
        theorems: Vec<String>,
    },
    /// Search the corpus of small structures for a counterexample.
    Search {
        #[arg(long)]
        property: String,
        #[arg(long)]
        max_size: usize,
        #[arg(long, default_value = "all")]
        mult: MultMode,
    },
    /// Print built-in structures as .mlat.
    Fixtures { name: Option<String> },
    /// Run the `query` directives embedded in FILE.
    Run { file: PathBuf },
}

const EXIT_INVALID: u8 = 1;
const EXIT_VIOLATION: u8 = 2;
const EXIT_PARSE: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = if cli.json { Format::Json } else { Format::Text };
    match run(cli.command, format) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { message, code, json }) => {
            match (format, json) {
                (Format::Json, Some(v)) => print!("{}", pretty(&v)),
                _ => eprintln!("zlat: {message}"),
            }
            ExitCode::from(code)
        }
    }
}

struct Failure {
    message: String,
    code: u8,
    /// Report printed instead of the message under `--json`.
    json: Option<Value>,
}

impl Failure {
    fn new(message: String, code: u8) -> Self {
        Failure { message, code, json: None }
    }

    fn query(file: Option<&Path>, e: QueryError) -> Self {
        let code = e.exit_code() as u8;
        let message = match (file, &e) {
            (Some(f), QueryError::Mlat(m)) if m.is_parse_error() => format!("{}:{m}", f.display()),
            (Some(f), _) => format!("{}: {e}", f.display()),
            (None, _) => e.to_string(),
        };
        Failure::new(message, code)
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn load(file: &Path) -> Result<MlatDocument, Failure> {
    let text =
        std::fs::read_to_string(file).map_err(|e| Failure::new(format!("{}: {e}", file.display()), EXIT_INVALID))?;
    parse_mlat(&text).map_err(|e| Failure::query(Some(file), e.into()))
}

fn exit_for(status: Status) -> u8 {
    match status {
        Status::Ok => 0,
        Status::Violation => EXIT_VIOLATION,
    }
}

fn run(cmd: Cmd, format: Format) -> Result<u8, Failure> {
    let (file, command) = match cmd {
        Cmd::Validate { file } => (file, Command::Validate),
        Cmd::Classify { file, element } => (file, Command::Classify { element }),
        Cmd::Zmap { file } => (file, Command::Zmap),
        Cmd::Closure { file, element } => (file, Command::Closure { element }),
        Cmd::Verify { file, theorems } => (file, Command::Verify { theorems }),
        Cmd::Search { property, max_size, mult } => {
            let out = run_standalone(&Command::Search { property, max_size, mode: mult }, format)
                .map_err(|e| Failure::query(None, e))?;
            print!("{}", out.body);
            return Ok(exit_for(out.status));
        }
        Cmd::Fixtures { name } => {
            let out = run_standalone(&Command::Fixtures { name }, format).map_err(|e| Failure::query(None, e))?;
            print!("{}", out.body);
            return Ok(0);
        }
        Cmd::Run { file } => return run_embedded(&file, format),
    };
    let doc = load(&file)?;
    let ml = doc.build().map_err(|e| invalid(&file, &command, e))?;
    let out = run_on(&ml, &command, format).map_err(|e| Failure::query(Some(&file), e))?;
    print!("{}", out.body);
    Ok(exit_for(out.status))
}

fn invalid(file: &Path, command: &Command, e: MlatError) -> Failure {
    let mut f = Failure::query(Some(file), e.into());
    if *command == Command::Validate {
        f.json = Some(json!({ "valid": false, "error": f.message }));
    }
    f
}

fn run_embedded(file: &Path, format: Format) -> Result<u8, Failure> {
    let doc = load(file)?;
    let ml = doc.build().map_err(|e| Failure::query(Some(file), e.into()))?;
    let mut code = 0;
    let mut results = Vec::new();
    for q in &doc.queries {
        let command: Command = q.parse().map_err(|e| Failure::query(Some(file), e))?;
        let out = run_on(&ml, &command, format).map_err(|e| Failure::query(Some(file), e))?;
        code = code.max(exit_for(out.status));
        match format {
            Format::Json => {
                let result: Value = serde_json::from_str(&out.body).unwrap_or(Value::String(out.body));
                results.push(json!({ "query": q, "result": result }));
            }
            Format::Text => print!("# {q}\n{}\n", out.body),
        }
    }
    if format == Format::Json {
        print!("{}", pretty(&Value::Array(results)));
    }
    Ok(code)
}
