//! `icat`: verify structures and run constructions from a JSON document.
//!
//! Exit status is 0 when every check passes, 1 when a law fails and 2 on
//! malformed input.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use icat_core::document::{canonical, parse, pretty, Document};
use icat_core::task::{run, run_task, TaskOutput};
use icat_core::{fixtures, Error, Field};
use serde_json::{json, Map, Value};

#[derive(Parser, Debug)]
#[command(name = "icat", version, about = "Exact verification of internal categories, Kleisli objects and corings")]
struct Cli {
    /// Report format on stdout.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    report: Format,
    /// Field override: `Q` or `F<p>` for a prime p.
    #[arg(long, env = "ICAT_FIELD", global = true)]
    field: Option<String>,
    /// Write the constructed structure to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the laws of one named definition, or of all of them.
    Verify {
        file: PathBuf,
        #[arg(long)]
        target: Option<String>,
    },
    /// The cotensor product of two bicomodules.
    Cotensor { file: PathBuf, left: String, right: String },
    /// The Kleisli object of a monad.
    Kleisli { file: PathBuf, monad: String },
    /// The co-Kleisli object of a comonad, optionally compared with a Kleisli object.
    Cokleisli {
        file: PathBuf,
        comonad: String,
        #[arg(long, requires = "monad")]
        adjunction: Option<String>,
        #[arg(long, requires = "adjunction")]
        monad: Option<String>,
    },
    /// The Kleisli object of an opmonad.
    Opkleisli { file: PathBuf, opmonad: String },
    /// An adjunction and its round trip through bi-natural maps.
    AdjointCheck { file: PathBuf, adjunction: String },
    /// The correspondence between t-algebras and functors out of the Kleisli object.
    Theta {
        file: PathBuf,
        monad: String,
        #[arg(long)]
        codomain: Option<String>,
        /// Coordinates searched, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Option<Vec<i64>>,
    },
    /// Twisted corings of a twisting datum.
    Twist { file: PathBuf, datum: String },
    /// The Kleisli coring of monad data on a Sweedler coring.
    Sweedler { file: PathBuf, data: String },
    /// Canonical map, translation map and Miyashita-Ulbrich action.
    HopfGalois {
        file: PathBuf,
        instance: String,
        /// A group-like of H, comma separated coordinates.
        #[arg(long, requires_all = ["m", "u"], allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
    },
    /// The internal Kleisli object against the classical Kleisli category.
    OracleCompare { file: PathBuf, monad: String },
    /// A task named in the document.
    Run { file: PathBuf, task: String },
    /// Print a bundled fixture document.
    Fixture { name: String },
}

enum Failure {
    Input(String),
    Law(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let text = format!("{}: {e}", e.name());
        if e.is_input_error() {
            Failure::Input(text)
        } else {
            Failure::Law(text)
        }
    }
}

fn parse_field(text: &str) -> Result<Field, Failure> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(Field::Rational);
    }
    let p = t
        .strip_prefix(['F', 'f'])
        .map(|rest| rest.trim_start_matches(['p', 'P', ':']))
        .and_then(|n| n.parse::<u64>().ok())
        .ok_or_else(|| Failure::Input(format!("unknown field `{text}`")))?;
    Field::prime(p).map_err(|e| Failure::Input(e.to_string()))
}

fn load(path: &Path, field: Option<Field>) -> Result<Document, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    // definitions that fail their constructors are malformed input as well
    parse(&text, field).map_err(|e| Failure::Input(format!("{}: {e}", e.name())))
}

fn vector(text: &str) -> Value {
    Value::Array(text.split(',').map(|s| json!(s.trim())).collect())
}

fn task_for(command: &Command) -> Option<(&Path, Value)> {
    let mut def = Map::new();
    let mut put = |k: &str, v: Value| {
        def.insert(k.to_string(), v);
    };
    let file = match command {
        Command::Verify { file, target } => {
            put("op", json!("verify"));
            if let Some(t) = target {
                put("target", json!(t));
            }
            file
        }
        Command::Cotensor { file, left, right } => {
            put("op", json!("cotensor"));
            put("left", json!(left));
            put("right", json!(right));
            file
        }
        Command::Kleisli { file, monad } => {
            put("op", json!("kleisli"));
            put("monad", json!(monad));
            file
        }
        Command::Cokleisli {
            file,
            comonad,
            adjunction,
            monad,
        } => {
            put("op", json!("cokleisli"));
            put("comonad", json!(comonad));
            if let (Some(a), Some(m)) = (adjunction, monad) {
                put("adjunction", json!(a));
                put("monad", json!(m));
            }
            file
        }
        Command::Opkleisli { file, opmonad } => {
            put("op", json!("opkleisli"));
            put("opmonad", json!(opmonad));
            file
        }
        Command::AdjointCheck { file, adjunction } => {
            put("op", json!("adjoint-check"));
            put("adjunction", json!(adjunction));
            file
        }
        Command::Theta {
            file,
            monad,
            codomain,
            values,
        } => {
            put("op", json!("theta"));
            put("monad", json!(monad));
            if let Some(c) = codomain {
                put("codomain", json!(c));
            }
            if let Some(v) = values {
                put("values", json!(v));
            }
            file
        }
        Command::Twist { file, datum } => {
            put("op", json!("twist"));
            put("datum", json!(datum));
            file
        }
        Command::Sweedler { file, data } => {
            put("op", json!("sweedler"));
            put("data", json!(data));
            file
        }
        Command::HopfGalois { file, instance, x, m, u } => {
            put("op", json!("hopf-galois"));
            put("instance", json!(instance));
            if let (Some(x), Some(m), Some(u)) = (x, m, u) {
                put("x", vector(x));
                put("m", vector(m));
                put("u", vector(u));
            }
            file
        }
        Command::OracleCompare { file, monad } => {
            put("op", json!("oracle-compare"));
            put("monad", json!(monad));
            file
        }
        Command::Run { .. } | Command::Fixture { .. } => return None,
    };
    Some((file, Value::Object(def)))
}

/// Writes to stdout, ignoring a closed pipe.
fn print(text: &str) {
    let _ = io::stdout().write_all(text.as_bytes());
}

fn emit(cli: &Cli, out: &TaskOutput) -> Result<(), Failure> {
    let output = out.output.as_ref().map(canonical);
    if let (Some(path), Some(v)) = (&cli.out, &output) {
        fs::write(path, pretty(v)).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    match cli.report {
        Format::Json => {
            let mut v = json!({"report": out.report.to_json()});
            if cli.out.is_none() {
                if let Some(o) = output {
                    v["output"] = o;
                }
            }
            print(&pretty(&v));
        }
        Format::Text => {
            print(&out.report.to_text());
            if let (None, Some(o)) = (&cli.out, output) {
                print(&format!("output:\n{}", pretty(&o)));
            }
        }
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<bool, Failure> {
    let field = cli.field.as_deref().map(parse_field).transpose()?;
    if let Command::Fixture { name } = &cli.command {
        let text = fixtures::source(name).ok_or_else(|| Failure::Input(format!("no fixture named {name}")))?;
        print(text);
        return Ok(true);
    }
    let out = match &cli.command {
        Command::Run { file, task } => run(&load(file, field)?, task)?,
        other => {
            let (file, def) = task_for(other).expect("task command");
            run_task(&load(file, field)?, &def)?
        }
    };
    emit(cli, &out)?;
    Ok(out.report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Law(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
