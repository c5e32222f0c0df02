//! The `pisys` command line.
//!
//! Exit codes: 0 on success, 2 for domain errors (JSON on stderr), 64 for
//! usage errors and 74 for I/O errors.

use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::catalog;
use crate::criteria;
use crate::error::Error;
use crate::gcm::Gcm;
use crate::io;
use crate::maximality::{self, Budgets};
use crate::pisystem;
use crate::principles::{self, Params};
use crate::roots::{RootContext, RootVec, DEFAULT_HEIGHT};
use crate::search::{self, Certificate, SearchOutcome, DEFAULT_BUDGET};

pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

#[derive(Parser, Debug)]
#[command(name = "pisys", version, about = "π-systems of symmetrizable Kac-Moody algebras")]
pub struct Cli {
    /// Number of worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Type, determinant and signature of a diagram.
    Classify { diagram: String },
    /// Positive real roots up to a height bound, or the status of one vector.
    Roots {
        diagram: String,
        #[arg(long, default_value_t = DEFAULT_HEIGHT)]
        height: u64,
        /// Test this vector (JSON array) instead of listing.
        #[arg(long)]
        test: Option<String>,
    },
    /// Checks a set of roots (JSON array of arrays) for being a π-system.
    Check {
        diagram: String,
        #[arg(long)]
        roots: String,
    },
    /// Applies a construction; parameters as JSON, e.g.
    /// '{"kind":"a","zero_node":1,"attach_node":0}'.
    Principle {
        diagram: String,
        #[arg(long)]
        params: String,
    },
    /// Runs the necessary conditions for B ⪯ A.
    Refute { a: String, b: String },
    /// Decides B ⪯ A as far as the criteria and a bounded search allow.
    Compare {
        a: String,
        b: String,
        #[arg(long, default_value_t = DEFAULT_HEIGHT)]
        height: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Enumerates hyperbolic diagrams as JSON lines.
    Catalog {
        #[arg(long, default_value_t = 3)]
        rank_min: usize,
        #[arg(long, default_value_t = 10)]
        rank_max: usize,
        /// Include non-symmetrizable diagrams.
        #[arg(long)]
        all: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Classifies every catalog diagram as maximal or not.
    Maximality {
        /// Catalog in JSON lines (default: the built-in symmetrizable catalog).
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_HEIGHT)]
        height: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET / 10)]
        budget: u64,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Renders a diagram.
    Render {
        diagram: String,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

enum Failure {
    Domain(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Out = std::result::Result<String, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("--jobs must be positive");
            return EXIT_USAGE;
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    match execute(cli.command) {
        Ok(s) => {
            if !s.is_empty() {
                let _ = writeln!(std::io::stdout(), "{s}");
            }
            0
        }
        Err(Failure::Domain(e)) => {
            eprintln!("{}", json!({ "error": e.code(), "message": e.to_string() }));
            EXIT_DOMAIN
        }
        Err(Failure::Io(m)) => {
            eprintln!("{}", json!({ "error": "IoError", "message": m }));
            EXIT_IO
        }
        Err(Failure::Usage(m)) => {
            eprintln!("{}", json!({ "error": "UsageError", "message": m }));
            EXIT_USAGE
        }
    }
}

/// A path to a diagram JSON file, or a name such as `E10`, `G219`, `A8++`.
fn load_diagram(arg: &str) -> std::result::Result<Gcm, Failure> {
    let p = Path::new(arg);
    if p.exists() {
        let text = std::fs::read_to_string(p).map_err(|e| Failure::Io(format!("{arg}: {e}")))?;
        return Ok(io::parse_diagram(&text)?);
    }
    if arg.ends_with(".json") {
        return Err(Failure::Io(format!("{arg}: no such file")));
    }
    Ok(io::by_name(arg)?)
}

fn parse_json<T: serde::de::DeserializeOwned>(what: &str, s: &str) -> std::result::Result<T, Failure> {
    serde_json::from_str(s).map_err(|e| Failure::Usage(format!("{what}: {e}")))
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Out {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
            Ok(String::new())
        }
        None => Ok(text.trim_end().to_string()),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn execute(cmd: Command) -> Out {
    match cmd {
        Command::Classify { diagram } => {
            let g = load_diagram(&diagram)?;
            let mut v = io::class_json(&g.classify()?);
            v["rank"] = json!(g.rank());
            v["symmetrizable"] = json!(g.is_symmetrizable());
            if let Some(n) = crate::families::describe(&g) {
                v["name"] = json!(n);
            }
            Ok(pretty(&v))
        }
        Command::Roots { diagram, height, test } => {
            let g = load_diagram(&diagram)?;
            let ctx = RootContext::new(g)?;
            if let Some(t) = test {
                let x: RootVec = parse_json("--test", &t)?;
                let st = ctx.is_root(&x)?;
                return Ok(pretty(&json!({ "vector": x, "status": format!("{st:?}") })));
            }
            let r = ctx.real_roots_bounded(Some(height))?;
            Ok(pretty(&json!({ "height": height, "count": r.len(), "roots": r })))
        }
        Command::Check { diagram, roots } => {
            let g = load_diagram(&diagram)?;
            let ctx = RootContext::new(g)?;
            let sigma: Vec<RootVec> = parse_json("--roots", &roots)?;
            let rep = pisystem::check(&ctx, &sigma)?;
            let v = json!({
                "valid": rep.valid,
                "linearly_independent": rep.linearly_independent,
                "violations": rep.violations.iter().map(|(i, j, s)| json!([i, j, format!("{s:?}")])).collect::<Vec<_>>(),
                "pairings": rep.pairings,
                "type": rep.type_matrix.as_ref().map(io::diagram_json),
                "type_class": rep.type_class.as_ref().map(io::class_json),
            });
            Ok(pretty(&v))
        }
        Command::Principle { diagram, params } => {
            let g = load_diagram(&diagram)?;
            let p: Params = parse_json("--params", &params)?;
            let app = apply_params(&g, &p)?;
            let cert = Certificate::from_principle(&app);
            let v = json!({
                "certificate": cert,
                "type": io::diagram_json(&app.predicted),
                "checked_in_ambient": app.checked_in_ambient,
            });
            Ok(pretty(&v))
        }
        Command::Refute { a, b } => {
            let (ga, gb) = (load_diagram(&a)?, load_diagram(&b)?);
            let n = criteria::necessary_checks(&ga, &gb)?;
            let f = criteria::forbidden_check(&ga, &gb)?;
            let verdict = if n.is_refuted() || f.is_refuted() { "Refuted" } else { "Possible" };
            Ok(pretty(&json!({ "verdict": verdict, "necessary": n, "forbidden": f })))
        }
        Command::Compare { a, b, height, budget } => {
            if height == 0 || budget == 0 {
                return Err(Failure::Usage("bounds must be positive".into()));
            }
            let (ga, gb) = (load_diagram(&a)?, load_diagram(&b)?);
            let v = match search::find_pisystem(&ga, &gb, height, budget)? {
                SearchOutcome::Found(c) => json!({ "verdict": "Certified", "certificate": c }),
                SearchOutcome::Refuted(r) => json!({ "verdict": "Refuted", "ruling": r }),
                SearchOutcome::NotFoundWithinBounds => json!({ "verdict": "Unknown", "reason": "NotFoundWithinBounds" }),
                SearchOutcome::BudgetExhausted => json!({ "verdict": "Unknown", "reason": "BudgetExhausted" }),
            };
            Ok(pretty(&v))
        }
        Command::Catalog { rank_min, rank_max, all, output } => {
            let mut entries = catalog::enumerate_hyperbolic(rank_min, rank_max, !all)?;
            catalog::attach_serials(&mut entries, &catalog::builtin_serials());
            let mut buf = Vec::new();
            catalog::write_jsonl(&entries, &mut buf).map_err(|e| Failure::Io(e.to_string()))?;
            write_out(&output, &String::from_utf8(buf).expect("utf-8"))
        }
        Command::Maximality { catalog: path, output, height, budget, depth } => {
            if height == 0 || budget == 0 {
                return Err(Failure::Usage("bounds must be positive".into()));
            }
            let entries = match path {
                Some(p) => {
                    let f = std::fs::File::open(&p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
                    let mut v = catalog::read_jsonl(BufReader::new(f))?;
                    v.retain(|e| e.symmetrizable);
                    v
                }
                None => catalog::standard_catalog(),
            };
            let rep = maximality::order_report(&entries, &Budgets { height, budget, depth });
            if let Some(p) = output {
                let text = serde_json::to_string_pretty(&rep).expect("serializable");
                let mut f = std::fs::File::create(&p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
                f.write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string()))?;
            }
            Ok(rep.table())
        }
        Command::Render { diagram, format, output } => {
            let g = load_diagram(&diagram)?;
            let text = match format {
                Format::Json => pretty(&io::diagram_json(&g)),
                Format::Dot => io::to_dot(&g, &diagram),
                Format::Text => io::to_text(&g),
            };
            write_out(&output, &text)
        }
    }
}

pub fn apply_params(g: &Gcm, p: &Params) -> crate::Result<principles::PrincipleApplication> {
    match p {
        Params::General { .. } => Err(Error::BadParameter("the general principle needs explicit roots".into())),
        Params::A { zero_node, attach_node } => principles::apply_a(g, *zero_node, *attach_node),
        Params::B { y, k } => principles::apply_b(g, y, k),
        Params::BThenD { y, k, remove } => principles::apply_b_then_d(g, y, k, remove),
        Params::C { i } => principles::apply_c(g, i),
        Params::D { remove } => principles::apply_d(g, remove),
        Params::E { p, q } => principles::apply_e(g, *p, *q),
        Params::Star { case } => principles::apply_star(g, *case),
    }
}
