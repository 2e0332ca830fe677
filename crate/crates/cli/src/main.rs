//! `grkn`: positroid cell computations over JSON.
//!
//! Every verb reads one JSON document (from `--input` or stdin) and writes
//! one JSON document to stdout. Exit status 2 means the input did not match
//! the schema, 3 means it was mathematically unacceptable (a JSON error
//! object is still printed), 4 means an internal check failed.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use grkn::cell_locator::locate;
use grkn::combinatorics::{enumerate_le_diagrams, LeDiagram, LeTableau, Subset, DEFAULT_MAX_N};
use grkn::gamma_graph::{build_graph, face_poset};
use grkn::inversion::{coords_mobius, laurent_expand_with, CellInversion};
use grkn::json;
use grkn::measurement::{matroid_of, matroid_within, measure, measure_det, measure_within};
use grkn::rational::format_rational;
use grkn::{Error, ErrorClass};

#[derive(Parser, Debug)]
#[command(name = "grkn", version, about = "Positroid cells of the totally nonnegative Grassmannian")]
struct Cli {
    /// Read the input document from this file instead of stdin
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Pretty-print the output
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Plücker vector or matrix -> Le-diagram of its cell
    Locate,
    /// Plücker vector or matrix -> Le-coordinates
    Coords {
        #[arg(long, value_enum, default_value_t = Method::Minimal)]
        method: Method,
        /// Also emit the base subsets and per-box exponents used
        #[arg(long)]
        ledger: bool,
    },
    /// Le-tableau -> Plücker vector
    Measure {
        /// Cross-check against the determinant formula
        #[arg(long)]
        check_det: bool,
        /// Only compute these coordinates (comma-separated subsets)
        #[arg(long, num_args = 1..)]
        limit_subsets: Option<Vec<String>>,
    },
    /// Le-tableau (or Le-diagram with --seed) -> measure -> coords, report the difference
    Roundtrip {
        /// Draw a random tableau on a Le-diagram input
        #[arg(long)]
        seed: Option<u64>,
        /// Largest numerator and denominator of random entries
        #[arg(long, default_value_t = 100)]
        max_entry: i64,
    },
    /// Le-diagram -> totally positive base
    Base {
        /// Include the face poset
        #[arg(long)]
        poset: bool,
        /// Include a text drawing of the faces
        #[arg(long)]
        dump: bool,
    },
    /// Le-diagram and a subset -> Laurent expansion of that coordinate
    Laurent {
        #[arg(long)]
        subset: String,
    },
    /// All Le-diagrams of Gr(k, n); reads no input
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Largest n accepted
        #[arg(long, env = "GRKN_MAX_N", default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Le-diagram -> its matroid
    Matroid {
        #[arg(long, num_args = 1..)]
        limit_subsets: Option<Vec<String>>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Mobius,
    Minimal,
    Both,
}

fn read_input(path: &Option<PathBuf>) -> Result<Value, Error> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Error::Malformed(format!("{}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Malformed(format!("stdin: {e}")))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("invalid JSON: {e}")))
}

fn parse_subsets(list: &[String]) -> Result<Vec<Subset>, Error> {
    list.iter().flat_map(|s| s.split(';')).map(|s| s.trim().parse()).collect()
}

fn located(diagram: &LeDiagram) -> Value {
    json!({
        "diagram": json::diagram_to_json(diagram),
        "base": diagram.shape().labels().sources.to_string(),
        "shape": diagram.shape().rows(),
        "dimension": diagram.dimension(),
    })
}

fn run(cli: &Cli) -> Result<Value, Error> {
    match &cli.command {
        Command::Enumerate { k, n, max_n } => {
            let diagrams: Vec<Value> = enumerate_le_diagrams(*k, *n, *max_n)?
                .map(|d| {
                    let mut v = json::diagram_to_json(&d);
                    v["dimension"] = json!(d.dimension());
                    v
                })
                .collect();
            Ok(json!({ "k": k, "n": n, "count": diagrams.len(), "diagrams": diagrams }))
        }
        Command::Locate => {
            let p = json::point_from_json(&read_input(&cli.input)?)?;
            Ok(located(&locate(&p)?))
        }
        Command::Coords { method, ledger } => {
            let p = json::point_from_json(&read_input(&cli.input)?)?;
            let diagram = locate(&p)?;
            let cell = CellInversion::new(&diagram)?;
            let tableau = match method {
                Method::Mobius => coords_mobius(&p, &diagram)?,
                Method::Minimal => cell.coords_minimal(&p)?,
                Method::Both => {
                    let a = coords_mobius(&p, &diagram)?;
                    let b = cell.coords_minimal(&p)?;
                    if a != b {
                        return Err(Error::Internal("the two inversion formulas disagree".into()));
                    }
                    a
                }
            };
            let mut out = json!({ "tableau": json::tableau_to_json(&tableau) });
            if *ledger {
                let base = cell.base();
                let boxes: Vec<Value> = cell
                    .graph()
                    .hooks()
                    .iter()
                    .zip(cell.exponents())
                    .map(|(b, row)| {
                        let exps: BTreeMap<String, i64> = base
                            .iter()
                            .zip(row)
                            .filter(|(_, e)| **e != 0)
                            .map(|(m, e)| (m.to_string(), *e))
                            .collect();
                        json!({ "box": [b.row, b.col], "exps": exps })
                    })
                    .collect();
                out["base"] = json::subset_list(base.iter().cloned());
                out["ledger"] = Value::Array(boxes);
            }
            Ok(out)
        }
        Command::Measure { check_det, limit_subsets } => {
            let t = json::tableau_from_json(&read_input(&cli.input)?)?;
            if let Some(list) = limit_subsets {
                let subsets = parse_subsets(list)?;
                let coords: BTreeMap<String, String> = measure_within(&t, &subsets)?
                    .iter()
                    .map(|(j, x)| (j.to_string(), format_rational(x)))
                    .collect();
                return Ok(json!({ "k": t.diagram().k(), "n": t.diagram().n(), "coords": coords }));
            }
            let p = measure(&t)?;
            if *check_det && measure_det(&t)? != p {
                return Err(Error::Internal("path sums and determinants disagree".into()));
            }
            Ok(json::plucker_to_json(&p))
        }
        Command::Roundtrip { seed, max_entry } => {
            let input = read_input(&cli.input)?;
            let t: LeTableau = match seed {
                Some(seed) => {
                    if *max_entry < 1 {
                        return Err(Error::Malformed("--max-entry must be at least 1".into()));
                    }
                    let d = json::diagram_from_json(&input)?;
                    d.random_tableau(&mut ChaCha8Rng::seed_from_u64(*seed), *max_entry)
                }
                None => json::tableau_from_json(&input)?,
            };
            let p = measure(&t)?;
            let diagram = locate(&p)?;
            let cell_ok = &diagram == t.diagram();
            let zero = grkn::Rational::from_integer(0.into());
            let mut max_diff = zero.clone();
            if cell_ok {
                let recovered = [coords_mobius(&p, &diagram)?, CellInversion::new(&diagram)?.coords_minimal(&p)?];
                for r in &recovered {
                    for b in diagram.plus_boxes() {
                        let d = r.entry(b) - t.entry(b);
                        let d = if d < zero { -d } else { d };
                        if d > max_diff {
                            max_diff = d;
                        }
                    }
                }
            }
            let ok = cell_ok && max_diff == zero;
            let mut out = json!({ "ok": ok, "max_abs_diff": format_rational(&max_diff) });
            if seed.is_some() {
                out["tableau"] = json::tableau_to_json(&t);
            }
            if !ok {
                eprintln!("roundtrip mismatch: {out}");
            }
            Ok(out)
        }
        Command::Base { poset, dump } => {
            let d = json::diagram_from_json(&read_input(&cli.input)?)?;
            let cell = CellInversion::new(&d)?;
            let mut out = json!({ "base": json::subset_list(cell.base().iter().cloned()) });
            if *poset {
                out["poset"] = face_poset(cell.graph()).to_json();
            }
            if *dump {
                out["dump"] = Value::String(build_graph(&d)?.dump());
            }
            Ok(out)
        }
        Command::Laurent { subset } => {
            let d = json::diagram_from_json(&read_input(&cli.input)?)?;
            let j: Subset = subset.parse()?;
            Ok(json::laurent_to_json(&laurent_expand_with(&CellInversion::new(&d)?, &j)?))
        }
        Command::Matroid { limit_subsets } => {
            let d = json::diagram_from_json(&read_input(&cli.input)?)?;
            let bases = match limit_subsets {
                Some(list) => matroid_within(&d, &parse_subsets(list)?)?,
                None => matroid_of(&d)?,
            };
            Ok(json!({ "k": d.k(), "n": d.n(), "bases": json::subset_list(bases) }))
        }
    }
}

fn emit(value: &Value, pretty: bool) {
    let text = if pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) };
    println!("{}", text.expect("JSON values serialize"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(value) => {
            let failed = value.get("ok") == Some(&Value::Bool(false));
            emit(&value, cli.pretty);
            if failed {
                ExitCode::from(4)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            let (code, class) = match e.class() {
                ErrorClass::Input => (2, "input"),
                ErrorClass::Math => (3, "math"),
                ErrorClass::Internal => (4, "internal"),
            };
            if code == 3 {
                emit(&json!({ "error": { "class": class, "kind": e.kind(), "message": e.to_string() } }), cli.pretty);
            }
            eprintln!("grkn: {e}");
            ExitCode::from(code)
        }
    }
}
