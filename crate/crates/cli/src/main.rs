use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use posetpow::catalog::{Catalog, DEFAULT_CATALOG_CAP};
use posetpow::io::{self, ExponentDocument, PosetDocument, WitnessDocument};
use posetpow::lemmas::{lemma_suite_with, SuiteOptions};
use posetpow::{
    are_isomorphic, component_c, diagonal_d, exponent, factorizations, find_retraction, product, refine,
    standard, Error, FinitePoset, Guard, SearchBounds, StandardKind,
};
use serde_json::json;

/// Exit codes: 0 success or verdict true, 1 verdict false, 2 usage or guard errors.
#[derive(Parser)]
#[command(name = "posetpow", version, about = "Arithmetic of finite posets")]
struct Cli {
    /// Cap on enumerated monotone maps and search nodes.
    #[arg(long, global = true, env = "POSETPOW_GUARD")]
    guard: Option<usize>,

    /// Cap on posets whose full order matrix is materialized.
    #[arg(long, global = true, env = "POSETPOW_DENSE_GUARD")]
    dense_guard: Option<usize>,

    /// Structured output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Chain,
    Antichain,
    Crown,
    Fence,
    Singleton,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a standard poset (crown takes the element count, e.g. `crown 4`).
    Build {
        kind: Kind,
        size: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// E^X: the monotone maps X -> E under the pointwise order.
    Expo {
        base: PathBuf,
        exponent: PathBuf,
        /// Emit the Hasse diagram instead of JSON.
        #[arg(long)]
        dot: bool,
        /// Print size, connectivity, |D| and |C|.
        #[arg(long)]
        stats: bool,
        /// Label DOT nodes by their map tables.
        #[arg(long)]
        map_labels: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Cartesian product under the componentwise order.
    Product {
        left: PathBuf,
        right: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Disjoint sum.
    Sum {
        left: PathBuf,
        right: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide isomorphism and print a bijection.
    Iso { left: PathBuf, right: PathBuf },
    /// Search for a retraction onto a subset.
    Retract {
        poset: PathBuf,
        /// Comma-separated target elements.
        #[arg(long, value_delimiter = ',', required = true)]
        onto: Vec<usize>,
    },
    /// All factorizations P = Y x Z up to isomorphism.
    Factor {
        poset: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CATALOG_CAP)]
        catalog_cap: usize,
    },
    /// Search posets E, X, Y, Z refining A^C = B^D.
    Refine {
        a: PathBuf,
        b: PathBuf,
        c: PathBuf,
        d: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CATALOG_CAP)]
        max_z: usize,
        #[arg(long, default_value_t = DEFAULT_CATALOG_CAP)]
        max_e: usize,
        #[arg(long, default_value_t = DEFAULT_CATALOG_CAP)]
        max_x: usize,
        #[arg(long, default_value_t = DEFAULT_CATALOG_CAP)]
        max_y: usize,
        /// Also try disconnected E.
        #[arg(long)]
        widen: bool,
        /// Drop the |E| <= min(|A|, |B|) pruning rule.
        #[arg(long)]
        no_retract_bound: bool,
        /// Seconds.
        #[arg(long)]
        timeout: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_CATALOG_CAP)]
        catalog_cap: usize,
    },
    /// Run the exhaustive lemma checks over the catalog.
    Lemmas {
        #[arg(long, default_value_t = 2)]
        max_size: usize,
    },
    /// Hasse diagram as DOT.
    Render {
        poset: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List isomorphism classes of n-element posets.
    Catalog {
        n: usize,
        #[arg(long)]
        connected: bool,
        #[arg(long, default_value_t = DEFAULT_CATALOG_CAP)]
        catalog_cap: usize,
    },
}

enum Failure {
    /// Verdict false; message already printed.
    Negative,
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            if cli.json {
                println!("{}", json!({ "error": msg }));
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(2)
        }
    }
}

fn guard(cli: &Cli) -> Guard {
    let mut g = Guard::default();
    if let Some(m) = cli.guard {
        g.max_maps = m;
    }
    if let Some(d) = cli.dense_guard {
        g.max_dense = d;
    }
    g
}

fn load(path: &Path) -> std::result::Result<FinitePoset, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    io::parse_poset(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Outcome {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn doc(p: &FinitePoset) -> serde_json::Value {
    serde_json::to_value(PosetDocument::from_poset(p)).expect("documents serialize")
}

fn run(cli: &Cli) -> Outcome {
    let guard = guard(cli);
    match &cli.command {
        Command::Build { kind, size, output } => {
            let need = || size.ok_or_else(|| Failure::Usage("this kind needs a size".into()));
            let kind = match kind {
                Kind::Chain => StandardKind::Chain(need()?),
                Kind::Antichain => StandardKind::Antichain(need()?),
                Kind::Crown => StandardKind::Crown(need()?),
                Kind::Fence => StandardKind::Fence(need()?),
                Kind::Singleton => StandardKind::Singleton,
            };
            emit(&format!("{}\n", io::emit_poset(&standard(kind)?)), output.as_deref())?;
        }
        Command::Expo { base, exponent: exp, dot, stats, map_labels, output } => {
            let ex = exponent(&load(base)?, &load(exp)?, &guard)?;
            if *stats {
                let d = diagonal_d(&ex).len();
                let c = match component_c(&ex) {
                    Ok(sub) => Some(sub.poset.len()),
                    Err(Error::EmptyExponent) => None,
                    Err(e) => return Err(e.into()),
                };
                let connected = ex.poset.is_connected();
                if cli.json {
                    println!("{}", json!({ "size": ex.len(), "connected": connected, "d": d, "c": c }));
                } else {
                    let c = c.map_or_else(|| "undefined".to_string(), |c| c.to_string());
                    println!("size={} connected={connected} |D|={d} |C|={c}", ex.len());
                }
            }
            if *dot {
                let labels = map_labels.then(|| io::map_labels(&ex));
                emit(&io::to_dot(&ex.poset, labels.as_deref()), output.as_deref())?;
            } else if !*stats {
                let text = serde_json::to_string(&ExponentDocument::from_exponent(&ex)).expect("serializes");
                emit(&format!("{text}\n"), output.as_deref())?;
            }
        }
        Command::Product { left, right, output } => {
            let p = product(&load(left)?, &load(right)?, &guard)?;
            emit(&format!("{}\n", io::emit_poset(&p.poset)), output.as_deref())?;
        }
        Command::Sum { left, right, output } => {
            let sum = load(left)?.disjoint_sum(&load(right)?);
            emit(&format!("{}\n", io::emit_poset(&sum)), output.as_deref())?;
        }
        Command::Iso { left, right } => {
            let verdict = are_isomorphic(&load(left)?, &load(right)?);
            if cli.json {
                println!("{}", json!({ "isomorphic": verdict.is_some(), "bijection": verdict }));
            } else if let Some(phi) = &verdict {
                println!("isomorphic");
                println!("bijection {}", pairs(phi));
            } else {
                println!("not isomorphic");
            }
            if verdict.is_none() {
                return Err(Failure::Negative);
            }
        }
        Command::Retract { poset, onto } => {
            let p = load(poset)?;
            let found = find_retraction(&p, onto, &guard)?;
            if cli.json {
                println!("{}", json!({ "retract": found.is_some(), "map": found.as_ref().map(|r| &r.map) }));
            } else if let Some(r) = &found {
                println!("retract");
                println!("map {}", pairs(&r.map));
            } else {
                println!("no retraction");
            }
            if found.is_none() {
                return Err(Failure::Negative);
            }
        }
        Command::Factor { poset, catalog_cap } => {
            let p = load(poset)?;
            let needed = (2..p.len()).filter(|d| p.len() % d == 0).max().unwrap_or(1);
            let catalog = Catalog::with_cap(needed, *catalog_cap)?;
            let fs = factorizations(&p, &catalog, &guard)?;
            if cli.json {
                let list: Vec<_> =
                    fs.iter().map(|f| json!({ "Y": doc(&f.y), "Z": doc(&f.z), "iso": f.iso })).collect();
                println!("{}", serde_json::Value::Array(list));
            } else {
                for f in &fs {
                    println!("Y={} Z={}", io::emit_poset(&f.y), io::emit_poset(&f.z));
                }
            }
        }
        Command::Refine {
            a,
            b,
            c,
            d,
            max_z,
            max_e,
            max_x,
            max_y,
            widen,
            no_retract_bound,
            timeout,
            catalog_cap,
        } => {
            let timeout = match timeout {
                Some(t) if !(t.is_finite() && *t > 0.0) => {
                    return Err(Failure::Usage("--timeout must be a positive number of seconds".into()));
                }
                Some(t) => Some(Duration::from_secs_f64(*t)),
                None => None,
            };
            let bounds = SearchBounds {
                max_e: *max_e,
                max_x: *max_x,
                max_y: *max_y,
                max_z: *max_z,
                guard,
                timeout,
                widen: *widen,
                retract_bound: !*no_retract_bound,
                catalog_cap: *catalog_cap,
            };
            match refine(&load(a)?, &load(b)?, &load(c)?, &load(d)?, &bounds) {
                Ok(w) => {
                    let wd = WitnessDocument::from_witness(&w);
                    if cli.json {
                        println!("{}", serde_json::to_string(&wd).expect("serializes"));
                    } else {
                        println!("witness");
                        println!("E={}", io::emit_poset(&w.e));
                        println!("X={}", io::emit_poset(&w.x));
                        println!("Y={}", io::emit_poset(&w.y));
                        println!("Z={}", io::emit_poset(&w.z));
                        println!("iso_a {}", pairs(&w.iso_a));
                        println!("iso_b {}", pairs(&w.iso_b));
                        println!("iso_c {}", pairs(&w.iso_c));
                        println!("iso_d {}", pairs(&w.iso_d));
                    }
                }
                Err(Error::Exhausted) => {
                    let note = "no witness within the search bounds; this is not a counterexample, \
                                a witness may exist beyond them";
                    if cli.json {
                        println!("{}", json!({ "status": "exhausted", "note": note }));
                    } else {
                        println!("exhausted: {note}");
                    }
                    return Err(Failure::Negative);
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Lemmas { max_size } => {
            let opts = SuiteOptions { guard, ..SuiteOptions::new(*max_size) };
            let report = lemma_suite_with(&opts)?;
            if cli.json {
                let checks: Vec<_> = report
                    .checks
                    .iter()
                    .map(|c| {
                        json!({
                            "name": c.name,
                            "statement": c.statement,
                            "instances": c.instances,
                            "non_vacuous": c.non_vacuous,
                            "skipped": c.skipped,
                            "counterexamples": c.counterexamples,
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    json!({ "max_size": report.max_size, "checks": checks, "counterexamples": report.counterexamples() })
                );
            } else {
                println!("{report}");
            }
            if report.counterexamples() > 0 {
                return Err(Failure::Negative);
            }
        }
        Command::Render { poset, output } => {
            let text =
                fs::read_to_string(poset).map_err(|e| Failure::Usage(format!("{}: {e}", poset.display())))?;
            let document = io::parse_document(&text)?;
            let p = document.to_poset()?;
            emit(&io::to_dot(&p, document.labels.as_deref()), output.as_deref())?;
        }
        Command::Catalog { n, connected, catalog_cap } => {
            let catalog = Catalog::with_cap(*n, *catalog_cap)?;
            let entries: Vec<_> = catalog.of_size(*n).iter().filter(|e| !connected || e.connected).collect();
            if cli.json {
                println!("{}", serde_json::Value::Array(entries.iter().map(|e| doc(&e.poset)).collect()));
            } else {
                for e in entries {
                    println!("{}", io::emit_poset(&e.poset));
                }
            }
        }
    }
    Ok(())
}

fn pairs(map: &[usize]) -> String {
    map.iter().enumerate().map(|(i, v)| format!("{i}->{v}")).collect::<Vec<_>>().join(" ")
}
