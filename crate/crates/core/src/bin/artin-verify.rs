use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use artin_comm::catalog::{enumerate_types, GraphSpec};
use artin_comm::classify::{class_table, classify};
use artin_comm::garside::{
    cache, decide_equal, decide_quotient_equal, is_central_with, DisplayNF, EngineRegistry,
    WEngine, DEFAULT_ENGINE_BOUND,
};
use artin_comm::homsearch::{solve_classes, SearchQuery, DEFAULT_BRANCH_CEILING};
use artin_comm::verify::{run_all, run_verify, LemmaId, Options, Report};
use artin_comm::{CatalogEntry, CoxeterGraph, CoxeterType, Error, Word};

#[derive(Parser)]
#[command(
    name = "artin-verify",
    version,
    about = "Reproducible checks for homomorphisms of spherical Artin groups"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Search worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Maximum search nodes before giving up with exit code 3.
    #[arg(long, global = true, default_value_t = DEFAULT_BRANCH_CEILING)]
    branch_ceiling: u64,
    /// Directory for enumerated Coxeter group files.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Largest |W| the Garside engine will enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_ENGINE_BOUND)]
    engine_bound: u64,
    /// Zero runtime and cache-hit fields so reports are byte-identical.
    #[arg(long, global = true)]
    reproducible: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// List catalog types, or describe one type or matrix.
    Catalog {
        ty: Option<String>,
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        #[arg(long, default_value_t = 12)]
        max_p: u32,
    },
    /// Commensurability verdict for two graph specs, or the class table.
    Classify {
        #[arg(long, required_unless_present_any = ["left_matrix", "table"])]
        left: Option<String>,
        #[arg(long, required_unless_present_any = ["right_matrix", "table"])]
        right: Option<String>,
        #[arg(long, conflicts_with = "left")]
        left_matrix: Option<PathBuf>,
        #[arg(long, conflicts_with = "right")]
        right_matrix: Option<PathBuf>,
        /// Print the partition of all types up to this rank.
        #[arg(long, conflicts_with_all = ["left", "right"])]
        table: Option<usize>,
    },
    /// Conjugacy classes of homomorphisms into S_N.
    Homs {
        #[arg(long, required_unless_present = "matrix")]
        graph: Option<String>,
        #[arg(long, conflicts_with = "graph")]
        matrix: Option<PathBuf>,
        #[arg(long)]
        degree: usize,
        /// Factor through the central quotient.
        #[arg(long)]
        mod_center: bool,
        #[arg(long)]
        non_cyclic: bool,
    },
    /// Word problem queries. DELTA and delta expand to Δ and the centre generator.
    Word {
        #[arg(long, required_unless_present = "matrix")]
        graph: Option<String>,
        #[arg(long, conflicts_with = "graph")]
        matrix: Option<PathBuf>,
        #[arg(long, num_args = 2, value_names = ["W1", "W2"])]
        equal: Option<Vec<String>>,
        /// Compare in the central quotient.
        #[arg(long, requires = "equal")]
        quotient: bool,
        #[arg(long)]
        nf: Option<String>,
        #[arg(long)]
        central: Option<String>,
    },
    /// Run one lemma driver, or all of them.
    Verify {
        #[arg(required_unless_present = "all")]
        lemma: Option<String>,
        #[arg(long, conflicts_with = "lemma")]
        all: bool,
        #[arg(long, requires = "all")]
        filter: Option<String>,
    },
    /// Build or validate on-disk engine files.
    Cache {
        #[command(subcommand)]
        action: CacheCmd,
    },
}

#[derive(Subcommand)]
enum CacheCmd {
    Build { types: Vec<String> },
    Verify { types: Vec<String> },
}

enum Failure {
    Usage(String),
    Check(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceBound(_) | Error::BoundExceeded { .. } => {
                Failure::Resource(e.to_string())
            }
            Error::CorruptCache(_) | Error::CaseViolated(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn registry(cli: &Cli) -> EngineRegistry {
    let reg = EngineRegistry::new(cli.engine_bound);
    match &cli.cache_dir {
        Some(d) => reg.with_cache_dir(d),
        None => reg,
    }
}

fn emit(cli: &Cli, value: Value, text: impl FnOnce() -> String) {
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json")),
        Format::Text => print!("{}", text()),
    }
}

fn read_matrix(path: &Path) -> Result<CoxeterGraph, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(CoxeterGraph::from_json(&text)?)
}

fn load_graph(spec: &Option<String>, matrix: &Option<PathBuf>) -> Result<CoxeterGraph, Failure> {
    match (spec, matrix) {
        (Some(s), _) => Ok(GraphSpec::parse(s)?.graph()),
        (None, Some(p)) => read_matrix(p),
        (None, None) => Err(Failure::Usage("need --graph or --matrix".into())),
    }
}

fn load_spec(spec: &Option<String>, matrix: &Option<PathBuf>) -> Result<GraphSpec, Failure> {
    match (spec, matrix) {
        (Some(s), _) => Ok(GraphSpec::parse(s)?),
        (None, Some(p)) => Ok(GraphSpec::from_graph(&read_matrix(p)?)?),
        (None, None) => Err(Failure::Usage("need a graph spec or a matrix".into())),
    }
}

fn entry_json(e: &CatalogEntry) -> Value {
    json!({
        "type": e.ty.to_string(),
        "rank": e.rank(),
        "coxeter_number": e.h,
        "kappa": e.kappa,
        "w_order": e.w_order,
        "coxeter_word": e.coxeter_word().to_string(),
        "delta_word": e.delta_word().to_string(),
        "big_delta_word": e.big_delta_word().to_string(),
        "matrix": e.graph.m,
    })
}

fn entry_text(e: &CatalogEntry) -> String {
    format!(
        "{}: rank {}, h = {}, κ = {}, |W| = {}, δ = {}\n",
        e.ty,
        e.rank(),
        e.h,
        e.kappa,
        e.w_order,
        e.delta_word()
    )
}

fn run(cli: &Cli) -> Outcome {
    match &cli.cmd {
        Cmd::Catalog {
            ty,
            matrix,
            max_rank,
            max_p,
        } => {
            let entries: Vec<CatalogEntry> = match (ty, matrix) {
                (Some(t), _) => vec![CatalogEntry::new(t.parse::<CoxeterType>()?)],
                (None, Some(p)) => GraphSpec::from_graph(&read_matrix(p)?)?.components,
                (None, None) => enumerate_types(*max_rank, *max_p)
                    .into_iter()
                    .map(CatalogEntry::new)
                    .collect(),
            };
            emit(
                cli,
                Value::Array(entries.iter().map(entry_json).collect()),
                || entries.iter().map(entry_text).collect(),
            );
            Ok(true)
        }
        Cmd::Classify {
            left,
            right,
            left_matrix,
            right_matrix,
            table,
        } => {
            if let Some(r) = table {
                let t = class_table(*r, 12);
                emit(cli, serde_json::to_value(&t).expect("json"), || {
                    t.iter().map(|c| format!("{c:?}\n")).collect()
                });
                return Ok(true);
            }
            let l = load_spec(left, left_matrix)?;
            let r = load_spec(right, right_matrix)?;
            let v = classify(&l, &r);
            emit(cli, serde_json::to_value(&v).expect("json"), || {
                let mut s = format!("{l} vs {r}: {}\n", v.verdict);
                for p in &v.provenance {
                    s += &format!("  {p}\n");
                }
                s
            });
            Ok(true)
        }
        Cmd::Homs {
            graph,
            matrix,
            degree,
            mod_center,
            non_cyclic,
        } => {
            let g = load_graph(graph, matrix)?;
            if *non_cyclic && !g.is_connected() {
                return Err(Failure::Usage(
                    "cyclicity is only defined here for connected graphs".into(),
                ));
            }
            let mut q = SearchQuery::from_presentation(&g.artin_presentation(true), *degree)
                .non_cyclic(*non_cyclic)
                .workers(cli.workers)
                .branch_ceiling(cli.branch_ceiling);
            if *mod_center {
                let center: Vec<Word> = g.component_words()?.into_iter().map(|c| c.2).collect();
                q = q.mod_center(&center);
            }
            let res = solve_classes(&q)?;
            let reps: Vec<Value> = res
                .classes
                .iter()
                .map(|c| json!({"images": c.canonical.images.iter().map(|p| p.to_string()).collect::<Vec<_>>(), "orbit_size": c.orbit_size}))
                .collect();
            emit(
                cli,
                json!({"degree": degree, "total": res.total, "classes": res.classes.len(), "representatives": reps}),
                || {
                    let mut s = format!(
                        "{} homomorphisms, divided into {} conjugacy classes\n",
                        res.total,
                        res.classes.len()
                    );
                    for c in &res.classes {
                        s += &format!("  {} orbit {}\n", c.canonical, c.orbit_size);
                    }
                    s
                },
            );
            Ok(true)
        }
        Cmd::Word {
            graph,
            matrix,
            equal,
            quotient,
            nf,
            central,
        } => {
            let g = load_graph(graph, matrix)?;
            let comps = g.component_words()?;
            let big = Word::concat(&comps.iter().map(|c| &c.1).collect::<Vec<_>>());
            let small = Word::concat(&comps.iter().map(|c| &c.2).collect::<Vec<_>>());
            let parse = |t: &str| {
                Word::parse_with(t, |a| match a {
                    "DELTA" | "Δ" => Some(big.clone()),
                    "delta" | "δ" => Some(small.clone()),
                    _ => None,
                })
            };
            let reg = registry(cli);
            let mut out = serde_json::Map::new();
            let mut lines = String::new();
            if let Some(pair) = equal {
                let (a, b) = (parse(&pair[0])?, parse(&pair[1])?);
                let d = if *quotient {
                    if comps.len() != 1 {
                        return Err(Failure::Usage("--quotient needs a connected graph".into()));
                    }
                    let entry = &comps[0].0;
                    // compare in catalog numbering
                    let (_, relabel) = g.identify()?;
                    decide_quotient_equal(&a.relabel(&relabel), &b.relabel(&relabel), entry, &reg)?
                } else {
                    decide_equal(&a, &b, &g, &reg)?
                };
                out.insert("equal".into(), json!(d.holds));
                out.insert("components".into(), json!(d.components));
                out.insert("parabolic".into(), json!(d.used_parabolic));
                lines += &format!("{}\n", d.holds);
            }
            if let Some(t) = nf {
                if comps.len() != 1 {
                    return Err(Failure::Usage("--nf needs a connected graph".into()));
                }
                let (entry, relabel) = g.identify()?;
                let engine = reg.engine(entry.ty)?;
                let n = engine.normal_form(&parse(t)?.relabel(&relabel))?;
                let shown = DisplayNF(&engine, &n).to_string();
                out.insert("normal_form".into(), json!(shown));
                out.insert("inf".into(), json!(n.inf));
                lines += &format!("{shown}\n");
            }
            if let Some(t) = central {
                let c = is_central_with(&parse(t)?, &g, &reg)?;
                out.insert("central".into(), json!(c));
                lines += &format!("central: {c}\n");
            }
            if out.is_empty() {
                return Err(Failure::Usage(
                    "word needs --equal, --nf or --central".into(),
                ));
            }
            emit(cli, Value::Object(out), || lines);
            Ok(true)
        }
        Cmd::Verify { lemma, all, filter } => {
            let reg = registry(cli);
            let opts = Options {
                registry: &reg,
                workers: cli.workers,
                branch_ceiling: cli.branch_ceiling,
                reproducible: cli.reproducible,
            };
            let report = if *all {
                run_all(filter.as_deref(), &opts)?
            } else {
                let id: LemmaId = lemma.as_deref().unwrap_or_default().parse()?;
                run_verify(id, &opts)?
            };
            emit_report(cli, &report);
            if !report.passed() {
                Ok(false)
            } else if report.resource_limited() {
                Err(Failure::Resource(
                    "some checks were skipped at a resource bound".into(),
                ))
            } else {
                Ok(true)
            }
        }
        Cmd::Cache { action } => {
            let dir = cli
                .cache_dir
                .as_ref()
                .ok_or_else(|| Failure::Usage("cache needs --cache-dir".into()))?;
            fs::create_dir_all(dir).map_err(|e| Failure::Usage(e.to_string()))?;
            let (build, names) = match action {
                CacheCmd::Build { types } => (true, types),
                CacheCmd::Verify { types } => (false, types),
            };
            let types: Vec<CoxeterType> = names
                .iter()
                .map(|n| n.parse())
                .collect::<Result<_, Error>>()?;
            let mut results = Vec::new();
            let mut ok = true;
            for ty in types {
                let path = cache::cache_path(dir, ty);
                let r = if build {
                    WEngine::for_type(ty, cli.engine_bound).and_then(|e| {
                        cache::save(&path, &e)?;
                        Ok(e.size())
                    })
                } else {
                    cache::load(&path, ty, cli.engine_bound).map(|e| e.size())
                };
                let status = match r {
                    Ok(n) => {
                        json!({"type": ty.to_string(), "status": "ok", "elements": n, "path": path})
                    }
                    Err(e @ Error::BoundExceeded { .. }) => {
                        return Err(Failure::Resource(e.to_string()))
                    }
                    Err(e @ Error::CorruptCache(_)) => {
                        ok = false;
                        json!({"type": ty.to_string(), "status": "corrupt", "reason": e.to_string()})
                    }
                    Err(e) => {
                        ok = false;
                        json!({"type": ty.to_string(), "status": "error", "reason": e.to_string()})
                    }
                };
                results.push(status);
            }
            emit(cli, Value::Array(results.clone()), || {
                results
                    .iter()
                    .map(|r| {
                        format!(
                            "{}: {} {}\n",
                            r["type"].as_str().unwrap_or(""),
                            r["status"].as_str().unwrap_or(""),
                            r.get("elements")
                                .or(r.get("reason"))
                                .map(|v| v.to_string())
                                .unwrap_or_default()
                        )
                    })
                    .collect()
            });
            Ok(ok)
        }
    }
}

fn emit_report(cli: &Cli, r: &Report) {
    match cli.format {
        Format::Json => println!("{}", r.to_json()),
        Format::Text => print!("{r}"),
    }
}
