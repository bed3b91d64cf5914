//! Command-line front end. `run` parses arguments and renders the complete
//! report before anything is printed, so a failing command emits nothing on
//! standard output.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{
    alon_ratio, bounds_table, pluhar_threshold, upper_limit, BoundReport, Orientation, RIndex,
};
use crate::chains::{
    count_chains_with_cap, exists_good_order_with_cap, sequence_count_bound, CountMode, CHAIN_EDGE_CAP, ORDER_SEARCH_CAP,
};
use crate::colorers::{bad_edge_probability, derive_seed, run_trials, Algorithm, Params};
use crate::coloring::{chromatic_number_with_cap, CHROMATIC_CAP};
use crate::exact::rational_to_f64;
use crate::frecursion::{best_bound, extend_table, FTable};
use crate::generate::Family;
use crate::hypergraph::Hypergraph;
use crate::inducibility::{
    aux_graph, blowup, chain_bound, count_induced_paths_with_cap, example_formula, pg_bound, Graph,
    PATH_VERTEX_CAP,
};
use crate::{verify, Error};

#[derive(Debug, Parser)]
#[command(name = "hypercolor", version, about = "Bounds and experiments for 2-coloring 3-uniform hypergraphs with r colors")]
pub struct Cli {
    /// Leave wall time out of the report so identical runs give identical bytes.
    #[arg(long, global = true)]
    pub omit_timing: bool,
    #[command(flatten)]
    pub caps: Caps,
    #[command(subcommand)]
    pub command: Command,
}

/// Size limits for the exponential searches.
#[derive(Debug, Clone, Args, Serialize)]
pub struct Caps {
    #[arg(id = "cap-chromatic", long = "cap-chromatic", global = true, default_value_t = CHROMATIC_CAP, value_parser = positive)]
    pub chromatic: usize,
    #[arg(id = "cap-chain-edges", long = "cap-chain-edges", global = true, default_value_t = CHAIN_EDGE_CAP, value_parser = positive)]
    pub chain_edges: usize,
    #[arg(id = "cap-order-vertices", long = "cap-order-vertices", global = true, default_value_t = ORDER_SEARCH_CAP, value_parser = positive)]
    pub order_vertices: usize,
    #[arg(id = "cap-path-vertices", long = "cap-path-vertices", global = true, default_value_t = PATH_VERTEX_CAP, value_parser = positive)]
    pub path_vertices: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedArg {
    Fixed(u64),
    Auto,
}

fn parse_seed(s: &str) -> Result<SeedArg, String> {
    if s == "auto" {
        return Ok(SeedArg::Auto);
    }
    s.parse().map(SeedArg::Fixed).map_err(|_| format!("expected a u64 or `auto`, got {s:?}"))
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) | Err(_) => Err(format!("expected a positive integer, got {s:?}")),
        Ok(v) => Ok(v),
    }
}

fn parse_from_str<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<T, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_blowup(s: &str) -> Result<(usize, usize), String> {
    let (r, k) = s.split_once(':').ok_or_else(|| format!("expected R:K, got {s:?}"))?;
    Ok((positive(r)?, positive(k)?))
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Hypergraph file: header `vertices edges uniformity`, then one edge per line.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Built-in family: fano, complete:V:N, random:V:M:N:SEED, chain:N:R.
    #[arg(long, value_parser = parse_from_str::<Family>)]
    pub family: Option<Family>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of every closed-form bound.
    Bounds {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        r_max: usize,
        /// Grid points per axis for the weighted-colorer optimizer.
        #[arg(long, default_value_t = 1000)]
        grid: usize,
        /// Table size for the f-recursion row; 0 leaves the row out.
        #[arg(long, default_value_t = 10_000)]
        f_n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Extend the f table by splitting and scan window bounds.
    Fbound {
        #[arg(long, default_value_t = 10_000)]
        n_max: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        p_set: Vec<u32>,
        #[arg(long, default_value_t = 1, value_parser = positive)]
        m_min: usize,
        /// Defaults to the largest window start the table can cover.
        #[arg(long)]
        m_max: Option<usize>,
        /// Also write the table as CSV to this path.
        #[arg(long)]
        table_csv: Option<PathBuf>,
        /// `csv` prints the table itself.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Seeded trials of a randomized colorer.
    Simulate {
        #[arg(long, value_parser = parse_from_str::<Algorithm>)]
        algorithm: Algorithm,
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        a: Option<u32>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// A u64, or `auto` to draw one and record it.
        #[arg(long, value_parser = parse_seed)]
        seed: SeedArg,
    },
    /// Count r-chains of a hypergraph.
    Chains {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "sets", value_parser = parse_from_str::<CountMode>)]
        mode: CountMode,
        /// Also compute the chromatic number.
        #[arg(long)]
        chromatic: bool,
        /// Also search for a vertex order on which greedy r-coloring succeeds.
        #[arg(long)]
        good_order: bool,
    },
    /// Count induced r-vertex paths.
    Inducibility {
        /// Graph (uniformity 2) or hypergraph file; hypergraphs go through their one-point-intersection graph.
        #[arg(long, conflicts_with_all = ["family", "blowup"])]
        input: Option<PathBuf>,
        #[arg(long, value_parser = parse_from_str::<Family>, conflicts_with = "blowup")]
        family: Option<Family>,
        /// Iterated blow-up of C_{R+1}, given as R:K.
        #[arg(long, value_parser = parse_blowup)]
        blowup: Option<(usize, usize)>,
        /// Path length; defaults to R for blow-ups.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Run the invariant suite; exits 1 on any violation.
    Verify {
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments; `--help` and `--version` also land here.
    Usage(clap::Error),
    Failed(Error),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(e) => write!(f, "{e}"),
            CliError::Failed(e) => write!(f, "error: {e}"),
            CliError::Io(e) => write!(f, "error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Failed(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(e) => e.exit_code(),
            CliError::Failed(_) => 1,
            CliError::Io(_) => 1,
        }
    }
}

/// Finished report and process exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub status: i32,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub params: BTreeMap<&'static str, Value>,
    pub seed: Option<u64>,
    pub format: Format,
    pub caps: Caps,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    config: &'a RunConfig,
    result: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_ms: Option<f64>,
}

pub fn run<I, T>(args: I) -> Result<Outcome, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(CliError::Usage)?;
    execute(cli)
}

struct Report {
    config: RunConfig,
    body: Body,
    status: i32,
}

enum Body {
    Json(Value),
    Table { header: String, rows: Vec<String>, json: Value },
}

pub fn execute(cli: Cli) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let report = dispatch(cli.command, cli.caps)?;
    let wall = (!cli.omit_timing).then(|| (start.elapsed().as_secs_f64() * 1e6).round() / 1e3);
    let stdout = render(&report, wall)?;
    Ok(Outcome {
        stdout,
        status: report.status,
    })
}

fn render(report: &Report, wall_time_ms: Option<f64>) -> Result<String, CliError> {
    let envelope = |result: &Value| Envelope {
        tool: "hypercolor",
        version: crate::VERSION,
        config: &report.config,
        result: result.clone(),
        wall_time_ms,
    };
    match (&report.body, report.config.format) {
        (Body::Json(v), _) | (Body::Table { json: v, .. }, Format::Json) => {
            let text = serde_json::to_string_pretty(&envelope(v)).map_err(|e| CliError::Io(e.to_string()))?;
            Ok(text + "\n")
        }
        (Body::Table { header, rows, .. }, Format::Csv) => {
            let config = serde_json::to_string(&report.config).map_err(|e| CliError::Io(e.to_string()))?;
            let mut out = format!("# hypercolor {}\n# config {config}\n", crate::VERSION);
            if let Some(ms) = wall_time_ms {
                out += &format!("# wall_time_ms {ms}\n");
            }
            out += header;
            out.push('\n');
            for row in rows {
                out += row;
                out.push('\n');
            }
            Ok(out)
        }
    }
}

fn config(command: &'static str, params: Vec<(&'static str, Value)>, seed: Option<u64>, format: Format, caps: Caps) -> RunConfig {
    RunConfig {
        command,
        params: params.into_iter().collect(),
        seed,
        format,
        caps,
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn load(source: &Source) -> Result<(Hypergraph, Value), CliError> {
    match (&source.input, &source.family) {
        (Some(path), _) => read_hypergraph(path).map(|h| (h, json!(path.display().to_string()))),
        (None, Some(fam)) => Ok((fam.generate()?, json!(fam.to_string()))),
        (None, None) => unreachable!("clap requires one source"),
    }
}

fn read_hypergraph(path: &PathBuf) -> Result<Hypergraph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(Hypergraph::parse(&text)?)
}

fn summary(h: &Hypergraph) -> Value {
    json!({
        "vertices": h.num_vertices(),
        "edges": h.num_edges(),
        "uniformity": h.uniformity(),
    })
}

fn auto_seed() -> u64 {
    let nanos = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_nanos() as u64)
        .unwrap_or(0);
    derive_seed(nanos, std::process::id() as u64)
}

fn dispatch(command: Command, caps: Caps) -> Result<Report, CliError> {
    match command {
        Command::Bounds {
            n,
            r_max,
            grid,
            f_n_max,
            format,
        } => {
            let rows = if n == 3 {
                let f_row = if f_n_max == 0 {
                    None
                } else {
                    let table = extend_table(&FTable::seed(), f_n_max, &[2, 3])?;
                    Some(best_bound(&table, 1..=f_n_max)?.1)
                };
                bounds_table(r_max, grid, f_row)?
            } else {
                general_bounds(n, r_max)?
            };
            let cfg = config(
                "bounds",
                vec![
                    ("n", json!(n)),
                    ("r_max", json!(r_max)),
                    ("grid", json!(grid)),
                    ("f_n_max", json!(f_n_max)),
                ],
                None,
                format,
                caps,
            );
            Ok(Report {
                config: cfg,
                body: Body::Table {
                    header: BoundReport::csv_header().to_owned(),
                    rows: rows.iter().map(BoundReport::to_csv_row).collect(),
                    json: to_value(&rows),
                },
                status: 0,
            })
        }
        Command::Fbound {
            n_max,
            p_set,
            m_min,
            m_max,
            table_csv,
            format,
        } => {
            let seed_table = FTable::seed();
            let table = extend_table(&seed_table, n_max, &p_set)?;
            let m_max = m_max.unwrap_or(n_max);
            let (best, report) = best_bound(&table, m_min..=m_max)?;
            let (seed_best, _) = best_bound(&seed_table, 1..=seed_table.len())?;
            let csv = table.to_csv();
            if let Some(path) = &table_csv {
                std::fs::write(path, &csv).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            let m_lower: Vec<Value> = (1..=12u64)
                .filter_map(|r| table.m_lower_bound(r).map(|n| json!({"r": r, "min_vertices": n})))
                .collect();
            let cfg = config(
                "fbound",
                vec![
                    ("n_max", json!(n_max)),
                    ("p_set", json!(p_set)),
                    ("m_min", json!(m_min)),
                    ("m_max", json!(m_max)),
                    ("table_csv", json!(table_csv.as_ref().map(|p| p.display().to_string()))),
                ],
                None,
                format,
                caps,
            );
            let json = json!({
                "best": best,
                "report": report,
                "seed_table_best": seed_best,
                "table_len": table.len(),
                "upper_at_n_max": table.get(n_max),
                "min_vertices_for_r": m_lower,
            });
            let mut lines = csv.lines().map(str::to_owned);
            let header = lines.next().unwrap_or_default();
            Ok(Report {
                config: cfg,
                body: Body::Table {
                    header,
                    rows: lines.collect(),
                    json,
                },
                status: 0,
            })
        }
        Command::Simulate {
            algorithm,
            source,
            r,
            a,
            p,
            trials,
            seed,
        } => {
            let (h, origin) = load(&source)?;
            let seed = match seed {
                SeedArg::Fixed(s) => s,
                SeedArg::Auto => auto_seed(),
            };
            let params = Params { r, a, p };
            let report = run_trials(algorithm, &h, &params, trials, seed)?;
            let n = h.num_edges() as f64;
            let k = h.uniformity();
            let expected = match (algorithm, a, p) {
                (Algorithm::Alon, Some(a), _) => json!({"monochromatic": n * (a as f64).powi(1 - k as i32)}),
                (Algorithm::AkolzinShabanov, Some(a), Some(p)) => {
                    json!({"bad_edges": n * bad_edge_probability(k, a, p)})
                }
                _ => Value::Null,
            };
            let cfg = config(
                "simulate",
                vec![
                    ("algorithm", json!(algorithm.to_string())),
                    ("source", origin),
                    ("r", json!(r)),
                    ("a", json!(a)),
                    ("p", json!(p)),
                    ("trials", json!(trials)),
                ],
                Some(seed),
                Format::Json,
                caps,
            );
            Ok(Report {
                config: cfg,
                body: Body::Json(json!({
                    "hypergraph": summary(&h),
                    "trials": report,
                    "success_rate": report.success_rate(),
                    "expected": expected,
                })),
                status: 0,
            })
        }
        Command::Chains {
            source,
            r,
            mode,
            chromatic,
            good_order,
        } => {
            let (h, origin) = load(&source)?;
            let count = count_chains_with_cap(&h, r, mode, caps.chain_edges)?;
            let chi = chromatic
                .then(|| chromatic_number_with_cap(&h, caps.chromatic))
                .transpose()?;
            let order = if good_order {
                let found = exists_good_order_with_cap(&h, r, caps.order_vertices)?;
                json!({"exists": found.is_some(), "order": found.map(|o| o.vertices().to_vec())})
            } else {
                Value::Null
            };
            let bound = match mode {
                CountMode::Sets => chain_bound(h.num_edges(), r)?,
                CountMode::Sequences => rational_to_f64(&sequence_count_bound(h.num_edges(), r)),
            };
            let mode_name = match mode {
                CountMode::Sets => "sets",
                CountMode::Sequences => "sequences",
            };
            let cfg = config(
                "chains",
                vec![
                    ("source", origin),
                    ("r", json!(r)),
                    ("mode", json!(mode_name)),
                    ("chromatic", json!(chromatic)),
                    ("good_order", json!(good_order)),
                ],
                None,
                Format::Json,
                caps,
            );
            Ok(Report {
                config: cfg,
                body: Body::Json(json!({
                    "hypergraph": summary(&h),
                    "count": count,
                    "upper_bound": bound,
                    "chromatic_number": chi,
                    "good_order": order,
                })),
                status: 0,
            })
        }
        Command::Inducibility {
            input,
            family,
            blowup: blow,
            r,
        } => inducibility(input, family, blow, r, caps),
        Command::Verify { quick } => {
            let checks = verify::run(quick);
            let passed = checks.iter().all(|c| c.passed);
            let cfg = config("verify", vec![("quick", json!(quick))], None, Format::Json, caps);
            Ok(Report {
                config: cfg,
                body: Body::Json(json!({"passed": passed, "checks": checks})),
                status: if passed { 0 } else { 1 },
            })
        }
    }
}

fn inducibility(
    input: Option<PathBuf>,
    family: Option<Family>,
    blow: Option<(usize, usize)>,
    r: Option<usize>,
    caps: Caps,
) -> Result<Report, CliError> {
    let mut result = serde_json::Map::new();
    let (graph, origin, r) = match (input, family, blow) {
        (_, _, Some((br, k))) => {
            let r = r.unwrap_or(br);
            let formula = example_formula(br, k)?;
            result.insert("example_formula".into(), json!(formula.to_string()));
            result.insert("example_formula_value".into(), json!(rational_to_f64(&formula)));
            (blowup(br, k)?, json!(format!("blowup:{br}:{k}")), r)
        }
        (input, family, None) => {
            let r = r.ok_or_else(|| CliError::Failed(crate::error::invalid("--r is required")))?;
            let (h, origin) = match (input, family) {
                (Some(path), _) => {
                    let h = read_hypergraph(&path)?;
                    (h, json!(path.display().to_string()))
                }
                (None, Some(fam)) => (fam.generate()?, json!(fam.to_string())),
                (None, None) => {
                    return Err(CliError::Failed(crate::error::invalid(
                        "one of --input, --family or --blowup is required",
                    )))
                }
            };
            if h.uniformity() == 2 {
                (Graph::from_hypergraph(&h)?, origin, r)
            } else {
                let chains = count_chains_with_cap(&h, r, CountMode::Sets, caps.chain_edges)?;
                result.insert("hypergraph".into(), summary(&h));
                result.insert("chains".into(), json!(chains));
                (aux_graph(&h), origin, r)
            }
        }
    };
    let paths = count_induced_paths_with_cap(&graph, r, caps.path_vertices)?;
    result.insert("graph_vertices".into(), json!(graph.num_vertices()));
    result.insert("graph_edges".into(), json!(graph.num_edges()));
    result.insert("induced_paths".into(), json!(paths));
    result.insert("upper_bound".into(), json!(pg_bound(graph.num_vertices(), r)?));
    let cfg = config(
        "inducibility",
        vec![("source", origin), ("r", json!(r))],
        None,
        Format::Json,
        caps,
    );
    Ok(Report {
        config: cfg,
        body: Body::Json(Value::Object(result)),
        status: 0,
    })
}

/// Rows that make sense for any edge size.
fn general_bounds(n: usize, r_max: usize) -> Result<Vec<BoundReport>, Error> {
    let r64 = r_max as u64;
    let alon = alon_ratio(n, r_max)?;
    let pl = pluhar_threshold(n, r_max, Orientation::AsPrinted)?;
    let up = upper_limit(n)?;
    let rn = (r_max as f64).powi(n as i32);
    let mut rows = vec![
        BoundReport::new("alon_recolor", RIndex::At(r64), rational_to_f64(&alon)).exact(&alon),
        BoundReport::new(
            "pluhar_random_order",
            RIndex::At(r64),
            pl.edges.to_f64().unwrap_or(f64::INFINITY) / rn,
        )
        .param("threshold_edges", pl.edges.to_string()),
        BoundReport::new("complete_hypergraph_upper", RIndex::Limit, rational_to_f64(&up)).exact(&up),
    ];
    for row in &mut rows {
        row.n = n as u32;
    }
    Ok(rows)
}
