//! Command-line front end: file ingestion, evaluation and invariant
//! subcommands, symmetry checks from spec files, batch census scanning for
//! equal-value groups, and closed-form tables. All structured output is
//! JSON with a schema marker; polyhedra are emitted as cdd-style text.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arith::Rational;
use crate::bounds::{self, FlagKind};
use crate::engine::{
    self, closed_form_unit, hepp, hepp_position, wheel_hepp_series, Algorithm, ClosedForm,
    EngineError, HeppValue, IndexVector,
};
use crate::invariants::{self, CrapoMethod, DerksenMethod};
use crate::io::{self, Object};
use crate::matroid::{EdgeSubset, Graph, Matroid};
use crate::polytope;
use crate::symmetry;

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(
    name = "heppbound",
    about = "Exact Hepp bounds of graphs and matroids, their poles, invariants, bounds, symmetries and polytopes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Flags,
    Flats,
    Cycflats,
    Oracle,
}

impl From<Algo> for Algorithm {
    fn from(a: Algo) -> Algorithm {
        match a {
            Algo::Flags => Algorithm::FlagRecursion,
            Algo::Flats => Algorithm::FlatsRecursion,
            Algo::Cycflats => Algorithm::CyclicFlats,
            Algo::Oracle => Algorithm::SectorOracle,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolyKind {
    Newton,
    Polar,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolyFormat {
    Ext,
    Ine,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Completion,
    Product,
    Twist,
    Fourier,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Wheels,
    Complete,
    Uniform,
}

#[derive(Subcommand)]
enum Command {
    /// Hepp bound of a graph or matroid file.
    Hepp {
        input: PathBuf,
        /// Per-edge rational indices `p1/q1,p2/q2,...` (default all ones).
        #[arg(long)]
        indices: Option<String>,
        #[arg(long, value_enum, default_value_t = Algo::Flags)]
        algo: Algo,
        /// Report the position-space value as the main result.
        #[arg(long)]
        position: bool,
        /// Emit JSON (the default output format).
        #[arg(long, default_value_t = true)]
        json: bool,
    },
    /// Improved rational/log-weighted period bounds at unit indices.
    Hepp1 {
        input: PathBuf,
        /// Use flags of flats instead of bridgeless flags.
        #[arg(long)]
        flat: bool,
        /// Log-weighted bound with one-loop coefficients (float output).
        #[arg(long = "loop")]
        loop_weights: bool,
    },
    /// Multiset of rank-increment words over all edge orders.
    Derksen {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = DerksenArg::Direct)]
        method: DerksenArg,
    },
    /// Crapo beta invariant.
    Crapo {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = CrapoArg::Subset)]
        method: CrapoArg,
    },
    /// Singular submatroids (pole/facet/vertex labels).
    Sing { input: PathBuf },
    /// Newton polytope or polar slice in cdd text form.
    Polytope {
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: PolyKind,
        #[arg(long, value_enum, default_value_t = PolyFormat::Ext)]
        format: PolyFormat,
        /// Chart coordinate dropped from the polar slice (default: last).
        #[arg(long)]
        chart: Option<usize>,
        #[arg(long)]
        indices: Option<String>,
    },
    /// Per-spanning-tree contributions to the unit-index Hepp bound.
    Treedecomp { input: PathBuf },
    /// Symmetry checks from spec files.
    Check {
        kind: CheckKind,
        spec: PathBuf,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        lines: usize,
        #[arg(long, default_value_t = 0x48455050)]
        seed: u64,
    },
    /// Compute unit-index Hepp bounds of many files and group equal values.
    Scan {
        inputs: Vec<PathBuf>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Closed-form tables with engine cross-checks.
    Table {
        kind: TableKind,
        #[arg(long, default_value_t = 3)]
        from: usize,
        #[arg(long, default_value_t = 8)]
        to: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DerksenArg {
    Direct,
    Flags,
    Flats,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CrapoArg {
    Subset,
    Delcon,
    Limit,
}

#[derive(Debug)]
enum CliError {
    Parse(String),
    Compute(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Compute(_) => 2,
        }
    }
    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Compute(m) => m,
        }
    }
}

fn parse_err(e: impl std::fmt::Display) -> CliError {
    CliError::Parse(e.to_string())
}

fn compute_err(e: impl std::fmt::Display) -> CliError {
    CliError::Compute(e.to_string())
}

/// Entry point used by the binary.
pub fn run_cli() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    let mut stdout = std::io::stdout();
    run_from(args, &mut stdout)
}

/// Testable entry point: parse `args`, write output, return the exit code.
pub fn run_from(args: Vec<String>, out: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // help/version exit successfully through here as well
            let _ = write!(out, "{e}");
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}

fn read_object(path: &Path) -> Result<Object, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    io::parse_object(&text).map_err(parse_err)
}

fn parse_indices(m: &Matroid, spec: Option<&str>) -> Result<IndexVector, CliError> {
    match spec {
        None => IndexVector::unit(m).map_err(compute_err),
        Some(s) => {
            let values: Result<Vec<Rational>, _> = s.split(',').map(|t| t.trim().parse()).collect();
            let values = values.map_err(parse_err)?;
            IndexVector::new(m, values).map_err(compute_err)
        }
    }
}

fn emit(out: &mut dyn Write, value: Value) -> Result<(), CliError> {
    let text = serde_json::to_string(&value).map_err(compute_err)?;
    writeln!(out, "{text}").map_err(compute_err)
}

fn subset_json(s: EdgeSubset) -> Value {
    Value::Array(s.iter().map(|e| json!(e)).collect())
}

fn hepp_value_json(v: &HeppValue) -> (Value, Value) {
    match v {
        HeppValue::Finite(q) => (json!(q.to_string()), Value::Null),
        HeppValue::Pole(s) => (Value::Null, subset_json(*s)),
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Hepp {
            input,
            indices,
            algo,
            position,
            json: _,
        } => {
            let m = read_object(&input)?.matroid();
            let iv = parse_indices(&m, indices.as_deref())?;
            let algorithm: Algorithm = algo.into();
            let value = hepp(&m, &iv, algorithm).map_err(compute_err)?;
            let pos = hepp_position(&m, &iv, algorithm).ok();
            let (hepp_json, pole) = hepp_value_json(&value);
            let pos_json = match &pos {
                Some(HeppValue::Finite(q)) => json!(q.to_string()),
                _ => Value::Null,
            };
            let dimension = iv
                .half_dim()
                .map(|d2| json!((d2 + d2).to_string()))
                .unwrap_or(Value::Null);
            let algo_name = match algo {
                Algo::Flags => "flags",
                Algo::Flats => "flats",
                Algo::Cycflats => "cycflats",
                Algo::Oracle => "oracle",
            };
            let main = if position { &pos_json } else { &hepp_json };
            emit(
                out,
                json!({
                    "schema": SCHEMA,
                    "algorithm": algo_name,
                    "dimension": dimension,
                    "hepp": hepp_json,
                    "hepp_position": pos_json,
                    "pole": pole,
                    "value": main,
                }),
            )
        }
        Command::Hepp1 {
            input,
            flat,
            loop_weights,
        } => {
            let m = read_object(&input)?.matroid();
            if loop_weights {
                let exact = bounds::hepp_one_loop_exact(&m).map_err(compute_err)?;
                let float = exact.to_f64();
                emit(
                    out,
                    json!({
                        "schema": SCHEMA,
                        "hepp1_loop": float,
                        "hepp1_loop_exact": exact.to_string(),
                    }),
                )
            } else {
                let kind = if flat {
                    FlagKind::Flat
                } else {
                    FlagKind::Bridgeless
                };
                let value = bounds::hepp_one(&m, kind).map_err(compute_err)?;
                emit(
                    out,
                    json!({
                        "schema": SCHEMA,
                        "hepp1": value.to_string(),
                        "kind": if flat { "flat" } else { "bridgeless" },
                    }),
                )
            }
        }
        Command::Derksen { input, method } => {
            let m = read_object(&input)?.matroid();
            let method = match method {
                DerksenArg::Direct => DerksenMethod::Direct,
                DerksenArg::Flags => DerksenMethod::Bridgeless,
                DerksenArg::Flats => DerksenMethod::Flats,
            };
            let ws = invariants::derksen(&m, method).map_err(compute_err)?;
            let words: Vec<Value> = ws
                .iter()
                .map(|(w, mult)| json!({"word": w.to_string(), "mult": mult.to_string()}))
                .collect();
            let hepp_from_words = invariants::derksen_to_hepp(&ws)
                .map(|q| json!(q.to_string()))
                .unwrap_or(Value::Null);
            emit(
                out,
                json!({
                    "schema": SCHEMA,
                    "derksen": words,
                    "hepp_at_unit": hepp_from_words,
                }),
            )
        }
        Command::Crapo { input, method } => {
            let m = read_object(&input)?.matroid();
            let (method, name) = match method {
                CrapoArg::Subset => (CrapoMethod::SubsetSum, "subset_sum"),
                CrapoArg::Delcon => (CrapoMethod::DeletionContraction, "deletion_contraction"),
                CrapoArg::Limit => (CrapoMethod::HeppLimit, "hepp_limit"),
            };
            let beta = invariants::crapo(&m, method).map_err(compute_err)?;
            emit(out, json!({"schema": SCHEMA, "beta": beta, "method": name}))
        }
        Command::Sing { input } => {
            let m = read_object(&input)?.matroid();
            let sing = m.singular_submatroids().map_err(compute_err)?;
            emit(
                out,
                json!({
                    "schema": SCHEMA,
                    "count": sing.len(),
                    "singular": sing.iter().map(|s| subset_json(*s)).collect::<Vec<_>>(),
                }),
            )
        }
        Command::Polytope {
            input,
            kind,
            format,
            chart,
            indices,
        } => {
            let m = read_object(&input)?.matroid();
            let iv = parse_indices(&m, indices.as_deref())?;
            let text = match (kind, format) {
                (PolyKind::Newton, PolyFormat::Ext) => {
                    let p = polytope::newton_vertices(&m, &iv).map_err(compute_err)?;
                    polytope::export_v(&p)
                }
                (PolyKind::Newton, PolyFormat::Ine) => {
                    let p = polytope::newton_facets(&m, &iv).map_err(compute_err)?;
                    polytope::export_h(&p)
                }
                (PolyKind::Polar, PolyFormat::Ext) => {
                    let chart = chart.unwrap_or(m.size() - 1);
                    let p = polytope::polar_vertices(&m, &iv, chart).map_err(compute_err)?;
                    polytope::export_v(&p)
                }
                (PolyKind::Polar, PolyFormat::Ine) => {
                    // facets of the polar slice: one inequality per basis
                    let chart = chart.unwrap_or(m.size() - 1);
                    let d2 = iv
                        .half_dim()
                        .cloned()
                        .ok_or_else(|| CliError::Compute("loopless input".into()))?;
                    let bases = m.bases(200_000).map_err(compute_err)?;
                    let inequalities = bases
                        .iter()
                        .map(|basis| {
                            let co = basis.complement(m.size());
                            let normal: Vec<Rational> = (0..m.size())
                                .filter(|&e| e != chart)
                                .map(|e| {
                                    let shift = if co.contains(e) {
                                        d2.clone()
                                    } else {
                                        Rational::zero()
                                    };
                                    iv.value(e) - &shift
                                })
                                .collect();
                            (normal, Rational::one())
                        })
                        .collect();
                    polytope::export_h(&polytope::PolytopeH {
                        ambient_dim: m.size() - 1,
                        inequalities,
                        equalities: vec![],
                    })
                }
            };
            write!(out, "{text}").map_err(compute_err)
        }
        Command::Treedecomp { input } => {
            let m = read_object(&input)?.matroid();
            let decomp = polytope::tree_decomposition(&m).map_err(compute_err)?;
            let mut total = Rational::zero();
            let trees: Vec<Value> = decomp
                .iter()
                .map(|(tree, value)| {
                    total += value.clone();
                    json!({"tree": subset_json(*tree), "value": value.to_string()})
                })
                .collect();
            emit(
                out,
                json!({
                    "schema": SCHEMA,
                    "trees": trees,
                    "total": total.to_string(),
                }),
            )
        }
        Command::Check {
            kind,
            spec,
            samples,
            lines,
            seed,
        } => {
            let text = std::fs::read_to_string(&spec)
                .map_err(|e| CliError::Parse(format!("{}: {e}", spec.display())))?;
            let (name, report) = match kind {
                CheckKind::Completion => {
                    let g = io::parse_graph(&text).map_err(parse_err)?;
                    (
                        "completion",
                        symmetry::check_completion(&g).map_err(compute_err)?,
                    )
                }
                CheckKind::Product => {
                    let (a, e, b, f) = io::parse_product_spec(&text).map_err(parse_err)?;
                    (
                        "product",
                        symmetry::check_product(&a, e, &b, f, samples, seed)
                            .map_err(compute_err)?,
                    )
                }
                CheckKind::Twist => {
                    let spec = io::parse_twist_spec(&text).map_err(parse_err)?;
                    (
                        "twist",
                        symmetry::check_twist(&spec, lines, seed).map_err(compute_err)?,
                    )
                }
                CheckKind::Fourier => {
                    let spec = io::parse_fourier_spec(&text).map_err(parse_err)?;
                    (
                        "fourier",
                        symmetry::check_fourier_split(&spec, samples, seed).map_err(compute_err)?,
                    )
                }
            };
            let status_ok = report.passed();
            emit(
                out,
                json!({
                    "schema": SCHEMA,
                    "check": name,
                    "status": if status_ok { "pass" } else { "fail" },
                    "constraint_dim": report.constraint_dim,
                    "values": report
                        .values
                        .iter()
                        .map(|(k, v)| json!({"label": k, "value": v}))
                        .collect::<Vec<_>>(),
                    "witnesses": report.witnesses,
                }),
            )?;
            if !status_ok {
                return Err(CliError::Compute("check failed".into()));
            }
            Ok(())
        }
        Command::Scan { inputs, workers } => {
            let entries = scan_entries(&inputs, workers)?;
            let mut groups: Vec<(String, Vec<String>)> = Vec::new();
            for entry in &entries {
                if let Some(h) = entry.hepp.clone() {
                    match groups.iter_mut().find(|(v, _)| *v == h) {
                        Some((_, members)) => members.push(entry.name.clone()),
                        None => groups.push((h, vec![entry.name.clone()])),
                    }
                }
            }
            groups.retain(|(_, members)| members.len() >= 2);
            groups.sort();
            emit(
                out,
                json!({
                    "schema": SCHEMA,
                    "entries": entries
                        .iter()
                        .map(|e| json!({
                            "name": e.name,
                            "hepp": e.hepp,
                            "hepp1": e.hepp1,
                            "status": e.status,
                        }))
                        .collect::<Vec<_>>(),
                    "groups": groups
                        .iter()
                        .map(|(v, members)| json!({"hepp": v, "members": members}))
                        .collect::<Vec<_>>(),
                }),
            )
        }
        Command::Table { kind, from, to } => {
            let rows = table_rows(kind, from, to)?;
            emit(out, json!({"schema": SCHEMA, "rows": rows}))
        }
    }
}

/// One census entry: exact values plus a status tag.
struct CensusEntry {
    name: String,
    hepp: Option<String>,
    hepp1: Option<String>,
    status: &'static str,
}

fn scan_one(path: &Path) -> Result<CensusEntry, CliError> {
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    let m = read_object(path)?.matroid();
    let value = engine::hepp_unit(&m).map_err(compute_err)?;
    let (hepp, status) = match &value {
        HeppValue::Finite(q) => (Some(q.to_string()), "ok"),
        HeppValue::Pole(_) => (None, "pole"),
    };
    let (hepp1, status) = match bounds::hepp_one(&m, FlagKind::Bridgeless) {
        Ok(q) => (Some(q.to_string()), status),
        Err(_) if status == "ok" => (None, "not_plog"),
        Err(_) => (None, status),
    };
    Ok(CensusEntry {
        name,
        hepp,
        hepp1,
        status,
    })
}

fn scan_entries(inputs: &[PathBuf], workers: usize) -> Result<Vec<CensusEntry>, CliError> {
    let workers = workers.max(1);
    if workers == 1 || inputs.len() <= 1 {
        return inputs.iter().map(|p| scan_one(p)).collect();
    }
    let mut slots: Vec<Option<Result<CensusEntry, CliError>>> =
        (0..inputs.len()).map(|_| None).collect();
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots_mutex = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|scope| {
        for _ in 0..workers.min(inputs.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if i >= inputs.len() {
                    break;
                }
                let result = scan_one(&inputs[i]);
                slots_mutex.lock().unwrap()[i] = Some(result);
            });
        }
    });
    slots.into_iter().map(|slot| slot.unwrap()).collect()
}

fn table_rows(kind: TableKind, from: usize, to: usize) -> Result<Vec<Value>, CliError> {
    let mut rows = Vec::new();
    match kind {
        TableKind::Wheels => {
            let to = to.min(20);
            let series = wheel_hepp_series(to);
            for n in from.max(3)..=to {
                let closed = closed_form_unit(ClosedForm::Wheel(n)).map_err(compute_err)?;
                let engine_value = if n <= 12 {
                    let m = Matroid::graphic(Graph::wheel(n));
                    let iv = IndexVector::unit(&m).map_err(compute_err)?;
                    match hepp(&m, &iv, Algorithm::FlatsRecursion).map_err(compute_err)? {
                        HeppValue::Finite(q) => json!(q.to_string()),
                        HeppValue::Pole(_) => Value::Null,
                    }
                } else {
                    Value::Null
                };
                rows.push(json!({
                    "n": n,
                    "closed_form": closed.to_string(),
                    "series": series[n].to_string(),
                    "engine": engine_value,
                }));
            }
        }
        TableKind::Complete => {
            let to = to.min(8);
            for n in from.max(3)..=to {
                let closed = closed_form_unit(ClosedForm::Complete(n)).map_err(compute_err)?;
                let engine_value = {
                    let m = Matroid::graphic(Graph::complete(n));
                    let iv = IndexVector::unit(&m).map_err(compute_err)?;
                    match hepp(&m, &iv, Algorithm::FlatsRecursion).map_err(compute_err)? {
                        HeppValue::Finite(q) => json!(q.to_string()),
                        HeppValue::Pole(_) => Value::Null,
                    }
                };
                rows.push(json!({
                    "n": n,
                    "closed_form": closed.to_string(),
                    "engine": engine_value,
                }));
            }
        }
        TableKind::Uniform => {
            let to = to.min(10);
            for n in from.max(2)..=to {
                for r in 1..n {
                    let closed =
                        closed_form_unit(ClosedForm::Uniform(n, r)).map_err(compute_err)?;
                    let m = Matroid::uniform(n, r);
                    let iv = IndexVector::unit(&m).map_err(compute_err)?;
                    let engine_value =
                        match hepp(&m, &iv, Algorithm::FlagRecursion).map_err(compute_err)? {
                            HeppValue::Finite(q) => json!(q.to_string()),
                            HeppValue::Pole(_) => Value::Null,
                        };
                    rows.push(json!({
                        "n": n,
                        "r": r,
                        "closed_form": closed.to_string(),
                        "engine": engine_value,
                    }));
                }
            }
        }
    }
    Ok(rows)
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> CliError {
        CliError::Compute(e.to_string())
    }
}
