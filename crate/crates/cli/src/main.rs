use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use fano_core::arith::{bound_b, sylvester};
use fano_core::bounds::{
    bulk_barycentric_check, read_barycentric_file, scan_exceptions, slicing_identity,
    staged_bound_report, SlicingData,
};
use fano_core::classify::{classify, staged_verify_dim5, verify_theorem, ClassificationCase, ClassificationReport};
use fano_core::construct::{glue, GluingSpec};
use fano_core::polytope::{PolytopeJson, RationalPolytope};
use fano_core::Error;

#[derive(Parser)]
#[command(name = "fano", version, about = "Exact checks on canonical Fano polytopes")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Sylvester number s_n
    Sylvester {
        #[arg(long)]
        n: usize,
    },
    /// Bound B_d
    Bound {
        #[arg(long)]
        d: usize,
    },
    /// Tuples where the multinomial product bound fails
    Scan {
        #[arg(long, default_value_t = 3)]
        t_min: usize,
        #[arg(long, default_value_t = 13)]
        t_max: usize,
        #[arg(long, default_value_t = 4)]
        d_min: usize,
        #[arg(long, default_value_t = 13)]
        d_max: usize,
    },
    /// Staged inequality for (d, d_t)
    Staged {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        d_t: usize,
    },
    /// Glue a spec into a polytope
    Construct {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Dual polytope
    Dual {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Relative and normalised volume
    Volume {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Lattice points
    Points {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Canonical, reflexive and minimal predicates
    Check {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Classify a decomposition case
    Classify {
        #[arg(long)]
        case: String,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dual volume against 2(s_d − 1)² for polytopes in a file
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Staged five-dimensional check on a two-tetrahedra report
    StagedDim5 {
        #[arg(long)]
        report: PathBuf,
    },
    /// Slicing integral against the glued dual volume for a two-simplex spec
    Slicing {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Integration bound over external barycentric data
    BaryCheck {
        #[arg(long)]
        d: usize,
        /// Defaults to $FANO_DATA_DIR/barycentric.jsonl
        #[arg(long)]
        data: Option<PathBuf>,
    },
}

struct Output {
    json: Value,
    table: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", out.json),
                Format::Table => print!("{}", out.table),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": e.to_string(), "kind": e.kind() }));
            ExitCode::from(2)
        }
    }
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(String),
    Json(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(_) => "precondition",
            CliError::Io(_) => "io",
            CliError::Json(_) => "json",
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) | CliError::Json(e) => f.write_str(e),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::Json(e.to_string()))
}

/// Accepts a bare polytope or any object carrying one under `"polytope"`.
fn polytope_doc(mut v: Value) -> CliResult<PolytopeJson> {
    if let Some(inner) = v.get_mut("polytope") {
        v = inner.take();
    }
    serde_json::from_value(v).map_err(|e| CliError::Json(e.to_string()))
}

fn load_polytope(path: &Path) -> CliResult<RationalPolytope> {
    let json = polytope_doc(parse(&read(path)?)?)?;
    Ok(RationalPolytope::from_json(&json)?)
}

/// A single polytope, a JSON array of them, or one per line. Lines without a
/// polytope, such as the summary line of a classify report, are skipped.
fn load_polytopes(path: &Path) -> CliResult<Vec<RationalPolytope>> {
    let text = read(path)?;
    let docs: Vec<PolytopeJson> = match serde_json::from_str::<Value>(&text) {
        Ok(Value::Array(items)) => items.into_iter().map(polytope_doc).collect::<CliResult<_>>()?,
        Ok(v) => vec![polytope_doc(v)?],
        Err(_) => text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(parse::<Value>)
            .filter(|v| !matches!(v, Ok(v) if v.get("dim").is_none() && v.get("polytope").is_none()))
            .map(|v| v.and_then(polytope_doc))
            .collect::<CliResult<_>>()?,
    };
    Ok(docs
        .iter()
        .map(RationalPolytope::from_json)
        .collect::<Result<_, _>>()?)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serialisable")
}

fn polytope_table(p: &RationalPolytope) -> String {
    let mut s = String::new();
    for v in p.vertices() {
        let row: Vec<String> = v.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "{}", row.join("\t"));
    }
    s
}

fn run(cmd: Command) -> CliResult<Output> {
    match cmd {
        Command::Sylvester { n } => {
            let s = sylvester(n)?.to_string();
            Ok(Output {
                json: json!({ "n": n, "s": s }),
                table: format!("{s}\n"),
                ok: true,
            })
        }
        Command::Bound { d } => {
            let b = bound_b(d)?.to_string();
            Ok(Output {
                json: json!({ "d": d, "bound": b }),
                table: format!("{b}\n"),
                ok: true,
            })
        }
        Command::Scan {
            t_min,
            t_max,
            d_min,
            d_max,
        } => {
            let hits = scan_exceptions(d_min..=d_max, t_min..=t_max)?;
            let rows: Vec<Value> = hits.iter().map(|(d, t)| json!({ "d": d, "dims": t })).collect();
            let mut table = String::new();
            for (d, t) in &hits {
                let parts: Vec<String> = t.iter().map(ToString::to_string).collect();
                let _ = writeln!(table, "({d};{})", parts.join(","));
            }
            Ok(Output {
                json: Value::Array(rows),
                table,
                ok: true,
            })
        }
        Command::Staged { d, d_t } => {
            let r = staged_bound_report(d, d_t)?;
            Ok(Output {
                table: format!("{} < {}: {}\n", r.lhs, r.rhs, r.holds),
                ok: r.holds,
                json: to_value(&r),
            })
        }
        Command::Construct { spec } => {
            let spec: GluingSpec = parse(&read(&spec)?)?;
            let g = glue(&spec)?;
            Ok(Output {
                table: polytope_table(&g.polytope),
                json: json!({
                    "polytope": to_value(&g.polytope.to_json()),
                    "profile": to_value(&g.profile),
                    "spec": to_value(&spec),
                }),
                ok: true,
            })
        }
        Command::Dual { input } => {
            let d = load_polytope(&input)?.dual()?;
            Ok(Output {
                table: polytope_table(&d),
                json: to_value(&d.to_json()),
                ok: true,
            })
        }
        Command::Volume { input } => {
            let p = load_polytope(&input)?;
            let (v, nv) = (p.volume().to_string(), p.normalized_volume().to_string());
            Ok(Output {
                table: format!("volume {v}\nnormalised {nv}\n"),
                json: json!({ "volume": v, "normalized": nv }),
                ok: true,
            })
        }
        Command::Points { input } => {
            let p = load_polytope(&input)?;
            let pts: Vec<Vec<String>> = p
                .lattice_points()
                .into_vec()
                .iter()
                .map(|x| x.iter().map(ToString::to_string).collect())
                .collect();
            let table = pts.iter().map(|r| r.join("\t") + "\n").collect();
            Ok(Output {
                json: json!({ "count": pts.len(), "points": pts }),
                table,
                ok: true,
            })
        }
        Command::Check { input } => {
            let p = load_polytope(&input)?;
            let canonical = p.is_canonical_fano();
            let reflexive = if canonical { Some(p.is_reflexive()?) } else { None };
            let minimal = if canonical { Some(p.is_minimal()?) } else { None };
            let json = json!({
                "dim": p.dim(),
                "vertices": p.n_vertices(),
                "lattice": p.is_lattice(),
                "canonical": canonical,
                "reflexive": reflexive,
                "minimal": minimal,
            });
            let table = format!(
                "dim {}\nvertices {}\nlattice {}\ncanonical {canonical}\nreflexive {}\nminimal {}\n",
                p.dim(),
                p.n_vertices(),
                p.is_lattice(),
                reflexive.map_or("-".into(), |b| b.to_string()),
                minimal.map_or("-".into(), |b| b.to_string()),
            );
            Ok(Output { json, table, ok: true })
        }
        Command::Classify { case, jobs, out } => {
            let case = ClassificationCase::named(&case)?;
            let report = classify(&case, jobs)?;
            if let Some(path) = out {
                std::fs::write(&path, report.to_json_lines())
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            let mut summary = to_value(&report);
            if let Value::Object(m) = &mut summary {
                m.remove("entries");
            }
            Ok(Output {
                json: summary,
                table: report.summary_table(),
                ok: report.holds,
            })
        }
        Command::Verify { input } => {
            let checks = verify_theorem(&load_polytopes(&input)?);
            let mut table = String::new();
            for c in &checks {
                let _ = writeln!(
                    table,
                    "{}: {} ≤ {} {}{}",
                    c.case_id,
                    c.lhs,
                    c.rhs,
                    c.holds,
                    c.error.as_deref().map_or(String::new(), |e| format!(" ({e})"))
                );
            }
            Ok(Output {
                ok: checks.iter().all(|c| c.holds),
                json: to_value(&checks),
                table,
            })
        }
        Command::StagedDim5 { report } => {
            let report = ClassificationReport::from_json_lines(&read(&report)?)?;
            let rows = staged_verify_dim5(&report)?;
            let failures = rows.iter().filter(|r| !r.holds).count();
            let worst = rows
                .iter()
                .map(|r| fano_core::arith::parse_rational(&r.lhs))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .max();
            let worst = worst.map(|w| w.to_string());
            Ok(Output {
                table: format!(
                    "{} checks, {failures} failures, worst lhs {}\n",
                    rows.len(),
                    worst.as_deref().unwrap_or("-")
                ),
                json: json!({ "checks": rows.len(), "failures": failures, "worst": worst, "rows": rows }),
                ok: failures == 0,
            })
        }
        Command::Slicing { spec } => {
            let spec: GluingSpec = parse(&read(&spec)?)?;
            let data = SlicingData::from_spec(&spec)?;
            let glued = glue(&spec)?;
            let r = slicing_identity(&data, &glued)?;
            Ok(Output {
                table: format!(
                    "slicing {} = {} × {}: {}\nint5 {} ≥ slicing: {}\n",
                    r.slicing, r.index, r.dual_volume, r.identity_holds, r.int5, r.int5_holds
                ),
                ok: r.identity_holds && r.int5_holds,
                json: to_value(&r),
            })
        }
        Command::BaryCheck { d, data } => {
            let path = match data {
                Some(p) => p,
                None => std::env::var_os("FANO_DATA_DIR")
                    .map(|dir| PathBuf::from(dir).join("barycentric.jsonl"))
                    .ok_or_else(|| {
                        CliError::Core(Error::ExternalData(
                            "pass --data or set FANO_DATA_DIR".into(),
                        ))
                    })?,
            };
            let all = read_barycentric_file(&path)?;
            let r = bulk_barycentric_check(d, &all, &all)?;
            Ok(Output {
                table: format!(
                    "d={} pairs {} configurations {} worst {} bound {} failures {}\n",
                    r.d, r.pairs, r.configurations, r.worst, r.bound, r.failures
                ),
                ok: r.holds,
                json: to_value(&r),
            })
        }
    }
}
