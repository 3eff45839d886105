//! `qck`: command-line front end for the qcrystal library.
//!
//! Exit codes: 0 success, 1 domain failure (including a false `--verify`
//! or a tripped guard), 2 usage error.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use qcrystal::character::{sdt_character, verma_character, verma_product_string, CharacterSeries};
use qcrystal::crystal::Element;
use qcrystal::cutting::{cut_component, cut_component_for, sdt_graph, verify_cut, CutSpec};
use qcrystal::finite::{lowest_generator, FiniteElement, OperatorLabel};
use qcrystal::graph::{check_axioms, limit_ball, CrystalGraph, Level};
use qcrystal::limit::{canonicalize, largeness};
use qcrystal::tableau::{validate_sdt, Letter, Shape, Tableau};
use qcrystal::weight::{AntidominantWeight, Weight};
use qcrystal::xi::{parse_roots, xi_forward_traced, xi_inverse_traced, Root};

#[derive(Parser)]
#[command(name = "qck", version, about = "Crystal combinatorics for the queer Lie superalgebra q(n)")]
struct Cli {
    /// Node cap for every breadth-first search.
    #[arg(long, global = true, env = "QCK_MAX_NODES", default_value_t = 100_000)]
    max_nodes: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

/// A tableau given as JSON `{"n":3,"rows":[[3,2],[1]]}` or as rows
/// separated by `/`, each row either digits (`332/1`) or a comma list.
#[derive(Clone, Debug)]
enum TableauArg {
    Json(Tableau),
    Rows(Vec<Vec<Letter>>),
}

fn parse_tableau(s: &str) -> Result<TableauArg, String> {
    let s = s.trim();
    if s.starts_with('{') {
        return serde_json::from_str(s).map(TableauArg::Json).map_err(|e| e.to_string());
    }
    let row = |r: &str| -> Result<Vec<Letter>, String> {
        let bad = |_| format!("bad row {r:?}");
        if r.contains(',') {
            r.split(',').map(|x| x.trim().parse::<Letter>().map_err(bad)).collect()
        } else {
            r.chars().map(|c| c.to_digit(10).map(|d| d as Letter).ok_or(format!("bad row {r:?}"))).collect()
        }
    };
    s.split('/').filter(|r| !r.is_empty()).map(row).collect::<Result<_, _>>().map(TableauArg::Rows)
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    /// Node and edge counts only.
    Summary,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// `SDT(λ)` generated from its lowest weight element.
    Lambda,
    /// The ball of `SDT(−∞)` around `L^{−∞}`.
    Limit,
}

#[derive(Clone, Copy, ValueEnum)]
enum Formula {
    Verma,
    Sdt,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Gl,
    Q,
}

#[derive(clap::Args)]
struct TableauInput {
    /// Tableau as JSON or `/`-separated rows.
    #[arg(long, short, value_parser = parse_tableau, conflicts_with = "lowest")]
    tableau: Option<TableauArg>,
    /// Start from the lowest weight element of this shape instead.
    #[arg(long, value_delimiter = ',')]
    lowest: Option<Vec<usize>>,
    /// Rank, required for the row form.
    #[arg(long)]
    n: Option<usize>,
    /// Treat the tableau as an element of `SDT(−∞)`.
    #[arg(long)]
    limit: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the SDT conditions and classify largeness.
    Validate(TableauInput),
    /// Apply a composite of operators, rightmost first, e.g. `f-1,f2`.
    /// Without operators, print the element itself.
    Act {
        #[command(flatten)]
        input: TableauInput,
        #[arg(long, value_delimiter = ',')]
        ops: Vec<OperatorLabel>,
    },
    /// Like `act`, printing every intermediate element.
    Orbit {
        #[command(flatten)]
        input: TableauInput,
        #[arg(long, value_delimiter = ',')]
        ops: Vec<OperatorLabel>,
    },
    /// Crystal graph of `SDT(λ)` or of a ball in `SDT(−∞)`.
    Graph {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Strict partition, top row first.
        #[arg(long, value_delimiter = ',', required_if_eq("mode", "lambda"))]
        shape: Option<Vec<i64>>,
        /// Height bound of the ball.
        #[arg(long, required_if_eq("mode", "limit"))]
        depth: Option<i64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Character table as TSV of exponent vector and coefficient.
    Character {
        #[arg(long, value_enum)]
        formula: Formula,
        #[arg(long)]
        n: Option<usize>,
        /// Height bound for `verma`.
        #[arg(long, default_value_t = 6)]
        depth: u32,
        /// `λ` as a nonnegative tuple, for `sdt`.
        #[arg(long, value_delimiter = ',', required_if_eq("formula", "sdt"))]
        lam: Option<Vec<i64>>,
    },
    /// The bijection between root subsets and lowest weight elements.
    Xi {
        #[arg(long)]
        n: Option<usize>,
        /// Roots such as `2-3,1-4`.
        #[arg(long, conflicts_with = "inverse")]
        roots: Option<String>,
        /// Recover the roots of a lowest weight element.
        #[arg(long, value_parser = parse_tableau)]
        inverse: Option<TableauArg>,
        /// Print every step.
        #[arg(long)]
        trace: bool,
    },
    /// Component of `SDT(−∞) ⊗ R^∨_μ` generated by `L^{−∞} ⊗ r^∨_μ`.
    Cut {
        #[arg(long)]
        n: usize,
        /// `λ` as a nonnegative tuple.
        #[arg(long, value_delimiter = ',', required_unless_present = "mu", requires = "k")]
        lam: Option<Vec<i64>>,
        #[arg(long, requires = "lam")]
        k: Option<i64>,
        /// `μ` in signed coordinates, instead of `--lam` and `--k`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["lam", "verify"])]
        mu: Option<Vec<i64>>,
        /// Also write the component as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Compare with `SDT(λ)` and report.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check the crystal axioms on a graph JSON file.
    Axioms {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "q")]
        level: LevelArg,
    },
}

enum Failure {
    Usage(String),
    Domain(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<qcrystal::error::Error> for Failure {
    fn from(e: qcrystal::error::Error) -> Self {
        Failure::Domain(e.into())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

macro_rules! emit {
    ($out:expr, $($arg:tt)*) => {{
        $out.push_str(&format!($($arg)*));
        $out.push('\n');
    }};
}

type Outcome = std::result::Result<bool, Failure>;

fn resolve(arg: &TableauArg, n: Option<usize>) -> std::result::Result<Tableau, Failure> {
    match arg {
        TableauArg::Json(t) => match n {
            Some(n) if n != t.n() => Err(usage(format!("--n {n} disagrees with the tableau's rank {}", t.n()))),
            _ => Ok(t.clone()),
        },
        TableauArg::Rows(rows) => {
            let n = n.ok_or_else(|| usage("--n is required for the row form"))?;
            Tableau::new(n, rows.clone()).map_err(|e| usage(e.to_string()))
        }
    }
}

fn input_tableau(input: &TableauInput) -> std::result::Result<Tableau, Failure> {
    match (&input.tableau, &input.lowest) {
        (Some(arg), _) => resolve(arg, input.n),
        (None, Some(parts)) => {
            let shape = Shape::new(parts.clone()).map_err(|e| usage(e.to_string()))?;
            let n = input.n.unwrap_or(parts.len());
            Ok(lowest_generator(&shape, n).map_err(|e| usage(e.to_string()))?.tableau().clone())
        }
        (None, None) => Err(usage("one of --tableau or --lowest is required")),
    }
}

fn element(input: &TableauInput) -> std::result::Result<Element, Failure> {
    let t = input_tableau(input)?;
    Ok(if input.limit {
        Element::Limit(canonicalize(&t)?)
    } else {
        Element::Finite(FiniteElement::new(t)?)
    })
}

fn tableau_json(e: &Element) -> String {
    match e {
        Element::Finite(t) => serde_json::to_string(t.tableau()),
        Element::Limit(t) => serde_json::to_string(t.tableau()),
        _ => unreachable!("tableau elements only"),
    }
    .expect("serializable")
}

/// Applies `ops` rightmost first, returning each intermediate element.
fn apply_all(start: &Element, ops: &[OperatorLabel]) -> Result<Vec<(OperatorLabel, Option<Element>)>> {
    let mut out = Vec::new();
    let mut cur = Some(start.clone());
    for &op in ops.iter().rev() {
        cur = match cur {
            Some(x) => x.apply(op)?,
            None => None,
        };
        out.push((op, cur.clone()));
    }
    Ok(out)
}

fn print_graph(out: &mut String, g: &CrystalGraph, format: Format) {
    match format {
        Format::Json => emit!(out, "{}", g.to_json()),
        Format::Dot => out.push_str(&g.to_dot()),
        Format::Summary => {
            emit!(out, "nodes\t{}", g.len());
            emit!(out, "edges\t{}", g.edges.len());
        }
    }
}

fn print_series(out: &mut String, s: &CharacterSeries) {
    for (e, c) in &s.terms {
        if *c != 0 {
            let e: Vec<String> = e.iter().map(i64::to_string).collect();
            emit!(out, "{}\t{c}", e.join(","));
        }
    }
}

fn antidominant(parts: &[i64]) -> std::result::Result<AntidominantWeight, Failure> {
    AntidominantWeight::from_parts(parts.to_vec()).map_err(|e| usage(e.to_string()))
}

fn run(cli: Cli, out: &mut String) -> Outcome {
    let cap = cli.max_nodes;
    match cli.cmd {
        Cmd::Validate(input) => {
            let t = input_tableau(&input)?;
            let report = validate_sdt(&t);
            let report_json = serde_json::json!({
                "valid": report.valid,
                "violations": report.violations,
                "largeness": largeness(&t),
                "reading_word": t.reading_word().letters().iter().map(Letter::to_string).collect::<Vec<_>>().join(","),
            });
            emit!(out, "{}", serde_json::to_string_pretty(&report_json).context("serializing report")?);
            Ok(report.valid)
        }
        Cmd::Act { input, ops } => {
            let steps = apply_all(&element(&input)?, &ops)?;
            match steps.last() {
                None => emit!(out, "{}", tableau_json(&element(&input)?)),
                Some((_, Some(x))) => emit!(out, "{}", tableau_json(x)),
                Some((_, None)) => emit!(out, "null"),
            }
            Ok(true)
        }
        Cmd::Orbit { input, ops } => {
            let start = element(&input)?;
            emit!(out, "start\t{}", tableau_json(&start));
            for (op, x) in apply_all(&start, &ops)? {
                emit!(out, "{op}\t{}", x.as_ref().map_or("null".into(), tableau_json));
                if x.is_none() {
                    break;
                }
            }
            Ok(true)
        }
        Cmd::Graph { mode, shape, depth, n, format } => {
            let g = match mode {
                Mode::Lambda => {
                    let shape = shape.expect("required by clap");
                    let n = n.unwrap_or(shape.len());
                    if shape.len() > n {
                        return Err(usage(format!("shape {shape:?} has more than {n} rows")));
                    }
                    let mut parts = shape;
                    parts.resize(n, 0);
                    sdt_graph(&antidominant(&parts)?, cap)?
                }
                Mode::Limit => {
                    let n = n.ok_or_else(|| usage("--n is required with --mode limit"))?;
                    limit_ball(n, depth.expect("required by clap"), cap)?
                }
            };
            print_graph(out, &g, format);
            Ok(true)
        }
        Cmd::Character { formula, n, depth, lam } => {
            match formula {
                Formula::Verma => {
                    let n = n.ok_or_else(|| usage("--n is required with --formula verma"))?;
                    emit!(out, "# basis alpha, height <= {depth}");
                    emit!(out, "# {}", verma_product_string(n));
                    print_series(out, &verma_character(n, depth)?);
                }
                Formula::Sdt => {
                    let lam = lam.expect("required by clap");
                    if n.is_some_and(|n| n != lam.len()) {
                        return Err(usage("--n disagrees with the length of --lam"));
                    }
                    emit!(out, "# basis epsilon");
                    print_series(out, &sdt_character(&antidominant(&lam)?)?);
                }
            }
            Ok(true)
        }
        Cmd::Xi { n, roots, inverse, trace } => {
            if let Some(arg) = inverse {
                let t = canonicalize(&resolve(&arg, n)?)?;
                let peels = xi_inverse_traced(&t)?;
                if trace {
                    for p in &peels {
                        emit!(out, "{}\t{}", p.root, serde_json::to_string(&p.result).context("serializing")?);
                    }
                }
                let mut roots: Vec<Root> = peels.iter().map(|p| p.root).collect();
                roots.sort();
                emit!(out, "{}", roots.iter().map(Root::to_string).collect::<Vec<_>>().join(","));
            } else {
                let n = n.ok_or_else(|| usage("--n is required for the forward map"))?;
                let b = parse_roots(roots.as_deref().unwrap_or(""), n).map_err(|e| usage(e.to_string()))?;
                let tr = xi_forward_traced(&b, n)?;
                if trace {
                    for s in &tr.steps {
                        emit!(out, "# root {} (j={}, k={})", s.root, s.j, s.k);
                        for line in &s.log {
                            emit!(out, "#   {line}");
                        }
                        emit!(out, "# -> {}", serde_json::to_string(&s.result).context("serializing")?);
                    }
                }
                emit!(out, "{}", serde_json::to_string(tr.result.tableau()).context("serializing")?);
            }
            Ok(true)
        }
        Cmd::Cut { n, lam, k, mu, dot, verify, format } => {
            let (g, spec) = match (lam, k, mu) {
                (_, _, Some(mu)) => {
                    if mu.len() != n {
                        return Err(usage(format!("--mu has {} coordinates, expected {n}", mu.len())));
                    }
                    (cut_component_for(&Weight::new(mu), cap)?, None)
                }
                (Some(lam), Some(k), None) => {
                    if lam.len() != n {
                        return Err(usage(format!("--lam has {} parts, expected {n}", lam.len())));
                    }
                    let spec = CutSpec::new(antidominant(&lam)?, k).map_err(|e| usage(e.to_string()))?;
                    (cut_component(&spec, cap)?, Some(spec))
                }
                _ => unreachable!("required by clap"),
            };
            if let Some(path) = dot {
                fs::write(&path, g.to_dot()).with_context(|| format!("writing {}", path.display()))?;
            }
            if let (true, Some(spec)) = (verify, spec) {
                let r = verify_cut(&spec, cap)?;
                emit!(out, "{}", serde_json::to_string_pretty(&r).context("serializing report")?);
                Ok(r.isomorphic)
            } else {
                print_graph(out, &g, format);
                Ok(true)
            }
        }
        Cmd::Axioms { file, level } => {
            let text = fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let g: CrystalGraph = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", file.display())))?;
            let level = match level {
                LevelArg::Gl => Level::Gl,
                LevelArg::Q => Level::Q,
            };
            let r = check_axioms(&g, level);
            emit!(out, "{}", serde_json::to_string_pretty(&r).context("serializing report")?);
            Ok(r.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let outcome = run(cli, &mut out);
    // A closed pipe downstream is not an error of ours.
    let _ = io::stdout().lock().write_all(out.as_bytes());
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
