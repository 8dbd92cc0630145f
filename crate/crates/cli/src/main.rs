//! Command-line front end for `ciax`.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or input error,
//! 3 fiber cap exceeded. `CIAX_FIBER_CAP` overrides the fiber cap.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use ciax::verify::default_max_degree;
use ciax::{
    enumerate_admissible, eta, generators_component, generators_intersection_model, locate_point,
    sr_primary_decomposition, staircase_paths, AdmissibleGraph, CheckKind, Error, Point, Report,
    Shape, Verifier, DEFAULT_FIBER_CAP,
};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "ciax",
    version,
    about = "Exact checks for the intersection-axiom binomial ideal"
)]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Table of eta(p,q) for 1 <= p,q <= MAX.
    Eta {
        #[arg(long)]
        max: usize,
    },
    /// List the admissible graphs on [R2] and [R3].
    Enumerate {
        #[arg(long)]
        r2: usize,
        #[arg(long)]
        r3: usize,
    },
    /// Generators of I_M, or of P_G for the graph in GRAPHFILE.
    Generators {
        #[arg(long)]
        shape: Shape,
        #[arg(long, value_name = "GRAPHFILE")]
        component: Option<PathBuf>,
    },
    /// Per-multidegree Hilbert values of I_M and of the intersection of the
    /// initial ideals.
    Hilbert {
        #[arg(long)]
        shape: Shape,
        #[arg(long)]
        maxdeg: Option<u32>,
    },
    /// Staircase paths of an R x S matrix.
    Staircase {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
    /// Minimal primes of the initial ideal of P_G.
    DecomposeInitial {
        #[arg(long)]
        shape: Shape,
        #[arg(long, value_name = "FILE")]
        graph: PathBuf,
    },
    /// Run the degreewise checks.
    Verify {
        #[arg(long)]
        shape: Shape,
        #[arg(long)]
        maxdeg: Option<u32>,
        #[arg(long, value_delimiter = ',')]
        checks: Vec<CheckKind>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Samples per component for the variety check.
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Components V(P_G) containing the point in FILE.
    Locate {
        #[arg(long)]
        shape: Shape,
        #[arg(long, value_name = "FILE")]
        point: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Cap(String),
    /// stdout was closed early, e.g. by `head`.
    Closed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::FiberCapExceeded { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::Closed;
        }
        Failure::Usage(e.to_string())
    }
}

type Out<'a> = &'a mut dyn Write;

fn fiber_cap() -> Result<usize, Failure> {
    match std::env::var("CIAX_FIBER_CAP") {
        Err(_) => Ok(DEFAULT_FIBER_CAP),
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::Usage(format!("CIAX_FIBER_CAP=`{v}` is not a nonnegative integer"))
        }),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path, shape: Shape) -> Result<AdmissibleGraph, Failure> {
    let g: AdmissibleGraph = read_json(path)?;
    if (g.left(), g.right()) != (shape.r2(), shape.r3()) {
        return Err(Failure::Usage(format!(
            "{}: graph on [{}] and [{}] does not fit shape {shape}",
            path.display(),
            g.left(),
            g.right()
        )));
    }
    Ok(g)
}

fn print_json(out: Out, v: &impl Serialize) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn eta_cmd(out: Out, json: bool, max: usize) -> Result<(), Failure> {
    let table: Vec<Vec<String>> = (1..=max)
        .map(|p| (1..=max).map(|q| eta(p, q).to_string()).collect())
        .collect();
    if json {
        let rows: Vec<Value> = table
            .iter()
            .enumerate()
            .flat_map(|(p, row)| {
                row.iter().enumerate().map(move |(q, n)| {
                    let n = n
                        .parse::<u64>()
                        .map(Value::from)
                        .unwrap_or_else(|_| json!(n));
                    json!({"p": p + 1, "q": q + 1, "eta": n})
                })
            })
            .collect();
        return print_json(out, &json!({"max": max, "eta": rows}));
    }
    let width = table
        .iter()
        .flatten()
        .map(String::len)
        .chain([max.to_string().len(), 3])
        .max()
        .unwrap_or(1);
    write!(out, "{:>width$}", "p\\q")?;
    for q in 1..=max {
        write!(out, " {q:>width$}")?;
    }
    writeln!(out)?;
    for (p, row) in table.iter().enumerate() {
        write!(out, "{:>width$}", p + 1)?;
        for n in row {
            write!(out, " {n:>width$}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn enumerate_cmd(out: Out, json: bool, r2: usize, r3: usize) -> Result<(), Failure> {
    if r2 == 0 || r3 == 0 {
        return Err(Failure::Usage("--r2 and --r3 must be positive".into()));
    }
    let graphs = enumerate_admissible(r2, r3);
    if json {
        return print_json(out, &graphs);
    }
    writeln!(
        out,
        "{} admissible graphs on [{r2}] and [{r3}]",
        graphs.len()
    )?;
    for (n, g) in graphs.iter().enumerate() {
        let blocks: Vec<String> = g
            .blocks()
            .iter()
            .map(|b| format!("{{{}}}x{{{}}}", list(&b.j), list(&b.k)))
            .collect();
        writeln!(out, "{:>4}  {}  blocks {}", n + 1, g, blocks.join(" "))?;
    }
    Ok(())
}

fn generators_cmd(
    out: Out,
    json: bool,
    shape: Shape,
    component: Option<&Path>,
) -> Result<(), Failure> {
    let (title, ideal) = match component {
        None => ("I_M".to_string(), generators_intersection_model(shape)),
        Some(path) => {
            let g = read_graph(path, shape)?;
            (
                format!("P_G for G = {g}"),
                generators_component(&g, shape.r1())?,
            )
        }
    };
    if json {
        return print_json(out, &ideal);
    }
    writeln!(
        out,
        "{title} on {shape}: {} variables, {} binomials",
        ideal.monomials().len(),
        ideal.binomials().len()
    )?;
    for v in ideal.monomials() {
        writeln!(out, "{v}")?;
    }
    for b in ideal.binomials() {
        writeln!(out, "{b}")?;
    }
    Ok(())
}

fn print_report(out: Out, r: &Report) -> Result<(), Failure> {
    let verdict = if r.passed() { "pass" } else { "FAIL" };
    writeln!(out, "{:<8} {verdict}  {}", r.check, r.summary)?;
    if let Some(cx) = &r.counterexample {
        writeln!(out, "         counterexample: {cx}")?;
    }
    Ok(())
}

fn hilbert_cmd(out: Out, json: bool, shape: Shape, maxdeg: Option<u32>) -> Result<bool, Failure> {
    let max = maxdeg.unwrap_or_else(|| default_max_degree(shape));
    let v = Verifier::new(shape)?.with_cap(fiber_cap()?);
    let report = v.hilbert(max)?;
    eprintln!("hilbert: {:.3?}", report.elapsed);
    if json {
        print_json(out, &report)?;
        return Ok(report.passed());
    }
    writeln!(
        out,
        "{:<40} {:>8} {:>8} {:>8}",
        "multidegree", "fiber", "H(I_M)", "H(in)"
    )?;
    for row in report
        .detail
        .iter()
        .filter(|r| r.get("multidegree").is_some())
    {
        let d = &row["multidegree"];
        let label = format!("{} | {}", join(&d["rows"]), join(&d["slices"]));
        writeln!(
            out,
            "{label:<40} {:>8} {:>8} {:>8}",
            row["fiber"].to_string(),
            row["hilbert_model"].to_string(),
            row["hilbert_intersection"].to_string()
        )?;
    }
    print_report(out, &report)?;
    Ok(report.passed())
}

fn list(xs: &[usize]) -> String {
    xs.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn join(v: &Value) -> String {
    v.as_array()
        .map(|a| a.iter().map(Value::to_string).collect::<Vec<_>>().join(","))
        .unwrap_or_default()
}

fn staircase_cmd(out: Out, json: bool, rows: usize, cols: usize) -> Result<(), Failure> {
    if rows == 0 || cols == 0 {
        return Err(Failure::Usage("--rows and --cols must be positive".into()));
    }
    let paths = staircase_paths(rows, cols);
    if json {
        return print_json(out, &paths);
    }
    writeln!(
        out,
        "{} staircase paths in a {rows}x{cols} matrix",
        paths.len()
    )?;
    for p in &paths {
        let cells: Vec<String> = p
            .cells()
            .iter()
            .map(|(a, c)| format!("({a},{c})"))
            .collect();
        writeln!(out, "{}", cells.join(" "))?;
    }
    Ok(())
}

fn decompose_cmd(out: Out, json: bool, shape: Shape, graph: &Path) -> Result<(), Failure> {
    let g = read_graph(graph, shape)?;
    let primes = sr_primary_decomposition(&g, shape.r1());
    if json {
        return print_json(out, &json!({"shape": shape, "graph": g, "primes": primes}));
    }
    writeln!(out, "{} minimal primes of in(P_G), G = {g}", primes.len())?;
    for p in &primes {
        let vars: Vec<String> = p.variables().iter().map(ToString::to_string).collect();
        writeln!(out, "<{}>", vars.join(", "))?;
    }
    Ok(())
}

fn verify_cmd(
    out: Out,
    json: bool,
    shape: Shape,
    maxdeg: Option<u32>,
    checks: &[CheckKind],
    seed: u64,
    samples: usize,
) -> Result<bool, Failure> {
    let max = maxdeg.unwrap_or_else(|| default_max_degree(shape));
    let kinds: Vec<CheckKind> = if checks.is_empty() {
        CheckKind::ALL.to_vec()
    } else {
        checks.to_vec()
    };
    let v = Verifier::new(shape)?.with_cap(fiber_cap()?);
    let reports = v.run_all(&kinds, max, samples, seed)?;
    for r in &reports {
        eprintln!("{}: {:.3?}", r.check, r.elapsed);
    }
    let ok = reports.iter().all(Report::passed);
    if json {
        print_json(out, &reports)?;
    } else {
        writeln!(out, "shape {shape}, total degree <= {max}, seed {seed}")?;
        for r in &reports {
            print_report(out, r)?;
        }
    }
    Ok(ok)
}

fn locate_cmd(out: Out, json: bool, shape: Shape, path: &Path) -> Result<(), Failure> {
    let p: Point = read_json(path)?;
    if p.shape() != shape {
        return Err(Failure::Usage(format!(
            "{}: point has shape {}, expected {shape}",
            path.display(),
            p.shape()
        )));
    }
    let loc = locate_point(&p);
    if json {
        return print_json(out, &loc);
    }
    writeln!(out, "point: {p}")?;
    writeln!(
        out,
        "on V(I_M): {}",
        if loc.on_model { "yes" } else { "no" }
    )?;
    writeln!(out, "support graph: {}", loc.support)?;
    writeln!(out, "{} components:", loc.graphs.len())?;
    for g in &loc.graphs {
        writeln!(out, "  {g}")?;
    }
    if loc.on_model && !loc.rules_agree {
        writeln!(out, "support rule disagrees: {:?}", loc.by_support_rule)?;
    }
    Ok(())
}

fn run(cli: Cli, out: Out) -> Result<bool, Failure> {
    let json = cli.json;
    match cli.command {
        Command::Eta { max } => eta_cmd(out, json, max)?,
        Command::Enumerate { r2, r3 } => enumerate_cmd(out, json, r2, r3)?,
        Command::Generators { shape, component } => {
            generators_cmd(out, json, shape, component.as_deref())?
        }
        Command::Hilbert { shape, maxdeg } => return hilbert_cmd(out, json, shape, maxdeg),
        Command::Staircase { rows, cols } => staircase_cmd(out, json, rows, cols)?,
        Command::DecomposeInitial { shape, graph } => decompose_cmd(out, json, shape, &graph)?,
        Command::Verify {
            shape,
            maxdeg,
            checks,
            seed,
            samples,
        } => return verify_cmd(out, json, shape, maxdeg, &checks, seed, samples),
        Command::Locate { shape, point } => locate_cmd(out, json, shape, &point)?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = run(cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(true) | Err(Failure::Closed) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
