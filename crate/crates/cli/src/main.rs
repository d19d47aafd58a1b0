use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};

use qgc::codes::{assert_distance, check_codewords, DistanceReport, Violation};
use qgc::constructions::{default_partition, hypercube16_code, partition_code, star_code_odd, PartitionSpec};
use qgc::distance::{build_distance_table_with, Distance, TableOptions};
use qgc::oracle::{kl_verify_words, KlReport};
use qgc::search::{search_additive_in, search_code_in, search_table, SearchOptions};
use qgc::stabilizer::{stabilizer_subgroup, verify_stabilizer, StabilizerGroup, MAXIMALITY_LIMIT};
use qgc::{build_family, parse_graph, CodeReport, Error, Family, FamilyOptions, Graph, GraphCode, ModTuple};

const EXIT_INVALID: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(name = "qgc", version, about = "Search, construct and verify qudit graph codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find the largest code with distance delta on one graph.
    Search(SearchArgs),
    /// Build a closed-form code.
    Construct(ConstructArgs),
    /// Re-check a code report.
    Verify(VerifyArgs),
    /// Compute and check the stabilizer of an additive code report.
    Stabilizer(StabilizerArgs),
    /// Maximum K for a graph family over a range of n.
    Table(TableArgs),
    /// Print the distance table of a graph.
    Distances(DistancesArgs),
}

#[derive(Args)]
struct GraphArgs {
    /// Graph file: a "D n" header followed by n adjacency rows.
    #[arg(long, conflicts_with_all = ["family", "n"])]
    graph: Option<PathBuf>,
    #[arg(long)]
    family: Option<Family>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long = "D")]
    d: Option<u32>,
    /// Cycle only: give edge {1,2} weight 2.
    #[arg(long)]
    double_edge: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    delta: u32,
    /// Restrict to codes closed under addition.
    #[arg(long)]
    additive_only: bool,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    budget: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Single-threaded.
    #[arg(long)]
    seq: bool,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Method {
    Partition,
    StarOdd,
    Hypercube16,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    method: Method,
    #[command(flatten)]
    graph: GraphArgs,
    /// Partition side V1 as 1-based vertices, comma separated.
    #[arg(long, value_delimiter = ',')]
    v1: Option<Vec<usize>>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    code: PathBuf,
    /// Also run the dense Knill-Laflamme check.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct StabilizerArgs {
    #[arg(long)]
    code: PathBuf,
    /// Most elements to print.
    #[arg(long, default_value_t = 64)]
    show: usize,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    family: Family,
    #[arg(long = "D")]
    d: u32,
    #[arg(long)]
    n_min: usize,
    #[arg(long)]
    n_max: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    delta: Vec<u32>,
    /// Budget in seconds per entry.
    #[arg(long)]
    budget: Option<f64>,
    #[arg(long)]
    double_edge: bool,
    #[arg(long)]
    additive_only: bool,
    #[arg(long)]
    seq: bool,
}

#[derive(Args)]
struct DistancesArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    cap: u32,
    #[arg(long)]
    seq: bool,
}

enum Failure {
    Invalid(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Search(a) => cmd_search(a),
        Command::Construct(a) => cmd_construct(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Stabilizer(a) => cmd_stabilizer(a),
        Command::Table(a) => cmd_table(a),
        Command::Distances(a) => cmd_distances(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(EXIT_VERIFY)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn load_graph(a: &GraphArgs) -> Result<Graph, Failure> {
    if let Some(path) = &a.graph {
        let g = parse_graph(&read(path)?)?;
        if a.d.is_some_and(|d| d != g.modulus()) {
            return Err(Failure::Invalid(format!("--D disagrees with the graph file (D = {})", g.modulus())));
        }
        return Ok(g);
    }
    let (Some(family), Some(n), Some(d)) = (a.family, a.n, a.d) else {
        return Err(Failure::Invalid("give --graph FILE or all of --family, --n and --D".into()));
    };
    Ok(build_family(family, n, d, FamilyOptions { double_edge: a.double_edge })?)
}

fn write_report(report: &CodeReport, out: Option<&Path>) -> Result<(), Failure> {
    let text = report.to_json()? + "\n";
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn budget(secs: Option<f64>) -> Result<Option<Duration>, Failure> {
    secs.map(|s| Duration::try_from_secs_f64(s).map_err(|e| Failure::Invalid(format!("bad budget: {e}")))).transpose()
}

/// The stabilizer for the report, if the code is additive and it fits in memory.
fn report_stabilizer(code: &GraphCode) -> Result<Option<StabilizerGroup>, Failure> {
    if !code.additive() {
        return Ok(None);
    }
    match stabilizer_subgroup(code) {
        Ok(s) => Ok(Some(s)),
        Err(Error::Capacity { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn describe(v: &Violation) -> String {
    match v {
        Violation::Diagonal { size } => format!("a product of size {size} fixes |G>"),
        Violation::Pair { a, b, distance } => format!("codewords {a} and {b} are at distance {distance}"),
    }
}

fn search_outcome(g: &Graph, delta: u32, opts: &SearchOptions, additive: bool) -> Result<(CodeReport, u8), Failure> {
    let start = Instant::now();
    let table = search_table(g, delta, opts)?;
    let found = if additive { search_additive_in(&table, delta, opts) } else { search_code_in(&table, delta, opts) };
    let code = match found {
        Ok(code) => code,
        Err(Error::DegenerateRegime { .. }) => {
            let r = CodeReport::refused(
                g,
                delta,
                table.diagonal_distance(),
                "diagonal-distance",
                start.elapsed().as_secs_f64(),
            );
            return Ok((r, 0));
        }
        Err(e) => return Err(e.into()),
    };
    let check = assert_distance(&code, &table)?;
    let stab = report_stabilizer(&code)?;
    let report = CodeReport::from_code(&code, table.diagonal_distance(), stab.as_ref(), start.elapsed().as_secs_f64())?;
    let status = match &check.violation {
        Some(v) => {
            eprintln!("internal check failed: {}", describe(v));
            EXIT_VERIFY
        }
        None if !code.exhaustive() => EXIT_BUDGET,
        None => 0,
    };
    Ok((report, status))
}

fn cmd_search(a: SearchArgs) -> Outcome {
    let g = load_graph(&a.graph)?;
    let opts = SearchOptions { budget: budget(a.budget)?, parallel: !a.seq };
    let (report, status) = search_outcome(&g, a.delta, &opts, a.additive_only)?;
    write_report(&report, a.out.as_deref())?;
    match &report.reason {
        Some(reason) => eprintln!("K=0 ({reason})"),
        None => eprintln!(
            "K={} additive={} exhaustive={} qs_bound={}",
            report.k, report.additive, report.exhaustive, report.qs_bound
        ),
    }
    Ok(status)
}

fn cmd_construct(a: ConstructArgs) -> Outcome {
    let start = Instant::now();
    let code = match a.method {
        Method::Hypercube16 => hypercube16_code()?,
        Method::StarOdd => {
            let n = a.graph.n.ok_or_else(|| Failure::Invalid("star-odd needs --n".into()))?;
            if a.graph.d.is_some_and(|d| d != 2) {
                return Err(Failure::Invalid("star-odd codes are qubit codes (D = 2)".into()));
            }
            star_code_odd(n)?
        }
        Method::Partition => {
            let g = load_graph(&a.graph)?;
            let v1 = match (&a.v1, a.graph.family) {
                (Some(list), _) => list
                    .iter()
                    .map(|&v| v.checked_sub(1).ok_or_else(|| Failure::Invalid("vertices are 1-based".into())))
                    .collect::<Result<Vec<_>, _>>()?,
                (None, Some(f)) => default_partition(f, g.n(), g.modulus())?,
                (None, None) => return Err(Failure::Invalid("give --v1 for a graph file".into())),
            };
            partition_code(&PartitionSpec::new(g, &v1)?)?
        }
    };
    let cap = code.delta().saturating_sub(1).max(1);
    let table = build_distance_table_with(code.graph(), cap, TableOptions::default())?;
    let check = assert_distance(&code, &table)?;
    if let Some(v) = &check.violation {
        return Err(Failure::Verification(describe(v)));
    }
    let stab = report_stabilizer(&code)?;
    let report = CodeReport::from_code(&code, table.diagonal_distance(), stab.as_ref(), start.elapsed().as_secs_f64())?;
    write_report(&report, a.out.as_deref())?;
    eprintln!("K={} delta={} additive={}", report.k, report.delta, report.additive);
    Ok(0)
}

fn print_distance(r: &DistanceReport) -> bool {
    match &r.violation {
        None => println!("distance {}: pass ({} pairs)", r.delta, r.pairs_checked),
        Some(v) => println!("distance {}: FAIL, {}", r.delta, describe(v)),
    }
    r.passed()
}

fn print_kl(r: &KlReport) -> bool {
    match &r.violation {
        None => println!(
            "Knill-Laflamme below {}: pass ({} products, {})",
            r.delta,
            r.products_checked,
            if r.nondegenerate() { "all f(Q) = 0" } else { "some f(Q) nonzero" }
        ),
        Some(v) => println!("Knill-Laflamme below {}: FAIL, {v}", r.delta),
    }
    r.passed()
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    let report = CodeReport::from_json(&read(&a.code)?)?;
    if report.k == 0 {
        println!("no code to verify ({})", report.reason.as_deref().unwrap_or("K = 0"));
        return Ok(0);
    }
    let g = report.graph()?;
    let words =
        report.codewords.iter().map(|s| ModTuple::from_digit_string(report.d, s)).collect::<Result<Vec<_>, _>>()?;
    let mut problems = Vec::new();
    if words.len() != report.k {
        problems.push(format!("K = {} but {} codewords listed", report.k, words.len()));
    }
    let code = GraphCode::new(g.clone(), report.delta, words.clone(), report.exhaustive);
    match &code {
        Ok(c) => {
            if c.additive() != report.additive {
                problems.push(format!("additive flag says {}, codewords say {}", report.additive, c.additive()));
            }
            if c.qs_saturated() != report.qs_saturated || c.qs_bound() != report.qs_bound {
                problems.push("quantum Singleton fields disagree with K".into());
            }
            if c.k() as u128 > c.qs_bound() {
                problems.push(format!("K = {} exceeds the quantum Singleton bound {}", c.k(), c.qs_bound()));
            }
        }
        Err(e) => problems.push(format!("not a graph code: {e}")),
    }
    if report.delta >= 2 {
        let table = build_distance_table_with(&g, report.delta - 1, TableOptions::default())?;
        let r = match &code {
            Ok(c) => assert_distance(c, &table)?,
            Err(_) => check_codewords(&table, report.delta, &words)?,
        };
        if !print_distance(&r) {
            problems.push("distance check".into());
        }
    }
    if a.oracle {
        let r = kl_verify_words::<f64>(&g, &words, report.delta)?;
        if !print_kl(&r) {
            problems.push("Knill-Laflamme check".into());
        }
    }
    if problems.is_empty() {
        Ok(0)
    } else {
        Err(Failure::Verification(problems.join("; ")))
    }
}

fn cmd_stabilizer(a: StabilizerArgs) -> Outcome {
    let report = CodeReport::from_json(&read(&a.code)?)?;
    let code = report.to_code()?;
    let stab = stabilizer_subgroup(&code)?;
    let r = verify_stabilizer(&code, &stab)?;
    let total = qgc::limits::pow(code.modulus(), code.n());
    println!("|S| = {}", stab.order());
    println!(
        "|C||S| = {} * {} = {} {} D^n = {}",
        code.k(),
        stab.order(),
        code.k() as u128 * stab.order(),
        if code.k() as u128 * stab.order() == total { "=" } else { "!=" },
        total
    );
    println!("checked every element: {}", r.exhaustive);
    match r.fixed_labels {
        Some(f) => println!("labels fixed by S: {f} (K = {})", code.k()),
        None => println!("labels fixed by S: not counted (D^n above the memory cap)"),
    }
    if !r.maximality_checked {
        println!("maximality sweep skipped (D^n > {MAXIMALITY_LIMIT})");
    }
    for (s, t) in stab.members().iter().take(a.show) {
        println!("  {s}  {t}");
    }
    if stab.members().len() > a.show {
        println!("  ... {} more", stab.members().len() - a.show);
    }
    if r.passed() {
        println!("all stabilizer checks pass");
        Ok(0)
    } else {
        let msgs: Vec<String> = r.violations.iter().map(|v| v.to_string()).collect();
        Err(Failure::Verification(msgs.join("; ")))
    }
}

fn cell(report: &CodeReport) -> String {
    let mut s = String::new();
    if !report.exhaustive {
        s.push('≥');
    }
    write!(s, "{}", report.k).unwrap();
    if report.k > 0 && !report.additive {
        s.push('b');
    }
    if report.k > 0 && report.qs_saturated {
        s.push('c');
    }
    s
}

fn cmd_table(a: TableArgs) -> Outcome {
    if a.n_min > a.n_max {
        return Err(Failure::Invalid("--n-min exceeds --n-max".into()));
    }
    let opts = SearchOptions { budget: budget(a.budget)?, parallel: !a.seq };
    println!("# {} D={} (≥: search stopped early, b: nonadditive, c: saturates the Singleton bound)", a.family, a.d);
    let mut header = format!("{:>4}", "n");
    for d in &a.delta {
        write!(header, " {:>8}", format!("δ={d}")).unwrap();
    }
    println!("{header}");
    for n in a.n_min..=a.n_max {
        let mut line = format!("{n:>4}");
        let g = match build_family(a.family, n, a.d, FamilyOptions { double_edge: a.double_edge }) {
            Ok(g) => Some(g),
            Err(Error::UnsupportedFamily { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        for &delta in &a.delta {
            let text = match &g {
                None => "-".to_string(),
                Some(g) => match search_outcome(g, delta, &opts, a.additive_only) {
                    Ok((_, EXIT_VERIFY)) => return Err(Failure::Verification(format!("n={n} delta={delta}"))),
                    Ok((r, _)) => cell(&r),
                    Err(Failure::Invalid(msg)) if delta as usize > n + 1 || delta < 2 => {
                        eprintln!("n={n} delta={delta}: {msg}");
                        "-".to_string()
                    }
                    Err(e) => return Err(e),
                },
            };
            write!(line, " {text:>8}").unwrap();
        }
        println!("{line}");
    }
    Ok(0)
}

fn cmd_distances(a: DistancesArgs) -> Outcome {
    let g = load_graph(&a.graph)?;
    let table = build_distance_table_with(&g, a.cap, TableOptions { parallel: !a.seq, ..TableOptions::default() })?;
    print!("{}", table.dump());
    if let Distance::Finite(d) = table.diagonal_distance() {
        eprintln!("diagonal distance {d}");
    }
    Ok(0)
}
