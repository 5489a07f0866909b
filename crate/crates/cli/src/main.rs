//! `pcm` — analyze reciprocal pairwise-comparison matrices from the
//! command line: index reports, matrix generators, axiom verdict tables,
//! corner-matrix sweeps, and Monte Carlo random-index estimation.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pcm::axioms::{self, IndexFn, RandomScale, VerdictTable};
use pcm::matrix::{DEFAULT_CONSISTENCY_TOL, DEFAULT_RECIPROCITY_TOL};
use pcm::{io, ComparisonMatrix, CornerSpec, IndexName, RiTable, WeightMethod};

#[derive(Parser)]
#[command(
    name = "pcm",
    version,
    about = "Pairwise comparison matrix analysis: priority weights, inconsistency indices, axiom checks"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Seed for every randomized computation
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Weight vector method for GWI and GCI
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Gm)]
    method: MethodArg,

    /// Reciprocity tolerance when reading matrix files
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Exit nonzero when axiom verdicts differ from the reference pattern
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Gm,
    Em,
}

impl From<MethodArg> for WeightMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Gm => WeightMethod::Gm,
            MethodArg::Em => WeightMethod::Em,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Read a matrix file and print all inconsistency indices
    Analyze {
        /// CSV matrix file (n rows of n comma-separated positive numbers)
        file: PathBuf,
        /// Random-index table file (JSON) to use for CR instead of the
        /// bundled one
        #[arg(long)]
        ri_table: Option<PathBuf>,
    },
    /// Write a generated matrix as CSV
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Check indices against the six axioms and print the verdict table
    Axioms {
        /// Index names (ci, gwi, gci, pli, ric, kii) or "all"
        #[arg(default_value = "all")]
        indices: Vec<String>,
        /// Random trials per (index, axiom) check
        #[arg(long, default_value_t = axioms::DEFAULT_TRIALS)]
        trials: usize,
    },
    /// Sweep corner matrices of order 3 and tabulate every index
    Table2 {
        /// Corner values x >= 1 (default: 1..10 and 100)
        #[arg(long, value_delimiter = ',')]
        x: Option<Vec<f64>>,
    },
    /// Estimate the random index R.I. by Monte Carlo
    Ri {
        /// Order or inclusive range of orders, e.g. "5" or "3..8"
        range: String,
        /// Random matrices per order
        #[arg(default_value_t = 100_000)]
        samples: usize,
        /// Write the resulting table as JSON
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// All-ones matrix with a_1n = x and a_n1 = 1/x
    Corner {
        n: usize,
        x: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Upper triangle sampled i.i.d. from a scale, reciprocals derived
    Random {
        n: usize,
        /// "saaty" (the 17-value discrete scale) or "log:LO:HI"
        #[arg(long, default_value = "saaty")]
        scale: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Consistent matrix a_ij = w_i / w_j from positive weights
    Weights {
        #[arg(required = true)]
        w: Vec<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum CliError {
    Usage(String),
    InvalidInput(String),
    StrictMismatch(Vec<String>),
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Internal(_) => 1,
            CliError::InvalidInput(_) => 2,
            CliError::StrictMismatch(_) => 3,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::InvalidInput(e.to_string())
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            match &err {
                CliError::Usage(msg) => eprintln!("error: {msg}"),
                CliError::InvalidInput(msg) => eprintln!("error: invalid input: {msg}"),
                CliError::Internal(msg) => eprintln!("error: {msg}"),
                CliError::StrictMismatch(mismatches) => {
                    eprintln!("error: verdicts differ from the reference pattern:");
                    for m in mismatches {
                        eprintln!("  {m}");
                    }
                }
            }
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let method: WeightMethod = cli.method.into();
    match cli.command {
        Command::Analyze { ref file, ref ri_table } => {
            cmd_analyze(file, ri_table.as_deref(), method, cli.format, cli.tol)
        }
        Command::Gen { ref kind } => cmd_gen(kind, cli.seed),
        Command::Axioms {
            ref indices,
            trials,
        } => cmd_axioms(indices, trials, cli.seed, method, cli.format, cli.strict),
        Command::Table2 { ref x } => cmd_table2(x.as_deref(), method, cli.format),
        Command::Ri {
            ref range,
            samples,
            ref output,
        } => cmd_ri(range, samples, cli.seed, output.as_deref(), cli.format),
    }
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

fn cmd_analyze(
    file: &std::path::Path,
    ri_table: Option<&std::path::Path>,
    method: WeightMethod,
    format: Format,
    tol: Option<f64>,
) -> Result<(), CliError> {
    let text = fs::read_to_string(file)
        .map_err(|e| internal(format!("cannot read {}: {e}", file.display())))?;
    let matrix: ComparisonMatrix<f64> =
        io::parse_csv(&text, tol.unwrap_or(DEFAULT_RECIPROCITY_TOL)).map_err(invalid)?;

    let table: RiTable<f64> = match ri_table {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| internal(format!("cannot read {}: {e}", path.display())))?;
            RiTable::from_json(&text).map_err(invalid)?
        }
        None => RiTable::bundled(),
    };
    let ri = table.get(matrix.order()).is_some().then_some(&table);

    let report = pcm::report(&matrix, ri, method).map_err(internal)?;
    let consistent = matrix.is_consistent(DEFAULT_CONSISTENCY_TOL);

    match format {
        Format::Json => {
            let mut doc = report.to_json();
            doc.as_object_mut()
                .expect("report is an object")
                .insert("consistent".into(), serde_json::json!(consistent));
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
        }
        _ => {
            let n = report.n;
            println!("matrix: {n}x{n} ({})", file.display());
            println!("weight method: {}", report.weight_method);
            println!("lambda_max: {:.4}", report.lambda_max);
            println!("consistent: {}", if consistent { "yes" } else { "no" });
            println!();
            for &(name, value) in report.values() {
                match name {
                    IndexName::Cr => {
                        let ri_used = report.ri_used.expect("CR implies a table entry");
                        println!("{:<4} {:>9.4}   [R.I.({n}) = {:.4}]", "CR", value, ri_used);
                    }
                    _ => println!("{:<4} {:>9.4}", name.as_str(), value),
                }
            }
            if let Some(cr) = report.get(IndexName::Cr) {
                println!();
                if cr <= 0.10 {
                    println!("CR <= 0.10 (conventionally acceptable; informational only)");
                } else {
                    println!("CR > 0.10 (conventionally high; informational only)");
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

fn parse_scale(text: &str) -> Result<RandomScale, CliError> {
    if text.eq_ignore_ascii_case("saaty") {
        return Ok(RandomScale::SaatyDiscrete);
    }
    if let Some(rest) = text.strip_prefix("log:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() == 2 {
            let lo: f64 = parts[0]
                .parse()
                .map_err(|_| CliError::Usage(format!("bad scale bound '{}'", parts[0])))?;
            let hi: f64 = parts[1]
                .parse()
                .map_err(|_| CliError::Usage(format!("bad scale bound '{}'", parts[1])))?;
            return Ok(RandomScale::LogUniform { lo, hi });
        }
    }
    Err(CliError::Usage(format!(
        "unknown scale '{text}', expected \"saaty\" or \"log:LO:HI\""
    )))
}

fn write_matrix(m: &ComparisonMatrix<f64>, output: Option<&std::path::Path>) -> Result<(), CliError> {
    let csv = io::to_csv(m);
    match output {
        Some(path) => fs::write(path, csv)
            .map_err(|e| internal(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn cmd_gen(kind: &GenKind, seed: u64) -> Result<(), CliError> {
    match kind {
        GenKind::Corner { n, x, output } => {
            let spec = CornerSpec::new(*n, *x).map_err(invalid)?;
            write_matrix(&ComparisonMatrix::corner(spec), output.as_deref())
        }
        GenKind::Random { n, scale, output } => {
            use rand::SeedableRng;
            let scale = parse_scale(scale)?;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let m = axioms::random_reciprocal::<f64>(*n, scale, &mut rng).map_err(invalid)?;
            write_matrix(&m, output.as_deref())
        }
        GenKind::Weights { w, output } => {
            let m = ComparisonMatrix::from_weights(w).map_err(invalid)?;
            write_matrix(&m, output.as_deref())
        }
    }
}

// ---------------------------------------------------------------------------
// axioms
// ---------------------------------------------------------------------------

fn standard_or_named(
    names: &[String],
    method: WeightMethod,
) -> Result<Vec<IndexFn<f64>>, CliError> {
    if names.len() == 1 && names[0].eq_ignore_ascii_case("all") {
        return Ok(IndexFn::standard_six(method));
    }
    names
        .iter()
        .map(|name| IndexFn::by_name(name, method).map_err(|e| CliError::Usage(e.to_string())))
        .collect()
}

fn render_counterexamples(table: &VerdictTable) -> String {
    let mut out = String::new();
    for row in &table.rows {
        for v in &row.verdicts {
            let Some(ce) = &v.counterexample else { continue };
            let _ = writeln!(
                out,
                "{}/{}: {}",
                row.index,
                v.axiom,
                v.note.as_deref().unwrap_or("violation")
            );
            let _ = writeln!(out, "  matrix:");
            for r in &ce.matrix {
                let cells: Vec<String> = r.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "    {}", cells.join(","));
            }
            for (label, value) in &ce.observed {
                let _ = writeln!(out, "  {label} = {value:.6}");
            }
        }
    }
    out
}

fn cmd_axioms(
    names: &[String],
    trials: usize,
    seed: u64,
    method: WeightMethod,
    format: Format,
    strict: bool,
) -> Result<(), CliError> {
    let indices = standard_or_named(names, method)?;
    let table = axioms::verdict_table(&indices, seed, trials);

    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&table.to_json()).expect("serializes")
        ),
        _ => {
            print!("{}", table.render_text());
            let counterexamples = render_counterexamples(&table);
            if !counterexamples.is_empty() {
                println!("\ncounterexamples:");
                print!("{counterexamples}");
            }
        }
    }

    if strict {
        let mismatches = table.mismatches();
        if !mismatches.is_empty() {
            return Err(CliError::StrictMismatch(mismatches));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// table2
// ---------------------------------------------------------------------------

const TABLE2_DEFAULT_X: [f64; 11] = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0, 100.0];
const TABLE2_COLUMNS: [IndexName; 6] = [
    IndexName::Ric,
    IndexName::Ci,
    IndexName::Gwi,
    IndexName::Pli,
    IndexName::Kii,
    IndexName::Gci,
];

fn cmd_table2(x: Option<&[f64]>, method: WeightMethod, format: Format) -> Result<(), CliError> {
    let xs: Vec<f64> = match x {
        Some(xs) => xs.to_vec(),
        None => TABLE2_DEFAULT_X.to_vec(),
    };
    if let Some(bad) = xs.iter().find(|&&x| x < 1.0) {
        return Err(CliError::InvalidInput(format!(
            "corner value {bad} is below 1; the sweep covers x >= 1"
        )));
    }

    let mut rows: Vec<(f64, Vec<f64>)> = Vec::with_capacity(xs.len());
    for &x in &xs {
        let spec = CornerSpec::new(3, x).map_err(invalid)?;
        let corner = ComparisonMatrix::corner(spec);
        let report = pcm::report(&corner, None, method).map_err(internal)?;
        let values = TABLE2_COLUMNS
            .iter()
            .map(|&name| report.get(name).expect("full report at n = 3"))
            .collect();
        rows.push((x, values));
    }

    match format {
        Format::Csv => {
            println!("x,RIC,CI,GWI,PLI,KII,GCI");
            for (x, values) in &rows {
                let cells: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                println!("{x},{}", cells.join(","));
            }
        }
        Format::Json => {
            let docs: Vec<serde_json::Value> = rows
                .iter()
                .map(|(x, values)| {
                    let mut doc = serde_json::Map::new();
                    doc.insert("x".into(), serde_json::json!(x));
                    for (name, value) in TABLE2_COLUMNS.iter().zip(values) {
                        doc.insert(name.as_str().into(), serde_json::json!(value));
                    }
                    serde_json::Value::Object(doc)
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&docs).expect("serializes")
            );
        }
        Format::Table => {
            print!("{:>8}", "x");
            for name in TABLE2_COLUMNS {
                print!("  {:>8}", name.as_str());
            }
            println!();
            for (x, values) in &rows {
                print!("{x:>8}");
                for v in values {
                    print!("  {v:>8.4}");
                }
                println!();
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// ri
// ---------------------------------------------------------------------------

fn parse_order_range(text: &str) -> Result<std::ops::RangeInclusive<usize>, CliError> {
    let bad = || CliError::Usage(format!("bad order range '{text}', expected \"N\" or \"A..B\""));
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if lo < 2 || hi < lo {
            return Err(bad());
        }
        Ok(lo..=hi)
    } else {
        let n: usize = text.trim().parse().map_err(|_| bad())?;
        if n < 2 {
            return Err(bad());
        }
        Ok(n..=n)
    }
}

fn cmd_ri(
    range: &str,
    samples: usize,
    seed: u64,
    output: Option<&std::path::Path>,
    format: Format,
) -> Result<(), CliError> {
    let orders = parse_order_range(range)?;
    let scale = RandomScale::SaatyDiscrete;

    let mut estimates = Vec::new();
    let mut entries = std::collections::BTreeMap::new();
    for n in orders {
        let estimate = axioms::estimate_ri::<f64>(n, samples, seed, scale).map_err(invalid)?;
        entries.insert(n, estimate.mean_ci);
        estimates.push(estimate);
    }
    let table = RiTable::new(
        entries,
        pcm::RiProvenance::MonteCarlo {
            samples,
            seed,
            scale: scale.to_string(),
        },
    );

    match format {
        Format::Json => println!("{}", table.to_json()),
        Format::Csv => {
            println!("n,ri,std_error,samples,skipped");
            for e in &estimates {
                println!(
                    "{},{},{},{},{}",
                    e.n, e.mean_ci, e.std_error, e.samples, e.skipped
                );
            }
        }
        Format::Table => {
            println!(
                "{:>4}  {:>8}  {:>9}  {:>8}  {:>7}",
                "n", "R.I.", "std err", "samples", "skipped"
            );
            for e in &estimates {
                println!(
                    "{:>4}  {:>8.4}  {:>9.5}  {:>8}  {:>7}",
                    e.n, e.mean_ci, e.std_error, e.samples, e.skipped
                );
            }
        }
    }

    if let Some(path) = output {
        fs::write(path, table.to_json())
            .map_err(|e| internal(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}
