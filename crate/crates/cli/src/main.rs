//! Command-line front end: parses configuration files, dispatches
//! subcommands, and maps failures onto stable exit codes.
//!
//! Exit codes: 0 success, 2 usage or parse errors, 3 invalid geometry
//! (degenerate point sets), 4 bound violation (a census contradicting a
//! bound that holds for every general-position configuration, which would
//! mean a counterexample or a bug, so the offending data is dumped).

mod config_file;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use knot_census::census::{
    census_sweep, csv_header, csv_row, run_census, verify_bounds, verify_lemma_bounds,
    CensusError, CensusReport, SweepError, Verdict,
};
use knot_census::diagram::DiagramError;
use knot_census::geometry::{Configuration, GeometryError, Sign};
use knot_census::search::{search_max_fig8, SearchError, SearchParams};
use knot_census::tables::{build_table, table_matches, Labeling};
use knot_census::Cycle;

#[derive(Parser)]
#[command(name = "knot-census", version, about = "Knot census of Hamiltonian cycles in K6/K7 point configurations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every Hamiltonian cycle of a configuration and check bounds
    Check {
        path: PathBuf,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the ε table(s) of a heptagonal cycle and any matched type
    Tables {
        path: PathBuf,
        /// Cycle as a digit string, e.g. 1234567
        cycle: String,
    },
    /// List the trivial triples of a configuration, one per line
    Triples { path: PathBuf },
    /// Randomized search for a configuration with three figure-8 cycles
    Search {
        /// Where to write the best configuration found
        #[arg(long)]
        out: PathBuf,
        /// Census evaluation budget
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Coordinate bound of sampled points
        #[arg(long, default_value_t = 100)]
        bound: i64,
    },
    /// CSV census summaries of seeded random configurations
    Batch {
        #[arg(long)]
        count: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        bound: i64,
        /// Number of vertices (6 or 7)
        #[arg(long, default_value_t = 7)]
        n: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Failure with the exit code it maps to.
enum AppError {
    Usage(String),
    Geometry(String),
    Bound(String),
}

impl AppError {
    fn code(&self) -> u8 {
        match self {
            AppError::Usage(_) => 2,
            AppError::Geometry(_) => 3,
            AppError::Bound(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            AppError::Usage(m) | AppError::Geometry(m) | AppError::Bound(m) => m,
        }
    }
}

impl From<GeometryError> for AppError {
    fn from(e: GeometryError) -> AppError {
        AppError::Geometry(e.to_string())
    }
}

impl From<CensusError> for AppError {
    fn from(e: CensusError) -> AppError {
        match e {
            CensusError::Diagram(DiagramError::ImpossibleDeterminant(_)) => {
                AppError::Bound(e.to_string())
            }
            CensusError::Geometry(g) => g.into(),
            other => AppError::Geometry(other.to_string()),
        }
    }
}

impl From<SearchError> for AppError {
    fn from(e: SearchError) -> AppError {
        match e {
            SearchError::BoundViolation { .. } => AppError::Bound(e.to_string()),
            SearchError::Census(c) => c.into(),
            SearchError::BoundTooSmall(_)
            | SearchError::NegativeMagnitude(_)
            | SearchError::ZeroBudget
            | SearchError::UnsupportedN(_) => AppError::Usage(e.to_string()),
            other => AppError::Geometry(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command) -> Result<(), AppError> {
    match command {
        Command::Check { path, format } => cmd_check(&path, format),
        Command::Tables { path, cycle } => cmd_tables(&path, &cycle),
        Command::Triples { path } => cmd_triples(&path),
        Command::Search {
            out,
            budget,
            seed,
            bound,
        } => cmd_search(&out, budget, seed, bound),
        Command::Batch {
            count,
            seed,
            bound,
            n,
        } => cmd_batch(count, seed, bound, n),
    }
}

fn load_configuration(path: &Path) -> Result<Configuration, AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::Usage(format!("{}: {e}", path.display())))?;
    let points = config_file::parse_points(&text)
        .map_err(|e| AppError::Usage(format!("{}: {e}", path.display())))?;
    Ok(Configuration::new(points)?)
}

fn cmd_check(path: &Path, format: Format) -> Result<(), AppError> {
    let c = load_configuration(path)?;
    let report = run_census(&c)?;
    let bounds = verify_bounds(&report);
    let lemmas = verify_lemma_bounds(&report);

    match format {
        Format::Text => print_text_report(&report, &bounds, &lemmas),
        Format::Json => {
            let doc = serde_json::json!({
                "report": report,
                "bound_checks": bounds,
                "lemma_checks": lemmas,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("report serializes"));
        }
    }

    let failed: Vec<&Verdict> = bounds.iter().chain(&lemmas).filter(|v| !v.pass).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        let names: Vec<&str> = failed.iter().map(|v| v.name).collect();
        Err(AppError::Bound(format!(
            "bound checks failed: {}; configuration:\n{c}",
            names.join(", ")
        )))
    }
}

fn print_text_report(report: &CensusReport, bounds: &[Verdict], lemmas: &[Verdict]) {
    println!("configuration: {} points", report.n);
    println!("unknot cycles:   {}", report.unknots);
    println!("trefoil cycles:  {}", report.trefoils);
    println!("figure-8 cycles: {}", report.figure8s);
    println!("arf sum (mod 2): {}", report.arf_sum_mod2);
    println!(
        "trivial triples: {} (excluding {} cycles)",
        report.trivial_triple_count, report.excluded_cycle_count
    );
    if !report.figure8_cycles.is_empty() {
        println!("figure-8 details:");
        for f in &report.figure8_cycles {
            println!("  {}", f.cycle);
            for m in &f.matches {
                println!(
                    "    type {} via labeling {} (s = {:+})",
                    m.kind, m.labeling, m.sign
                );
            }
        }
    }
    let types = report.matched_types();
    if types.len() > 1 {
        let names: Vec<String> = types.iter().map(|t| t.to_string()).collect();
        println!(
            "note: mixed table types present ({}); flagged for inspection",
            names.join(", ")
        );
    }
    println!("checks:");
    for v in bounds.iter().chain(lemmas) {
        println!(
            "  {} {}: {}",
            if v.pass { "PASS" } else { "FAIL" },
            v.name,
            v.detail
        );
    }
}

fn cmd_tables(path: &Path, cycle: &str) -> Result<(), AppError> {
    let c = load_configuration(path)?;
    if c.len() != 7 {
        return Err(AppError::Usage(format!(
            "ε tables need a 7-point configuration, got {} points",
            c.len()
        )));
    }
    let parsed: Cycle = cycle
        .parse()
        .map_err(|e: DiagramError| AppError::Usage(e.to_string()))?;
    if parsed.len() != 7 {
        return Err(AppError::Usage(format!(
            "cycle must visit all 7 vertices, got {}",
            parsed.len()
        )));
    }
    for &v in parsed.vertices() {
        if v >= 7 {
            return Err(AppError::Usage(format!("vertex {} out of range", v + 1)));
        }
    }

    let matches = table_matches(&c, &parsed).map_err(|e| AppError::Geometry(e.to_string()))?;
    if matches.is_empty() {
        // Show the table of the cycle exactly as typed.
        let mut seq = [0usize; 7];
        for (i, ch) in cycle.chars().enumerate() {
            seq[i] = ch.to_digit(10).unwrap() as usize - 1;
        }
        let labeling = Labeling::new(seq).expect("parsed cycle has distinct vertices");
        let table = build_table(&c, &labeling).map_err(|e| AppError::Geometry(e.to_string()))?;
        println!("cycle {} as labeling {}", parsed, labeling);
        print!("{}", table.render());
        println!("no match");
    } else {
        println!("cycle {} matches {} labeling(s):", parsed, matches.len());
        for m in &matches {
            let s = match m.sign {
                Sign::Positive => "+1",
                Sign::Negative => "-1",
                Sign::Zero => "0",
            };
            println!("labeling {}: type {} (s = {})", m.labeling, m.kind, s);
            print!("{}", m.table.render());
        }
    }
    Ok(())
}

fn cmd_triples(path: &Path) -> Result<(), AppError> {
    let c = load_configuration(path)?;
    let triples =
        knot_census::reduction::trivial_triples(&c).map_err(|e| AppError::Geometry(e.to_string()))?;
    for t in triples {
        println!("{t}");
    }
    Ok(())
}

fn cmd_search(out: &Path, budget: u64, seed: u64, bound: i64) -> Result<(), AppError> {
    let params = SearchParams::new(budget, seed, bound);
    let outcome = search_max_fig8(&params)?;
    let comments = vec![
        "generated by knot-census search".to_string(),
        format!("seed: {seed}"),
        format!("budget: {budget}"),
        format!("bound: {bound}"),
        format!("evaluations: {}", outcome.evaluations),
        format!("figure8-count: {}", outcome.figure8_count),
    ];
    let rendered = config_file::render(outcome.best.points(), &comments);
    std::fs::write(out, rendered)
        .map_err(|e| AppError::Usage(format!("{}: {e}", out.display())))?;
    println!(
        "best configuration: {} figure-8 cycles, {} trefoils ({} evaluations, {} restarts)",
        outcome.figure8_count, outcome.trefoil_count, outcome.evaluations, outcome.restarts
    );
    println!("written to {}", out.display());
    Ok(())
}

fn cmd_batch(count: u64, seed: u64, bound: i64, n: usize) -> Result<(), AppError> {
    let items = census_sweep(n, count, seed, bound).map_err(|e| match e {
        SweepError::Search(s) => AppError::from(s),
        SweepError::Census(c) => AppError::from(c),
    })?;
    println!("{}", csv_header());
    let mut all_pass = true;
    for item in &items {
        all_pass &= knot_census::census::all_checks_pass(&item.report);
        println!("{}", csv_row(item));
    }
    if all_pass {
        Ok(())
    } else {
        Err(AppError::Bound("some configuration failed a bound check".into()))
    }
}
