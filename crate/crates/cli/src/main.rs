//! `mclain`: command-line front end for extended McLain group computations.
//!
//! Exit status: 0 on success, 1 when the input is well formed but fails a
//! mathematical requirement (axioms, normality, order domain), 2 on usage
//! and parse errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mclain_core::structure::UpperSeriesReport;
use mclain_core::{
    demonstrate_ngon_obstruction, lower_central_series, ordered_factorization, parse_pair_list,
    parse_relation, parse_word, upper_central_series, word_factorization, Error, Execution,
    McLainGroup, QuotientMap, Relation, RingSpec,
};

#[derive(Parser, Debug)]
#[command(
    name = "mclain",
    version,
    about = "Computations in extended McLain groups"
)]
struct Cli {
    /// Coefficient ring: `Z`, `Z/n` or `M2(Z/n)`.
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Relation file: one `i j` pair per line, `node k` for bare nodes, `#` comments.
    #[arg(long, global = true)]
    relation: Option<PathBuf>,
    /// Run batch work on a single thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the axioms; prints `valid` or one line per violation.
    Check {
        /// Relation file (overrides --relation).
        file: Option<PathBuf>,
    },
    /// Print the lower or upper central series at the level of pair sets.
    Series(SeriesArgs),
    /// Evaluate an expression and print its normal form.
    Eval { expr: String },
    /// Factor an element: ordered coefficients with --order, otherwise a word.
    Factor {
        expr: String,
        /// Order file: the pairs of a closed subset, one per line, increasing.
        #[arg(long)]
        order: Option<PathBuf>,
    },
    /// Project into the quotient by a normal subset and print a coset representative.
    Quotient {
        expr: String,
        /// Pair file describing the normal subset.
        #[arg(long)]
        gamma: PathBuf,
    },
    /// Show that 1 + Σ e(i,i+1) on the n-gon relation is no ordered product of edge generators.
    DemoNgon { n: usize },
}

#[derive(Args, Debug)]
#[group(required = false, multiple = false)]
struct SeriesArgs {
    #[arg(long)]
    lower: bool,
    #[arg(long)]
    upper: bool,
}

#[derive(Debug)]
enum Failure {
    /// Exit 1.
    Domain(String),
    /// Exit 2.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_relation(path: Option<&Path>) -> Result<Relation, Failure> {
    let path =
        path.ok_or_else(|| Failure::Usage("a relation file is required (--relation FILE)".into()))?;
    parse_relation(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn ring(cli: &Cli, default: RingSpec) -> Result<RingSpec, Failure> {
    match &cli.ring {
        Some(s) => s
            .parse()
            .map_err(|e: mclain_core::RingError| Failure::Usage(e.to_string())),
        None => Ok(default),
    }
}

fn group(cli: &Cli) -> Result<McLainGroup, Failure> {
    let rel = load_relation(cli.relation.as_deref())?;
    Ok(McLainGroup::new(rel, ring(cli, RingSpec::Integers)?)?)
}

fn eval(group: &McLainGroup, expr: &str) -> Result<mclain_core::GroupElement, Failure> {
    let word =
        parse_word(expr, group.ring()).map_err(|e| Failure::Usage(format!("expression: {e}")))?;
    Ok(group.eval_word(&word)?)
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let mut out = String::new();
    match &cli.command {
        Command::Check { file } => {
            let rel = load_relation(file.as_deref().or(cli.relation.as_deref()))?;
            let check = rel.check_axioms();
            if check.is_valid() {
                out.push_str("valid\n");
            }
            for v in &check.violations {
                let _ = writeln!(out, "{v}");
            }
            return Ok((out, check.is_valid()));
        }
        Command::Series(args) => {
            let g = group(cli)?;
            if args.upper {
                let chain = upper_central_series(&g)?;
                let _ = write!(out, "{}", UpperSeriesReport(&chain));
            } else {
                let _ = write!(out, "{}", lower_central_series(&g)?);
            }
        }
        Command::Eval { expr } => {
            let g = group(cli)?;
            let _ = writeln!(out, "{}", eval(&g, expr)?);
        }
        Command::Factor { expr, order } => {
            let g = group(cli)?;
            let x = eval(&g, expr)?;
            match order {
                Some(path) => {
                    let pairs = parse_pair_list(&read(path)?)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    let _ = write!(out, "{}", ordered_factorization(&x, &pairs)?);
                }
                None => {
                    let _ = writeln!(out, "{}", word_factorization(&x)?);
                }
            }
        }
        Command::Quotient { expr, gamma } => {
            let g = group(cli)?;
            let kernel = parse_relation(&read(gamma)?)
                .map_err(|e| Failure::Usage(format!("{}: {e}", gamma.display())))?;
            let q = QuotientMap::new(&g, &kernel)?;
            let x = eval(&g, expr)?;
            let _ = writeln!(out, "projection: {}", q.project(&x)?);
            let _ = writeln!(out, "representative: {}", q.coset_representative(&x)?);
        }
        Command::DemoNgon { n } => {
            if !mclain_core::factorization::NGON_DEMO_RANGE.contains(n) {
                return Err(Failure::Usage(format!(
                    "demo-ngon needs 4 <= n <= 6, got {n}"
                )));
            }
            let report =
                demonstrate_ngon_obstruction(*n, ring(cli, RingSpec::IntegersMod(2))?, exec)?;
            let _ = write!(out, "{report}");
            return Ok((out, report.confirmed()));
        }
    }
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
