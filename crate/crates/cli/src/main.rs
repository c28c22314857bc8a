use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use fq_sparse::experiment::{
    conjecture_csv, conjecture_table, exact_vanishing_proportion, max_roots_coset_free, root_distribution_sample,
    sample_vanishing_proportion, DEFAULT_BUDGET, RNG_SCHEME, ROOT_DIST_CSV_HEADER,
};
use fq_sparse::report::round12;
use fq_sparse::{AnalysisReport, Error, FieldSpec, TNomial};

/// Tolerance of the sampled checks, in standard deviations.
const SIGMAS: f64 = 5.0;

#[derive(Parser)]
#[command(name = "fq-sparse", version, about = "Roots and vanishing cosets of sparse polynomials over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one polynomial and print a JSON report.
    Analyze {
        #[command(flatten)]
        field: FieldArgs,
        /// Polynomial, e.g. "x^3 + 1" or "[1,2]*x^4 - x"
        poly: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive and sampled experiments.
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Args)]
struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    p: u64,
    /// Extension degree.
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Monic modulus coefficients, constant term first, e.g. 1,0,1 for x^2 + 1.
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u64>>,
}

impl FieldArgs {
    fn build(&self) -> fq_sparse::Result<FieldSpec> {
        if self.k == 1 && self.modulus.is_none() {
            FieldSpec::prime(self.p)
        } else {
            FieldSpec::extension(self.p, self.k, self.modulus.as_deref())
        }
    }
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Experiment {
    /// Largest root count of a coset-free t-nomial over F_p, with a witness.
    MaxR {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[command(flatten)]
        common: Common,
    },
    /// Share of coset-free t-nomials with r roots against (1/r!)^gamma.
    Conjecture {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 0.5)]
        gamma: f64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[command(flatten)]
        common: Common,
    },
    /// Sampled share of dense polynomials vanishing on a prime-order coset.
    SampleC2 {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Sampled root-count histogram of dense polynomials over F_p.
    RootDist {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::InvariantViolation(_) => 4,
        _ => 2,
    }
}

fn emit(out: Option<&Path>, body: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

/// Run metadata goes next to the output file, or to stderr, so the main
/// output stays byte-identical between runs.
fn emit_summary(out: Option<&Path>, summary: Value) -> Result<(), String> {
    let text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    match out {
        Some(path) => {
            let mut name = path.as_os_str().to_owned();
            name.push(".summary.json");
            fs::write(&name, text + "\n").map_err(|e| format!("cannot write summary: {e}"))
        }
        None => {
            eprintln!("{text}");
            Ok(())
        }
    }
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<String> for Failure {
    fn from(e: String) -> Self {
        Failure::Io(e)
    }
}

fn run_analyze(field: &FieldArgs, poly: &str, out: Option<&Path>) -> Result<(), Failure> {
    let field = field.build()?;
    let f = TNomial::parse(&field, poly)?;
    let report = AnalysisReport::build(&f)?;
    emit(out, &(report.to_json() + "\n"))?;
    Ok(())
}

fn run_experiment(exp: &Experiment) -> Result<(), Failure> {
    let start = Instant::now();
    match exp {
        Experiment::MaxR { p, t, budget, common } => {
            let m = max_roots_coset_free(*p, *t, *budget)?;
            let out = common.out.as_deref();
            emit(out, &format!("p,t,max_R,witness\n{},{},{},{}\n", m.p, m.t, m.max_roots, m.witness))?;
            emit_summary(
                out,
                json!({
                    "experiment": "max-r",
                    "mode": "orbit_reduced",
                    "budget": budget.to_string(),
                    "wall_time_s": start.elapsed().as_secs_f64(),
                }),
            )?;
        }
        Experiment::Conjecture { p, t, gamma, budget, common } => {
            let rows = conjecture_table(*p, *t, *gamma, *budget)?;
            let out = common.out.as_deref();
            emit(out, &conjecture_csv(&rows))?;
            let failing: Vec<u64> = rows.iter().filter(|r| !r.passes()).map(|r| r.r).collect();
            emit_summary(
                out,
                json!({
                    "experiment": "conjecture",
                    "mode": "orbit_reduced",
                    "budget": budget.to_string(),
                    "all_pass": failing.is_empty(),
                    "failing_r": failing,
                    "wall_time_s": start.elapsed().as_secs_f64(),
                }),
            )?;
        }
        Experiment::SampleC2 { field, samples, seed, common } => {
            let field = field.build()?;
            let s = sample_vanishing_proportion(&field, *samples, *seed)?;
            let exact = exact_vanishing_proportion(&field).ok().map(|(v, total)| {
                json!({ "vanishing": v, "total": total, "proportion": round12(v as f64 / total as f64) })
            });
            let body = json!({
                "schema_version": fq_sparse::report::SCHEMA_VERSION,
                "q": s.q,
                "samples": s.samples,
                "seed": s.seed,
                "vanishing": s.vanishing,
                "estimate": round12(s.estimate),
                "comparator": round12(s.comparator),
                "sigma": round12(s.sigma),
                "within_comparator": s.within_comparator(SIGMAS),
                "exact": exact,
                "rng": RNG_SCHEME,
            });
            let out = common.out.as_deref();
            emit(out, &(serde_json::to_string_pretty(&body).expect("serializes") + "\n"))?;
            emit_summary(
                out,
                json!({
                    "experiment": "sample-c2",
                    "mode": "sampled",
                    "seed": seed,
                    "wall_time_s": start.elapsed().as_secs_f64(),
                }),
            )?;
        }
        Experiment::RootDist { p, samples, seed, common } => {
            let d = root_distribution_sample(*p, *samples, *seed)?;
            let mut body = String::from(ROOT_DIST_CSV_HEADER);
            body.push('\n');
            for row in &d.rows {
                body.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    d.p,
                    row.r,
                    row.count,
                    round12(row.proportion),
                    round12(row.inv_factorial),
                    round12(row.sigma),
                    row.passes(SIGMAS)
                ));
            }
            let out = common.out.as_deref();
            emit(out, &body)?;
            emit_summary(
                out,
                json!({
                    "experiment": "root-dist",
                    "mode": "sampled",
                    "seed": seed,
                    "rng": RNG_SCHEME,
                    "wall_time_s": start.elapsed().as_secs_f64(),
                }),
            )?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze { field, poly, out } => run_analyze(field, poly, out.as_deref()),
        Command::Experiment(exp) => run_experiment(exp),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
