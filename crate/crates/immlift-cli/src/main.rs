//! Command-line front end: compute immanants and generalized matrix
//! functions, lift weight functions to matrix-valued trace polynomials, and
//! run randomized verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 counterexample found.

use clap::{Parser, Subcommand, ValueEnum};
use immlift::{
    builtin_a4_table, builtin_suite, determinant, immanant, lift_function, perm_dominance_specs,
    permanent, run_spec, Complex64, ComplexMatrix, GroupFunction, InequalitySpec, Partition,
    Permutation, RunOptions, Status, Subgroup, TracePolynomial, VerificationReport,
};
use serde::Deserialize;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "immlift",
    version,
    about = "Immanants, generalized matrix functions, and their Löwner lifts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an immanant (or determinant/permanent) of a JSON matrix
    Imm {
        /// Partition weighting the sum, e.g. `2,1`
        #[arg(long, value_name = "PARTS", conflicts_with_all = ["det", "per"])]
        partition: Option<String>,
        /// Shorthand for the partition (1,…,1)
        #[arg(long)]
        det: bool,
        /// Shorthand for the partition (n)
        #[arg(long, conflicts_with = "det")]
        per: bool,
        /// Matrix file: JSON rows of [re, im] pairs
        #[arg(long, value_name = "FILE")]
        matrix: PathBuf,
    },
    /// Lift a weight function to a matrix-valued trace polynomial
    Lift {
        /// `det`, `per`, a partition like `2,1`, `a4:LABEL`, or `file:PATH`
        #[arg(long = "fn", value_name = "SPEC")]
        function: String,
        /// Degree (required for det/per, optional cross-check otherwise)
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Emit::Text)]
        emit: Emit,
        /// Display with tr(X_i) factors replaced by 1 (text/latex only; the
        /// underlying polynomial keeps them)
        #[arg(long)]
        trace_one: bool,
        /// Write the output to a file instead of stdout
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Run a named verification suite
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Dimension of each sampled matrix variable
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// Only run specs of this permutation degree
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Write the report to a file instead of stdout
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Search for counterexamples to a conjecture
    Falsify {
        /// `perm-dominance` or `perm-dominance-lifted`
        #[arg(long)]
        conjecture: String,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 10000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

/// Weight function file: `{"n": 3, "entries": [{"perm": [2,1,3], "value": [1.0, 0.0]}]}`;
/// permutations not listed get weight zero.
#[derive(Deserialize)]
struct FunctionFile {
    n: usize,
    entries: Vec<FunctionEntry>,
}

#[derive(Deserialize)]
struct FunctionEntry {
    perm: Vec<usize>,
    value: [f64; 2],
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// Honors IMMLIFT_THREADS before any parallel work starts.
fn configure_threads() {
    if let Ok(raw) = std::env::var("IMMLIFT_THREADS") {
        match raw.trim().parse::<usize>() {
            Ok(k) if k >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
            _ => eprintln!("warning: ignoring invalid IMMLIFT_THREADS value `{raw}`"),
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Imm {
            partition,
            det,
            per,
            matrix,
        } => cmd_imm(partition, det, per, &matrix),
        Command::Lift {
            function,
            n,
            emit,
            trace_one,
            out,
        } => cmd_lift(&function, n, emit, trace_one, out.as_deref()),
        Command::Verify {
            suite,
            trials,
            m,
            n,
            seed,
            tol,
            format,
            out,
        } => cmd_verify(&suite, trials, m, n, seed, tol, format, out.as_deref()),
        Command::Falsify {
            conjecture,
            n,
            m,
            trials,
            seed,
            tol,
        } => cmd_falsify(&conjecture, n, m, trials, seed, tol),
    }
}

/// Prints one line to stdout, treating a closed pipe (e.g. `immlift … | head`)
/// as a normal early exit rather than a panic.
fn print_line(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{text}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(2);
    }
}

fn read_matrix(path: &std::path::Path) -> Result<ComplexMatrix, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("bad matrix in {}: {e}", path.display()))
}

fn cmd_imm(
    partition: Option<String>,
    det: bool,
    per: bool,
    matrix: &std::path::Path,
) -> Result<ExitCode, String> {
    let a = read_matrix(matrix)?;
    let value = if det {
        determinant(&a).map_err(|e| e.to_string())?
    } else if per {
        permanent(&a).map_err(|e| e.to_string())?
    } else if let Some(spec) = partition {
        let lambda: Partition = spec.parse().map_err(|e: immlift::Error| e.to_string())?;
        immanant(&lambda, &a).map_err(|e| e.to_string())?
    } else {
        return Err("one of --partition, --det, --per is required".to_string());
    };
    print_line(&serde_json::to_string(&[value.re, value.im]).expect("serializing two floats"));
    Ok(ExitCode::SUCCESS)
}

/// Resolves a `--fn` spec to a weight function on a full symmetric group.
fn parse_function(spec: &str, n: Option<usize>) -> Result<GroupFunction, String> {
    let full = |n: usize| Subgroup::symmetric(n).map_err(|e| e.to_string());
    if spec == "det" {
        let n = n.ok_or("--n is required with --fn det")?;
        return Ok(GroupFunction::sign_function(full(n)?));
    }
    if spec == "per" {
        let n = n.ok_or("--n is required with --fn per")?;
        return Ok(GroupFunction::trivial(full(n)?));
    }
    if let Some(label) = spec.strip_prefix("a4:") {
        if n.is_some() && n != Some(4) {
            return Err("a4 functions have degree 4".to_string());
        }
        let chi = builtin_a4_table()
            .character_by_label(label)
            .ok_or_else(|| format!("unknown a4 label `{label}` (try triv, chi1, chi2, chi3)"))?;
        return chi.zero_extend(full(4)?).map_err(|e| e.to_string());
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let text =
            fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
        let file: FunctionFile =
            serde_json::from_str(&text).map_err(|e| format!("bad function file {path}: {e}"))?;
        if n.is_some() && n != Some(file.n) {
            return Err(format!("--n disagrees with file degree {}", file.n));
        }
        let domain = full(file.n)?;
        let mut values = vec![Complex64::new(0.0, 0.0); domain.order()];
        for entry in &file.entries {
            let p = Permutation::from_images(entry.perm.clone()).map_err(|e| e.to_string())?;
            let index = domain
                .index_of(&p)
                .ok_or_else(|| format!("permutation {p} is not of degree {}", file.n))?;
            values[index] = Complex64::new(entry.value[0], entry.value[1]);
        }
        return GroupFunction::new(domain, values).map_err(|e| e.to_string());
    }
    let lambda: Partition = spec
        .parse()
        .map_err(|e: immlift::Error| format!("unrecognized --fn `{spec}`: {e}"))?;
    if let Some(n) = n {
        if lambda.sum() != n {
            return Err(format!("partition {lambda} has weight {}, not {n}", lambda.sum()));
        }
    }
    GroupFunction::sn_character(&lambda).map_err(|e| e.to_string())
}

fn emit_output(text: String, out: Option<&std::path::Path>) -> Result<ExitCode, String> {
    match out {
        Some(path) => fs::write(path, text + "\n")
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print_line(&text),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_lift(
    spec: &str,
    n: Option<usize>,
    emit: Emit,
    trace_one: bool,
    out: Option<&std::path::Path>,
) -> Result<ExitCode, String> {
    let f = parse_function(spec, n)?;
    let poly: TracePolynomial = lift_function(&f).map_err(|e| e.to_string())?;
    let rendered = match emit {
        Emit::Text => poly.render_text(trace_one),
        Emit::Latex => poly.render_latex(trace_one),
        Emit::Json => serde_json::to_string_pretty(&poly).expect("polynomial serializes"),
    };
    emit_output(rendered, out)
}

fn report_line(report: &VerificationReport) -> String {
    let status = match report.status {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Counterexample => "COUNTEREXAMPLE",
        Status::NoCounterexample => "no counterexample",
    };
    let mut line = format!(
        "{}: {} (trials {}, dim {}, min statistic {:e}, max defect {:e}, failures {})",
        report.spec,
        status,
        report.trials,
        report.dim,
        report.min_statistic,
        report.hermiticity_defect_max,
        report.failures
    );
    if let Some(ce) = &report.counterexample {
        line.push_str(&format!(
            "\n  first violation: trial {} statistic {:e}; replay with seed {}",
            ce.trial, ce.statistic, report.seed
        ));
    }
    line
}

/// Worst outcome across a batch of reports, as an exit code: verification
/// failures on asserted specs beat conjecture counterexamples.
fn batch_exit(specs: &[InequalitySpec], reports: &[VerificationReport]) -> ExitCode {
    let mut exit = ExitCode::SUCCESS;
    for (spec, report) in specs.iter().zip(reports) {
        let violated = matches!(report.status, Status::Fail | Status::Counterexample);
        if violated && !spec.conjecture {
            return ExitCode::from(1);
        }
        if violated {
            exit = ExitCode::from(3);
        }
    }
    exit
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    suite: &str,
    trials: u64,
    m: usize,
    n: Option<usize>,
    seed: u64,
    tol: f64,
    format: ReportFormat,
    out: Option<&std::path::Path>,
) -> Result<ExitCode, String> {
    let mut specs = builtin_suite(suite).map_err(|e| e.to_string())?;
    if let Some(degree) = n {
        specs.retain(|s| s.degree().ok() == Some(degree));
        if specs.is_empty() {
            return Err(format!("suite {suite} has no specs of degree {degree}"));
        }
    }
    let opts = RunOptions {
        trials,
        dim: m,
        seed,
        tol,
    };
    let mut reports = Vec::with_capacity(specs.len());
    for spec in &specs {
        reports.push(run_spec(spec, &opts).map_err(|e| format!("{}: {e}", spec.name))?);
    }
    let text = match format {
        ReportFormat::Json => {
            serde_json::to_string_pretty(&reports).expect("reports serialize")
        }
        ReportFormat::Text => {
            let mut lines: Vec<String> = reports.iter().map(report_line).collect();
            let clean = reports
                .iter()
                .filter(|r| matches!(r.status, Status::Pass | Status::NoCounterexample))
                .count();
            lines.push(format!("{}/{} specs clean", clean, reports.len()));
            lines.join("\n")
        }
    };
    let exit = batch_exit(&specs, &reports);
    emit_output(text, out)?;
    Ok(exit)
}

fn cmd_falsify(
    conjecture: &str,
    n: usize,
    m: usize,
    trials: u64,
    seed: u64,
    tol: f64,
) -> Result<ExitCode, String> {
    let lifted = match conjecture {
        "perm-dominance" => false,
        "perm-dominance-lifted" => true,
        _ => {
            return Err(format!(
                "unknown conjecture `{conjecture}` (try perm-dominance, perm-dominance-lifted)"
            ))
        }
    };
    let specs = perm_dominance_specs(n, lifted).map_err(|e| e.to_string())?;
    let opts = RunOptions {
        trials,
        dim: m,
        seed,
        tol,
    };
    let mut found = false;
    for spec in &specs {
        let report = run_spec(spec, &opts).map_err(|e| format!("{}: {e}", spec.name))?;
        match &report.counterexample {
            Some(ce) => {
                found = true;
                print_line(&format!(
                    "{}: counterexample at trial {} (statistic {:e}, seed {})",
                    report.spec, ce.trial, ce.statistic, seed
                ));
                print_line(
                    &serde_json::to_string_pretty(&ce.matrices).expect("matrices serialize"),
                );
            }
            None => print_line(&format!(
                "{}: no counterexample in {} trials (worst margin {:e})",
                report.spec, report.trials, report.min_statistic
            )),
        }
    }
    Ok(if found {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}
