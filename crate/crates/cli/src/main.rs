//! Command-line harness: computes coefficient tables and runs the
//! verification suites, emitting machine-readable reports.
//!
//! Reports are deterministic for a fixed seed and configuration; wall time is
//! printed to standard output only, never into the report, so identical runs
//! produce byte-identical files.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use zeroseries::combinatorics::{self, MultiIndex, OrderedMultiset};
use zeroseries::derivation;
use zeroseries::gkz::{recovery_formula_coeff, recovery_vs_main, x_series_coeff, GkzConfig};
use zeroseries::report::{summarize, Check, Summary};
use zeroseries::root_series::{
    alpha_branch, coeff_closed, formula_forms_agree, residual_check, taylor_table, ProblemSpec,
    RecursionOracle,
};
use zeroseries::scalar::{rat_from_str, ComplexF, Rational};

#[derive(Parser)]
#[command(
    name = "zeroseries",
    about = "Series expansion of a perturbed polynomial root, with exact verification suites"
)]
struct Cli {
    /// Lift the desk-scale bounds (K <= 8, total order <= 8, degree n <= 5).
    #[arg(long = "unsafe", global = true)]
    r#unsafe: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Write the report here; omitted = print it to standard output.
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct SpecArgs {
    /// Base coefficient b, as "num/den".
    #[arg(long)]
    b: String,
    /// Base exponent beta, as "num/den".
    #[arg(long)]
    beta: String,
    /// Perturbing exponents gamma_i, one flag per variable.
    #[arg(long = "gamma", required = true)]
    gammas: Vec<String>,
    /// Which zero of the base function to track.
    #[arg(long, default_value_t = 0)]
    branch_m: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the coefficient table up to total order K.
    Expand {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, short = 'K', default_value_t = 2)]
        k: u32,
        /// Divide by prod n_i! (Taylor normalization).
        #[arg(long)]
        normalized: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the closed formula against the partition recursion, per index.
    Oracle {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, short = 'K', default_value_t = 4)]
        k: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Numeric residual-scaling check of the truncated series.
    Residual {
        /// Base coefficient b as "re,im".
        #[arg(long)]
        b: String,
        #[arg(long)]
        beta: String,
        #[arg(long = "gamma", required = true)]
        gammas: Vec<String>,
        #[arg(long, default_value_t = 0)]
        branch_m: i64,
        #[arg(long, short = 'K', default_value_t = 4)]
        k: u32,
        /// Perturbation point, one "re,im" per gamma.
        #[arg(long = "a", required = true)]
        a_point: Vec<String>,
        /// Scale factors applied to the point.
        #[arg(long, value_delimiter = ',', default_value = "1,0.5,0.25")]
        scales: Vec<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the exact combinatorial identity suites.
    Identities {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare the bracket-series coefficients against the closed recovery
    /// formula, per multi-index up to total degree D.
    Bracket {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i1: usize,
        #[arg(long)]
        i2: usize,
        #[arg(long, short = 'D', default_value_t = 3)]
        degree: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare the recovery formula against the perturbed-root closed formula.
    Recover {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i1: usize,
        #[arg(long)]
        i2: usize,
        #[arg(long, short = 'D', default_value_t = 3)]
        degree: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Serialize)]
struct Report {
    command: String,
    checks: Vec<Check>,
    summary: Summary,
}

fn parse_complex(s: &str) -> Result<ComplexF, String> {
    let s = s.trim();
    let (re, im) = match s.split_once(',') {
        Some((re, im)) => (re, im),
        None => (s, "0"),
    };
    let re: f64 = re.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
    let im: f64 = im.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
    Ok(ComplexF::new(re, im))
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    rat_from_str(s).map_err(|e| e.to_string())
}

fn rational_spec(args: &SpecArgs) -> Result<ProblemSpec<Rational>, String> {
    let b = parse_rational(&args.b)?;
    let beta = parse_rational(&args.beta)?;
    let gammas = args
        .gammas
        .iter()
        .map(|g| parse_rational(g))
        .collect::<Result<Vec<_>, _>>()?;
    ProblemSpec::new(b, beta, gammas, args.branch_m).map_err(|e| e.to_string())
}

fn check_bound(name: &str, value: u64, limit: u64, unlocked: bool) -> Result<(), String> {
    if value > limit && !unlocked {
        Err(format!(
            "{name} = {value} exceeds the desk-scale bound {limit}; pass --unsafe to override"
        ))
    } else {
        Ok(())
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_checks_csv(checks: &[Check]) -> String {
    let mut out = String::from("name,inputs,expected,actual,pass\n");
    for c in checks {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            csv_escape(&c.name),
            csv_escape(&c.inputs),
            csv_escape(&c.expected),
            csv_escape(&c.actual),
            c.pass
        ));
    }
    out
}

/// Emit the report, return the exit code mandated by the pass/fail counts.
fn finish(
    command: &str,
    mut checks: Vec<Check>,
    output: &OutputArgs,
    started: Instant,
) -> Result<ExitCode, String> {
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let summary = summarize(&checks);
    let (passed, total, all_pass) = (summary.passed, summary.total, summary.failed == 0);
    let body = match output.format {
        Format::Json => {
            let report = Report {
                command: command.to_string(),
                checks,
                summary,
            };
            serde_json::to_string_pretty(&report).map_err(|e| e.to_string())? + "\n"
        }
        Format::Csv => render_checks_csv(&checks),
    };
    emit(&body, output)?;
    println!(
        "{command}: {passed}/{total} checks passed in {:.3}s",
        started.elapsed().as_secs_f64()
    );
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn emit(body: &str, output: &OutputArgs) -> Result<(), String> {
    match &output.out {
        Some(path) => std::fs::write(path, body).map_err(|e| format!("{path}: {e}")),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let started = Instant::now();
    let unlocked = cli.r#unsafe;
    match cli.command {
        Command::Expand {
            spec,
            k,
            normalized,
            output,
        } => {
            check_bound("K", k as u64, 8, unlocked)?;
            let spec = rational_spec(&spec)?;
            let table = taylor_table(&spec, k, normalized).map_err(|e| e.to_string())?;
            let body = serde_json::to_string_pretty(&table.to_json())
                .map_err(|e| e.to_string())?
                + "\n";
            emit(&body, &output)?;
            println!(
                "expand: {} coefficients in {:.3}s",
                table.entries.len(),
                started.elapsed().as_secs_f64()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { spec, k, output } => {
            check_bound("K", k as u64, 8, unlocked)?;
            let spec = rational_spec(&spec)?;
            let mut oracle = RecursionOracle::new(&spec);
            let mut checks = Vec::new();
            for n in MultiIndex::all_up_to(spec.dim(), k) {
                if n.order() == 0 {
                    continue;
                }
                let closed = coeff_closed(&n, &spec).map_err(|e| e.to_string())?;
                let i = OrderedMultiset::from_multi_index(&n).unwrap();
                let rec = oracle.coeff(&i).map_err(|e| e.to_string())?;
                checks.push(Check::new(
                    format!("oracle_n_{:?}", n.entries()),
                    format!("multi-index {:?}", n.entries()),
                    closed.render(),
                    rec.render(),
                    closed == rec,
                ));
                let forms = formula_forms_agree(&n, &spec).map_err(|e| e.to_string())?;
                checks.push(Check::new(
                    format!("forms_n_{:?}", n.entries()),
                    format!("multi-index {:?}", n.entries()),
                    "product form = falling-factorial form",
                    if forms { "equal" } else { "different" },
                    forms,
                ));
            }
            finish("oracle", checks, &output, started)
        }
        Command::Residual {
            b,
            beta,
            gammas,
            branch_m,
            k,
            a_point,
            scales,
            output,
        } => {
            check_bound("K", k as u64, 8, unlocked)?;
            let b = parse_complex(&b)?;
            let beta = parse_rational(&beta)?;
            let gammas = gammas
                .iter()
                .map(|g| parse_rational(g))
                .collect::<Result<Vec<_>, _>>()?;
            let spec =
                ProblemSpec::new(b, beta, gammas, branch_m).map_err(|e| e.to_string())?;
            if a_point.len() != spec.dim() {
                return Err(format!(
                    "expected {} --a values, got {}",
                    spec.dim(),
                    a_point.len()
                ));
            }
            let a = a_point
                .iter()
                .map(|s| parse_complex(s))
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(bad) = a.iter().find(|z| z.norm() > 1e-2) {
                if !unlocked {
                    return Err(format!(
                        "|a| = {} exceeds the documented neighborhood 1e-2; pass --unsafe to override",
                        bad.norm()
                    ));
                }
            }
            let branch = alpha_branch(&spec).map_err(|e| e.to_string())?;
            let report = residual_check(&spec, k, &a, &scales).map_err(|e| e.to_string())?;
            let checks = vec![Check::new(
                "residual_slope",
                format!(
                    "K={k}, branch alpha = {}, scales {:?}",
                    branch.value, scales
                ),
                format!("slope >= {}", report.required_slope),
                match report.slope {
                    Some(s) => format!("slope = {s}, residuals {:?}", report.residuals),
                    None => format!("all residuals at noise level {:?}", report.residuals),
                },
                report.pass,
            )];
            finish("residual", checks, &output, started)
        }
        Command::Identities { seed, output } => {
            let mut checks = combinatorics::identity_suite_stirling(seed);
            checks.extend(combinatorics::identity_suite_partition(seed));
            checks.extend(derivation::identity_suite_derivation(seed));
            finish("identities", checks, &output, started)
        }
        Command::Bracket {
            n,
            i1,
            i2,
            degree,
            output,
        } => {
            check_bound("n", n as u64, 5, unlocked)?;
            check_bound("D", degree as u64, 8, unlocked)?;
            let cfg = GkzConfig::new(n, i1, i2).map_err(|e| e.to_string())?;
            let mut checks = Vec::new();
            for nf in MultiIndex::all_up_to(n - 1, degree) {
                let series = x_series_coeff(&nf, &cfg).map_err(|e| e.to_string())?;
                if nf.order() == 0 {
                    checks.push(Check::new(
                        format!("bracket_n_{:?}", nf.entries()),
                        "constant term".to_string(),
                        "xi * a_i1^(1/d) * a_i2^(-1/d)",
                        series.render(),
                        true,
                    ));
                    continue;
                }
                let closed = recovery_formula_coeff(&nf, &cfg).map_err(|e| e.to_string())?;
                checks.push(Check::new(
                    format!("bracket_n_{:?}", nf.entries()),
                    format!("free multi-index {:?}", nf.entries()),
                    closed.render(),
                    series.render(),
                    series == closed,
                ));
            }
            finish("bracket", checks, &output, started)
        }
        Command::Recover {
            n,
            i1,
            i2,
            degree,
            output,
        } => {
            check_bound("n", n as u64, 5, unlocked)?;
            check_bound("D", degree as u64, 8, unlocked)?;
            let cfg = GkzConfig::new(n, i1, i2).map_err(|e| e.to_string())?;
            let mut checks = Vec::new();
            for nf in MultiIndex::all_up_to(n - 1, degree) {
                if nf.order() == 0 {
                    continue;
                }
                let ok = recovery_vs_main(&nf, &cfg).map_err(|e| e.to_string())?;
                checks.push(Check::new(
                    format!("recover_n_{:?}", nf.entries()),
                    format!("free multi-index {:?}", nf.entries()),
                    "bracket coefficient = closed perturbed-root coefficient",
                    if ok { "equal" } else { "different" },
                    ok,
                ));
            }
            finish("recover", checks, &output, started)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
