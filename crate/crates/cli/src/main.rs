//! detlab: determinize, analyze, and generate finite-state automata.
//!
//! Exit codes: 0 success, 1 failed bound assertion (verify/batch), 2
//! validation error (unreadable input, malformed automaton, bad flags), 3
//! fuel exhaustion under `--strict`. Data goes to the output stream,
//! diagnostics to the error stream; `-` means stdin/stdout wherever a path
//! is accepted. Identical invocations on identical inputs produce
//! byte-identical output (timing only appears on stderr behind
//! `--verbose`).

use std::fmt::Write as _;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use detlab_core::analysis::{predict_bounds, verify_bounds, AnalysisReport};
use detlab_core::determinize::{determinize, determinize_weighted, Fuel};
use detlab_core::format::{parse_automaton, serialize_automaton, serialize_tropical, Fsa};
use detlab_core::gen::{generate, GenSpec};
use detlab_core::monoid::{default_bool_closure_fuel, monoid_closure, weighted_monoid_closure};

#[derive(Parser)]
#[command(
    name = "detlab",
    version,
    about = "On-the-fly determinization and state-complexity analysis for (weighted) finite-state automata"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Print timing to the error stream.
    #[arg(long, global = true)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Determinize an automaton (ε-removal runs first on unweighted input).
    Determinize {
        /// Input file, or `-` for stdin.
        input: String,
        /// Maximum number of power states to create.
        #[arg(long)]
        fuel: Option<usize>,
        /// Write the determinized automaton here (`-` for stdout).
        #[arg(long)]
        out: Option<String>,
        /// Print `key=value` run statistics to stdout instead of the
        /// automaton (combine with --out to get both).
        #[arg(long)]
        stats: bool,
        /// Exit 3 when fuel is exhausted.
        #[arg(long)]
        strict: bool,
    },
    /// Run the structural analyses and the bound predictor.
    Analyze {
        input: String,
        /// Also determinize and check every applicable bound.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        fuel: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Exit 3 when verification could not finish within fuel.
        #[arg(long)]
        strict: bool,
    },
    /// Enumerate the transition monoid.
    Monoid {
        input: String,
        /// Maximum number of monoid elements to enumerate.
        #[arg(long)]
        fuel: Option<usize>,
        /// List every element with its shortest generator word.
        #[arg(long)]
        witnesses: bool,
    },
    /// Generate an automaton family instance.
    Gen {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        sigma: usize,
        /// Density divisor for `dense` (⌊n²/d⌋ nonzeros per matrix).
        #[arg(long)]
        d: Option<u64>,
        /// Indecomposability target for `indecomposable`.
        #[arg(long)]
        r: Option<usize>,
        /// Tree-width target for `finite_tw`.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Resampling budget for `indecomposable`.
        #[arg(long, default_value_t = 100)]
        max_tries: usize,
        /// Share one support pattern across all symbols (`dense` only).
        #[arg(long)]
        correlated: bool,
        #[arg(long)]
        out: Option<String>,
    },
    /// Predict bounds, determinize, and fail (exit 1) on any violated bound.
    Verify {
        input: String,
        #[arg(long)]
        fuel: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Exit 3 when verification could not finish within fuel.
        #[arg(long)]
        strict: bool,
    },
    /// Verify every `.fsa` file in a directory; continue on per-file errors.
    Batch {
        dir: PathBuf,
        #[arg(long)]
        fuel: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Moore,
    #[value(name = "one_letter_irreducible")]
    OneLetterIrreducible,
    Commutative,
    Indecomposable,
    Dense,
    #[value(name = "finite_tw")]
    FiniteTw,
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn validation(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }

    fn fuel(message: impl Into<String>) -> Self {
        CliError { code: 3, message: message.into() }
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::validation(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("cannot read {path}: {e}")))
    }
}

fn write_output(path: Option<&str>, data: &str) -> Result<(), CliError> {
    match path {
        None | Some("-") => {
            std::io::stdout()
                .write_all(data.as_bytes())
                .map_err(|e| CliError::validation(format!("cannot write stdout: {e}")))
        }
        Some(p) => {
            fs::write(p, data).map_err(|e| CliError::validation(format!("cannot write {p}: {e}")))
        }
    }
}

fn parse_input(path: &str) -> Result<Fsa, CliError> {
    let text = read_input(path)?;
    parse_automaton(&text).map_err(|e| CliError::validation(format!("{path}: {e}")))
}

fn checked_fuel(fuel: Option<usize>) -> Result<Option<usize>, CliError> {
    match fuel {
        Some(0) => Err(CliError::validation("--fuel must be at least 1")),
        other => Ok(other),
    }
}

/// TSV rendering with the header row.
fn tsv_report(report: &AnalysisReport) -> String {
    format!("rule\tapplicable\tbound\tactual\tpass\n{}", report.tsv_rows())
}

fn run_determinize(
    input: &str,
    fuel: Option<usize>,
    out: Option<&str>,
    stats: bool,
    strict: bool,
) -> Result<u8, CliError> {
    let fuel = checked_fuel(fuel)?;
    let (serialized, steps, det_states, considered, terminated) = match parse_input(input)? {
        Fsa::Unweighted(a) => {
            let a = a.remove_epsilon();
            let fuel = fuel.map_or_else(|| Fuel::default_unweighted(a.n_states()), Fuel::limited);
            let r = determinize(&a, fuel);
            (
                serialize_automaton(&Fsa::Unweighted(r.det.clone())),
                r.steps,
                r.det.n_states(),
                r.transitions_considered,
                r.terminated,
            )
        }
        Fsa::Tropical(w) => {
            let fuel = fuel.map_or_else(Fuel::default_weighted, Fuel::limited);
            let r = determinize_weighted(&w, fuel);
            (
                serialize_tropical(&r.det),
                r.steps,
                r.det.n_states(),
                r.transitions_considered,
                r.terminated,
            )
        }
    };

    if !terminated {
        eprintln!("determinization exhausted fuel; result is partial");
        if strict {
            return Err(CliError::fuel("fuel exhausted in --strict mode"));
        }
    }
    if let Some(path) = out {
        write_output(Some(path), &serialized)?;
    }
    if stats {
        let mut s = String::new();
        let _ = writeln!(s, "steps={steps}");
        let _ = writeln!(s, "det_states={det_states}");
        let _ = writeln!(s, "transitions_considered={considered}");
        let _ = writeln!(s, "terminated={terminated}");
        write_output(None, &s)?;
    } else if out.is_none() {
        write_output(None, &serialized)?;
    }
    Ok(0)
}

fn analysis_input(input: &str) -> Result<detlab_core::Automaton, CliError> {
    match parse_input(input)? {
        Fsa::Unweighted(a) => Ok(a.remove_epsilon()),
        Fsa::Tropical(_) => Err(CliError::validation(
            "analyze/verify require an unweighted (bool) automaton; use `monoid` or `determinize` for weighted input",
        )),
    }
}

fn run_analysis(
    input: &str,
    verify: bool,
    fuel: Option<usize>,
    format: Format,
    strict: bool,
    fail_on_bound: bool,
) -> Result<u8, CliError> {
    let fuel = checked_fuel(fuel)?;
    let a = analysis_input(input)?;
    let report = if verify {
        verify_bounds(&a, fuel.map_or_else(Fuel::unbounded, Fuel::limited))
    } else {
        predict_bounds(&a)
    };
    let rendered = match format {
        Format::Text => report.to_string(),
        Format::Tsv => tsv_report(&report),
    };
    write_output(None, &rendered)?;
    if verify && report.actual_det_states.is_none() {
        eprintln!("verification did not finish within fuel; bounds unchecked");
        if strict {
            return Err(CliError::fuel("fuel exhausted in --strict mode"));
        }
    }
    if fail_on_bound && !report.all_passed() {
        eprintln!("bound assertion failed");
        return Ok(1);
    }
    Ok(0)
}

fn run_monoid(input: &str, fuel: Option<usize>, witnesses: bool) -> Result<u8, CliError> {
    let fuel = checked_fuel(fuel)?;
    let mut out = String::new();
    match parse_input(input)? {
        Fsa::Unweighted(a) => {
            let a = a.remove_epsilon();
            if a.sigma() == 0 {
                return Err(CliError::validation("monoid needs a non-empty alphabet"));
            }
            let fuel = fuel.unwrap_or_else(|| default_bool_closure_fuel(a.n_states()));
            let closure = monoid_closure(&a.transition_matrices(), fuel);
            let _ = writeln!(out, "size={}", closure.size());
            let _ = writeln!(out, "complete={}", closure.complete);
            if witnesses {
                for (i, (elem, word)) in closure
                    .elements
                    .iter()
                    .zip(&closure.generator_words)
                    .enumerate()
                {
                    let _ = writeln!(out, "{i}\t{}\t{elem}", render_word(&a, word));
                }
            }
        }
        Fsa::Tropical(w) => {
            if w.sigma() == 0 {
                return Err(CliError::validation("monoid needs a non-empty alphabet"));
            }
            let fuel = fuel.unwrap_or(10_000);
            let closure = weighted_monoid_closure(&w.transition_matrices(), fuel);
            let _ = writeln!(out, "size={}", closure.size());
            let _ = writeln!(out, "complete={}", closure.complete);
            if witnesses {
                for (i, word) in closure.generator_words.iter().enumerate() {
                    let sym = |s: &usize| w.alphabet()[*s].clone();
                    let word = if word.is_empty() {
                        "eps".to_string()
                    } else {
                        word.iter().map(sym).collect::<Vec<_>>().join("")
                    };
                    let _ = writeln!(out, "{i}\t{word}");
                }
            }
        }
    }
    write_output(None, &out)?;
    Ok(0)
}

fn render_word(a: &detlab_core::Automaton, word: &[usize]) -> String {
    if word.is_empty() {
        "eps".to_string()
    } else {
        word.iter()
            .map(|&s| a.alphabet()[s].clone())
            .collect::<Vec<_>>()
            .join("")
    }
}

#[allow(clippy::too_many_arguments)]
fn run_gen(
    family: Family,
    n: usize,
    sigma: usize,
    d: Option<u64>,
    r: Option<usize>,
    k: Option<usize>,
    seed: u64,
    max_tries: usize,
    correlated: bool,
    out: Option<&str>,
) -> Result<u8, CliError> {
    let require = |opt: Option<u64>, flag: &str| {
        opt.ok_or_else(|| CliError::validation(format!("family requires --{flag}")))
    };
    let spec = match family {
        Family::Moore => GenSpec::Moore { n },
        Family::OneLetterIrreducible => GenSpec::OneLetterIrreducible { n, seed },
        Family::Commutative => GenSpec::Commutative { n, sigma, seed },
        Family::Indecomposable => GenSpec::Indecomposable {
            n,
            sigma,
            r: require(r.map(|v| v as u64), "r")? as usize,
            seed,
            max_tries,
        },
        Family::Dense => GenSpec::Dense { n, sigma, d: require(d, "d")?, seed, correlated },
        Family::FiniteTw => GenSpec::FiniteTw {
            n,
            k: require(k.map(|v| v as u64), "k")? as usize,
            seed,
        },
    };
    let a = generate(&spec).map_err(|e| CliError::validation(e.to_string()))?;
    write_output(out, &serialize_automaton(&Fsa::Unweighted(a)))?;
    Ok(0)
}

/// Optional expectation sidecar for batch runs: `<name>.fsa.expect` holds
/// `key=value` lines (`det_states`, `monoid_size`) checked against the run.
fn check_expectations(
    path: &std::path::Path,
    report: &AnalysisReport,
    rows: &mut String,
    failures: &mut usize,
) {
    let expect_path = PathBuf::from(format!("{}.expect", path.display()));
    let Ok(text) = fs::read_to_string(&expect_path) else {
        return;
    };
    let name = path.file_name().unwrap_or_default().to_string_lossy().to_string();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            *failures += 1;
            let _ = writeln!(rows, "{name}\texpect:{line}\t-\t-\t-\terror");
            continue;
        };
        let expected: Option<usize> = value.trim().parse().ok();
        let actual = match key.trim() {
            "det_states" => report.actual_det_states,
            "monoid_size" => report.monoid_size,
            _ => None,
        };
        let pass = expected.is_some() && expected == actual;
        if !pass {
            *failures += 1;
        }
        let _ = writeln!(
            rows,
            "{name}\texpect:{}\ttrue\t{}\t{}\t{}",
            key.trim(),
            value.trim(),
            actual.map_or("-".to_string(), |v| v.to_string()),
            pass
        );
    }
}

fn run_batch(dir: &PathBuf, fuel: Option<usize>) -> Result<u8, CliError> {
    let fuel = checked_fuel(fuel)?;
    let entries = fs::read_dir(dir)
        .map_err(|e| CliError::validation(format!("cannot read {}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "fsa"))
        .collect();
    files.sort();

    let mut rows = String::new();
    let mut passes = 0usize;
    let mut failures = 0usize;
    let mut errors = 0usize;
    for path in &files {
        let name = path.file_name().unwrap_or_default().to_string_lossy().to_string();
        let parsed = fs::read_to_string(path)
            .map_err(|e| e.to_string())
            .and_then(|text| parse_automaton(&text).map_err(|e| e.to_string()));
        let a = match parsed {
            Ok(Fsa::Unweighted(a)) => a.remove_epsilon(),
            Ok(Fsa::Tropical(_)) => {
                errors += 1;
                let _ = writeln!(rows, "{name}\t-\t-\t-\t-\terror:weighted-input");
                continue;
            }
            Err(e) => {
                errors += 1;
                eprintln!("{name}: {e}");
                let _ = writeln!(rows, "{name}\t-\t-\t-\t-\terror:parse");
                continue;
            }
        };
        let report = verify_bounds(&a, fuel.map_or_else(Fuel::unbounded, Fuel::limited));
        for bp in &report.predicted_bounds {
            let bound = bp.bound.as_ref().map_or("-".to_string(), |b| b.to_string());
            let actual = report.actual_det_states.map_or("-".to_string(), |v| v.to_string());
            let pass = bp.pass.map_or("-".to_string(), |p| p.to_string());
            match bp.pass {
                Some(true) => passes += 1,
                Some(false) => failures += 1,
                None => {}
            }
            let _ = writeln!(
                rows,
                "{name}\t{}\t{}\t{bound}\t{actual}\t{pass}",
                bp.rule.name(),
                bp.applicable
            );
        }
        check_expectations(path, &report, &mut rows, &mut failures);
    }

    let mut out = String::from("file\trule\tapplicable\tbound\tactual\tpass\n");
    out.push_str(&rows);
    let _ = writeln!(out, "summary\tpass={passes}\tfail={failures}\terror={errors}");
    write_output(None, &out)?;
    Ok(if failures + errors > 0 { 1 } else { 0 })
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.cmd {
        Cmd::Determinize { input, fuel, out, stats, strict } => {
            run_determinize(&input, fuel, out.as_deref(), stats, strict)
        }
        Cmd::Analyze { input, verify, fuel, format, strict } => {
            run_analysis(&input, verify, fuel, format, strict, verify)
        }
        Cmd::Monoid { input, fuel, witnesses } => run_monoid(&input, fuel, witnesses),
        Cmd::Gen { family, n, sigma, d, r, k, seed, max_tries, correlated, out } => {
            run_gen(family, n, sigma, d, r, k, seed, max_tries, correlated, out.as_deref())
        }
        Cmd::Verify { input, fuel, format, strict } => {
            run_analysis(&input, true, fuel, format, strict, true)
        }
        Cmd::Batch { dir, fuel } => run_batch(&dir, fuel),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let verbose = cli.verbose;
    let start = Instant::now();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    };
    if verbose {
        eprintln!("elapsed: {:?}", start.elapsed());
    }
    ExitCode::from(code)
}
