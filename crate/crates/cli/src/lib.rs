//! Command-line front end. [`run`] takes the argument vector and two output
//! streams and returns the process exit code, so tests can drive it
//! in-process.
//!
//! Exit codes: 0 on success, 2 when a verification fails, 1 on usage, input
//! or parse errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use stable_resolve::corpus::{generate, CorpusParams};
use stable_resolve::koszul::{compare_betti, koszul_betti};
use stable_resolve::resolution::build_resolution;
use stable_resolve::verify::{self, run_suite, Depth};
use stable_resolve::{Error, GradedCWComplex, Monomial, MonomialIdeal, PosetOfSymbols, PrimeField};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILED: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "stable-resolve", version, about = "Minimal free resolutions of stable monomial ideals")]
pub struct Cli {
    /// Characteristic of the coefficient field
    #[arg(long, global = true, env = "STABLE_RESOLVE_PRIME", default_value_t = stable_resolve::field::DEFAULT_PRIME as u64)]
    pub prime: u64,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct DepthArgs {
    /// Multidegrees visited by exactness, oracle and acyclicity checks: quick | full | exhaustive
    #[arg(long, default_value = "full")]
    pub depth: Depth,

    /// Seed for the random multidegrees at exhaustive depth
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Report whether the ideal is stable
    Check { file: PathBuf },
    /// Print the minimal free resolution with its differentials
    Resolve { file: PathBuf },
    /// Print the Betti table
    Betti { file: PathBuf },
    /// Print the Hasse diagram of the poset of admissible symbols
    Hasse {
        file: PathBuf,
        /// dot | json
        #[arg(long, default_value = "dot")]
        format: String,
    },
    /// Print the graded CW complex supporting the resolution
    Cw {
        file: PathBuf,
        /// dot | json
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Run every structural check
    Verify {
        file: PathBuf,
        #[command(flatten)]
        depth: DepthArgs,
    },
    /// Compare resolution Betti numbers with Koszul homology
    Oracle {
        file: PathBuf,
        /// A single multidegree such as 1,1,1
        #[arg(long, value_delimiter = ',')]
        degree: Option<Vec<u32>>,
        #[command(flatten)]
        depth: DepthArgs,
    },
    /// Generate random stable ideals and verify each one
    Corpus {
        #[arg(long, default_value_t = 2010)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        max_vars: usize,
        #[arg(long, default_value_t = 5)]
        max_degree: u32,
        #[arg(long, default_value_t = 20)]
        max_generators: usize,
        /// Multidegrees visited per ideal: quick | full | exhaustive
        #[arg(long, default_value = "full")]
        depth: Depth,
        /// Print the generated ideals instead of verifying them
        #[arg(long)]
        list: bool,
    },
}

/// A failure that ends the run with the given exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

/// Output of a successful command: text or JSON, plus whether every check
/// passed.
struct Output {
    text: String,
    json: Value,
    passed: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, passed: true }
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let stream: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(stream, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(output) => {
            let written = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&output.json).expect("serializable"))
            } else {
                write!(out, "{}", output.text)
            };
            if written.is_err() {
                return EXIT_USAGE;
            }
            if output.passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn load(path: &PathBuf) -> Result<MonomialIdeal, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    MonomialIdeal::parse(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Error text with monomials written in the ideal's variable names.
pub fn describe(ideal: &MonomialIdeal, e: &Error) -> String {
    match e {
        Error::NotStable { generator, index, max_index, exchanged } => {
            let names = ideal.variables().names();
            format!(
                "ideal is not stable: {} * {} / {} = {} is not in the ideal",
                ideal.format(generator),
                names[index - 1],
                names[max_index - 1],
                ideal.format(exchanged)
            )
        }
        other => other.to_string(),
    }
}

fn stable_poset(ideal: &MonomialIdeal) -> Result<PosetOfSymbols, Failure> {
    PosetOfSymbols::build(ideal).map_err(|e| Failure::usage(describe(ideal, &e)))
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let field = PrimeField::new(cli.prime).map_err(|e| Failure::usage(e.to_string()))?;
    match &cli.command {
        Command::Check { file } => {
            let ideal = load(file)?;
            let verdict = ideal.check_stable();
            let json = json!({
                "format": 1,
                "stable": verdict.is_ok(),
                "generators": ideal.generators().len(),
                "violation": verdict.as_ref().err().map(|e| describe(&ideal, e)),
            });
            let text = match &verdict {
                Ok(()) => "stable\n".to_string(),
                Err(e) => format!("not stable\n{}\n", describe(&ideal, e)),
            };
            Ok(Output { text, json, passed: verdict.is_ok() })
        }
        Command::Resolve { file } => {
            let ideal = load(file)?;
            let poset = stable_poset(&ideal)?;
            let complex = build_resolution(&poset, field);
            Ok(Output::ok(resolution_text(&ideal, &complex), complex.to_json(&poset)))
        }
        Command::Betti { file } => {
            let ideal = load(file)?;
            let poset = stable_poset(&ideal)?;
            let table = build_resolution(&poset, field).betti_table();
            Ok(Output::ok(table.to_text(), table.to_json()))
        }
        Command::Hasse { file, format } => {
            let ideal = load(file)?;
            let poset = stable_poset(&ideal)?;
            let json = poset.to_json();
            match format.as_str() {
                "dot" => Ok(Output::ok(poset.to_dot(), json)),
                "json" => Ok(Output::ok(pretty(&json), json)),
                other => Err(Failure::usage(Error::UnknownFormat(other.to_string()).to_string())),
            }
        }
        Command::Cw { file, format } => {
            let ideal = load(file)?;
            let poset = stable_poset(&ideal)?;
            let cw =
                GradedCWComplex::build(&poset).map_err(|e| Failure { code: EXIT_FAILED, message: e.to_string() })?;
            let text = cw.export(format).map_err(|e| Failure::usage(e.to_string()))?;
            Ok(Output::ok(text, cw.to_json()))
        }
        Command::Verify { file, depth } => {
            let ideal = load(file)?;
            let report = run_suite(&ideal, field, depth.depth, depth.seed);
            let passed = report.passed();
            let json = serde_json::to_value(&report).expect("serializable");
            Ok(Output { text: report.to_text(), json, passed })
        }
        Command::Oracle { file, degree, depth } => {
            let ideal = load(file)?;
            let poset = stable_poset(&ideal)?;
            let complex = build_resolution(&poset, field);
            let degrees = match degree {
                Some(e) if e.len() != ideal.nvars() => {
                    return Err(Failure::usage(format!(
                        "--degree has {} entries but the ideal has {} variables",
                        e.len(),
                        ideal.nvars()
                    )))
                }
                Some(e) => vec![Monomial::new(e.clone())],
                None => verify::degrees(&complex, depth.depth, depth.seed),
            };
            let report = compare_betti(&ideal, &complex, &degrees);
            let mut text = String::new();
            if let [a] = degrees.as_slice() {
                let koszul = koszul_betti(&ideal, a, &field);
                let found: Vec<usize> = (0..koszul.len()).map(|i| complex.graded_betti(i, a)).collect();
                let _ = writeln!(text, "degree {:?}", a.exponents());
                let _ = writeln!(text, "koszul     {koszul:?}");
                let _ = writeln!(text, "resolution {found:?}");
            }
            let status = if report.passed() { "agree" } else { "DISAGREE" };
            let _ = writeln!(text, "{status} at {} multidegrees", report.checked);
            for v in &report.violations {
                let _ = writeln!(text, "    {v}");
            }
            let passed = report.passed();
            let mut json = serde_json::to_value(&report).expect("serializable");
            json["format"] = json!(1);
            Ok(Output { text, json, passed })
        }
        Command::Corpus { seed, count, max_vars, max_degree, max_generators, depth, list } => {
            if *max_vars == 0 || *max_degree == 0 || *max_generators == 0 {
                return Err(Failure::usage("corpus bounds must be positive"));
            }
            let params = CorpusParams {
                seed: *seed,
                count: *count,
                max_vars: *max_vars,
                max_degree: *max_degree,
                max_generators: *max_generators,
            };
            let corpus = generate(&params);
            if *list {
                let text = corpus.iter().map(|n| n.to_text()).collect::<Vec<_>>().join("\n");
                let json = json!({"format": 1, "params": params, "ideals": corpus.iter().map(MonomialIdeal::to_json).collect::<Vec<_>>()});
                return Ok(Output::ok(text, json));
            }
            let mut text = String::new();
            let mut entries = Vec::new();
            let mut passed = true;
            for (k, ideal) in corpus.iter().enumerate() {
                let report = run_suite(ideal, field, *depth, seed.wrapping_add(k as u64));
                let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
                passed &= failed.is_empty();
                let gens: Vec<String> = ideal.generators().iter().map(|g| ideal.format(g)).collect();
                let _ = writeln!(
                    text,
                    "{k:>3} {:<4} ranks {:?}  <{}>{}",
                    if failed.is_empty() { "ok" } else { "FAIL" },
                    report.ranks,
                    gens.join(", "),
                    if failed.is_empty() { String::new() } else { format!("  failed: {}", failed.join(", ")) }
                );
                entries.push(json!({"index": k, "ideal": ideal.to_json(), "report": report}));
            }
            let _ = writeln!(text, "{} ideals, {}", corpus.len(), if passed { "all passed" } else { "failures" });
            let json = json!({"format": 1, "params": params, "passed": passed, "ideals": entries});
            Ok(Output { text, json, passed })
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn resolution_text(ideal: &MonomialIdeal, complex: &stable_resolve::FreeComplex) -> String {
    let field = complex.field();
    let mut out = String::new();
    let ranks: Vec<String> = complex.ranks().iter().map(usize::to_string).collect();
    let _ = writeln!(out, "ranks: {}", ranks.join(" "));
    for i in 1..=complex.length() {
        let _ = writeln!(out, "d{i}:");
        for (col, s) in complex.basis(i).iter().enumerate() {
            let mut terms = Vec::new();
            for e in complex.differential(i).iter().filter(|e| e.col == col) {
                let c = field.signed(e.coeff);
                let sign = if c < 0 { "-" } else { "+" };
                let coeff = if c.abs() == 1 { String::new() } else { format!("{} ", c.abs()) };
                terms.push(format!(
                    "{sign} {coeff}{} f({})",
                    ideal.format(&e.monomial),
                    complex.basis(i - 1)[e.row].label(ideal)
                ));
            }
            let _ = writeln!(out, "  f({}) -> {}", s.label(ideal), terms.join(" "));
        }
    }
    out
}
