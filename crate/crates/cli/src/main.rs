use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use qcharfn::analysis::{analyze_spec, render_text, AnalysisOptions};
use qcharfn::catalog::{self, CatalogEntry, ChannelName, Params};
use qcharfn::spec::{parse_channel_spec, ChannelSpec, SCHEMA_VERSION};
use qcharfn::suite::{run_suite, SuiteConfig, SuiteReport, DEFAULT_SEED, DEFAULT_TRIALS};

const EXIT_PARSE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_SUITE: u8 = 4;

/// Grassmann characteristic functions and Green functions for qubit channels.
#[derive(Parser)]
#[command(name = "qcharfn", version)]
struct Cli {
    /// Emit JSON instead of text, errors included.
    #[arg(long, global = true)]
    json: bool,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a channel given as a JSON spec file or a catalog name.
    Analyze(AnalyzeArgs),
    /// List the named channels.
    Catalog(CatalogArgs),
    /// Run the randomized self-verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Channel spec file; `-` reads standard input.
    #[arg(conflicts_with = "named", required_unless_present = "named")]
    spec: Option<PathBuf>,

    /// Catalog channel name, e.g. amplitude_damping.
    #[arg(long, value_name = "NAME")]
    named: Option<String>,

    /// Parameter of the named channel (repeatable).
    #[arg(long = "param", value_name = "KEY=VALUE", value_parser = parse_param, requires = "named")]
    params: Vec<(String, f64)>,

    /// Residual bound for degradability certificates.
    #[arg(long, value_name = "FLOAT", default_value_t = AnalysisOptions::default().certificate_tol)]
    tol: f64,
}

#[derive(Args)]
struct CatalogArgs {
    /// Show a single entry.
    #[arg(long, alias = "named", value_name = "NAME")]
    name: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,

    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Bound on every residual the suite measures.
    #[arg(long, value_name = "FLOAT", default_value_t = SuiteConfig::default().tol)]
    tol: f64,
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (key, value) = s.split_once('=').ok_or_else(|| format!("expected KEY=VALUE, got `{s}`"))?;
    let key = key.trim();
    if key.is_empty() {
        return Err(format!("empty parameter name in `{s}`"));
    }
    let value: f64 = value.trim().parse().map_err(|_| format!("`{value}` is not a number"))?;
    Ok((key.to_string(), value))
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_PARSE,
            kind: "parse",
            message: message.into(),
        }
    }
}

impl From<qcharfn::Error> for Failure {
    fn from(e: qcharfn::Error) -> Self {
        if e.is_validation() {
            Self {
                code: EXIT_VALIDATION,
                kind: "validation",
                message: e.to_string(),
            }
        } else {
            Self::parse(e.to_string())
        }
    }
}

#[derive(Serialize)]
struct ErrorDocument<'a> {
    schema_version: u32,
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: &'a str,
}

#[derive(Serialize)]
struct CatalogDocument<'a> {
    schema_version: u32,
    channels: &'a [CatalogEntry],
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Failure::parse(format!("--tol must be a positive number, got {tol}")))
    }
}

fn read_spec(path: &Path) -> Result<ChannelSpec, Failure> {
    let text = if path == Path::new("-") {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::parse(format!("reading standard input: {e}")))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| Failure::parse(format!("reading {}: {e}", path.display())))?
    };
    Ok(parse_channel_spec(&text)?)
}

fn named_spec(name: &str, pairs: &[(String, f64)]) -> Result<ChannelSpec, Failure> {
    let name: ChannelName = name.parse()?;
    let mut params = Params::new();
    for (k, v) in pairs {
        if params.insert(k.clone(), *v).is_some() {
            return Err(Failure::parse(format!("parameter `{k}` given twice")));
        }
    }
    Ok(ChannelSpec::named(name, params))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

fn cmd_analyze(args: &AnalyzeArgs, json: bool) -> Result<String, Failure> {
    check_tol(args.tol)?;
    let spec = match (&args.spec, &args.named) {
        (Some(path), None) => read_spec(path)?,
        (None, Some(name)) => named_spec(name, &args.params)?,
        _ => return Err(Failure::parse("give either a spec file or --named")),
    };
    let opts = AnalysisOptions {
        certificate_tol: args.tol,
        ..AnalysisOptions::default()
    };
    let report = analyze_spec(&spec, &opts)?;
    Ok(if json { to_json(&report) } else { render_text(&report) })
}

fn render_entry(e: &CatalogEntry) -> String {
    let ranges: Vec<String> = e.params.iter().map(|p| format!("{} ∈ [{}, {}]", p.name, p.min, p.max)).collect();
    format!(
        "{} ({}; {})\n  {}\n  t = ({}), λ = ({})\n  G = {}\n  environment: {}\n  Gaussian: {}\n  claim: {}\n",
        e.name,
        e.title,
        ranges.join(", "),
        e.description,
        e.t.join(", "),
        e.lambda.join(", "),
        e.green,
        e.environment,
        if e.gaussian { "yes" } else { "no" },
        e.claim,
    )
}

fn cmd_catalog(args: &CatalogArgs, json: bool) -> Result<String, Failure> {
    let entries: &[CatalogEntry] = match &args.name {
        Some(name) => std::slice::from_ref(name.parse::<ChannelName>()?.entry()),
        None => catalog::listing(),
    };
    Ok(if json {
        to_json(&CatalogDocument {
            schema_version: SCHEMA_VERSION,
            channels: entries,
        })
    } else {
        entries.iter().map(render_entry).collect::<Vec<_>>().join("\n")
    })
}

fn render_suite(r: &SuiteReport) -> String {
    let mut out = format!("{:<24} {:>8} {:>13} {:>9}  result\n", "check", "trials", "max residual", "failures");
    for c in &r.checks {
        out += &format!(
            "{:<24} {:>8} {:>13.3e} {:>9}  {}\n",
            c.name,
            c.trials,
            c.max_residual,
            c.failures,
            if c.passed { "PASS" } else { "FAIL" }
        );
    }
    for w in &r.warnings {
        out += &format!("warning: {w}\n");
    }
    out += &format!(
        "suite: {} (seed {}, {} trials, tol {:e})\n",
        if r.passed { "PASS" } else { "FAIL" },
        r.config.seed,
        r.config.trials,
        r.config.tol
    );
    out
}

fn cmd_verify(args: &VerifyArgs, json: bool) -> Result<(String, bool), Failure> {
    check_tol(args.tol)?;
    let report = run_suite(&SuiteConfig {
        seed: args.seed,
        trials: args.trials,
        tol: args.tol,
    });
    let text = if json { to_json(&report) } else { render_suite(&report) };
    Ok((text, report.passed))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::parse(format!("writing {}: {e}", path.display()))),
        None => {
            let _ = io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn report_failure(f: &Failure, json: bool) -> ExitCode {
    if json {
        let doc = ErrorDocument {
            schema_version: SCHEMA_VERSION,
            error: ErrorBody {
                kind: f.kind,
                message: &f.message,
            },
        };
        println!("{}", serde_json::to_string(&doc).expect("error serializes"));
    } else {
        eprintln!("error: {}", f.message);
    }
    ExitCode::from(f.code)
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let (text, passed) = match &cli.command {
        Command::Analyze(a) => (cmd_analyze(a, cli.json)?, true),
        Command::Catalog(a) => (cmd_catalog(a, cli.json)?, true),
        Command::Verify(a) => cmd_verify(a, cli.json)?,
    };
    emit(cli.out.as_deref(), &text)?;
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() && std::env::args().any(|a| a == "--json") {
                let message = e.render().to_string();
                let first = message.lines().next().unwrap_or_default().trim_start_matches("error: ");
                return report_failure(&Failure::parse(first), true);
            }
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_SUITE),
        Err(f) => report_failure(&f, cli.json),
    }
}
