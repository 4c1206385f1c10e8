//! `iph`: run hypermutation experiments, fit scaling exponents, emit
//! potential profiles and check the operators against exact oracles.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use iph::harness::{
    self, fit_scaling, read_csv, read_jsonl, run_experiment, write_csv, write_jsonl, ExperimentConfig, OutputFormat,
    RunSample, ScalingFit,
};
use iph::oracles::run_suite;
use iph::{Error, Landscape, LandscapeKind, PotentialScheme, Result, RunRecord, SchemeKind, SymmetricMode};

#[derive(Parser, Debug)]
#[command(
    name = "iph",
    version,
    about = "Hypermutation with inversely proportional mutation potentials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run replicated experiments and write one record per run.
    Run(Box<RunArgs>),
    /// Fit log-log scaling exponents to recorded runs.
    Fit(FitArgs),
    /// Write the potential as a function of distance (or fitness).
    Profile(ProfileArgs),
    /// Check the operators against the exact oracles.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args, Debug, Default)]
struct RunArgs {
    /// Flat TOML file with the same keys as the flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    algorithm: Option<String>,
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long)]
    function: Option<String>,
    /// Problem sizes: `64,128,256` or `64..=512*2`.
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    k_rule: Option<String>,
    #[arg(long)]
    tau_rule: Option<String>,
    #[arg(long)]
    rho: Option<String>,
    #[arg(long)]
    runs: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Evaluation budget, an expression in n, k and tau.
    #[arg(long)]
    budget: Option<String>,
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    symmetric_mode: Option<String>,
    #[arg(long)]
    best_mode: Option<String>,
    #[arg(long)]
    p_die: Option<String>,
    #[arg(long)]
    ageing_trigger: Option<String>,
    #[arg(long)]
    trace: bool,
    /// csv or jsonl.
    #[arg(long)]
    format: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FitArgs {
    /// CSV or JSONL (`.jsonl`) file produced by `run`.
    #[arg(long = "in")]
    input: PathBuf,
    /// Comma-separated record fields to fit separately (JSONL only):
    /// algorithm, scheme, function, target, tau, k.
    #[arg(long)]
    group_by: Option<String>,
}

#[derive(Args, Debug)]
struct ProfileArgs {
    #[arg(long)]
    scheme: SchemeKind,
    #[arg(long, default_value = "onemax")]
    function: LandscapeKind,
    #[arg(long)]
    n: usize,
    /// Cliff parameter; defaults to floor(n/5).
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long, default_value = "proof-consistent")]
    symmetric_mode: SymmetricMode,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn toml_pairs(path: &Path) -> Result<Vec<(String, String)>> {
    let text = std::fs::read_to_string(path)?;
    let table: toml::Table = text.parse().map_err(|e: toml::de::Error| Error::Config {
        field: "config".into(),
        reason: format!("{}: {e}", path.display()),
    })?;
    table
        .into_iter()
        .map(|(k, v)| {
            let s = match v {
                toml::Value::String(s) => s,
                toml::Value::Array(items) => items
                    .into_iter()
                    .map(|i| match i {
                        toml::Value::String(s) => s,
                        other => other.to_string(),
                    })
                    .collect::<Vec<_>>()
                    .join(","),
                toml::Value::Table(_) => {
                    return Err(Error::Config {
                        field: k,
                        reason: "nested tables are not supported".into(),
                    })
                }
                other => other.to_string(),
            };
            Ok((k, s))
        })
        .collect()
}

impl RunArgs {
    fn flag_pairs(&self) -> Vec<(&'static str, String)> {
        let mut pairs = Vec::new();
        let mut push = |k: &'static str, v: &Option<String>| {
            if let Some(v) = v {
                pairs.push((k, v.clone()));
            }
        };
        push("algorithm", &self.algorithm);
        push("scheme", &self.scheme);
        push("function", &self.function);
        push("n", &self.n);
        push("k-rule", &self.k_rule);
        push("tau-rule", &self.tau_rule);
        push("rho", &self.rho);
        push("runs", &self.runs);
        push("seed", &self.seed);
        push("budget", &self.budget);
        push("target", &self.target);
        push("symmetric-mode", &self.symmetric_mode);
        push("best-mode", &self.best_mode);
        push("p-die", &self.p_die);
        push("ageing-trigger", &self.ageing_trigger);
        push("format", &self.format);
        if self.trace {
            pairs.push(("trace", "true".into()));
        }
        if let Some(out) = &self.out {
            pairs.push(("out", out.display().to_string()));
        }
        pairs
    }

    fn config(&self) -> Result<ExperimentConfig> {
        let mut cfg = ExperimentConfig::default();
        if let Some(path) = &self.config {
            for (k, v) in toml_pairs(path)? {
                cfg.set(&k, &v)?;
            }
        }
        for (k, v) in self.flag_pairs() {
            cfg.set(k, &v)?;
        }
        if cfg.format == OutputFormat::Csv
            && cfg
                .out
                .as_ref()
                .is_some_and(|p| p.extension().is_some_and(|e| e == "jsonl"))
        {
            cfg.format = OutputFormat::Jsonl;
        }
        Ok(cfg)
    }
}

fn write_records<W: Write>(w: W, format: OutputFormat, records: &[RunRecord]) -> Result<()> {
    match format {
        OutputFormat::Csv => write_csv(w, records),
        OutputFormat::Jsonl => write_jsonl(w, records),
    }
}

fn cmd_run(args: &RunArgs) -> Result<()> {
    let cfg = args.config()?;
    let records = run_experiment(&cfg)?;
    match &cfg.out {
        Some(path) => write_records(io::BufWriter::new(File::create(path)?), cfg.format, &records)?,
        None => write_records(io::stdout().lock(), cfg.format, &records)?,
    }
    let samples: Vec<RunSample> = records.iter().map(RunSample::from).collect();
    for s in harness::summarize(&samples) {
        eprintln!(
            "n={} runs={} successes={} mean={:.1} median={:.1}",
            s.n, s.runs, s.successes, s.mean, s.median
        );
    }
    Ok(())
}

fn group_key(r: &RunRecord, fields: &[String]) -> Result<String> {
    let mut parts = Vec::with_capacity(fields.len());
    for f in fields {
        let v = match f.as_str() {
            "algorithm" => r.algorithm.to_string(),
            "scheme" => r.scheme.to_string(),
            "function" => r.function.to_string(),
            "target" => format!("{:?}", r.target),
            "tau" => r.tau.map_or("-".into(), |t| t.to_string()),
            "k" => r.k.map_or("-".into(), |k| k.to_string()),
            other => {
                return Err(Error::Config {
                    field: "group-by".into(),
                    reason: format!("unknown field {other:?}"),
                })
            }
        };
        parts.push(format!("{f}={v}"));
    }
    Ok(parts.join(" "))
}

fn print_fit(out: &mut impl Write, label: &str, fit: &ScalingFit) -> io::Result<()> {
    if !label.is_empty() {
        writeln!(out, "[{label}]")?;
    }
    writeln!(
        out,
        "slope {:.4} +/- {:.4}  intercept {:.4}  censored {}",
        fit.slope, fit.slope_half_width, fit.intercept, fit.censored
    )?;
    writeln!(out, "n,runs,successes,censored,mean,median,std,ci_half_width")?;
    for s in &fit.sizes {
        writeln!(
            out,
            "{},{},{},{},{:.3},{:.3},{:.3},{:.3}",
            s.n, s.runs, s.successes, s.censored, s.mean, s.median, s.std, s.ci_half_width
        )?;
    }
    Ok(())
}

fn cmd_fit(args: &FitArgs) -> Result<()> {
    let jsonl = args.input.extension().is_some_and(|e| e == "jsonl");
    let fields: Vec<String> = args
        .group_by
        .as_deref()
        .map(|g| {
            g.split(',')
                .map(|s| s.trim().to_ascii_lowercase())
                .filter(|s| !s.is_empty())
                .collect()
        })
        .unwrap_or_default();
    let file = File::open(&args.input)?;
    let mut groups: BTreeMap<String, Vec<RunSample>> = BTreeMap::new();
    if jsonl {
        for r in read_jsonl(BufReader::new(file))? {
            groups
                .entry(group_key(&r, &fields)?)
                .or_default()
                .push(RunSample::from(&r));
        }
    } else {
        if !fields.is_empty() {
            return Err(Error::Config {
                field: "group-by".into(),
                reason: "CSV files carry no grouping fields; use JSONL output".into(),
            });
        }
        let rows = read_csv(file)?;
        groups.insert(String::new(), rows.iter().map(RunSample::from).collect());
    }
    let mut fits = Vec::new();
    for (label, samples) in &groups {
        fits.push((label, fit_scaling(samples)?));
    }
    let mut out = io::stdout().lock();
    for (label, fit) in fits {
        print_fit(&mut out, label, &fit)?;
    }
    Ok(())
}

fn cmd_profile(args: &ProfileArgs) -> Result<()> {
    let k = match args.function {
        LandscapeKind::Cliff => Some(args.k.unwrap_or((args.n / 5).max(1))),
        _ => None,
    };
    let landscape = Landscape::new(args.function, args.n, k)?;
    let mut scheme = PotentialScheme::new(args.scheme);
    scheme.rho = args.rho;
    scheme.symmetric_mode = args.symmetric_mode;
    match &args.out {
        Some(path) => {
            harness::emit_profile(&scheme, &landscape, path)?;
        }
        None => {
            let rows = harness::profile_rows(&scheme, &landscape)?;
            harness::write_profile(io::stdout().lock(), &landscape, &rows)?;
        }
    }
    Ok(())
}

fn cmd_verify(seed: u64) -> Result<()> {
    let checks = run_suite(seed)?;
    let mut failed = 0;
    for c in &checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        failed += usize::from(!c.passed);
    }
    if failed > 0 {
        return Err(Error::Analysis(format!("{failed} oracle check(s) failed")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Fit(args) => cmd_fit(args),
        Command::Profile(args) => cmd_profile(args),
        Command::Verify { seed } => cmd_verify(*seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
