//! Replicated, seeded experiments and their analysis.
//!
//! An [`ExperimentConfig`] names an algorithm, a potential scheme, a
//! landscape and a list of problem sizes. [`run_experiment`] executes
//! `runs` independent runs per size, each on its own random stream derived
//! from the master seed, and returns the records in `(n, run)` order no
//! matter how the runs were scheduled.

mod analysis;
mod output;
mod profile;
pub mod recipes;
mod rules;

use std::path::PathBuf;

use rayon::prelude::*;

use crate::algorithms::{run_until_target, AgeingTrigger, AlgorithmConfig, AlgorithmKind, BestMode, RunRecord, Target};
use crate::benchmarks::{Landscape, LandscapeKind};
use crate::bitstring::derive_seed;
use crate::hypermutation::ConstructiveRule;
use crate::potentials::{PotentialScheme, SchemeKind, SymmetricMode};
use crate::{Error, Result};

pub use analysis::{fit_scaling, summarize, RunSample, ScalingFit, SizeSummary};
pub use output::{read_csv, read_jsonl, write_csv, write_jsonl, CsvRow, OutputFormat, CSV_HEADER};
pub use profile::{emit_profile, profile_rows, write_profile};
pub use rules::{Rule, RuleVars};

pub const DEFAULT_K_RULE: &str = "floor(n/5)";
pub const DEFAULT_TAU_RULE: &str = "n^1.3";

/// Default evaluation budget for a landscape.
pub fn default_budget_rule(kind: LandscapeKind) -> Rule {
    let src = match kind {
        LandscapeKind::OneMax | LandscapeKind::TwoMax => "40*n^2*ln(n)",
        LandscapeKind::LeadingOnes => "20*n^3",
        LandscapeKind::Cliff => "40*(n^3.5/k^2 + tau*sqrt(n) + n^1.5*ln(n))",
    };
    Rule::new(src).expect("built-in budget rule parses")
}

/// Everything needed to reproduce a batch of runs.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub algorithm: AlgorithmKind,
    /// `None` picks the algorithm's usual scheme.
    pub scheme: Option<SchemeKind>,
    pub function: LandscapeKind,
    pub n: Vec<usize>,
    /// Cliff parameter as a function of `n`.
    pub k_rule: Rule,
    /// Ageing threshold as a function of `n`; read only by ageing algorithms
    /// and by budget rules that mention `tau`.
    pub tau_rule: Rule,
    pub rho: Option<f64>,
    pub static_m: Option<usize>,
    pub symmetric_mode: SymmetricMode,
    pub best_mode: Option<BestMode>,
    pub p_die: f64,
    pub ageing_trigger: AgeingTrigger,
    pub constructive_rule: ConstructiveRule,
    pub runs: u64,
    pub seed: u64,
    /// `None` uses [`default_budget_rule`].
    pub budget: Option<Rule>,
    /// `None` uses [`Target::default_for`].
    pub target: Option<Target>,
    pub trace: bool,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            algorithm: AlgorithmKind::IaHyp,
            scheme: None,
            function: LandscapeKind::OneMax,
            n: Vec::new(),
            k_rule: Rule::new(DEFAULT_K_RULE).unwrap(),
            tau_rule: Rule::new(DEFAULT_TAU_RULE).unwrap(),
            rho: None,
            static_m: None,
            symmetric_mode: SymmetricMode::default(),
            best_mode: None,
            p_die: 0.5,
            ageing_trigger: AgeingTrigger::default(),
            constructive_rule: ConstructiveRule::default(),
            runs: 1,
            seed: 0,
            budget: None,
            target: None,
            trace: false,
            out: None,
            format: OutputFormat::Csv,
        }
    }
}

/// Fully resolved parameters for one problem size.
#[derive(Clone, Debug)]
pub struct SizePlan {
    pub landscape: Landscape,
    pub algorithm: AlgorithmConfig,
    pub target: Target,
    pub budget: u64,
}

fn parse_field<T: std::str::FromStr>(field: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value
        .trim()
        .parse()
        .map_err(|e| Error::config(field, format!("cannot parse {value:?}: {e}")))
}

fn parse_bool(field: &str, value: &str) -> Result<bool> {
    match value.trim().to_ascii_lowercase().as_str() {
        "true" | "1" | "yes" | "on" => Ok(true),
        "false" | "0" | "no" | "off" => Ok(false),
        _ => Err(Error::config(field, format!("expected a boolean, got {value:?}"))),
    }
}

/// Parses `64,128,256` or `[64, 128]`; a range `a..=b` or `a..b` is also
/// accepted, as is `a..=b*2` for doubling steps.
pub fn parse_n_list(value: &str) -> Result<Vec<usize>> {
    let v = value.trim().trim_start_matches('[').trim_end_matches(']').trim();
    if v.is_empty() {
        return Err(Error::config("n", "empty list"));
    }
    if let Some((lo, hi)) = v.split_once("..") {
        let lo: usize = parse_field("n", lo)?;
        let (hi, inclusive) = match hi.strip_prefix('=') {
            Some(h) => (h, true),
            None => (hi, false),
        };
        let (hi, doubling) = match hi.strip_suffix("*2") {
            Some(h) => (h, true),
            None => (hi, false),
        };
        let hi: usize = parse_field("n", hi)?;
        let end = if inclusive { hi } else { hi.saturating_sub(1) };
        let mut out = Vec::new();
        let mut x = lo;
        while x <= end && x > 0 {
            out.push(x);
            x = if doubling { x * 2 } else { x + 1 };
        }
        if out.is_empty() {
            return Err(Error::config("n", format!("range {value:?} is empty")));
        }
        return Ok(out);
    }
    v.split(',').map(|s| parse_field("n", s)).collect()
}

impl ExperimentConfig {
    pub fn new(algorithm: AlgorithmKind, function: LandscapeKind, n: Vec<usize>) -> Self {
        ExperimentConfig {
            algorithm,
            function,
            n,
            ..Default::default()
        }
    }

    /// Builds a config from flat key-value pairs, later pairs overriding
    /// earlier ones. Keys may use `-` or `_`.
    pub fn from_pairs<I, K, V>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (K, V)>,
        K: AsRef<str>,
        V: AsRef<str>,
    {
        let mut cfg = ExperimentConfig::default();
        for (k, v) in pairs {
            cfg.set(k.as_ref(), v.as_ref())?;
        }
        Ok(cfg)
    }

    /// Sets one field from its textual form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().to_ascii_lowercase().replace('_', "-");
        let v = value.trim();
        match key.as_str() {
            "algorithm" => self.algorithm = parse_field("algorithm", v)?,
            "scheme" => self.scheme = Some(parse_field("scheme", v)?),
            "function" | "landscape" => self.function = parse_field("function", v)?,
            "n" => self.n = parse_n_list(v)?,
            "k-rule" | "k" => self.k_rule = Rule::new(v).map_err(|e| rename(e, "k-rule"))?,
            "tau-rule" | "tau" => self.tau_rule = Rule::new(v).map_err(|e| rename(e, "tau-rule"))?,
            "rho" => self.rho = Some(parse_field("rho", v)?),
            "static-m" => self.static_m = Some(parse_field("static-m", v)?),
            "symmetric-mode" => self.symmetric_mode = parse_field("symmetric-mode", v)?,
            "best-mode" => self.best_mode = Some(parse_field("best-mode", v)?),
            "p-die" => self.p_die = parse_field("p-die", v)?,
            "ageing-trigger" => self.ageing_trigger = parse_field("ageing-trigger", v)?,
            "constructive-rule" => {
                self.constructive_rule = match v.to_ascii_lowercase().as_str() {
                    "at-least-as-fit" | ">=" => ConstructiveRule::AtLeastAsFit,
                    "strictly-better" | ">" => ConstructiveRule::StrictlyBetter,
                    _ => return Err(Error::config("constructive-rule", format!("unknown rule {v:?}"))),
                }
            }
            "runs" => self.runs = parse_field("runs", v)?,
            "seed" => self.seed = parse_field("seed", v)?,
            "budget" => self.budget = Some(Rule::new(v).map_err(|e| rename(e, "budget"))?),
            "target" => self.target = Some(parse_field("target", v)?),
            "trace" => self.trace = parse_bool("trace", v)?,
            "out" => self.out = Some(PathBuf::from(v)),
            "format" => self.format = parse_field("format", v)?,
            other => return Err(Error::config(other, "unknown key")),
        }
        Ok(())
    }

    pub fn scheme_kind(&self) -> SchemeKind {
        self.scheme.unwrap_or(match self.algorithm {
            AlgorithmKind::IaHyp => SchemeKind::LinHd,
            AlgorithmKind::OptIaAgeing => SchemeKind::ExpoHd,
            AlgorithmKind::OptIaSymmetric => SchemeKind::SymmetricExpoHd,
            AlgorithmKind::StaticHyp | AlgorithmKind::Rls1 => SchemeKind::Static,
        })
    }

    fn uses_ageing(&self) -> bool {
        matches!(
            self.algorithm,
            AlgorithmKind::OptIaAgeing | AlgorithmKind::OptIaSymmetric
        )
    }

    /// Resolves rules and defaults for problem size `n`.
    pub fn plan(&self, n: usize) -> Result<SizePlan> {
        if n < 2 {
            return Err(Error::config("n", format!("every n must be at least 2, got {n}")));
        }
        let base = RuleVars::n(n);
        let k = if self.function == LandscapeKind::Cliff {
            let k = self.k_rule.eval_floor(&base).map_err(|e| rename(e, "k-rule"))? as usize;
            if k == 0 || k >= n {
                return Err(Error::config(
                    "k-rule",
                    format!("k = {k} must lie in [1, n) at n = {n}"),
                ));
            }
            Some(k)
        } else {
            None
        };
        let tau_real = self.tau_rule.eval(&base).map_err(|e| rename(e, "tau-rule"))?;
        let vars = RuleVars {
            n: n as f64,
            k: k.map(|k| k as f64),
            tau: Some(tau_real),
        };
        // age > τ and age > floor(τ) coincide for integer ages.
        let tau = if self.uses_ageing() {
            let t = self.tau_rule.eval_floor(&base).map_err(|e| rename(e, "tau-rule"))?;
            if t == 0 {
                return Err(Error::config("tau-rule", format!("τ rounds down to 0 at n = {n}")));
            }
            Some(t)
        } else {
            None
        };
        let budget_rule = self
            .budget
            .clone()
            .unwrap_or_else(|| default_budget_rule(self.function));
        let budget = budget_rule.eval_floor(&vars).map_err(|e| rename(e, "budget"))?;
        if budget < n as u64 {
            return Err(Error::config("budget", format!("budget {budget} is below n = {n}")));
        }

        let landscape = Landscape::new(self.function, n, k)?;
        let mut scheme = PotentialScheme::new(self.scheme_kind());
        scheme.symmetric_mode = self.symmetric_mode;
        scheme.rho = self.rho;
        scheme.static_m = self.static_m;
        let best_mode = self.best_mode.unwrap_or(match self.algorithm {
            AlgorithmKind::IaHyp | AlgorithmKind::StaticHyp => BestMode::KnownOptimum,
            _ => BestMode::BestSeen,
        });
        let algorithm = AlgorithmConfig {
            algorithm: self.algorithm,
            scheme,
            tau,
            p_die: self.p_die,
            best_mode,
            ageing_trigger: self.ageing_trigger,
            constructive_rule: self.constructive_rule,
            record_trace: self.trace,
        };
        algorithm.validate(&landscape)?;
        Ok(SizePlan {
            landscape,
            algorithm,
            target: self.target.unwrap_or_else(|| Target::default_for(self.function)),
            budget,
        })
    }

    /// Checks every field and returns the per-size plans.
    pub fn validate(&self) -> Result<Vec<SizePlan>> {
        if self.runs == 0 {
            return Err(Error::config("runs", "must be at least 1"));
        }
        if self.n.is_empty() {
            return Err(Error::config("n", "at least one problem size is required"));
        }
        if !(0.0..=1.0).contains(&self.p_die) {
            return Err(Error::config(
                "p-die",
                format!("must be a probability, got {}", self.p_die),
            ));
        }
        self.n.iter().map(|&n| self.plan(n)).collect()
    }
}

fn rename(e: Error, field: &str) -> Error {
    match e {
        Error::Config { reason, .. } => Error::config(field, reason),
        other => other,
    }
}

/// Seed of run `run` at problem size `n`.
pub fn run_seed(master: u64, n: usize, run: u64) -> u64 {
    derive_seed(master, ((n as u64) << 32) | run)
}

/// Runs every `(n, run)` pair and returns the records in that order.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    let plans = cfg.validate()?;
    let jobs: Vec<(usize, u64)> = (0..plans.len())
        .flat_map(|i| (0..cfg.runs).map(move |r| (i, r)))
        .collect();
    jobs.par_iter()
        .map(|&(i, run)| {
            let plan = &plans[i];
            let seed = run_seed(cfg.seed, plan.landscape.n(), run);
            let mut rec = run_until_target(&plan.algorithm, &plan.landscape, plan.target, plan.budget, seed)?;
            rec.run = run;
            Ok(rec)
        })
        .collect()
}

/// Runs the experiment and writes it to `cfg.out` in `cfg.format`.
pub fn run_and_write(cfg: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    let records = run_experiment(cfg)?;
    if let Some(path) = &cfg.out {
        let file = std::io::BufWriter::new(std::fs::File::create(path)?);
        match cfg.format {
            OutputFormat::Csv => write_csv(file, &records)?,
            OutputFormat::Jsonl => write_jsonl(file, &records)?,
        }
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ExperimentConfig {
        ExperimentConfig {
            runs: 2,
            seed: 7,
            ..ExperimentConfig::new(AlgorithmKind::IaHyp, LandscapeKind::OneMax, vec![8, 16])
        }
    }

    #[test]
    fn record_count_is_runs_times_sizes() {
        let recs = run_experiment(&small()).unwrap();
        assert_eq!(recs.len(), 4);
        let keys: Vec<_> = recs.iter().map(|r| (r.n, r.run)).collect();
        assert_eq!(keys, vec![(8, 0), (8, 1), (16, 0), (16, 1)]);
        assert!(recs.iter().all(|r| r.success && r.evaluations <= r.budget));
    }

    #[test]
    fn same_config_gives_identical_csv() {
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_csv(&mut a, &run_experiment(&small()).unwrap()).unwrap();
        write_csv(&mut b, &run_experiment(&small()).unwrap()).unwrap();
        assert_eq!(a, b);
        let mut other = small();
        other.seed = 8;
        let mut c = Vec::new();
        write_csv(&mut c, &run_experiment(&other).unwrap()).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn invalid_fields_are_named() {
        let field = |cfg: ExperimentConfig| match cfg.validate() {
            Err(Error::Config { field, .. }) => field,
            other => panic!("expected config error, got {other:?}"),
        };
        assert_eq!(field(ExperimentConfig { runs: 0, ..small() }), "runs");
        assert_eq!(
            field(ExperimentConfig {
                n: vec![8, 1],
                ..small()
            }),
            "n"
        );
        assert_eq!(field(ExperimentConfig { n: vec![], ..small() }), "n");
        assert_eq!(
            field(ExperimentConfig {
                budget: Some(Rule::new("n - 1").unwrap()),
                ..small()
            }),
            "budget"
        );
        assert_eq!(
            field(ExperimentConfig {
                function: LandscapeKind::Cliff,
                k_rule: Rule::new("0").unwrap(),
                ..small()
            }),
            "k-rule"
        );
        assert_eq!(
            field(ExperimentConfig {
                algorithm: AlgorithmKind::OptIaAgeing,
                tau_rule: Rule::new("0.5").unwrap(),
                ..small()
            }),
            "tau-rule"
        );
    }

    #[test]
    fn pairs_round_trip() {
        let cfg = ExperimentConfig::from_pairs([
            ("algorithm", "opt-ia"),
            ("function", "cliff"),
            ("n", "30,60"),
            ("runs", "3"),
            ("seed", "11"),
            ("k_rule", "floor(n/6)"),
        ])
        .unwrap();
        assert_eq!(cfg.algorithm, AlgorithmKind::OptIaAgeing);
        assert_eq!(cfg.scheme_kind(), SchemeKind::ExpoHd);
        let plans = cfg.validate().unwrap();
        assert_eq!(plans[0].landscape.k(), Some(5));
        assert_eq!(plans[1].algorithm.tau, Some(204));
        assert!(ExperimentConfig::from_pairs([("colour", "blue")]).is_err());
    }

    #[test]
    fn n_lists() {
        assert_eq!(parse_n_list("64,128").unwrap(), vec![64, 128]);
        assert_eq!(parse_n_list("[4, 5]").unwrap(), vec![4, 5]);
        assert_eq!(parse_n_list("4..=6").unwrap(), vec![4, 5, 6]);
        assert_eq!(parse_n_list("64..=512*2").unwrap(), vec![64, 128, 256, 512]);
        assert!(parse_n_list("").is_err());
        assert!(parse_n_list("x").is_err());
    }

    #[test]
    fn default_budgets() {
        let n = 64.0f64;
        let plan = small().plan(64).unwrap();
        assert_eq!(plan.budget, (40.0 * n * n * n.ln()).floor() as u64);
        let cliff = ExperimentConfig::new(AlgorithmKind::StaticHyp, LandscapeKind::Cliff, vec![30]);
        let plan = cliff.plan(30).unwrap();
        let n = 30.0f64;
        let tau = n.powf(1.3);
        let expected = 40.0 * (n.powf(3.5) / 36.0 + tau * n.sqrt() + n.powf(1.5) * n.ln());
        assert_eq!(plan.budget, expected.floor() as u64);
        assert_eq!(plan.algorithm.tau, None);
    }
}
