//! The single-individual optimisers and their run loop.
//!
//! Every algorithm is a step function over an explicit [`AlgorithmState`]
//! driven by an [`Engine`], which owns the evaluation counter. The counter
//! obeys
//!
//! ```text
//! total_evaluations = 1 (initial) + hypermutation evaluations + reinitialisations
//! ```
//!
//! after every iteration.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::benchmarks::{Fitness, GlobalOptima, Landscape, LandscapeKind};
use crate::bitstring::{BitString, RandomStream};
use crate::hypermutation::{ConstructiveRule, Hypermutator};
use crate::potentials::{PotentialInput, PotentialScheme, SchemeKind};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgorithmKind {
    /// (1+1) IA with an inversely proportional potential.
    #[serde(rename = "ia-hyp")]
    IaHyp,
    /// (1+1) Opt-IA: exponential-distance potential plus hybrid ageing.
    #[serde(rename = "opt-ia")]
    OptIaAgeing,
    /// (1+1) Opt-IA with the origin-based symmetric potential.
    #[serde(rename = "opt-ia-symmetric")]
    OptIaSymmetric,
    /// (1+1) IA with the static potential `M = n`.
    #[serde(rename = "static-hyp")]
    StaticHyp,
    /// Randomised local search flipping exactly one bit.
    #[serde(rename = "rls1")]
    Rls1,
}

impl AlgorithmKind {
    pub fn name(self) -> &'static str {
        match self {
            AlgorithmKind::IaHyp => "ia-hyp",
            AlgorithmKind::OptIaAgeing => "opt-ia",
            AlgorithmKind::OptIaSymmetric => "opt-ia-symmetric",
            AlgorithmKind::StaticHyp => "static-hyp",
            AlgorithmKind::Rls1 => "rls1",
        }
    }

    fn uses_ageing(self) -> bool {
        matches!(self, AlgorithmKind::OptIaAgeing | AlgorithmKind::OptIaSymmetric)
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "ia-hyp" | "iahyp" | "ia" => Ok(AlgorithmKind::IaHyp),
            "opt-ia" | "optia" | "opt-ia-ageing" => Ok(AlgorithmKind::OptIaAgeing),
            "opt-ia-symmetric" | "symmetric" | "optia-symmetric" => Ok(AlgorithmKind::OptIaSymmetric),
            "static-hyp" | "static" => Ok(AlgorithmKind::StaticHyp),
            "rls1" | "rls" => Ok(AlgorithmKind::Rls1),
            _ => Err(Error::config("algorithm", format!("unknown algorithm {s:?}"))),
        }
    }
}

/// What the potential treats as the best point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BestMode {
    /// Pinned to the landscape's designated global optimum.
    KnownOptimum,
    /// The best offspring seen so far.
    BestSeen,
}

impl FromStr for BestMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "known-optimum" | "known" => Ok(BestMode::KnownOptimum),
            "best-seen" | "seen" => Ok(BestMode::BestSeen),
            _ => Err(Error::config("best-mode", format!("unknown best mode {s:?}"))),
        }
    }
}

/// Age comparison that makes an individual eligible for removal.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AgeingTrigger {
    /// `age > τ`.
    #[default]
    Exceeds,
    /// `age ≥ τ`.
    Reaches,
}

impl FromStr for AgeingTrigger {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exceeds" | ">" => Ok(AgeingTrigger::Exceeds),
            "reaches" | ">=" => Ok(AgeingTrigger::Reaches),
            _ => Err(Error::config("ageing-trigger", format!("unknown ageing trigger {s:?}"))),
        }
    }
}

/// Stopping condition of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    /// Any global optimum has been evaluated.
    AnyGlobal,
    /// Every global optimum has been evaluated at least once.
    AllGlobals,
}

impl Target {
    /// Locating both peaks is what optimising TwoMax means here.
    pub fn default_for(kind: LandscapeKind) -> Self {
        match kind {
            LandscapeKind::TwoMax => Target::AllGlobals,
            _ => Target::AnyGlobal,
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "any-global" | "any" => Ok(Target::AnyGlobal),
            "all-globals" | "all" => Ok(Target::AllGlobals),
            _ => Err(Error::config("target", format!("unknown target {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmConfig {
    pub algorithm: AlgorithmKind,
    pub scheme: PotentialScheme,
    /// Ageing threshold; `None` disables ageing.
    pub tau: Option<u64>,
    pub p_die: f64,
    pub best_mode: BestMode,
    #[serde(default)]
    pub ageing_trigger: AgeingTrigger,
    #[serde(default)]
    pub constructive_rule: ConstructiveRule,
    /// Keep the per-improvement trace in the run record.
    #[serde(default)]
    pub record_trace: bool,
}

impl AlgorithmConfig {
    /// (1+1) IA with the optimum known in advance.
    pub fn ia_hyp(scheme: PotentialScheme) -> Self {
        AlgorithmConfig {
            algorithm: AlgorithmKind::IaHyp,
            scheme,
            tau: None,
            p_die: 0.5,
            best_mode: BestMode::KnownOptimum,
            ageing_trigger: AgeingTrigger::default(),
            constructive_rule: ConstructiveRule::default(),
            record_trace: false,
        }
    }

    pub fn opt_ia(tau: u64) -> Self {
        AlgorithmConfig {
            algorithm: AlgorithmKind::OptIaAgeing,
            scheme: PotentialScheme::expo_hd(),
            tau: Some(tau),
            best_mode: BestMode::BestSeen,
            ..Self::ia_hyp(PotentialScheme::expo_hd())
        }
    }

    pub fn opt_ia_symmetric(tau: u64, scheme: PotentialScheme) -> Self {
        AlgorithmConfig {
            algorithm: AlgorithmKind::OptIaSymmetric,
            scheme,
            tau: Some(tau),
            best_mode: BestMode::BestSeen,
            ..Self::ia_hyp(scheme)
        }
    }

    pub fn static_hyp() -> Self {
        AlgorithmConfig {
            algorithm: AlgorithmKind::StaticHyp,
            ..Self::ia_hyp(PotentialScheme::fixed())
        }
    }

    pub fn rls1() -> Self {
        AlgorithmConfig {
            algorithm: AlgorithmKind::Rls1,
            best_mode: BestMode::BestSeen,
            ..Self::ia_hyp(PotentialScheme::fixed())
        }
    }

    pub fn with_trace(mut self, on: bool) -> Self {
        self.record_trace = on;
        self
    }

    pub fn validate(&self, landscape: &Landscape) -> Result<()> {
        let n = landscape.n();
        self.scheme.validate(n)?;
        if self.tau == Some(0) {
            return Err(Error::config("tau", "ageing threshold must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.p_die) {
            return Err(Error::config(
                "p_die",
                format!("must be a probability, got {}", self.p_die),
            ));
        }
        let symmetric = self.scheme.kind == SchemeKind::SymmetricExpoHd;
        match self.algorithm {
            AlgorithmKind::OptIaSymmetric if !symmetric => {
                return Err(Error::config(
                    "scheme",
                    "the symmetric Opt-IA needs the symmetric scheme",
                ));
            }
            AlgorithmKind::IaHyp | AlgorithmKind::OptIaAgeing if symmetric => {
                return Err(Error::config(
                    "scheme",
                    "the symmetric scheme is only defined for opt-ia-symmetric",
                ));
            }
            _ => {}
        }
        if self.algorithm.uses_ageing()
            && self.best_mode == BestMode::KnownOptimum
            && matches!(landscape.kind(), LandscapeKind::TwoMax | LandscapeKind::Cliff)
        {
            return Err(Error::config(
                "best-mode",
                format!(
                    "known-optimum is not available for {} on {}",
                    self.algorithm,
                    landscape.kind()
                ),
            ));
        }
        Ok(())
    }

    #[inline]
    fn is_aged(&self, age: u64) -> bool {
        match (self.tau, self.ageing_trigger) {
            (None, _) => false,
            (Some(tau), AgeingTrigger::Exceeds) => age > tau,
            (Some(tau), AgeingTrigger::Reaches) => age >= tau,
        }
    }
}

/// The unit of evolution: genotype, its fitness, age and origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Individual {
    pub genotype: BitString,
    pub fitness: Fitness,
    pub age: u64,
    /// Ancestor recorded at the last ageing reset; only the symmetric
    /// algorithm reads it.
    pub origin: BitString,
}

impl Individual {
    fn fresh(genotype: BitString, fitness: Fitness) -> Self {
        Individual {
            origin: genotype.clone(),
            genotype,
            fitness,
            age: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgorithmState {
    pub current: Individual,
    pub best: BitString,
    pub best_fitness: Fitness,
    pub total_evaluations: u64,
    /// Evaluations spent inside mutation operators.
    pub mutation_evaluations: u64,
    pub reinitialisations: u64,
    pub iteration: u64,
}

/// One entry per iteration whose offspring strictly improved on its parent.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub iteration: u64,
    pub evaluations: u64,
    pub fitness: f64,
    /// Distance from the parent to the best point, as seen by the potential.
    pub distance_to_best: usize,
    pub potential: usize,
}

/// What happened during one iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepReport {
    pub potential: usize,
    pub evaluations: u64,
    pub improved: bool,
    /// Members left in the population after ageing, before selection and
    /// reinitialisation (2 without removals).
    pub survivors_after_ageing: usize,
    pub reinitialised: u64,
}

/// Counts evaluations and notices when the target is first met.
#[derive(Clone, Debug)]
struct Evaluator<'a> {
    landscape: &'a Landscape,
    optima: GlobalOptima,
    target: Target,
    count: u64,
    found: Vec<bool>,
    hit_at: Option<u64>,
}

impl<'a> Evaluator<'a> {
    fn new(landscape: &'a Landscape, target: Target) -> Self {
        let optima = landscape.global_optima();
        let found = vec![false; optima.count()];
        Evaluator {
            landscape,
            optima,
            target,
            count: 0,
            found,
            hit_at: None,
        }
    }

    #[inline]
    fn evaluate(&mut self, x: &BitString) -> Fitness {
        self.count += 1;
        let f = self.landscape.evaluate(x);
        if self.hit_at.is_none() && f == self.optima.max_fitness {
            if let Some(i) = self.optima.index_of(x) {
                self.found[i] = true;
                let done = match self.target {
                    Target::AnyGlobal => true,
                    Target::AllGlobals => self.found.iter().all(|&b| b),
                };
                if done {
                    self.hit_at = Some(self.count);
                }
            }
        }
        f
    }
}

/// Drives one run of a configured algorithm on a landscape.
#[derive(Clone, Debug)]
pub struct Engine<'a> {
    cfg: &'a AlgorithmConfig,
    evaluator: Evaluator<'a>,
    hypermutator: Hypermutator,
    state: AlgorithmState,
    trace: Vec<TracePoint>,
    final_potential: Option<usize>,
}

impl<'a> Engine<'a> {
    /// Draws and evaluates the initial individual.
    pub fn new(
        cfg: &'a AlgorithmConfig,
        landscape: &'a Landscape,
        target: Target,
        rng: &mut RandomStream,
    ) -> Result<Self> {
        cfg.validate(landscape)?;
        let n = landscape.n();
        let mut evaluator = Evaluator::new(landscape, target);
        let x = rng.bitstring(n)?;
        let fx = evaluator.evaluate(&x);
        let (best, best_fitness) = match cfg.best_mode {
            BestMode::KnownOptimum => (evaluator.optima.designated().clone(), evaluator.optima.max_fitness),
            BestMode::BestSeen => (x.clone(), fx),
        };
        Ok(Engine {
            cfg,
            hypermutator: Hypermutator::new(n).with_rule(cfg.constructive_rule),
            state: AlgorithmState {
                current: Individual::fresh(x, fx),
                best,
                best_fitness,
                total_evaluations: 1,
                mutation_evaluations: 0,
                reinitialisations: 0,
                iteration: 0,
            },
            evaluator,
            trace: Vec::new(),
            final_potential: None,
        })
    }

    pub fn state(&self) -> &AlgorithmState {
        &self.state
    }

    /// Evaluation count at which the target was first satisfied.
    pub fn target_hit_at(&self) -> Option<u64> {
        self.evaluator.hit_at
    }

    pub fn trace(&self) -> &[TracePoint] {
        &self.trace
    }

    /// Potential used in the most recent strictly improving iteration.
    pub fn final_potential(&self) -> Option<usize> {
        self.final_potential
    }

    /// Runs one iteration of the configured algorithm.
    pub fn step(&mut self, rng: &mut RandomStream) -> Result<StepReport> {
        match self.cfg.algorithm {
            AlgorithmKind::IaHyp => self.ia_hyp_step(rng),
            AlgorithmKind::OptIaAgeing => self.opt_ia_step(rng),
            AlgorithmKind::OptIaSymmetric => self.symmetric_opt_ia_step(rng),
            AlgorithmKind::StaticHyp | AlgorithmKind::Rls1 => self.baseline_step(rng),
        }
    }

    /// (1+1) IA: hypermutate, then keep the offspring if it is at least as fit.
    pub fn ia_hyp_step(&mut self, rng: &mut RandomStream) -> Result<StepReport> {
        let scheme = self.cfg.scheme;
        self.plain_step(&scheme, rng)
    }

    /// (1+1) Opt-IA with hybrid ageing.
    pub fn opt_ia_step(&mut self, rng: &mut RandomStream) -> Result<StepReport> {
        self.state.current.age += 1;
        let (m, distance) = self.potential(&self.cfg.scheme)?;
        let before = self.state.total_evaluations;
        let y = self.hypermutate(m, rng)?;
        let parent_fitness = self.state.current.fitness;
        let improved = y.fitness > parent_fitness;
        let offspring = Individual {
            age: if improved { 0 } else { self.state.current.age },
            origin: self.state.current.origin.clone(),
            ..y
        };
        if improved {
            self.record_improvement(offspring.fitness, distance, m);
        }
        if self.cfg.best_mode == BestMode::BestSeen && offspring.fitness >= self.state.best_fitness {
            self.state.best = offspring.genotype.clone();
            self.state.best_fitness = offspring.fitness;
        }

        let parent_dies = self.cfg.is_aged(self.state.current.age) && rng.bernoulli(self.cfg.p_die);
        let offspring_dies = self.cfg.is_aged(offspring.age) && rng.bernoulli(self.cfg.p_die);
        let survivors = 2 - parent_dies as usize - offspring_dies as usize;
        let mut reinitialised = 0;
        match (parent_dies, offspring_dies) {
            (false, false) => {
                // Ties go to the offspring.
                if offspring.fitness >= self.state.current.fitness {
                    self.state.current = offspring;
                }
            }
            (true, false) => self.state.current = offspring,
            (false, true) => {}
            (true, true) => {
                self.state.current = self.fresh_individual(rng)?;
                reinitialised = 1;
            }
        }
        self.state.iteration += 1;
        Ok(StepReport {
            potential: m,
            evaluations: self.state.total_evaluations - before,
            improved,
            survivors_after_ageing: survivors,
            reinitialised,
        })
    }

    /// (1+1) Opt-IA with the symmetric, origin-based potential.
    ///
    /// Removed members are replaced by fresh uniform individuals, after which
    /// both members take their own genotype as origin.
    pub fn symmetric_opt_ia_step(&mut self, rng: &mut RandomStream) -> Result<StepReport> {
        self.state.current.age += 1;
        let (m, distance) = self.potential(&self.cfg.scheme)?;
        let before = self.state.total_evaluations;
        let y = self.hypermutate(m, rng)?;
        let parent = self.state.current.clone();
        let improved = y.fitness > parent.fitness;
        let mut offspring = Individual {
            age: parent.age,
            origin: parent.origin.clone(),
            ..y
        };
        if improved {
            offspring.age = 0;
            self.record_improvement(offspring.fitness, distance, m);
            if self.cfg.best_mode == BestMode::BestSeen && offspring.fitness >= self.state.best_fitness {
                self.state.best = offspring.genotype.clone();
                self.state.best_fitness = offspring.fitness;
            }
        }

        let mut pair = [parent, offspring];
        let mut reinitialised = 0;
        for i in 0..2 {
            if self.cfg.is_aged(pair[i].age) && rng.bernoulli(self.cfg.p_die) {
                pair[i] = self.fresh_individual(rng)?;
                reinitialised += 1;
                for w in pair.iter_mut() {
                    w.origin = w.genotype.clone();
                }
            }
        }
        let [parent, offspring] = pair;
        self.state.current = if offspring.fitness >= parent.fitness {
            offspring
        } else {
            parent
        };
        self.state.iteration += 1;
        Ok(StepReport {
            potential: m,
            evaluations: self.state.total_evaluations - before,
            improved,
            survivors_after_ageing: 2 - reinitialised as usize,
            reinitialised,
        })
    }

    /// Static hypermutation (`M = n` unless the scheme fixes another value)
    /// or single-bit-flip local search.
    pub fn baseline_step(&mut self, rng: &mut RandomStream) -> Result<StepReport> {
        match self.cfg.algorithm {
            AlgorithmKind::Rls1 => self.rls1_step(rng),
            _ => {
                let scheme = match self.cfg.scheme.kind {
                    SchemeKind::Static => self.cfg.scheme,
                    _ => PotentialScheme::fixed(),
                };
                self.plain_step(&scheme, rng)
            }
        }
    }

    fn plain_step(&mut self, scheme: &PotentialScheme, rng: &mut RandomStream) -> Result<StepReport> {
        self.state.current.age += 1;
        let (m, distance) = self.potential(scheme)?;
        let before = self.state.total_evaluations;
        let y = self.hypermutate(m, rng)?;
        let improved = y.fitness > self.state.current.fitness;
        if improved {
            self.record_improvement(y.fitness, distance, m);
        }
        self.accept(y, improved);
        self.state.iteration += 1;
        Ok(StepReport {
            potential: m,
            evaluations: self.state.total_evaluations - before,
            improved,
            survivors_after_ageing: 1,
            reinitialised: 0,
        })
    }

    fn rls1_step(&mut self, rng: &mut RandomStream) -> Result<StepReport> {
        self.state.current.age += 1;
        let distance = self.state.current.genotype.distance_unchecked(&self.state.best);
        let mut genotype = self.state.current.genotype.clone();
        genotype.flip(rng.index(genotype.len()));
        let fitness = self.evaluator.evaluate(&genotype);
        self.state.total_evaluations += 1;
        self.state.mutation_evaluations += 1;
        let improved = fitness > self.state.current.fitness;
        if improved {
            self.record_improvement(fitness, distance, 1);
        }
        let y = Individual {
            genotype,
            fitness,
            age: 0,
            origin: self.state.current.origin.clone(),
        };
        self.accept(y, improved);
        self.state.iteration += 1;
        Ok(StepReport {
            potential: 1,
            evaluations: 1,
            improved,
            survivors_after_ageing: 1,
            reinitialised: 0,
        })
    }

    /// Selection of the non-ageing algorithms: `x := y` iff `f(y) ≥ f(x)`.
    fn accept(&mut self, y: Individual, improved: bool) {
        if self.cfg.best_mode == BestMode::BestSeen && y.fitness >= self.state.best_fitness {
            self.state.best = y.genotype.clone();
            self.state.best_fitness = y.fitness;
        }
        if y.fitness >= self.state.current.fitness {
            let age = if improved { 0 } else { self.state.current.age };
            self.state.current = Individual { age, ..y };
        }
    }

    fn potential(&self, scheme: &PotentialScheme) -> Result<(usize, usize)> {
        let cur = &self.state.current;
        let m = scheme.potential(&PotentialInput {
            x: &cur.genotype,
            x_fitness: cur.fitness,
            best: &self.state.best,
            best_fitness: self.state.best_fitness,
            origin: &cur.origin,
        })?;
        Ok((m.get(), cur.genotype.distance_unchecked(&self.state.best)))
    }

    fn hypermutate(&mut self, m: usize, rng: &mut RandomStream) -> Result<Individual> {
        let Engine {
            hypermutator,
            evaluator,
            state,
            ..
        } = self;
        let n = state.current.genotype.len();
        let m = crate::potentials::PotentialValue::new(m, n)?;
        let out = hypermutator.mutate(&state.current.genotype, state.current.fitness, m, rng, |x| {
            evaluator.evaluate(x)
        })?;
        let used = out.evaluations_used as u64;
        state.total_evaluations += used;
        state.mutation_evaluations += used;
        Ok(Individual {
            genotype: out.offspring,
            fitness: out.fitness,
            age: 0,
            origin: state.current.origin.clone(),
        })
    }

    fn fresh_individual(&mut self, rng: &mut RandomStream) -> Result<Individual> {
        let x = rng.bitstring(self.evaluator.landscape.n())?;
        let fx = self.evaluator.evaluate(&x);
        self.state.total_evaluations += 1;
        self.state.reinitialisations += 1;
        Ok(Individual::fresh(x, fx))
    }

    fn record_improvement(&mut self, fitness: Fitness, distance: usize, m: usize) {
        self.final_potential = Some(m);
        if self.cfg.record_trace {
            self.trace.push(TracePoint {
                iteration: self.state.iteration,
                evaluations: self.state.total_evaluations,
                fitness: fitness.value(),
                distance_to_best: distance,
                potential: m,
            });
        }
    }
}

/// Outcome of one seeded run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub algorithm: AlgorithmKind,
    pub scheme: SchemeKind,
    pub function: LandscapeKind,
    pub n: usize,
    pub k: Option<usize>,
    pub tau: Option<u64>,
    pub target: Target,
    pub budget: u64,
    /// Index of the run within its problem size.
    pub run: u64,
    pub seed: u64,
    pub generator: String,
    pub success: bool,
    /// Evaluations until the target was met, or the budget if censored.
    pub evaluations: u64,
    pub iterations: u64,
    pub reinits: u64,
    pub final_potential: Option<usize>,
    pub best_fitness: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TracePoint>,
}

/// Iterates until the target is met or `budget` evaluations have been spent.
///
/// A budget overrun is not an error: the record comes back censored with
/// `evaluations = budget`.
pub fn run_until_target(
    cfg: &AlgorithmConfig,
    landscape: &Landscape,
    target: Target,
    budget: u64,
    seed: u64,
) -> Result<RunRecord> {
    if budget == 0 {
        return Err(Error::config("budget", "must be at least 1"));
    }
    let mut rng = RandomStream::new(seed);
    let mut engine = Engine::new(cfg, landscape, target, &mut rng)?;
    while engine.target_hit_at().is_none() && engine.state().total_evaluations < budget {
        engine.step(&mut rng)?;
    }
    let hit = engine.target_hit_at().filter(|&e| e <= budget);
    let state = engine.state();
    Ok(RunRecord {
        algorithm: cfg.algorithm,
        scheme: cfg.scheme.kind,
        function: landscape.kind(),
        n: landscape.n(),
        k: landscape.k(),
        tau: cfg.tau,
        target,
        budget,
        run: 0,
        seed,
        generator: RandomStream::GENERATOR.to_string(),
        success: hit.is_some(),
        evaluations: hit.unwrap_or(budget),
        iterations: state.iteration,
        reinits: state.reinitialisations,
        final_potential: engine.final_potential(),
        best_fitness: state.best_fitness.value(),
        trace: engine.trace().to_vec(),
    })
}
