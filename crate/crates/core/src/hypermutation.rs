//! Hypermutation with mutation potential and stop at first constructive
//! mutation (FCM).
//!
//! Up to `M` distinct positions are drawn uniformly one after another and
//! flipped cumulatively. Every intermediate string is evaluated, and the
//! operator stops at the first one that is constructive with respect to the
//! parent. The parent's own fitness is known and never re-evaluated, so the
//! number of evaluations equals the number of flips performed.

use serde::{Deserialize, Serialize};

use crate::benchmarks::{Fitness, Landscape};
use crate::bitstring::{BitString, RandomStream};
use crate::potentials::PotentialValue;
use crate::{Error, Result};

/// When an intermediate mutant counts as constructive.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructiveRule {
    /// At least as fit as the parent.
    #[default]
    AtLeastAsFit,
    /// Strictly fitter than the parent.
    StrictlyBetter,
}

impl ConstructiveRule {
    #[inline]
    pub fn accepts(self, candidate: Fitness, parent: Fitness) -> bool {
        match self {
            ConstructiveRule::AtLeastAsFit => candidate >= parent,
            ConstructiveRule::StrictlyBetter => candidate > parent,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypermutationOutcome {
    pub offspring: BitString,
    pub fitness: Fitness,
    /// Equal to `stop_step`: one evaluation per flip.
    pub evaluations_used: usize,
    pub constructive: bool,
    /// Number of flips applied, in `[1, M]`.
    pub stop_step: usize,
}

/// Reusable hypermutation operator for strings of a fixed length.
///
/// Holds a permutation of `0..n` as scratch; a partial Fisher-Yates pass over
/// it yields the flip order. The buffer stays a permutation between calls,
/// and the drawn sequence is uniform whatever its current arrangement.
#[derive(Clone, Debug)]
pub struct Hypermutator {
    order: Vec<usize>,
    rule: ConstructiveRule,
}

impl Hypermutator {
    pub fn new(n: usize) -> Self {
        Hypermutator {
            order: (0..n).collect(),
            rule: ConstructiveRule::default(),
        }
    }

    pub fn with_rule(mut self, rule: ConstructiveRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn rule(&self) -> ConstructiveRule {
        self.rule
    }

    /// Mutates `parent` (of fitness `parent_fitness`) with potential `m`,
    /// calling `evaluate` once per flip.
    pub fn mutate<F>(
        &mut self,
        parent: &BitString,
        parent_fitness: Fitness,
        m: PotentialValue,
        rng: &mut RandomStream,
        mut evaluate: F,
    ) -> Result<HypermutationOutcome>
    where
        F: FnMut(&BitString) -> Fitness,
    {
        let n = parent.len();
        if n != self.order.len() {
            return Err(Error::Dimension {
                expected: self.order.len(),
                actual: n,
            });
        }
        let m = m.get();
        if m == 0 || m > n {
            return Err(Error::parameter(
                "m",
                format!("potential must lie in [1, {n}], got {m}"),
            ));
        }

        let mut y = parent.clone();
        let mut fitness = parent_fitness;
        for step in 0..m {
            let j = step + rng.index(n - step);
            self.order.swap(step, j);
            y.flip(self.order[step]);
            fitness = evaluate(&y);
            if self.rule.accepts(fitness, parent_fitness) {
                return Ok(HypermutationOutcome {
                    offspring: y,
                    fitness,
                    evaluations_used: step + 1,
                    constructive: true,
                    stop_step: step + 1,
                });
            }
        }
        Ok(HypermutationOutcome {
            offspring: y,
            fitness,
            evaluations_used: m,
            constructive: false,
            stop_step: m,
        })
    }
}

/// One FCM hypermutation of `parent` on `landscape`, constructive meaning at
/// least as fit as the parent.
pub fn fcm_hypermutate(
    parent: &BitString,
    m: PotentialValue,
    landscape: &Landscape,
    rng: &mut RandomStream,
) -> Result<HypermutationOutcome> {
    let parent_fitness = landscape.try_evaluate(parent)?;
    Hypermutator::new(parent.len()).mutate(parent, parent_fitness, m, rng, |x| landscape.evaluate(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitstring::hamming_distance;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn pv(m: usize, n: usize) -> PotentialValue {
        PotentialValue::new(m, n).unwrap()
    }

    #[test]
    fn first_flip_from_zero_string_is_constructive() {
        let om = Landscape::one_max(2).unwrap();
        let mut rng = RandomStream::new(3);
        for _ in 0..100 {
            let out = fcm_hypermutate(&bs("00"), pv(2, 2), &om, &mut rng).unwrap();
            assert!(out.constructive);
            assert_eq!(out.evaluations_used, 1);
            assert_eq!(out.fitness, Fitness::from_units(1));
        }
    }

    #[test]
    fn single_flip_from_01_splits_evenly() {
        let om = Landscape::one_max(2).unwrap();
        let mut rng = RandomStream::new(11);
        let trials = 20_000;
        let mut up = 0;
        for _ in 0..trials {
            let out = fcm_hypermutate(&bs("01"), pv(1, 2), &om, &mut rng).unwrap();
            assert_eq!(out.evaluations_used, 1);
            if out.offspring == bs("11") {
                assert!(out.constructive);
                up += 1;
            } else {
                assert_eq!(out.offspring, bs("00"));
                assert!(!out.constructive);
            }
        }
        let p = up as f64 / trials as f64;
        assert!((p - 0.5).abs() < 0.02, "p = {p}");
    }

    #[test]
    fn outcome_invariants_hold() {
        let lo = Landscape::leading_ones(12).unwrap();
        let mut rng = RandomStream::new(5);
        for _ in 0..2000 {
            let parent = rng.bitstring(12).unwrap();
            let m = 1 + rng.index(12);
            let out = fcm_hypermutate(&parent, pv(m, 12), &lo, &mut rng).unwrap();
            let h = hamming_distance(&parent, &out.offspring).unwrap();
            assert_eq!(h, out.stop_step);
            assert_eq!(out.evaluations_used, out.stop_step);
            assert!((1..=m).contains(&out.stop_step));
            assert_eq!(out.fitness, lo.evaluate(&out.offspring));
            if out.constructive {
                assert!(out.fitness >= lo.evaluate(&parent));
            } else {
                assert_eq!(out.stop_step, m);
            }
        }
    }

    #[test]
    fn full_potential_covers_every_index_once() {
        // On a landscape where nothing is ever constructive from 1^n (OneMax),
        // M = n flips each bit exactly once and lands on the complement.
        let om = Landscape::one_max(37).unwrap();
        let parent = BitString::ones(37).unwrap();
        let mut rng = RandomStream::new(8);
        let out = fcm_hypermutate(&parent, pv(37, 37), &om, &mut rng).unwrap();
        assert!(!out.constructive);
        assert_eq!(out.offspring, parent.complement());
        assert_eq!(out.evaluations_used, 37);
    }

    #[test]
    fn wasted_evaluations_equal_potential_on_failure() {
        let om = Landscape::one_max(20).unwrap();
        let parent = BitString::with_prefix_ones(20, 17).unwrap();
        let mut rng = RandomStream::new(21);
        let mut failures = 0;
        for _ in 0..5000 {
            let out = fcm_hypermutate(&parent, pv(3, 20), &om, &mut rng).unwrap();
            if !out.constructive {
                failures += 1;
                assert_eq!(out.evaluations_used, 3);
            }
        }
        assert!(failures > 0);
    }

    #[test]
    fn rejects_out_of_range_potential() {
        let mut h = Hypermutator::new(4);
        let mut rng = RandomStream::new(0);
        let x = bs("0000");
        let err = h
            .mutate(&x, Fitness::ZERO, PotentialValue::new(4, 4).unwrap(), &mut rng, |_| {
                Fitness::ZERO
            })
            .map(|_| ());
        assert!(err.is_ok());
        let mut h5 = Hypermutator::new(5);
        assert!(h5
            .mutate(&x, Fitness::ZERO, PotentialValue::new(4, 4).unwrap(), &mut rng, |_| {
                Fitness::ZERO
            })
            .is_err());
        assert!(PotentialValue::new(5, 4).is_err());
    }

    #[test]
    fn strict_rule_skips_neutral_mutants() {
        // LeadingOnes from 1000: flipping any suffix bit is neutral.
        let lo = Landscape::leading_ones(4).unwrap();
        let mut h = Hypermutator::new(4).with_rule(ConstructiveRule::StrictlyBetter);
        let mut rng = RandomStream::new(2);
        let parent = bs("1000");
        let pf = lo.evaluate(&parent);
        for _ in 0..200 {
            let out = h.mutate(&parent, pf, pv(4, 4), &mut rng, |x| lo.evaluate(x)).unwrap();
            if out.constructive {
                assert!(out.fitness > pf);
            }
        }
    }
}
