//! Exact brute-force references for the stochastic operators.
//!
//! Everything here enumerates and counts; results are exact rationals.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::benchmarks::{Fitness, Landscape};
use crate::bitstring::BitString;
use crate::potentials::{m_lin_hd, PotentialInput, PotentialScheme, PotentialValue, SchemeKind};
use crate::{Error, Result};

/// Largest `p + q` the ballot enumeration accepts.
pub const BALLOT_MAX_VOTES: u32 = 20;
/// Largest problem size the FCM enumeration accepts.
pub const FCM_MAX_N: usize = 12;
/// Largest number of ordered flip sequences the FCM enumeration will walk.
pub const FCM_MAX_SEQUENCES: u64 = 1_000_000;

/// A two-candidate count with `p > q` votes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BallotQuery {
    p: u32,
    q: u32,
}

impl BallotQuery {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if p <= q {
            return Err(Error::parameter("p", format!("need p > q, got p = {p}, q = {q}")));
        }
        if p + q > BALLOT_MAX_VOTES {
            return Err(Error::EnumerationBound(format!(
                "p + q = {} exceeds {BALLOT_MAX_VOTES}",
                p + q
            )));
        }
        Ok(BallotQuery { p, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// The closed form `(p − q)/(p + q)`.
    pub fn closed_form(&self) -> Ratio<u64> {
        Ratio::new((self.p - self.q) as u64, (self.p + self.q) as u64)
    }
}

/// Probability that P stays strictly ahead of Q throughout the count,
/// by enumerating every distinguishable counting order.
pub fn ballot_probability_exact(b: BallotQuery) -> Ratio<u64> {
    let total_votes = b.p + b.q;
    let mut orders = 0u64;
    let mut favourable = 0u64;
    // Bit j set means the j-th ballot counted is for Q.
    for mask in 0u32..(1u32 << total_votes) {
        if mask.count_ones() != b.q {
            continue;
        }
        orders += 1;
        let mut lead = 0i32;
        let always_ahead = (0..total_votes).all(|j| {
            lead += if mask >> j & 1 == 1 { -1 } else { 1 };
            lead > 0
        });
        if always_ahead {
            favourable += 1;
        }
    }
    Ratio::new(favourable, orders)
}

/// One possible result of an FCM hypermutation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FcmOutcome {
    pub offspring: BitString,
    pub evaluations_used: usize,
    pub constructive: bool,
}

/// Exact distribution over FCM outcomes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FcmDistribution {
    outcomes: BTreeMap<FcmOutcome, Ratio<u64>>,
}

impl FcmDistribution {
    pub fn outcomes(&self) -> impl Iterator<Item = (&FcmOutcome, &Ratio<u64>)> {
        self.outcomes.iter()
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn probability_of(&self, outcome: &FcmOutcome) -> Ratio<u64> {
        self.outcomes
            .get(outcome)
            .copied()
            .unwrap_or_else(|| Ratio::from_integer(0))
    }

    pub fn total(&self) -> Ratio<u64> {
        self.outcomes.values().fold(Ratio::from_integer(0), |acc, p| acc + p)
    }

    /// Probability that some prefix of the flip sequence is constructive.
    pub fn constructive_probability(&self) -> Ratio<u64> {
        self.sum_where(|o| o.constructive)
    }

    /// Probability that the very first flip is already constructive.
    pub fn first_step_constructive(&self) -> Ratio<u64> {
        self.sum_where(|o| o.constructive && o.evaluations_used == 1)
    }

    fn sum_where(&self, pred: impl Fn(&FcmOutcome) -> bool) -> Ratio<u64> {
        self.outcomes
            .iter()
            .filter(|(o, _)| pred(o))
            .fold(Ratio::from_integer(0), |acc, (_, p)| acc + p)
    }
}

fn falling_factorial(n: u64, m: u64) -> u64 {
    (0..m).fold(1u64, |acc, i| acc.saturating_mul(n - i))
}

/// Exact outcome distribution of one FCM hypermutation of `parent` with
/// potential `m`, constructive meaning at least as fit as the parent.
///
/// Walks all `n·(n−1)···(n−m+1)` ordered sequences of distinct positions,
/// each equally likely, applies the stopping rule to every one of them and
/// counts where they land.
pub fn fcm_outcome_distribution(
    parent: &BitString,
    m: PotentialValue,
    landscape: &Landscape,
) -> Result<FcmDistribution> {
    let n = parent.len();
    let m = m.get();
    if n > FCM_MAX_N {
        return Err(Error::EnumerationBound(format!("n = {n} exceeds {FCM_MAX_N}")));
    }
    if m == 0 || m > n {
        return Err(Error::parameter(
            "m",
            format!("potential must lie in [1, {n}], got {m}"),
        ));
    }
    let sequences = falling_factorial(n as u64, m as u64);
    if sequences > FCM_MAX_SEQUENCES {
        return Err(Error::EnumerationBound(format!(
            "{sequences} flip orders exceed {FCM_MAX_SEQUENCES}"
        )));
    }
    let parent_bits: Vec<bool> = parent.iter().collect();
    let parent_fitness = landscape.try_evaluate(parent)?;

    let mut counts: BTreeMap<FcmOutcome, u64> = BTreeMap::new();
    let mut sequence = Vec::with_capacity(m);
    let mut used = vec![false; n];
    let mut visit = |seq: &[usize]| -> Result<()> {
        let mut bits = parent_bits.clone();
        let mut outcome = None;
        for (step, &pos) in seq.iter().enumerate() {
            bits[pos] = !bits[pos];
            let y = BitString::from_bits(&bits)?;
            let fy = landscape.evaluate(&y);
            if fy >= parent_fitness {
                outcome = Some(FcmOutcome {
                    offspring: y,
                    evaluations_used: step + 1,
                    constructive: true,
                });
                break;
            }
        }
        let outcome = match outcome {
            Some(o) => o,
            None => FcmOutcome {
                offspring: BitString::from_bits(&bits)?,
                evaluations_used: seq.len(),
                constructive: false,
            },
        };
        *counts.entry(outcome).or_insert(0) += 1;
        Ok(())
    };
    enumerate_sequences(n, m, &mut sequence, &mut used, &mut visit)?;

    let outcomes = counts.into_iter().map(|(o, c)| (o, Ratio::new(c, sequences))).collect();
    Ok(FcmDistribution { outcomes })
}

fn enumerate_sequences<F>(n: usize, m: usize, seq: &mut Vec<usize>, used: &mut [bool], visit: &mut F) -> Result<()>
where
    F: FnMut(&[usize]) -> Result<()>,
{
    if seq.len() == m {
        return visit(seq);
    }
    for pos in 0..n {
        if !used[pos] {
            used[pos] = true;
            seq.push(pos);
            enumerate_sequences(n, m, seq, used, visit)?;
            seq.pop();
            used[pos] = false;
        }
    }
    Ok(())
}

/// Exact probability that an FCM hypermutation with the linear distance
/// potential improves a OneMax parent with `i` zeros, next to the
/// ballot-derived bound `2i/n`.
///
/// The parent is `1^(n−i) 0^i`; by symmetry of OneMax the position of the
/// zeros does not matter.
pub fn improvement_probability_bound_check(n: usize, i: usize) -> Result<(Ratio<u64>, Ratio<u64>)> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    if 2 * i > n {
        return Err(Error::parameter("i", format!("need i <= n/2, got i = {i}, n = {n}")));
    }
    let landscape = Landscape::one_max(n)?;
    let parent = BitString::with_prefix_ones(n, n - i)?;
    let optimum = BitString::ones(n)?;
    let m = m_lin_hd(&parent, &optimum)?;
    let dist = fcm_outcome_distribution(&parent, m, &landscape)?;
    let bound = Ratio::new(2 * i as u64, n as u64);
    Ok((dist.constructive_probability(), bound))
}

/// Largest `n` accepted by [`ia_one_max_expected_evaluations`].
pub const RUNTIME_MAX_N: usize = 1 << 14;

/// Expected number of evaluations the (1+1) IA with the optimum known needs
/// on OneMax, from a uniform initial string, computed without sampling.
///
/// On OneMax a hypermutation only sees how many 0-bits and 1-bits it has
/// flipped so far, so each iteration is a walk on `(zeros flipped, ones
/// flipped)` whose law is computed exactly step by step. The search state is
/// the number `H` of 0-bits, which never increases, and the expected time
/// from `H` follows from the times from the states below it. Probabilities
/// are carried as `f64`.
pub fn ia_one_max_expected_evaluations(n: usize, scheme: &PotentialScheme) -> Result<f64> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    if n > RUNTIME_MAX_N {
        return Err(Error::EnumerationBound(format!("n = {n} exceeds {RUNTIME_MAX_N}")));
    }
    if scheme.kind == SchemeKind::SymmetricExpoHd {
        return Err(Error::parameter(
            "scheme",
            "the symmetric scheme needs an origin and ageing",
        ));
    }
    scheme.validate(n)?;
    let best = BitString::ones(n)?;
    let origin = BitString::zeros(n)?;
    let mut from = vec![0.0f64; n + 1];
    for h in 1..=n {
        let x = BitString::with_prefix_ones(n, n - h)?;
        let m = scheme
            .potential(&PotentialInput {
                x: &x,
                x_fitness: Fitness::from_units((n - h) as i64),
                best: &best,
                best_fitness: Fitness::from_units(n as i64),
                origin: &origin,
            })?
            .get();
        // alive[a]: still running after `s` flips, `a` of them on 0-bits.
        let mut alive = vec![0.0f64; m + 1];
        alive[0] = 1.0;
        let mut landed = vec![0.0f64; n + 1];
        let mut cost = 0.0;
        for s in 0..m {
            cost += alive.iter().sum::<f64>();
            let mut next = vec![0.0f64; m + 1];
            for (a, &p) in alive.iter().enumerate().take(s + 1) {
                if p == 0.0 {
                    continue;
                }
                let b = s - a;
                let p_zero = (h - a) as f64 / (n - s) as f64;
                // A flipped 0-bit gains one, a flipped 1-bit loses one; the
                // walk stops once gains catch up with losses.
                if a + 1 >= b {
                    landed[h + b - (a + 1)] += p * p_zero;
                } else {
                    next[a + 1] += p * p_zero;
                }
                if a > b {
                    landed[h + b + 1 - a] += p * (1.0 - p_zero);
                } else {
                    next[a] += p * (1.0 - p_zero);
                }
            }
            alive = next;
        }
        let stay = landed[h] + alive.iter().sum::<f64>();
        let onward: f64 = (0..h).map(|j| landed[j] * from[j]).sum();
        from[h] = (cost + onward) / (1.0 - stay);
    }
    let ln2n = n as f64 * std::f64::consts::LN_2;
    let mut ln_choose = 0.0f64;
    let mut total = 0.0;
    for (h, t) in from.iter().enumerate() {
        if h > 0 {
            ln_choose += ((n - h + 1) as f64 / h as f64).ln();
        }
        total += (ln_choose - ln2n).exp() * t;
    }
    Ok(1.0 + total)
}

/// Result of one self-check in [`run_suite`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn all_strings(n: usize) -> Result<Vec<BitString>> {
    (0u32..1 << n)
        .map(|mask| BitString::from_bits(&(0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>()))
        .collect()
}

/// Checks the stochastic operators against the exact references.
///
/// Runs in a few seconds: the ballot identity for `p + q <= 14`, the FCM
/// enumeration's normalisation and first-step law, the improvement bound,
/// and sampled hypermutation against the enumeration at `n = 4`.
pub fn run_suite(seed: u64) -> Result<Vec<SuiteCheck>> {
    use crate::benchmarks::LandscapeKind;
    use crate::bitstring::RandomStream;
    use crate::hypermutation::Hypermutator;

    let mut checks = Vec::new();

    let mut bad = Vec::new();
    let mut pairs = 0;
    for total in 1..=14u32 {
        for q in 0..total {
            let p = total - q;
            if p <= q {
                continue;
            }
            let b = BallotQuery::new(p, q)?;
            pairs += 1;
            if ballot_probability_exact(b) != b.closed_form() {
                bad.push(format!("({p}, {q})"));
            }
        }
    }
    checks.push(SuiteCheck {
        name: "ballot",
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{pairs} pairs exact")
        } else {
            format!("mismatch at {}", bad.join(" "))
        },
    });

    let mut bad = Vec::new();
    let mut cases = 0;
    for n in 4..=6usize {
        let om = Landscape::one_max(n)?;
        for parent in all_strings(n)? {
            for m in 1..=n {
                let d = fcm_outcome_distribution(&parent, PotentialValue::new(m, n)?, &om)?;
                cases += 1;
                let zeros = (n - parent.count_ones()) as u64;
                if d.total() != Ratio::from_integer(1) || d.first_step_constructive() != Ratio::new(zeros, n as u64) {
                    bad.push(format!("{parent}/M={m}"));
                }
            }
        }
    }
    checks.push(SuiteCheck {
        name: "fcm enumeration",
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{cases} cases sum to 1 with first-step i/n")
        } else {
            format!("mismatch at {}", bad.join(" "))
        },
    });

    let mut bad = Vec::new();
    for n in 2..=10usize {
        for i in 1..=n / 2 {
            let (exact, bound) = improvement_probability_bound_check(n, i)?;
            if exact > bound {
                bad.push(format!("n={n} i={i}"));
            }
        }
    }
    checks.push(SuiteCheck {
        name: "improvement bound",
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            "2i/n holds for n <= 10".into()
        } else {
            format!("violated at {}", bad.join(" "))
        },
    });

    const SAMPLES: u32 = 100_000;
    let n = 4;
    let mut worst = 0.0f64;
    let mut stream = 0;
    for kind in [LandscapeKind::OneMax, LandscapeKind::LeadingOnes] {
        let landscape = Landscape::new(kind, n, None)?;
        for parent in all_strings(n)? {
            let pf = landscape.evaluate(&parent);
            for m in 1..=n {
                let pv = PotentialValue::new(m, n)?;
                let exact = fcm_outcome_distribution(&parent, pv, &landscape)?;
                let mut rng = RandomStream::for_stream(seed, stream);
                stream += 1;
                let mut hm = Hypermutator::new(n);
                let mut counts: BTreeMap<FcmOutcome, u32> = BTreeMap::new();
                for _ in 0..SAMPLES {
                    let out = hm.mutate(&parent, pf, pv, &mut rng, |x| landscape.evaluate(x))?;
                    *counts
                        .entry(FcmOutcome {
                            offspring: out.offspring,
                            evaluations_used: out.evaluations_used,
                            constructive: out.constructive,
                        })
                        .or_insert(0) += 1;
                }
                let mut tv = 0.0;
                for (o, p) in exact.outcomes() {
                    let q = counts.remove(o).unwrap_or(0) as f64 / SAMPLES as f64;
                    tv += (*p.numer() as f64 / *p.denom() as f64 - q).abs();
                }
                tv += counts.values().map(|&c| c as f64 / SAMPLES as f64).sum::<f64>();
                worst = worst.max(tv / 2.0);
            }
        }
    }
    checks.push(SuiteCheck {
        name: "fcm sampling",
        passed: worst < 0.01,
        detail: format!("max total variation {worst:.5} at n = {n}"),
    });
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn ballot_examples() {
        assert_eq!(
            ballot_probability_exact(BallotQuery::new(2, 1).unwrap()),
            Ratio::new(1, 3)
        );
        assert_eq!(
            ballot_probability_exact(BallotQuery::new(5, 3).unwrap()),
            Ratio::new(1, 4)
        );
        assert_eq!(
            ballot_probability_exact(BallotQuery::new(1, 0).unwrap()),
            Ratio::from_integer(1)
        );
    }

    #[test]
    fn ballot_rejects_bad_queries() {
        assert!(matches!(BallotQuery::new(3, 3), Err(Error::Parameter { .. })));
        assert!(matches!(BallotQuery::new(2, 5), Err(Error::Parameter { .. })));
        assert!(matches!(BallotQuery::new(15, 6), Err(Error::EnumerationBound(_))));
        assert!(BallotQuery::new(20, 0).is_ok());
    }

    #[test]
    fn fcm_oracle_single_flip_from_01() {
        let om = Landscape::one_max(2).unwrap();
        let d = fcm_outcome_distribution(&bs("01"), PotentialValue::new(1, 2).unwrap(), &om).unwrap();
        assert_eq!(d.len(), 2);
        let up = FcmOutcome {
            offspring: bs("11"),
            evaluations_used: 1,
            constructive: true,
        };
        let down = FcmOutcome {
            offspring: bs("00"),
            evaluations_used: 1,
            constructive: false,
        };
        assert_eq!(d.probability_of(&up), Ratio::new(1, 2));
        assert_eq!(d.probability_of(&down), Ratio::new(1, 2));
    }

    #[test]
    fn fcm_oracle_zero_string_always_improves_first() {
        let om = Landscape::one_max(5).unwrap();
        for m in 1..=5 {
            let d = fcm_outcome_distribution(&BitString::zeros(5).unwrap(), PotentialValue::new(m, 5).unwrap(), &om)
                .unwrap();
            assert_eq!(d.first_step_constructive(), Ratio::from_integer(1));
            assert_eq!(d.total(), Ratio::from_integer(1));
        }
    }

    #[test]
    fn fcm_oracle_first_step_is_i_over_n() {
        for n in 2..=7usize {
            let om = Landscape::one_max(n).unwrap();
            for zeros in 0..=n {
                let parent = BitString::with_prefix_ones(n, n - zeros).unwrap();
                for m in 1..=n.min(4) {
                    let d = fcm_outcome_distribution(&parent, PotentialValue::new(m, n).unwrap(), &om).unwrap();
                    assert_eq!(d.first_step_constructive(), Ratio::new(zeros as u64, n as u64));
                    assert_eq!(d.total(), Ratio::from_integer(1));
                }
            }
        }
    }

    #[test]
    fn fcm_oracle_enforces_bounds() {
        let om = Landscape::one_max(13).unwrap();
        let x = BitString::zeros(13).unwrap();
        assert!(matches!(
            fcm_outcome_distribution(&x, PotentialValue::new(2, 13).unwrap(), &om),
            Err(Error::EnumerationBound(_))
        ));
        let om = Landscape::one_max(12).unwrap();
        let x = BitString::zeros(12).unwrap();
        assert!(matches!(
            fcm_outcome_distribution(&x, PotentialValue::new(12, 12).unwrap(), &om),
            Err(Error::EnumerationBound(_))
        ));
    }

    #[test]
    fn improvement_bound_examples() {
        let (exact, bound) = improvement_probability_bound_check(8, 1).unwrap();
        assert_eq!(bound, Ratio::new(1, 4));
        assert!(exact <= bound);
        // One zero, M = 1: only flipping that zero helps.
        assert_eq!(exact, Ratio::new(1, 8));

        let (exact, bound) = improvement_probability_bound_check(8, 4).unwrap();
        assert_eq!(bound, Ratio::from_integer(1));
        assert!(exact <= bound);

        let (exact, bound) = improvement_probability_bound_check(6, 2).unwrap();
        assert_eq!(bound, Ratio::new(2, 3));
        // By hand, parent 111100 with M = 2: a 0→1 first flip (2/6), or a
        // 1→0 flip followed by a 0→1 flip back to equal fitness (4/6 · 2/5).
        assert_eq!(exact, IMPROVEMENT_N6_I2);
        assert!(improvement_probability_bound_check(6, 4).is_err());
    }

    /// `2/6 + 4/6 · 2/5` for `n = 6, i = 2` (M = 2).
    const IMPROVEMENT_N6_I2: Ratio<u64> = Ratio::new_raw(3, 5);

    #[test]
    fn improvement_bound_holds_up_to_twelve() {
        for n in 1..=12usize {
            for i in 0..=n / 2 {
                let (exact, bound) = improvement_probability_bound_check(n, i).unwrap();
                assert!(exact <= bound, "n={n} i={i}: {exact} > {bound}");
            }
        }
    }

    #[test]
    fn expected_runtime_single_bit() {
        // Half the starts are already optimal, the other half need one flip.
        let t = ia_one_max_expected_evaluations(1, &PotentialScheme::lin_hd()).unwrap();
        assert!((t - 1.5).abs() < 1e-12);
    }

    #[test]
    fn expected_runtime_matches_simulation() {
        use crate::algorithms::{run_until_target, AlgorithmConfig, Target};
        let n = 24;
        let om = Landscape::one_max(n).unwrap();
        for scheme in [
            PotentialScheme::lin_hd(),
            PotentialScheme::expo_hd(),
            PotentialScheme::expo_f(),
            PotentialScheme::fixed(),
        ] {
            let exact = ia_one_max_expected_evaluations(n, &scheme).unwrap();
            let cfg = AlgorithmConfig::ia_hyp(scheme);
            let runs = 4000;
            let samples: Vec<f64> = (0..runs)
                .map(|s| {
                    run_until_target(&cfg, &om, Target::AnyGlobal, u64::MAX, 1000 + s)
                        .unwrap()
                        .evaluations as f64
                })
                .collect();
            let mean = samples.iter().sum::<f64>() / runs as f64;
            let sd = (samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (runs - 1) as f64).sqrt();
            let se = sd / (runs as f64).sqrt();
            assert!(
                (mean - exact).abs() < 4.0 * se,
                "{scheme}: simulated {mean} vs exact {exact} (se {se})"
            );
        }
    }

    #[test]
    fn expected_runtime_rejects_symmetric() {
        let s = PotentialScheme::symmetric(crate::potentials::SymmetricMode::ProofConsistent);
        assert!(ia_one_max_expected_evaluations(8, &s).is_err());
        assert!(ia_one_max_expected_evaluations(0, &PotentialScheme::lin_hd()).is_err());
    }

    #[test]
    fn suite_passes() {
        let checks = run_suite(1).unwrap();
        assert_eq!(checks.len(), 4);
        for c in checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
