//! Ready-made experiment configurations for the standard comparisons.

use crate::algorithms::{AlgorithmKind, Target};
use crate::benchmarks::LandscapeKind;
use crate::harness::{ExperimentConfig, Rule};
use crate::potentials::{SchemeKind, SymmetricMode};

pub const ONE_MAX_SIZES: [usize; 4] = [64, 128, 256, 512];
pub const LEADING_ONES_SIZES: [usize; 3] = [32, 64, 128];
pub const TWO_MAX_SIZES: [usize; 3] = [32, 64, 128];
pub const CLIFF_SIZES: [usize; 2] = [30, 60];
pub const RUNS: u64 = 50;

/// (1+1) IA with `scheme` on OneMax, optimum known.
pub fn one_max_scaling(scheme: SchemeKind, seed: u64) -> ExperimentConfig {
    ExperimentConfig {
        scheme: Some(scheme),
        runs: RUNS,
        seed,
        ..ExperimentConfig::new(AlgorithmKind::IaHyp, LandscapeKind::OneMax, ONE_MAX_SIZES.to_vec())
    }
}

/// (1+1) IA with `scheme` on LeadingOnes, optimum known.
pub fn leading_ones_scaling(scheme: SchemeKind, seed: u64) -> ExperimentConfig {
    ExperimentConfig {
        scheme: Some(scheme),
        runs: RUNS,
        seed,
        ..ExperimentConfig::new(
            AlgorithmKind::IaHyp,
            LandscapeKind::LeadingOnes,
            LEADING_ONES_SIZES.to_vec(),
        )
    }
}

/// Opt-IA or its symmetric variant on TwoMax, both peaks required.
///
/// The symmetric variant gets the tighter budget `40 n^1.5 ln n`.
pub fn two_max(algorithm: AlgorithmKind, seed: u64) -> ExperimentConfig {
    let budget = match algorithm {
        AlgorithmKind::OptIaSymmetric => "40*n^1.5*ln(n)",
        _ => "40*n^2*ln(n)",
    };
    ExperimentConfig {
        symmetric_mode: SymmetricMode::ProofConsistent,
        runs: RUNS,
        seed,
        budget: Some(Rule::new(budget).unwrap()),
        target: Some(Target::AllGlobals),
        trace: true,
        ..ExperimentConfig::new(algorithm, LandscapeKind::TwoMax, TWO_MAX_SIZES.to_vec())
    }
}

/// Any algorithm on Cliff with `k = floor(n/5)`, `τ = n^1.3` and the
/// default Cliff budget.
pub fn cliff(algorithm: AlgorithmKind, seed: u64) -> ExperimentConfig {
    ExperimentConfig {
        symmetric_mode: SymmetricMode::ProofConsistent,
        runs: RUNS,
        seed,
        ..ExperimentConfig::new(algorithm, LandscapeKind::Cliff, CLIFF_SIZES.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recipes_validate() {
        for cfg in [
            one_max_scaling(SchemeKind::LinHd, 1),
            one_max_scaling(SchemeKind::Static, 1),
            leading_ones_scaling(SchemeKind::ExpoHd, 1),
            two_max(AlgorithmKind::OptIaAgeing, 1),
            two_max(AlgorithmKind::OptIaSymmetric, 1),
            cliff(AlgorithmKind::OptIaAgeing, 1),
            cliff(AlgorithmKind::OptIaSymmetric, 1),
            cliff(AlgorithmKind::StaticHyp, 1),
        ] {
            cfg.validate().unwrap();
        }
    }
}
