//! Hypermutation with mutation potential for immune-inspired optimisation.
//!
//! The crate is organised bottom-up:
//!
//! - [`bitstring`]: packed binary genotypes, Hamming distance and the
//!   seeded [`RandomStream`] every stochastic operation draws from.
//! - [`benchmarks`]: OneMax, LeadingOnes, TwoMax and Cliff with exact
//!   half-unit fitness values.
//! - [`potentials`]: the mutation-potential schemes (linear and exponential
//!   Hamming-distance decay, exponential fitness decay, static, and the
//!   origin-based symmetric scheme).
//! - [`hypermutation`]: the stop-at-first-constructive-mutation operator and
//!   its evaluation accounting.
//! - [`algorithms`]: the (1+1) IA, the (1+1) Opt-IA with hybrid ageing, its
//!   symmetric variant, and two baselines.
//! - [`oracles`]: exact enumerations used to validate the stochastic parts.
//! - [`harness`]: replicated experiments, CSV/JSONL output, scaling fits and
//!   potential profiles.

pub mod algorithms;
pub mod benchmarks;
pub mod bitstring;
mod error;
pub mod harness;
pub mod hypermutation;
pub mod oracles;
pub mod potentials;

pub use algorithms::{AlgorithmConfig, AlgorithmKind, BestMode, Engine, RunRecord, Target};
pub use benchmarks::{Fitness, Landscape, LandscapeKind};
pub use bitstring::{BitString, RandomStream};
pub use error::{Error, Result};
pub use hypermutation::{fcm_hypermutate, HypermutationOutcome};
pub use potentials::{PotentialScheme, PotentialValue, SchemeKind, SymmetricMode};
