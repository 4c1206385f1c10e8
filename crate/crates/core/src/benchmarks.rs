//! Pseudo-Boolean benchmark landscapes.
//!
//! Fitness is held in half-units (`2·f`) so that Cliff's `+1/2` offset
//! compares exactly.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitstring::BitString;
use crate::{Error, Result};

/// Exact fitness value stored as twice the real value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fitness(i64);

impl Fitness {
    pub const ZERO: Fitness = Fitness(0);

    pub const fn from_half_units(half_units: i64) -> Self {
        Fitness(half_units)
    }

    /// Fitness of integer value `v`.
    pub const fn from_units(v: i64) -> Self {
        Fitness(2 * v)
    }

    pub const fn half_units(self) -> i64 {
        self.0
    }

    /// Real-valued fitness, for reporting only.
    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl fmt::Display for Fitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}.5", self.0 / 2)
        }
    }
}

pub fn one_max(x: &BitString) -> Fitness {
    Fitness::from_units(x.count_ones() as i64)
}

pub fn leading_ones(x: &BitString) -> Fitness {
    Fitness::from_units(x.leading_ones() as i64)
}

/// `max{|x|_1, n - |x|_1}`, maximised by both `0^n` and `1^n`.
pub fn two_max(x: &BitString) -> Fitness {
    let ones = x.count_ones();
    Fitness::from_units(ones.max(x.len() - ones) as i64)
}

/// Cliff with drop parameter `k`: OneMax up to `n-k` ones, then
/// `|x|_1 - k + 1/2`.
pub fn cliff(x: &BitString, k: usize) -> Result<Fitness> {
    check_cliff_k(x.len(), k)?;
    Ok(cliff_unchecked(x, k))
}

#[inline]
fn cliff_unchecked(x: &BitString, k: usize) -> Fitness {
    let ones = x.count_ones() as i64;
    let n = x.len() as i64;
    let k = k as i64;
    if ones <= n - k {
        Fitness::from_half_units(2 * ones)
    } else {
        Fitness::from_half_units(2 * ones - 2 * k + 1)
    }
}

fn check_cliff_k(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::parameter(
            "k",
            format!("cliff parameter must satisfy 1 <= k <= n = {n}, got {k}"),
        ));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LandscapeKind {
    OneMax,
    LeadingOnes,
    TwoMax,
    Cliff,
}

impl LandscapeKind {
    pub fn name(self) -> &'static str {
        match self {
            LandscapeKind::OneMax => "onemax",
            LandscapeKind::LeadingOnes => "leadingones",
            LandscapeKind::TwoMax => "twomax",
            LandscapeKind::Cliff => "cliff",
        }
    }
}

impl fmt::Display for LandscapeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LandscapeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "onemax" => Ok(LandscapeKind::OneMax),
            "leadingones" => Ok(LandscapeKind::LeadingOnes),
            "twomax" => Ok(LandscapeKind::TwoMax),
            "cliff" => Ok(LandscapeKind::Cliff),
            _ => Err(Error::config("function", format!("unknown landscape {s:?}"))),
        }
    }
}

/// A benchmark function instance of fixed size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Landscape {
    kind: LandscapeKind,
    n: usize,
    /// Cliff only.
    k: Option<usize>,
}

impl Landscape {
    pub fn one_max(n: usize) -> Result<Self> {
        Self::new(LandscapeKind::OneMax, n, None)
    }

    pub fn leading_ones(n: usize) -> Result<Self> {
        Self::new(LandscapeKind::LeadingOnes, n, None)
    }

    pub fn two_max(n: usize) -> Result<Self> {
        Self::new(LandscapeKind::TwoMax, n, None)
    }

    pub fn cliff(n: usize, k: usize) -> Result<Self> {
        Self::new(LandscapeKind::Cliff, n, Some(k))
    }

    /// `k` is required for Cliff and ignored otherwise.
    pub fn new(kind: LandscapeKind, n: usize, k: Option<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        let k = match kind {
            LandscapeKind::Cliff => {
                let k = k.ok_or_else(|| Error::parameter("k", "cliff requires a k parameter"))?;
                check_cliff_k(n, k)?;
                Some(k)
            }
            _ => None,
        };
        Ok(Landscape { kind, n, k })
    }

    pub fn kind(&self) -> LandscapeKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> Option<usize> {
        self.k
    }

    /// Fitness of `x`; panics if `x` has the wrong length.
    #[inline]
    pub fn evaluate(&self, x: &BitString) -> Fitness {
        assert_eq!(x.len(), self.n, "genotype length does not match landscape size");
        match self.kind {
            LandscapeKind::OneMax => one_max(x),
            LandscapeKind::LeadingOnes => leading_ones(x),
            LandscapeKind::TwoMax => two_max(x),
            LandscapeKind::Cliff => cliff_unchecked(x, self.k.unwrap_or(1)),
        }
    }

    pub fn try_evaluate(&self, x: &BitString) -> Result<Fitness> {
        if x.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                actual: x.len(),
            });
        }
        Ok(self.evaluate(x))
    }

    pub fn global_optima(&self) -> GlobalOptima {
        let n = self.n;
        let ones = BitString::ones(n).expect("n >= 1");
        match self.kind {
            LandscapeKind::OneMax | LandscapeKind::LeadingOnes => GlobalOptima {
                max_fitness: Fitness::from_units(n as i64),
                optima: vec![ones],
            },
            LandscapeKind::TwoMax => GlobalOptima {
                max_fitness: Fitness::from_units(n as i64),
                optima: vec![ones.complement(), ones],
            },
            LandscapeKind::Cliff => {
                let k = self.k.unwrap_or(1) as i64;
                GlobalOptima {
                    max_fitness: Fitness::from_half_units(2 * (n as i64 - k) + 1),
                    optima: vec![ones],
                }
            }
        }
    }
}

impl fmt::Display for Landscape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            Some(k) => write!(f, "{}(n={}, k={})", self.kind, self.n, k),
            None => write!(f, "{}(n={})", self.kind, self.n),
        }
    }
}

/// The set of global maximisers of a landscape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalOptima {
    pub max_fitness: Fitness,
    /// Listed in a fixed order; the first one is the designated optimum
    /// used when an algorithm is told the optimum in advance.
    pub optima: Vec<BitString>,
}

impl GlobalOptima {
    pub fn contains(&self, x: &BitString) -> bool {
        self.optima.iter().any(|o| o == x)
    }

    pub fn count(&self) -> usize {
        self.optima.len()
    }

    /// Position of `x` in [`GlobalOptima::optima`], if it is an optimum.
    pub fn index_of(&self, x: &BitString) -> Option<usize> {
        self.optima.iter().position(|o| o == x)
    }

    pub fn designated(&self) -> &BitString {
        &self.optima[0]
    }
}
