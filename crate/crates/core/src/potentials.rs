//! Mutation-potential schemes.
//!
//! A potential is the maximum number of distinct bits a single hypermutation
//! may flip. Every scheme here rounds its real-valued formula up and clamps
//! the result to `[1, n]`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::benchmarks::{Fitness, Landscape, LandscapeKind};
use crate::bitstring::BitString;
use crate::{Error, Result};

/// Number of bit flips permitted in one hypermutation, always in `[1, n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PotentialValue(usize);

impl PotentialValue {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || m > n {
            return Err(Error::parameter(
                "m",
                format!("potential must lie in [1, {n}], got {m}"),
            ));
        }
        Ok(PotentialValue(m))
    }

    fn clamped(m: usize, n: usize) -> Self {
        PotentialValue(m.clamp(1, n.max(1)))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for PotentialValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Ceiling that forgives floating-point noise just above an integer, so that
/// e.g. `100^(1/2)` evaluating to `10.000000000000002` yields 10.
fn ceil_exact(v: f64) -> usize {
    if !v.is_finite() || v <= 0.0 {
        return 0;
    }
    let r = v.round();
    if (v - r).abs() <= 1e-9 * r.max(1.0) {
        r as usize
    } else {
        v.ceil() as usize
    }
}

/// `⌈n^(e/n)⌉` clamped to `[1, n]`.
fn expo_distance(n: usize, exponent_distance: usize) -> PotentialValue {
    let nf = n as f64;
    PotentialValue::clamped(ceil_exact(nf.powf(exponent_distance as f64 / nf)), n)
}

/// Linear Hamming-distance potential: `max(1, H(x, best))`.
///
/// The distance is to the nearest member of the best set; all algorithms in
/// this crate track a single best, so that is just `H(x, best)`.
pub fn m_lin_hd(x: &BitString, best: &BitString) -> Result<PotentialValue> {
    x.check_same_len(best)?;
    Ok(PotentialValue::clamped(x.distance_unchecked(best), x.len()))
}

/// Exponential fitness potential `⌈n·e^(−ρ·min(1, f(x)/f(best)))⌉`.
///
/// With `ρ = ln n` this is `⌈n^(1 − f(x)/f(best))⌉`.
pub fn m_expo_f(n: usize, fx: Fitness, fbest: Fitness, rho: f64) -> Result<PotentialValue> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    if fbest.half_units() <= 0 {
        return Err(Error::UnsupportedLandscape(format!(
            "fitness-based potential needs f(best) > 0, got {fbest}"
        )));
    }
    // A single bit leaves nothing to decay, and the default ln 1 is 0.
    if n == 1 {
        return Ok(PotentialValue(1));
    }
    if rho.is_nan() || rho <= 0.0 {
        return Err(Error::parameter("rho", format!("decay must be positive, got {rho}")));
    }
    let ratio = (fx.half_units().max(0) as f64 / fbest.half_units() as f64).min(1.0);
    let nf = n as f64;
    let m = if rho == nf.ln() {
        nf.powf(1.0 - ratio)
    } else {
        nf * (-rho * ratio).exp()
    };
    Ok(PotentialValue::clamped(ceil_exact(m), n))
}

/// Exponential Hamming-distance potential `⌈n^(H(x, best)/n)⌉`.
pub fn m_expo_hd(x: &BitString, best: &BitString) -> Result<PotentialValue> {
    x.check_same_len(best)?;
    Ok(expo_distance(x.len(), x.distance_unchecked(best)))
}

/// The static potential `M = n`.
pub fn m_static(n: usize) -> Result<PotentialValue> {
    PotentialValue::new(n, n)
}

/// How the origin-based symmetric potential is computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetricMode {
    /// `⌈n^(max(H(best, origin) − H(x, origin), 0)/n)⌉`: equals the
    /// exponential-distance potential at the origin and decays to 1 as `x`
    /// moves as far from its origin as the best point is.
    #[default]
    ProofConsistent,
    /// `⌈n · n^(−H(x, origin)/max(H(best, origin), 1))⌉`, the closed form as
    /// it is usually printed; yields `n` at the origin.
    AsPrinted,
}

impl FromStr for SymmetricMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "proof-consistent" | "proof" => Ok(SymmetricMode::ProofConsistent),
            "as-printed" | "printed" => Ok(SymmetricMode::AsPrinted),
            _ => Err(Error::config("symmetric-mode", format!("unknown mode {s:?}"))),
        }
    }
}

/// Origin-based symmetric potential.
pub fn m_symmetric(x: &BitString, origin: &BitString, best: &BitString, mode: SymmetricMode) -> Result<PotentialValue> {
    x.check_same_len(origin)?;
    x.check_same_len(best)?;
    let n = x.len();
    let from_origin = x.distance_unchecked(origin);
    let best_from_origin = best.distance_unchecked(origin);
    Ok(match mode {
        SymmetricMode::ProofConsistent => expo_distance(n, best_from_origin.saturating_sub(from_origin)),
        SymmetricMode::AsPrinted => {
            let nf = n as f64;
            let exponent = -(from_origin as f64) / best_from_origin.max(1) as f64;
            PotentialValue::clamped(ceil_exact(nf * nf.powf(exponent)), n)
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SchemeKind {
    #[serde(rename = "linhd")]
    LinHd,
    #[serde(rename = "expof")]
    ExpoF,
    #[serde(rename = "expohd")]
    ExpoHd,
    #[serde(rename = "static")]
    Static,
    #[serde(rename = "symmetric")]
    SymmetricExpoHd,
}

impl SchemeKind {
    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::LinHd => "linhd",
            SchemeKind::ExpoF => "expof",
            SchemeKind::ExpoHd => "expohd",
            SchemeKind::Static => "static",
            SchemeKind::SymmetricExpoHd => "symmetric",
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "linhd" => Ok(SchemeKind::LinHd),
            "expof" | "expofx" => Ok(SchemeKind::ExpoF),
            "expohd" => Ok(SchemeKind::ExpoHd),
            "static" => Ok(SchemeKind::Static),
            "symmetric" | "symmetricexpohd" => Ok(SchemeKind::SymmetricExpoHd),
            _ => Err(Error::config("scheme", format!("unknown potential scheme {s:?}"))),
        }
    }
}

/// Everything a scheme may look at when choosing `M`.
#[derive(Clone, Copy, Debug)]
pub struct PotentialInput<'a> {
    pub x: &'a BitString,
    pub x_fitness: Fitness,
    pub best: &'a BitString,
    pub best_fitness: Fitness,
    /// Only read by the symmetric scheme.
    pub origin: &'a BitString,
}

/// A configured potential scheme.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PotentialScheme {
    pub kind: SchemeKind,
    /// Decay for the fitness-based scheme; `None` means `ln n`.
    #[serde(default)]
    pub rho: Option<f64>,
    /// Potential of the static scheme; `None` means `n`.
    #[serde(default)]
    pub static_m: Option<usize>,
    #[serde(default)]
    pub symmetric_mode: SymmetricMode,
}

impl PotentialScheme {
    pub fn new(kind: SchemeKind) -> Self {
        PotentialScheme {
            kind,
            rho: None,
            static_m: None,
            symmetric_mode: SymmetricMode::default(),
        }
    }

    pub fn lin_hd() -> Self {
        Self::new(SchemeKind::LinHd)
    }

    pub fn expo_f() -> Self {
        Self::new(SchemeKind::ExpoF)
    }

    pub fn expo_hd() -> Self {
        Self::new(SchemeKind::ExpoHd)
    }

    pub fn fixed() -> Self {
        Self::new(SchemeKind::Static)
    }

    pub fn symmetric(mode: SymmetricMode) -> Self {
        PotentialScheme {
            symmetric_mode: mode,
            ..Self::new(SchemeKind::SymmetricExpoHd)
        }
    }

    pub fn with_rho(mut self, rho: f64) -> Self {
        self.rho = Some(rho);
        self
    }

    pub fn with_static_m(mut self, m: usize) -> Self {
        self.static_m = Some(m);
        self
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if let Some(rho) = self.rho {
            if !(rho > 0.0 && rho.is_finite()) {
                return Err(Error::config(
                    "rho",
                    format!("must be a positive finite number, got {rho}"),
                ));
            }
        }
        if let Some(m) = self.static_m {
            if m == 0 || m > n {
                return Err(Error::config("static_m", format!("must lie in [1, {n}], got {m}")));
            }
        }
        Ok(())
    }

    pub fn rho_for(&self, n: usize) -> f64 {
        self.rho.unwrap_or_else(|| (n as f64).ln())
    }

    pub fn potential(&self, input: &PotentialInput<'_>) -> Result<PotentialValue> {
        let n = input.x.len();
        match self.kind {
            SchemeKind::LinHd => m_lin_hd(input.x, input.best),
            SchemeKind::ExpoHd => m_expo_hd(input.x, input.best),
            SchemeKind::ExpoF => m_expo_f(n, input.x_fitness, input.best_fitness, self.rho_for(n)),
            SchemeKind::Static => match self.static_m {
                Some(m) => PotentialValue::new(m, n),
                None => m_static(n),
            },
            SchemeKind::SymmetricExpoHd => m_symmetric(input.x, input.origin, input.best, self.symmetric_mode),
        }
    }
}

impl fmt::Display for PotentialScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.name())
    }
}

/// One row of a potential profile.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProfileRow {
    /// Hamming distance to the optimum; an expected value on LeadingOnes.
    pub distance: f64,
    /// Fitness of the representative point at this row.
    pub fitness: f64,
    pub potential: usize,
}

/// Potential as a function of the distance to the optimum `1^n`.
///
/// For OneMax, TwoMax and Cliff each distance `d` is represented by the
/// point `1^(n−d) 0^d` with best `= 1^n`. For LeadingOnes the rows are
/// indexed by fitness `i` instead: the bit after the prefix is 0 and the
/// remaining `n−i−1` bits are uniform, so the expected distance to the
/// optimum is `1 + (n−i−1)/2`, and distance-based schemes are evaluated at
/// that expected distance. The symmetric scheme is profiled with origin
/// `0^n`.
pub fn potential_profile(
    scheme: &PotentialScheme,
    landscape: &Landscape,
    distances: std::ops::RangeInclusive<usize>,
) -> Result<Vec<ProfileRow>> {
    let n = landscape.n();
    scheme.validate(n)?;
    let optima = landscape.global_optima();
    let best = BitString::ones(n)?;
    let best_fitness = landscape.evaluate(&best);
    let origin = BitString::zeros(n)?;
    let nf = n as f64;
    let mut rows = Vec::new();
    for d in distances {
        if d > n {
            return Err(Error::parameter("distance", format!("{d} exceeds n = {n}")));
        }
        if landscape.kind() == LandscapeKind::LeadingOnes {
            let fitness = n - d;
            let expected = if fitness == n {
                0.0
            } else {
                1.0 + (nf - fitness as f64 - 1.0) / 2.0
            };
            let potential = match scheme.kind {
                SchemeKind::LinHd => PotentialValue::clamped(ceil_exact(expected), n),
                SchemeKind::ExpoHd => PotentialValue::clamped(ceil_exact(nf.powf(expected / nf)), n),
                SchemeKind::ExpoF => m_expo_f(n, Fitness::from_units(fitness as i64), best_fitness, scheme.rho_for(n))?,
                SchemeKind::Static => scheme.potential(&PotentialInput {
                    x: &best,
                    x_fitness: best_fitness,
                    best: &best,
                    best_fitness,
                    origin: &origin,
                })?,
                SchemeKind::SymmetricExpoHd => {
                    // Origin 0^n sits at distance n from the optimum, so
                    // H(best, origin) - H(x, origin) is the distance itself.
                    match scheme.symmetric_mode {
                        SymmetricMode::ProofConsistent => {
                            PotentialValue::clamped(ceil_exact(nf.powf(expected / nf)), n)
                        }
                        SymmetricMode::AsPrinted => {
                            PotentialValue::clamped(ceil_exact(nf * nf.powf(-(nf - expected) / nf)), n)
                        }
                    }
                }
            };
            rows.push(ProfileRow {
                distance: expected,
                fitness: fitness as f64,
                potential: potential.get(),
            });
        } else {
            let x = BitString::with_prefix_ones(n, n - d)?;
            let x_fitness = landscape.evaluate(&x);
            let potential = scheme.potential(&PotentialInput {
                x: &x,
                x_fitness,
                best: &best,
                best_fitness: optima.max_fitness.max(best_fitness),
                origin: &origin,
            })?;
            rows.push(ProfileRow {
                distance: d as f64,
                fitness: x_fitness.value(),
                potential: potential.get(),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn at_distance(n: usize, d: usize) -> (BitString, BitString) {
        (
            BitString::with_prefix_ones(n, n - d).unwrap(),
            BitString::ones(n).unwrap(),
        )
    }

    #[test]
    fn lin_hd_examples() {
        let (x, best) = at_distance(10, 4);
        assert_eq!(m_lin_hd(&x, &best).unwrap().get(), 4);
        let (x, best) = at_distance(10, 0);
        assert_eq!(m_lin_hd(&x, &best).unwrap().get(), 1);
        let (x, best) = at_distance(10, 10);
        assert_eq!(m_lin_hd(&x, &best).unwrap().get(), 10);
    }

    #[test]
    fn expo_f_examples() {
        let u = Fitness::from_units;
        assert_eq!(m_expo_f(100, u(100), u(100), 100f64.ln()).unwrap().get(), 1);
        assert_eq!(m_expo_f(100, u(50), u(100), 100f64.ln()).unwrap().get(), 10);
        assert_eq!(m_expo_f(100, u(0), u(100), 100f64.ln()).unwrap().get(), 100);
        // A non-default decay goes through the exponential form.
        assert_eq!(m_expo_f(100, u(50), u(100), 2.0).unwrap().get(), 37);
    }

    #[test]
    fn expo_f_rejects_nonpositive_best() {
        let err = m_expo_f(10, Fitness::ZERO, Fitness::ZERO, 1.0).unwrap_err();
        assert!(matches!(err, Error::UnsupportedLandscape(_)));
    }

    #[test]
    fn expo_f_ratio_is_clamped() {
        let u = Fitness::from_units;
        assert_eq!(m_expo_f(10, u(12), u(10), 10f64.ln()).unwrap().get(), 1);
    }

    #[test]
    fn expo_hd_examples() {
        let (x, best) = at_distance(10, 0);
        assert_eq!(m_expo_hd(&x, &best).unwrap().get(), 1);
        let (x, best) = at_distance(100, 50);
        assert_eq!(m_expo_hd(&x, &best).unwrap().get(), 10);
        let (x, best) = at_distance(16, 8);
        assert_eq!(m_expo_hd(&x, &best).unwrap().get(), 4);
    }

    #[test]
    fn static_examples() {
        assert_eq!(m_static(10).unwrap().get(), 10);
        assert_eq!(m_static(1).unwrap().get(), 1);
        assert_eq!(m_static(512).unwrap().get(), 512);
    }

    #[test]
    fn symmetric_examples() {
        let x = BitString::zeros(100).unwrap();
        assert_eq!(
            m_symmetric(&x, &x, &x, SymmetricMode::ProofConsistent).unwrap().get(),
            1
        );

        let origin = BitString::zeros(100).unwrap();
        let best = BitString::with_prefix_ones(100, 50).unwrap();
        assert_eq!(
            m_symmetric(&origin, &origin, &best, SymmetricMode::ProofConsistent)
                .unwrap()
                .get(),
            10
        );

        let x = BitString::with_prefix_ones(100, 25).unwrap();
        assert_eq!(
            m_symmetric(&x, &origin, &best, SymmetricMode::AsPrinted).unwrap().get(),
            10
        );
        // The printed closed form gives n at the origin.
        assert_eq!(
            m_symmetric(&origin, &origin, &best, SymmetricMode::AsPrinted)
                .unwrap()
                .get(),
            100
        );
    }

    #[test]
    fn dimension_errors() {
        let a = BitString::zeros(4).unwrap();
        let b = BitString::zeros(5).unwrap();
        assert!(m_lin_hd(&a, &b).is_err());
        assert!(m_expo_hd(&a, &b).is_err());
        assert!(m_symmetric(&a, &a, &b, SymmetricMode::ProofConsistent).is_err());
        assert!(PotentialValue::new(0, 4).is_err());
        assert!(PotentialValue::new(5, 4).is_err());
    }

    #[test]
    fn all_schemes_in_range_exhaustive() {
        for n in 1..=10usize {
            let strings: Vec<BitString> = (0u32..1 << n)
                .map(|m| BitString::from_bits(&(0..n).map(|i| m >> i & 1 == 1).collect::<Vec<_>>()).unwrap())
                .collect();
            let best = &strings[strings.len() - 1];
            for x in &strings {
                for origin in strings.iter().step_by(3) {
                    let fx = Fitness::from_units(x.count_ones() as i64);
                    let input = PotentialInput {
                        x,
                        x_fitness: fx,
                        best,
                        best_fitness: Fitness::from_units(n as i64),
                        origin,
                    };
                    for scheme in [
                        PotentialScheme::lin_hd(),
                        PotentialScheme::expo_f(),
                        PotentialScheme::expo_hd(),
                        PotentialScheme::fixed(),
                        PotentialScheme::symmetric(SymmetricMode::ProofConsistent),
                        PotentialScheme::symmetric(SymmetricMode::AsPrinted),
                    ] {
                        let m = scheme.potential(&input).unwrap().get();
                        assert!((1..=n).contains(&m), "{scheme} gave {m} at n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn expo_hd_dominated_by_lin_hd_plus_one() {
        for n in [32usize, 64, 128, 256, 512, 1024] {
            let lo = (n as f64).ln().ceil() as usize;
            for h in lo..=n {
                assert!(expo_distance(n, h).get() <= h + 1, "n={n} h={h}");
            }
        }
    }

    #[test]
    fn monotone_in_distance() {
        for n in [5usize, 17, 64, 300] {
            let best = BitString::ones(n).unwrap();
            let mut prev_lin = 0;
            let mut prev_exp = 0;
            for d in 0..=n {
                let x = BitString::with_prefix_ones(n, n - d).unwrap();
                let lin = m_lin_hd(&x, &best).unwrap().get();
                let exp = m_expo_hd(&x, &best).unwrap().get();
                assert!(lin >= prev_lin && exp >= prev_exp);
                prev_lin = lin;
                prev_exp = exp;
            }
            let mut prev = usize::MAX;
            for f in 0..=n as i64 {
                let m = m_expo_f(
                    n,
                    Fitness::from_units(f),
                    Fitness::from_units(n as i64),
                    (n as f64).ln(),
                )
                .unwrap()
                .get();
                assert!(m <= prev);
                prev = m;
            }
        }
    }

    #[test]
    fn symmetric_never_exceeds_initial_value() {
        let n = 40;
        let origin = BitString::zeros(n).unwrap();
        for hb in 0..=n {
            let best = BitString::with_prefix_ones(n, hb).unwrap();
            let initial = m_symmetric(&origin, &origin, &best, SymmetricMode::ProofConsistent).unwrap();
            let mut prev = initial;
            for hx in 0..=n {
                let x = BitString::from_bits(&(0..n).map(|i| i >= n - hx).collect::<Vec<_>>()).unwrap();
                let m = m_symmetric(&x, &origin, &best, SymmetricMode::ProofConsistent).unwrap();
                assert!(m <= prev && m <= initial);
                prev = m;
            }
        }
    }

    proptest! {
        #[test]
        fn expo_f_scale_invariant(f in 0i64..500, extra in 0i64..500, scale in 1i64..50, n in 2usize..600) {
            let fb = f + extra + 1;
            let rho = (n as f64).ln();
            let a = m_expo_f(n, Fitness::from_units(f), Fitness::from_units(fb), rho).unwrap();
            let b = m_expo_f(n, Fitness::from_units(f * scale), Fitness::from_units(fb * scale), rho).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn distance_schemes_ignore_fitness(
            bits in proptest::collection::vec(any::<bool>(), 8..80),
            f1 in 0i64..1000, f2 in 1i64..1000,
        ) {
            let x = BitString::from_bits(&bits).unwrap();
            let best = BitString::ones(x.len()).unwrap();
            let origin = x.complement();
            for scheme in [
                PotentialScheme::lin_hd(),
                PotentialScheme::expo_hd(),
                PotentialScheme::symmetric(SymmetricMode::ProofConsistent),
            ] {
                let a = scheme.potential(&PotentialInput { x: &x, x_fitness: Fitness::from_units(f1), best: &best, best_fitness: Fitness::from_units(f2), origin: &origin }).unwrap();
                let b = scheme.potential(&PotentialInput { x: &x, x_fitness: Fitness::from_units(f1 * 3 + 7), best: &best, best_fitness: Fitness::from_units(f2 * f2), origin: &origin }).unwrap();
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn profile_shapes() {
        let om = Landscape::one_max(100).unwrap();
        let lin = potential_profile(&PotentialScheme::lin_hd(), &om, 0..=100).unwrap();
        assert_eq!(lin.len(), 101);
        assert!(lin.iter().all(|r| r.potential == (r.distance as usize).max(1)));

        let expo = potential_profile(&PotentialScheme::expo_hd(), &om, 0..=100).unwrap();
        assert!(expo.windows(2).all(|w| w[0].potential <= w[1].potential));
        assert_eq!(expo.last().unwrap().potential, 100);

        let fixed = potential_profile(&PotentialScheme::fixed(), &om, 0..=100).unwrap();
        assert!(fixed.iter().all(|r| r.potential == 100));
    }
}
