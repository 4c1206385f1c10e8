//! Packed binary genotypes and the seeded random stream.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

const WORD_BITS: usize = 64;

/// A fixed-length string over {0,1}, packed 64 bits per word.
///
/// Bit `i` lives in word `i / 64` at position `i % 64`. Bits past `len` in
/// the last word are always zero, so word-level popcounts are exact.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    len: usize,
    words: Vec<u64>,
}

impl BitString {
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        Ok(BitString {
            len: n,
            words: vec![0; n.div_ceil(WORD_BITS)],
        })
    }

    pub fn ones(n: usize) -> Result<Self> {
        let mut x = Self::zeros(n)?;
        x.words.iter_mut().for_each(|w| *w = u64::MAX);
        x.clear_tail();
        Ok(x)
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let mut x = Self::zeros(bits.len())?;
        for (i, &b) in bits.iter().enumerate() {
            x.set(i, b);
        }
        Ok(x)
    }

    /// `1^ones 0^(n-ones)`; handy for building points at a given distance
    /// from the all-ones string.
    pub fn with_prefix_ones(n: usize, ones: usize) -> Result<Self> {
        if ones > n {
            return Err(Error::parameter("ones", format!("{ones} exceeds n = {n}")));
        }
        let mut x = Self::zeros(n)?;
        for i in 0..ones {
            x.set(i, true);
        }
        Ok(x)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false; a bit string has at least one position.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    #[inline]
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Length of the maximal all-ones prefix.
    pub fn leading_ones(&self) -> usize {
        let mut total = 0;
        for w in &self.words {
            let run = w.trailing_ones() as usize;
            total += run;
            if run < WORD_BITS {
                break;
            }
        }
        total.min(self.len)
    }

    pub fn complement(&self) -> BitString {
        let mut c = BitString {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        c.clear_tail();
        c
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Hamming distance; the caller guarantees equal lengths.
    #[inline]
    pub(crate) fn distance_unchecked(&self, other: &BitString) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub(crate) fn check_same_len(&self, other: &BitString) -> Result<()> {
        if self.len != other.len {
            return Err(Error::Dimension {
                expected: self.len,
                actual: other.len,
            });
        }
        Ok(())
    }

    fn clear_tail(&mut self) {
        let used = self.len % WORD_BITS;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }
}

/// Number of positions in which `a` and `b` differ.
pub fn hamming_distance(a: &BitString, b: &BitString) -> Result<usize> {
    a.check_same_len(b)?;
    Ok(a.distance_unchecked(b))
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::parameter("bits", format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        BitString::from_bits(&bits)
    }
}

/// SplitMix64 output finaliser.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the `stream`-th independent stream under `master`.
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    mix64(mix64(master ^ 0x9E37_79B9_7F4A_7C15).wrapping_add(mix64(stream.wrapping_add(0xD1B5_4A32_D192_ED03))))
}

/// Deterministic random stream backing every stochastic decision of a run.
///
/// The generator is ChaCha8 (a counter-mode stream cipher) keyed from a
/// 64-bit seed; per-run seeds come from [`derive_seed`], a SplitMix64-based
/// mix of the master seed and the run's stream id. Equal seeds give equal
/// draw sequences.
#[derive(Clone, Debug)]
pub struct RandomStream {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomStream {
    /// Identifier recorded in run metadata.
    pub const GENERATOR: &'static str = "chacha8/splitmix64-seed";

    pub fn new(seed: u64) -> Self {
        RandomStream {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn for_stream(master: u64, stream: u64) -> Self {
        Self::new(derive_seed(master, stream))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    pub fn coin(&mut self) -> bool {
        self.rng.next_u64() >> 63 == 1
    }

    /// True with probability `p`, for `p` in [0, 1].
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    /// Uniform real in [0, 1).
    pub fn unit(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Uniform integer in `0..upper`; `upper` must be positive.
    #[inline]
    pub fn index(&mut self, upper: usize) -> usize {
        self.rng.random_range(0..upper)
    }

    /// Uniformly random string of length `n`.
    pub fn bitstring(&mut self, n: usize) -> Result<BitString> {
        let mut x = BitString::zeros(n)?;
        for w in x.words.iter_mut() {
            *w = self.rng.next_u64();
        }
        x.clear_tail();
        Ok(x)
    }
}

/// Uniformly random string of length `n` drawn from `rng`.
pub fn uniform_bitstring(n: usize, rng: &mut RandomStream) -> Result<BitString> {
    rng.bitstring(n)
}
