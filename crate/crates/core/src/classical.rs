//! Typical sequences, classical data compression, repetition coding and the
//! noisy-channel capacity bound.
//!
//! Counting is exact (u128) wherever the binomial coefficient fits and falls
//! back to a flagged log-domain value beyond that. Codebooks are built by
//! sorting all strings by source probability, descending, with lexicographic
//! tie-breaks, so two runs on any platform produce the same codebook.

use crate::entropy::binary_entropy;
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// A finite 0/1 string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    bits: Vec<u8>,
}

impl BitString {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::Validation("bit string must be nonempty".into()));
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Validation("bit string entries must be 0 or 1".into()));
        }
        Ok(Self { bits })
    }

    /// The `length`-bit string whose big-endian value is `value`.
    pub fn from_index(value: usize, length: usize) -> Result<Self> {
        if length == 0 || length >= usize::BITS as usize {
            return Err(Error::Validation("bad bit string length".into()));
        }
        if value >> length != 0 {
            return Err(Error::Validation(format!(
                "value {value} does not fit in {length} bits"
            )));
        }
        let bits = (0..length)
            .map(|i| ((value >> (length - 1 - i)) & 1) as u8)
            .collect();
        Ok(Self { bits })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    /// Big-endian integer value.
    pub fn to_index(&self) -> usize {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    /// Probability of this string under a memoryless source with P(1) = p1.
    pub fn probability(&self, p1: f64) -> f64 {
        let ones = self.count_ones() as i32;
        let zeros = (self.len() - ones as usize) as i32;
        p1.powi(ones) * (1.0 - p1).powi(zeros)
    }
}

impl std::fmt::Display for BitString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Flip probability of a binary symmetric channel.
#[derive(Debug, Clone, Copy)]
pub struct BscParams {
    q: f64,
}

impl BscParams {
    pub fn new(q: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&q) || !q.is_finite() {
            return Err(Error::Domain(format!("flip probability {q} outside [0,1]")));
        }
        Ok(Self { q })
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

/// Number of typical messages: the binomial coefficient C(N, round(N*p1)),
/// exact where it fits, otherwise carried in log2 with a flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TypicalCount {
    Exact(u128),
    /// log2 of the count; used when the exact value overflows u128.
    LogDomain(f64),
}

impl TypicalCount {
    pub fn log2(&self) -> f64 {
        match self {
            TypicalCount::Exact(c) => (*c as f64).log2(),
            TypicalCount::LogDomain(l) => *l,
        }
    }

    pub fn exact(&self) -> Option<u128> {
        match self {
            TypicalCount::Exact(c) => Some(*c),
            TypicalCount::LogDomain(_) => None,
        }
    }
}

fn checked_binomial(n: u64, k: u64) -> Option<u128> {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 1..=k {
        // acc * (n-k+i) / i stays integral at every step.
        acc = acc.checked_mul((n - k + i) as u128)?;
        acc /= i as u128;
    }
    Some(acc)
}

fn log2_binomial(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    let mut acc = 0.0;
    for i in 1..=k {
        acc += ((n - k + i) as f64).log2() - (i as f64).log2();
    }
    acc
}

/// Count of distinct typical messages of length `n` from a binary source
/// with P(1) = p1. Non-integer `n*p1` is rounded to the nearest integer
/// (the sharp-typicality approximation).
pub fn typical_count(n: u64, p1: f64) -> Result<TypicalCount> {
    if n == 0 {
        return Err(Error::Domain("message length must be positive".into()));
    }
    if !(0.0..=1.0).contains(&p1) || !p1.is_finite() {
        return Err(Error::Domain(format!("p1 = {p1} outside [0,1]")));
    }
    let k = (n as f64 * p1).round() as u64;
    match checked_binomial(n, k) {
        Some(c) => Ok(TypicalCount::Exact(c)),
        None => Ok(TypicalCount::LogDomain(log2_binomial(n, k))),
    }
}

/// Exact and Stirling-approximate bit counts needed to label the typical set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompressionBits {
    /// log2 of the exact typical count.
    pub exact: f64,
    /// `N * H(p1)`, the large-N form.
    pub stirling: f64,
}

pub fn compression_bits(n: u64, p1: f64) -> Result<CompressionBits> {
    let count = typical_count(n, p1)?;
    Ok(CompressionBits {
        exact: count.log2(),
        stirling: n as f64 * binary_entropy(p1)?,
    })
}

/// Upper bound `N_C (1 - H(q))` on the bits a noisy channel of `n_c` binary
/// letters can carry.
pub fn channel_capacity(n_c: u64, q: f64) -> Result<f64> {
    Ok(n_c as f64 * (1.0 - binary_entropy(q)?))
}

/// `N_C H(q)`: bits needed to pin down where the errors sit.
pub fn error_pattern_bits(n_c: u64, q: f64) -> Result<f64> {
    Ok(n_c as f64 * binary_entropy(q)?)
}

/// Repetition code: send `n_copies` copies of one bit.
pub fn repetition_encode(bit: u8, n_copies: usize) -> Result<BitString> {
    if bit > 1 {
        return Err(Error::Contract("bit must be 0 or 1".into()));
    }
    if n_copies == 0 || n_copies.is_multiple_of(2) {
        return Err(Error::Contract(format!(
            "repetition length must be odd, got {n_copies} (majority vote undefined)"
        )));
    }
    BitString::new(vec![bit; n_copies])
}

/// Majority-vote decoding.
pub fn repetition_decode(s: &BitString) -> Result<u8> {
    if s.len().is_multiple_of(2) {
        return Err(Error::Contract(format!(
            "repetition length must be odd, got {} (majority vote undefined)",
            s.len()
        )));
    }
    Ok(if 2 * s.count_ones() > s.len() { 1 } else { 0 })
}

/// Exact residual error of majority decoding over a BSC:
/// `sum_{k > n/2} C(n,k) q^k (1-q)^(n-k)`.
pub fn bsc_residual_error(n_copies: usize, channel: BscParams) -> Result<f64> {
    if n_copies == 0 || n_copies.is_multiple_of(2) {
        return Err(Error::Contract(format!(
            "repetition length must be odd, got {n_copies}"
        )));
    }
    let n = n_copies as u64;
    let q = channel.q();
    let mut total = 0.0;
    for k in (n / 2 + 1)..=n {
        let ways = checked_binomial(n, k)
            .map(|c| c as f64)
            .unwrap_or_else(|| log2_binomial(n, k).exp2());
        total += ways * q.powi(k as i32) * (1.0 - q).powi((n - k) as i32);
    }
    Ok(total)
}

/// Empirical residual error over `trials` seeded channel uses.
pub fn bsc_simulate(n_copies: usize, channel: BscParams, trials: u64, seed: u64) -> Result<f64> {
    if trials == 0 {
        return Err(Error::Contract("simulation needs at least one trial".into()));
    }
    // Validate n_copies the same way the exact path does.
    bsc_residual_error(n_copies, channel)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let q = channel.q();
    let mut errors = 0u64;
    for _ in 0..trials {
        let sent: u8 = if rng.random::<f64>() < 0.5 { 1 } else { 0 };
        let mut received = repetition_encode(sent, n_copies)?;
        for b in received.bits.iter_mut() {
            if rng.random::<f64>() < q {
                *b ^= 1;
            }
        }
        if repetition_decode(&received)? != sent {
            errors += 1;
        }
    }
    Ok(errors as f64 / trials as f64)
}

/// Codebook of the most likely strings, in probability order.
#[derive(Debug, Clone)]
pub struct TypicalCodebook {
    n: usize,
    typical: Vec<BitString>,
    code_bits: usize,
    coverage: f64,
}

/// Largest string length the exhaustive codebook builder accepts.
pub const MAX_CODEBOOK_BITS: usize = 20;

/// Build the minimal probability-ordered codebook whose cumulative mass
/// reaches `coverage`. Ties in probability break lexicographically.
pub fn build_codebook(n: usize, p1: f64, coverage: f64) -> Result<TypicalCodebook> {
    if n == 0 || n > MAX_CODEBOOK_BITS {
        return Err(Error::Resource(format!(
            "codebook enumeration supports 1..={MAX_CODEBOOK_BITS} bits, got {n}"
        )));
    }
    if !(0.0..=1.0).contains(&p1) || !(0.0..=1.0).contains(&coverage) {
        return Err(Error::Domain("p1 and coverage must lie in [0,1]".into()));
    }
    let mut all: Vec<BitString> = (0..(1usize << n))
        .map(|v| BitString::from_index(v, n).expect("in range"))
        .collect();
    // Probability descending; equal-probability strings in lexicographic
    // (numeric) order. Probability depends only on the number of ones, so the
    // key is exact and the order deterministic.
    all.sort_by(|a, b| {
        b.probability(p1)
            .partial_cmp(&a.probability(p1))
            .expect("finite probabilities")
            .then_with(|| a.cmp(b))
    });
    let mut typical = Vec::new();
    let mut mass = 0.0;
    for s in all {
        if mass >= coverage && !typical.is_empty() {
            break;
        }
        mass += s.probability(p1);
        typical.push(s);
    }
    let code_bits = (typical.len() as f64).log2().ceil() as usize;
    Ok(TypicalCodebook {
        n,
        typical,
        code_bits,
        coverage: mass,
    })
}

impl TypicalCodebook {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn typical(&self) -> &[BitString] {
        &self.typical
    }

    pub fn code_bits(&self) -> usize {
        self.code_bits
    }

    /// Cumulative source probability actually covered.
    pub fn achieved_coverage(&self) -> f64 {
        self.coverage
    }

    /// Index of `s` in the codebook; atypical strings are signalled, never
    /// silently mapped.
    pub fn compress(&self, s: &BitString) -> Result<usize> {
        if s.len() != self.n {
            return Err(Error::Shape(format!(
                "string length {} does not match codebook length {}",
                s.len(),
                self.n
            )));
        }
        self.typical
            .iter()
            .position(|t| t == s)
            .ok_or_else(|| Error::Atypical(format!("string {s} is not in the codebook")))
    }

    pub fn expand(&self, index: usize) -> Result<BitString> {
        self.typical
            .get(index)
            .cloned()
            .ok_or_else(|| Error::Contract(format!("code index {index} out of range")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn typical_count_reference_values() {
        assert_eq!(typical_count(8, 1.0 / 8.0).unwrap().exact(), Some(8));
        assert_eq!(typical_count(40, 0.0).unwrap().exact(), Some(1));
        // Direct factorial evaluation: C(10,3) = 10!/(3!7!) = 120.
        assert_eq!(typical_count(10, 0.3).unwrap().exact(), Some(120));
    }

    #[test]
    fn typical_count_falls_back_to_log_domain() {
        let c = typical_count(200, 0.5).unwrap();
        assert!(c.exact().is_none());
        // C(200,100) = 9.0548514656e58, so log2 = 195.8505.
        assert!((c.log2() - 195.8505).abs() < 1e-3);
    }

    #[test]
    fn compression_bits_reference_values() {
        let b = compression_bits(8, 1.0 / 8.0).unwrap();
        assert_eq!(b.exact, 3.0);
        assert!((b.stirling / 8.0 - 0.5436).abs() < 1e-4);
        let silent = compression_bits(8, 0.0).unwrap();
        assert_eq!(silent.exact, 0.0);
    }

    #[test]
    fn stirling_converges_to_exact_per_symbol() {
        let per_symbol = |n: u64| {
            let b = compression_bits(n, 0.25).unwrap();
            (b.exact - b.stirling).abs() / n as f64
        };
        assert!(per_symbol(1000) < per_symbol(100));
        assert!(per_symbol(100) < per_symbol(20));
    }

    #[test]
    fn capacity_reference_values() {
        assert_eq!(channel_capacity(100, 0.0).unwrap(), 100.0);
        assert!(channel_capacity(100, 0.5).unwrap().abs() < 1e-12);
        assert!((channel_capacity(1000, 0.01).unwrap() - 919.21).abs() < 0.01);
    }

    #[test]
    fn capacity_and_error_bits_partition_the_channel() {
        for &q in &[0.0, 0.01, 0.11, 0.3, 0.5] {
            let total = channel_capacity(1000, q).unwrap() + error_pattern_bits(1000, q).unwrap();
            assert!((total - 1000.0).abs() < 1e-12);
        }
    }

    #[test]
    fn capacity_monotone_in_noise() {
        let caps: Vec<f64> = [0.0, 0.05, 0.1, 0.2, 0.35, 0.5]
            .iter()
            .map(|&q| channel_capacity(100, q).unwrap())
            .collect();
        assert!(caps.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn majority_vote_decoding() {
        let received = BitString::new(vec![1, 0, 1]).unwrap();
        assert_eq!(repetition_decode(&received).unwrap(), 1);
        let zeros = BitString::new(vec![0, 0, 0]).unwrap();
        assert_eq!(repetition_decode(&zeros).unwrap(), 0);
        for bit in [0u8, 1] {
            let coded = repetition_encode(bit, 5).unwrap();
            assert_eq!(repetition_decode(&coded).unwrap(), bit);
        }
    }

    #[test]
    fn even_repetition_is_rejected() {
        assert!(matches!(
            repetition_encode(1, 4).unwrap_err(),
            Error::Contract(_)
        ));
    }

    #[test]
    fn residual_error_enumeration() {
        let q = BscParams::new(0.01).unwrap();
        // 3 q^2 (1-q) + q^3 by direct enumeration of the error patterns.
        let exact = bsc_residual_error(3, q).unwrap();
        assert!((exact - 2.98e-4).abs() < 1e-7);
        assert_eq!(bsc_residual_error(3, BscParams::new(0.0).unwrap()).unwrap(), 0.0);
        let single = bsc_residual_error(1, BscParams::new(0.37).unwrap()).unwrap();
        assert!((single - 0.37).abs() < 1e-15);
    }

    #[test]
    fn residual_error_decreases_with_more_copies() {
        for &q in &[0.2, 0.1, 0.01] {
            let channel = BscParams::new(q).unwrap();
            let rates: Vec<f64> = [1usize, 3, 5, 7]
                .iter()
                .map(|&n| bsc_residual_error(n, channel).unwrap())
                .collect();
            assert!(rates.windows(2).all(|w| w[0] > w[1]), "q={q}: {rates:?}");
        }
    }

    #[test]
    fn simulation_tracks_exact_rate() {
        let channel = BscParams::new(0.1).unwrap();
        let exact = bsc_residual_error(3, channel).unwrap();
        let trials = 100_000u64;
        let empirical = bsc_simulate(3, channel, trials, 99).unwrap();
        let sigma = (exact * (1.0 - exact) / trials as f64).sqrt();
        assert!((empirical - exact).abs() < 4.0 * sigma);
    }

    #[test]
    fn simulation_is_reproducible() {
        let channel = BscParams::new(0.2).unwrap();
        let a = bsc_simulate(5, channel, 10_000, 7).unwrap();
        let b = bsc_simulate(5, channel, 10_000, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn simulation_rejects_zero_trials() {
        let channel = BscParams::new(0.2).unwrap();
        assert!(matches!(
            bsc_simulate(3, channel, 0, 7).unwrap_err(),
            Error::Contract(_)
        ));
    }

    #[test]
    fn codebook_contains_the_eight_single_one_strings() {
        // Coverage set to the joint mass of the all-zeros string and the
        // eight single-1 strings.
        let p1: f64 = 1.0 / 8.0;
        let p0 = 1.0 - p1;
        let coverage = p0.powi(8) + 8.0 * p1 * p0.powi(7);
        let book = build_codebook(8, p1, coverage).unwrap();
        assert_eq!(book.typical().len(), 9);
        // Most likely first: the all-zeros string.
        assert_eq!(book.typical()[0].count_ones(), 0);
        // Then every single-1 string, in lexicographic order.
        let singles: Vec<usize> = book.typical()[1..].iter().map(|s| s.to_index()).collect();
        assert_eq!(singles, vec![1, 2, 4, 8, 16, 32, 64, 128]);
    }

    #[test]
    fn full_coverage_codebook_is_the_whole_space() {
        let book = build_codebook(6, 0.3, 1.0).unwrap();
        assert_eq!(book.typical().len(), 64);
        assert_eq!(book.code_bits(), 6);
    }

    #[test]
    fn codebook_is_minimal() {
        let coverage = 0.9;
        let book = build_codebook(10, 0.2, coverage).unwrap();
        assert!(book.achieved_coverage() >= coverage);
        let without_last: f64 = book.typical()[..book.typical().len() - 1]
            .iter()
            .map(|s| s.probability(0.2))
            .sum();
        assert!(without_last < coverage);
    }

    #[test]
    fn compress_round_trips_and_signals_atypical() {
        let book = build_codebook(8, 0.1, 0.8).unwrap();
        for (i, s) in book.typical().iter().enumerate() {
            assert_eq!(book.compress(s).unwrap(), i);
            assert_eq!(&book.expand(i).unwrap(), s);
        }
        let all_ones = BitString::new(vec![1; 8]).unwrap();
        assert!(matches!(
            book.compress(&all_ones).unwrap_err(),
            Error::Atypical(_)
        ));
    }

    #[test]
    fn codebook_failure_rate_matches_coverage() {
        let coverage = 0.99;
        let p1 = 0.25;
        let book = build_codebook(12, p1, coverage).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        let trials = 20_000;
        let mut failures = 0;
        for _ in 0..trials {
            let bits: Vec<u8> = (0..12)
                .map(|_| if rng.random::<f64>() < p1 { 1 } else { 0 })
                .collect();
            if book.compress(&BitString::new(bits).unwrap()).is_err() {
                failures += 1;
            }
        }
        let rate = failures as f64 / trials as f64;
        let expected = 1.0 - book.achieved_coverage();
        let sigma = (expected * (1.0 - expected) / trials as f64).sqrt();
        assert!((rate - expected).abs() < 4.0 * sigma);
        assert!(rate <= 0.01 + 4.0 * sigma);
    }
}
