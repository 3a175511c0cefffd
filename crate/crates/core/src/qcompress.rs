//! Toy-scale block compression of a qubit source: typical-subspace
//! construction, the basis-permutation compressor, round-trip fidelity and
//! the erasure-ledger rate bound.
//!
//! States are compressed in the eigenbasis of the single-qubit source. The
//! permutation sends the k-th most likely basis string to index k, so every
//! typical string ends up with its leading `n - m` qubits in |0>, the block
//! that gets thrown away. State vectors stay vectors throughout: the
//! permutation is applied as an index map and the 2^n x 2^n matrix is never
//! materialized (except on demand for small n, to check unitarity).

use crate::classical::BitString;
use crate::cmatrix::{CMatrix, CVector, Complex};
use crate::entropy::{von_neumann, LN_2};
use crate::error::{Error, Result};
use crate::qstate::{DensityOperator, Ensemble, PureState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// Largest block length the compressor accepts (state vectors of 2^16).
pub const MAX_BLOCK_QUBITS: usize = 16;

/// A single-qubit source in diagonal form: eigenprobabilities sorted
/// `p0 >= p1` with the matching eigenbasis.
#[derive(Debug, Clone)]
pub struct SourceSpec {
    rho: DensityOperator,
    /// Columns are the eigenvectors for p0 and p1 respectively.
    eigenbasis: CMatrix,
    p0: f64,
    p1: f64,
}

impl SourceSpec {
    pub fn from_density(rho: DensityOperator) -> Result<Self> {
        if rho.dim() != 2 {
            return Err(Error::Shape("source must be a single qubit".into()));
        }
        let eig = rho.matrix().hermitian_eig()?;
        let p0 = eig.values[0].clamp(0.0, 1.0);
        let p1 = eig.values[1].clamp(0.0, 1.0);
        Ok(Self {
            rho,
            eigenbasis: eig.vectors,
            p0,
            p1,
        })
    }

    /// Probabilities of an orthogonal source with the given ground-state
    /// weight, in the computational basis.
    pub fn from_p0(p0: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p0) || !p0.is_finite() {
            return Err(Error::Domain(format!("p0 = {p0} outside [0,1]")));
        }
        let (hi, lo) = if p0 >= 0.5 { (p0, 1.0 - p0) } else { (1.0 - p0, p0) };
        let rho = DensityOperator::new(CMatrix::diagonal(&[hi, lo])?, &[2])?;
        Self::from_density(rho)
    }

    pub fn rho(&self) -> &DensityOperator {
        &self.rho
    }

    pub fn eigenbasis(&self) -> &CMatrix {
        &self.eigenbasis
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    /// Probability of an n-bit eigenbasis string under this source.
    pub fn string_probability(&self, s: &BitString) -> f64 {
        let ones = s.count_ones() as i32;
        let zeros = (s.len() - ones as usize) as i32;
        self.p0.powi(zeros) * self.p1.powi(ones)
    }
}

/// Diagonalize an arbitrary single-qubit ensemble; non-orthogonal
/// preparations reduce to the orthogonal case in the eigenbasis.
pub fn diagonalize_source(ensemble: &Ensemble) -> Result<SourceSpec> {
    let rho = ensemble.to_density()?;
    SourceSpec::from_density(rho)
}

/// All n-bit strings sorted by source probability, descending, lexicographic
/// tie-break, truncated to `max_count`.
pub fn typical_strings(spec: &SourceSpec, n: usize, max_count: usize) -> Result<Vec<BitString>> {
    if n == 0 || n > MAX_BLOCK_QUBITS {
        return Err(Error::Resource(format!(
            "block length must be 1..={MAX_BLOCK_QUBITS}, got {n}"
        )));
    }
    let mut all: Vec<BitString> = (0..(1usize << n))
        .map(|v| BitString::from_index(v, n).expect("in range"))
        .collect();
    // Probability depends only on the number of ones; with p0 >= p1 the sort
    // is by weight then lexicographic, both exact.
    all.sort_by(|a, b| {
        spec.string_probability(b)
            .partial_cmp(&spec.string_probability(a))
            .expect("finite probabilities")
            .then_with(|| a.cmp(b))
    });
    all.truncate(max_count);
    Ok(all)
}

/// The typical-subspace compressor for blocks of `n` source qubits into `m`.
#[derive(Debug, Clone)]
pub struct CompressionScheme {
    n: usize,
    m: usize,
    typical: Vec<BitString>,
    /// perm[original basis index] = permuted basis index.
    perm: Vec<usize>,
    inv_perm: Vec<usize>,
}

/// Build the scheme: typical strings map onto the first 2^m basis indices in
/// probability order; everything else fills the remaining slots in ascending
/// order, which keeps the permutation a bijection.
pub fn build_scheme(spec: &SourceSpec, n: usize, m: usize) -> Result<CompressionScheme> {
    if m >= n {
        return Err(Error::Contract(format!(
            "compressed length {m} must be smaller than block length {n}"
        )));
    }
    if m == 0 {
        return Err(Error::Contract("compressed length must be positive".into()));
    }
    if n > MAX_BLOCK_QUBITS {
        return Err(Error::Resource(format!(
            "block length must be at most {MAX_BLOCK_QUBITS}, got {n}"
        )));
    }
    let typical = typical_strings(spec, n, 1usize << m)?;
    let dim = 1usize << n;
    let mut perm = vec![usize::MAX; dim];
    for (k, s) in typical.iter().enumerate() {
        perm[s.to_index()] = k;
    }
    let mut next = typical.len();
    for slot in perm.iter_mut() {
        if *slot == usize::MAX {
            *slot = next;
            next += 1;
        }
    }
    debug_assert_eq!(next, dim);
    let mut inv_perm = vec![0usize; dim];
    for (from, &to) in perm.iter().enumerate() {
        inv_perm[to] = from;
    }
    Ok(CompressionScheme {
        n,
        m,
        typical,
        perm,
        inv_perm,
    })
}

/// Output of a compression attempt: the trailing-qubit state that survived
/// the projection and the probability of that branch.
#[derive(Debug, Clone)]
pub struct Compressed {
    pub state: PureState,
    pub success_prob: f64,
}

impl CompressionScheme {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn typical(&self) -> &[BitString] {
        &self.typical
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Permute the basis, project the leading `n - m` qubits onto |0...0>,
    /// renormalize what survives. A state fully outside the typical span is
    /// a total failure and is signalled, not returned as garbage.
    pub fn compress(&self, psi: &PureState) -> Result<Compressed> {
        if psi.dims() != vec![2; self.n] {
            return Err(Error::Shape(format!(
                "state is not a block of {} qubits",
                self.n
            )));
        }
        let dim = 1usize << self.n;
        let mut permuted = vec![Complex::ZERO; dim];
        for (from, &to) in self.perm.iter().enumerate() {
            permuted[to] = psi.vector().get(from);
        }
        let keep = 1usize << self.m;
        let success_prob: f64 = permuted[..keep].iter().map(|z| z.norm_sqr()).sum();
        if success_prob < 1e-12 {
            return Err(Error::Atypical(
                "state has no component in the typical subspace".into(),
            ));
        }
        let scale = success_prob.sqrt();
        let data: Vec<Complex> = permuted[..keep].iter().map(|z| z / scale).collect();
        let state = PureState::new(CVector::new(data)?, &vec![2; self.m])?;
        Ok(Compressed {
            state,
            success_prob: success_prob.min(1.0),
        })
    }

    /// Prepend `n - m` qubits in |0>, undo the permutation.
    pub fn decompress(&self, compressed: &PureState) -> Result<PureState> {
        if compressed.dims() != vec![2; self.m] {
            return Err(Error::Shape(format!(
                "compressed state is not a block of {} qubits",
                self.m
            )));
        }
        let dim = 1usize << self.n;
        let mut data = vec![Complex::ZERO; dim];
        for to in 0..(1usize << self.m) {
            data[self.inv_perm[to]] = compressed.vector().get(to);
        }
        PureState::new(CVector::new(data)?, &vec![2; self.n])
    }

    /// Materialize the permutation as a 0/1 matrix (small n only); columns
    /// are images of basis vectors, so the result is exactly unitary.
    pub fn permutation_matrix(&self) -> Result<CMatrix> {
        let dim = 1usize << self.n;
        let mut u = CMatrix::zeros(dim, dim)?;
        for (from, &to) in self.perm.iter().enumerate() {
            u.set(to, from, Complex::ONE);
        }
        Ok(u)
    }
}

/// Probability that a source block lands in the typical subspace.
pub fn block_success_prob(spec: &SourceSpec, n: usize, m: usize) -> Result<f64> {
    let scheme = build_scheme(spec, n, m)?;
    Ok(scheme
        .typical()
        .iter()
        .map(|s| spec.string_probability(s))
        .sum())
}

/// Large-block compression rate in qubits per source qubit: the von Neumann
/// entropy of the source, which for a diagonal source is `H(p0)`.
pub fn asymptotic_rate(spec: &SourceSpec) -> Result<f64> {
    von_neumann(spec.rho())
}

/// The floor no compressor can beat: the entropy of erasure per qubit.
pub fn landauer_rate_bound(spec: &SourceSpec) -> Result<f64> {
    asymptotic_rate(spec)
}

/// The reductio behind the bound: a hypothetical rate `S - epsilon` implies
/// erasing `n (S - epsilon)` maximally mixed qubits, generating less total
/// entropy than erasing the source directly, which the erasure principle
/// forbids.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateBoundCheck {
    /// Entropy of erasing the uncompressed block, units of k.
    pub required_erasure: f64,
    /// Entropy of erasing the hypothetically compressed block, units of k.
    pub implied_erasure: f64,
    /// True when the hypothetical rate contradicts the erasure principle.
    pub contradiction: bool,
}

pub fn rate_bound_reductio(spec: &SourceSpec, n: usize, epsilon: f64) -> Result<RateBoundCheck> {
    if epsilon < 0.0 {
        return Err(Error::Domain("epsilon must be nonnegative".into()));
    }
    let s = von_neumann(spec.rho())?;
    let required_erasure = n as f64 * s * LN_2;
    // Each compressed qubit is maximally mixed, erasing for ln 2 apiece.
    let implied_erasure = n as f64 * (s - epsilon).max(0.0) * LN_2;
    Ok(RateBoundCheck {
        required_erasure,
        implied_erasure,
        contradiction: implied_erasure < required_erasure,
    })
}

/// Sample source blocks in the eigenbasis and report the fraction that
/// compress without loss.
pub fn empirical_success_rate(
    spec: &SourceSpec,
    n: usize,
    m: usize,
    trials: u64,
    seed: u64,
) -> Result<f64> {
    if trials == 0 {
        return Err(Error::Contract("sampling needs at least one trial".into()));
    }
    let scheme = build_scheme(spec, n, m)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut successes = 0u64;
    for _ in 0..trials {
        let mut index = 0usize;
        for _ in 0..n {
            index <<= 1;
            if rng.random::<f64>() < spec.p1() {
                index |= 1;
            }
        }
        let block = PureState::qubit_basis(n, index)?;
        match scheme.compress(&block) {
            Ok(c) if c.success_prob > 0.5 => successes += 1,
            _ => {}
        }
    }
    Ok(successes as f64 / trials as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec95() -> SourceSpec {
        SourceSpec::from_p0(0.95).unwrap()
    }

    #[test]
    fn diagonalize_orthogonal_source() {
        let zero = PureState::single(CVector::basis(2, 0).unwrap()).unwrap();
        let one = PureState::single(CVector::basis(2, 1).unwrap()).unwrap();
        let e = Ensemble::of_pure(vec![(0.95, zero), (0.05, one)]).unwrap();
        let spec = diagonalize_source(&e).unwrap();
        assert!((spec.p0() - 0.95).abs() < 1e-12);
        assert!((spec.p1() - 0.05).abs() < 1e-12);
    }

    #[test]
    fn diagonalize_pure_source() {
        let psi = PureState::single(
            CVector::from_real(&[3.0, 4.0]).unwrap().normalized().unwrap(),
        )
        .unwrap();
        let e = Ensemble::of_pure(vec![(1.0, psi)]).unwrap();
        let spec = diagonalize_source(&e).unwrap();
        assert!((spec.p0() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn diagonalize_non_orthogonal_source() {
        let up = PureState::single(CVector::basis(2, 0).unwrap()).unwrap();
        let plus = PureState::single(
            CVector::from_real(&[1.0, 1.0]).unwrap().normalized().unwrap(),
        )
        .unwrap();
        let e = Ensemble::of_pure(vec![(0.5, up), (0.5, plus)]).unwrap();
        let spec = diagonalize_source(&e).unwrap();
        // Quadratic oracle: eigenvalues of [[0.75, 0.25], [0.25, 0.25]].
        let disc = (1.0_f64 - 4.0 * (0.75 * 0.25 - 0.0625)).sqrt();
        assert!((spec.p0() - (1.0 + disc) / 2.0).abs() < 1e-12);
        assert!((spec.p1() - (1.0 - disc) / 2.0).abs() < 1e-12);
        assert!((spec.p0() - 0.85355).abs() < 1e-4);
    }

    #[test]
    fn typical_strings_of_the_seven_qubit_example() {
        let list = typical_strings(&spec95(), 7, 8).unwrap();
        assert_eq!(list.len(), 8);
        assert_eq!(list[0].to_index(), 0); // all zeros first
                                           // then the seven single-1 strings in lexicographic order
        let singles: Vec<usize> = list[1..].iter().map(|s| s.to_index()).collect();
        assert_eq!(singles, vec![1, 2, 4, 8, 16, 32, 64]);
    }

    #[test]
    fn deterministic_source_has_one_typical_string() {
        let spec = SourceSpec::from_p0(1.0).unwrap();
        let list = typical_strings(&spec, 5, 8).unwrap();
        assert_eq!(list[0].to_index(), 0);
        // All remaining strings tie at probability zero; order is lexicographic.
        assert_eq!(list[1].to_index(), 1);
    }

    #[test]
    fn typical_order_matches_exhaustive_probability_sort() {
        let spec = SourceSpec::from_p0(0.6).unwrap();
        let list = typical_strings(&spec, 3, 8).unwrap();
        let mut oracle: Vec<(f64, usize)> = (0..8usize)
            .map(|v| {
                let s = BitString::from_index(v, 3).unwrap();
                (spec.string_probability(&s), v)
            })
            .collect();
        oracle.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
        let got: Vec<usize> = list.iter().map(|s| s.to_index()).collect();
        let want: Vec<usize> = oracle.iter().map(|&(_, v)| v).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn scheme_reproduces_the_eight_reference_mappings() {
        let scheme = build_scheme(&spec95(), 7, 3).unwrap();
        // The typical strings (all-zeros and the single-1 strings from the
        // least significant position up) map onto indices 0..8, i.e. onto
        // |0000 b2 b1 b0>.
        let expected: [(usize, usize); 8] = [
            (0b0000000, 0),
            (0b0000001, 1),
            (0b0000010, 2),
            (0b0000100, 3),
            (0b0001000, 4),
            (0b0010000, 5),
            (0b0100000, 6),
            (0b1000000, 7),
        ];
        for (from, to) in expected {
            assert_eq!(scheme.perm()[from], to, "string {from:b}");
        }
    }

    #[test]
    fn half_block_scheme_is_valid() {
        let spec = SourceSpec::from_p0(0.9).unwrap();
        let scheme = build_scheme(&spec, 4, 3).unwrap();
        assert_eq!(scheme.typical().len(), 8);
    }

    #[test]
    fn no_compression_is_a_contract_error() {
        assert!(matches!(
            build_scheme(&spec95(), 3, 3).unwrap_err(),
            Error::Contract(_)
        ));
    }

    #[test]
    fn permutation_is_a_bijection_for_all_small_schemes() {
        for n in 2..=6usize {
            for m in 1..n {
                let scheme = build_scheme(&spec95(), n, m).unwrap();
                let mut seen = vec![false; 1 << n];
                for &to in scheme.perm() {
                    assert!(!seen[to]);
                    seen[to] = true;
                }
                assert!(seen.iter().all(|&s| s));
            }
        }
    }

    #[test]
    fn permutation_matrix_is_exactly_unitary() {
        let scheme = build_scheme(&spec95(), 7, 3).unwrap();
        assert!(scheme.permutation_matrix().unwrap().is_unitary_within(1e-12));
    }

    #[test]
    fn superposition_of_typical_strings_compresses_losslessly() {
        let scheme = build_scheme(&spec95(), 7, 3).unwrap();
        // alpha |0000000> + beta |0000001>
        let (alpha, beta) = (0.8, 0.6);
        let mut data = vec![Complex::ZERO; 128];
        data[0] = Complex::new(alpha, 0.0);
        data[1] = Complex::new(beta, 0.0);
        let psi = PureState::new(CVector::new(data).unwrap(), &[2; 7]).unwrap();
        let compressed = scheme.compress(&psi).unwrap();
        assert!((compressed.success_prob - 1.0).abs() < 1e-12);
        assert!((compressed.state.vector().get(0).re - alpha).abs() < 1e-12);
        assert!((compressed.state.vector().get(1).re - beta).abs() < 1e-12);
        let back = scheme.decompress(&compressed.state).unwrap();
        assert!((psi.fidelity(&back).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn typical_basis_string_maps_to_its_index_state() {
        let scheme = build_scheme(&spec95(), 7, 3).unwrap();
        let block = PureState::qubit_basis(7, 0b0001000).unwrap();
        let compressed = scheme.compress(&block).unwrap();
        assert!((compressed.success_prob - 1.0).abs() < 1e-12);
        assert!((compressed.state.vector().get(4).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn atypical_basis_string_fails_totally() {
        let scheme = build_scheme(&spec95(), 7, 3).unwrap();
        let two_ones = PureState::qubit_basis(7, 0b0000011).unwrap();
        assert!(matches!(
            scheme.compress(&two_ones).unwrap_err(),
            Error::Atypical(_)
        ));
    }

    #[test]
    fn partially_typical_superpositions_report_the_projection_weight() {
        let scheme = build_scheme(&spec95(), 7, 3).unwrap();
        let mut data = vec![Complex::ZERO; 128];
        data[0] = Complex::new((2.0 / 3.0_f64).sqrt(), 0.0);
        data[0b0000011] = Complex::new((1.0 / 3.0_f64).sqrt(), 0.0);
        let psi = PureState::new(CVector::new(data).unwrap(), &[2; 7]).unwrap();
        let compressed = scheme.compress(&psi).unwrap();
        assert!((compressed.success_prob - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn block_success_probability_reference_value() {
        let p = block_success_prob(&spec95(), 7, 3).unwrap();
        let oracle = 0.95_f64.powi(7) + 7.0 * 0.95_f64.powi(6) * 0.05;
        assert!((p - oracle).abs() < 1e-12);
        assert!((p - 0.95562).abs() < 1e-4);
    }

    #[test]
    fn block_success_is_nondecreasing_in_compressed_length() {
        let spec = SourceSpec::from_p0(0.9).unwrap();
        let probs: Vec<f64> = (1..6)
            .map(|m| block_success_prob(&spec, 6, m).unwrap())
            .collect();
        assert!(probs.windows(2).all(|w| w[0] <= w[1] + 1e-15));
    }

    #[test]
    fn asymptotic_rate_reference_values() {
        assert!((asymptotic_rate(&spec95()).unwrap() - 0.2864).abs() < 1e-4);
        let h95 = crate::entropy::binary_entropy(0.95).unwrap();
        assert!((asymptotic_rate(&spec95()).unwrap() - h95).abs() < 1e-12);
        let pure = SourceSpec::from_p0(1.0).unwrap();
        assert!(asymptotic_rate(&pure).unwrap().abs() < 1e-9);
        let mixed = SourceSpec::from_p0(0.5).unwrap();
        assert!((landauer_rate_bound(&mixed).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn beating_the_bound_contradicts_the_erasure_ledger() {
        let check = rate_bound_reductio(&spec95(), 10, 0.01).unwrap();
        assert!(check.contradiction);
        assert!(check.implied_erasure < check.required_erasure);
        let no_cheat = rate_bound_reductio(&spec95(), 10, 0.0).unwrap();
        assert!(!no_cheat.contradiction);
    }

    #[test]
    fn empirical_success_tracks_the_exact_block_probability() {
        let exact = block_success_prob(&spec95(), 7, 3).unwrap();
        let trials = 10_000u64;
        let rate = empirical_success_rate(&spec95(), 7, 3, trials, 4242).unwrap();
        let sigma = (exact * (1.0 - exact) / trials as f64).sqrt();
        assert!((rate - exact).abs() < 4.0 * sigma);
    }

    #[test]
    fn random_typical_superpositions_round_trip_with_unit_fidelity() {
        let scheme = build_scheme(&spec95(), 8, 4).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(77);
        for _ in 0..100 {
            let mut data = vec![Complex::ZERO; 256];
            for s in scheme.typical() {
                data[s.to_index()] =
                    Complex::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
            }
            let psi = PureState::new(
                CVector::new(data).unwrap().normalized().unwrap(),
                &[2; 8],
            )
            .unwrap();
            let compressed = scheme.compress(&psi).unwrap();
            assert!((compressed.success_prob - 1.0).abs() < 1e-9);
            let back = scheme.decompress(&compressed.state).unwrap();
            assert!((psi.fidelity(&back).unwrap() - 1.0).abs() < 1e-9);
        }
    }
}
