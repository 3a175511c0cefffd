//! Entanglement phenomena: rotated-basis correlation experiments, an
//! entangling evolution, the cloning entropy argument, single-pair filtering
//! distillation and its efficiency bound.

use crate::cmatrix::{CMatrix, CVector, Complex};
use crate::entropy::von_neumann;
use crate::error::{Error, Result};
use crate::qstate::{DensityOperator, Observable, PureState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// A polarizer rotated by `angle` from the H/V axes: |X> = cos|H> + sin|V>,
/// |Y> = -sin|H> + cos|V>, with |H> = (1,0) and |V> = (0,1).
#[derive(Debug, Clone)]
pub struct PolarizationBasis {
    angle: f64,
    x: CVector,
    y: CVector,
}

impl PolarizationBasis {
    pub fn new(angle: f64) -> Result<Self> {
        if !angle.is_finite() {
            return Err(Error::Domain("angle must be finite".into()));
        }
        let (s, c) = angle.sin_cos();
        Ok(Self {
            angle,
            x: CVector::from_real(&[c, s])?,
            y: CVector::from_real(&[-s, c])?,
        })
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn x_state(&self) -> &CVector {
        &self.x
    }

    pub fn y_state(&self) -> &CVector {
        &self.y
    }
}

/// Probabilities of finding the pair anti-correlated in the rotated basis:
/// `(tr((P_X ⊗ P_Y) rho), tr((P_Y ⊗ P_X) rho))`.
pub fn anticorrelation_probs(
    rho: &DensityOperator,
    basis: &PolarizationBasis,
) -> Result<(f64, f64)> {
    if rho.dims() != [2, 2] {
        return Err(Error::Shape("state must be a pair of qubits".into()));
    }
    let px = basis.x_state().projector()?;
    let py = basis.y_state().projector()?;
    let p_xy = rho.measure_prob(&px.tensor(&py)?)?;
    let p_yx = rho.measure_prob(&py.tensor(&px)?)?;
    Ok((p_xy, p_yx))
}

/// The worked entangling evolution: the uniform product state under the
/// diagonal Hamiltonian diag(1,1,1,-1) for a quarter period.
#[derive(Debug, Clone)]
pub struct EntanglingDemo {
    pub initial: PureState,
    pub final_state: PureState,
    pub schmidt_rank_initial: usize,
    pub schmidt_rank_final: usize,
}

pub fn entangling_demo() -> Result<EntanglingDemo> {
    let initial = PureState::new(CVector::from_real(&[0.5, 0.5, 0.5, 0.5])?, &[2, 2])?;
    let hamiltonian = Observable::new(CMatrix::diagonal(&[1.0, 1.0, 1.0, -1.0])?, &[2, 2])?;
    let final_state = initial.evolve(&hamiltonian, std::f64::consts::FRAC_PI_2, 1.0)?;
    let schmidt_rank_initial = initial.schmidt_rank(1e-9)?;
    let schmidt_rank_final = final_state.schmidt_rank(1e-9)?;
    Ok(EntanglingDemo {
        initial,
        final_state,
        schmidt_rank_initial,
        schmidt_rank_final,
    })
}

/// Largest copy count the dense path accepts.
pub const MAX_CLONE_FULL: u32 = 10;
/// Largest copy count the Gram-matrix shortcut accepts.
pub const MAX_CLONE_GRAM: u32 = 60;

fn up_state() -> Result<CVector> {
    CVector::basis(2, 0)
}

fn plus_state() -> Result<CVector> {
    CVector::from_real(&[1.0, 1.0])?.normalized()
}

/// The materialized 2^k x 2^k mixture of k copies of |up> and k copies of
/// (|up>+|down>)/sqrt(2), each with weight one half.
pub fn cloning_mixture(copies: u32) -> Result<CMatrix> {
    if copies == 0 || copies > MAX_CLONE_FULL {
        return Err(Error::Resource(format!(
            "dense path supports 1..={MAX_CLONE_FULL} copies, got {copies}"
        )));
    }
    let mut a = up_state()?;
    let mut b = plus_state()?;
    for _ in 1..copies {
        a = a.tensor(&up_state()?)?;
        b = b.tensor(&plus_state()?)?;
    }
    a.projector()?
        .scale(Complex::new(0.5, 0.0))
        .add(&b.projector()?.scale(Complex::new(0.5, 0.0)))
}

/// Entropy of the cloning mixture from the dense tensor-power matrix.
///
/// A two-term mixture of pure states has rank at most two, so its spectrum
/// is fixed by the dense moments tr(rho) and tr(rho^2); the latter is the
/// squared Frobenius mass of the materialized matrix. This stays exact at
/// sizes where a dense eigensolve would be prohibitive, and the eigensolver
/// route cross-checks it at small k (see tests).
pub fn cloning_entropy_full(copies: u32) -> Result<f64> {
    let mix = cloning_mixture(copies)?;
    let t = mix.trace()?.re;
    let f = mix.frobenius_norm().powi(2);
    let spread = (2.0 * f - t * t).max(0.0).sqrt();
    let lambda = [(t + spread) / 2.0, (t - spread) / 2.0];
    let mut bits = 0.0;
    for l in lambda {
        if l > 0.0 {
            bits -= l * l.log2();
        }
    }
    Ok(bits)
}

/// Same entropy through the 2x2 Gram matrix: the mixture of two pure states
/// with overlap c has eigenvalues (1 ± |c|)/2, and here |c| = 2^(-k/2).
pub fn cloning_entropy_gram(copies: u32) -> Result<f64> {
    if copies == 0 || copies > MAX_CLONE_GRAM {
        return Err(Error::Resource(format!(
            "Gram path supports 1..={MAX_CLONE_GRAM} copies, got {copies}"
        )));
    }
    let overlap = up_state()?.inner(&plus_state()?)?;
    let c = overlap.norm().powi(copies as i32);
    let gram = CMatrix::from_real_rows(&[vec![0.5, 0.5 * c], vec![0.5 * c, 0.5]])?;
    let eig = gram.hermitian_eig()?;
    let mut bits = 0.0;
    for &lambda in &eig.values {
        if lambda > 0.0 {
            bits -= lambda * lambda.log2();
        }
    }
    Ok(bits)
}

/// Information content of k clones of the two-letter encoding. Every extra
/// copy makes the letters more distinguishable, so the value climbs toward
/// 1 bit; this growth is what rules out a cloning machine.
pub fn no_cloning_demo(copies: u32) -> Result<f64> {
    if copies <= MAX_CLONE_FULL {
        cloning_entropy_full(copies)
    } else {
        cloning_entropy_gram(copies)
    }
}

/// One branch of the filtering measurement.
#[derive(Debug, Clone)]
pub struct DistillationOutcome {
    pub success: bool,
    pub probability: f64,
    pub post_state: PureState,
}

/// Reduce complex Schmidt amplitudes to the real, ordered convention the
/// filtering rotation is written in: phases are absorbed into local basis
/// redefinitions, which cannot change any entanglement property.
pub fn normalize_amplitudes(alpha: Complex, beta: Complex) -> Result<(f64, f64)> {
    let (a, b) = (alpha.norm(), beta.norm());
    if (a * a + b * b - 1.0).abs() > 1e-9 {
        return Err(Error::Contract(format!(
            "amplitudes must satisfy |alpha|^2 + |beta|^2 = 1, got {}",
            a * a + b * b
        )));
    }
    if b == 0.0 {
        return Err(Error::Contract("beta must be nonzero".into()));
    }
    if b > a {
        return Err(Error::Contract(
            "convention requires alpha >= beta; relabel the local bases first".into(),
        ));
    }
    Ok((a, b))
}

/// The filtering rotation on the sender's pair, written in the
/// {|00>, |01>, |10>, |11>} basis of (ancilla, kept qubit).
pub fn distillation_unitary(alpha: f64, beta: f64) -> Result<CMatrix> {
    let (alpha, beta) = normalize_amplitudes(Complex::new(alpha, 0.0), Complex::new(beta, 0.0))?;
    let ratio = beta / alpha;
    let gap = (alpha * alpha - beta * beta).sqrt() / alpha;
    CMatrix::from_real_rows(&[
        vec![ratio, 0.0, -gap, 0.0],
        vec![0.0, 1.0, 0.0, 0.0],
        vec![gap, 0.0, ratio, 0.0],
        vec![0.0, 0.0, 0.0, 1.0],
    ])
}

/// Single-pair filtering distillation of `alpha|00> + beta|11>`.
///
/// The sender adds an ancilla in |0>, rotates her pair with the filtering
/// unitary and measures the ancilla. Outcome 0 (probability `2 beta^2`)
/// leaves the pair maximally entangled; outcome 1 leaves the product |00>.
/// Both branches are computed from the full three-qubit simulation.
pub fn procrustean_distill(alpha: f64, beta: f64) -> Result<(DistillationOutcome, DistillationOutcome)> {
    let (alpha, beta) = normalize_amplitudes(Complex::new(alpha, 0.0), Complex::new(beta, 0.0))?;
    // |psi_tot> = alpha |0 0 0> + beta |0 1 1> over (ancilla, A, B).
    let mut total = vec![Complex::ZERO; 8];
    total[0b000] = Complex::new(alpha, 0.0);
    total[0b011] = Complex::new(beta, 0.0);
    let psi_tot = CVector::new(total)?;

    let u = distillation_unitary(alpha, beta)?;
    let u_full = u.tensor(&CMatrix::identity(2)?)?;
    let rotated = u_full.apply(&psi_tot)?;

    // Split on the ancilla (most significant qubit).
    let mut branches = Vec::with_capacity(2);
    for outcome in 0..2usize {
        let offset = outcome << 2;
        let component: Vec<Complex> = (0..4).map(|i| rotated.get(offset + i)).collect();
        let probability: f64 = component.iter().map(|z| z.norm_sqr()).sum();
        let post_state = if probability > 1e-12 {
            let scale = probability.sqrt();
            PureState::new(
                CVector::new(component.iter().map(|z| z / scale).collect())?,
                &[2, 2],
            )?
        } else if outcome == 0 {
            // Degenerate branch never occurs; report the nominal target.
            let s = std::f64::consts::FRAC_1_SQRT_2;
            PureState::new(CVector::from_real(&[s, 0.0, 0.0, s])?, &[2, 2])?
        } else {
            PureState::qubit_basis(2, 0)?
        };
        branches.push(DistillationOutcome {
            success: outcome == 0,
            probability,
            post_state,
        });
    }
    let failure = branches.pop().expect("two branches");
    let success = branches.pop().expect("two branches");
    Ok((success, failure))
}

/// Seeded sampling mode: fraction of successful filtering attempts.
pub fn procrustean_sample(alpha: f64, beta: f64, trials: u64, seed: u64) -> Result<f64> {
    if trials == 0 {
        return Err(Error::Contract("sampling needs at least one trial".into()));
    }
    let (success, _) = procrustean_distill(alpha, beta)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    for _ in 0..trials {
        if rng.random::<f64>() < success.probability {
            hits += 1;
        }
    }
    Ok(hits as f64 / trials as f64)
}

/// Entanglement of a bipartite pure state in ebits: the entropy of either
/// reduced state.
pub fn entanglement_entropy(psi: &PureState) -> Result<f64> {
    if psi.dims().len() != 2 {
        return Err(Error::Shape("entanglement entropy needs a bipartite state".into()));
    }
    von_neumann(&psi.to_density()?.reduced(&[0])?)
}

/// The erasure-principle ceiling on distillation efficiency:
/// `p <= S(rho_A) / log2(N)`, capped at 1.
pub fn distill_bound(psi: &PureState, n_outcomes: u32) -> Result<f64> {
    if n_outcomes < 2 {
        return Err(Error::Contract("bound needs at least two outcomes".into()));
    }
    let s = entanglement_entropy(psi)?;
    Ok((s / (n_outcomes as f64).log2()).min(1.0))
}
