//! Classical capacity of a noisy quantum channel: the Holevo quantity and
//! the two-step erasure ledger that bounds it.
//!
//! Accessible information is deliberately not optimized over measurements;
//! the fixed-basis mutual information is exposed as a lower witness only.

use crate::cmatrix::CMatrix;
use crate::entropy::von_neumann;
use crate::error::{Error, Result};
use crate::qstate::{DensityOperator, Ensemble, EnsembleMember, PureState};

/// Signal states with the probabilities Alice sends them with.
#[derive(Debug, Clone)]
pub struct SignalEnsemble {
    items: Vec<(f64, DensityOperator)>,
}

impl SignalEnsemble {
    pub fn new(items: Vec<(f64, DensityOperator)>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::Validation("signal ensemble must be nonempty".into()));
        }
        if items.iter().any(|(p, _)| *p < 0.0 || !p.is_finite()) {
            return Err(Error::Validation("signal probabilities must be nonnegative".into()));
        }
        let total: f64 = items.iter().map(|(p, _)| p).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::Validation(format!(
                "signal probabilities sum to {total}, expected 1 within 1e-9"
            )));
        }
        let dims = items[0].1.dims().to_vec();
        if items.iter().any(|(_, rho)| rho.dims() != dims) {
            return Err(Error::Shape("signal states have mixed subsystem dimensions".into()));
        }
        Ok(Self { items })
    }

    pub fn of_pure(items: Vec<(f64, PureState)>) -> Result<Self> {
        let converted = items
            .into_iter()
            .map(|(p, psi)| Ok((p, psi.to_density()?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(converted)
    }

    pub fn items(&self) -> &[(f64, DensityOperator)] {
        &self.items
    }

    pub fn dims(&self) -> &[usize] {
        self.items[0].1.dims()
    }

    pub fn dim(&self) -> usize {
        self.items[0].1.dim()
    }

    /// The average state `sum_i p_i rho_i` Bob holds before reading anything.
    pub fn average_state(&self) -> Result<DensityOperator> {
        Ensemble::new(
            self.items
                .iter()
                .map(|(p, rho)| (*p, EnsembleMember::Mixed(rho.clone())))
                .collect(),
        )?
        .to_density()
    }
}

/// `S(sum p_i rho_i) - sum p_i S(rho_i)` in bits: the ceiling on classical
/// information per signal state.
pub fn holevo_bound(ensemble: &SignalEnsemble) -> Result<f64> {
    let mixture_entropy = von_neumann(&ensemble.average_state()?)?;
    let mut conditional = 0.0;
    for (p, rho) in ensemble.items() {
        conditional += p * von_neumann(rho)?;
    }
    Ok(mixture_entropy - conditional)
}

/// Double-indexed source: letter `(i, alpha)` occurs with probability
/// `outer[i] * inner[i][alpha]` and is encoded in the pure state
/// `states[i][alpha]`. The channel erases the alpha index, leaving Bob the
/// mixed signals `rho_i = sum_alpha inner[i][alpha] |phi><phi|`.
#[derive(Debug, Clone)]
pub struct CodedSource {
    outer: Vec<f64>,
    inner: Vec<Vec<f64>>,
    states: Vec<Vec<PureState>>,
}

impl CodedSource {
    pub fn new(outer: Vec<f64>, inner: Vec<Vec<f64>>, states: Vec<Vec<PureState>>) -> Result<Self> {
        if outer.is_empty() || outer.len() != inner.len() || outer.len() != states.len() {
            return Err(Error::Validation(
                "outer probabilities, inner lists and state lists must align".into(),
            ));
        }
        if outer.iter().any(|&p| p < 0.0 || !p.is_finite()) {
            return Err(Error::Validation("outer probabilities must be nonnegative".into()));
        }
        let total: f64 = outer.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::Validation(format!(
                "outer probabilities sum to {total}, expected 1 within 1e-9"
            )));
        }
        let dims = states[0]
            .first()
            .ok_or_else(|| Error::Validation("each letter needs at least one state".into()))?
            .dims()
            .to_vec();
        for (i, (r, phis)) in inner.iter().zip(&states).enumerate() {
            if r.is_empty() || r.len() != phis.len() {
                return Err(Error::Validation(format!(
                    "inner probabilities and states for letter {i} must align"
                )));
            }
            if r.iter().any(|&p| p < 0.0 || !p.is_finite()) {
                return Err(Error::Validation("inner probabilities must be nonnegative".into()));
            }
            let sum: f64 = r.iter().sum();
            if (sum - 1.0).abs() > 1e-9 {
                return Err(Error::Validation(format!(
                    "inner probabilities for letter {i} sum to {sum}, expected 1"
                )));
            }
            if phis.iter().any(|phi| phi.dims() != dims) {
                return Err(Error::Shape("all encoded states must share dimensions".into()));
            }
        }
        Ok(Self { outer, inner, states })
    }

    /// The signal ensemble Bob sees after the channel erased alpha.
    pub fn signal_ensemble(&self) -> Result<SignalEnsemble> {
        let mut items = Vec::with_capacity(self.outer.len());
        for i in 0..self.outer.len() {
            let members = self.inner[i]
                .iter()
                .zip(&self.states[i])
                .map(|(&r, phi)| (r, phi.clone()))
                .collect();
            let rho_i = Ensemble::of_pure(members)?.to_density()?;
            items.push((self.outer[i], rho_i));
        }
        SignalEnsemble::new(items)
    }
}

/// Entropies of the two-step erasure procedure, all in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoStepLedger {
    /// Step one: erase the alpha index within each letter, `sum_i p_i S(rho_i)`.
    pub ds1: f64,
    /// Direct erasure of everything, `S(rho)`.
    pub ds2: f64,
    /// What is left for Bob: `ds2 - ds1`.
    pub ds_bob: f64,
}

/// Work out both erasure routes for a coded source and check internally that
/// Bob's share equals the Holevo quantity of the induced ensemble.
pub fn two_step_ledger(source: &CodedSource) -> Result<TwoStepLedger> {
    let ensemble = source.signal_ensemble()?;
    let mut ds1 = 0.0;
    for (p, rho_i) in ensemble.items() {
        ds1 += p * von_neumann(rho_i)?;
    }
    let ds2 = von_neumann(&ensemble.average_state()?)?;
    let ds_bob = ds2 - ds1;
    let direct = holevo_bound(&ensemble)?;
    if (ds_bob - direct).abs() > 1e-9 {
        return Err(Error::Numerical(format!(
            "two-step ledger {ds_bob} disagrees with the direct bound {direct}"
        )));
    }
    Ok(TwoStepLedger { ds1, ds2, ds_bob })
}

/// Classical mutual information between the sent letter and the outcome of a
/// fixed complete projective measurement: `P(i,j) = p_i tr(P_j rho_i)`.
pub fn measurement_mutual_info(
    ensemble: &SignalEnsemble,
    projectors: &[CMatrix],
) -> Result<f64> {
    let d = ensemble.dim();
    if projectors.is_empty() {
        return Err(Error::Contract("measurement needs at least one projector".into()));
    }
    // Completeness and orthogonality within 1e-9.
    let mut sum = CMatrix::zeros(d, d)?;
    for p in projectors {
        if p.rows() != d || p.cols() != d {
            return Err(Error::Shape("projector dimension mismatch".into()));
        }
        sum = sum.add(p)?;
    }
    if sum.max_abs_diff(&CMatrix::identity(d)?) > 1e-9 {
        return Err(Error::Contract("projectors do not sum to the identity".into()));
    }
    for (a, pa) in projectors.iter().enumerate() {
        for (b, pb) in projectors.iter().enumerate() {
            let prod = pa.matmul(pb)?;
            let expected = if a == b { pa.clone() } else { CMatrix::zeros(d, d)? };
            if prod.max_abs_diff(&expected) > 1e-9 {
                return Err(Error::Contract(
                    "projectors are not orthogonal idempotents".into(),
                ));
            }
        }
    }

    let n_letters = ensemble.items().len();
    let n_outcomes = projectors.len();
    let mut joint = vec![vec![0.0; n_outcomes]; n_letters];
    for (i, (p, rho)) in ensemble.items().iter().enumerate() {
        for (j, proj) in projectors.iter().enumerate() {
            joint[i][j] = p * rho.measure_prob(proj)?;
        }
    }
    let letter_marginal: Vec<f64> = joint.iter().map(|row| row.iter().sum()).collect();
    let outcome_marginal: Vec<f64> = (0..n_outcomes)
        .map(|j| joint.iter().map(|row| row[j]).sum())
        .collect();
    let mut mi = 0.0;
    for i in 0..n_letters {
        for j in 0..n_outcomes {
            let pij = joint[i][j];
            if pij > 0.0 {
                mi += pij * (pij / (letter_marginal[i] * outcome_marginal[j])).log2();
            }
        }
    }
    Ok(mi)
}
