//! Classical and quantum entropy functionals.
//!
//! Information quantities are reported in bits; thermodynamic quantities in
//! units of k (dimensionless entropy, bits times ln 2). The convention
//! `0 log 0 = 0` applies everywhere, and eigenvalues in [-1e-9, 0) coming out
//! of the eigensolver are clamped to zero before the logarithm.

use crate::cmatrix::{CMatrix, LOG_EIGENVALUE_CUTOFF};
use crate::error::{Error, Result};
use crate::qstate::DensityOperator;

pub const LN_2: f64 = std::f64::consts::LN_2;

/// Validated probability distribution.
#[derive(Debug, Clone)]
pub struct ProbDist {
    p: Vec<f64>,
}

impl ProbDist {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::Validation("distribution must be nonempty".into()));
        }
        if p.iter().any(|&x| x < 0.0 || !x.is_finite()) {
            return Err(Error::Validation("probabilities must be finite and nonnegative".into()));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::Validation(format!(
                "probabilities sum to {total}, expected 1 within 1e-9"
            )));
        }
        Ok(Self { p })
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.p
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }
}

/// An information quantity in bits with an optional thermodynamic reading in
/// units of k (= bits * ln 2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyValue {
    pub bits: f64,
    pub thermo: Option<f64>,
}

impl EntropyValue {
    pub fn from_bits(bits: f64) -> Self {
        Self { bits, thermo: None }
    }

    /// Attach the thermodynamic conversion (multiply by k ln 2; here k = 1).
    pub fn with_thermo(self) -> Self {
        Self {
            bits: self.bits,
            thermo: Some(self.bits * LN_2),
        }
    }
}

/// `log2(1/p)`: how surprising an event of probability `p` is.
pub fn surprise(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) || p == 0.0 || !p.is_finite() {
        return Err(Error::Domain(format!("surprise needs 0 < p <= 1, got {p}")));
    }
    Ok(-p.log2())
}

fn plogp(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        p * p.log2()
    }
}

/// Shannon entropy `-sum p_i log2 p_i` in bits.
pub fn shannon(dist: &ProbDist) -> f64 {
    // Adding 0.0 keeps a certain distribution's entropy at +0.0, not -0.0.
    -dist.p.iter().copied().map(plogp).sum::<f64>() + 0.0
}

/// Binary entropy `H(q) = -q log2 q - (1-q) log2(1-q)`.
pub fn binary_entropy(q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) || !q.is_finite() {
        return Err(Error::Domain(format!("binary_entropy needs q in [0,1], got {q}")));
    }
    Ok(-plogp(q) - plogp(1.0 - q))
}

/// Shannon entropy of the eigenvalue distribution of a density operator.
///
/// Eigenvalues in [-1e-6, 0) are clamped to zero (solver rounding); anything
/// more negative violates the density-operator contract.
pub fn von_neumann(rho: &DensityOperator) -> Result<f64> {
    let eig = rho.matrix().hermitian_eig()?;
    let mut bits = 0.0;
    for &lambda in &eig.values {
        if lambda < -1e-6 {
            return Err(Error::Contract(format!(
                "density operator has eigenvalue {lambda} below -1e-6"
            )));
        }
        bits -= plogp(lambda.max(0.0));
    }
    Ok(bits)
}

/// Thermodynamic entropy `-k ln2 sum p_i log2 p_i` in units of the supplied k.
pub fn boltzmann(dist: &ProbDist, k: f64) -> f64 {
    k * LN_2 * shannon(dist)
}

/// Erasure cross term `-tr(rho ln omega)` in units of k.
///
/// `omega` must be strictly positive on the support of `rho`: wherever an
/// eigenvalue of `omega` sits at or below the 1e-12 cutoff, `rho` may carry
/// only numerical noise (< 1e-9), otherwise the term diverges and a domain
/// error is returned. By the Klein inequality the result is never below
/// `ln2 * von_neumann(rho)`, with equality exactly at `omega = rho`.
pub fn erasure_cross_term(rho: &DensityOperator, omega: &DensityOperator) -> Result<f64> {
    if rho.dims() != omega.dims() {
        return Err(Error::Shape("operators live on different subsystem dimensions".into()));
    }
    let eig = omega.matrix().hermitian_eig()?;
    let n = omega.dim();
    let mut total = 0.0;
    for k in 0..n {
        // Weight of rho along this eigenvector: <v_k| rho |v_k>.
        let mut weight = 0.0;
        for i in 0..n {
            for j in 0..n {
                weight += (eig.vectors.get(i, k).conj()
                    * rho.matrix().get(i, j)
                    * eig.vectors.get(j, k))
                .re;
            }
        }
        let w = eig.values[k];
        if w <= LOG_EIGENVALUE_CUTOFF {
            if weight > 1e-9 {
                return Err(Error::Domain(format!(
                    "rho has weight {weight} on a level where omega is {w} (outside support)"
                )));
            }
            continue;
        }
        total -= weight * w.ln();
    }
    Ok(total)
}

/// Convenience: largest elementwise deviation of two matrices, used by
/// report code when comparing against reference matrices.
pub fn matrix_deviation(a: &CMatrix, b: &CMatrix) -> f64 {
    a.max_abs_diff(b)
}
