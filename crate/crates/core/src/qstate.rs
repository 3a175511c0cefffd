//! States, ensembles, observables, measurement statistics and Schrödinger
//! evolution.
//!
//! A [`PureState`] is a unit vector tagged with its subsystem dimensions; a
//! [`DensityOperator`] is a Hermitian, unit-trace, positive-semidefinite
//! matrix with the same tag. An [`Ensemble`] records a preparation procedure
//! as weighted pure or mixed members and collapses to its density operator.

use crate::cmatrix::{CMatrix, CVector, Complex, DEFAULT_TOL, HERMITIAN_TOL};
use crate::error::{Error, Result};

/// Normalized state vector over the given subsystem dimensions.
#[derive(Debug, Clone)]
pub struct PureState {
    vector: CVector,
    dims: Vec<usize>,
}

impl PureState {
    pub fn new(vector: CVector, dims: &[usize]) -> Result<Self> {
        let total: usize = dims.iter().product();
        if dims.is_empty() || total != vector.dim() {
            return Err(Error::Shape(format!(
                "subsystem dimensions {:?} do not multiply to vector dimension {}",
                dims,
                vector.dim()
            )));
        }
        if (vector.norm() - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::Validation(format!(
                "state vector norm {} is not 1 within 1e-9",
                vector.norm()
            )));
        }
        Ok(Self {
            vector,
            dims: dims.to_vec(),
        })
    }

    /// Single-system state of the given dimension.
    pub fn single(vector: CVector) -> Result<Self> {
        let dim = vector.dim();
        Self::new(vector, &[dim])
    }

    /// Computational basis state of an n-qubit register; `index` reads as the
    /// binary string of the individual qubits, most significant first.
    pub fn qubit_basis(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize
            .checked_shl(n_qubits as u32)
            .ok_or_else(|| Error::Resource("qubit register too large".into()))?;
        Self::new(CVector::basis(dim, index)?, &vec![2; n_qubits])
    }

    pub fn vector(&self) -> &CVector {
        &self.vector
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.vector.dim()
    }

    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        PureState::new(self.vector.tensor(&other.vector)?, &dims)
    }

    /// Density operator |psi><psi| of this state.
    pub fn to_density(&self) -> Result<DensityOperator> {
        DensityOperator::new(self.vector.projector()?, &self.dims)
    }

    /// Squared overlap |<self|other>|^2.
    pub fn fidelity(&self, other: &PureState) -> Result<f64> {
        Ok(self.vector.inner(&other.vector)?.norm_sqr())
    }

    /// Schrödinger evolution `exp(-i H t / hbar) |psi>`.
    pub fn evolve(&self, hamiltonian: &Observable, time: f64, hbar: f64) -> Result<PureState> {
        if hamiltonian.dims() != self.dims() {
            return Err(Error::Shape(
                "Hamiltonian and state subsystem dimensions differ".into(),
            ));
        }
        if hbar <= 0.0 || !hbar.is_finite() {
            return Err(Error::Domain("hbar must be positive".into()));
        }
        let u = hamiltonian
            .matrix()
            .mat_func(|e| Some(Complex::new(0.0, -e * time / hbar).exp()))?;
        let evolved = u.apply(self.vector())?;
        if (evolved.norm() - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::Numerical(format!(
                "evolution drifted the norm to {}",
                evolved.norm()
            )));
        }
        // Scrub the rounding residue so repeated evolutions cannot accumulate it.
        PureState::new(evolved.normalized()?, &self.dims)
    }

    /// Number of Schmidt coefficients above `tol` for a bipartite state:
    /// 1 means a product state, anything larger means entanglement.
    pub fn schmidt_rank(&self, tol: f64) -> Result<usize> {
        if self.dims.len() != 2 {
            return Err(Error::Shape(format!(
                "schmidt_rank needs exactly two subsystems, got {:?}",
                self.dims
            )));
        }
        let reduced = self.to_density()?.reduced(&[0])?;
        let eig = reduced.matrix().hermitian_eig()?;
        Ok(eig.values.iter().filter(|&&v| v > tol).count())
    }

    pub fn is_product(&self) -> Result<bool> {
        Ok(self.schmidt_rank(DEFAULT_TOL)? == 1)
    }
}

/// Hermitian, unit-trace, positive-semidefinite operator over subsystems.
#[derive(Debug, Clone)]
pub struct DensityOperator {
    matrix: CMatrix,
    dims: Vec<usize>,
}

impl DensityOperator {
    pub fn new(matrix: CMatrix, dims: &[usize]) -> Result<Self> {
        let total: usize = dims.iter().product();
        if dims.is_empty() || total != matrix.rows() {
            return Err(Error::Shape(format!(
                "subsystem dimensions {:?} do not multiply to matrix side {}",
                dims,
                matrix.rows()
            )));
        }
        if !matrix.is_density_within(DEFAULT_TOL) {
            return Err(Error::Validation(
                "matrix is not a density operator (Hermitian, unit trace, positive) at 1e-9".into(),
            ));
        }
        Ok(Self {
            matrix,
            dims: dims.to_vec(),
        })
    }

    /// Maximally mixed state 1/d.
    pub fn maximally_mixed(dims: &[usize]) -> Result<Self> {
        let d: usize = dims.iter().product();
        let m = CMatrix::identity(d)?.scale(Complex::new(1.0 / d as f64, 0.0));
        Self::new(m, dims)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn tensor(&self, other: &DensityOperator) -> Result<DensityOperator> {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        DensityOperator::new(self.matrix.tensor(&other.matrix)?, &dims)
    }

    /// `tr(rho^2)`; equals 1 exactly for pure states.
    pub fn purity(&self) -> f64 {
        let squared = self.matrix.matmul(&self.matrix).expect("square by construction");
        squared.trace().expect("square").re
    }

    /// Expectation value `tr(O rho)`; the imaginary residue must stay below
    /// 1e-6 and is discarded after the check.
    pub fn expectation(&self, observable: &Observable) -> Result<f64> {
        if observable.dims() != self.dims() {
            return Err(Error::Shape(
                "observable and state subsystem dimensions differ".into(),
            ));
        }
        let value = observable.matrix().matmul(&self.matrix)?.trace()?;
        if value.im.abs() > 1e-6 {
            return Err(Error::Numerical(format!(
                "expectation value has imaginary residue {}",
                value.im
            )));
        }
        Ok(value.re)
    }

    /// Probability of projecting onto the subspace of `projector`, clamped
    /// to [0, 1] after an idempotency/Hermiticity check.
    pub fn measure_prob(&self, projector: &CMatrix) -> Result<f64> {
        if projector.rows() != self.dim() || projector.cols() != self.dim() {
            return Err(Error::Shape("projector dimension mismatch".into()));
        }
        if !projector.is_hermitian_within(DEFAULT_TOL) {
            return Err(Error::Contract("measurement projector is not Hermitian".into()));
        }
        let squared = projector.matmul(projector)?;
        if squared.max_abs_diff(projector) > DEFAULT_TOL {
            return Err(Error::Contract("measurement projector is not idempotent".into()));
        }
        let p = projector.matmul(&self.matrix)?.trace()?.re;
        if !(-DEFAULT_TOL..=1.0 + DEFAULT_TOL).contains(&p) {
            return Err(Error::Numerical(format!(
                "projection probability {p} outside [0,1] beyond tolerance"
            )));
        }
        Ok(p.clamp(0.0, 1.0))
    }

    /// Reduced density operator of the kept subsystems.
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityOperator> {
        let m = self.matrix.partial_trace(&self.dims, keep)?;
        let dims: Vec<usize> = keep.iter().map(|&k| self.dims[k]).collect();
        DensityOperator::new(m, &dims)
    }

    /// Eigenvalues sorted descending, with tiny negatives clamped to zero.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let eig = self.matrix.hermitian_eig()?;
        Ok(eig
            .values
            .iter()
            .map(|&v| if v < 0.0 { 0.0 } else { v })
            .collect())
    }
}

/// A member of an ensemble: a pure state or an already-mixed operator.
#[derive(Debug, Clone)]
pub enum EnsembleMember {
    Pure(PureState),
    Mixed(DensityOperator),
}

impl EnsembleMember {
    pub fn dims(&self) -> &[usize] {
        match self {
            EnsembleMember::Pure(p) => p.dims(),
            EnsembleMember::Mixed(m) => m.dims(),
        }
    }

    pub fn to_density(&self) -> Result<DensityOperator> {
        match self {
            EnsembleMember::Pure(p) => p.to_density(),
            EnsembleMember::Mixed(m) => Ok(m.clone()),
        }
    }
}

/// Preparation procedure: states with the probabilities they occur with.
#[derive(Debug, Clone)]
pub struct Ensemble {
    items: Vec<(f64, EnsembleMember)>,
}

impl Ensemble {
    pub fn new(items: Vec<(f64, EnsembleMember)>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::Validation("ensemble must be nonempty".into()));
        }
        if items.iter().any(|(p, _)| *p < 0.0 || !p.is_finite()) {
            return Err(Error::Validation("ensemble probabilities must be nonnegative".into()));
        }
        let total: f64 = items.iter().map(|(p, _)| p).sum();
        if (total - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::Validation(format!(
                "probabilities sum to {total}, expected 1 within 1e-9"
            )));
        }
        let dims = items[0].1.dims().to_vec();
        if items.iter().any(|(_, s)| s.dims() != dims) {
            return Err(Error::Shape("ensemble members have mixed subsystem dimensions".into()));
        }
        Ok(Self { items })
    }

    pub fn of_pure(items: Vec<(f64, PureState)>) -> Result<Self> {
        Self::new(
            items
                .into_iter()
                .map(|(p, s)| (p, EnsembleMember::Pure(s)))
                .collect(),
        )
    }

    pub fn items(&self) -> &[(f64, EnsembleMember)] {
        &self.items
    }

    pub fn dims(&self) -> &[usize] {
        self.items[0].1.dims()
    }

    pub fn weights(&self) -> Vec<f64> {
        self.items.iter().map(|(p, _)| *p).collect()
    }

    /// The density operator `sum_i p_i rho_i` of the preparation procedure.
    pub fn to_density(&self) -> Result<DensityOperator> {
        let dims = self.dims().to_vec();
        let d: usize = dims.iter().product();
        let mut acc = CMatrix::zeros(d, d)?;
        for (p, member) in &self.items {
            let rho = member.to_density()?;
            acc = acc.add(&rho.matrix().scale(Complex::new(*p, 0.0)))?;
        }
        DensityOperator::new(acc, &dims)
    }
}

/// Hermitian operator representing a measurable quantity.
#[derive(Debug, Clone)]
pub struct Observable {
    matrix: CMatrix,
    dims: Vec<usize>,
}

impl Observable {
    pub fn new(matrix: CMatrix, dims: &[usize]) -> Result<Self> {
        let total: usize = dims.iter().product();
        if dims.is_empty() || total != matrix.rows() || !matrix.is_square() {
            return Err(Error::Shape(format!(
                "subsystem dimensions {:?} do not multiply to matrix side {}",
                dims,
                matrix.rows()
            )));
        }
        if !matrix.is_hermitian_within(HERMITIAN_TOL) {
            return Err(Error::Validation("observable is not Hermitian at 1e-10".into()));
        }
        Ok(Self {
            matrix,
            dims: dims.to_vec(),
        })
    }

    /// Diagonal observable in the computational basis of a single system.
    pub fn diagonal(entries: &[f64]) -> Result<Self> {
        let n = entries.len();
        Self::new(CMatrix::diagonal(entries)?, &[n])
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Spectral projectors onto distinct eigenvalues, paired with the values.
    /// Eigenvalues closer than `gap` are merged into one projector.
    pub fn spectral_projectors(&self, gap: f64) -> Result<Vec<(f64, CMatrix)>> {
        let eig = self.matrix.hermitian_eig()?;
        let n = self.matrix.rows();
        let mut out: Vec<(f64, CMatrix)> = Vec::new();
        for k in 0..n {
            let col = CVector::new((0..n).map(|i| eig.vectors.get(i, k)).collect())?;
            let proj = col.projector()?;
            match out.last_mut() {
                Some((value, acc)) if (eig.values[k] - *value).abs() <= gap => {
                    *acc = acc.add(&proj)?;
                }
                _ => out.push((eig.values[k], proj)),
            }
        }
        Ok(out)
    }
}
