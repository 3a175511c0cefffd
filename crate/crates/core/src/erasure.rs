//! Landauer-principle bookkeeping: the one-molecule engine cycle, thermal
//! erasure of quantum states, and the optimal-erasure minimum.
//!
//! Internally k = 1 and thermodynamic entropies are in nats (units of k);
//! information fields are in bits, with explicit ln 2 factors at the
//! boundary. Work and heat are in units of kT.

use crate::cmatrix::{CMatrix, Complex, LOG_EIGENVALUE_CUTOFF};
use crate::entropy::{erasure_cross_term, von_neumann, LN_2};
use crate::error::{Error, Result};
use crate::qstate::{DensityOperator, Observable};

/// Work/heat/entropy record of an erasure or engine cycle.
///
/// `q_total` counts the heat generated by the work flows (`w_extracted +
/// w_erasure`, the isothermal bookkeeping of the engine cycle); the heat a
/// quasi-static thermal relaxation exchanges appears instead as
/// `-temperature * delta_s_bath`. Entropies are in units of k, work in units
/// of kT, information in bits. `generalized_entropy` is the observer-adjusted
/// entropy in bits: entropy change charged to erasure minus the information
/// the record held.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorkLedger {
    pub w_extracted: f64,
    pub w_erasure: f64,
    pub q_total: f64,
    pub delta_s_system: f64,
    pub delta_s_bath: f64,
    pub delta_s_total: f64,
    pub info_bits: f64,
    pub generalized_entropy: f64,
}

impl WorkLedger {
    /// The two structural identities every ledger must satisfy.
    pub fn check_invariants(&self) -> Result<()> {
        if (self.q_total - (self.w_extracted + self.w_erasure)).abs() > 1e-9 {
            return Err(Error::Numerical(
                "ledger violates q_total = w_extracted + w_erasure".into(),
            ));
        }
        if (self.delta_s_total - (self.delta_s_system + self.delta_s_bath)).abs() > 1e-9 {
            return Err(Error::Numerical(
                "ledger violates delta_s_total = delta_s_system + delta_s_bath".into(),
            ));
        }
        Ok(())
    }
}

/// A Hamiltonian with a bath temperature; the partition function is derived
/// on construction.
#[derive(Debug, Clone)]
pub struct ThermalSpec {
    hamiltonian: Observable,
    temperature: f64,
    partition_function: f64,
}

impl ThermalSpec {
    pub fn new(hamiltonian: Observable, temperature: f64) -> Result<Self> {
        if temperature <= 0.0 || !temperature.is_finite() {
            return Err(Error::Domain(format!(
                "temperature must be positive, got {temperature}"
            )));
        }
        let beta = 1.0 / temperature;
        let boltzmann_weights = hamiltonian
            .matrix()
            .mat_func(|e| Some(Complex::new((-beta * e).exp(), 0.0)))?;
        let partition_function = boltzmann_weights.trace()?.re;
        Ok(Self {
            hamiltonian,
            temperature,
            partition_function,
        })
    }

    pub fn hamiltonian(&self) -> &Observable {
        &self.hamiltonian
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn partition_function(&self) -> f64 {
        self.partition_function
    }
}

/// One full cycle of the one-molecule engine: measurement, isothermal
/// extraction of kT ln2, then erasure of the one-bit record at the same
/// temperature. Everything cancels; the second law survives.
pub fn szilard_cycle(temperature: f64) -> Result<WorkLedger> {
    if temperature <= 0.0 || !temperature.is_finite() {
        return Err(Error::Domain(format!(
            "temperature must be positive, got {temperature}"
        )));
    }
    let w = temperature * LN_2;
    let ledger = WorkLedger {
        w_extracted: w,
        w_erasure: -w,
        q_total: 0.0,
        // Gas and record both return to their initial states.
        delta_s_system: 0.0,
        delta_s_bath: 0.0,
        delta_s_total: 0.0,
        info_bits: 1.0,
        // Extraction-stroke entropy (1 bit) minus the record's information.
        generalized_entropy: w / (temperature * LN_2) - 1.0,
    };
    ledger.check_invariants()?;
    Ok(ledger)
}

/// Thermal equilibrium state `exp(-H/T) / Z`.
pub fn gibbs_state(spec: &ThermalSpec) -> Result<DensityOperator> {
    let beta = 1.0 / spec.temperature;
    let weights = spec
        .hamiltonian
        .matrix()
        .mat_func(|e| Some(Complex::new((-beta * e).exp(), 0.0)))?;
    let z = weights.trace()?.re;
    if z <= 0.0 || !z.is_finite() {
        return Err(Error::Numerical(format!("partition function {z} is unusable")));
    }
    DensityOperator::new(
        weights.scale(Complex::new(1.0 / z, 0.0)),
        spec.hamiltonian.dims(),
    )
}

/// The Hamiltonian whose thermal state at temperature `t` is `rho`:
/// `H = -T ln(rho)`, gauge-fixed so its smallest eigenvalue is zero.
/// Requires `rho` to be full rank; see [`erasure_hamiltonian_on_support`]
/// for rank-deficient states.
pub fn erasure_hamiltonian(rho: &DensityOperator, temperature: f64) -> Result<Observable> {
    if temperature <= 0.0 || !temperature.is_finite() {
        return Err(Error::Domain(format!(
            "temperature must be positive, got {temperature}"
        )));
    }
    let eig = rho.matrix().hermitian_eig()?;
    if eig.values.iter().any(|&v| v <= LOG_EIGENVALUE_CUTOFF) {
        return Err(Error::Domain(
            "state is rank deficient; zero-probability levels would need infinite energy \
             (use erasure_hamiltonian_on_support)"
                .into(),
        ));
    }
    let log_rho = rho.matrix().log_on_support()?;
    let h = log_rho.scale(Complex::new(-temperature, 0.0));
    // Shift the spectrum so the ground level sits at zero; the thermal state
    // is unchanged, the output becomes canonical.
    let min_energy = eig
        .values
        .iter()
        .map(|&v| -temperature * v.ln())
        .fold(f64::INFINITY, f64::min);
    let shifted = h.add(&CMatrix::identity(h.rows())?.scale(Complex::new(-min_energy, 0.0)))?;
    Observable::new(shifted, rho.dims())
}

/// Support-restricted erasure Hamiltonian for rank-deficient states: the
/// Hamiltonian acts on the support subspace only, spanned by the columns of
/// `support_basis`.
#[derive(Debug, Clone)]
pub struct SupportHamiltonian {
    pub hamiltonian: CMatrix,
    pub support_basis: CMatrix,
    pub support_dim: usize,
}

pub fn erasure_hamiltonian_on_support(
    rho: &DensityOperator,
    temperature: f64,
) -> Result<SupportHamiltonian> {
    if temperature <= 0.0 || !temperature.is_finite() {
        return Err(Error::Domain(format!(
            "temperature must be positive, got {temperature}"
        )));
    }
    let eig = rho.matrix().hermitian_eig()?;
    let d = rho.dim();
    let support: Vec<usize> = (0..d)
        .filter(|&k| eig.values[k] > LOG_EIGENVALUE_CUTOFF)
        .collect();
    let r = support.len();
    if r == 0 {
        return Err(Error::Domain("state has empty support".into()));
    }
    let energies: Vec<f64> = support
        .iter()
        .map(|&k| -temperature * eig.values[k].ln())
        .collect();
    let ground = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let shifted: Vec<f64> = energies.iter().map(|e| e - ground).collect();
    let mut basis = CMatrix::zeros(d, r)?;
    for (col, &k) in support.iter().enumerate() {
        for row in 0..d {
            basis.set(row, col, eig.vectors.get(row, k));
        }
    }
    Ok(SupportHamiltonian {
        hamiltonian: CMatrix::diagonal(&shifted)?,
        support_basis: basis,
        support_dim: r,
    })
}

/// Entropy bookkeeping of thermal erasure: each incoming system relaxes to
/// the bath's equilibrium state.
///
/// * `delta_s_system = ln2 * S(omega)`: pure inputs gain the thermal state's entropy,
/// * `delta_s_bath = -tr((omega - rho) H) / T`: heat drawn from the bath,
/// * `delta_s_total = -tr(rho ln omega)`, which the first two must sum to.
pub fn lubkin_ledger(rho: &DensityOperator, spec: &ThermalSpec) -> Result<WorkLedger> {
    let omega = gibbs_state(spec)?;
    if rho.dims() != omega.dims() {
        return Err(Error::Shape("state and bath dimensions differ".into()));
    }
    let delta_s_total = erasure_cross_term(rho, &omega)?;
    let delta_s_system = LN_2 * von_neumann(&omega)?;
    let energy_flow = omega
        .matrix()
        .sub(rho.matrix())?
        .matmul(spec.hamiltonian().matrix())?
        .trace()?
        .re;
    let delta_s_bath = -energy_flow / spec.temperature();
    let info_bits = von_neumann(rho)?;
    let ledger = WorkLedger {
        // Quasi-static relaxation needs no work; the energy balance is pure
        // heat and lives in delta_s_bath.
        w_extracted: 0.0,
        w_erasure: 0.0,
        q_total: 0.0,
        delta_s_system,
        delta_s_bath,
        delta_s_total,
        info_bits,
        generalized_entropy: delta_s_total / LN_2 - info_bits,
    };
    ledger.check_invariants()?;
    Ok(ledger)
}

/// A thermal spec whose equilibrium state is exactly `rho` (optimal erasure).
pub fn matched_spec(rho: &DensityOperator, temperature: f64) -> Result<ThermalSpec> {
    ThermalSpec::new(erasure_hamiltonian(rho, temperature)?, temperature)
}

/// The Landauer floor: `ln2 * S(rho)` in units of k, the least total entropy
/// any erasure of `rho` can generate.
pub fn optimal_erasure_entropy(rho: &DensityOperator) -> Result<f64> {
    Ok(LN_2 * von_neumann(rho)?)
}
