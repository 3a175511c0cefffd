//! Dense complex vectors and matrices for small Hilbert spaces.
//!
//! Everything downstream (states, entropies, erasure ledgers, compression
//! schemes) is carried by [`CVector`] and [`CMatrix`]. Matrices are stored
//! row-major; subsystem 0 is always the most significant tensor factor, so
//! basis index `i` of an n-qubit space reads as the binary string of the
//! individual qubit states.
//!
//! The eigensolver is a cyclic Jacobi iteration with complex (phase-carrying)
//! rotations, accurate and simple at the dimensions this crate targets
//! (matrix side <= 2^10).

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

/// Default tolerance for elementwise max-norm comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Tolerance for the Hermiticity precondition of the eigensolver.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues below this cutoff are treated as exact zeros by matrix logs.
pub const LOG_EIGENVALUE_CUTOFF: f64 = 1e-12;
/// Resource guard: no value may hold more than 2^20 complex entries.
pub const MAX_ENTRIES: usize = 1 << 20;

fn guard_entries(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::Shape(format!("{what} must be nonempty")));
    }
    if n > MAX_ENTRIES {
        return Err(Error::Resource(format!(
            "{what} would hold {n} entries, above the 2^20 guard"
        )));
    }
    Ok(())
}

fn guard_finite(entries: &[Complex], what: &str) -> Result<()> {
    if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Validation(format!("{what} contains NaN/Inf entries")));
    }
    Ok(())
}

/// Dense complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector {
    data: Vec<Complex>,
}

impl CVector {
    pub fn new(data: Vec<Complex>) -> Result<Self> {
        guard_entries(data.len(), "vector")?;
        guard_finite(&data, "vector")?;
        Ok(Self { data })
    }

    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&r| Complex::new(r, 0.0)).collect())
    }

    /// Computational basis state |index> in the given dimension.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        guard_entries(dim, "vector")?;
        if index >= dim {
            return Err(Error::Shape(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        let mut data = vec![Complex::ZERO; dim];
        data[index] = Complex::ONE;
        Ok(Self { data })
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn entries(&self) -> &[Complex] {
        &self.data
    }

    pub fn get(&self, i: usize) -> Complex {
        self.data[i]
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n < 1e-300 {
            return Err(Error::Domain("cannot normalize the zero vector".into()));
        }
        Ok(Self {
            data: self.data.iter().map(|z| z / n).collect(),
        })
    }

    /// Complex scalar product <self|other>; the left factor is conjugated.
    pub fn inner(&self, other: &CVector) -> Result<Complex> {
        if self.dim() != other.dim() {
            return Err(Error::Shape(format!(
                "inner product of dimensions {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Kronecker product; `self` is the most significant factor.
    pub fn tensor(&self, other: &CVector) -> Result<CVector> {
        let n = self
            .dim()
            .checked_mul(other.dim())
            .ok_or_else(|| Error::Resource("tensor product size overflow".into()))?;
        guard_entries(n, "tensor product")?;
        let mut data = Vec::with_capacity(n);
        for a in &self.data {
            for b in &other.data {
                data.push(a * b);
            }
        }
        Ok(CVector { data })
    }

    /// Outer product |self><other|; `result[i][j] = self[i] * conj(other[j])`.
    pub fn outer(&self, other: &CVector) -> Result<CMatrix> {
        let rows = self.dim();
        let cols = other.dim();
        guard_entries(rows * cols, "outer product")?;
        let mut data = Vec::with_capacity(rows * cols);
        for a in &self.data {
            for b in &other.data {
                data.push(a * b.conj());
            }
        }
        CMatrix::new(rows, cols, data)
    }

    /// Projector |self><self|.
    pub fn projector(&self) -> Result<CMatrix> {
        self.outer(self)
    }

    pub fn scale(&self, factor: Complex) -> CVector {
        CVector {
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &CVector) -> Result<CVector> {
        if self.dim() != other.dim() {
            return Err(Error::Shape("vector addition dimension mismatch".into()));
        }
        Ok(CVector {
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    /// Largest elementwise deviation from `other`.
    pub fn max_abs_diff(&self, other: &CVector) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

/// Result of a Hermitian eigendecomposition: `values` sorted descending,
/// columns of `vectors` are the matching orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        guard_entries(rows.max(1) * cols.max(1), "matrix")?;
        if rows == 0 || cols == 0 {
            return Err(Error::Shape("matrix must be nonempty".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "matrix data length {} does not match {rows}x{cols}",
                data.len()
            )));
        }
        guard_finite(&data, "matrix")?;
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![Complex::ZERO; rows.max(1) * cols.max(1)])
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.set(i, i, Complex::ONE);
        }
        Ok(m)
    }

    /// Square matrix with the given real numbers on the diagonal.
    pub fn diagonal(entries: &[f64]) -> Result<Self> {
        let n = entries.len();
        let mut m = Self::zeros(n, n)?;
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, Complex::new(e, 0.0));
        }
        Ok(m)
    }

    /// Build from nested rows; rows must all have the same length.
    pub fn from_rows(rows: &[Vec<Complex>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(r, c, rows.concat())
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let converted: Vec<Vec<Complex>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| Complex::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&converted)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Complex) {
        self.data[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[Complex] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "{what} requires a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(())
    }

    /// Kronecker product; `self` is the most significant factor:
    /// `(a ⊗ b)[i*rb + k, j*cb + l] = a[i,j] * b[k,l]`.
    pub fn tensor(&self, other: &CMatrix) -> Result<CMatrix> {
        let rows = self
            .rows
            .checked_mul(other.rows)
            .ok_or_else(|| Error::Resource("tensor product size overflow".into()))?;
        let cols = self
            .cols
            .checked_mul(other.cols)
            .ok_or_else(|| Error::Resource("tensor product size overflow".into()))?;
        guard_entries(
            rows.checked_mul(cols)
                .ok_or_else(|| Error::Resource("tensor product size overflow".into()))?,
            "tensor product",
        )?;
        let mut out = CMatrix::zeros(rows, cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == Complex::ZERO {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "matmul of {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = CMatrix::zeros(self.rows, other.cols)?;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == Complex::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &CVector) -> Result<CVector> {
        if self.cols != v.dim() {
            return Err(Error::Shape(format!(
                "applying {}x{} matrix to a vector of dimension {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        let data = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v.get(j)).sum())
            .collect();
        Ok(CVector { data })
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> CMatrix {
        let mut out = CMatrix {
            rows: self.cols,
            cols: self.rows,
            data: vec![Complex::ZERO; self.data.len()],
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Sum of the diagonal elements.
    pub fn trace(&self) -> Result<Complex> {
        self.require_square("trace")?;
        Ok((0..self.rows).map(|i| self.get(i, i)).sum())
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape("matrix addition shape mismatch".into()));
        }
        Ok(CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &CMatrix) -> Result<CMatrix> {
        self.add(&other.scale(Complex::new(-1.0, 0.0)))
    }

    pub fn scale(&self, factor: Complex) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// Largest elementwise deviation from `other` (max-norm).
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_hermitian_within(DEFAULT_TOL)
    }

    pub fn is_hermitian_within(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if (self.get(i, j) - self.get(j, i).conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_unitary(&self) -> bool {
        self.is_unitary_within(DEFAULT_TOL)
    }

    /// `U U† = U† U = 1` within the elementwise tolerance.
    pub fn is_unitary_within(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let id = CMatrix::identity(self.rows).expect("guarded size");
        match self.matmul(&self.dagger()) {
            Ok(p) => {
                if p.max_abs_diff(&id) > tol {
                    return false;
                }
            }
            Err(_) => return false,
        }
        match self.dagger().matmul(self) {
            Ok(p) => p.max_abs_diff(&id) <= tol,
            Err(_) => false,
        }
    }

    pub fn is_density(&self) -> bool {
        self.is_density_within(DEFAULT_TOL)
    }

    /// Hermitian, unit trace, and all eigenvalues >= -tol.
    pub fn is_density_within(&self, tol: f64) -> bool {
        if !self.is_hermitian_within(tol) {
            return false;
        }
        let tr = self.trace().expect("hermitian implies square");
        if (tr - Complex::ONE).norm() > tol {
            return false;
        }
        match self.hermitian_eig() {
            Ok(eig) => eig.values.iter().all(|&v| v >= -tol),
            Err(_) => false,
        }
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
    ///
    /// Eigenvalues come back sorted descending; reconstruction
    /// `V diag(values) V†` matches the input to ~1e-12 relative accuracy.
    /// Errors if the input deviates from Hermitian by more than 1e-10.
    pub fn hermitian_eig(&self) -> Result<HermitianEig> {
        self.require_square("hermitian_eig")?;
        if !self.is_hermitian_within(HERMITIAN_TOL) {
            return Err(Error::Contract(
                "hermitian_eig requires a Hermitian matrix (tolerance 1e-10)".into(),
            ));
        }
        let n = self.rows;
        // Work on the Hermitian average to scrub representational asymmetry.
        let mut a = CMatrix::zeros(n, n)?;
        for i in 0..n {
            for j in 0..n {
                a.set(i, j, (self.get(i, j) + self.get(j, i).conj()) * 0.5);
            }
        }
        let mut v = CMatrix::identity(n)?;
        let norm = a.frobenius_norm();
        let target = 1e-14 * norm.max(f64::MIN_POSITIVE);

        let off_mass = |m: &CMatrix| -> f64 {
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        s += m.get(i, j).norm_sqr();
                    }
                }
            }
            s.sqrt()
        };

        let max_sweeps = 60;
        let mut converged = norm == 0.0 || n == 1;
        for _ in 0..max_sweeps {
            if converged || off_mass(&a) <= target {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a.get(p, q);
                    let r = apq.norm();
                    if r <= f64::MIN_POSITIVE {
                        continue;
                    }
                    let phase = apq / r;
                    let app = a.get(p, p).re;
                    let aqq = a.get(q, q).re;
                    // Rotation angle zeroing the (p,q) element: tan(2θ) = 2r/(app-aqq).
                    let tau = (aqq - app) / (2.0 * r);
                    let t = if tau == 0.0 {
                        1.0
                    } else {
                        let sign = if tau > 0.0 { 1.0 } else { -1.0 };
                        -sign / (tau.abs() + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;

                    // Column update: A <- A V with
                    //   V[p][p]=c, V[p][q]=-s*phase, V[q][p]=s*conj(phase), V[q][q]=c.
                    for k in 0..n {
                        let akp = a.get(k, p);
                        let akq = a.get(k, q);
                        a.set(k, p, akp * c + akq * s * phase.conj());
                        a.set(k, q, akq * c - akp * s * phase);
                    }
                    // Row update: A <- V† A.
                    for k in 0..n {
                        let apk = a.get(p, k);
                        let aqk = a.get(q, k);
                        a.set(p, k, apk * c + aqk * s * phase);
                        a.set(q, k, aqk * c - apk * s * phase.conj());
                    }
                    // Keep the diagonal exactly real.
                    let dpp = a.get(p, p).re;
                    let dqq = a.get(q, q).re;
                    a.set(p, p, Complex::new(dpp, 0.0));
                    a.set(q, q, Complex::new(dqq, 0.0));
                    a.set(p, q, Complex::ZERO);
                    a.set(q, p, Complex::ZERO);

                    // Accumulate eigenvectors: V_acc <- V_acc V.
                    for k in 0..n {
                        let vkp = v.get(k, p);
                        let vkq = v.get(k, q);
                        v.set(k, p, vkp * c + vkq * s * phase.conj());
                        v.set(k, q, vkq * c - vkp * s * phase);
                    }
                }
            }
        }
        if !converged && off_mass(&a) > target {
            return Err(Error::Numerical(format!(
                "Jacobi iteration did not converge in {max_sweeps} sweeps"
            )));
        }

        let mut order: Vec<usize> = (0..n).collect();
        let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
        order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).expect("finite eigenvalues"));

        let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
        let mut vectors = CMatrix::zeros(n, n)?;
        for (new_col, &old_col) in order.iter().enumerate() {
            for row in 0..n {
                vectors.set(row, new_col, v.get(row, old_col));
            }
        }
        Ok(HermitianEig { values, vectors })
    }

    /// Evaluate a scalar function on a Hermitian matrix through its
    /// eigenvalues: `V diag(f(λ)) V†`. The closure returns `None` where the
    /// function is undefined, which surfaces as a domain error.
    pub fn mat_func<F>(&self, f: F) -> Result<CMatrix>
    where
        F: Fn(f64) -> Option<Complex>,
    {
        let eig = self.hermitian_eig()?;
        let n = self.rows;
        let mut fvals = Vec::with_capacity(n);
        for &lambda in &eig.values {
            match f(lambda) {
                Some(z) => fvals.push(z),
                None => {
                    return Err(Error::Domain(format!(
                        "matrix function undefined on eigenvalue {lambda}"
                    )))
                }
            }
        }
        let mut out = CMatrix::zeros(n, n)?;
        for i in 0..n {
            for j in 0..n {
                let acc = fvals
                    .iter()
                    .enumerate()
                    .map(|(k, f)| eig.vectors.get(i, k) * f * eig.vectors.get(j, k).conj())
                    .sum();
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Natural-log matrix function with the entropy convention: eigenvalues
    /// below the cutoff are treated as exact zeros and their ln mapped to 0
    /// (their contribution is dropped, so the result is the log restricted to
    /// the support).
    pub fn log_on_support(&self) -> Result<CMatrix> {
        let eig = self.hermitian_eig()?;
        let n = self.rows;
        let mut log_m = CMatrix::zeros(n, n)?;
        for k in 0..n {
            let lambda = eig.values[k];
            if lambda < -LOG_EIGENVALUE_CUTOFF {
                return Err(Error::Domain(format!(
                    "matrix log of a matrix with negative eigenvalue {lambda}"
                )));
            }
            if lambda <= LOG_EIGENVALUE_CUTOFF {
                continue;
            }
            let f = lambda.ln();
            for i in 0..n {
                for j in 0..n {
                    let w = eig.vectors.get(i, k) * eig.vectors.get(j, k).conj();
                    let v = log_m.get(i, j) + w * f;
                    log_m.set(i, j, v);
                }
            }
        }
        Ok(log_m)
    }

    /// Partial trace over the subsystems *not* listed in `keep`.
    ///
    /// `dims` are the subsystem dimensions with subsystem 0 the most
    /// significant tensor factor; `keep` is a strictly increasing list of
    /// subsystem indices that survive.
    pub fn partial_trace(&self, dims: &[usize], keep: &[usize]) -> Result<CMatrix> {
        self.require_square("partial_trace")?;
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::Shape("subsystem dimensions must be positive".into()));
        }
        let total: usize = dims.iter().product();
        if total != self.rows {
            return Err(Error::Shape(format!(
                "subsystem dimensions {:?} do not multiply to matrix side {}",
                dims, self.rows
            )));
        }
        if keep.is_empty() {
            return Err(Error::Contract("keep set must be nonempty".into()));
        }
        if keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&k| k >= dims.len()) {
            return Err(Error::Contract(
                "keep must be a strictly increasing list of valid subsystem indices".into(),
            ));
        }

        let traced: Vec<usize> = (0..dims.len()).filter(|&i| !keep.contains(&i)).collect();
        let kept_dim: usize = keep.iter().map(|&k| dims[k]).product();
        let traced_dim: usize = traced.iter().map(|&t| dims[t]).product();

        // Strides of each subsystem in the flat basis index.
        let mut strides = vec![1usize; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * dims[i + 1];
        }

        let compose = |digits_kept: usize, digits_traced: usize| -> usize {
            // Decompose the two linear indices into per-subsystem digits and
            // reassemble the full basis index.
            let mut index = 0usize;
            let mut rem = digits_kept;
            for (pos, &sub) in keep.iter().enumerate().rev() {
                let d = dims[sub];
                let digit = if pos == 0 { rem } else { rem % d };
                rem /= d;
                index += digit * strides[sub];
            }
            let mut rem = digits_traced;
            for (pos, &sub) in traced.iter().enumerate().rev() {
                let d = dims[sub];
                let digit = if pos == 0 { rem } else { rem % d };
                rem /= d;
                index += digit * strides[sub];
            }
            index
        };

        let mut out = CMatrix::zeros(kept_dim, kept_dim)?;
        for bi in 0..kept_dim {
            for bj in 0..kept_dim {
                let mut acc = Complex::ZERO;
                for t in 0..traced_dim {
                    acc += self.get(compose(bi, t), compose(bj, t));
                }
                out.set(bi, bj, acc);
            }
        }
        Ok(out)
    }
}
