//! Multipartite density matrices and Hermitian operators.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, ZERO};

/// Largest total Hilbert-space dimension accepted by the constructors.
pub const MAX_TOTAL_DIMENSION: usize = 256;

pub const HERMITICITY_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
/// Smallest eigenvalue tolerated before a matrix counts as not PSD.
pub const PSD_TOL: f64 = 1e-10;
/// Purity above `1 - PURE_TOL` is treated as a pure state.
pub const PURE_TOL: f64 = 1e-10;

fn check_dims(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() {
        return Err(Error::InvalidParties("empty dimension list".into()));
    }
    if let Some(&d) = dims.iter().find(|&&d| d < 2) {
        return Err(Error::InvalidDimension(d));
    }
    let total = dims
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .ok_or(Error::DimensionTooLarge(usize::MAX))?;
    if total > MAX_TOTAL_DIMENSION {
        return Err(Error::DimensionTooLarge(total));
    }
    Ok(total)
}

/// A Hermitian operator on a multipartite space. Not necessarily positive
/// or of unit trace (partial transposes, projectors, reconstructions).
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    dims: Vec<usize>,
    matrix: CMatrix,
}

impl HermitianOperator {
    pub fn new(matrix: CMatrix, dims: &[usize]) -> Result<Self> {
        let total = check_dims(dims)?;
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        if matrix.nrows() != total {
            return Err(Error::DimensionMismatch {
                expected: total,
                actual: matrix.nrows(),
            });
        }
        let residual = linalg::hermiticity_residual(&matrix);
        if residual > HERMITICITY_TOL {
            return Err(Error::NotHermitian { residual });
        }
        Ok(Self::from_parts(linalg::hermitian_part(&matrix), dims.to_vec()))
    }

    pub(crate) fn from_parts(matrix: CMatrix, dims: Vec<usize>) -> Self {
        Self { dims, matrix }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.matrix)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// Checks trace and positivity and promotes to a density matrix.
    pub fn into_density_matrix(self) -> Result<DensityMatrix> {
        validate(self.matrix, &self.dims)
    }
}

/// A validated density matrix: Hermitian, unit trace and positive
/// semidefinite within the module tolerances.
///
/// The stored matrix is exactly Hermitian (the Hermitian part of the input).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Wraps a matrix that is a density matrix by construction.
    pub(crate) fn from_trusted(matrix: CMatrix, dims: Vec<usize>) -> Self {
        Self {
            matrix: linalg::hermitian_part(&matrix),
            dims,
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dimension(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn as_operator(&self) -> HermitianOperator {
        HermitianOperator::from_parts(self.matrix.clone(), self.dims.clone())
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.matrix)
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        // For Hermitian ρ, Tr ρ² = Σ |ρ_ij|².
        self.matrix.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_pure(&self) -> bool {
        self.purity() >= 1.0 - PURE_TOL
    }

    /// Maximally mixed state on `dims`.
    pub fn maximally_mixed(dims: &[usize]) -> Result<Self> {
        let total = check_dims(dims)?;
        let m = CMatrix::identity(total, total).scale(1.0 / total as f64);
        Ok(Self::from_trusted(m, dims.to_vec()))
    }

    /// Computational basis state `|index⟩⟨index|`.
    pub fn basis_state(index: usize, dims: &[usize]) -> Result<Self> {
        let total = check_dims(dims)?;
        if index >= total {
            return Err(Error::DimensionMismatch {
                expected: total,
                actual: index,
            });
        }
        let mut m = CMatrix::zeros(total, total);
        m[(index, index)] = linalg::ONE;
        Ok(Self::from_trusted(m, dims.to_vec()))
    }
}

/// `|ψ⟩⟨ψ| / ⟨ψ|ψ⟩`.
pub fn from_pure(amplitudes: &[Complex64], dims: &[usize]) -> Result<DensityMatrix> {
    let total = check_dims(dims)?;
    if amplitudes.len() != total {
        return Err(Error::DimensionMismatch {
            expected: total,
            actual: amplitudes.len(),
        });
    }
    let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
    if norm_sqr == 0.0 || !norm_sqr.is_finite() {
        return Err(Error::ZeroVector);
    }
    let psi = DVector::from_column_slice(amplitudes).unscale(norm_sqr.sqrt());
    let m = &psi * psi.adjoint();
    Ok(DensityMatrix::from_trusted(m, dims.to_vec()))
}

/// Checks the three density-matrix invariants, reporting the first failure.
pub fn validate(matrix: CMatrix, dims: &[usize]) -> Result<DensityMatrix> {
    let op = HermitianOperator::new(matrix, dims)?;
    let residual = (op.trace() - 1.0).abs() + op.matrix.trace().im.abs();
    if residual > TRACE_TOL {
        return Err(Error::TraceNotOne { residual });
    }
    let min_eigenvalue = op.min_eigenvalue();
    if min_eigenvalue < -PSD_TOL {
        return Err(Error::NotPsd { min_eigenvalue });
    }
    Ok(DensityMatrix {
        dims: op.dims,
        matrix: op.matrix,
    })
}

/// `a ⊗ b` with concatenated party lists.
pub fn tensor(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    let mut dims = a.dims.clone();
    dims.extend_from_slice(&b.dims);
    check_dims(&dims)?;
    Ok(DensityMatrix::from_trusted(linalg::kron(&a.matrix, &b.matrix), dims))
}

/// Tensor product of several states, in order.
pub fn tensor_all(states: &[DensityMatrix]) -> Result<DensityMatrix> {
    let (first, rest) = states
        .split_first()
        .ok_or_else(|| Error::InvalidParties("no states to combine".into()))?;
    rest.iter().try_fold(first.clone(), |acc, s| tensor(&acc, s))
}

/// Convex mixture `Σ p_k ρ_k`.
pub fn mix(weights: &[f64], states: &[DensityMatrix]) -> Result<DensityMatrix> {
    if weights.len() != states.len() || weights.is_empty() {
        return Err(Error::InvalidWeights(format!(
            "{} weights for {} states",
            weights.len(),
            states.len()
        )));
    }
    if let Some(w) = weights.iter().find(|&&w| !w.is_finite() || w < 0.0) {
        return Err(Error::InvalidWeights(format!("negative or non-finite weight {w}")));
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidWeights(format!("weights sum to {sum}")));
    }
    let dims = states[0].dims.clone();
    let total = states[0].total_dimension();
    let mut m = CMatrix::zeros(total, total);
    for (w, s) in weights.iter().zip(states) {
        if s.dims != dims {
            return Err(Error::DimensionMismatch {
                expected: total,
                actual: s.total_dimension(),
            });
        }
        m += s.matrix.scale(*w);
    }
    Ok(DensityMatrix::from_trusted(m, dims))
}

fn check_keep(keep: &[usize], parties: usize) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return Err(Error::InvalidParties("keep set is empty".into()));
    }
    let mut sorted = keep.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != keep.len() {
        return Err(Error::InvalidParties(format!("duplicate party in {keep:?}")));
    }
    if let Some(&p) = sorted.iter().find(|&&p| p >= parties) {
        return Err(Error::InvalidParties(format!(
            "party {p} out of range for {parties} parties"
        )));
    }
    Ok(sorted)
}

/// Reduced state on the parties in `keep` (kept in ascending party order).
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.parties();
    let keep = check_keep(keep, n)?;
    if keep.len() == n {
        return Ok(rho.clone());
    }
    let traced: Vec<usize> = (0..n).filter(|p| !keep.contains(p)).collect();
    let keep_dims: Vec<usize> = keep.iter().map(|&p| rho.dims[p]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&p| rho.dims[p]).collect();
    let kd: usize = keep_dims.iter().product();
    let td: usize = traced_dims.iter().product();

    // full index of each (kept, traced) pair
    let mut full = vec![0usize; kd * td];
    let mut kdig = vec![0; keep.len()];
    let mut tdig = vec![0; traced.len()];
    let mut all = vec![0; n];
    for k in 0..kd {
        linalg::digits(k, &keep_dims, &mut kdig);
        for t in 0..td {
            linalg::digits(t, &traced_dims, &mut tdig);
            for (slot, &p) in kdig.iter().zip(&keep) {
                all[p] = *slot;
            }
            for (slot, &p) in tdig.iter().zip(&traced) {
                all[p] = *slot;
            }
            full[k * td + t] = linalg::compose(&all, &rho.dims);
        }
    }

    let m = &rho.matrix;
    let mut out = CMatrix::zeros(kd, kd);
    for r in 0..kd {
        for c in 0..kd {
            let mut acc = ZERO;
            for t in 0..td {
                acc += m[(full[r * td + t], full[c * td + t])];
            }
            out[(r, c)] = acc;
        }
    }
    Ok(DensityMatrix::from_trusted(out, keep_dims))
}

/// Transposes the indices of one party.
pub fn partial_transpose(rho: &DensityMatrix, party: usize) -> Result<HermitianOperator> {
    partial_transpose_matrix(&rho.matrix, &rho.dims, party)
        .map(|m| HermitianOperator::from_parts(m, rho.dims.clone()))
}

/// Partial transpose of an arbitrary Hermitian operator.
pub fn partial_transpose_operator(op: &HermitianOperator, party: usize) -> Result<HermitianOperator> {
    partial_transpose_matrix(&op.matrix, &op.dims, party)
        .map(|m| HermitianOperator::from_parts(m, op.dims.clone()))
}

fn partial_transpose_matrix(m: &CMatrix, dims: &[usize], party: usize) -> Result<CMatrix> {
    if party >= dims.len() {
        return Err(Error::InvalidParties(format!(
            "party {party} out of range for {} parties",
            dims.len()
        )));
    }
    let total = m.nrows();
    // stride of `party` in the row-major multi-index
    let stride: usize = dims[party + 1..].iter().product();
    let d = dims[party];
    let mut out = CMatrix::zeros(total, total);
    for r in 0..total {
        let rd = (r / stride) % d;
        for c in 0..total {
            let cd = (c / stride) % d;
            let r2 = r - rd * stride + cd * stride;
            let c2 = c - cd * stride + rd * stride;
            out[(r2, c2)] = m[(r, c)];
        }
    }
    Ok(out)
}

/// `Tr ρ²`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.purity()
}

/// `(⊗_p U_p) ρ (⊗_p U_p)†` with one unitary per party.
pub fn apply_local_unitaries(rho: &DensityMatrix, unitaries: &[CMatrix]) -> Result<DensityMatrix> {
    if unitaries.len() != rho.parties() {
        return Err(Error::InvalidParties(format!(
            "{} unitaries for {} parties",
            unitaries.len(),
            rho.parties()
        )));
    }
    for (u, &d) in unitaries.iter().zip(&rho.dims) {
        if u.nrows() != d || u.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: u.nrows(),
            });
        }
    }
    let full = unitaries[1..]
        .iter()
        .fold(unitaries[0].clone(), |acc, u| linalg::kron(&acc, u));
    let m = &full * &rho.matrix * full.adjoint();
    Ok(DensityMatrix::from_trusted(m, rho.dims.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn singlet() -> DensityMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        from_pure(&[c(0.0), c(s), c(-s), c(0.0)], &[2, 2]).unwrap()
    }

    fn diag(values: &[f64], dims: &[usize]) -> CMatrix {
        let _ = dims;
        CMatrix::from_diagonal(&DVector::from_iterator(values.len(), values.iter().map(|&v| c(v))))
    }

    #[test]
    fn pure_states() {
        let rho = from_pure(&[c(1.0), c(0.0)], &[2]).unwrap();
        assert_eq!(rho.matrix(), &diag(&[1.0, 0.0], &[2]));
        let a = from_pure(&[c(2.0), c(0.0), c(0.0), c(2.0)], &[2, 2]).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let b = from_pure(&[c(s), c(0.0), c(0.0), c(s)], &[2, 2]).unwrap();
        assert!(linalg::max_abs_diff(a.matrix(), b.matrix()) < 1e-15);
        assert!((a.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pure_state_errors() {
        assert_eq!(from_pure(&[c(0.0), c(0.0)], &[2]).unwrap_err(), Error::ZeroVector);
        assert!(matches!(
            from_pure(&[c(1.0)], &[2]).unwrap_err(),
            Error::DimensionMismatch { .. }
        ));
    }

    #[test]
    fn validation() {
        let m = CMatrix::identity(4, 4).scale(0.25);
        assert!(validate(m, &[2, 2]).is_ok());
        let err = validate(diag(&[1.5, -0.5], &[2]), &[2]).unwrap_err();
        assert!(matches!(err, Error::NotPsd { min_eigenvalue } if (min_eigenvalue + 0.5).abs() < 1e-12));
        let err = validate(diag(&[0.5, 0.4], &[2]), &[2]).unwrap_err();
        assert!(matches!(err, Error::TraceNotOne { .. }));
        let mut m = diag(&[0.5, 0.5], &[2]);
        m[(0, 1)] = c(0.1);
        assert!(matches!(validate(m, &[2]).unwrap_err(), Error::NotHermitian { .. }));
        let pt = partial_transpose(&singlet(), 1).unwrap();
        let err = pt.into_density_matrix().unwrap_err();
        assert!(matches!(err, Error::NotPsd { min_eigenvalue } if (min_eigenvalue + 0.5).abs() < 1e-12));
    }

    #[test]
    fn too_large() {
        let m = CMatrix::zeros(512, 512);
        assert_eq!(validate(m, &[2; 9]).unwrap_err(), Error::DimensionTooLarge(512));
    }

    #[test]
    fn tensor_products() {
        let a = DensityMatrix::basis_state(0, &[2]).unwrap();
        let b = DensityMatrix::basis_state(1, &[2]).unwrap();
        let ab = tensor(&a, &b).unwrap();
        assert_eq!(ab.matrix(), &diag(&[0.0, 1.0, 0.0, 0.0], &[]));
        assert_eq!(ab.dims(), &[2, 2]);
        let mm = tensor(
            &DensityMatrix::maximally_mixed(&[2]).unwrap(),
            &DensityMatrix::maximally_mixed(&[2]).unwrap(),
        )
        .unwrap();
        assert!(linalg::max_abs_diff(mm.matrix(), &CMatrix::identity(4, 4).scale(0.25)) < 1e-16);
    }

    #[test]
    fn mixtures() {
        let s = singlet();
        let same = mix(&[1.0], std::slice::from_ref(&s)).unwrap();
        assert_eq!(same.matrix(), s.matrix());
        let ud = DensityMatrix::basis_state(1, &[2, 2]).unwrap();
        let du = DensityMatrix::basis_state(2, &[2, 2]).unwrap();
        let m = mix(&[0.5, 0.5], &[ud, du]).unwrap();
        assert_eq!(m.matrix(), &diag(&[0.0, 0.5, 0.5, 0.0], &[]));
        assert!(mix(&[-0.1, 1.1], &[s.clone(), s.clone()]).is_err());
        assert!(mix(&[0.5, 0.6], &[s.clone(), s.clone()]).is_err());
        let q = DensityMatrix::maximally_mixed(&[2]).unwrap();
        assert!(mix(&[0.5, 0.5], &[s, q]).is_err());
    }

    #[test]
    fn partial_traces() {
        let a = partial_trace(&singlet(), &[0]).unwrap();
        assert!(linalg::max_abs_diff(a.matrix(), &CMatrix::identity(2, 2).scale(0.5)) < 1e-15);
        let x = from_pure(&[c(0.6), c(0.8)], &[2]).unwrap();
        let y = DensityMatrix::maximally_mixed(&[3]).unwrap();
        let xy = tensor(&x, &y).unwrap();
        let yb = partial_trace(&xy, &[1]).unwrap();
        assert!(linalg::max_abs_diff(yb.matrix(), y.matrix()) < 1e-15);
        assert_eq!(yb.dims(), &[3]);
        assert!(partial_trace(&xy, &[]).is_err());
        assert!(partial_trace(&xy, &[2]).is_err());
        assert!(partial_trace(&xy, &[0, 0]).is_err());
    }

    #[test]
    fn partial_trace_middle_party() {
        let a = DensityMatrix::basis_state(0, &[2]).unwrap();
        let b = DensityMatrix::maximally_mixed(&[3]).unwrap();
        let cst = DensityMatrix::basis_state(1, &[2]).unwrap();
        let abc = tensor_all(&[a.clone(), b, cst.clone()]).unwrap();
        let ac = partial_trace(&abc, &[2, 0]).unwrap();
        let expected = tensor(&a, &cst).unwrap();
        assert!(linalg::max_abs_diff(ac.matrix(), expected.matrix()) < 1e-15);
    }

    #[test]
    fn partial_transposes() {
        let s = singlet();
        let pt = partial_transpose(&s, 1).unwrap();
        assert!((pt.min_eigenvalue() + 0.5).abs() < 1e-12);
        assert!((pt.trace() - 1.0).abs() < 1e-15);
        let back = partial_transpose_operator(&pt, 1).unwrap();
        assert!(linalg::max_abs_diff(back.matrix(), s.matrix()) < 1e-16);
        assert!(partial_transpose(&s, 2).is_err());

        let x = from_pure(&[c(0.6), Complex64::new(0.0, 0.8)], &[2]).unwrap();
        let y = from_pure(&[c(0.6), Complex64::new(0.0, 0.8)], &[2]).unwrap();
        let pt = partial_transpose(&tensor(&x, &y).unwrap(), 1).unwrap();
        let yt = DensityMatrix::from_trusted(y.matrix().transpose(), vec![2]);
        let expected = tensor(&x, &yt).unwrap();
        assert!(linalg::max_abs_diff(pt.matrix(), expected.matrix()) < 1e-15);
        assert!(pt.min_eigenvalue() > -1e-12);
    }

    #[test]
    fn purities() {
        assert!((DensityMatrix::maximally_mixed(&[2, 2]).unwrap().purity() - 0.25).abs() < 1e-15);
        assert!((purity(&singlet()) - 1.0).abs() < 1e-12);
    }
}
