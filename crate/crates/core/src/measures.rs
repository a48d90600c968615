//! Scalar correlation measures and the pure-state comparison quantities.
//!
//! `E_C` normalizes `Σ C_ij²` by `n_<² / (4(n_<² - 1))` with `n_< = min(n, m)`,
//! so that a maximally entangled pair scores one. `E_D` and `E_E` weight the
//! squared three- and four-party tensors by fixed constants (1/4 for
//! qubit triples, 27/160 for qutrit triples, 1/8 for four qubits).
//!
//! For systems of three or more parties, `E_C` sums over unordered pairs.
//! Summing over ordered pairs would give exactly twice the value.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::decomposition::{self, BlochDecomposition};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::qstate::{self, DensityMatrix};

/// Purity threshold for the pure-state-only measures.
pub const PURE_STATE_TOL: f64 = 1e-8;

/// Weight of `Σ D²` for qubit triples.
pub const K_QUBIT_TRIPLE: f64 = 0.25;
/// Weight of `Σ D²` for qutrit triples.
pub const K_QUTRIT_TRIPLE: f64 = 27.0 / 160.0;
/// Weight of `Σ E²` for four qubits.
pub const K_QUBIT_QUAD: f64 = 0.125;

fn bipartite_norm(n: usize, m: usize) -> f64 {
    let k = n.min(m) as f64;
    k * k / (4.0 * (k * k - 1.0))
}

/// `E_C` from a correlation matrix of an `n`-level and `m`-level pair.
pub fn e_c_bipartite(c: &DMatrix<f64>, dims: (usize, usize)) -> Result<f64> {
    let (n, m) = dims;
    if n < 2 || m < 2 {
        return Err(Error::InvalidDimension(n.min(m)));
    }
    if c.nrows() != n * n - 1 || c.ncols() != m * m - 1 {
        return Err(Error::DimensionMismatch {
            expected: (n * n - 1) * (m * m - 1),
            actual: c.len(),
        });
    }
    Ok(bipartite_norm(n, m) * c.norm_squared())
}

/// `E_C` of a two-party decomposition.
pub fn e_c(decomp: &BlochDecomposition) -> Result<f64> {
    if decomp.parties() != 2 {
        return Err(Error::UnsupportedShape(format!(
            "bipartite E_C needs 2 parties, got {}",
            decomp.parties()
        )));
    }
    let c = decomp.correlation_matrix(0, 1).expect("pair tensor");
    e_c_bipartite(&c, (decomp.dims()[0], decomp.dims()[1]))
}

fn equal_dimension(decomp: &BlochDecomposition) -> Result<usize> {
    let n = decomp.dims()[0];
    if decomp.dims().iter().any(|&d| d != n) {
        return Err(Error::UnsupportedShape(format!(
            "parties must share one dimension, got {:?}",
            decomp.dims()
        )));
    }
    Ok(n)
}

/// Pair-summed `E_C` for systems of three or more equal-dimension parties.
pub fn e_c_multipartite(decomp: &BlochDecomposition) -> Result<f64> {
    if decomp.parties() < 3 {
        return Err(Error::UnsupportedShape(format!(
            "multipartite E_C needs at least 3 parties, got {}",
            decomp.parties()
        )));
    }
    let n = equal_dimension(decomp)?;
    let total: f64 = decomp
        .pair_correlations()
        .map(|c| c.tensor.sum_of_squares())
        .sum();
    Ok(bipartite_norm(n, n) * total)
}

/// `K Σ D_ijk²` for three qubits or three qutrits.
pub fn e_d(decomp: &BlochDecomposition) -> Result<f64> {
    if decomp.parties() != 3 {
        return Err(Error::UnsupportedShape(format!(
            "E_D needs 3 parties, got {}",
            decomp.parties()
        )));
    }
    let k = triple_weight(equal_dimension(decomp)?)?;
    let d = decomp.triple_correlations().next().expect("triple tensor");
    Ok(k * d.tensor.sum_of_squares())
}

/// `(1/8) Σ E_ijkl²` for four qubits.
pub fn e_e(decomp: &BlochDecomposition) -> Result<f64> {
    if decomp.parties() != 4 || decomp.dims().iter().any(|&d| d != 2) {
        return Err(Error::UnsupportedShape(format!(
            "E_E needs four qubits, got {:?}",
            decomp.dims()
        )));
    }
    let e = decomp.quad_correlation().expect("quad tensor");
    Ok(K_QUBIT_QUAD * e.sum_of_squares())
}

fn require_pure_bipartite(rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.parties() != 2 {
        return Err(Error::UnsupportedShape(format!(
            "expected a bipartite state, got {} parties",
            rho.parties()
        )));
    }
    let purity = rho.purity();
    if (purity - 1.0).abs() > PURE_STATE_TOL {
        return Err(Error::MixedStateUnsupported { purity });
    }
    qstate::partial_trace(rho, &[0])
}

/// `sqrt(2 (1 - Tr ρ_A²))` for a pure bipartite state.
pub fn concurrence_pure(rho: &DensityMatrix) -> Result<f64> {
    let reduced = require_pure_bipartite(rho)?;
    Ok((2.0 * (1.0 - reduced.purity())).max(0.0).sqrt())
}

/// Von Neumann entropy of `ρ_A` in bits, for a pure bipartite state.
pub fn entanglement_entropy(rho: &DensityMatrix) -> Result<f64> {
    let reduced = require_pure_bipartite(rho)?;
    Ok(entropy_bits(&reduced.eigenvalues()))
}

/// `-Σ μ log₂ μ` with `0 log 0 = 0`; eigenvalues below 1e-15 count as zero.
pub fn entropy_bits(eigenvalues: &[f64]) -> f64 {
    let s: f64 = eigenvalues
        .iter()
        .filter(|&&mu| mu > 1e-15)
        .map(|&mu| -mu * mu.log2())
        .sum();
    s.max(0.0)
}

/// `Tr[(ρ_AB - ρ_A ⊗ ρ_B)²]`, which equals `Σ C_ij² / 4`.
pub fn connected_square_trace(rho: &DensityMatrix) -> Result<f64> {
    if rho.parties() != 2 {
        return Err(Error::UnsupportedShape("expected a bipartite state".into()));
    }
    let a = qstate::partial_trace(rho, &[0])?;
    let b = qstate::partial_trace(rho, &[1])?;
    let diff = rho.matrix() - linalg::kron(a.matrix(), b.matrix());
    Ok(linalg::trace_of_product(&diff, &diff).re)
}

/// Operator-form cross-check of `E_D`: `K · 8 · Tr R²`, where
/// `R = ρ_ABC - ρ_A ρ_B ρ_C - (1/n³)(n²/4) Σ_pairs C_ij G_i G_j`.
///
/// The subtracted pair terms carry the same weights as in the
/// reconstruction, so `R = (1/8) Σ D_ijk G_i G_j G_k` and `Tr R² = Σ D²/8`.
pub fn e_d_operator_form(rho: &DensityMatrix) -> Result<f64> {
    let decomp = decomposition::decompose_tripartite(rho)?;
    let n = equal_dimension(&decomp)?;
    let k = triple_weight(n)?;
    let total = n * n * n;
    let basis = crate::su_basis::shared_basis(n)?;
    let marginals: Vec<DensityMatrix> = (0..3)
        .map(|p| qstate::partial_trace(rho, &[p]))
        .collect::<Result<_>>()?;
    let product = linalg::kron(
        &linalg::kron(marginals[0].matrix(), marginals[1].matrix()),
        marginals[2].matrix(),
    );
    let mut residual: CMatrix = rho.matrix() - product;
    let identity = CMatrix::identity(n, n);
    let weight = (n * n) as f64 / 4.0 / total as f64;
    for pc in decomp.pair_correlations() {
        let (a, b) = (pc.parties[0], pc.parties[1]);
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                let cij = pc.tensor.get(&[i, j]);
                if cij == 0.0 {
                    continue;
                }
                let factor = |p: usize| {
                    if p == a {
                        basis.get(i)
                    } else if p == b {
                        basis.get(j)
                    } else {
                        &identity
                    }
                };
                let op = linalg::kron(&linalg::kron(factor(0), factor(1)), factor(2));
                residual -= op.scale(weight * cij);
            }
        }
    }
    Ok(k * 8.0 * linalg::trace_of_product(&residual, &residual).re)
}

fn triple_weight(n: usize) -> Result<f64> {
    match n {
        2 => Ok(K_QUBIT_TRIPLE),
        3 => Ok(K_QUTRIT_TRIPLE),
        n => Err(Error::UnsupportedShape(format!(
            "E_D weight is known for qubits and qutrits only, got n = {n}"
        ))),
    }
}

/// Every measure that applies to the state's party structure.
#[derive(Debug, Clone, Copy, Default, Serialize, PartialEq)]
pub struct MeasureSet {
    pub e_c: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_d: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_e: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub concurrence: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entropy_bits: Option<f64>,
}

/// Computes the measures applicable to `rho`.
///
/// Two parties: `E_C`, plus concurrence and entropy when pure. Three or
/// four equal-dimension parties: pair-summed `E_C`, `E_D` (qubits and
/// qutrits) and `E_E` (four qubits).
pub fn measure_all(rho: &DensityMatrix) -> Result<MeasureSet> {
    let decomp = decomposition::decompose(rho)?;
    let mut set = MeasureSet::default();
    match rho.parties() {
        2 => {
            set.e_c = e_c(&decomp)?;
            if (rho.purity() - 1.0).abs() <= PURE_STATE_TOL {
                set.concurrence = Some(concurrence_pure(rho)?);
                set.entropy_bits = Some(entanglement_entropy(rho)?);
            }
        }
        3 => {
            set.e_c = e_c_multipartite(&decomp)?;
            set.e_d = e_d(&decomp).ok();
        }
        4 => {
            set.e_c = e_c_multipartite(&decomp)?;
            set.e_e = Some(e_e(&decomp)?);
        }
        n => {
            return Err(Error::UnsupportedShape(format!(
                "measures need 2 to 4 parties, got {n}"
            )))
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::decompose;
    use crate::qstate::{from_pure, tensor};
    use num_complex::Complex64;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn singlet() -> DensityMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        from_pure(&[c(0.0), c(s), c(-s), c(0.0)], &[2, 2]).unwrap()
    }

    #[test]
    fn e_c_shape_check() {
        assert!(e_c_bipartite(&DMatrix::zeros(3, 8), (2, 2)).is_err());
        assert_eq!(e_c_bipartite(&DMatrix::zeros(3, 8), (2, 3)).unwrap(), 0.0);
    }

    #[test]
    fn cc_example_value_at_zero() {
        let mut cm = DMatrix::zeros(3, 3);
        cm[(2, 2)] = -1.0;
        assert!((e_c_bipartite(&cm, (2, 2)).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn singlet_measures() {
        let s = singlet();
        let m = measure_all(&s).unwrap();
        assert!((m.e_c - 1.0).abs() < 1e-12);
        assert!((m.concurrence.unwrap() - 1.0).abs() < 1e-12);
        assert!((m.entropy_bits.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mixed_state_rejected() {
        let mm = DensityMatrix::maximally_mixed(&[2, 2]).unwrap();
        assert!(matches!(concurrence_pure(&mm), Err(Error::MixedStateUnsupported { .. })));
        assert!(matches!(entanglement_entropy(&mm), Err(Error::MixedStateUnsupported { .. })));
        let m = measure_all(&mm).unwrap();
        assert_eq!(m.e_c, 0.0);
        assert!(m.concurrence.is_none());
    }

    #[test]
    fn product_pure_state() {
        let up = DensityMatrix::basis_state(0, &[2]).unwrap();
        let plus = from_pure(&[c(1.0), c(1.0)], &[2]).unwrap();
        let p = tensor(&up, &plus).unwrap();
        assert!(concurrence_pure(&p).unwrap().abs() < 1e-7);
        assert!(entanglement_entropy(&p).unwrap().abs() < 1e-12);
    }

    #[test]
    fn pair_plus_single() {
        let state = tensor(&singlet(), &DensityMatrix::maximally_mixed(&[2]).unwrap()).unwrap();
        let d = decompose(&state).unwrap();
        assert!((e_c_multipartite(&d).unwrap() - 1.0).abs() < 1e-12);
        assert!(e_d(&d).unwrap().abs() < 1e-12);
        assert!(e_c_multipartite(&decompose(&singlet()).unwrap()).is_err());
    }

    #[test]
    fn e_d_needs_equal_known_dimension() {
        let state = tensor(&singlet(), &DensityMatrix::maximally_mixed(&[3]).unwrap()).unwrap();
        assert!(e_d(&decompose(&state).unwrap()).is_err());
        let four = DensityMatrix::maximally_mixed(&[4, 4, 4]).unwrap();
        assert!(e_d(&decompose(&four).unwrap()).is_err());
    }

    #[test]
    fn entropy_helper() {
        assert_eq!(entropy_bits(&[1.0, 0.0]), 0.0);
        assert!((entropy_bits(&[0.5, 0.5]) - 1.0).abs() < 1e-15);
    }
}
