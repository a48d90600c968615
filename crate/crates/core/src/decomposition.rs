//! Coherence vectors and correlation tensors of multipartite states.
//!
//! A state on parties with dimensions `n_1, …, n_N` is written as
//!
//! ```text
//! ρ = (1/D) Σ_S Π_{I∈S} (n_I/2) T_S · (⊗_{I∈S} G_{i_I}) ⊗ 1_rest
//! ```
//!
//! where `T_S` is the full correlator `⟨⊗_{I∈S} G_{i_I}⟩` on the party
//! subset `S`. The stored tensors are the correlator minus the product of
//! the single-party coherence vectors: `C_ij = ⟨G_i G_j⟩ - n_i n_j`,
//! `D_ijk = ⟨G_i G_j G_k⟩ - n_i n_j n_k`, `E_ijkl = ⟨…⟩ - n_i n_j n_k n_l`.
//! Pair and triple tensors of larger systems are evaluated on the
//! corresponding marginal, which makes the expansion above exact.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::qstate::{self, DensityMatrix, HermitianOperator};
use crate::su_basis::{shared_basis, Entry, GeneratorBasis};

/// Largest tolerated imaginary part of a generator expectation value.
pub const IMAGINARY_TOL: f64 = 1e-12;

/// Dense real tensor stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTensor {
    shape: Vec<usize>,
    data: Vec<f64>,
}

impl CorrelationTensor {
    pub fn zeros(shape: &[usize]) -> Self {
        Self {
            shape: shape.to_vec(),
            data: vec![0.0; shape.iter().product()],
        }
    }

    pub fn from_vec(shape: &[usize], data: Vec<f64>) -> Result<Self> {
        let len: usize = shape.iter().product();
        if len != data.len() {
            return Err(Error::MalformedDecomposition(format!(
                "tensor of shape {shape:?} needs {len} entries, got {}",
                data.len()
            )));
        }
        Ok(Self {
            shape: shape.to_vec(),
            data,
        })
    }

    pub fn from_matrix(m: &DMatrix<f64>) -> Self {
        let data = (0..m.nrows())
            .flat_map(|r| (0..m.ncols()).map(move |c| (r, c)))
            .map(|(r, c)| m[(r, c)])
            .collect();
        Self {
            shape: vec![m.nrows(), m.ncols()],
            data,
        }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn order(&self) -> usize {
        self.shape.len()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    fn offset(&self, index: &[usize]) -> usize {
        assert_eq!(index.len(), self.shape.len(), "tensor index rank");
        index.iter().zip(&self.shape).fold(0, |acc, (&i, &d)| {
            assert!(i < d, "tensor index out of range");
            acc * d + i
        })
    }

    pub fn get(&self, index: &[usize]) -> f64 {
        self.data[self.offset(index)]
    }

    pub fn set(&mut self, index: &[usize], value: f64) {
        let o = self.offset(index);
        self.data[o] = value;
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Matrix view of an order-2 tensor.
    pub fn to_matrix(&self) -> Option<DMatrix<f64>> {
        (self.order() == 2)
            .then(|| DMatrix::from_row_slice(self.shape[0], self.shape[1], &self.data))
    }

    /// Nested-array form, outermost index first.
    pub fn to_json(&self) -> serde_json::Value {
        fn nest(shape: &[usize], data: &[f64]) -> serde_json::Value {
            match shape {
                [] => serde_json::json!(data[0]),
                [_] => serde_json::json!(data),
                [n, rest @ ..] => {
                    let stride = data.len() / n;
                    serde_json::Value::Array(
                        data.chunks(stride).map(|chunk| nest(rest, chunk)).collect(),
                    )
                }
            }
        }
        nest(&self.shape, &self.data)
    }
}

/// Correlation tensor attached to a subset of parties (ascending indices).
#[derive(Debug, Clone, PartialEq)]
pub struct PartyCorrelation {
    pub parties: Vec<usize>,
    pub tensor: CorrelationTensor,
}

/// Coherence vectors plus correlation tensors of every order the system has.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochDecomposition {
    dims: Vec<usize>,
    coherence_vectors: Vec<Vec<f64>>,
    /// Subsets of size >= 2, ordered by size then lexicographically.
    correlations: Vec<PartyCorrelation>,
}

/// All subsets of `0..n` with at least two members, by size then lexicographic.
fn correlated_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 2..=n {
        let mut subsets: Vec<Vec<usize>> = (0u32..(1 << n))
            .filter(|m| m.count_ones() as usize == size)
            .map(|m| (0..n).filter(|&i| m & (1 << i) != 0).collect())
            .collect();
        subsets.sort();
        out.extend(subsets);
    }
    out
}

impl BlochDecomposition {
    /// Assembles a decomposition from parts, checking every shape.
    ///
    /// `correlations` must list every party subset of size >= 2 in the
    /// canonical order (pairs, then triples, then the quadruple).
    pub fn from_parts(
        dims: Vec<usize>,
        coherence_vectors: Vec<Vec<f64>>,
        correlations: Vec<PartyCorrelation>,
    ) -> Result<Self> {
        if dims.is_empty() || dims.len() > 4 {
            return Err(Error::MalformedDecomposition(format!(
                "{} parties not supported",
                dims.len()
            )));
        }
        if coherence_vectors.len() != dims.len() {
            return Err(Error::MalformedDecomposition(
                "one coherence vector per party required".into(),
            ));
        }
        for (v, &d) in coherence_vectors.iter().zip(&dims) {
            if d < 2 || v.len() != d * d - 1 {
                return Err(Error::MalformedDecomposition(format!(
                    "coherence vector of length {} for dimension {d}",
                    v.len()
                )));
            }
        }
        let subsets = correlated_subsets(dims.len());
        if subsets.len() != correlations.len() {
            return Err(Error::MalformedDecomposition(format!(
                "expected {} correlation tensors, got {}",
                subsets.len(),
                correlations.len()
            )));
        }
        for (s, c) in subsets.iter().zip(&correlations) {
            let shape: Vec<usize> = s.iter().map(|&p| dims[p] * dims[p] - 1).collect();
            if &c.parties != s || c.tensor.shape() != shape.as_slice() {
                return Err(Error::MalformedDecomposition(format!(
                    "correlation for parties {:?} has shape {:?}, expected parties {s:?} shape {shape:?}",
                    c.parties,
                    c.tensor.shape()
                )));
            }
        }
        Ok(Self {
            dims,
            coherence_vectors,
            correlations,
        })
    }

    /// Two-party decomposition from `n_A`, `n_B` and `C`.
    pub fn bipartite(
        dims: (usize, usize),
        n_a: Vec<f64>,
        n_b: Vec<f64>,
        c: &DMatrix<f64>,
    ) -> Result<Self> {
        Self::from_parts(
            vec![dims.0, dims.1],
            vec![n_a, n_b],
            vec![PartyCorrelation {
                parties: vec![0, 1],
                tensor: CorrelationTensor::from_matrix(c),
            }],
        )
    }

    /// All-zero tensors: the maximally mixed state.
    pub fn zero(dims: &[usize]) -> Result<Self> {
        let subsets = correlated_subsets(dims.len());
        let correlations = subsets
            .into_iter()
            .map(|s| {
                let shape: Vec<usize> = s.iter().map(|&p| dims[p] * dims[p] - 1).collect();
                PartyCorrelation {
                    parties: s,
                    tensor: CorrelationTensor::zeros(&shape),
                }
            })
            .collect();
        let vectors = dims.iter().map(|&d| vec![0.0; d.saturating_mul(d).saturating_sub(1)]).collect();
        Self::from_parts(dims.to_vec(), vectors, correlations)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn coherence_vectors(&self) -> &[Vec<f64>] {
        &self.coherence_vectors
    }

    pub fn coherence_vector(&self, party: usize) -> &[f64] {
        &self.coherence_vectors[party]
    }

    pub fn coherence_vector_mut(&mut self, party: usize) -> &mut [f64] {
        &mut self.coherence_vectors[party]
    }

    pub fn correlations(&self) -> &[PartyCorrelation] {
        &self.correlations
    }

    /// Tensor for an exact party subset (ascending).
    pub fn correlation(&self, parties: &[usize]) -> Option<&CorrelationTensor> {
        self.correlations
            .iter()
            .find(|c| c.parties == parties)
            .map(|c| &c.tensor)
    }

    pub fn correlation_mut(&mut self, parties: &[usize]) -> Option<&mut CorrelationTensor> {
        self.correlations
            .iter_mut()
            .find(|c| c.parties == parties)
            .map(|c| &mut c.tensor)
    }

    /// `C^{ab}` as a matrix; rows index party `a` generators.
    pub fn correlation_matrix(&self, a: usize, b: usize) -> Option<DMatrix<f64>> {
        if a < b {
            self.correlation(&[a, b]).and_then(CorrelationTensor::to_matrix)
        } else if b < a {
            self.correlation(&[b, a])
                .and_then(CorrelationTensor::to_matrix)
                .map(|m| m.transpose())
        } else {
            None
        }
    }

    /// Pairwise correlation tensors.
    pub fn pair_correlations(&self) -> impl Iterator<Item = &PartyCorrelation> {
        self.correlations.iter().filter(|c| c.parties.len() == 2)
    }

    /// Three-party tensors `D`.
    pub fn triple_correlations(&self) -> impl Iterator<Item = &PartyCorrelation> {
        self.correlations.iter().filter(|c| c.parties.len() == 3)
    }

    /// Four-party tensor `E`, when present.
    pub fn quad_correlation(&self) -> Option<&CorrelationTensor> {
        self.correlations
            .iter()
            .find(|c| c.parties.len() == 4)
            .map(|c| &c.tensor)
    }

    /// Report form: dims, coherence vectors, and tensors keyed by party
    /// letters (`"AB"`, `"ABC"`, …).
    pub fn to_json(&self) -> serde_json::Value {
        let mut pairs = serde_json::Map::new();
        let mut triples = serde_json::Map::new();
        let mut quad = serde_json::Value::Null;
        for c in &self.correlations {
            let key: String = c.parties.iter().map(|&p| party_label(p)).collect();
            match c.parties.len() {
                2 => {
                    pairs.insert(key, c.tensor.to_json());
                }
                3 => {
                    triples.insert(key, c.tensor.to_json());
                }
                _ => quad = c.tensor.to_json(),
            }
        }
        serde_json::json!({
            "dims": self.dims,
            "coherence_vectors": self.coherence_vectors,
            "pair_correlations": pairs,
            "triple_correlations": triples,
            "quad_correlation": quad,
        })
    }
}

/// `A`, `B`, `C`, … for party indices.
pub fn party_label(p: usize) -> char {
    (b'A' + p as u8) as char
}

fn bases_for(dims: &[usize]) -> Result<Vec<Arc<GeneratorBasis>>> {
    dims.iter().map(|&d| shared_basis(d)).collect()
}

/// Full correlators `⟨⊗_p G_{i_p}⟩` over every party of `rho`.
fn full_correlator(rho: &CMatrix, dims: &[usize], bases: &[&GeneratorBasis]) -> Result<CorrelationTensor> {
    let shape: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    let mut tensor = CorrelationTensor::zeros(&shape);
    let count = tensor.data.len();
    let mut idx = vec![0usize; shape.len()];
    let mut entries: Vec<&[Entry]> = Vec::with_capacity(dims.len());
    for flat in 0..count {
        linalg::digits(flat, &shape, &mut idx);
        entries.clear();
        entries.extend(idx.iter().zip(bases).map(|(&i, b)| b.entries(i)));
        // Tr(K ρ) = Σ K[r, c] ρ[c, r]
        let mut acc = Complex64::new(0.0, 0.0);
        for_each_product(&entries, dims, &mut |r, c, v| acc += v * rho[(c, r)]);
        if acc.im.abs() > IMAGINARY_TOL {
            return Err(Error::ImaginaryResidue(acc.im.abs()));
        }
        tensor.data[flat] = acc.re;
    }
    Ok(tensor)
}

/// Visits the non-zero entries `(row, col, value)` of `⊗_p M_p` given the
/// non-zero entries of each factor.
fn for_each_product(
    entries: &[&[Entry]],
    dims: &[usize],
    f: &mut impl FnMut(usize, usize, Complex64),
) {
    fn go(
        entries: &[&[Entry]],
        dims: &[usize],
        row: usize,
        col: usize,
        value: Complex64,
        f: &mut impl FnMut(usize, usize, Complex64),
    ) {
        match entries.split_first() {
            None => f(row, col, value),
            Some((first, rest)) => {
                let d = dims[0];
                for &(r, c, v) in first.iter() {
                    go(rest, &dims[1..], row * d + r, col * d + c, value * v, f);
                }
            }
        }
    }
    go(entries, dims, 0, 0, Complex64::new(1.0, 0.0), f);
}

/// `n_i = Tr(G_i ρ)` for a single-party state.
pub fn coherence_vector(rho: &DensityMatrix, basis: &GeneratorBasis) -> Result<Vec<f64>> {
    if rho.parties() != 1 {
        return Err(Error::UnsupportedShape(format!(
            "coherence vector needs a single-party state, got {} parties",
            rho.parties()
        )));
    }
    if rho.dims()[0] != basis.dimension() {
        return Err(Error::DimensionMismatch {
            expected: basis.dimension(),
            actual: rho.dims()[0],
        });
    }
    Ok(full_correlator(rho.matrix(), rho.dims(), &[basis])?.data)
}

fn product_of_vectors(vectors: &[&[f64]], index: &[usize]) -> f64 {
    vectors.iter().zip(index).map(|(v, &i)| v[i]).product()
}

/// Decomposes any supported state (1 to 4 parties; four parties must all
/// be qubits).
pub fn decompose(rho: &DensityMatrix) -> Result<BlochDecomposition> {
    let n = rho.parties();
    if n > 4 {
        return Err(Error::UnsupportedShape(format!("{n} parties (at most 4 supported)")));
    }
    if n == 4 && rho.dims().iter().any(|&d| d != 2) {
        return Err(Error::UnsupportedShape(format!(
            "four-party decomposition supports qubits only, got dims {:?}",
            rho.dims()
        )));
    }
    let dims = rho.dims().to_vec();
    let bases = bases_for(&dims)?;

    let vectors = bases
        .iter()
        .enumerate()
        .map(|(p, basis)| coherence_vector(&qstate::partial_trace(rho, &[p])?, basis))
        .collect::<Result<Vec<_>>>()?;

    let mut correlations = Vec::new();
    for subset in correlated_subsets(n) {
        let marginal = qstate::partial_trace(rho, &subset)?;
        let sub_bases: Vec<&GeneratorBasis> = subset.iter().map(|&p| bases[p].as_ref()).collect();
        let mut tensor = full_correlator(marginal.matrix(), marginal.dims(), &sub_bases)?;
        let sub_vectors: Vec<&[f64]> = subset.iter().map(|&p| vectors[p].as_slice()).collect();
        let shape = tensor.shape.clone();
        let mut idx = vec![0; shape.len()];
        for (flat, value) in tensor.data.iter_mut().enumerate() {
            linalg::digits(flat, &shape, &mut idx);
            *value -= product_of_vectors(&sub_vectors, &idx);
        }
        correlations.push(PartyCorrelation {
            parties: subset,
            tensor,
        });
    }
    BlochDecomposition::from_parts(dims, vectors, correlations)
}

fn require_parties(rho: &DensityMatrix, n: usize) -> Result<()> {
    if rho.parties() != n {
        return Err(Error::UnsupportedShape(format!(
            "expected {n} parties, got {}",
            rho.parties()
        )));
    }
    Ok(())
}

/// `n_A`, `n_B` and `C_ij = ⟨G_i ⊗ G_j⟩ - n_{A,i} n_{B,j}` for any `n × m` pair.
pub fn decompose_bipartite(rho: &DensityMatrix) -> Result<BlochDecomposition> {
    require_parties(rho, 2)?;
    decompose(rho)
}

/// Coherence vectors, the three pair matrices and `D_ijk`.
pub fn decompose_tripartite(rho: &DensityMatrix) -> Result<BlochDecomposition> {
    require_parties(rho, 3)?;
    decompose(rho)
}

/// Four-qubit decomposition: six `C`, four `D` and `E_ijkl`.
pub fn decompose_quadripartite(rho: &DensityMatrix) -> Result<BlochDecomposition> {
    require_parties(rho, 4)?;
    decompose(rho)
}

/// Rebuilds the operator described by a decomposition.
///
/// The result is Hermitian with unit trace. It is positive only when the
/// decomposition describes a physical state.
pub fn reconstruct(decomp: &BlochDecomposition) -> Result<HermitianOperator> {
    let dims = decomp.dims();
    let n = dims.len();
    let bases = bases_for(dims)?;
    let total: usize = dims.iter().product();
    let identities: Vec<Vec<Entry>> = dims
        .iter()
        .map(|&d| (0..d).map(|k| (k, k, Complex64::new(1.0, 0.0))).collect())
        .collect();

    let mut out = CMatrix::zeros(total, total);
    let mut entries: Vec<&[Entry]> = Vec::with_capacity(n);
    for mask in 0u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|&p| mask & (1 << p) != 0).collect();
        let shape: Vec<usize> = subset.iter().map(|&p| bases[p].len()).collect();
        let prefactor: f64 = subset.iter().map(|&p| dims[p] as f64 / 2.0).product::<f64>() / total as f64;
        let sub_vectors: Vec<&[f64]> = subset
            .iter()
            .map(|&p| decomp.coherence_vector(p))
            .collect();
        let corr = (subset.len() >= 2).then(|| decomp.correlation(&subset)).flatten();
        let count: usize = shape.iter().product();
        let mut idx = vec![0; subset.len()];
        for flat in 0..count {
            linalg::digits(flat, &shape, &mut idx);
            let mut t = product_of_vectors(&sub_vectors, &idx);
            if let Some(c) = corr {
                t += c.data[flat];
            }
            if t == 0.0 {
                continue;
            }
            entries.clear();
            let mut k = 0;
            for p in 0..n {
                if mask & (1 << p) != 0 {
                    entries.push(bases[p].entries(idx[k]));
                    k += 1;
                } else {
                    entries.push(&identities[p]);
                }
            }
            let coeff = prefactor * t;
            for_each_product(&entries, dims, &mut |r, c, v| out[(r, c)] += v * coeff);
        }
    }
    Ok(HermitianOperator::from_parts(linalg::hermitian_part(&out), dims.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{from_pure, tensor};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn singlet() -> DensityMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        from_pure(&[c(0.0), c(s), c(-s), c(0.0)], &[2, 2]).unwrap()
    }

    #[test]
    fn subsets_order() {
        assert_eq!(
            correlated_subsets(3),
            vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]]
        );
        assert_eq!(correlated_subsets(4).len(), 11);
        assert!(correlated_subsets(1).is_empty());
    }

    #[test]
    fn single_party_vectors() {
        let up = DensityMatrix::basis_state(0, &[2]).unwrap();
        assert_eq!(coherence_vector(&up, &shared_basis(2).unwrap()).unwrap(), vec![0.0, 0.0, 1.0]);
        let mixed = DensityMatrix::maximally_mixed(&[3]).unwrap();
        let v = coherence_vector(&mixed, &shared_basis(3).unwrap()).unwrap();
        assert!(v.iter().all(|x| x.abs() < 1e-16));
        assert!(coherence_vector(&mixed, &shared_basis(2).unwrap()).is_err());
    }

    #[test]
    fn singlet_correlation() {
        let d = decompose_bipartite(&singlet()).unwrap();
        let cm = d.correlation_matrix(0, 1).unwrap();
        assert!((cm - DMatrix::<f64>::identity(3, 3) * -1.0).abs().max() < 1e-14);
        assert!(d.coherence_vector(0).iter().all(|x| x.abs() < 1e-15));
    }

    #[test]
    fn party_count_checks() {
        assert!(decompose_tripartite(&singlet()).is_err());
        let s = singlet();
        let big = tensor(&tensor(&s, &s).unwrap(), &DensityMatrix::maximally_mixed(&[2]).unwrap()).unwrap();
        assert!(matches!(decompose(&big), Err(Error::UnsupportedShape(_))));
        let q = tensor(&s, &DensityMatrix::maximally_mixed(&[3, 2]).unwrap()).unwrap();
        assert!(matches!(decompose_quadripartite(&q), Err(Error::UnsupportedShape(_))));
    }

    #[test]
    fn reconstruct_maximally_mixed() {
        let d = BlochDecomposition::zero(&[2, 2]).unwrap();
        let op = reconstruct(&d).unwrap();
        assert!(linalg::max_abs_diff(op.matrix(), &CMatrix::identity(4, 4).scale(0.25)) < 1e-16);
    }

    #[test]
    fn reconstruct_from_hand_built_singlet() {
        let d = BlochDecomposition::bipartite(
            (2, 2),
            vec![0.0; 3],
            vec![0.0; 3],
            &(DMatrix::<f64>::identity(3, 3) * -1.0),
        )
        .unwrap();
        let op = reconstruct(&d).unwrap();
        assert!(linalg::max_abs_diff(op.matrix(), singlet().matrix()) < 1e-15);
    }

    #[test]
    fn shape_errors() {
        let bad = BlochDecomposition::bipartite((2, 2), vec![0.0; 3], vec![0.0; 8], &DMatrix::zeros(3, 3));
        assert!(matches!(bad, Err(Error::MalformedDecomposition(_))));
        let bad = BlochDecomposition::bipartite((2, 3), vec![0.0; 3], vec![0.0; 8], &DMatrix::zeros(3, 3));
        assert!(bad.is_err());
    }

    #[test]
    fn tensor_json_nesting() {
        let t = CorrelationTensor::from_vec(&[2, 1, 2], vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(t.to_json(), serde_json::json!([[[1.0, 2.0]], [[3.0, 4.0]]]));
        assert_eq!(t.get(&[1, 0, 1]), 4.0);
    }
}
