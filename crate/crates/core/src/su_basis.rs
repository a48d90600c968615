//! Generalized Gell-Mann generators of SU(n).
//!
//! Every basis produced here satisfies `Tr(G_i G_j) = 2 δ_ij`, so an
//! operator's coefficient along `G_i` is `Tr(G_i H) / 2`. For `n = 2` the
//! generators are the Pauli matrices `(σ_x, σ_y, σ_z)`; for `n = 3` they are
//! the textbook Gell-Mann matrices `λ_1 … λ_8` in their usual order.
//!
//! For `n >= 4` the order is: symmetric/antisymmetric pairs for each `(j, k)`
//! with `j < k` in lexicographic order, followed by the `n - 1` diagonal
//! generators.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{trace_of_product, CMatrix, ZERO};

/// One stored non-zero entry `(row, col, value)` of a generator.
pub type Entry = (usize, usize, Complex64);

/// The `n² - 1` traceless Hermitian generators of SU(n) in canonical order.
#[derive(Debug, Clone)]
pub struct GeneratorBasis {
    dimension: usize,
    generators: Vec<CMatrix>,
    sparse: Vec<Vec<Entry>>,
}

impl GeneratorBasis {
    /// Builds a basis from arbitrary matrices. Used for diagnostics and
    /// negative controls; nothing is checked beyond shape.
    pub fn from_matrices(dimension: usize, generators: Vec<CMatrix>) -> Result<Self> {
        for g in &generators {
            if g.nrows() != dimension || g.ncols() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    actual: g.nrows(),
                });
            }
        }
        let sparse = generators.iter().map(sparse_entries).collect();
        Ok(Self {
            dimension,
            generators,
            sparse,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    pub fn get(&self, i: usize) -> &CMatrix {
        &self.generators[i]
    }

    /// Non-zero entries of generator `i`.
    pub fn entries(&self, i: usize) -> &[Entry] {
        &self.sparse[i]
    }

    /// Expansion coefficients `Tr(G_i H) / 2` of a traceless Hermitian `h`.
    pub fn coefficients(&self, h: &CMatrix) -> Vec<f64> {
        self.generators
            .iter()
            .map(|g| 0.5 * trace_of_product(g, h).re)
            .collect()
    }

    /// `Σ_i c_i G_i`.
    pub fn combine(&self, coefficients: &[f64]) -> CMatrix {
        let n = self.dimension;
        let mut out = CMatrix::zeros(n, n);
        for (c, entries) in coefficients.iter().zip(&self.sparse) {
            for &(r, col, v) in entries {
                out[(r, col)] += v * *c;
            }
        }
        out
    }
}

fn sparse_entries(m: &CMatrix) -> Vec<Entry> {
    let mut out = Vec::new();
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            let v = m[(r, c)];
            if v != ZERO {
                out.push((r, c, v));
            }
        }
    }
    out
}

fn symmetric(n: usize, j: usize, k: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    m[(j, k)] = Complex64::new(1.0, 0.0);
    m[(k, j)] = Complex64::new(1.0, 0.0);
    m
}

fn antisymmetric(n: usize, j: usize, k: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    m[(j, k)] = Complex64::new(0.0, -1.0);
    m[(k, j)] = Complex64::new(0.0, 1.0);
    m
}

/// Diagonal generator `l` (1-based): `sqrt(2/(l(l+1))) (Σ_{i<l} E_ii - l E_ll)`.
fn diagonal(n: usize, l: usize) -> CMatrix {
    let scale = (2.0 / (l * (l + 1)) as f64).sqrt();
    let mut m = CMatrix::zeros(n, n);
    for i in 0..l {
        m[(i, i)] = Complex64::new(scale, 0.0);
    }
    m[(l, l)] = Complex64::new(-(l as f64) * scale, 0.0);
    m
}

/// The Pauli matrices `(σ_x, σ_y, σ_z)`.
pub fn pauli_basis() -> GeneratorBasis {
    GeneratorBasis::from_matrices(2, vec![symmetric(2, 0, 1), antisymmetric(2, 0, 1), diagonal(2, 1)])
        .expect("2x2 generators")
}

/// Generalized Gell-Mann basis for dimension `n >= 2`.
pub fn gell_mann_basis(n: usize) -> Result<GeneratorBasis> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    let generators = match n {
        2 => return Ok(pauli_basis()),
        3 => vec![
            symmetric(3, 0, 1),
            antisymmetric(3, 0, 1),
            diagonal(3, 1),
            symmetric(3, 0, 2),
            antisymmetric(3, 0, 2),
            symmetric(3, 1, 2),
            antisymmetric(3, 1, 2),
            diagonal(3, 2),
        ],
        _ => {
            let mut gs = Vec::with_capacity(n * n - 1);
            for j in 0..n {
                for k in j + 1..n {
                    gs.push(symmetric(n, j, k));
                    gs.push(antisymmetric(n, j, k));
                }
            }
            gs.extend((1..n).map(|l| diagonal(n, l)));
            gs
        }
    };
    GeneratorBasis::from_matrices(n, generators)
}

/// Shared, lazily built basis for dimension `n`.
pub fn shared_basis(n: usize) -> Result<Arc<GeneratorBasis>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GeneratorBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(b) = guard.get(&n) {
        return Ok(Arc::clone(b));
    }
    let basis = Arc::new(gell_mann_basis(n)?);
    guard.insert(n, Arc::clone(&basis));
    Ok(basis)
}

/// Worst-case residuals of the basis invariants.
#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct BasisDiagnostics {
    /// `n² - 1 - len`, as a signed difference.
    pub count_deficit: i64,
    pub hermiticity: f64,
    pub trace: f64,
    /// `max |Tr(G_i G_j) - 2 δ_ij|`.
    pub orthogonality: f64,
}

impl BasisDiagnostics {
    pub fn within(&self, hermiticity: f64, trace: f64, orthogonality: f64) -> bool {
        self.count_deficit == 0
            && self.hermiticity <= hermiticity
            && self.trace <= trace
            && self.orthogonality <= orthogonality
    }
}

pub fn verify_basis(basis: &GeneratorBasis) -> BasisDiagnostics {
    let n = basis.dimension();
    let gs = basis.generators();
    let hermiticity = gs
        .iter()
        .map(crate::linalg::hermiticity_residual)
        .fold(0.0, f64::max);
    let trace = gs.iter().map(|g| g.trace().norm()).fold(0.0, f64::max);
    let mut orthogonality = 0.0_f64;
    for (i, a) in gs.iter().enumerate() {
        for (j, b) in gs.iter().enumerate() {
            let target = if i == j { 2.0 } else { 0.0 };
            let r = (trace_of_product(a, b) - Complex64::new(target, 0.0)).norm();
            orthogonality = orthogonality.max(r);
        }
    }
    BasisDiagnostics {
        count_deficit: (n * n - 1) as i64 - gs.len() as i64,
        hermiticity,
        trace,
        orthogonality,
    }
}
