//! Singular-value classification of correlation matrices and the
//! Peres-Horodecki (partial transpose) test.
//!
//! For two qubits the partial transpose on `B` has a second route: it flips
//! the sign of `n_{y,B}` and of the column `C_{iy}`, since `σ_yᵀ = -σ_y`
//! while `σ_x` and `σ_z` are symmetric. Both routes are implemented and
//! must agree.
//!
//! The invariant `ξ = Σ_i d_i - (n_A·C·n_B)/(n_A·n_B)` uses the signed
//! eigenvalues of `C` (so `Σ d_i = Tr C`). With that reading the
//! generalized Werner family satisfies
//! `p (1 + 2 sech 2θ) = -ξ + sqrt(ξ²/4 - n_A·n_B)`; singular values would
//! flip the sign of the first term and break the identity.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::decomposition::{self, BlochDecomposition};
use crate::error::{Error, Result};
use crate::measures;
use crate::qstate::{self, DensityMatrix, PSD_TOL};

/// Absolute floor of the non-zero singular value threshold.
pub const NSV_ABS_FLOOR: f64 = 1e-12;
/// Relative threshold, as a fraction of the largest singular value.
pub const NSV_REL_TOL: f64 = 1e-9;
/// `|n_A·n_B|` at or below this leaves `ξ` undefined.
pub const DEGENERATE_DOT_TOL: f64 = 1e-12;
/// States with purity at or above `1 - PURE_CUTOFF` are treated as pure.
pub const PURE_CUTOFF: f64 = 1e-8;
/// Slack on the explicit PH inequality.
pub const PH_EXPLICIT_TOL: f64 = 1e-10;

/// Singular values (descending) and, for square matrices, eigenvalues.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CorrelationSpectrum {
    pub singular_values: Vec<f64>,
    /// `(re, im)` pairs; `C` need not be normal, so eigenvalues may be complex.
    #[serde(serialize_with = "serialize_complex_list")]
    pub eigenvalues: Option<Vec<Complex64>>,
    pub nsv_count: usize,
    pub threshold_used: f64,
}

fn serialize_complex_list<S: serde::Serializer>(
    v: &Option<Vec<Complex64>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let pairs: Option<Vec<[f64; 2]>> = v.as_ref().map(|v| v.iter().map(|z| [z.re, z.im]).collect());
    serde::Serialize::serialize(&pairs, s)
}

/// SVD-based spectrum with the NSV count.
pub fn correlation_spectrum(c: &DMatrix<f64>) -> CorrelationSpectrum {
    let mut singular_values: Vec<f64> = if c.is_empty() {
        Vec::new()
    } else {
        c.clone().svd(false, false).singular_values.iter().copied().collect()
    };
    singular_values.sort_by(|a, b| b.total_cmp(a));
    let d_max = singular_values.first().copied().unwrap_or(0.0);
    let threshold_used = NSV_ABS_FLOOR.max(NSV_REL_TOL * d_max);
    let nsv_count = singular_values.iter().filter(|&&d| d > threshold_used).count();
    let eigenvalues = (c.is_square() && !c.is_empty()).then(|| {
        let mut ev: Vec<Complex64> = c.complex_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        ev
    });
    CorrelationSpectrum {
        singular_values,
        eigenvalues,
        nsv_count,
        threshold_used,
    }
}

/// Outcome of a partial-transpose test.
#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct PhVerdict {
    pub min_pt_eigenvalue: f64,
    /// Negative partial transpose.
    pub entangled: bool,
    /// PPT implies separability only for 2×2 and 2×3 systems; a PPT result
    /// on larger systems is inconclusive.
    pub conclusive: bool,
}

impl PhVerdict {
    fn from_min_eigenvalue(min_pt_eigenvalue: f64, dims: &[usize]) -> Self {
        let entangled = min_pt_eigenvalue < -PSD_TOL;
        let small = dims.iter().product::<usize>() <= 6;
        Self {
            min_pt_eigenvalue,
            entangled,
            conclusive: entangled || small,
        }
    }

    /// `"NPT-entangled"`, `"PPT-separable"` or `"PPT (inconclusive)"`.
    pub fn label(&self) -> &'static str {
        match (self.entangled, self.conclusive) {
            (true, _) => "NPT-entangled",
            (false, true) => "PPT-separable",
            (false, false) => "PPT (inconclusive)",
        }
    }
}

fn require_bipartite(rho: &DensityMatrix) -> Result<()> {
    if rho.parties() != 2 {
        return Err(Error::UnsupportedShape(format!(
            "PH test needs 2 parties, got {}",
            rho.parties()
        )));
    }
    Ok(())
}

fn require_two_qubits(dims: &[usize]) -> Result<()> {
    if dims != [2, 2] {
        return Err(Error::UnsupportedShape(format!(
            "expected two qubits (dims [2, 2]), got {dims:?}"
        )));
    }
    Ok(())
}

/// Minimum eigenvalue of `ρ^{T_B}` and the resulting verdict.
pub fn ph_test(rho: &DensityMatrix) -> Result<PhVerdict> {
    require_bipartite(rho)?;
    let pt = qstate::partial_transpose(rho, 1)?;
    Ok(PhVerdict::from_min_eigenvalue(pt.min_eigenvalue(), rho.dims()))
}

/// Two-qubit PH test through the decomposition: negate `n_{y,B}` and
/// `C_{iy}`, rebuild, and inspect the spectrum.
pub fn ph_test_signflip(rho: &DensityMatrix) -> Result<PhVerdict> {
    require_two_qubits(rho.dims())?;
    let mut decomp = decomposition::decompose_bipartite(rho)?;
    decomp.coherence_vector_mut(1)[1] *= -1.0;
    let c = decomp.correlation_mut(&[0, 1]).expect("pair tensor");
    for i in 0..3 {
        let v = c.get(&[i, 1]);
        c.set(&[i, 1], -v);
    }
    let op = decomposition::reconstruct(&decomp)?;
    Ok(PhVerdict::from_min_eigenvalue(op.min_eigenvalue(), rho.dims()))
}

/// The invariants entering the explicit PH condition.
#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct PhInvariants {
    pub xi: f64,
    pub na_dot_nb: f64,
    pub na_dot_c_nb: f64,
}

/// `ξ` and `n_A·n_B` for a two-qubit decomposition.
pub fn ph_invariants(decomp: &BlochDecomposition) -> Result<PhInvariants> {
    require_two_qubits(decomp.dims())?;
    let n_a = nalgebra::DVector::from_column_slice(decomp.coherence_vector(0));
    let n_b = nalgebra::DVector::from_column_slice(decomp.coherence_vector(1));
    let c = decomp.correlation_matrix(0, 1).expect("pair tensor");
    let na_dot_nb = n_a.dot(&n_b);
    if na_dot_nb.abs() <= DEGENERATE_DOT_TOL {
        return Err(Error::DegenerateBlochVectors(na_dot_nb.abs()));
    }
    let na_dot_c_nb = n_a.dot(&(&c * &n_b));
    let xi = c.trace() - na_dot_c_nb / na_dot_nb;
    Ok(PhInvariants {
        xi,
        na_dot_nb,
        na_dot_c_nb,
    })
}

/// `-ξ + sqrt(ξ²/4 - n_A·n_B)`, equal to `p (1 + 2 sech 2θ)` on the
/// generalized Werner family.
pub fn werner_strength(inv: &PhInvariants) -> Result<f64> {
    let disc = inv.xi * inv.xi / 4.0 - inv.na_dot_nb;
    if disc < 0.0 {
        return Err(Error::NegativeDiscriminant(disc));
    }
    Ok(-inv.xi + disc.sqrt())
}

/// Largest root of `(x + ξ/2)² + ξ (x + ξ/2) + n_A·n_B = 0`.
pub fn ph_largest_root(inv: &PhInvariants) -> Result<f64> {
    let disc = inv.xi * inv.xi - 4.0 * inv.na_dot_nb;
    if disc < 0.0 {
        return Err(Error::NegativeDiscriminant(disc));
    }
    Ok(-inv.xi / 2.0 + (-inv.xi + disc.sqrt()) / 2.0)
}

/// The explicit PH condition: the largest root is at least one.
pub fn ph_condition_explicit(inv: &PhInvariants) -> Result<bool> {
    Ok(ph_largest_root(inv)? >= 1.0 - PH_EXPLICIT_TOL)
}

/// Two-qubit categories.
#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub enum Category {
    PureProduct,
    PureEntangled,
    ClassicallyCorrelated,
    MixedEntangled,
    Uncorrelated,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ClassificationReport {
    pub category: Category,
    pub nsv_count: usize,
    pub singular_values: Vec<f64>,
    pub purity: f64,
    pub e_c: f64,
    pub ph_entangled: bool,
    pub min_pt_eigenvalue: f64,
    /// `None` when `n_A·n_B` vanishes.
    pub invariants: Option<PhInvariants>,
}

/// Classifies a two-qubit state by purity, NSV count and the PH test.
pub fn classify_two_qubit(rho: &DensityMatrix) -> Result<ClassificationReport> {
    require_two_qubits(rho.dims())?;
    let decomp = decomposition::decompose_bipartite(rho)?;
    let c = decomp.correlation_matrix(0, 1).expect("pair tensor");
    let spectrum = correlation_spectrum(&c);
    let ph = ph_test(rho)?;
    let purity = rho.purity();
    let pure = purity >= 1.0 - PURE_CUTOFF;
    let nsv = spectrum.nsv_count;
    let category = match (pure, nsv) {
        (true, 0) => Category::PureProduct,
        (true, _) => Category::PureEntangled,
        (false, 0) => Category::Uncorrelated,
        (false, _) if ph.entangled => Category::MixedEntangled,
        (false, _) => Category::ClassicallyCorrelated,
    };
    Ok(ClassificationReport {
        category,
        nsv_count: nsv,
        singular_values: spectrum.singular_values,
        purity,
        e_c: measures::e_c(&decomp)?,
        ph_entangled: ph.entangled,
        min_pt_eigenvalue: ph.min_pt_eigenvalue,
        invariants: ph_invariants(&decomp).ok(),
    })
}
