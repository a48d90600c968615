//! Correlation tensors and entanglement classification of multipartite
//! qubit, qutrit and n-level density matrices.
//!
//! A density matrix is expanded in generalized Gell-Mann generators
//! ([`su_basis`]) into per-party coherence vectors and correlation tensors
//! `C`, `D`, `E` ([`decomposition`]). From those follow the correlation
//! measures `E_C`, `E_D`, `E_E` ([`measures`]), the singular-value and
//! partial-transpose classification ([`classify`]) and the two-qubit
//! exchange projections ([`exchange`]). [`states`] holds the named state
//! families.

pub mod classify;
pub mod decomposition;
pub mod error;
pub mod exchange;
pub mod io;
pub mod linalg;
pub mod measures;
pub mod qstate;
pub mod sampling;
pub mod states;
pub mod su_basis;

pub use classify::{
    classify_two_qubit, correlation_spectrum, ph_condition_explicit, ph_invariants, ph_test,
    ph_test_signflip, Category, ClassificationReport, CorrelationSpectrum, PhInvariants, PhVerdict,
};
pub use decomposition::{
    decompose, decompose_bipartite, decompose_quadripartite, decompose_tripartite, reconstruct,
    BlochDecomposition, CorrelationTensor,
};
pub use error::{Error, Result};
pub use exchange::{project_exchange, ExchangeKind, ExchangeProjection};
pub use linalg::CMatrix;
pub use measures::{measure_all, MeasureSet};
pub use qstate::{DensityMatrix, HermitianOperator};
pub use states::{BellState, Family, StateFamilySpec};
pub use su_basis::{gell_mann_basis, pauli_basis, GeneratorBasis};
