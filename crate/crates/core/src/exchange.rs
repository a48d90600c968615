//! Two-qubit exchange symmetry.
//!
//! `S = (1 + P_AB)/2` projects onto the triplet, `A = (1 - P_AB)/2` onto the
//! singlet. Because the antisymmetric subspace is one-dimensional, any
//! state with a non-vanishing antisymmetric component projects to the pure
//! singlet.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, ONE};
use crate::qstate::{DensityMatrix, HermitianOperator};

/// Projections whose raw trace falls at or below this are rejected.
pub const NULL_WEIGHT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub enum ExchangeKind {
    Symmetric,
    Antisymmetric,
}

/// A renormalized exchange projection together with its weight `Tr(PρP)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExchangeProjection {
    pub kind: ExchangeKind,
    pub projected: DensityMatrix,
    pub weight: f64,
}

/// The swap operator `P_AB` on two qubits.
pub fn swap_two_qubit() -> CMatrix {
    let mut p = CMatrix::zeros(4, 4);
    for a in 0..2 {
        for b in 0..2 {
            p[(2 * b + a, 2 * a + b)] = ONE;
        }
    }
    p
}

fn projector(sign: f64) -> HermitianOperator {
    let m = (CMatrix::identity(4, 4) + swap_two_qubit().scale(sign)).scale(0.5);
    HermitianOperator::new(m, &[2, 2]).expect("exchange projector is Hermitian")
}

/// `S = (1 + P_AB)/2 = 3/4 + σ_A·σ_B/4`.
pub fn symmetrizer_two_qubit() -> HermitianOperator {
    projector(1.0)
}

/// `A = (1 - P_AB)/2 = 1/4 - σ_A·σ_B/4`.
pub fn antisymmetrizer_two_qubit() -> HermitianOperator {
    projector(-1.0)
}

/// `PρP` for `P = S` or `A`, renormalized.
pub fn project_exchange(rho: &DensityMatrix, kind: ExchangeKind) -> Result<ExchangeProjection> {
    if rho.dims() != [2, 2] {
        return Err(Error::UnsupportedShape(format!(
            "exchange projection needs two qubits, got {:?}",
            rho.dims()
        )));
    }
    let p = match kind {
        ExchangeKind::Symmetric => symmetrizer_two_qubit(),
        ExchangeKind::Antisymmetric => antisymmetrizer_two_qubit(),
    };
    let raw = p.matrix() * rho.matrix() * p.matrix();
    let weight = raw.trace().re;
    if weight <= NULL_WEIGHT_TOL {
        return Err(Error::NullProjection(weight));
    }
    Ok(ExchangeProjection {
        kind,
        projected: DensityMatrix::from_trusted(raw.unscale(weight), vec![2, 2]),
        weight,
    })
}
