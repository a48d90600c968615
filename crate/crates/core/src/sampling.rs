//! Random states and unitaries for property checks and benchmarks.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::linalg::CMatrix;
use crate::qstate::{self, DensityMatrix};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Haar-random pure state.
pub fn random_pure<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> Result<DensityMatrix> {
    let total: usize = dims.iter().product();
    let amps: Vec<Complex64> = (0..total).map(|_| gaussian(rng)).collect();
    qstate::from_pure(&amps, dims)
}

/// Random mixed state `G G† / Tr(G G†)` with a `D × rank` Ginibre matrix.
pub fn random_mixed<R: Rng + ?Sized>(dims: &[usize], rank: usize, rng: &mut R) -> Result<DensityMatrix> {
    let total: usize = dims.iter().product();
    let g = ginibre(total, rank.max(1), rng);
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    qstate::validate(m.unscale(tr), dims)
}

/// Full-rank random mixed state.
pub fn random_density<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> Result<DensityMatrix> {
    let total: usize = dims.iter().product();
    random_mixed(dims, total, rng)
}

/// Haar-random unitary (QR of a Ginibre matrix with the phase fix).
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let qr = ginibre(n, n, rng).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Uniformly random point in the unit ball.
pub fn random_bloch_vector<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        if v.iter().map(|x| x * x).sum::<f64>() <= 1.0 {
            return v;
        }
    }
}
