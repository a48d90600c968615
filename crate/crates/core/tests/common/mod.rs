//! Brute-force oracles shared by the integration tests.
//!
//! Generators here are typed in literally and expectation values are
//! formed with full Kronecker products, independent of the sparse
//! evaluation used by the library.

#![allow(dead_code)]

use mpcorr_core::{CMatrix, DensityMatrix};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn mat(n: usize, entries: &[(usize, usize, Complex64)]) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for &(r, col, v) in entries {
        m[(r, col)] = v;
    }
    m
}

/// Literal Pauli or Gell-Mann matrices.
pub fn literal_generators(n: usize) -> Vec<CMatrix> {
    let one = c(1.0, 0.0);
    match n {
        2 => vec![
            mat(2, &[(0, 1, one), (1, 0, one)]),
            mat(2, &[(0, 1, c(0.0, -1.0)), (1, 0, c(0.0, 1.0))]),
            mat(2, &[(0, 0, one), (1, 1, -one)]),
        ],
        3 => {
            let s = 1.0 / 3f64.sqrt();
            vec![
                mat(3, &[(0, 1, one), (1, 0, one)]),
                mat(3, &[(0, 1, c(0.0, -1.0)), (1, 0, c(0.0, 1.0))]),
                mat(3, &[(0, 0, one), (1, 1, -one)]),
                mat(3, &[(0, 2, one), (2, 0, one)]),
                mat(3, &[(0, 2, c(0.0, -1.0)), (2, 0, c(0.0, 1.0))]),
                mat(3, &[(1, 2, one), (2, 1, one)]),
                mat(3, &[(1, 2, c(0.0, -1.0)), (2, 1, c(0.0, 1.0))]),
                mat(3, &[(0, 0, c(s, 0.0)), (1, 1, c(s, 0.0)), (2, 2, c(-2.0 * s, 0.0))]),
            ]
        }
        _ => panic!("no literal generators for n = {n}"),
    }
}

pub fn kron_all(ms: &[CMatrix]) -> CMatrix {
    ms[1..].iter().fold(ms[0].clone(), |acc, m| acc.kronecker(m))
}

/// `Tr[(⊗_p O_p) ρ]` where `O_p` is generator `sel[p]` or the identity.
pub fn brute_expectation(rho: &DensityMatrix, sel: &[Option<usize>]) -> Complex64 {
    let ops: Vec<CMatrix> = rho
        .dims()
        .iter()
        .zip(sel)
        .map(|(&d, s)| match s {
            Some(i) => literal_generators(d)[*i].clone(),
            None => CMatrix::identity(d, d),
        })
        .collect();
    (kron_all(&ops) * rho.matrix()).trace()
}

/// Coherence vector of party `p` by brute force.
pub fn brute_vector(rho: &DensityMatrix, p: usize) -> Vec<f64> {
    let d = rho.dims()[p];
    (0..d * d - 1)
        .map(|i| {
            let mut sel = vec![None; rho.parties()];
            sel[p] = Some(i);
            brute_expectation(rho, &sel).re
        })
        .collect()
}

/// `⟨⊗ G⟩ - Π n` on the parties in `subset` with generator indices `idx`.
pub fn brute_correlation(rho: &DensityMatrix, subset: &[usize], idx: &[usize]) -> f64 {
    let mut sel = vec![None; rho.parties()];
    for (&p, &i) in subset.iter().zip(idx) {
        sel[p] = Some(i);
    }
    let full = brute_expectation(rho, &sel).re;
    let prod: f64 = subset
        .iter()
        .zip(idx)
        .map(|(&p, &i)| brute_vector(rho, p)[i])
        .product();
    full - prod
}

/// All multi-indices for the given shape.
pub fn indices(shape: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &d in shape {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..d).map(move |i| {
                    let mut v = prefix.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn sech(x: f64) -> f64 {
    1.0 / x.cosh()
}

pub fn binary_entropy(q: f64) -> f64 {
    if q <= 0.0 || q >= 1.0 {
        return 0.0;
    }
    -q * q.log2() - (1.0 - q) * (1.0 - q).log2()
}

pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    (0..count)
        .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
        .collect()
}
