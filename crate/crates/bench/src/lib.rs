//! Fixed inputs shared by the benchmarks.

use mpcorr_core::{states, DensityMatrix};

/// Representative states, one per supported shape.
pub fn fixtures() -> Vec<(&'static str, DensityMatrix)> {
    vec![
        ("werner_2x2", states::generalized_werner(0.7, 0.3).expect("werner")),
        ("rashid_2x2", states::rashid(0.4).expect("rashid")),
        ("ghz_2x2x2", states::ghz(3, 2).expect("ghz")),
        ("e3_3x3x3", states::tripartite_qutrit_e3(-0.5, 0.25).expect("e3")),
        ("ghz_2x2x2x2", states::ghz(4, 2).expect("ghz")),
    ]
}
