mod common;

use common::{four_level_state, hermitian, interior_bloch, qubit};
use proptest::prelude::*;
use udw_core::qmatrix::{
    eig_hermitian, fidelity, majorizes, partial_transpose, relative_entropy, renyi_entropy,
    trace_norm, von_neumann_entropy,
};
use udw_core::DensityMatrix;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn eig_reconstructs_2x2(m in hermitian(2)) {
        let s = eig_hermitian(&m).unwrap();
        prop_assert!(s.reconstruct().max_abs_diff(&m) <= 1e-10);
        prop_assert!(s.eigenvectors().unitarity_deviation() <= 1e-10);
        prop_assert!(s.eigenvalues().windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn eig_reconstructs_4x4(m in hermitian(4)) {
        let s = eig_hermitian(&m).unwrap();
        prop_assert!(s.reconstruct().max_abs_diff(&m) <= 1e-10);
        prop_assert!(s.eigenvectors().unitarity_deviation() <= 1e-10);
        prop_assert!(s.eigenvalues().windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn relative_entropy_dominates_fidelity_bound(r in interior_bloch(), s in interior_bloch()) {
        let rho = DensityMatrix::from_bloch(r).unwrap();
        let sigma = DensityMatrix::from_bloch(s).unwrap();
        let d = relative_entropy(&rho, &sigma).unwrap();
        let f = fidelity(&rho, &sigma).unwrap();
        prop_assert!(d >= -f.log2() - 1e-10, "D = {d}, -log F = {}", -f.log2());
    }

    #[test]
    fn fidelity_symmetric_and_bounded(a in qubit(), b in qubit()) {
        let fab = fidelity(&a, &b).unwrap();
        let fba = fidelity(&b, &a).unwrap();
        prop_assert!((0.0..=1.0).contains(&fab));
        prop_assert!((fab - fba).abs() < 1e-9);
    }

    #[test]
    fn renyi_non_increasing_in_alpha(rho in qubit()) {
        let s = |a: f64| renyi_entropy(&rho, a).unwrap();
        let grid = [s(0.5), s(1.0 - 1e-4), von_neumann_entropy(&rho), s(1.0 + 1e-4), s(2.0), s(3.0)];
        for w in grid.windows(2) {
            prop_assert!(w[0] >= w[1] - 1e-12, "{grid:?}");
        }
    }

    #[test]
    fn entropy_within_bounds(rho in four_level_state()) {
        let s = von_neumann_entropy(&rho);
        prop_assert!((0.0..=2.0 + 1e-12).contains(&s));
    }

    #[test]
    fn majorization_reflexive_and_transitive(a in qubit(), b in qubit(), c in qubit()) {
        prop_assert!(majorizes(&a, &a));
        if majorizes(&a, &b) && majorizes(&b, &c) {
            prop_assert!(majorizes(&a, &c));
        }
    }

    #[test]
    fn partial_transpose_is_involution(rho in four_level_state()) {
        let pt = partial_transpose(rho.matrix()).unwrap();
        prop_assert!(partial_transpose(&pt).unwrap().max_abs_diff(rho.matrix()) < 1e-15);
        // trace preserved, trace norm at least one
        prop_assert!((pt.trace().re - 1.0).abs() < 1e-12);
        prop_assert!(trace_norm(&pt) >= 1.0 - 1e-10);
    }
}
