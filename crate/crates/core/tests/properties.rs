use monogamy_core::measures::{concurrence_pure, negativity_mixed};
use monogamy_core::qstate::{
    eig_hermitian, haar_random_mixed, haar_random_pure, partial_trace, partial_transpose, reduce_pure, trace,
    trace_norm, Bipartition,
};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn nonzero(mut spectrum: Vec<f64>) -> Vec<f64> {
    spectrum.retain(|v| *v > 1e-9);
    spectrum
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn complementary_marginals_share_spectra(seed in any::<u64>(), n in 2usize..=5, pick in subsequence((0..5).collect::<Vec<_>>(), 1..=4)) {
        let keep: Vec<usize> = pick.into_iter().filter(|&q| q < n).collect();
        prop_assume!(!keep.is_empty() && keep.len() < n);
        let psi = haar_random_pure(n, seed).unwrap();
        let side = Bipartition::new(keep);
        let other = Bipartition::new(side.complement(n));
        let a = nonzero(reduce_pure(&psi, &side).unwrap().spectrum());
        let b = nonzero(partial_trace(&psi.density(), n, &other).unwrap().spectrum());
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-10, "{} vs {}", x, y);
        }
    }

    #[test]
    fn partial_transpose_trace_norm_at_least_one(seed in any::<u64>(), ancillas in 0usize..=2, q in 0usize..3) {
        let rho = haar_random_mixed(3, ancillas, seed).unwrap();
        let pt = partial_transpose(&rho, 3, &Bipartition::single(q)).unwrap();
        prop_assert!(trace_norm(&pt).unwrap() >= 1.0 - 1e-10);
    }

    #[test]
    fn nested_reductions_compose(seed in any::<u64>()) {
        let rho = haar_random_mixed(4, 1, seed).unwrap();
        let outer = partial_trace(&rho, 4, &Bipartition::new(vec![0, 2, 3])).unwrap();
        // positions 0 and 2 of the kept list are qubits 0 and 3
        let nested = partial_trace(&outer, 3, &Bipartition::new(vec![0, 2])).unwrap();
        let direct = partial_trace(&rho, 4, &Bipartition::new(vec![0, 3])).unwrap();
        let diff = (nested.matrix() - direct.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(diff < 1e-12, "{}", diff);
    }

    #[test]
    fn eigenvalues_sum_to_trace(seed in any::<u64>(), ancillas in 0usize..=2) {
        let rho = haar_random_mixed(3, ancillas, seed).unwrap();
        let m = rho.matrix().scale(3.0);
        let sum: f64 = eig_hermitian(&m).unwrap().iter().sum();
        prop_assert!((sum - trace(&m).re).abs() < 1e-10);
    }

    #[test]
    fn pure_two_qubit_negativity_equals_concurrence(seed in any::<u64>()) {
        let psi = haar_random_pure(2, seed).unwrap();
        let a = Bipartition::single(0);
        let n = negativity_mixed(&psi.density(), 2, &a).unwrap();
        prop_assert!((n - concurrence_pure(&psi, &a).unwrap()).abs() < 1e-10);
    }
}
