use proptest::prelude::*;

use uebforge::catalog::{example_hadamard, example_qls};
use uebforge::group::clock_shift_representation;
use uebforge::hadamard::{fourier, h_alpha};
use uebforge::obstruction::{
    adjoint_closure_obstruction, monomializes, mu_power_commutator_obstruction, NonzeroThreshold,
    Verdict,
};
use uebforge::properties::random_hadamard;
use uebforge::qls::{from_classical, ClassicalLatinSquare, QlsEquivalenceWitness};
use uebforge::sample::Sampler;
use uebforge::ueb::{nice_error_basis, qsm, sm, UnitaryErrorBasis};
use uebforge::{ComplexMatrix, Tolerance};

fn tol() -> Tolerance {
    Tolerance::default()
}

/// Cyclic square with rows, columns and symbols relabelled.
fn random_latin(s: &mut Sampler, n: usize) -> ClassicalLatinSquare {
    let (r, c, v) = (s.permutation(n), s.permutation(n), s.permutation(n));
    let grid = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| v.apply((r.apply(i) + c.apply(j)) % n))
                .collect()
        })
        .collect();
    ClassicalLatinSquare::new(grid).unwrap()
}

fn conjugated(basis: &UnitaryErrorBasis, v: &ComplexMatrix) -> Vec<ComplexMatrix> {
    let vd = v.adjoint();
    basis.elements().iter().map(|e| &(v * e) * &vd).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn diagonal_moves_through_permutation(seed in any::<u64>(), n in 1usize..7) {
        let mut s = Sampler::new(seed);
        let p = s.permutation(n);
        let d = s.phases(n);
        let lhs = &ComplexMatrix::from_diagonal(&d).unwrap() * &p.matrix();
        let rhs = &p.matrix() * &p.conjugate_diag(&d).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
        // the inverse relabelling moves a diagonal the other way
        let back = &p.matrix() * &ComplexMatrix::from_diagonal(&d).unwrap();
        let moved = &p.inverse().conjugate_diag(&d).unwrap() * &p.matrix();
        prop_assert!(back.max_abs_diff(&moved) <= 1e-12);
    }

    #[test]
    fn sm_of_random_latin_square_is_ueb(seed in any::<u64>(), n in 2usize..6) {
        let mut s = Sampler::new(seed);
        let l = random_latin(&mut s, n);
        let hs: Vec<_> = (0..n)
            .map(|_| if n == 4 { random_hadamard(&mut s) } else { fourier(n) })
            .collect();
        let a = sm(&l, &hs, tol()).unwrap();
        let b = qsm(&from_classical(&l), &hs, tol()).unwrap();
        prop_assert_eq!(a.len(), n * n);
        prop_assert_eq!(a.elements(), b.elements());
    }

    #[test]
    fn qsm_survives_qls_equivalence(seed in any::<u64>(), alpha in 0.0f64..std::f64::consts::TAU) {
        let mut s = Sampler::new(seed);
        let w = QlsEquivalenceWitness::new(
            s.unitary(4),
            s.permutation(4),
            s.permutation(4),
            s.phases(4),
            s.phases(4),
            tol(),
        )
        .unwrap();
        let q = example_qls().apply_equivalence(&w, tol()).unwrap();
        let hs = vec![h_alpha(alpha), example_hadamard(), random_hadamard(&mut s), fourier(4)];
        prop_assert!(qsm(&q, &hs, tol()).is_ok());
    }

    #[test]
    fn monomializable_bases_are_never_obstructed(seed in any::<u64>(), n in 2usize..5) {
        let mut s = Sampler::new(seed);
        let nice = nice_error_basis(&clock_shift_representation(n, tol()).unwrap(), tol()).unwrap();
        let v = s.unitary(n);
        let hidden = conjugated(&nice, &v);
        prop_assert!(monomializes(&v.adjoint(), &hidden, tol()).unwrap());
        let a = adjoint_closure_obstruction(&hidden, tol()).unwrap();
        let b = mu_power_commutator_obstruction(&hidden, NonzeroThreshold::default(), tol()).unwrap();
        prop_assert_eq!(a.verdict, Verdict::NotObstructed);
        prop_assert_eq!(b.verdict, Verdict::NotObstructed);
    }
}

#[test]
fn qsm_over_fourier_and_alpha_grid() {
    for n in 2..=5 {
        let q = from_classical(&ClassicalLatinSquare::cyclic(n));
        let basis = qsm(&q, &vec![fourier(n); n], tol()).unwrap();
        assert_eq!(basis.len(), n * n);
    }
    for k in 0..24 {
        let alpha = k as f64 * std::f64::consts::TAU / 24.0;
        let hs = vec![h_alpha(alpha); 4];
        qsm(&example_qls(), &hs, tol()).unwrap();
        qsm(
            &from_classical(&ClassicalLatinSquare::cyclic(4)),
            &hs,
            tol(),
        )
        .unwrap();
    }
}

#[test]
fn nice_bases_pass_adjoint_closure() {
    for n in 2..=6 {
        let nice = nice_error_basis(&clock_shift_representation(n, tol()).unwrap(), tol()).unwrap();
        let report = adjoint_closure_obstruction(nice.elements(), tol()).unwrap();
        assert_eq!(report.verdict, Verdict::NotObstructed, "n = {n}");
    }
}
