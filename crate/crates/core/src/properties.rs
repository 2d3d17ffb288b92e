//! Seeded randomized checks of the structural identities the constructions
//! rely on. Each check draws fresh order-4 inputs per trial and reports the
//! worst deviation seen.

use serde::Serialize;

use crate::hadamard::{h_alpha, HadamardEquivalenceWitness, HadamardMatrix};
use crate::linalg::{ComplexMatrix, Permutation, Tolerance, C64};
use crate::obstruction::{is_monomial, monomializes};
use crate::qls::qls_from_hadamard;
use crate::sample::{random_zero_diagonal, Sampler};
use crate::ueb::hadamard_basis;

const N: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub trials: usize,
    /// Largest deviation observed; for pure predicates, the number of failing trials.
    pub worst: f64,
    pub bound: f64,
    pub passed: bool,
}

impl PropertyOutcome {
    fn deviation(name: &'static str, trials: usize, worst: f64, bound: f64) -> Self {
        Self {
            name,
            trials,
            worst,
            bound,
            passed: worst <= bound,
        }
    }

    fn predicate(name: &'static str, trials: usize, failures: usize) -> Self {
        Self {
            name,
            trials,
            worst: failures as f64,
            bound: 0.0,
            passed: failures == 0,
        }
    }
}

/// A random order-4 complex Hadamard matrix: `H_α` for uniform `α` under a
/// random phase-and-permutation equivalence.
pub fn random_hadamard(s: &mut Sampler) -> HadamardMatrix {
    let h = h_alpha(s.real(0.0, std::f64::consts::TAU));
    let w = HadamardEquivalenceWitness::new(
        s.permutation(N),
        s.permutation(N),
        s.phases(N),
        s.phases(N),
        Tolerance::default(),
    )
    .expect("sampled witness is valid");
    h.apply_equivalence(&w, Tolerance::default())
        .expect("equivalent matrix is Hadamard")
}

/// `D∘P = P∘D′` with `D′_k = D_{p(k)}`, and `D′` diagonal.
pub fn diagonal_permutation_swap(seed: u64, trials: usize) -> PropertyOutcome {
    let mut s = Sampler::new(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let d = s.phases(N);
        let p = s.permutation(N);
        let dm = ComplexMatrix::from_diagonal(&d).expect("finite");
        let d_prime = p.conjugate_diag(&d).expect("lengths match");
        let lhs = &dm * &p.matrix();
        let rhs = &p.matrix() * &d_prime;
        worst = worst.max(lhs.max_abs_diff(&rhs));
        if !d_prime.is_diagonal(Tolerance::default()) {
            worst = f64::INFINITY;
        }
    }
    PropertyOutcome::deviation("diag-perm-swap", trials, worst, 1e-12)
}

/// A diagonal matrix composed with a zero-diagonal matrix, on either side,
/// has zero diagonal.
pub fn zero_diagonal_composition(seed: u64, trials: usize) -> PropertyOutcome {
    let mut s = Sampler::new(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let d = s.gaussian_matrix(N);
        let d = ComplexMatrix::from_diagonal(&d.diagonal()).expect("finite");
        let a = random_zero_diagonal(&mut s, N);
        for m in [&d * &a, &a * &d] {
            let diag_max = m.diagonal().iter().map(|z| z.norm()).fold(0.0, f64::max);
            worst = worst.max(diag_max);
        }
    }
    PropertyOutcome::deviation("zero-diagonal", trials, worst, 1e-12)
}

/// Matrices monomialized by a common unitary have commuting 12th powers.
pub fn simultaneous_monomial_powers(seed: u64, trials: usize) -> PropertyOutcome {
    let mut s = Sampler::new(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let u = s.unitary(N);
        let u_dag = u.adjoint();
        let a = &(&u_dag * &s.monomial_unitary(N)) * &u;
        let b = &(&u_dag * &s.monomial_unitary(N)) * &u;
        let norm = crate::obstruction::mu_power_commutator(&a, &b)
            .expect("orders match")
            .frobenius_norm();
        worst = worst.max(norm);
    }
    PropertyOutcome::deviation("mu-powers-commute", trials, worst, 1e-8)
}

/// For `S_k = c_k·U∘T_k∘V` with monomial `T_k` and `V` chosen so `S_0 = I`,
/// every `U†∘S_k∘U` is monomial.
pub fn monomial_basis_monomializer(seed: u64, trials: usize) -> PropertyOutcome {
    let tol = Tolerance::default();
    let mut s = Sampler::new(seed);
    let mut failures = 0;
    for _ in 0..trials {
        let u = s.unitary(N);
        let c = s.phases(N * N);
        let t: Vec<ComplexMatrix> = (0..N * N).map(|_| s.monomial_unitary(N)).collect();
        let v = (&u * &t[0]).scale(c[0]).adjoint();
        let family: Vec<ComplexMatrix> = t
            .iter()
            .zip(&c)
            .map(|(tk, &ck)| (&(&u * tk) * &v).scale(ck))
            .collect();
        let normalized = family[0].approx_eq(&ComplexMatrix::identity(N), tol);
        let ok = monomializes(&u.adjoint(), &family, tol).unwrap_or(false);
        if !(normalized && ok) {
            failures += 1;
        }
    }
    PropertyOutcome::predicate("monomializer", trials, failures)
}

/// Monomial matrices are closed under product, adjoint and nonzero scaling.
pub fn monomial_closure(seed: u64, trials: usize) -> PropertyOutcome {
    let tol = Tolerance::default();
    let mut s = Sampler::new(seed);
    let mut failures = 0;
    for _ in 0..trials {
        let a = s.monomial_unitary(N);
        let b = s.monomial_unitary(N);
        let k = s.gaussian() + C64::new(0.5, 0.0);
        let ok = is_monomial(&(&a * &b), tol)
            && is_monomial(&a.adjoint(), tol)
            && is_monomial(&a.scale(k), tol);
        if !ok {
            failures += 1;
        }
    }
    PropertyOutcome::predicate("monomial-closure", trials, failures)
}

fn perm_witness(p1: Permutation, p2: Permutation) -> HadamardEquivalenceWitness {
    HadamardEquivalenceWitness::new(
        p1,
        p2,
        vec![crate::linalg::ONE; N],
        vec![crate::linalg::ONE; N],
        Tolerance::default(),
    )
    .expect("permutation-only witness is valid")
}

/// Quantum Latin squares of equivalent Hadamard matrices:
/// `Q_{P∘H, j} = P∘Q_{H, p⁻¹(j)}∘P⁻¹`, `Q_{H∘P, j} = Q_{H, j}` and
/// `Q_{D∘H, j} = d̄_j·D∘Q_{H, j}∘D†`.
pub fn qls_pushforward(seed: u64, trials: usize) -> PropertyOutcome {
    let tol = Tolerance::default();
    let mut s = Sampler::new(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let h = random_hadamard(&mut s);
        let q = qls_from_hadamard(&h, tol).expect("valid");
        let p = s.permutation(N);
        let pm = p.matrix();
        let pinv = p.inverse();

        let left = h
            .apply_equivalence(&perm_witness(p.clone(), Permutation::identity(N)), tol)
            .expect("valid");
        let ql = qls_from_hadamard(&left, tol).expect("valid");
        for j in 0..N {
            let expect = &(&pm * q.row_matrix(pinv.apply(j))) * &pm.adjoint();
            worst = worst.max(ql.row_matrix(j).max_abs_diff(&expect));
        }

        let right = h
            .apply_equivalence(&perm_witness(Permutation::identity(N), p.clone()), tol)
            .expect("valid");
        let qr = qls_from_hadamard(&right, tol).expect("valid");
        for j in 0..N {
            worst = worst.max(qr.row_matrix(j).max_abs_diff(q.row_matrix(j)));
        }

        let d = s.phases(N);
        let dm = ComplexMatrix::from_diagonal(&d).expect("finite");
        let w = HadamardEquivalenceWitness::new(
            Permutation::identity(N),
            Permutation::identity(N),
            d.clone(),
            vec![crate::linalg::ONE; N],
            tol,
        )
        .expect("valid");
        let qd =
            qls_from_hadamard(&h.apply_equivalence(&w, tol).expect("valid"), tol).expect("valid");
        for (j, dj) in d.iter().enumerate() {
            let expect = (&(&dm * q.row_matrix(j)) * &dm.adjoint()).scale(dj.conj());
            worst = worst.max(qd.row_matrix(j).max_abs_diff(&expect));
        }
    }
    PropertyOutcome::deviation("qls-pushforward", trials, worst, 1e-9)
}

fn proportional_defect(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    match a.proportional(b, Tolerance::default()) {
        Some(c) => a.max_abs_diff(&b.scale(c)),
        None => f64::INFINITY,
    }
}

/// Hadamard bases of equivalent Hadamard matrices, up to unit scalars:
/// `U_{P∘H, ij} ∝ P∘U_{H, i p⁻¹(j)}∘P⁻¹`, `U_{D∘H, ij} ∝ D∘U_{H, ij}` and
/// `U_{H∘P, ij} = U_{H, p(i) j}`.
pub fn ueb_pushforward(seed: u64, trials: usize) -> PropertyOutcome {
    let tol = Tolerance::default();
    let mut s = Sampler::new(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let h = random_hadamard(&mut s);
        let u = hadamard_basis(&h, tol).expect("valid");
        let p = s.permutation(N);
        let pm = p.matrix();
        let pinv = p.inverse();

        let left = h
            .apply_equivalence(&perm_witness(p.clone(), Permutation::identity(N)), tol)
            .expect("valid");
        let ul = hadamard_basis(&left, tol).expect("valid");
        for i in 0..N {
            for j in 0..N {
                let expect = &(&pm * u.element(i, pinv.apply(j))) * &pm.adjoint();
                worst = worst.max(proportional_defect(ul.element(i, j), &expect));
            }
        }

        let d = s.phases(N);
        let dm = ComplexMatrix::from_diagonal(&d).expect("finite");
        let w = HadamardEquivalenceWitness::new(
            Permutation::identity(N),
            Permutation::identity(N),
            d,
            vec![crate::linalg::ONE; N],
            tol,
        )
        .expect("valid");
        let ud = hadamard_basis(&h.apply_equivalence(&w, tol).expect("valid"), tol).expect("valid");
        for i in 0..N {
            for j in 0..N {
                let expect = &dm * u.element(i, j);
                worst = worst.max(proportional_defect(ud.element(i, j), &expect));
            }
        }

        let right = h
            .apply_equivalence(&perm_witness(Permutation::identity(N), p.clone()), tol)
            .expect("valid");
        let ur = hadamard_basis(&right, tol).expect("valid");
        for i in 0..N {
            for j in 0..N {
                worst = worst.max(ur.element(i, j).max_abs_diff(u.element(p.apply(i), j)));
            }
        }
    }
    PropertyOutcome::deviation("ueb-pushforward", trials, worst, 1e-9)
}

/// Every property check, each run from its own seed derived from `seed`.
pub fn all(seed: u64, trials: usize) -> Vec<PropertyOutcome> {
    let checks: [fn(u64, usize) -> PropertyOutcome; 7] = [
        diagonal_permutation_swap,
        zero_diagonal_composition,
        simultaneous_monomial_powers,
        monomial_basis_monomializer,
        monomial_closure,
        qls_pushforward,
        ueb_pushforward,
    ];
    checks
        .iter()
        .enumerate()
        .map(|(k, f)| f(seed.wrapping_add(k as u64), trials))
        .collect()
}
