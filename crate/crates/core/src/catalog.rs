//! Built-in reference objects: a non-classical order-4 quantum Latin square,
//! the order-4 Fourier Hadamard matrix, the sixteen-element basis 𝓜 built
//! from them, the monomializing unitary `Y` and the monomial family 𝓕′_α.
//!
//! Irrational entries are evaluated from closed forms in double precision.

use crate::error::Result;
use crate::hadamard::{validate_hadamard, HadamardMatrix};
use crate::linalg::{phase, ComplexMatrix, Tolerance, C64, I, ONE, ZERO};
use crate::qls::{validate_qls_grid, ClassicalLatinSquare, QuantumLatinSquare};
use crate::ueb::{Provenance, UnitaryErrorBasis};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn mat(rows: [[C64; 4]; 4]) -> ComplexMatrix {
    ComplexMatrix::from_rows(&rows).expect("4x4 literal")
}

fn ket(k: usize) -> Vec<C64> {
    let mut v = vec![ZERO; 4];
    v[k] = ONE;
    v
}

fn combine(terms: &[(C64, usize)]) -> Vec<C64> {
    let mut v = vec![ZERO; 4];
    for &(a, k) in terms {
        v[k] += a;
    }
    v
}

/// The order-4 quantum Latin square whose middle rows mix `|1⟩, |2⟩` and
/// `|0⟩, |3⟩` with weights `1/√2` and `1/√5, 2/√5`.
pub fn example_qls() -> QuantumLatinSquare {
    let a = c(1.0 / 2f64.sqrt(), 0.0);
    let b = 1.0 / 5f64.sqrt();
    let (b2, bi) = (c(2.0 * b, 0.0), c(0.0, b));
    let minus = combine(&[(a, 1), (-a, 2)]);
    let plus = combine(&[(a, 1), (a, 2)]);
    let i0_2_3 = combine(&[(bi, 0), (b2, 3)]);
    let two0_i3 = combine(&[(b2, 0), (bi, 3)]);
    let grid = vec![
        vec![ket(0), ket(1), ket(2), ket(3)],
        vec![minus.clone(), i0_2_3.clone(), two0_i3.clone(), plus.clone()],
        vec![plus, two0_i3, i0_2_3, minus],
        vec![ket(3), ket(2), ket(1), ket(0)],
    ];
    validate_qls_grid(&grid, Tolerance::default()).expect("reference square is valid")
}

/// The order-4 Fourier matrix with rows `(1,1,1,1), (1,i,−1,−i), (1,−1,1,−1), (1,−i,−1,i)`.
pub fn example_hadamard() -> HadamardMatrix {
    let o = ONE;
    let m = mat([[o, o, o, o], [o, I, -o, -I], [o, -o, o, -o], [o, -I, -o, I]]);
    validate_hadamard(m, Tolerance::default()).expect("reference Hadamard is valid")
}

/// The sixteen matrices of 𝓜 as listed entrywise, at flat index `i·4 + j`.
pub fn basis_m_listing() -> Vec<ComplexMatrix> {
    let z = ZERO;
    let a = 1.0 / 2f64.sqrt();
    let b = 1.0 / 5f64.sqrt();
    let r = |x: f64| c(x, 0.0);
    let im = |x: f64| c(0.0, x);
    let (pa, na, ia, nia) = (r(a), r(-a), im(a), im(-a));
    let (pb, nb, ib, nib) = (r(b), r(-b), im(b), im(-b));
    let (p2b, n2b, i2b, ni2b) = (r(2.0 * b), r(-2.0 * b), im(2.0 * b), im(-2.0 * b));
    let o = ONE;
    vec![
        ComplexMatrix::identity(4),
        mat([
            [z, ib, p2b, z],
            [pa, z, z, pa],
            [na, z, z, pa],
            [z, p2b, ib, z],
        ]),
        mat([
            [z, p2b, ib, z],
            [pa, z, z, pa],
            [pa, z, z, na],
            [z, ib, p2b, z],
        ]),
        mat([[z, z, z, o], [z, z, o, z], [z, o, z, z], [o, z, z, z]]),
        mat([[o, z, z, z], [z, I, z, z], [z, z, -o, z], [z, z, z, -I]]),
        mat([
            [z, nb, n2b, z],
            [pa, z, z, nia],
            [na, z, z, nia],
            [z, i2b, nib, z],
        ]),
        mat([
            [z, i2b, nib, z],
            [pa, z, z, nia],
            [pa, z, z, ia],
            [z, nb, n2b, z],
        ]),
        mat([[z, z, z, -I], [z, z, -o, z], [z, I, z, z], [o, z, z, z]]),
        mat([[o, z, z, z], [z, -o, z, z], [z, z, o, z], [z, z, z, -o]]),
        mat([
            [z, nib, p2b, z],
            [pa, z, z, na],
            [na, z, z, na],
            [z, n2b, ib, z],
        ]),
        mat([
            [z, n2b, ib, z],
            [pa, z, z, na],
            [pa, z, z, pa],
            [z, nib, p2b, z],
        ]),
        mat([[z, z, z, -o], [z, z, o, z], [z, -o, z, z], [o, z, z, z]]),
        mat([[o, z, z, z], [z, -I, z, z], [z, z, -o, z], [z, z, z, I]]),
        mat([
            [z, pb, n2b, z],
            [pa, z, z, ia],
            [na, z, z, ia],
            [z, ni2b, nib, z],
        ]),
        mat([
            [z, ni2b, nib, z],
            [pa, z, z, ia],
            [pa, z, z, nia],
            [z, pb, n2b, z],
        ]),
        mat([[z, z, z, I], [z, z, -o, z], [z, -I, z, z], [o, z, z, z]]),
    ]
}

/// 𝓜, validated as a unitary error basis.
pub fn basis_m() -> UnitaryErrorBasis {
    UnitaryErrorBasis::new(basis_m_listing(), Provenance::Manual, Tolerance::default())
        .expect("reference basis is valid")
}

/// `(1/√2)·[[0,0,−1,1],[−1,1,0,0],[0,0,1,1],[1,1,0,0]]`, which conjugates every
/// Hadamard basis of `H_α` to a monomial family.
pub fn matrix_y() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        [0.0, 0.0, -1.0, 1.0],
        [-1.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 1.0],
        [1.0, 1.0, 0.0, 0.0],
    ])
    .expect("4x4 literal")
    .scale(c(1.0 / 2f64.sqrt(), 0.0))
}

/// The monomial family 𝓕′_α as listed entrywise, at flat index `i·4 + j`.
/// Element `(i, j)` equals `Y∘(U_{H_α})_{ij}∘Y†`.
pub fn basis_f_prime_listing(alpha: f64) -> Vec<ComplexMatrix> {
    let z = ZERO;
    let o = ONE;
    let e = phase(alpha);
    let em = phase(-alpha);
    let em2 = phase(-2.0 * alpha);
    let diag =
        |d: [f64; 4]| ComplexMatrix::from_diagonal(&d.map(|x| c(x, 0.0))).expect("finite diagonal");
    vec![
        ComplexMatrix::identity(4),
        diag([-1.0, -1.0, 1.0, 1.0]),
        mat([[z, o, z, z], [em2, z, z, z], [z, z, z, o], [z, z, o, z]]),
        mat([[z, -o, z, z], [-em2, z, z, z], [z, z, z, o], [z, z, o, z]]),
        diag([-1.0, 1.0, -1.0, 1.0]),
        diag([1.0, -1.0, -1.0, 1.0]),
        mat([[z, o, z, z], [-em2, z, z, z], [z, z, z, o], [z, z, -o, z]]),
        mat([[z, -o, z, z], [em2, z, z, z], [z, z, z, o], [z, z, -o, z]]),
        mat([[z, z, -e, z], [z, z, z, -o], [-e, z, z, z], [z, -o, z, z]]),
        mat([[z, z, e, z], [z, z, z, o], [-e, z, z, z], [z, -o, z, z]]),
        mat([[z, z, z, -o], [z, z, -em, z], [z, -o, z, z], [-e, z, z, z]]),
        mat([[z, z, z, o], [z, z, em, z], [z, -o, z, z], [-e, z, z, z]]),
        mat([[z, z, e, z], [z, z, z, -o], [e, z, z, z], [z, -o, z, z]]),
        mat([[z, z, -e, z], [z, z, z, o], [e, z, z, z], [z, -o, z, z]]),
        mat([[z, z, z, -o], [z, z, em, z], [z, -o, z, z], [e, z, z, z]]),
        mat([[z, z, z, o], [z, z, -em, z], [z, -o, z, z], [e, z, z, z]]),
    ]
}

/// 𝓕′_α, validated as a unitary error basis.
pub fn basis_f_prime(alpha: f64) -> Result<UnitaryErrorBasis> {
    UnitaryErrorBasis::new(
        basis_f_prime_listing(alpha),
        Provenance::Manual,
        Tolerance::default(),
    )
}

/// The order-4 classical square with rows `3102`, `1023`, `2310`, `0231`.
pub fn classical_example() -> ClassicalLatinSquare {
    ClassicalLatinSquare::new(vec![
        vec![3, 1, 0, 2],
        vec![1, 0, 2, 3],
        vec![2, 3, 1, 0],
        vec![0, 2, 3, 1],
    ])
    .expect("reference square is Latin")
}

#[derive(Debug, Clone, PartialEq)]
pub enum FixtureObject {
    QuantumLatinSquare(QuantumLatinSquare),
    ClassicalLatinSquare(ClassicalLatinSquare),
    Hadamard(HadamardMatrix),
    Basis(UnitaryErrorBasis),
    Matrix(ComplexMatrix),
}

impl FixtureObject {
    pub fn kind(&self) -> &'static str {
        match self {
            FixtureObject::QuantumLatinSquare(_) => "qls",
            FixtureObject::ClassicalLatinSquare(_) => "latin",
            FixtureObject::Hadamard(_) => "hadamard",
            FixtureObject::Basis(_) => "ueb",
            FixtureObject::Matrix(_) => "matrix",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub name: &'static str,
    pub source: &'static str,
    pub object: FixtureObject,
}

pub const FIXTURE_NAMES: [&str; 6] = [
    "example_qls",
    "mhad",
    "basis_M",
    "matrix_Y",
    "basis_F_prime_alpha0",
    "classical_ls",
];

pub fn fixture(name: &str) -> Option<Fixture> {
    let (name, source, object) = match name {
        "example_qls" => (
            "example_qls",
            "order-4 non-classical quantum Latin square",
            FixtureObject::QuantumLatinSquare(example_qls()),
        ),
        "mhad" => (
            "mhad",
            "order-4 Fourier Hadamard matrix used for every row of the basis M",
            FixtureObject::Hadamard(example_hadamard()),
        ),
        "basis_M" => (
            "basis_M",
            "basis M listed entrywise",
            FixtureObject::Basis(basis_m()),
        ),
        "matrix_Y" => (
            "matrix_Y",
            "unitary monomializing every Hadamard basis of H_alpha",
            FixtureObject::Matrix(matrix_y()),
        ),
        "basis_F_prime_alpha0" => (
            "basis_F_prime_alpha0",
            "monomial basis F' listed entrywise, alpha = 0",
            FixtureObject::Basis(basis_f_prime(0.0).expect("valid at alpha = 0")),
        ),
        "classical_ls" => (
            "classical_ls",
            "order-4 classical Latin square",
            FixtureObject::ClassicalLatinSquare(classical_example()),
        ),
        _ => return None,
    };
    Some(Fixture {
        name,
        source,
        object,
    })
}

pub fn fixtures() -> Vec<Fixture> {
    FIXTURE_NAMES
        .iter()
        .map(|n| fixture(n).expect("listed fixture exists"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::{fourier, h_alpha};
    use crate::ueb::{hadamard_basis, qsm};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn example_square_cells() {
        let q = example_qls();
        assert_eq!(q.entry(0, 0), ket(0));
        let b = 1.0 / 5f64.sqrt();
        let cell = q.entry(1, 1);
        assert!((cell[0] - c(0.0, b)).norm() < 1e-15);
        assert!((cell[3] - c(2.0 * b, 0.0)).norm() < 1e-15);
        assert!(!q.is_classical(tol()));
    }

    #[test]
    fn example_hadamard_is_fourier() {
        let h = example_hadamard();
        assert_eq!(h.matrix()[(1, 1)], I);
        assert!(h
            .matrix()
            .approx_eq(fourier(4).matrix(), Tolerance::new(1e-15).unwrap()));
    }

    #[test]
    fn basis_m_spot_entries() {
        let m = basis_m();
        assert_eq!(m.element(0, 0), &ComplexMatrix::identity(4));
        assert!((m.element(2, 2)[(0, 1)] - c(-2.0 / 5f64.sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn basis_m_is_qsm_of_example() {
        let q = example_qls();
        let built = qsm(&q, &vec![example_hadamard(); 4], tol()).unwrap();
        for (x, y) in built.elements().iter().zip(basis_m_listing()) {
            assert!(x.max_abs_diff(&y) <= 1e-12);
        }
        for j in 0..4 {
            assert!(basis_m().element(0, j).max_abs_diff(q.row_matrix(j)) <= 1e-12);
        }
    }

    #[test]
    fn y_spot_entry_and_unitarity() {
        let y = matrix_y();
        assert!(y.is_unitary(tol()));
        assert!((y[(0, 2)] - c(-1.0 / 2f64.sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn f_prime_matches_conjugated_hadamard_basis() {
        let y = matrix_y();
        let y_dag = y.adjoint();
        for alpha in [0.0, 0.5, std::f64::consts::FRAC_PI_2, 2.2] {
            let f = basis_f_prime(alpha).unwrap();
            assert_eq!(f.element(0, 0), &ComplexMatrix::identity(4));
            assert!((f.element(0, 2)[(1, 0)] - phase(-2.0 * alpha)).norm() < 1e-15);
            let u = hadamard_basis(&h_alpha(alpha), tol()).unwrap();
            for (k, e) in u.elements().iter().enumerate() {
                let conj = &(&y * e) * &y_dag;
                assert!(
                    conj.approx_eq(&f.elements()[k], tol()),
                    "alpha {alpha} index {k}"
                );
            }
        }
    }

    #[test]
    fn every_fixture_is_listed_and_valid() {
        let all = fixtures();
        assert_eq!(all.len(), FIXTURE_NAMES.len());
        assert!(fixture("nope").is_none());
        for f in all {
            assert!(!f.source.is_empty());
            assert!(!f.object.kind().is_empty());
        }
    }
}
