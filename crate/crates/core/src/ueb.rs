//! Unitary error bases and the constructions that produce them.
//!
//! Grid-built bases (quantum shift-and-multiply, shift-and-multiply and the
//! Hadamard method) store element `(i, j)` at flat index `i·n + j`, with `i`
//! the Hadamard-row index and `j` the Latin-square row index. Bases built
//! from a group representation store `ρ(g)` at index `g`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::ProjectiveRepresentation;
use crate::hadamard::HadamardMatrix;
use crate::linalg::{ComplexMatrix, Permutation, Tolerance, C64};
use crate::qls::{from_classical, ClassicalLatinSquare, QuantumLatinSquare};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Qsm,
    Sm,
    Hadamard,
    Nice,
    Manual,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Qsm => "qsm",
            Provenance::Sm => "sm",
            Provenance::Hadamard => "hadamard",
            Provenance::Nice => "nice",
            Provenance::Manual => "manual",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "qsm" => Provenance::Qsm,
            "sm" => Provenance::Sm,
            "hadamard" => Provenance::Hadamard,
            "nice" => Provenance::Nice,
            "manual" => Provenance::Manual,
            other => return Err(Error::Json(format!("unknown provenance '{other}'"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryErrorBasis {
    n: usize,
    elements: Vec<ComplexMatrix>,
    provenance: Provenance,
}

/// Validates `n²` matrices of order `n` as a unitary error basis:
/// every element unitary, and `Tr(A_k† ∘ A_l) = n·δ_kl`.
pub fn validate_ueb(elements: Vec<ComplexMatrix>, tol: Tolerance) -> Result<UnitaryErrorBasis> {
    UnitaryErrorBasis::new(elements, Provenance::Manual, tol)
}

impl UnitaryErrorBasis {
    pub fn new(
        elements: Vec<ComplexMatrix>,
        provenance: Provenance,
        tol: Tolerance,
    ) -> Result<Self> {
        let Some(first) = elements.first() else {
            return Err(Error::WrongCount {
                expected: 1,
                found: 0,
            });
        };
        let n = first.n();
        if elements.len() != n * n {
            return Err(Error::WrongCount {
                expected: n * n,
                found: elements.len(),
            });
        }
        if let Some(bad) = elements.iter().find(|m| m.n() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.n(),
            });
        }
        for (index, m) in elements.iter().enumerate() {
            let deviation = m.unitarity_defect();
            if deviation > tol.eps() {
                return Err(Error::ElementNotUnitary { index, deviation });
            }
        }
        let nf = n as f64;
        for (a, ma) in elements.iter().enumerate() {
            for (b, mb) in elements.iter().enumerate().skip(a) {
                let inner = ma.hs_inner(mb)?;
                let expected = if a == b { nf } else { 0.0 };
                if (inner - C64::new(expected, 0.0)).norm() > tol.eps() {
                    return Err(Error::NotOrthogonal {
                        first: a,
                        second: b,
                        re: inner.re,
                        im: inner.im,
                        expected,
                    });
                }
            }
        }
        Ok(Self {
            n,
            elements,
            provenance,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<ComplexMatrix> {
        self.elements
    }

    /// Element `(i, j)` of a grid-built basis.
    pub fn element(&self, i: usize, j: usize) -> &ComplexMatrix {
        &self.elements[i * self.n + j]
    }

    /// Grid position of a flat index.
    pub fn grid_index(&self, flat: usize) -> (usize, usize) {
        (flat / self.n, flat % self.n)
    }

    /// Elements `c_k·U∘A_{π(k)}∘V`, revalidated.
    pub fn apply_equivalence(
        &self,
        w: &UebEquivalenceWitness,
        tol: Tolerance,
    ) -> Result<UnitaryErrorBasis> {
        if w.u.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: w.u.n(),
            });
        }
        if w.pairing.len() != self.len() {
            return Err(Error::WrongCount {
                expected: self.len(),
                found: w.pairing.len(),
            });
        }
        let elements = (0..self.len())
            .map(|k| (&(&w.u * &self.elements[w.pairing.apply(k)]) * &w.v).scale(w.c[k]))
            .collect();
        Self::new(elements, self.provenance, tol)
    }
}

fn check_hadamard_family(n: usize, hs: &[HadamardMatrix]) -> Result<()> {
    if hs.len() != n {
        return Err(Error::WrongCount {
            expected: n,
            found: hs.len(),
        });
    }
    match hs.iter().find(|h| h.n() != n) {
        Some(h) => Err(Error::DimensionMismatch {
            expected: n,
            found: h.n(),
        }),
        None => Ok(()),
    }
}

fn shift_and_multiply(
    q: &QuantumLatinSquare,
    hs: &[HadamardMatrix],
    provenance: Provenance,
    tol: Tolerance,
) -> Result<UnitaryErrorBasis> {
    let n = q.n();
    check_hadamard_family(n, hs)?;
    let mut elements = Vec::with_capacity(n * n);
    for i in 0..n {
        for (j, h) in hs.iter().enumerate() {
            elements.push(q.row_matrix(j) * &h.matrix().diag_row(i)?);
        }
    }
    UnitaryErrorBasis::new(elements, provenance, tol)
}

/// Quantum shift-and-multiply basis `S_ij = Q_j ∘ diag(H_j, i)`.
pub fn qsm(
    q: &QuantumLatinSquare,
    hs: &[HadamardMatrix],
    tol: Tolerance,
) -> Result<UnitaryErrorBasis> {
    shift_and_multiply(q, hs, Provenance::Qsm, tol)
}

/// Shift-and-multiply basis: the quantum construction applied to the
/// embedding of a classical Latin square. Every element is monomial.
pub fn sm(
    l: &ClassicalLatinSquare,
    hs: &[HadamardMatrix],
    tol: Tolerance,
) -> Result<UnitaryErrorBasis> {
    shift_and_multiply(&from_classical(l), hs, Provenance::Sm, tol)
}

/// Hadamard-method basis
/// `(U_H)_ij = (1/n)·H∘diag(H, j)†∘H†∘diag(Hᵀ, i)`.
///
/// Computed from this formula directly rather than through the
/// quantum shift-and-multiply factorization, so the two can be compared.
pub fn hadamard_basis(h: &HadamardMatrix, tol: Tolerance) -> Result<UnitaryErrorBasis> {
    let hm = h.matrix();
    let n = h.n();
    let h_dag = hm.adjoint();
    let h_t = hm.transpose();
    let inv_n = C64::new(1.0 / n as f64, 0.0);
    let mut elements = Vec::with_capacity(n * n);
    for i in 0..n {
        let right = h_t.diag_row(i)?;
        for j in 0..n {
            let left = hm * &hm.diag_row(j)?.adjoint();
            elements.push((&(&left * &h_dag) * &right).scale(inv_n));
        }
    }
    UnitaryErrorBasis::new(elements, Provenance::Hadamard, tol)
}

/// The image of a projective representation of a group of order `n²` whose
/// non-identity elements have traceless images.
pub fn nice_error_basis(
    rep: &ProjectiveRepresentation,
    tol: Tolerance,
) -> Result<UnitaryErrorBasis> {
    let n = rep.dim();
    let order = rep.group().order();
    if order != n * n {
        return Err(Error::GroupOrder {
            order,
            expected: n * n,
        });
    }
    let identity = rep.group().identity();
    for (g, img) in rep.images().iter().enumerate() {
        if g == identity {
            continue;
        }
        let modulus = img.trace().norm();
        if modulus > tol.eps() {
            return Err(Error::NonzeroTrace {
                element: g,
                modulus,
            });
        }
    }
    UnitaryErrorBasis::new(rep.images().to_vec(), Provenance::Nice, tol)
}

/// Witness for `B_k = c_k·U∘A_{π(k)}∘V`.
#[derive(Debug, Clone, PartialEq)]
pub struct UebEquivalenceWitness {
    u: ComplexMatrix,
    v: ComplexMatrix,
    c: Vec<C64>,
    pairing: Permutation,
}

impl UebEquivalenceWitness {
    pub fn new(
        u: ComplexMatrix,
        v: ComplexMatrix,
        c: Vec<C64>,
        pairing: Permutation,
        tol: Tolerance,
    ) -> Result<Self> {
        if u.n() != v.n() {
            return Err(Error::DimensionMismatch {
                expected: u.n(),
                found: v.n(),
            });
        }
        if c.len() != pairing.len() {
            return Err(Error::WrongCount {
                expected: pairing.len(),
                found: c.len(),
            });
        }
        for m in [&u, &v] {
            let deviation = m.unitarity_defect();
            if deviation > tol.eps() {
                return Err(Error::NotUnitary { deviation });
            }
        }
        if let Some((index, z)) = c
            .iter()
            .enumerate()
            .find(|(_, z)| (z.norm() - 1.0).abs() > tol.eps())
        {
            return Err(Error::NotUnitModulus {
                index,
                modulus: z.norm(),
            });
        }
        Ok(Self { u, v, c, pairing })
    }

    /// Conjugation `A ↦ U∘A∘U†` with unit scalars and the identity pairing.
    pub fn conjugation(u: ComplexMatrix, count: usize, tol: Tolerance) -> Result<Self> {
        let v = u.adjoint();
        Self::new(
            u,
            v,
            vec![crate::linalg::ONE; count],
            Permutation::identity(count),
            tol,
        )
    }

    pub fn identity(n: usize) -> Self {
        Self {
            u: ComplexMatrix::identity(n),
            v: ComplexMatrix::identity(n),
            c: vec![crate::linalg::ONE; n * n],
            pairing: Permutation::identity(n * n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{clock_shift_representation, pauli_representation};
    use crate::hadamard::{fourier, h_alpha};
    use crate::linalg::{I, ONE, ZERO};
    use crate::qls::qls_from_hadamard;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn paulis() -> Vec<ComplexMatrix> {
        vec![
            ComplexMatrix::identity(2),
            ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap(),
            ComplexMatrix::from_rows(&[[ZERO, -I], [I, ZERO]]).unwrap(),
            ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, -1.0]]).unwrap(),
        ]
    }

    #[test]
    fn pauli_family_is_a_basis() {
        let b = validate_ueb(paulis(), tol()).unwrap();
        assert_eq!(b.n(), 2);
        assert_eq!(b.provenance(), Provenance::Manual);
    }

    #[test]
    fn repeated_element_fails_orthogonality() {
        let p = paulis();
        let family = vec![p[0].clone(), p[0].clone(), p[1].clone(), p[1].clone()];
        let err = validate_ueb(family, tol()).unwrap_err();
        assert!(
            matches!(
                err,
                Error::NotOrthogonal {
                    first: 0,
                    second: 1,
                    ..
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn wrong_count_and_non_unitary() {
        let p = paulis();
        let err = validate_ueb(p[..3].to_vec(), tol()).unwrap_err();
        assert_eq!(
            err,
            Error::WrongCount {
                expected: 4,
                found: 3
            }
        );
        let mut bad = paulis();
        bad[2] = bad[2].scale(C64::new(2.0, 0.0));
        assert!(matches!(
            validate_ueb(bad, tol()).unwrap_err(),
            Error::ElementNotUnitary { index: 2, .. }
        ));
        assert!(validate_ueb(vec![], tol()).is_err());
    }

    #[test]
    fn sm_order_two_is_pauli_up_to_layout() {
        let b = sm(
            &ClassicalLatinSquare::cyclic(2),
            &[fourier(2), fourier(2)],
            tol(),
        )
        .unwrap();
        let p = paulis();
        let xz = &p[1] * &p[3];
        for target in [&p[0], &p[3], &p[1], &xz] {
            let hits = b
                .elements()
                .iter()
                .filter(|e| e.proportional(target, tol()).is_some())
                .count();
            assert_eq!(hits, 1);
        }
        // (i, j) = (1, 0) is Q_0 diag(H_0, 1) = Z
        assert_eq!(b.element(1, 0), &p[3]);
        assert_eq!(b.element(0, 1), &p[1]);
    }

    #[test]
    fn first_row_of_qsm_is_the_square() {
        let q = qls_from_hadamard(&h_alpha(0.6), tol()).unwrap();
        let hs = vec![fourier(4); 4];
        let b = qsm(&q, &hs, tol()).unwrap();
        for j in 0..4 {
            assert_eq!(b.element(0, j), q.row_matrix(j));
        }
    }

    #[test]
    fn qsm_rejects_mismatched_families() {
        let q = from_classical(&ClassicalLatinSquare::cyclic(4));
        assert!(matches!(
            qsm(&q, &vec![fourier(4); 3], tol()),
            Err(Error::WrongCount {
                expected: 4,
                found: 3
            })
        ));
        assert!(matches!(
            qsm(&q, &vec![fourier(3); 4], tol()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn hadamard_basis_small_cases() {
        let b = hadamard_basis(&fourier(2), tol()).unwrap();
        assert_eq!(b.len(), 4);
        for alpha in [0.0, 0.3, std::f64::consts::FRAC_PI_2] {
            let b = hadamard_basis(&h_alpha(alpha), tol()).unwrap();
            assert!(b
                .element(0, 0)
                .approx_eq(&ComplexMatrix::identity(4), tol()));
        }
    }

    #[test]
    fn nice_bases_from_builtin_representations() {
        let pauli = pauli_representation();
        nice_error_basis(&pauli, tol()).unwrap();
        for n in 2..=5 {
            let rep = clock_shift_representation(n, tol()).unwrap();
            let b = nice_error_basis(&rep, tol()).unwrap();
            assert_eq!(b.provenance(), Provenance::Nice);
        }
    }

    #[test]
    fn nice_basis_rejects_wrong_group_order() {
        let rep = crate::group::ProjectiveRepresentation::new(
            crate::group::CayleyTable::cyclic(2),
            vec![
                ComplexMatrix::identity(2),
                ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap(),
            ],
            tol(),
        )
        .unwrap();
        assert_eq!(
            nice_error_basis(&rep, tol()).unwrap_err(),
            Error::GroupOrder {
                order: 2,
                expected: 4
            }
        );
    }

    #[test]
    fn identity_witness_is_neutral() {
        let b = hadamard_basis(&h_alpha(0.2), tol()).unwrap();
        let out = b
            .apply_equivalence(&UebEquivalenceWitness::identity(4), tol())
            .unwrap();
        assert_eq!(out, b);
    }

    #[test]
    fn witness_rejects_non_unitary() {
        let bad = ComplexMatrix::from_fn(2, |_, _| ONE);
        let err = UebEquivalenceWitness::new(
            bad,
            ComplexMatrix::identity(2),
            vec![ONE; 4],
            Permutation::identity(4),
            tol(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotUnitary { .. }));
    }

    #[test]
    fn provenance_round_trips_through_strings() {
        for p in [
            Provenance::Qsm,
            Provenance::Sm,
            Provenance::Hadamard,
            Provenance::Nice,
            Provenance::Manual,
        ] {
            assert_eq!(p.as_str().parse::<Provenance>().unwrap(), p);
        }
        assert!("alg".parse::<Provenance>().is_err());
    }
}
