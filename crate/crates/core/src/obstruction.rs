//! Monomial matrices and two numerical obstructions to basis equivalence.
//!
//! Both tests certify inequivalence when they report
//! [`Verdict::Obstructed`]. A [`Verdict::NotObstructed`] result is
//! inconclusive: it does not establish that an equivalence exists.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{mu, ComplexMatrix, Permutation, Tolerance, C64};

/// Whether each row and each column has exactly one entry of modulus above `eps`.
pub fn is_monomial(a: &ComplexMatrix, tol: Tolerance) -> bool {
    monomial_permutation(a, tol).is_some()
}

/// Image `p` with `A[p(k)][k]` the sole nonzero entry of column `k`.
fn monomial_permutation(a: &ComplexMatrix, tol: Tolerance) -> Option<Permutation> {
    let n = a.n();
    let mut image = Vec::with_capacity(n);
    for k in 0..n {
        let mut hits = (0..n).filter(|&r| a[(r, k)].norm() > tol.eps());
        let r = hits.next()?;
        if hits.next().is_some() {
            return None;
        }
        image.push(r);
    }
    Permutation::new(image).ok()
}

/// `A = D∘P` with `D` diagonal and `P = Σ|p(k)⟩⟨k|`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialDecomposition {
    diagonal: ComplexMatrix,
    permutation: Permutation,
}

impl MonomialDecomposition {
    pub fn diagonal(&self) -> &ComplexMatrix {
        &self.diagonal
    }

    pub fn permutation(&self) -> &Permutation {
        &self.permutation
    }

    pub fn reassemble(&self) -> ComplexMatrix {
        &self.diagonal * &self.permutation.matrix()
    }
}

pub fn monomial_decompose(a: &ComplexMatrix, tol: Tolerance) -> Result<MonomialDecomposition> {
    let p = monomial_permutation(a, tol).ok_or_else(|| {
        let n = a.n();
        let row = (0..n).find(|&r| (0..n).filter(|&c| a[(r, c)].norm() > tol.eps()).count() != 1);
        let col = (0..n).find(|&c| (0..n).filter(|&r| a[(r, c)].norm() > tol.eps()).count() != 1);
        Error::NotMonomial(match (row, col) {
            (Some(r), _) => format!("row {r} does not have exactly one nonzero entry"),
            (None, Some(c)) => format!("column {c} does not have exactly one nonzero entry"),
            (None, None) => "no single-entry pattern".into(),
        })
    })?;
    let inv = p.inverse();
    let d: Vec<C64> = (0..a.n()).map(|r| a[(r, inv.apply(r))]).collect();
    Ok(MonomialDecomposition {
        diagonal: ComplexMatrix::from_diagonal(&d)?,
        permutation: p,
    })
}

/// Whether `u∘A∘u†` is monomial for every `A` in the family.
pub fn monomializes(u: &ComplexMatrix, family: &[ComplexMatrix], tol: Tolerance) -> Result<bool> {
    let deviation = u.unitarity_defect();
    if deviation > tol.eps() {
        return Err(Error::NotUnitary { deviation });
    }
    if let Some(bad) = family.iter().find(|a| a.n() != u.n()) {
        return Err(Error::DimensionMismatch {
            expected: u.n(),
            found: bad.n(),
        });
    }
    let u_dag = u.adjoint();
    Ok(family
        .iter()
        .all(|a| is_monomial(&(&(u * a) * &u_dag), tol)))
}

/// Frobenius-norm floor above which a commutator counts as nonzero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonzeroThreshold {
    theta: f64,
}

impl NonzeroThreshold {
    pub const DEFAULT_THETA: f64 = 1e-3;

    pub fn new(theta: f64, tol: Tolerance) -> Result<Self> {
        if !theta.is_finite() || theta <= tol.eps() {
            return Err(Error::InvalidThreshold {
                theta,
                eps: tol.eps(),
            });
        }
        Ok(Self { theta })
    }

    pub fn theta(self) -> f64 {
        self.theta
    }
}

impl Default for NonzeroThreshold {
    fn default() -> Self {
        Self {
            theta: Self::DEFAULT_THETA,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Obstructed,
    NotObstructed,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Obstructed => "obstructed",
            Verdict::NotObstructed => "not_obstructed",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionTest {
    MuPowerCommutator,
    AdjointClosure,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    NonCommutingPair {
        first: usize,
        second: usize,
        commutator_norm: f64,
    },
    UnmatchedAdjoint {
        index: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub verdict: Verdict,
    pub test: ObstructionTest,
    pub witness: Option<Witness>,
    pub theta: Option<f64>,
    pub eps: f64,
}

fn require_identity(family: &[ComplexMatrix], tol: Tolerance) -> Result<usize> {
    let n = family.first().ok_or(Error::MissingIdentity)?.n();
    if let Some(bad) = family.iter().find(|a| a.n() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.n(),
        });
    }
    let id = ComplexMatrix::identity(n);
    family
        .iter()
        .position(|a| a.proportional(&id, tol).is_some())
        .ok_or(Error::MissingIdentity)
}

/// `[A^μ, B^μ]` with `μ = lcm(1, …, n)`.
pub fn mu_power_commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let m = mu(a.n());
    a.power(m).commutator(&b.power(m))
}

/// Reports the first pair `(k, l)`, `k < l`, whose `μ_n`-th powers fail to
/// commute by more than `theta` in Frobenius norm. A family containing the
/// identity with such a pair is not equivalent to any monomial basis.
pub fn mu_power_commutator_obstruction(
    family: &[ComplexMatrix],
    theta: NonzeroThreshold,
    tol: Tolerance,
) -> Result<ObstructionReport> {
    require_identity(family, tol)?;
    let m = mu(family[0].n());
    let powers: Vec<ComplexMatrix> = family.iter().map(|a| a.power(m)).collect();
    let mut witness = None;
    'scan: for (k, pk) in powers.iter().enumerate() {
        for (l, pl) in powers.iter().enumerate().skip(k + 1) {
            let norm = pk.commutator(pl)?.frobenius_norm();
            if norm > theta.theta() {
                witness = Some(Witness::NonCommutingPair {
                    first: k,
                    second: l,
                    commutator_norm: norm,
                });
                break 'scan;
            }
        }
    }
    Ok(ObstructionReport {
        verdict: if witness.is_some() {
            Verdict::Obstructed
        } else {
            Verdict::NotObstructed
        },
        test: ObstructionTest::MuPowerCommutator,
        witness,
        theta: Some(theta.theta()),
        eps: tol.eps(),
    })
}

/// Reports the first element whose adjoint is not proportional to any member.
/// A family containing the identity with such an element is not equivalent
/// to any nice error basis.
pub fn adjoint_closure_obstruction(
    family: &[ComplexMatrix],
    tol: Tolerance,
) -> Result<ObstructionReport> {
    require_identity(family, tol)?;
    let witness = family
        .iter()
        .position(|a| {
            let a_dag = a.adjoint();
            !family.iter().any(|b| b.proportional(&a_dag, tol).is_some())
        })
        .map(|index| Witness::UnmatchedAdjoint { index });
    Ok(ObstructionReport {
        verdict: if witness.is_some() {
            Verdict::Obstructed
        } else {
            Verdict::NotObstructed
        },
        test: ObstructionTest::AdjointClosure,
        witness,
        theta: None,
        eps: tol.eps(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{clock_shift_representation, pauli_representation};
    use crate::hadamard::fourier;
    use crate::linalg::{I, ONE, ZERO};
    use crate::qls::ClassicalLatinSquare;
    use crate::sample::Sampler;
    use crate::ueb::{nice_error_basis, sm};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn identity_decomposes_trivially() {
        let d = monomial_decompose(&ComplexMatrix::identity(3), tol()).unwrap();
        assert_eq!(d.diagonal(), &ComplexMatrix::identity(3));
        assert!(d.permutation().is_identity());
    }

    #[test]
    fn decomposition_reassembles() {
        let mut s = Sampler::new(17);
        for _ in 0..20 {
            let a = s.monomial_unitary(5);
            let d = monomial_decompose(&a, tol()).unwrap();
            assert!(d.reassemble().approx_eq(&a, tol()));
            assert!(d.diagonal().is_diagonal(tol()));
        }
    }

    #[test]
    fn dense_matrix_is_not_monomial() {
        let h = fourier(2).into_matrix();
        assert!(!is_monomial(&h, tol()));
        let err = monomial_decompose(&h, tol()).unwrap_err();
        assert!(matches!(err, Error::NotMonomial(_)));
        let singular = ComplexMatrix::from_rows(&[[ONE, ZERO], [ONE, ZERO]]).unwrap();
        assert!(!is_monomial(&singular, tol()));
    }

    #[test]
    fn monomial_closure() {
        let mut s = Sampler::new(4);
        for _ in 0..25 {
            let a = s.monomial_unitary(4);
            let b = s.monomial_unitary(4);
            assert!(is_monomial(&(&a * &b), tol()));
            assert!(is_monomial(&a.adjoint(), tol()));
            assert!(is_monomial(&a.scale(C64::new(-0.3, 2.0)), tol()));
        }
    }

    #[test]
    fn monomializes_rejects_bad_input() {
        let family = vec![ComplexMatrix::identity(2)];
        let not_unitary = ComplexMatrix::identity(2).scale(C64::new(2.0, 0.0));
        assert!(matches!(
            monomializes(&not_unitary, &family, tol()),
            Err(Error::NotUnitary { .. })
        ));
        assert!(matches!(
            monomializes(&ComplexMatrix::identity(3), &family, tol()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sm_basis_is_monomial_and_unobstructed() {
        let b = sm(
            &ClassicalLatinSquare::cyclic(4),
            &vec![fourier(4); 4],
            tol(),
        )
        .unwrap();
        assert!(monomializes(&ComplexMatrix::identity(4), b.elements(), tol()).unwrap());
        let r = mu_power_commutator_obstruction(b.elements(), NonzeroThreshold::default(), tol())
            .unwrap();
        assert_eq!(r.verdict, Verdict::NotObstructed);
        assert!(r.witness.is_none());
    }

    #[test]
    fn nice_bases_are_adjoint_closed() {
        let pauli = pauli_representation();
        let r = adjoint_closure_obstruction(pauli.images(), tol()).unwrap();
        assert_eq!(r.verdict, Verdict::NotObstructed);
        let cs = clock_shift_representation(4, tol()).unwrap();
        let b = nice_error_basis(&cs, tol()).unwrap();
        let r = adjoint_closure_obstruction(b.elements(), tol()).unwrap();
        assert_eq!(r.verdict, Verdict::NotObstructed);
        assert_eq!(r.theta, None);
    }

    #[test]
    fn missing_identity_is_an_error() {
        let x = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        let family = vec![x.clone(), x];
        assert_eq!(
            adjoint_closure_obstruction(&family, tol()).unwrap_err(),
            Error::MissingIdentity
        );
        assert_eq!(
            mu_power_commutator_obstruction(&family, NonzeroThreshold::default(), tol())
                .unwrap_err(),
            Error::MissingIdentity
        );
        assert_eq!(
            adjoint_closure_obstruction(&[], tol()).unwrap_err(),
            Error::MissingIdentity
        );
    }

    #[test]
    fn phase_scaled_identity_counts() {
        let family = vec![ComplexMatrix::identity(2).scale(I)];
        let r = adjoint_closure_obstruction(&family, tol()).unwrap();
        assert_eq!(r.verdict, Verdict::NotObstructed);
    }

    #[test]
    fn threshold_must_exceed_eps() {
        assert!(NonzeroThreshold::new(1e-12, tol()).is_err());
        assert!(NonzeroThreshold::new(f64::NAN, tol()).is_err());
        assert_eq!(NonzeroThreshold::new(0.5, tol()).unwrap().theta(), 0.5);
    }

    #[test]
    fn report_json_shape() {
        let r = ObstructionReport {
            verdict: Verdict::Obstructed,
            test: ObstructionTest::MuPowerCommutator,
            witness: Some(Witness::NonCommutingPair {
                first: 1,
                second: 2,
                commutator_norm: 2.5,
            }),
            theta: Some(1e-3),
            eps: 1e-9,
        };
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["verdict"], "obstructed");
        assert_eq!(v["test"], "mu_power_commutator");
        assert_eq!(v["witness"]["kind"], "non_commuting_pair");
        assert_eq!(v["witness"]["first"], 1);
        let back: ObstructionReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
