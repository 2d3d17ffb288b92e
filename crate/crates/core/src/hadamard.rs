//! Complex Hadamard matrices in the unnormalized convention `H∘H† = n·I`.

use std::f64::consts::TAU;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{phase, ComplexMatrix, Permutation, Tolerance, C64, ONE};

/// The three defining conditions of a Hadamard matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HadamardAxiom {
    /// `|H_ij| = 1`
    Unimodular,
    /// `H∘H† = n·I`
    RowOrthogonality,
    /// `H†∘H = n·I`
    ColumnOrthogonality,
}

impl fmt::Display for HadamardAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HadamardAxiom::Unimodular => "unimodular entries (|H_ij| = 1)",
            HadamardAxiom::RowOrthogonality => "row orthogonality (H H^dagger = n I)",
            HadamardAxiom::ColumnOrthogonality => "column orthogonality (H^dagger H = n I)",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HadamardMatrix {
    m: ComplexMatrix,
}

fn first_deviation(a: &ComplexMatrix, b: &ComplexMatrix, eps: f64) -> Option<(usize, usize, f64)> {
    let n = a.n();
    for i in 0..n {
        for j in 0..n {
            let d = (a[(i, j)] - b[(i, j)]).norm();
            if d > eps {
                return Some((i, j, d));
            }
        }
    }
    None
}

/// Checks unimodularity, then `H∘H† = n·I`, then `H†∘H = n·I`, reporting
/// the first violated condition and where.
pub fn validate_hadamard(m: ComplexMatrix, tol: Tolerance) -> Result<HadamardMatrix> {
    let n = m.n();
    let eps = tol.eps();
    for i in 0..n {
        for j in 0..n {
            let dev = (m[(i, j)].norm() - 1.0).abs();
            if dev > eps {
                return Err(Error::NotHadamard {
                    axiom: HadamardAxiom::Unimodular,
                    row: i,
                    col: j,
                    deviation: dev,
                });
            }
        }
    }
    let scaled_identity = ComplexMatrix::identity(n).scale(C64::new(n as f64, 0.0));
    let checks = [
        (HadamardAxiom::RowOrthogonality, &m * &m.adjoint()),
        (HadamardAxiom::ColumnOrthogonality, &m.adjoint() * &m),
    ];
    for (axiom, gram) in checks {
        if let Some((row, col, deviation)) = first_deviation(&gram, &scaled_identity, eps) {
            return Err(Error::NotHadamard {
                axiom,
                row,
                col,
                deviation,
            });
        }
    }
    Ok(HadamardMatrix { m })
}

impl HadamardMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.m
    }

    pub fn n(&self) -> usize {
        self.m.n()
    }

    /// The transpose of a Hadamard matrix is again Hadamard.
    pub fn transpose(&self) -> HadamardMatrix {
        HadamardMatrix {
            m: self.m.transpose(),
        }
    }

    /// `D₁∘P₁∘H∘P₂∘D₂`, revalidated.
    pub fn apply_equivalence(
        &self,
        w: &HadamardEquivalenceWitness,
        tol: Tolerance,
    ) -> Result<HadamardMatrix> {
        let n = self.n();
        if w.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: w.n(),
            });
        }
        let d1 = ComplexMatrix::from_diagonal(&w.d1)?;
        let d2 = ComplexMatrix::from_diagonal(&w.d2)?;
        let out = &(&(&(&d1 * &w.p1.matrix()) * &self.m) * &w.p2.matrix()) * &d2;
        validate_hadamard(out, tol)
    }
}

/// The Fourier matrix `F_jk = exp(2πi·jk/n)`.
pub fn fourier(n: usize) -> HadamardMatrix {
    assert!(n >= 1, "Fourier matrix order must be at least 1");
    // reduce jk mod n first so the angle stays small and the n=4 entries are
    // as close to {±1, ±i} as the sine/cosine allow
    let m = ComplexMatrix::from_fn(n, |j, k| {
        let r = (j * k) % n;
        exact_root_of_unity(r, n)
    });
    HadamardMatrix { m }
}

fn exact_root_of_unity(r: usize, n: usize) -> C64 {
    // quarter turns are returned exactly
    if (4 * r).is_multiple_of(n) {
        match 4 * r / n {
            0 => return ONE,
            1 => return C64::new(0.0, 1.0),
            2 => return C64::new(-1.0, 0.0),
            3 => return C64::new(0.0, -1.0),
            _ => {}
        }
    }
    phase(TAU * r as f64 / n as f64)
}

/// The order-4 family
///
/// ```text
/// 1   1    1       1
/// 1   1   -1      -1
/// 1  -1    e^{iα} -e^{iα}
/// 1  -1   -e^{iα}  e^{iα}
/// ```
///
/// Every complex Hadamard of order 4 is equivalent to one of these with
/// `α ∈ [0, π/2]`; any real `alpha` is accepted here.
pub fn h_alpha(alpha: f64) -> HadamardMatrix {
    let e = phase(alpha);
    let o = ONE;
    let rows = [[o, o, o, o], [o, o, -o, -o], [o, -o, e, -e], [o, -o, -e, e]];
    HadamardMatrix {
        m: ComplexMatrix::from_rows(&rows).expect("4x4 literal"),
    }
}

/// Witness for Hadamard equivalence `H′ = D₁∘P₁∘H∘P₂∘D₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct HadamardEquivalenceWitness {
    p1: Permutation,
    p2: Permutation,
    d1: Vec<C64>,
    d2: Vec<C64>,
}

impl HadamardEquivalenceWitness {
    pub fn new(
        p1: Permutation,
        p2: Permutation,
        d1: Vec<C64>,
        d2: Vec<C64>,
        tol: Tolerance,
    ) -> Result<Self> {
        let n = p1.len();
        for len in [p2.len(), d1.len(), d2.len()] {
            if len != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: len,
                });
            }
        }
        for (index, z) in d1.iter().chain(&d2).enumerate() {
            if (z.norm() - 1.0).abs() > tol.eps() {
                return Err(Error::NotUnitModulus {
                    index,
                    modulus: z.norm(),
                });
            }
        }
        Ok(Self { p1, p2, d1, d2 })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            p1: Permutation::identity(n),
            p2: Permutation::identity(n),
            d1: vec![ONE; n],
            d2: vec![ONE; n],
        }
    }

    pub fn n(&self) -> usize {
        self.p1.len()
    }
}
