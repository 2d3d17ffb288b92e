//! Finite groups as Cayley tables, and their unitary projective representations.

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Tolerance, C64, I, ZERO};

/// A finite group given by its multiplication table: `table[g][h] = g·h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl CayleyTable {
    /// Checks closure, the Latin property, a two-sided identity and
    /// associativity exhaustively.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let m = table.len();
        if m == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidGroup(format!(
                    "row {g} has {} entries, expected {m}",
                    row.len()
                )));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= m) {
                return Err(Error::InvalidGroup(format!(
                    "entry {x} in row {g} is out of range"
                )));
            }
        }
        for g in 0..m {
            let mut row_seen = vec![false; m];
            let mut col_seen = vec![false; m];
            for h in 0..m {
                if std::mem::replace(&mut row_seen[table[g][h]], true) {
                    return Err(Error::InvalidGroup(format!("row {g} repeats an element")));
                }
                if std::mem::replace(&mut col_seen[table[h][g]], true) {
                    return Err(Error::InvalidGroup(format!(
                        "column {g} repeats an element"
                    )));
                }
            }
        }
        let identity = (0..m)
            .find(|&e| (0..m).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for a in 0..m {
            for b in 0..m {
                let ab = table[a][b];
                for c in 0..m {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let inverses = (0..m)
            .map(|g| {
                (0..m)
                    .find(|&h| table[g][h] == identity)
                    .expect("Latin rows contain the identity")
            })
            .collect();
        Ok(Self {
            table,
            identity,
            inverses,
        })
    }

    /// The cyclic group `ℤ_m` with elements `0..m` under addition.
    pub fn cyclic(m: usize) -> Self {
        assert!(m > 0, "cyclic group needs positive order");
        let table = (0..m)
            .map(|a| (0..m).map(|b| (a + b) % m).collect())
            .collect();
        Self {
            table,
            identity: 0,
            inverses: (0..m).map(|g| (m - g) % m).collect(),
        }
    }

    /// The direct product, with `(g, h)` enumerated as `g·|other| + h`.
    pub fn direct_product(&self, other: &CayleyTable) -> Self {
        let (m1, m2) = (self.order(), other.order());
        let table = (0..m1 * m2)
            .map(|x| {
                (0..m1 * m2)
                    .map(|y| self.table[x / m2][y / m2] * m2 + other.table[x % m2][y % m2])
                    .collect()
            })
            .collect();
        let inverses = (0..m1 * m2)
            .map(|x| self.inverses[x / m2] * m2 + other.inverses[x % m2])
            .collect();
        Self {
            table,
            identity: self.identity * m2 + other.identity,
            inverses,
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn multiply(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

/// Unitary images `ρ(g)` with `ρ(g)∘ρ(h) ∝ ρ(g·h)`.
///
/// The cocycle is not stored; [`ProjectiveRepresentation::cocycle`]
/// recomputes it as a proportionality scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveRepresentation {
    group: CayleyTable,
    images: Vec<ComplexMatrix>,
}

impl ProjectiveRepresentation {
    pub fn new(group: CayleyTable, images: Vec<ComplexMatrix>, tol: Tolerance) -> Result<Self> {
        if images.len() != group.order() {
            return Err(Error::WrongCount {
                expected: group.order(),
                found: images.len(),
            });
        }
        let n = images[0].n();
        if let Some(bad) = images.iter().find(|m| m.n() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.n(),
            });
        }
        for (index, m) in images.iter().enumerate() {
            let deviation = m.unitarity_defect();
            if deviation > tol.eps() {
                return Err(Error::ElementNotUnitary { index, deviation });
            }
        }
        if !images[group.identity()].approx_eq(&ComplexMatrix::identity(n), tol) {
            return Err(Error::IdentityImage);
        }
        let rep = Self { group, images };
        let m = rep.group.order();
        for g in 0..m {
            for h in 0..m {
                if rep.cocycle(g, h, tol).is_none() {
                    return Err(Error::Cocycle { g, h });
                }
            }
        }
        Ok(rep)
    }

    pub fn group(&self) -> &CayleyTable {
        &self.group
    }

    pub fn images(&self) -> &[ComplexMatrix] {
        &self.images
    }

    pub fn image(&self, g: usize) -> &ComplexMatrix {
        &self.images[g]
    }

    /// Dimension of the representation space.
    pub fn dim(&self) -> usize {
        self.images[0].n()
    }

    /// `ω` with `ρ(g)∘ρ(h) = ω·ρ(g·h)`, if it exists.
    pub fn cocycle(&self, g: usize, h: usize, tol: Tolerance) -> Option<C64> {
        let product = &self.images[g] * &self.images[h];
        product.proportional(&self.images[self.group.multiply(g, h)], tol)
    }

    /// Whether `ρ(g)† ∝ ρ(g⁻¹)` for every `g`.
    pub fn adjoint_identity_check(&self, tol: Tolerance) -> bool {
        (0..self.group.order()).all(|g| {
            self.images[g]
                .adjoint()
                .proportional(&self.images[self.group.inverse(g)], tol)
                .is_some()
        })
    }
}

fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]).expect("finite")
}

fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, -1.0]]).expect("finite")
}

/// `ℤ₂×ℤ₂` represented by the Pauli matrices: `(0,0) ↦ I`, `(0,1) ↦ Z`,
/// `(1,0) ↦ X`, `(1,1) ↦ Y`.
pub fn pauli_representation() -> ProjectiveRepresentation {
    let y = ComplexMatrix::from_rows(&[[ZERO, -I], [I, ZERO]]).expect("finite");
    let group = CayleyTable::cyclic(2).direct_product(&CayleyTable::cyclic(2));
    ProjectiveRepresentation::new(
        group,
        vec![ComplexMatrix::identity(2), pauli_z(), pauli_x(), y],
        Tolerance::default(),
    )
    .expect("Pauli matrices form a projective representation")
}

/// Cyclic shift `|k⟩ ↦ |k+1 mod n⟩`.
pub fn shift(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |r, c| {
        if r == (c + 1) % n {
            C64::new(1.0, 0.0)
        } else {
            ZERO
        }
    })
}

/// Clock `|k⟩ ↦ ω^k |k⟩` with `ω = e^{2πi/n}`.
pub fn clock(n: usize) -> ComplexMatrix {
    let d: Vec<C64> = (0..n)
        .map(|k| crate::linalg::phase(std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    ComplexMatrix::from_diagonal(&d).expect("finite")
}

/// `ℤ_n×ℤ_n` with `ρ(a, b) = shiftᵃ∘clockᵇ`, element `(a, b)` at index `a·n + b`.
pub fn clock_shift_representation(n: usize, tol: Tolerance) -> Result<ProjectiveRepresentation> {
    if n == 0 {
        return Err(Error::Shape("order must be positive".into()));
    }
    let (x, z) = (shift(n), clock(n));
    let images = (0..n * n)
        .map(|k| &x.power((k / n) as u64) * &z.power((k % n) as u64))
        .collect();
    let group = CayleyTable::cyclic(n).direct_product(&CayleyTable::cyclic(n));
    ProjectiveRepresentation::new(group, images, tol)
}
