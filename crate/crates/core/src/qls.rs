//! Quantum Latin squares.
//!
//! A square of order `n` is stored by its row matrices: `rows[i]` is `Q_i`,
//! whose `j`-th column is the vector in cell `(i, j)`. The coefficient of
//! `|k⟩` in cell `(i, j)` is therefore `(Q_i)_{kj}`.

use crate::error::{Error, Result};
use crate::hadamard::HadamardMatrix;
use crate::linalg::{ComplexMatrix, Permutation, Tolerance, C64, ONE, ZERO};

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumLatinSquare {
    rows: Vec<ComplexMatrix>,
}

/// Validates a square given by its row matrices.
///
/// Rows are checked first (each `Q_i` unitary), then columns via
/// `Σ_j conj(Q_{pij}) Q_{qij} = δ_pq` for every column `i` and pair `p ≤ q`.
pub fn validate_qls(rows: Vec<ComplexMatrix>, tol: Tolerance) -> Result<QuantumLatinSquare> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::Shape(
            "a quantum Latin square needs at least one row".into(),
        ));
    }
    for m in &rows {
        if m.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.n(),
            });
        }
    }
    for (row, q) in rows.iter().enumerate() {
        let deviation = q.unitarity_defect();
        if deviation > tol.eps() {
            return Err(Error::QlsRowBasis { row, deviation });
        }
    }
    for i in 0..n {
        for p in 0..n {
            for q in p..n {
                let inner: C64 = (0..n)
                    .map(|j| rows[p][(j, i)].conj() * rows[q][(j, i)])
                    .sum();
                let want = if p == q { ONE } else { ZERO };
                let deviation = (inner - want).norm();
                if deviation > tol.eps() {
                    return Err(Error::QlsColumnBasis {
                        column: i,
                        p,
                        q,
                        deviation,
                    });
                }
            }
        }
    }
    Ok(QuantumLatinSquare { rows })
}

/// Validates a square given cell by cell: `grid[i][j]` is the vector in
/// row `i`, column `j`.
pub fn validate_qls_grid(grid: &[Vec<Vec<C64>>], tol: Tolerance) -> Result<QuantumLatinSquare> {
    let n = grid.len();
    let mut rows = Vec::with_capacity(n);
    for (i, row) in grid.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Shape(format!(
                "row {i} has {} cells, expected {n}",
                row.len()
            )));
        }
        if let Some(j) = row.iter().position(|v| v.len() != n) {
            return Err(Error::Shape(format!(
                "cell ({i}, {j}) has dimension {}, expected {n}",
                row[j].len()
            )));
        }
        rows.push(ComplexMatrix::from_columns(row)?);
    }
    validate_qls(rows, tol)
}

impl QuantumLatinSquare {
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// `Q_i`.
    pub fn row_matrix(&self, i: usize) -> &ComplexMatrix {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[ComplexMatrix] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<ComplexMatrix> {
        self.rows
    }

    /// The vector in cell `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> Vec<C64> {
        self.rows[i].column(j)
    }

    /// `⟨k|Q_ij⟩`, i.e. `(Q_i)_{kj}`.
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> C64 {
        self.rows[i][(k, j)]
    }

    /// The matrix whose `i`-th column is the vector in cell `(i, j)`.
    pub fn column_matrix(&self, j: usize) -> ComplexMatrix {
        let cols: Vec<Vec<C64>> = (0..self.n()).map(|i| self.entry(i, j)).collect();
        ComplexMatrix::from_columns(&cols).expect("validated square")
    }

    /// True when every cell is a basis vector up to a phase.
    pub fn is_classical(&self, tol: Tolerance) -> bool {
        self.classical_shape(tol, false)
    }

    /// True when every cell is exactly a basis vector (coefficient 1).
    pub fn is_classical_exact(&self, tol: Tolerance) -> bool {
        self.classical_shape(tol, true)
    }

    fn classical_shape(&self, tol: Tolerance, exact: bool) -> bool {
        let eps = tol.eps();
        self.rows.iter().all(|q| {
            (0..q.n()).all(|j| {
                let col = q.column(j);
                let big: Vec<&C64> = col.iter().filter(|z| z.norm() > eps).collect();
                match big.as_slice() {
                    [z] if exact => (*z - ONE).norm() <= eps,
                    [z] => (z.norm() - 1.0).abs() <= eps,
                    _ => false,
                }
            })
        })
    }

    /// `Q′_j = c_j·U∘Q_{φ(j)}∘P∘D`, revalidated.
    pub fn apply_equivalence(
        &self,
        w: &QlsEquivalenceWitness,
        tol: Tolerance,
    ) -> Result<QuantumLatinSquare> {
        let n = self.n();
        if w.u.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: w.u.n(),
            });
        }
        let right = &w.p.matrix() * &ComplexMatrix::from_diagonal(&w.d)?;
        let rows = (0..n)
            .map(|j| (&(&w.u * &self.rows[w.phi.apply(j)]) * &right).scale(w.c[j]))
            .collect();
        validate_qls(rows, tol)
    }
}

/// The square associated with a Hadamard matrix:
/// `(Q_H)_j = (1/n)·H∘diag(H, j)†∘H†`.
pub fn qls_from_hadamard(h: &HadamardMatrix, tol: Tolerance) -> Result<QuantumLatinSquare> {
    let hm = h.matrix();
    let n = h.n();
    let h_dag = hm.adjoint();
    let inv_n = C64::new(1.0 / n as f64, 0.0);
    let rows = (0..n)
        .map(|j| {
            let d = hm.diag_row(j)?.adjoint();
            Ok((&(hm * &d) * &h_dag).scale(inv_n))
        })
        .collect::<Result<Vec<_>>>()?;
    validate_qls(rows, tol)
}

/// An `n×n` array of symbols `0..n` with each symbol once per row and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalLatinSquare {
    grid: Vec<Vec<usize>>,
}

impl ClassicalLatinSquare {
    pub fn new(grid: Vec<Vec<usize>>) -> Result<Self> {
        let n = grid.len();
        if n == 0 {
            return Err(Error::NotLatin("empty grid".into()));
        }
        for (i, row) in grid.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotLatin(format!(
                    "row {i} has {} cells, expected {n}",
                    row.len()
                )));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= n) {
                return Err(Error::NotLatin(format!(
                    "symbol {v} in row {i} out of range"
                )));
            }
        }
        for i in 0..n {
            let mut in_row = vec![false; n];
            let mut in_col = vec![false; n];
            for j in 0..n {
                if std::mem::replace(&mut in_row[grid[i][j]], true) {
                    return Err(Error::NotLatin(format!(
                        "symbol {} repeated in row {i}",
                        grid[i][j]
                    )));
                }
                if std::mem::replace(&mut in_col[grid[j][i]], true) {
                    return Err(Error::NotLatin(format!(
                        "symbol {} repeated in column {i}",
                        grid[j][i]
                    )));
                }
            }
        }
        Ok(Self { grid })
    }

    /// `L_ij = (i + j) mod n`.
    pub fn cyclic(n: usize) -> Self {
        Self {
            grid: (0..n)
                .map(|i| (0..n).map(|j| (i + j) % n).collect())
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.grid.len()
    }

    pub fn grid(&self) -> &[Vec<usize>] {
        &self.grid
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.grid[i][j]
    }

    /// Row `i` read as a permutation `j ↦ L_ij`.
    pub fn row_permutation(&self, i: usize) -> Permutation {
        Permutation::new(self.grid[i].clone()).expect("rows of a Latin square are permutations")
    }

    /// Replaces each symbol `k` with the basis vector `|k⟩`. Row `i` of the
    /// result is the permutation matrix of row `i` of the square.
    pub fn to_quantum(&self) -> QuantumLatinSquare {
        QuantumLatinSquare {
            rows: (0..self.n())
                .map(|i| self.row_permutation(i).matrix())
                .collect(),
        }
    }
}

pub fn from_classical(l: &ClassicalLatinSquare) -> QuantumLatinSquare {
    l.to_quantum()
}

/// Witness for `Q′_j = c_j·U∘Q_{φ(j)}∘P∘D`.
#[derive(Debug, Clone, PartialEq)]
pub struct QlsEquivalenceWitness {
    u: ComplexMatrix,
    phi: Permutation,
    p: Permutation,
    d: Vec<C64>,
    c: Vec<C64>,
}

impl QlsEquivalenceWitness {
    pub fn new(
        u: ComplexMatrix,
        phi: Permutation,
        p: Permutation,
        d: Vec<C64>,
        c: Vec<C64>,
        tol: Tolerance,
    ) -> Result<Self> {
        let n = u.n();
        for len in [phi.len(), p.len(), d.len(), c.len()] {
            if len != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: len,
                });
            }
        }
        let deviation = u.unitarity_defect();
        if deviation > tol.eps() {
            return Err(Error::NotUnitary { deviation });
        }
        for (index, z) in d.iter().chain(&c).enumerate() {
            if (z.norm() - 1.0).abs() > tol.eps() {
                return Err(Error::NotUnitModulus {
                    index,
                    modulus: z.norm(),
                });
            }
        }
        Ok(Self { u, phi, p, d, c })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            u: ComplexMatrix::identity(n),
            phi: Permutation::identity(n),
            p: Permutation::identity(n),
            d: vec![ONE; n],
            c: vec![ONE; n],
        }
    }
}
