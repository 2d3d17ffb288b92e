//! Dense complex matrices of small order and the numeric predicates the
//! constructions are checked with.
//!
//! Matrices are square, row-major, and indexed `(row, col)` from zero.
//! Equality is always Chebyshev: the largest entrywise modulus of the
//! difference compared against an absolute [`Tolerance`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Absolute per-entry tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    eps: f64,
}

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-9;

    pub fn new(eps: f64) -> Result<Self> {
        if eps > 0.0 && eps.is_finite() {
            Ok(Self { eps })
        } else {
            Err(Error::InvalidTolerance(eps))
        }
    }

    pub fn eps(self) -> f64 {
        self.eps
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eps: Self::DEFAULT_EPS,
        }
    }
}

/// A permutation of `{0, .., n-1}` stored as its image table, `p(k) = p[k]`.
///
/// The associated matrix is `P = Σ_k |p(k)⟩⟨k|`, so `P` sends basis vector
/// `k` to basis vector `p(k)`. Under this convention row `i` of `P∘M` is row
/// `p⁻¹(i)` of `M`, and column `k` of `M∘P` is column `p(k)` of `M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty".into()));
        }
        let mut seen = vec![false; n];
        for &k in &image {
            if k >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {k} out of range for length {n}"
                )));
            }
            if std::mem::replace(&mut seen[k], true) {
                return Err(Error::InvalidPermutation(format!("repeated image {k}")));
            }
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n).collect(),
        }
    }

    /// The transposition swapping `a` and `b`.
    pub fn swap(n: usize, a: usize, b: usize) -> Result<Self> {
        let mut image: Vec<usize> = (0..n).collect();
        if a >= n || b >= n {
            return Err(Error::IndexOutOfRange { index: a.max(b), n });
        }
        image.swap(a, b);
        Ok(Self { image })
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, k: usize) -> usize {
        self.image[k]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(k, &v)| k == v)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (k, &v) in self.image.iter().enumerate() {
            inv[v] = k;
        }
        Self { image: inv }
    }

    /// `self ∘ other`, i.e. `k ↦ self(other(k))`.
    pub fn then_after(&self, other: &Permutation) -> Self {
        Self {
            image: other.image.iter().map(|&k| self.image[k]).collect(),
        }
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let n = self.len();
        let mut m = ComplexMatrix::zeros(n);
        for (k, &pk) in self.image.iter().enumerate() {
            m.data[pk * n + k] = ONE;
        }
        m
    }

    /// Given the diagonal entries `d` of `D`, returns `D'` with
    /// `D'_kk = d_{p(k)}`, so that `D∘P = P∘D'`.
    pub fn conjugate_diag(&self, d: &[C64]) -> Result<ComplexMatrix> {
        if d.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: d.len(),
            });
        }
        let shifted: Vec<C64> = self.image.iter().map(|&pk| d[pk]).collect();
        ComplexMatrix::from_diagonal(&shifted)
    }

    /// All permutations of `{0, .., n-1}` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation {
                image: current.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

/// Dense square matrix of complex scalars.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  [")?;
            for j in 0..self.n {
                let z = self[(i, j)];
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:+.6}{:+.6}i", z.re, z.im)?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl ComplexMatrix {
    fn checked(n: usize, data: Vec<C64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Shape("order must be at least 1".into()));
        }
        if data.len() != n * n {
            return Err(Error::Shape(format!(
                "expected {} entries for order {n}, found {}",
                n * n,
                data.len()
            )));
        }
        if let Some(idx) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite {
                row: idx / n,
                col: idx % n,
            });
        }
        Ok(Self { n, data })
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix order must be at least 1");
        Self {
            n,
            data: vec![ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    /// Builds a matrix from `n` rows of `n` entries each.
    pub fn from_rows<R: AsRef<[C64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Self::checked(n, data)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns<R: AsRef<[C64]>>(cols: &[R]) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    /// Row-major flat entries.
    pub fn from_flat(n: usize, data: Vec<C64>) -> Result<Self> {
        Self::checked(n, data)
    }

    /// Convenience for real matrices given row by row.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let complex: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&complex)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        assert!(n >= 1, "matrix order must be at least 1");
        let data = (0..n * n).map(|idx| f(idx / n, idx % n)).collect();
        Self { n, data }
    }

    pub fn from_diagonal(d: &[C64]) -> Result<Self> {
        let n = d.len();
        let mut data = vec![ZERO; n * n];
        for (i, &z) in d.iter().enumerate() {
            data[i * n + i] = z;
        }
        Self::checked(n, data)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Option<C64> {
        (row < self.n && col < self.n).then(|| self.data[row * self.n + col])
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.n).map(|i| self.data[i * self.n + j]).collect()
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.n).map(|i| self.data[i * self.n + i]).collect()
    }

    /// Returns a copy with entry `(row, col)` replaced.
    pub fn with_entry(&self, row: usize, col: usize, value: C64) -> Result<Self> {
        if row >= self.n || col >= self.n {
            return Err(Error::IndexOutOfRange {
                index: row.max(col),
                n: self.n,
            });
        }
        let mut data = self.data.clone();
        data[row * self.n + col] = value;
        Self::checked(self.n, data)
    }

    fn ensure_same_order(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            })
        }
    }

    fn product(&self, other: &Self) -> Self {
        let n = self.n;
        let mut data = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Self { n, data }
    }

    /// Matrix product `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.ensure_same_order(other)?;
        Ok(self.product(other))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.data[j * self.n + i].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.data[j * self.n + i])
    }

    pub fn conjugate(&self) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&z| c * z).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self.data[i * self.n + i]).sum()
    }

    /// Hilbert–Schmidt inner product `Tr(A† ∘ B)`, conjugate-linear in `self`.
    pub fn hs_inner(&self, other: &Self) -> Result<C64> {
        self.ensure_same_order(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Chebyshev distance. Matrices of different order are infinitely far apart.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool {
        self.max_abs_diff(other) <= tol.eps()
    }

    /// Max deviation of `A†∘A` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        self.adjoint()
            .product(self)
            .max_abs_diff(&Self::identity(self.n))
    }

    pub fn is_unitary(&self, tol: Tolerance) -> bool {
        self.unitarity_defect() <= tol.eps()
    }

    pub fn is_diagonal(&self, tol: Tolerance) -> bool {
        (0..self.n)
            .all(|i| (0..self.n).all(|j| i == j || self.data[i * self.n + j].norm() <= tol.eps()))
    }

    /// `A^k` by binary exponentiation; `A^0 = I`.
    pub fn power(&self, mut k: u64) -> Self {
        let mut result = Self::identity(self.n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.product(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.product(&base);
            }
        }
        result
    }

    /// `diag(M, i)`: the diagonal matrix carrying row `i` of `M`.
    pub fn diag_row(&self, i: usize) -> Result<Self> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.n,
            });
        }
        Self::from_diagonal(self.row(i))
    }

    pub fn is_zero_diagonal(&self, tol: Tolerance) -> bool {
        (0..self.n).all(|i| self.data[i * self.n + i].norm() <= tol.eps())
    }

    /// Commutator `A∘B − B∘A`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.ensure_same_order(other)?;
        Ok(&self.product(other) - &other.product(self))
    }

    /// Finds a unit scalar `c` with `self ≈ c·other`.
    ///
    /// The candidate is the least-squares fit `⟨B, A⟩ / ⟨B, B⟩`; it is
    /// accepted when `||c| − 1| ≤ eps` and `max |A − c·B| ≤ eps`.
    pub fn proportional(&self, other: &Self, tol: Tolerance) -> Option<C64> {
        if self.n != other.n {
            return None;
        }
        let denom = other.hs_inner(other).ok()?.re;
        if denom <= 0.0 {
            return None;
        }
        let c = other.hs_inner(self).ok()? / denom;
        if (c.norm() - 1.0).abs() > tol.eps() {
            return None;
        }
        (self.max_abs_diff(&other.scale(c)) <= tol.eps()).then_some(c)
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (row, col): (usize, usize)) -> &C64 {
        assert!(row < self.n && col < self.n, "index out of range");
        &self.data[row * self.n + col]
    }
}

/// Matrix product. Panics on order mismatch; use [`ComplexMatrix::compose`]
/// for the checked form.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "matrix order mismatch");
        self.product(rhs)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "matrix order mismatch");
        ComplexMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n, "matrix order mismatch");
        ComplexMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.scale(-ONE)
    }
}

/// `lcm(1, .., n)`. Overflows `u64` beyond `n = 42`.
pub fn mu(n: usize) -> u64 {
    assert!(n >= 1, "mu is defined for n >= 1");
    (1..=n as u64).fold(1, |acc, k| acc.lcm(&k))
}

/// Unit complex number `e^{iθ}`.
pub fn phase(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn anti_diagonal(n: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, |i, j| if i + j == n - 1 { ONE } else { ZERO })
    }

    #[test]
    fn identity_composes_neutrally() {
        let m = ComplexMatrix::from_fn(4, |i, j| c(i as f64, j as f64 - 1.5));
        let id = ComplexMatrix::identity(4);
        assert_eq!(id.compose(&m).unwrap(), m);
        assert_eq!(m.compose(&id).unwrap(), m);
    }

    #[test]
    fn anti_diagonal_squares_to_identity() {
        let a = anti_diagonal(4);
        assert_eq!(a.compose(&a).unwrap(), ComplexMatrix::identity(4));
    }

    #[test]
    fn compose_rejects_mismatched_orders() {
        let err = ComplexMatrix::identity(2)
            .compose(&ComplexMatrix::identity(3))
            .unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                expected: 2,
                found: 3
            }
        );
    }

    #[test]
    fn adjoint_of_diagonal_conjugates() {
        let d = ComplexMatrix::from_diagonal(&[I, -I]).unwrap();
        let want = ComplexMatrix::from_diagonal(&[-I, I]).unwrap();
        assert_eq!(d.adjoint(), want);
        assert_eq!(
            ComplexMatrix::identity(3).adjoint(),
            ComplexMatrix::identity(3)
        );
    }

    #[test]
    fn trace_and_inner_product() {
        assert_eq!(ComplexMatrix::identity(4).trace(), c(4.0, 0.0));
        let a =
            ComplexMatrix::from_rows(&[[c(1.0, 1.0), c(0.0, 2.0)], [c(3.0, 0.0), c(0.0, -1.0)]])
                .unwrap();
        let self_inner = a.hs_inner(&a).unwrap();
        assert!((self_inner.re - 16.0).abs() < 1e-15 && self_inner.im == 0.0);
        assert!(a.hs_inner(&ComplexMatrix::identity(3)).is_err());
    }

    #[test]
    fn unitarity_predicate() {
        let tol = Tolerance::default();
        assert!(ComplexMatrix::identity(4).is_unitary(tol));
        assert!(anti_diagonal(4).is_unitary(tol));
        let ones = ComplexMatrix::from_fn(4, |_, _| ONE);
        assert!(!ones.is_unitary(tol));
    }

    #[test]
    fn power_edge_cases() {
        let m = ComplexMatrix::from_fn(3, |i, j| c(i as f64 + 0.5, j as f64));
        assert_eq!(m.power(0), ComplexMatrix::identity(3));
        assert_eq!(m.power(1), m);
        let d = ComplexMatrix::from_diagonal(&[ONE, I, -ONE, -I]).unwrap();
        assert_eq!(d.power(4), ComplexMatrix::identity(4));
    }

    #[test]
    fn power_matches_iterated_product() {
        let u = crate::sample::random_unitary(4, 7);
        let mut naive = ComplexMatrix::identity(4);
        for _ in 0..12 {
            naive = naive.compose(&u).unwrap();
        }
        assert!(u.power(12).max_abs_diff(&naive) <= 1e-12);
    }

    #[test]
    fn diag_row_extracts_row() {
        let m = ComplexMatrix::from_rows(&[[ONE, I], [-ONE, -I]]).unwrap();
        let d = m.diag_row(1).unwrap();
        assert_eq!(d, ComplexMatrix::from_diagonal(&[-ONE, -I]).unwrap());
        assert_eq!(
            m.diag_row(2).unwrap_err(),
            Error::IndexOutOfRange { index: 2, n: 2 }
        );
        let e = ComplexMatrix::identity(3).diag_row(1).unwrap();
        assert_eq!(e, ComplexMatrix::from_diagonal(&[ZERO, ONE, ZERO]).unwrap());
    }

    #[test]
    fn permutation_matrix_convention() {
        let p = Permutation::new(vec![1, 2, 0]).unwrap();
        let m = p.matrix();
        // P|k> = |p(k)>
        for k in 0..3 {
            assert_eq!(m[(p.apply(k), k)], ONE);
        }
        assert_eq!(p.inverse().then_after(&p), Permutation::identity(3));
        assert_eq!(p.inverse().matrix(), m.adjoint());
    }

    #[test]
    fn permutation_rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert!(Permutation::new(vec![]).is_err());
    }

    #[test]
    fn conjugate_diag_identity_and_swap() {
        let (a, b) = (c(2.0, 1.0), c(-1.0, 3.0));
        let id = Permutation::identity(2);
        let d = ComplexMatrix::from_diagonal(&[a, b]).unwrap();
        assert_eq!(id.conjugate_diag(&[a, b]).unwrap(), d);
        let swap = Permutation::swap(2, 0, 1).unwrap();
        let dp = swap.conjugate_diag(&[a, b]).unwrap();
        assert_eq!(dp, ComplexMatrix::from_diagonal(&[b, a]).unwrap());
        assert_eq!(&d * &swap.matrix(), &swap.matrix() * &dp);
    }

    #[test]
    fn enumerates_all_permutations() {
        assert_eq!(Permutation::all(1).len(), 1);
        assert_eq!(Permutation::all(4).len(), 24);
        let five = Permutation::all(5);
        assert_eq!(five.len(), 120);
        let mut dedup = five.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), 120);
    }

    #[test]
    fn proportional_finds_phase() {
        let tol = Tolerance::default();
        let a = anti_diagonal(4);
        assert_eq!(a.proportional(&a, tol), Some(ONE));
        let k = a.scale(I).proportional(&a, tol).unwrap();
        assert!((k - I).norm() < 1e-15);
        assert_eq!(a.proportional(&ComplexMatrix::identity(4), tol), None);
        // modulus 2 is not a unit scalar
        assert_eq!(a.scale(c(2.0, 0.0)).proportional(&a, tol), None);
        assert_eq!(a.proportional(&ComplexMatrix::zeros(4), tol), None);
    }

    #[test]
    fn zero_diagonal_predicate() {
        let tol = Tolerance::default();
        assert!(anti_diagonal(4).is_zero_diagonal(tol));
        assert!(!ComplexMatrix::identity(4).is_zero_diagonal(tol));
    }

    #[test]
    fn mu_values() {
        assert_eq!(mu(1), 1);
        assert_eq!(mu(2), 2);
        assert_eq!(mu(4), 12);
        // lcm(1..6) = 2^2 * 3 * 5
        assert_eq!(mu(6), 60);
    }

    #[test]
    fn rejects_non_finite_and_bad_shapes() {
        let err = ComplexMatrix::from_rows(&[[ONE, c(f64::NAN, 0.0)], [ONE, ONE]]).unwrap_err();
        assert_eq!(err, Error::NonFinite { row: 0, col: 1 });
        assert!(matches!(
            ComplexMatrix::from_rows(&[vec![ONE], vec![ONE, ONE]]),
            Err(Error::Shape(_))
        ));
        assert!(ComplexMatrix::from_flat(0, vec![]).is_err());
        assert!(Tolerance::new(0.0).is_err());
        assert!(Tolerance::new(f64::INFINITY).is_err());
    }
}
