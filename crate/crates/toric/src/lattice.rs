//! Exact integer linear algebra over the dual lattices N and M.
//!
//! Everything here is arbitrary-precision: coordinates are `BigInt`, so gcd
//! reduction, determinants, and unimodular solves are exact by construction.
//! Vectors do not remember which of the two lattices they live in; the pairing
//! between N and M is the standard dot product in coordinates.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, ToricError};

/// A point of N or M: exact integer coordinates of a fixed ambient dimension.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    coords: Vec<BigInt>,
}

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        Self { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self {
            coords: coords.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            coords: vec![BigInt::zero(); dim],
        }
    }

    /// Standard basis vector e_i.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.coords[i] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &BigInt {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// The pairing ⟨·,·⟩ of M and N: the dot product in coordinates.
    pub fn dot(&self, other: &Self) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    /// Splits `self` as k·p with p primitive (coordinate gcd 1) and k ≥ 1.
    /// The direction of p keeps the sign of `self`; rays are directed.
    pub fn primitive(&self) -> Result<(LatticeVector, BigInt)> {
        if self.is_zero() {
            return Err(ToricError::ZeroVector);
        }
        let mut g = BigInt::zero();
        for c in &self.coords {
            g = g.gcd(c);
        }
        let p = Self {
            coords: self.coords.iter().map(|c| c / &g).collect(),
        };
        Ok((p, g))
    }

    /// If `self` = a·other for an integer a (with `other` ≠ 0), returns a.
    pub fn ratio_to(&self, other: &Self) -> Option<BigInt> {
        debug_assert!(!other.is_zero());
        let k = other.coords.iter().position(|c| !c.is_zero())?;
        let (q, r) = self.coords[k].div_rem(&other.coords[k]);
        if !r.is_zero() {
            return None;
        }
        if *self == other.scale(&q) {
            Some(q)
        } else {
            None
        }
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A square integer matrix of size n. Columns map basis expressions to
/// ambient coordinates: `from_columns(V)` sends e_j to V_j.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    n: usize,
    /// Row-major entries, length n².
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        Self { n, entries }
    }

    pub fn from_columns(cols: &[LatticeVector]) -> Self {
        let n = cols.len();
        let mut entries = vec![BigInt::zero(); n * n];
        for (j, col) in cols.iter().enumerate() {
            debug_assert_eq!(col.dim(), n);
            for i in 0..n {
                entries[i * n + j] = col.coord(i).clone();
            }
        }
        Self { n, entries }
    }

    pub fn from_rows(rows: &[LatticeVector]) -> Self {
        let n = rows.len();
        let mut entries = vec![BigInt::zero(); n * n];
        for (i, row) in rows.iter().enumerate() {
            debug_assert_eq!(row.dim(), n);
            for j in 0..n {
                entries[i * n + j] = row.coord(j).clone();
            }
        }
        Self { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j].clone();
            }
        }
        Self { n, entries }
    }

    pub fn column(&self, j: usize) -> LatticeVector {
        LatticeVector::new((0..self.n).map(|i| self.entry(i, j).clone()).collect())
    }

    pub fn mul_vec(&self, x: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(x.dim(), self.n);
        LatticeVector::new(
            (0..self.n)
                .map(|i| (0..self.n).map(|j| self.entry(i, j) * x.coord(j)).sum())
                .collect(),
        )
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut sign = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, p);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    // Bareiss: the division by the previous pivot is exact.
                    m[i][j] = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if sign {
            -det
        } else {
            det
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    fn with_column(&self, j: usize, b: &LatticeVector) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out.entries[i * self.n + j] = b.coord(i).clone();
        }
        out
    }

    /// The unique integer solution x of M·x = b when |det M| = 1, by Cramer's
    /// rule with exact determinants (1/det = det for det = ±1).
    pub fn solve_unimodular(&self, b: &LatticeVector) -> Result<LatticeVector> {
        if b.dim() != self.n {
            return Err(ToricError::DimensionMismatch {
                expected: self.n,
                got: b.dim(),
            });
        }
        let det = self.determinant();
        if !det.abs().is_one() {
            return Err(ToricError::NotUnimodular(det));
        }
        let x = LatticeVector::new(
            (0..self.n)
                .map(|j| self.with_column(j, b).determinant() * &det)
                .collect(),
        );
        debug_assert_eq!(self.mul_vec(&x), *b);
        Ok(x)
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        write!(f, "[")?;
        for i in 0..n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// The dual basis U of a unimodular family V: ⟨U_i, V_j⟩ = δ_ij.
///
/// Each U_i solves Vᵀ·U_i = e_i; everything stays in exact integers because
/// |det V| = 1 (the inverse-transpose is the adjugate up to the sign of det).
pub fn dual_basis(vectors: &[LatticeVector]) -> Result<Vec<LatticeVector>> {
    let n = vectors.len();
    for v in vectors {
        if v.dim() != n {
            return Err(ToricError::DimensionMismatch {
                expected: n,
                got: v.dim(),
            });
        }
    }
    let mt = IntegerMatrix::from_columns(vectors).transpose();
    (0..n)
        .map(|i| mt.solve_unimodular(&LatticeVector::unit(n, i)))
        .collect()
}
