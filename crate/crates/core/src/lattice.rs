//! Small dense integer matrices and integer lattices in Hermite normal form.
//!
//! Lattices are stored as a row-echelon basis with positive pivots and every
//! entry above a pivot reduced into `[0, pivot)`. That basis is unique for a
//! given sublattice, so structural equality of [`Lattice`] values is equality
//! of sublattices, and [`Lattice::reduce`] picks a unique coset representative.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from its rows. All rows must have the same length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(Self { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "matrix/vector dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert!(self.rows == other.rows && self.cols == other.cols);
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// Non-negative power by repeated squaring.
    pub fn pow(&self, mut e: u64) -> IntMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> i128 {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> =
            (0..n).map(|i| self.row(i).iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }

    /// Inverse of a unimodular matrix (determinant ±1), via the adjugate.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let det = self.determinant();
        if det != 1 && det != -1 {
            return Err(Error::NonUnimodularAction { determinant: det });
        }
        let n = self.rows;
        let mut inv = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(j, i);
                let cof = if (i + j) % 2 == 0 { minor.determinant() } else { -minor.determinant() };
                inv[(i, j)] = (cof * det) as i64;
            }
        }
        Ok(inv)
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> IntMatrix {
        let n = self.rows;
        let mut data = Vec::with_capacity((n - 1) * (n - 1));
        for i in (0..n).filter(|&i| i != skip_row) {
            for j in (0..n).filter(|&j| j != skip_col) {
                data.push(self[(i, j)]);
            }
        }
        IntMatrix { rows: n - 1, cols: n - 1, data }
    }
}

impl core::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// A sublattice of `Z^dim`, held as its Hermite normal form basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Self { dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| {
                let mut e = vec![0; dim];
                e[i] = 1;
                e
            })
            .collect();
        Self { dim, basis, pivots: (0..dim).collect() }
    }

    /// Sublattice spanned by `generators`, each of length `dim`.
    pub fn from_generators<G: AsRef<[i64]>>(dim: usize, generators: &[G]) -> Result<Self> {
        let mut rows = Vec::with_capacity(generators.len());
        for g in generators {
            let g = g.as_ref();
            if g.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: g.len() });
            }
            if g.iter().any(|&x| x != 0) {
                rows.push(g.to_vec());
            }
        }
        Ok(Self::hermite(dim, rows))
    }

    fn hermite(dim: usize, mut rows: Vec<Vec<i64>>) -> Self {
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..dim {
            // Euclid on column `col` among rows[top..] until one nonzero remains.
            loop {
                let mut best: Option<usize> = None;
                for i in top..rows.len() {
                    if rows[i][col] != 0
                        && best.is_none_or(|b| rows[i][col].abs() < rows[b][col].abs())
                    {
                        best = Some(i);
                    }
                }
                let Some(b) = best else { break };
                rows.swap(top, b);
                let mut done = true;
                for i in top + 1..rows.len() {
                    let x = rows[i][col];
                    if x != 0 {
                        let q = x.div_euclid(rows[top][col]);
                        let (head, tail) = rows.split_at_mut(i);
                        for (a, p) in tail[0].iter_mut().zip(&head[top]) {
                            *a -= q * p;
                        }
                        if tail[0][col] != 0 {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if top < rows.len() && rows[top][col] != 0 {
                if rows[top][col] < 0 {
                    rows[top].iter_mut().for_each(|x| *x = -*x);
                }
                pivots.push(col);
                top += 1;
            }
        }
        rows.truncate(top);
        for k in 0..rows.len() {
            let p = pivots[k];
            let pivot = rows[k][p];
            for i in 0..k {
                let q = rows[i][p].div_euclid(pivot);
                if q != 0 {
                    let (head, tail) = rows.split_at_mut(k);
                    for (a, b) in head[i].iter_mut().zip(&tail[0]) {
                        *a -= q * b;
                    }
                }
            }
        }
        Self { dim, basis: rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// HNF basis rows.
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Replaces `v` by its canonical representative modulo the lattice: every
    /// pivot coordinate lands in `[0, pivot)`.
    pub fn reduce(&self, v: &mut [i64]) {
        debug_assert_eq!(v.len(), self.dim);
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let q = v[p].div_euclid(row[p]);
            if q != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= q * r;
                }
            }
        }
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        let rows = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::hermite(self.dim, rows)
    }

    /// Image of the lattice under `map` (a `k × dim` matrix), as a sublattice of `Z^k`.
    pub fn image(&self, map: &IntMatrix) -> Lattice {
        assert_eq!(map.cols(), self.dim);
        let rows = self.basis.iter().map(|b| map.mul_vec(b)).filter(|r| r.iter().any(|&x| x != 0));
        Self::hermite(map.rows(), rows.collect())
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice<{}>", self.dim)?;
        f.debug_list().entries(&self.basis).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_is_canonical() {
        let a = Lattice::from_generators(2, &[[2, -2]]).unwrap();
        let b = Lattice::from_generators(2, &[[-4, 4], [6, -6]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.basis(), &[vec![2, -2]]);
    }

    #[test]
    fn hermite_full_rank() {
        let l = Lattice::from_generators(2, &[[3, 1], [1, 2]]).unwrap();
        // determinant 5, so index 5
        assert_eq!(l.basis(), &[vec![1, 2], vec![0, 5]]);
        assert!(l.contains(&[3, 1]));
        assert!(!l.contains(&[0, 1]));
    }

    #[test]
    fn reduce_against_diagonal() {
        let l = Lattice::from_generators(2, &[[2, -2]]).unwrap();
        let mut v = [3, -1];
        l.reduce(&mut v);
        assert_eq!(v, [1, 1]);
        let mut w = [-5, 0];
        l.reduce(&mut w);
        assert_eq!(w, [1, -6]);
    }

    #[test]
    fn determinants_and_inverses() {
        let swap = IntMatrix::from_rows(&[[0, 1], [1, 0]]).unwrap();
        assert_eq!(swap.determinant(), -1);
        assert_eq!(swap.unimodular_inverse().unwrap(), swap);
        let m = IntMatrix::from_rows(&[[2, 1, 0], [1, 1, 0], [0, 0, -1]]).unwrap();
        let inv = m.unimodular_inverse().unwrap();
        assert_eq!(m.mul(&inv), IntMatrix::identity(3));
        let bad = IntMatrix::from_rows(&[[2, 0], [0, 1]]).unwrap();
        assert!(matches!(bad.unimodular_inverse(), Err(Error::NonUnimodularAction { determinant: 2 })));
        assert_eq!(IntMatrix::from_rows(&[[1, 2], [2, 4]]).unwrap().determinant(), 0);
    }

    #[test]
    fn image_and_sum() {
        let l = Lattice::from_generators(2, &[[1, -1]]).unwrap();
        let sum_map = IntMatrix::from_rows(&[[1, 1]]).unwrap();
        assert!(l.image(&sum_map).is_zero());
        let m = Lattice::from_generators(2, &[[0, 2]]).unwrap();
        assert_eq!(l.sum(&m), Lattice::from_generators(2, &[[1, 1], [0, 2]]).unwrap());
    }
}
