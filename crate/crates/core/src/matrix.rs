//! Dense exact vectors and matrices over [`Rational`].
//!
//! Inversion, determinant and rank go through fraction-free (Bareiss)
//! elimination on a row-scaled integer matrix, which keeps intermediate
//! entries polynomially bounded. Reduced row echelon form is computed in
//! plain rational arithmetic and is used as a canonical key for row
//! spaces.

use std::fmt;
use std::ops::{Index, IndexMut};

use num::bigint::BigInt;
use num::{Integer, One, Zero};

use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(pub Vec<Rational>);

impl Vector {
    pub fn zeros(n: usize) -> Self {
        Vector(vec![Rational::zero(); n])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Vector(v.iter().map(|&n| Rational::from_int(n)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn dot(&self, other: &Vector) -> Rational {
        assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, c: &Rational) -> Vector {
        Vector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.len(), other.len());
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        assert_eq!(self.len(), other.len());
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(Rational::to_f64).collect()
    }
}

impl Index<usize> for Vector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| Rational::from_int(n)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vector {
        Vector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn col(&self, j: usize) -> Vector {
        Vector((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| &self[(i, k)] * &other[(k, j)]).sum()
        })
    }

    pub fn mul_vec(&self, v: &Vector) -> Vector {
        assert_eq!(self.cols, v.len());
        Vector(
            (0..self.rows)
                .map(|i| (0..self.cols).map(|k| &self[(i, k)] * &v[k]).sum())
                .collect(),
        )
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let (scaled, denom) = self.scaled_integer_rows();
        let fwd = bareiss_forward(scaled, self.cols);
        if fwd.rank < self.rows {
            return Rational::zero();
        }
        let last = fwd.mat[(self.rows - 1) * fwd.width + self.rows - 1].clone();
        let signed = if fwd.sign < 0 { -last } else { last };
        Rational::try_new(signed, denom).unwrap()
    }

    pub fn rank(&self) -> usize {
        let (scaled, _) = self.scaled_integer_rows();
        bareiss_forward(scaled, self.cols).rank
    }

    /// Exact inverse via fraction-free elimination; `M * M^-1 = Id` exactly.
    pub fn inverse(&self) -> Result<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        // Row-scale to integers and augment with the scaling diagonal:
        // solving (L M) X = L yields X = M^-1.
        let mut aug: Vec<BigInt> = Vec::with_capacity(n * 2 * n);
        for i in 0..n {
            let mut l = BigInt::one();
            for j in 0..n {
                l = l.lcm(self[(i, j)].denom());
            }
            for j in 0..n {
                let e = &self[(i, j)];
                aug.push(e.numer() * (&l / e.denom()));
            }
            for j in 0..n {
                aug.push(if i == j { l.clone() } else { BigInt::zero() });
            }
        }
        let fwd = bareiss_forward_limited(aug, 2 * n, n);
        if fwd.rank < n {
            return Err(Error::Singular { rank: fwd.rank });
        }
        // Rational back-substitution on the upper-triangular system.
        let at = |r: usize, c: usize| {
            Rational::try_new(fwd.mat[r * fwd.width + c].clone(), BigInt::one()).unwrap()
        };
        let mut inv = Matrix::zeros(n, n);
        for col in 0..n {
            for i in (0..n).rev() {
                let mut acc = at(i, n + col);
                for j in i + 1..n {
                    acc = acc - &at(i, j) * &inv[(j, col)];
                }
                inv[(i, col)] = acc / at(i, i);
            }
        }
        Ok(inv)
    }

    /// Reduced row echelon form together with the rank and pivot columns.
    /// Zero rows are moved to the bottom; the result is the canonical
    /// representative of the row space.
    pub fn rref(&self) -> (Matrix, usize, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip().unwrap();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let delta = &f * &m[(r, j)];
                        m[(i, j)] -= &delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, r, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Clears denominators row by row; returns the integer entries and the
    /// product of the row scalings (for determinant correction).
    fn scaled_integer_rows(&self) -> (Vec<BigInt>, BigInt) {
        let mut out = Vec::with_capacity(self.rows * self.cols);
        let mut denom = BigInt::one();
        for i in 0..self.rows {
            let mut l = BigInt::one();
            for j in 0..self.cols {
                l = l.lcm(self[(i, j)].denom());
            }
            for j in 0..self.cols {
                let e = &self[(i, j)];
                out.push(e.numer() * (&l / e.denom()));
            }
            denom *= l;
        }
        (out, denom)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

struct BareissResult {
    mat: Vec<BigInt>,
    width: usize,
    rank: usize,
    sign: i32,
}

fn bareiss_forward(mat: Vec<BigInt>, width: usize) -> BareissResult {
    bareiss_forward_limited(mat, width, width)
}

/// One-step fraction-free forward elimination with row pivoting and column
/// skipping. Divisions by the previous pivot are exact. Pivots are only
/// taken from the first `pivot_cols` columns, so augmented right-hand-side
/// blocks never contribute to the rank.
fn bareiss_forward_limited(mut mat: Vec<BigInt>, width: usize, pivot_cols: usize) -> BareissResult {
    let rows = if width == 0 { 0 } else { mat.len() / width };
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut sign = 1;
    for col in 0..pivot_cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !mat[i * width + col].is_zero()) else {
            continue;
        };
        if p != rank {
            for j in 0..width {
                mat.swap(rank * width + j, p * width + j);
            }
            sign = -sign;
        }
        let pivot = mat[rank * width + col].clone();
        for i in rank + 1..rows {
            let head = mat[i * width + col].clone();
            for j in 0..width {
                if j == col {
                    continue;
                }
                let v = &pivot * &mat[i * width + j] - &head * &mat[rank * width + j];
                let (q, r) = v.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                mat[i * width + j] = q;
            }
            mat[i * width + col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    BareissResult {
        mat,
        width,
        rank,
        sign,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn identity_inverse() {
        let id = Matrix::identity(3);
        assert_eq!(id.inverse().unwrap(), id);
    }

    /// Brute-force adjugate inverse, kept independent of the elimination path.
    fn cofactor_inverse(m: &Matrix) -> Option<Matrix> {
        fn det_rec(m: &Matrix) -> Rational {
            let n = m.rows();
            if n == 0 {
                return Rational::one();
            }
            if n == 1 {
                return m[(0, 0)].clone();
            }
            let mut acc = Rational::zero();
            for j in 0..n {
                let minor = Matrix::from_fn(n - 1, n - 1, |r, c| {
                    m[(r + 1, if c < j { c } else { c + 1 })].clone()
                });
                let term = &m[(0, j)] * &det_rec(&minor);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
        let n = m.rows();
        let d = det_rec(m);
        if d.is_zero() {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| {
            let minor = Matrix::from_fn(n - 1, n - 1, |r, c| {
                m[(
                    if r < j { r } else { r + 1 },
                    if c < i { c } else { c + 1 },
                )]
                .clone()
            });
            let sign = if (i + j) % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            sign * det_rec(&minor) / d.clone()
        }))
    }

    #[test]
    fn inverse_of_one_plus_ones() {
        let m = Matrix::from_int_rows(&[&[2, 1, 1], &[1, 2, 1], &[1, 1, 2]]);
        let inv = m.inverse().unwrap();
        let expected = Matrix::from_rows(vec![
            vec![q(3, 4), q(-1, 4), q(-1, 4)],
            vec![q(-1, 4), q(3, 4), q(-1, 4)],
            vec![q(-1, 4), q(-1, 4), q(3, 4)],
        ]);
        assert_eq!(inv, expected);
        assert_eq!(inv, cofactor_inverse(&m).unwrap());
        assert_eq!(m.mul(&inv), Matrix::identity(3));
    }

    #[test]
    fn singular_reports_rank() {
        let z = Matrix::zeros(2, 2);
        assert_eq!(z.inverse(), Err(Error::Singular { rank: 0 }));
        let m = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.inverse(), Err(Error::Singular { rank: 1 }));
        assert_eq!(m.rank(), 1);
        assert_eq!(m.det(), Rational::zero());
    }

    #[test]
    fn rref_is_canonical() {
        let a = Matrix::from_int_rows(&[&[2, 4, 0], &[1, 1, 1]]);
        let b = Matrix::from_int_rows(&[&[1, 2, 0], &[3, 4, 2]]);
        // same row space, different presentations
        let (ra, rank_a, _) = a.rref();
        let (rb, rank_b, _) = b.rref();
        assert_eq!(rank_a, 2);
        assert_eq!(rank_b, 2);
        assert_eq!(ra, rb);
    }

    #[test]
    fn det_matches_cofactor_on_rationals() {
        let m = Matrix::from_rows(vec![
            vec![q(1, 2), q(3, 1), q(0, 1)],
            vec![q(-2, 3), q(1, 1), q(5, 2)],
            vec![q(0, 1), q(7, 4), q(1, 3)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
        assert_eq!(inv, cofactor_inverse(&m).unwrap());
    }
}
