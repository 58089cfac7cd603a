//! Small dense rational tensors: the rank-(1,2) structure constants
//! `c^i_{jk}`, their first derivatives `d[m][i][j][k] = ∂_m c^i_{jk}`, and
//! fully symmetric rank-3 arrays for potential third derivatives.

use crate::rational::Rational;

/// `c^i_{jk}` with index order `[i][j][k]`; symmetric in `(j, k)` for the
/// products built here, but stored dense.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor3 {
    n: usize,
    data: Vec<Rational>,
}

impl Tensor3 {
    pub fn zeros(n: usize) -> Self {
        Tensor3 {
            n,
            data: vec![Rational::zero(); n * n * n],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize) -> Rational) -> Self {
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    *t.get_mut(i, j, k) = f(i, j, k);
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.data[(i * self.n + j) * self.n + k]
    }

    pub fn get_mut(&mut self, i: usize, j: usize, k: usize) -> &mut Rational {
        &mut self.data[(i * self.n + j) * self.n + k]
    }

    pub fn is_symmetric_last_two(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| (0..j).all(|k| self.get(i, j, k) == self.get(i, k, j))))
    }
}

/// Fully symmetric rank-3 array such as `∂³F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTensor3(Tensor3);

impl SymTensor3 {
    /// Builds from a generator that is only consulted for `i <= j <= k`;
    /// all permutations share the value by construction.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize) -> Rational) -> Self {
        let mut t = Tensor3::zeros(n);
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let v = f(i, j, k);
                    for (a, b, c) in [
                        (i, j, k),
                        (i, k, j),
                        (j, i, k),
                        (j, k, i),
                        (k, i, j),
                        (k, j, i),
                    ] {
                        *t.get_mut(a, b, c) = v.clone();
                    }
                }
            }
        }
        SymTensor3(t)
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        self.0.get(i, j, k)
    }

    pub fn is_fully_symmetric(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.get(i, j, k) != self.get(j, i, k) || self.get(i, j, k) != self.get(i, k, j) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// `∂_m c^i_{jk}` with index order `[m][i][j][k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor4 {
    n: usize,
    data: Vec<Rational>,
}

impl Tensor4 {
    pub fn zeros(n: usize) -> Self {
        Tensor4 {
            n,
            data: vec![Rational::zero(); n * n * n * n],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize, usize) -> Rational) -> Self {
        let mut t = Self::zeros(n);
        for m in 0..n {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        *t.get_mut(m, i, j, k) = f(m, i, j, k);
                    }
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, m: usize, i: usize, j: usize, k: usize) -> &Rational {
        &self.data[((m * self.n + i) * self.n + j) * self.n + k]
    }

    pub fn get_mut(&mut self, m: usize, i: usize, j: usize, k: usize) -> &mut Rational {
        &mut self.data[((m * self.n + i) * self.n + j) * self.n + k]
    }
}
