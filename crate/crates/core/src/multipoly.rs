//! Sparse multivariate polynomials over [`Rational`] with exact partial
//! derivatives and the ray integration used to rebuild a potential from
//! its Hessian.

use std::collections::BTreeMap;
use std::fmt;

use crate::rational::Rational;

/// Terms keyed by exponent vectors of a fixed arity.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    n_vars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(n_vars: usize) -> Self {
        MultiPoly {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(n_vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; n_vars], c);
        }
        p
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[i] = 1;
        let mut p = Self::zero(n_vars);
        p.terms.insert(e, Rational::one());
        p
    }

    pub fn monomial(n_vars: usize, exponents: &[u32], coeff: Rational) -> Self {
        assert_eq!(exponents.len(), n_vars);
        let mut p = Self::zero(n_vars);
        if !coeff.is_zero() {
            p.terms.insert(exponents.to_vec(), coeff);
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    fn insert(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n_vars, other.n_vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> MultiPoly {
        if k.is_zero() {
            return Self::zero(self.n_vars);
        }
        MultiPoly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n_vars, other.n_vars);
        let mut out = Self::zero(self.n_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert(e, ca * cb);
            }
        }
        out
    }

    pub fn partial(&self, i: usize) -> MultiPoly {
        let mut out = Self::zero(self.n_vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.insert(e2, c * &Rational::from_int(e[i] as i64));
        }
        out
    }

    pub fn eval(&self, u: &[Rational]) -> Rational {
        assert_eq!(u.len(), self.n_vars);
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in u.iter().zip(e) {
                for _ in 0..k {
                    term = term * x;
                }
            }
            acc += &term;
        }
        acc
    }

    pub fn eval_f64(&self, u: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut term = c.to_f64();
            for (x, &k) in u.iter().zip(e) {
                term *= x.powi(k as i32);
            }
            acc += term;
        }
        acc
    }

    /// Homotopy integration step: maps each monomial `c·u^E` to
    /// `c/(|E|+1) · u^{E+e_j}`, i.e. `∫₀¹ p(t·u) dt` multiplied by `u^j`.
    /// Summing over rows reconstructs a gradient from a closed Hessian and
    /// a potential from a gradient, with value and gradient vanishing at
    /// the origin.
    pub fn ray_integrate(&self, j: usize) -> MultiPoly {
        let mut out = Self::zero(self.n_vars);
        for (e, c) in &self.terms {
            let total: u32 = e.iter().sum();
            let mut e2 = e.clone();
            e2[j] += 1;
            out.insert(e2, c / &Rational::from_int(total as i64 + 1));
        }
        out
    }

    /// Deterministic text form like `u1^2*u2`, used as a JSON key.
    pub fn monomial_key(exponents: &[u32]) -> String {
        let parts: Vec<String> = exponents
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| {
                if k == 1 {
                    format!("u{}", i + 1)
                } else {
                    format!("u{}^{}", i + 1, k)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let key = MultiPoly::monomial_key(e);
            if key == "1" {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{key}")?;
            } else {
                write!(f, "{mag}*{key}")?;
            }
        }
        Ok(())
    }
}
