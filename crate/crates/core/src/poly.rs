//! Dense univariate polynomials over [`Rational`].

use std::fmt;

use crate::rational::Rational;

/// Coefficients by ascending degree; the last entry is nonzero (empty = zero).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `x`.
    pub fn var() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| Rational::from_int(k as i64) * c)
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
            coeffs.push(a + b);
        }
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, div: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!div.is_zero(), "polynomial division by zero");
        let dd = div.degree().unwrap();
        let lead_inv = div.leading().unwrap().recip().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let q = rem.last().unwrap() * &lead_inv;
            if !q.is_zero() {
                for (j, b) in div.coeffs.iter().enumerate() {
                    let delta = &q * b;
                    rem[k + j] -= &delta;
                }
                quot[k] = q;
            }
            while rem.last().is_some_and(Rational::is_zero) && rem.len() > dd {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Monic gcd via the Euclidean algorithm. gcd(0, 0) = 0.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.into_monic()
    }

    pub fn into_monic(self) -> UniPoly {
        match self.leading() {
            None => self,
            Some(l) if l.is_one() => self,
            Some(l) => {
                let inv = l.recip().unwrap();
                self.scale(&inv)
            }
        }
    }

    /// Multiplicity of `t0` as a root (0 when not a root or for zero input).
    pub fn root_multiplicity(&self, t0: &Rational) -> usize {
        if self.is_zero() {
            return 0;
        }
        let mut p = self.clone();
        let mut mult = 0;
        loop {
            let (q, r) = p.deflate(t0);
            if !r.is_zero() {
                return mult;
            }
            mult += 1;
            p = q;
            if p.is_zero() {
                return mult;
            }
        }
    }

    /// Synthetic division by `(x - t0)`: returns (quotient, remainder value).
    pub fn deflate(&self, t0: &Rational) -> (UniPoly, Rational) {
        if self.is_zero() {
            return (UniPoly::zero(), Rational::zero());
        }
        let mut quot = vec![Rational::zero(); self.coeffs.len() - 1];
        let mut carry = Rational::zero();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            let v = c + &(&carry * t0);
            if i == 0 {
                return (UniPoly::from_coeffs(quot), v);
            }
            quot[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Renders with the given variable name, e.g. `2*t^2 - 1/2*t + 3`.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let lead = out.is_empty();
            if c.is_negative() {
                out.push_str(if lead { "-" } else { " - " });
            } else if !lead {
                out.push_str(" + ");
            }
            let mag = c.abs();
            if k == 0 {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&format!("{mag}*"));
                }
                out.push_str(var);
                if k > 1 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
        out
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn mul_and_divrem() {
        // (x + 1)(x - 2) = x^2 - x - 2
        let a = UniPoly::from_coeffs(vec![q(1, 1), q(1, 1)]);
        let b = UniPoly::from_coeffs(vec![q(-2, 1), q(1, 1)]);
        let p = a.mul(&b);
        assert_eq!(p.coeffs(), &[q(-2, 1), q(-1, 1), q(1, 1)]);
        let (quot, rem) = p.divrem(&a);
        assert_eq!(quot, b);
        assert!(rem.is_zero());
    }

    #[test]
    fn gcd_is_monic() {
        // gcd(2x^2 - 2, 4x + 4) = x + 1
        let a = UniPoly::from_coeffs(vec![q(-2, 1), q(0, 1), q(2, 1)]);
        let b = UniPoly::from_coeffs(vec![q(4, 1), q(4, 1)]);
        let g = a.gcd(&b);
        assert_eq!(g.coeffs(), &[q(1, 1), q(1, 1)]);
    }

    #[test]
    fn root_multiplicity_counts() {
        // (x-1)^2 (x+2)
        let f = UniPoly::from_coeffs(vec![q(2, 1), q(-3, 1), q(0, 1), q(1, 1)]);
        assert_eq!(f.root_multiplicity(&q(1, 1)), 2);
        assert_eq!(f.root_multiplicity(&q(-2, 1)), 1);
        assert_eq!(f.root_multiplicity(&q(5, 1)), 0);
    }
}
