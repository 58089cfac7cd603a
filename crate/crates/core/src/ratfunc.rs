//! Univariate rational functions in canonical form: monic denominator,
//! gcd(numerator, denominator) = 1, so equality is structural.

use std::fmt;

use crate::poly::UniPoly;
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: UniPoly, den: UniPoly) -> Self {
        if num.is_zero() {
            return RatFunc {
                num,
                den: UniPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() > Some(0) {
            (num.divrem(&g).0, den.divrem(&g).0)
        } else {
            (num, den)
        };
        let lead_inv = den.leading().unwrap().recip().unwrap();
        RatFunc {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }

    pub fn var() -> Self {
        Self::from_poly(UniPoly::var())
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree() <= Some(0) && self.den.degree() == Some(0)
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        Self::reduced(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        Self::reduced(
            self.num.mul(&o.den).sub(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        Self::reduced(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(self.num.mul(&o.den), self.den.mul(&o.num)))
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        let mut acc = RatFunc::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluation; `None` at a genuine pole (canonical form rules out 0/0).
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(t) / d)
    }

    /// Order `k` and leading value `c` at `t0`: `f(t) = c (t-t0)^k (1 + O(t-t0))`.
    /// Negative orders are poles. Errors on the identically-zero function.
    pub fn valuation_at(&self, t0: &Rational) -> Result<(i64, Rational)> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let mut num = self.num.clone();
        let mut num_ord = 0i64;
        loop {
            let (q, r) = num.deflate(t0);
            if !r.is_zero() {
                break;
            }
            num = q;
            num_ord += 1;
        }
        let mut den = self.den.clone();
        let mut den_ord = 0i64;
        loop {
            let (q, r) = den.deflate(t0);
            if !r.is_zero() {
                break;
            }
            den = q;
            den_ord += 1;
        }
        let lead = num.eval(t0) / den.eval(t0);
        Ok((num_ord - den_ord, lead))
    }

    pub fn display(&self, var: &str) -> String {
        if self.den.degree() == Some(0) {
            return self.num.display(var);
        }
        let num = self.num.display(var);
        let den = self.den.display(var);
        format!("({num}) / ({den})")
    }
}

impl fmt::Debug for RatFunc {
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

    fn poly(cs: &[(i64, i64)]) -> UniPoly {
        UniPoly::from_coeffs(cs.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn canonical_reduction() {
        // (2x^2 - 2) / (4x + 4) = (x - 1) / 2
        let f = RatFunc::new(poly(&[(-2, 1), (0, 1), (2, 1)]), poly(&[(4, 1), (4, 1)])).unwrap();
        assert_eq!(f.numerator(), &poly(&[(-1, 2), (1, 2)]));
        assert_eq!(f.denominator(), &UniPoly::one());
    }

    #[test]
    fn valuation_examples() {
        // 3/t at t0 = 0 -> (-1, 3)
        let f = RatFunc::new(poly(&[(3, 1)]), UniPoly::var()).unwrap();
        assert_eq!(f.valuation_at(&q(0, 1)).unwrap(), (-1, q(3, 1)));

        // constant 5 at any point -> (0, 5)
        let g = RatFunc::constant(q(5, 1));
        assert_eq!(g.valuation_at(&q(7, 1)).unwrap(), (0, q(5, 1)));

        // 2*eps at eps0 = 0 -> (1, 2)
        let h = RatFunc::from_poly(poly(&[(0, 1), (2, 1)]));
        assert_eq!(h.valuation_at(&q(0, 1)).unwrap(), (1, q(2, 1)));

        assert_eq!(
            RatFunc::zero().valuation_at(&q(0, 1)),
            Err(Error::ZeroFunction)
        );
    }

    #[test]
    fn valuation_is_multiplicative() {
        let f = RatFunc::new(poly(&[(0, 1), (1, 1)]), poly(&[(1, 1), (1, 1)])).unwrap(); // t/(t+1)
        let g = RatFunc::new(poly(&[(0, 1), (0, 1), (3, 1)]), UniPoly::one()).unwrap(); // 3t^2
        let t0 = q(0, 1);
        let (of, lf) = f.valuation_at(&t0).unwrap();
        let (og, lg) = g.valuation_at(&t0).unwrap();
        let (ofg, lfg) = f.mul(&g).valuation_at(&t0).unwrap();
        assert_eq!(ofg, of + og);
        assert_eq!(lfg, lf * lg);
    }

    #[test]
    fn eval_at_pole_is_none() {
        let f = RatFunc::new(UniPoly::one(), UniPoly::var()).unwrap();
        assert_eq!(f.eval(&q(0, 1)), None);
        assert_eq!(f.eval(&q(2, 1)), Some(q(1, 2)));
    }
}
