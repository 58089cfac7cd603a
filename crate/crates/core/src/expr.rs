//! A small exact expression language for parametric scalars (radicands,
//! path equations). Grammar:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := base ('^' nonneg-integer)?
//! base   := integer | parameter-name | '(' expr ')' | '-' base
//! ```
//!
//! Rational literals `p/q` come out of the division rule. Whitespace is
//! insignificant. Parameters are validated against a declared list so
//! typos surface at parse time with a position.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::ratfunc::RatFunc;
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Const(Rational),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn constant(c: Rational) -> Expr {
        Expr::Const(c)
    }

    pub fn int(n: i64) -> Expr {
        Expr::Const(Rational::from_int(n))
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    /// Parses `text`, accepting only the listed parameter names as symbols.
    pub fn parse(text: &str, params: &[String]) -> Result<Expr> {
        let mut p = Parser::new(text, params);
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(Error::Parse {
                pos: p.pos,
                msg: format!("unexpected `{}`", p.chars[p.pos]),
            });
        }
        Ok(e)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Const(_) => {}
            Expr::Var(v) => {
                out.insert(v.clone());
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Exact evaluation with every variable bound.
    pub fn eval(&self, vals: &BTreeMap<String, Rational>) -> Result<Rational> {
        match self {
            Expr::Const(c) => Ok(c.clone()),
            Expr::Var(v) => vals
                .get(v)
                .cloned()
                .ok_or_else(|| Error::UnboundParameter(v.clone())),
            Expr::Neg(a) => Ok(-a.eval(vals)?),
            Expr::Add(a, b) => Ok(a.eval(vals)? + b.eval(vals)?),
            Expr::Sub(a, b) => Ok(a.eval(vals)? - b.eval(vals)?),
            Expr::Mul(a, b) => Ok(a.eval(vals)? * b.eval(vals)?),
            Expr::Div(a, b) => {
                let d = b.eval(vals)?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(a.eval(vals)? / d)
            }
            Expr::Pow(a, e) => a.eval(vals)?.pow(*e as i32),
        }
    }

    /// Replaces every occurrence of `name` by `with`.
    pub fn substitute(&self, name: &str, with: &Expr) -> Expr {
        match self {
            Expr::Const(_) => self.clone(),
            Expr::Var(v) => {
                if v == name {
                    with.clone()
                } else {
                    self.clone()
                }
            }
            Expr::Neg(a) => Expr::Neg(Box::new(a.substitute(name, with))),
            Expr::Pow(a, e) => Expr::Pow(Box::new(a.substitute(name, with)), *e),
            Expr::Add(a, b) => Expr::Add(
                Box::new(a.substitute(name, with)),
                Box::new(b.substitute(name, with)),
            ),
            Expr::Sub(a, b) => Expr::Sub(
                Box::new(a.substitute(name, with)),
                Box::new(b.substitute(name, with)),
            ),
            Expr::Mul(a, b) => Expr::Mul(
                Box::new(a.substitute(name, with)),
                Box::new(b.substitute(name, with)),
            ),
            Expr::Div(a, b) => Expr::Div(
                Box::new(a.substitute(name, with)),
                Box::new(b.substitute(name, with)),
            ),
        }
    }

    /// Canonical univariate rational function in `var`. Errors if the
    /// expression mentions any other variable or divides by the zero
    /// function.
    pub fn to_ratfunc(&self, var: &str) -> Result<RatFunc> {
        match self {
            Expr::Const(c) => Ok(RatFunc::constant(c.clone())),
            Expr::Var(v) => {
                if v == var {
                    Ok(RatFunc::var())
                } else {
                    Err(Error::UnboundParameter(v.clone()))
                }
            }
            Expr::Neg(a) => Ok(a.to_ratfunc(var)?.neg()),
            Expr::Add(a, b) => Ok(a.to_ratfunc(var)?.add(&b.to_ratfunc(var)?)),
            Expr::Sub(a, b) => Ok(a.to_ratfunc(var)?.sub(&b.to_ratfunc(var)?)),
            Expr::Mul(a, b) => Ok(a.to_ratfunc(var)?.mul(&b.to_ratfunc(var)?)),
            Expr::Div(a, b) => a.to_ratfunc(var)?.div(&b.to_ratfunc(var)?),
            Expr::Pow(a, e) => Ok(a.to_ratfunc(var)?.pow(*e)),
        }
    }

    /// Exact value of a closed expression.
    pub fn to_rational(&self) -> Result<Rational> {
        self.eval(&BTreeMap::new())
    }

    /// Conservative bound on the degree of any variable in numerator or
    /// denominator once the expression is put over a common denominator.
    pub fn degree_bound(&self) -> u64 {
        match self {
            Expr::Const(_) => 0,
            Expr::Var(_) => 1,
            Expr::Neg(a) => a.degree_bound(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.degree_bound() + b.degree_bound()
            }
            Expr::Pow(a, e) => a.degree_bound() * (*e as u64),
        }
    }

    /// Exact equivalence as rational functions, decided by evaluation on a
    /// full grid exceeding the joint degree bound in every variable. Grids
    /// hitting a pole are shifted and retried; a nonzero difference cannot
    /// vanish on a complete grid of this size.
    pub fn equivalent(&self, other: &Expr) -> Result<bool> {
        let mut vars = self.free_vars();
        vars.extend(other.free_vars());
        let vars: Vec<String> = vars.into_iter().collect();
        if vars.is_empty() {
            return Ok(self.to_rational()? == other.to_rational()?);
        }
        let bound = (self.degree_bound() + other.degree_bound() + 1) as i64;
        'attempt: for shift in 0..64i64 {
            let base = 1 + shift * bound;
            let mut assignment = BTreeMap::new();
            let mut idx = vec![0i64; vars.len()];
            loop {
                for (v, k) in vars.iter().zip(&idx) {
                    assignment.insert(v.clone(), Rational::from_int(base + k));
                }
                let lhs = self.eval(&assignment);
                let rhs = other.eval(&assignment);
                match (lhs, rhs) {
                    (Ok(a), Ok(b)) => {
                        if a != b {
                            return Ok(false);
                        }
                    }
                    // A pole on the grid invalidates the counting argument;
                    // shift the whole grid and start over.
                    (Err(Error::DivisionByZero), _) | (_, Err(Error::DivisionByZero)) => {
                        continue 'attempt;
                    }
                    (Err(e), _) | (_, Err(e)) => return Err(e),
                }
                // advance the multi-index
                let mut i = 0;
                loop {
                    if i == idx.len() {
                        return Ok(true);
                    }
                    idx[i] += 1;
                    if idx[i] < bound {
                        break;
                    }
                    idx[i] = 0;
                    i += 1;
                }
            }
        }
        Err(Error::Invalid(
            "could not find a pole-free evaluation grid".into(),
        ))
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Const(_) | Expr::Var(_) => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        let parens = prec < min;
        if parens {
            write!(f, "(")?;
        }
        match self {
            Expr::Const(c) => {
                if c.is_negative() || !c.is_integer() {
                    write!(f, "({c})")?;
                } else {
                    write!(f, "{c}")?;
                }
            }
            Expr::Var(v) => write!(f, "{v}")?,
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.fmt_prec(f, 3)?;
            }
            Expr::Add(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 2)?;
            }
            Expr::Sub(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " - ")?;
                b.fmt_prec(f, 2)?;
            }
            Expr::Mul(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "*")?;
                b.fmt_prec(f, 3)?;
            }
            Expr::Div(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "/")?;
                b.fmt_prec(f, 3)?;
            }
            Expr::Pow(a, e) => {
                a.fmt_prec(f, 5)?;
                write!(f, "^{e}")?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses the univariate operation directly to a canonical rational
/// function; `params` may name at most one variable.
pub fn parse_scalar(text: &str, params: &[String]) -> Result<RatFunc> {
    let e = Expr::parse(text, params)?;
    let vars = e.free_vars();
    match vars.len() {
        0 => Ok(RatFunc::constant(e.to_rational()?)),
        1 => e.to_ratfunc(vars.iter().next().unwrap()),
        _ => Err(Error::Invalid(format!(
            "expression has {} free parameters; at most one allowed here",
            vars.len()
        ))),
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    params: &'a [String],
}

impl<'a> Parser<'a> {
    fn new(text: &str, params: &'a [String]) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            params,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.bump();
            let rhs = self.term()?;
            lhs = if op == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while let Some(op @ ('*' | '/')) = self.peek() {
            self.bump();
            let rhs = self.factor()?;
            lhs = if op == '*' {
                Expr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if self.peek() == Some('^') {
            self.bump();
            let pos = self.pos;
            let n = self.integer_literal()?;
            let e = u32::try_from(n).map_err(|_| Error::Parse {
                pos,
                msg: "exponent out of range".into(),
            })?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('-') => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.base()?)))
            }
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse {
                        pos: self.pos,
                        msg: "expected `)`".into(),
                    });
                }
                self.bump();
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer_literal()?;
                Ok(Expr::Const(Rational::from_int(n)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                let mut name = String::new();
                while let Some(&c) = self.chars.get(self.pos) {
                    if c.is_alphanumeric() || c == '_' {
                        name.push(c);
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                if !self.params.iter().any(|p| p == &name) {
                    return Err(Error::UnknownSymbol { name, pos: start });
                }
                Ok(Expr::Var(name))
            }
            Some(c) => Err(Error::Parse {
                pos: self.pos,
                msg: format!("unexpected `{c}`"),
            }),
            None => Err(Error::Parse {
                pos: self.pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }

    fn integer_literal(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse {
                pos: start,
                msg: "expected integer".into(),
            });
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: "integer out of range".into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::UniPoly;

    fn params(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn polynomial_expansion() {
        // "2*(2*t+1)" -> 4t + 2
        let f = parse_scalar("2*(2*t+1)", &params(&["t"])).unwrap();
        let expected = RatFunc::from_poly(UniPoly::from_coeffs(vec![
            Rational::from_int(2),
            Rational::from_int(4),
        ]));
        assert_eq!(f, expected);
    }

    #[test]
    fn rational_function_value() {
        let f = parse_scalar("3/t", &params(&["t"])).unwrap();
        assert_eq!(f.eval(&Rational::from_int(2)), Some(Rational::ratio(3, 2)));
        assert_eq!(f.eval(&Rational::zero()), None);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(parse_scalar("1/0", &[]), Err(Error::DivisionByZero));
        // zero *polynomial* denominator
        assert_eq!(
            parse_scalar("1/(t - t)", &params(&["t"])),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn errors_carry_positions() {
        match Expr::parse("2*(t+", &params(&["t"])) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
        match Expr::parse("2*s", &params(&["t"])) {
            Err(Error::UnknownSymbol { name, pos }) => {
                assert_eq!(name, "s");
                assert_eq!(pos, 2);
            }
            other => panic!("expected unknown symbol, got {other:?}"),
        }
    }

    #[test]
    fn display_parse_round_trip() {
        let ps = params(&["t", "s"]);
        for text in ["2*(t+s-1)", "3/t^2 - (1-s)/(2*t)", "-(t - 2/3)^3"] {
            let e = Expr::parse(text, &ps).unwrap();
            let back = Expr::parse(&e.to_string(), &ps).unwrap();
            assert!(e.equivalent(&back).unwrap(), "{text}");
        }
    }

    #[test]
    fn equivalence_grid_test() {
        let ps = params(&["t", "s"]);
        let a = Expr::parse("(t+s)^2", &ps).unwrap();
        let b = Expr::parse("t^2 + 2*t*s + s^2", &ps).unwrap();
        assert!(a.equivalent(&b).unwrap());
        let c = Expr::parse("t^2 + 2*t*s - s^2", &ps).unwrap();
        assert!(!a.equivalent(&c).unwrap());
        // denominators that exclude parts of the naive grid still decide
        let d = Expr::parse("(t-1)/(t-2)", &params(&["t"])).unwrap();
        let e = Expr::parse("1 + 1/(t-2)", &params(&["t"])).unwrap();
        assert!(d.equivalent(&e).unwrap());
    }

    #[test]
    fn substitution() {
        let ps = params(&["t", "s"]);
        let e = Expr::parse("2*(t+s+1)", &ps).unwrap();
        let path = Expr::parse("-t-1", &params(&["t"])).unwrap();
        let sub = e.substitute("s", &path);
        assert!(sub.equivalent(&Expr::int(0)).unwrap());
    }
}
