//! Builtin covector systems: classical positive root systems and two
//! parametric families attached to the Lie superalgebras D(2,1,λ) and
//! G(1,2). Directions are canonicalized to primitive integer vectors with
//! positive leading entry; any scalar factor moves into the radicand.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::expr::Expr;
use crate::matrix::Vector;
use crate::rational::Rational;
use crate::vee::{CovectorSystem, ScaledCovector};
use crate::{Error, Result};

/// Canonicalizes `√r·v`: the direction becomes integer with gcd 1 and a
/// positive first nonzero entry, the radicand absorbs the square of the
/// extracted factor.
pub fn canonicalize(radicand: Expr, direction: Vector) -> (Expr, Vector) {
    assert!(!direction.is_zero(), "zero direction cannot be canonicalized");
    let mut den = BigInt::one();
    for c in direction.iter() {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = direction
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    let mut g = BigInt::zero();
    for z in &ints {
        g = g.gcd(z);
    }
    let sign = ints
        .iter()
        .find(|z| !z.is_zero())
        .map(|z| if z.is_negative() { -1 } else { 1 })
        .unwrap_or(1);
    let g = if sign < 0 { -g } else { g };
    // v = (g/den) * v_primitive, so r scales by (g/den)^2
    let factor = Rational::try_new(&g * &g, &den * &den).unwrap();
    let canon = Vector(
        ints.iter()
            .map(|z| Rational::try_new(z / &g, BigInt::one()).unwrap())
            .collect(),
    );
    let radicand = match radicand {
        Expr::Const(c) => Expr::Const(c * factor),
        other => Expr::Mul(Box::new(Expr::Const(factor)), Box::new(other)),
    };
    (radicand, canon)
}

fn unit_covector(label: &str, dirs: &[i64]) -> ScaledCovector {
    ScaledCovector {
        label: label.to_string(),
        radicand: Expr::int(1),
        direction: Vector::from_ints(dirs),
    }
}

fn covector(label: &str, radicand: Expr, dirs: &[i64]) -> ScaledCovector {
    let (radicand, direction) = canonicalize(radicand, Vector::from_ints(dirs));
    ScaledCovector {
        label: label.to_string(),
        radicand,
        direction,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootFamily {
    A,
    B,
    D,
    G,
}

/// Positive roots with radicand 1. `A_n` and `G_2` are realized inside the
/// sum-zero hyperplane of one extra coordinate, so directions stay rational
/// in dimension `n`: a covector `Σ a_i e_i` on the hyperplane
/// `u_{n+1} = -(u_1+…+u_n)` restricts to `(a_1 - a_{n+1}, …)`.
pub fn root_system(family: RootFamily, rank: usize) -> Result<CovectorSystem> {
    let bad = |msg: &str| Error::Invalid(format!("root system {family:?}{rank}: {msg}"));
    if rank == 0 || rank > 8 {
        return Err(bad("rank must be between 1 and 8"));
    }
    let mut covs = Vec::new();
    match family {
        RootFamily::A => {
            // e_i - e_j (i < j <= rank+1) restricted to the sum-zero hyperplane
            for i in 0..=rank {
                for j in i + 1..=rank {
                    let mut d = vec![0i64; rank];
                    if j < rank {
                        d[i] = 1;
                        d[j] = -1;
                    } else {
                        for (k, slot) in d.iter_mut().enumerate() {
                            *slot = if k == i { 2 } else { 1 };
                        }
                    }
                    covs.push(unit_covector(&format!("e{}-e{}", i + 1, j + 1), &d));
                }
            }
        }
        RootFamily::B => {
            for i in 0..rank {
                let mut d = vec![0i64; rank];
                d[i] = 1;
                covs.push(unit_covector(&format!("e{}", i + 1), &d));
            }
            for i in 0..rank {
                for j in i + 1..rank {
                    for sign in [1i64, -1] {
                        let mut d = vec![0i64; rank];
                        d[i] = 1;
                        d[j] = sign;
                        let op = if sign > 0 { '+' } else { '-' };
                        covs.push(unit_covector(&format!("e{}{}e{}", i + 1, op, j + 1), &d));
                    }
                }
            }
        }
        RootFamily::D => {
            if rank < 2 {
                return Err(bad("rank must be at least 2"));
            }
            for i in 0..rank {
                for j in i + 1..rank {
                    for sign in [1i64, -1] {
                        let mut d = vec![0i64; rank];
                        d[i] = 1;
                        d[j] = sign;
                        let op = if sign > 0 { '+' } else { '-' };
                        covs.push(unit_covector(&format!("e{}{}e{}", i + 1, op, j + 1), &d));
                    }
                }
            }
        }
        RootFamily::G => {
            if rank != 2 {
                return Err(bad("G is only defined at rank 2"));
            }
            // short roots e_i - e_j and long roots 2e_i - e_j - e_k of the
            // sum-zero realization, restricted to two coordinates
            for (label, d) in [
                ("e1-e2", [1, -1]),
                ("e1-e3", [2, 1]),
                ("e2-e3", [1, 2]),
                ("2e1-e2-e3", [3, 0]),
                ("2e2-e1-e3", [0, 3]),
                ("e1+e2-2e3", [3, 3]),
            ] {
                covs.push(covector(label, Expr::int(1), &d));
            }
        }
    }
    Ok(CovectorSystem::new(rank, vec![], covs))
}

/// The seven-covector family attached to D(2,1,λ): the four `e1±e2±e3`
/// with radicand 1 and the three axis covectors with parametric radicands
/// `2(t+s-1)`, `2(s-t+1)/t`, `2(t-s+1)/s`. Its Gram form is
/// `diag(2(t+s+1), 2(t+s+1)/t, 2(t+s+1)/s)`, degenerating on `t+s+1 = 0`.
pub fn d21lambda() -> CovectorSystem {
    let params = vec!["t".to_string(), "s".to_string()];
    let rad = |text: &str| Expr::parse(text, &params).unwrap();
    let covectors = vec![
        unit_covector("e1+e2+e3", &[1, 1, 1]),
        unit_covector("e1+e2-e3", &[1, 1, -1]),
        unit_covector("e1-e2+e3", &[1, -1, 1]),
        unit_covector("e1-e2-e3", &[1, -1, -1]),
        covector("a1", rad("2*(t+s-1)"), &[1, 0, 0]),
        covector("a2", rad("2*(s-t+1)/t"), &[0, 1, 0]),
        covector("a3", rad("2*(t-s+1)/s"), &[0, 0, 1]),
    ];
    CovectorSystem::new(3, params, covectors)
}

/// The thirteen-covector family attached to the generalized root system
/// G(1,2), parameter `t`. The first three covectors carry radicand `2t+1`
/// and vanish in the limit `t → -1/2`.
pub fn g12() -> CovectorSystem {
    let params = vec!["t".to_string()];
    let rad = |text: &str| Expr::parse(text, &params).unwrap();
    let covectors = vec![
        covector("e1", rad("2*t+1"), &[1, 0, 0]),
        covector("e2", rad("2*t+1"), &[0, 1, 0]),
        covector("e1+e2", rad("2*t+1"), &[1, 1, 0]),
        covector("e1-e2", rad("(2*t-1)/3"), &[1, -1, 0]),
        covector("2e1+e2", rad("(2*t-1)/3"), &[2, 1, 0]),
        covector("e1+2e2", rad("(2*t-1)/3"), &[1, 2, 0]),
        covector("e3", rad("3/t"), &[0, 0, 1]),
        unit_covector("e1+e3", &[1, 0, 1]),
        unit_covector("e1-e3", &[1, 0, -1]),
        unit_covector("e2+e3", &[0, 1, 1]),
        unit_covector("e2-e3", &[0, 1, -1]),
        unit_covector("e1+e2+e3", &[1, 1, 1]),
        unit_covector("e1+e2-e3", &[1, 1, -1]),
    ];
    CovectorSystem::new(3, params, covectors)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinKind {
    Covectors,
    PolyFrobenius,
}

#[derive(Clone, Debug)]
pub struct BuiltinInfo {
    pub name: String,
    pub kind: BuiltinKind,
    pub dimension: usize,
    pub parameters: Vec<String>,
    pub summary: String,
}

/// Resolves names like `A3`, `B2`, `D4`, `G2`, `d21lambda`, `g12`.
pub fn covector_builtin(name: &str) -> Result<CovectorSystem> {
    match name {
        "d21lambda" => return Ok(d21lambda()),
        "g12" => return Ok(g12()),
        _ => {}
    }
    let mut chars = name.chars();
    let family = match chars.next() {
        Some('A') => RootFamily::A,
        Some('B') => RootFamily::B,
        Some('D') => RootFamily::D,
        Some('G') => RootFamily::G,
        _ => return Err(Error::UnknownBuiltin(name.to_string())),
    };
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| Error::UnknownBuiltin(name.to_string()))?;
    root_system(family, rank)
}

pub fn list_builtins() -> Vec<BuiltinInfo> {
    let mut out = Vec::new();
    for (fam, label, lo) in [
        (RootFamily::A, 'A', 1),
        (RootFamily::B, 'B', 2),
        (RootFamily::D, 'D', 2),
    ] {
        for rank in lo..=8 {
            let sys = root_system(fam, rank).unwrap();
            out.push(BuiltinInfo {
                name: format!("{label}{rank}"),
                kind: BuiltinKind::Covectors,
                dimension: sys.dimension,
                parameters: vec![],
                summary: format!(
                    "positive roots of {label}_{rank} ({} covectors, radicand 1)",
                    sys.covectors.len()
                ),
            });
        }
    }
    out.push(BuiltinInfo {
        name: "G2".into(),
        kind: BuiltinKind::Covectors,
        dimension: 2,
        parameters: vec![],
        summary: "positive roots of G_2 in planar coordinates (6 covectors)".into(),
    });
    out.push(BuiltinInfo {
        name: "d21lambda".into(),
        kind: BuiltinKind::Covectors,
        dimension: 3,
        parameters: vec!["t".into(), "s".into()],
        summary: "seven-covector family of D(2,1,λ); degenerate on t+s+1=0".into(),
    });
    out.push(BuiltinInfo {
        name: "g12".into(),
        kind: BuiltinKind::Covectors,
        dimension: 3,
        parameters: vec!["t".into()],
        summary: "thirteen-covector family of G(1,2); degenerate at t=-1/2".into(),
    });
    out.push(BuiltinInfo {
        name: "kdv2d".into(),
        kind: BuiltinKind::PolyFrobenius,
        dimension: 2,
        parameters: vec![],
        summary: "two-component polynomial flat structure with F = (u1)^2 u2/2 + (u2)^4/24".into(),
    });
    out.push(BuiltinInfo {
        name: "trivial1d".into(),
        kind: BuiltinKind::PolyFrobenius,
        dimension: 1,
        parameters: vec![],
        summary: "one-component structure with F = u^3/6".into(),
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use std::collections::BTreeMap;

    fn bind1(name: &str, v: Rational) -> BTreeMap<String, Rational> {
        BTreeMap::from([(name.to_string(), v)])
    }

    #[test]
    fn canonicalization_extracts_squares() {
        let (r, v) = canonicalize(Expr::int(1), Vector::from_ints(&[3, 0]));
        assert_eq!(v, Vector::from_ints(&[1, 0]));
        assert_eq!(r.to_rational().unwrap(), Rational::from_int(9));

        let (r, v) = canonicalize(
            Expr::int(2),
            Vector(vec![Rational::ratio(-1, 2), Rational::ratio(1, 4)]),
        );
        assert_eq!(v, Vector::from_ints(&[2, -1]));
        // v = (-1/4)(2, -1), factor² = 1/16, r = 2/16 = 1/8
        assert_eq!(r.to_rational().unwrap(), Rational::ratio(1, 8));
    }

    #[test]
    fn b2_matches_textbook_roots() {
        let sys = root_system(RootFamily::B, 2).unwrap();
        let dirs: Vec<_> = sys.covectors.iter().map(|c| c.direction.clone()).collect();
        assert_eq!(
            dirs,
            vec![
                Vector::from_ints(&[1, 0]),
                Vector::from_ints(&[0, 1]),
                Vector::from_ints(&[1, 1]),
                Vector::from_ints(&[1, -1]),
            ]
        );
        assert!(sys.validate().ok());
    }

    #[test]
    fn root_counts_and_validity() {
        for (fam, rank, count) in [
            (RootFamily::A, 2, 3),
            (RootFamily::A, 5, 15),
            (RootFamily::B, 3, 9),
            (RootFamily::D, 4, 12),
            (RootFamily::G, 2, 6),
        ] {
            let sys = root_system(fam, rank).unwrap();
            assert_eq!(sys.covectors.len(), count, "{fam:?}{rank}");
            assert!(sys.validate().ok(), "{fam:?}{rank}");
        }
        assert!(root_system(RootFamily::D, 1).is_err());
        assert!(root_system(RootFamily::A, 9).is_err());
        assert!(root_system(RootFamily::G, 3).is_err());
    }

    #[test]
    fn d21lambda_instantiates_as_reported() {
        let fam = d21lambda();
        assert!(fam.validate().ok());
        let mut vals = bind1("t", Rational::one());
        vals.insert("s".into(), Rational::one());
        let sys = fam.instantiate(&vals).unwrap();
        assert_eq!(sys.len(), 7);
        assert!(sys.dropped.is_empty());
        for c in &sys.covectors[4..] {
            assert_eq!(c.radicand, Rational::from_int(2));
        }
        let gram = sys.gram_metric();
        assert_eq!(
            gram.matrix,
            Matrix::from_int_rows(&[&[6, 0, 0], &[0, 6, 0], &[0, 0, 6]])
        );
    }

    #[test]
    fn g12_drops_three_at_minus_half() {
        let fam = g12();
        let sys = fam.instantiate(&bind1("t", Rational::ratio(-1, 2))).unwrap();
        assert_eq!(sys.dropped, vec!["e1", "e2", "e1+e2"]);
        assert_eq!(sys.len(), 10);

        // nonsingular at t = 1
        let sys = fam.instantiate(&bind1("t", Rational::one())).unwrap();
        assert_eq!(sys.len(), 13);
        assert!(!sys.gram_metric().matrix.det().is_zero());
    }

    #[test]
    fn builtin_lookup() {
        assert!(covector_builtin("B2").is_ok());
        assert!(covector_builtin("g12").is_ok());
        assert!(covector_builtin("Q7").is_err());
        assert!(covector_builtin("Axy").is_err());
        assert!(!list_builtins().is_empty());
    }
}
