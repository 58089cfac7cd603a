//! The multiplication induced by a covector system, its potential third
//! derivatives, exact point checks of the product axioms, and
//! regularization of degenerate one-parameter families.
//!
//! With `α = √r·v` and `w = η⁻¹v`, the structure constants and potential
//! derivatives at a point `u` off the hyperplanes are
//!
//! ```text
//! c^i_{jk}(u)   =  Σ_α r_α v_j v_k w^i / v(u)
//! ∂³F_{ijk}(u)  =  Σ_α r_α v_i v_j v_k / v(u)
//! ∂_m c^i_{jk}  = -Σ_α r_α v_m v_j v_k w^i / v(u)²
//! ```
//!
//! all exactly rational. The constants are never stored symbolically in
//! `u`; identities are checked at exact rational sample points.

use crate::matrix::{Matrix, Vector};
use crate::ratfunc::RatFunc;
use crate::rational::Rational;
use crate::tensor::{SymTensor3, Tensor3, Tensor4};
use crate::vee::{ConcreteCovector, ConcreteSystem, CovectorSystem};
use crate::{Error, Result};

/// A metric together with the concrete covectors generating the product.
/// For a non-degenerate system the metric is the Gram form; for a
/// regularized family it is the finite limit extracted by valuation.
#[derive(Clone, Debug)]
pub struct FrobeniusData {
    pub dimension: usize,
    pub metric: Matrix,
    pub metric_inv: Matrix,
    pub covectors: Vec<ConcreteCovector>,
    /// `w_α = η⁻¹ v_α`
    pub dual_cores: Vec<Vector>,
    /// `B_{αβ} = v_αᵀ η⁻¹ v_β`
    pub pairing: Matrix,
    pub dropped: Vec<String>,
    pub regularized: bool,
}

impl FrobeniusData {
    pub fn from_system(system: &ConcreteSystem) -> Result<Self> {
        let gram = system.gram_metric();
        let inverse = gram
            .inverse
            .clone()
            .ok_or(Error::SingularGram { rank: gram.rank })?;
        Ok(Self::assemble(
            system.dimension,
            gram.matrix,
            inverse,
            system.covectors.clone(),
            system.dropped.clone(),
            false,
        ))
    }

    /// Extracts the finite limit of the Gram family `G(t)` at `t0` along a
    /// one-parameter family: covectors with vanishing radicand are dropped,
    /// and `η = scale · lim G(t)/(t-t0)^k` with `k` the minimal valuation
    /// order over the entries. `scale` pins the residual normalization
    /// freedom of a degenerate limit (default 1).
    pub fn regularize(family: &CovectorSystem, t0: &Rational, scale: &Rational) -> Result<Self> {
        if family.parameters.len() != 1 {
            return Err(Error::Invalid(format!(
                "regularization needs exactly one free parameter, found {}",
                family.parameters.len()
            )));
        }
        if scale.is_zero() {
            return Err(Error::Invalid("scale must be nonzero".into()));
        }
        let param = &family.parameters[0];
        let n = family.dimension;

        let radicands: Vec<RatFunc> = family
            .covectors
            .iter()
            .map(|c| c.radicand.to_ratfunc(param))
            .collect::<Result<_>>()?;

        // entrywise valuations of G(t) = Σ r(t) v vᵀ
        let mut vals: Vec<Vec<Option<(i64, Rational)>>> = vec![vec![None; n]; n];
        let mut min_ord: Option<i64> = None;
        for i in 0..n {
            for j in 0..n {
                let mut entry = RatFunc::zero();
                for (c, r) in family.covectors.iter().zip(&radicands) {
                    let vivj = &c.direction[i] * &c.direction[j];
                    if !vivj.is_zero() {
                        entry = entry.add(&r.mul(&RatFunc::constant(vivj)));
                    }
                }
                if !entry.is_zero() {
                    let (ord, lead) = entry.valuation_at(t0)?;
                    min_ord = Some(min_ord.map_or(ord, |m| m.min(ord)));
                    vals[i][j] = Some((ord, lead));
                }
            }
        }
        let Some(k) = min_ord else {
            return Err(Error::Unregularizable);
        };

        let metric = Matrix::from_fn(n, n, |i, j| match &vals[i][j] {
            Some((ord, lead)) if *ord == k => lead * scale,
            _ => Rational::zero(),
        });
        let metric_inv = match metric.inverse() {
            Ok(inv) => inv,
            Err(_) if k == 0 => return Err(Error::Unregularizable),
            Err(_) => return Err(Error::Unregularizable),
        };
        if k == 0 {
            // the limit is G(t0) itself and it is invertible
            return Err(Error::NoRegularizationNeeded);
        }

        let mut covectors = Vec::new();
        let mut dropped = Vec::new();
        for (c, r) in family.covectors.iter().zip(&radicands) {
            match r.eval(t0) {
                None => {
                    return Err(Error::RadicandPole {
                        label: c.label.clone(),
                    })
                }
                Some(v) if v.is_zero() => dropped.push(c.label.clone()),
                Some(v) => covectors.push(ConcreteCovector {
                    label: c.label.clone(),
                    radicand: v,
                    direction: c.direction.clone(),
                }),
            }
        }
        Ok(Self::assemble(n, metric, metric_inv, covectors, dropped, true))
    }

    fn assemble(
        dimension: usize,
        metric: Matrix,
        metric_inv: Matrix,
        covectors: Vec<ConcreteCovector>,
        dropped: Vec<String>,
        regularized: bool,
    ) -> Self {
        let dual_cores: Vec<Vector> = covectors
            .iter()
            .map(|c| metric_inv.mul_vec(&c.direction))
            .collect();
        let m = covectors.len();
        let pairing = Matrix::from_fn(m, m, |a, b| covectors[a].direction.dot(&dual_cores[b]));
        FrobeniusData {
            dimension,
            metric,
            metric_inv,
            covectors,
            dual_cores,
            pairing,
            dropped,
            regularized,
        }
    }

    /// `Σ_α r_α (η⁻¹v_α) v_αᵀ`; the identity for Gram-metric data, the zero
    /// matrix for regularized data (where the product has no unity).
    pub fn rho_sum(&self) -> Matrix {
        let n = self.dimension;
        let mut sum = Matrix::zeros(n, n);
        for (c, w) in self.covectors.iter().zip(&self.dual_cores) {
            sum = sum.add(&Matrix::from_fn(n, n, |i, j| {
                &c.radicand * &(&w[i] * &c.direction[j])
            }));
        }
        sum
    }

    /// Errors with the offending label if `u` lies on any hyperplane.
    pub fn check_admissible(&self, u: &Vector) -> Result<()> {
        for c in &self.covectors {
            if c.direction.dot(u).is_zero() {
                return Err(Error::HyperplaneHit {
                    label: c.label.clone(),
                });
            }
        }
        Ok(())
    }

    fn plane_values(&self, u: &Vector) -> Result<Vec<Rational>> {
        self.covectors
            .iter()
            .map(|c| {
                let p = c.direction.dot(u);
                if p.is_zero() {
                    Err(Error::HyperplaneHit {
                        label: c.label.clone(),
                    })
                } else {
                    Ok(p)
                }
            })
            .collect()
    }

    pub fn structure_constants_at(&self, u: &Vector) -> Result<Tensor3> {
        let planes = self.plane_values(u)?;
        let n = self.dimension;
        let mut c = Tensor3::zeros(n);
        for ((cov, w), p) in self.covectors.iter().zip(&self.dual_cores).zip(&planes) {
            let weight = &cov.radicand / p;
            for i in 0..n {
                let wi = &w[i] * &weight;
                if wi.is_zero() {
                    continue;
                }
                for j in 0..n {
                    if cov.direction[j].is_zero() {
                        continue;
                    }
                    for k in 0..n {
                        let term = &wi * &(&cov.direction[j] * &cov.direction[k]);
                        *c.get_mut(i, j, k) += &term;
                    }
                }
            }
        }
        Ok(c)
    }

    pub fn third_derivative_at(&self, u: &Vector) -> Result<SymTensor3> {
        let planes = self.plane_values(u)?;
        let n = self.dimension;
        Ok(SymTensor3::from_fn(n, |i, j, k| {
            self.covectors
                .iter()
                .zip(&planes)
                .map(|(cov, p)| {
                    &(&cov.radicand / p)
                        * &(&(&cov.direction[i] * &cov.direction[j]) * &cov.direction[k])
                })
                .sum()
        }))
    }

    pub fn d_structure_constants_at(&self, u: &Vector) -> Result<Tensor4> {
        let planes = self.plane_values(u)?;
        let n = self.dimension;
        let mut d = Tensor4::zeros(n);
        for ((cov, w), p) in self.covectors.iter().zip(&self.dual_cores).zip(&planes) {
            let weight = -(&cov.radicand / &(p * p));
            for m in 0..n {
                if cov.direction[m].is_zero() {
                    continue;
                }
                for i in 0..n {
                    let wmi = &(&w[i] * &weight) * &cov.direction[m];
                    if wmi.is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        if cov.direction[j].is_zero() {
                            continue;
                        }
                        for k in 0..n {
                            let term = &wmi * &(&cov.direction[j] * &cov.direction[k]);
                            *d.get_mut(m, i, j, k) += &term;
                        }
                    }
                }
            }
        }
        Ok(d)
    }

    pub fn potentiality_at(&self, u: &Vector) -> Result<bool> {
        let c = self.structure_constants_at(u)?;
        let f3 = self.third_derivative_at(u)?;
        Ok(potentiality_of(&self.metric, &c, &f3))
    }

    pub fn associativity_at(&self, u: &Vector) -> Result<bool> {
        Ok(associativity_of(&self.structure_constants_at(u)?))
    }

    pub fn invariance_at(&self, u: &Vector) -> Result<bool> {
        Ok(invariance_of(
            &self.metric_inv,
            &self.structure_constants_at(u)?,
        ))
    }

    pub fn nabla_c_symmetry_at(&self, u: &Vector) -> Result<bool> {
        Ok(nabla_c_symmetric(&self.d_structure_constants_at(u)?))
    }

    pub fn hertling_manin_at(&self, u: &Vector) -> Result<bool> {
        let c = self.structure_constants_at(u)?;
        let dc = self.d_structure_constants_at(u)?;
        Ok(hertling_manin_of(&c, &dc))
    }

    /// `c(u)·(u/μ) = Id`. The scale `μ` is the multiple of the identity in
    /// `Σρ`; regularized products have `Σρ = 0` and therefore no unity.
    pub fn unity_at(&self, u: &Vector, mu: &Rational) -> Result<bool> {
        if mu.is_zero() {
            return Err(Error::NoUnity);
        }
        let c = self.structure_constants_at(u)?;
        let n = self.dimension;
        for i in 0..n {
            for j in 0..n {
                let acc: Rational = (0..n).map(|k| c.get(i, j, k) * &u[k]).sum();
                let expected = if i == j { mu.clone() } else { Rational::zero() };
                if acc != expected {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Everything the loop numerics need, in binary64.
    pub fn float_kernel(&self) -> FloatKernel {
        FloatKernel {
            dimension: self.dimension,
            radicands: self.covectors.iter().map(|c| c.radicand.to_f64()).collect(),
            directions: self.covectors.iter().map(|c| c.direction.to_f64()).collect(),
            dual_cores: self.dual_cores.iter().map(Vector::to_f64).collect(),
            pairing: (0..self.covectors.len())
                .map(|a| {
                    (0..self.covectors.len())
                        .map(|b| self.pairing[(a, b)].to_f64())
                        .collect()
                })
                .collect(),
            metric_inv: (0..self.dimension)
                .map(|i| {
                    (0..self.dimension)
                        .map(|j| self.metric_inv[(i, j)].to_f64())
                        .collect()
                })
                .collect(),
            labels: self.covectors.iter().map(|c| c.label.clone()).collect(),
        }
    }
}

/// Float shadow of [`FrobeniusData`] for spectral loop evaluations.
#[derive(Clone, Debug)]
pub struct FloatKernel {
    pub dimension: usize,
    pub radicands: Vec<f64>,
    pub directions: Vec<Vec<f64>>,
    pub dual_cores: Vec<Vec<f64>>,
    pub pairing: Vec<Vec<f64>>,
    pub metric_inv: Vec<Vec<f64>>,
    pub labels: Vec<String>,
}

impl FloatKernel {
    pub fn len(&self) -> usize {
        self.radicands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radicands.is_empty()
    }

    /// `c^i_{jk}(u)` in floats, for finite-difference oracles and grids.
    pub fn structure_constants(&self, u: &[f64]) -> Vec<f64> {
        let n = self.dimension;
        let mut c = vec![0.0; n * n * n];
        for a in 0..self.len() {
            let v = &self.directions[a];
            let w = &self.dual_cores[a];
            let p: f64 = v.iter().zip(u).map(|(x, y)| x * y).sum();
            let weight = self.radicands[a] / p;
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        c[(i * n + j) * n + k] += weight * w[i] * v[j] * v[k];
                    }
                }
            }
        }
        c
    }
}

/// `η_{il} c^l_{jk} = ∂³F_{ijk}` exactly.
pub fn potentiality_of(metric: &Matrix, c: &Tensor3, f3: &SymTensor3) -> bool {
    let n = c.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs: Rational = (0..n).map(|l| &metric[(i, l)] * c.get(l, j, k)).sum();
                if &lhs != f3.get(i, j, k) {
                    return false;
                }
            }
        }
    }
    true
}

/// All multiplication matrices `(C_a)^i_j = c^i_{aj}` commute.
pub fn associativity_of(c: &Tensor3) -> bool {
    let n = c.dim();
    let mult = |a: usize| Matrix::from_fn(n, n, |i, j| c.get(i, a, j).clone());
    let mats: Vec<Matrix> = (0..n).map(mult).collect();
    for a in 0..n {
        for b in a + 1..n {
            if !mats[a].commutator(&mats[b]).is_zero() {
                return false;
            }
        }
    }
    true
}

/// `g^{lm} c^j_{hm} = g^{jm} c^l_{hm}` with the contravariant metric.
pub fn invariance_of(metric_inv: &Matrix, c: &Tensor3) -> bool {
    let n = c.dim();
    for h in 0..n {
        for j in 0..n {
            for l in 0..j {
                let lhs: Rational = (0..n).map(|m| &metric_inv[(l, m)] * c.get(j, h, m)).sum();
                let rhs: Rational = (0..n).map(|m| &metric_inv[(j, m)] * c.get(l, h, m)).sum();
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// `∂_m c^i_{jl} = ∂_j c^i_{ml}` exactly.
pub fn nabla_c_symmetric(dc: &Tensor4) -> bool {
    let n = dc.dim();
    for m in 0..n {
        for i in 0..n {
            for j in 0..m {
                for l in 0..n {
                    if dc.get(m, i, j, l) != dc.get(j, i, m, l) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The six-term compatibility condition between a commutative product and
/// its Lie-derivative structure; characterizes F-manifolds.
pub fn hertling_manin_of(c: &Tensor3, dc: &Tensor4) -> bool {
    let n = c.dim();
    for k in 0..n {
        for l in 0..n {
            for q in 0..n {
                for s in 0..n {
                    for t in 0..n {
                        let mut acc = Rational::zero();
                        for m in 0..n {
                            acc += &(c.get(m, t, l) * dc.get(m, k, q, s));
                            acc -= &(dc.get(m, k, t, l) * c.get(m, q, s));
                            acc += &(dc.get(q, m, t, l) * c.get(k, m, s));
                            acc += &(dc.get(s, m, t, l) * c.get(k, m, q));
                            acc -= &(dc.get(l, m, q, s) * c.get(k, t, m));
                            acc -= &(dc.get(t, m, q, s) * c.get(k, l, m));
                        }
                        if !acc.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{covector_builtin, d21lambda, g12};
    use crate::rational::Rational;
    use std::collections::BTreeMap;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn orthonormal(n: usize) -> FrobeniusData {
        let dirs: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        let sys = crate::vee::ConcreteSystem {
            dimension: n,
            covectors: dirs
                .iter()
                .enumerate()
                .map(|(i, d)| ConcreteCovector {
                    label: format!("e{i}"),
                    radicand: Rational::one(),
                    direction: Vector::from_ints(d),
                })
                .collect(),
            dropped: vec![],
        };
        FrobeniusData::from_system(&sys).unwrap()
    }

    fn d21_at_ones() -> FrobeniusData {
        let sys = d21lambda()
            .instantiate(&BTreeMap::from([
                ("t".to_string(), Rational::one()),
                ("s".to_string(), Rational::one()),
            ]))
            .unwrap();
        FrobeniusData::from_system(&sys).unwrap()
    }

    #[test]
    fn orthonormal_structure_constants() {
        let data = orthonormal(2);
        let u = Vector::from_ints(&[1, 1]);
        let c = data.structure_constants_at(&u).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let expected = if i == j && j == k {
                        Rational::one()
                    } else {
                        Rational::zero()
                    };
                    assert_eq!(*c.get(i, j, k), expected);
                }
            }
        }
        let f3 = data.third_derivative_at(&u).unwrap();
        assert_eq!(*f3.get(0, 0, 0), Rational::one());
        assert_eq!(*f3.get(0, 0, 1), Rational::zero());
        let dc = data.d_structure_constants_at(&u).unwrap();
        assert_eq!(*dc.get(0, 0, 0, 0), q(-1, 1));
        assert!(data.unity_at(&u, &Rational::one()).unwrap());
    }

    #[test]
    fn hyperplane_hit_reports_label() {
        let data = orthonormal(2);
        let u = Vector::from_ints(&[0, 1]);
        match data.structure_constants_at(&u) {
            Err(Error::HyperplaneHit { label }) => assert_eq!(label, "e0"),
            other => panic!("expected hyperplane hit, got {other:?}"),
        }
    }

    #[test]
    fn all_point_checks_pass_for_d21() {
        let data = d21_at_ones();
        for u in [
            Vector::from_ints(&[1, 2, 4]),
            Vector::from_ints(&[2, -1, 5]),
            Vector::from_ints(&[1, 1, 3]),
        ] {
            assert!(data.potentiality_at(&u).unwrap());
            assert!(data.associativity_at(&u).unwrap());
            assert!(data.invariance_at(&u).unwrap());
            assert!(data.nabla_c_symmetry_at(&u).unwrap());
            assert!(data.hertling_manin_at(&u).unwrap());
            assert!(data.unity_at(&u, &Rational::one()).unwrap());
        }
        assert_eq!(data.rho_sum(), Matrix::identity(3));
    }

    #[test]
    fn witness_system_fails_associativity() {
        let sys = crate::vee::ConcreteSystem {
            dimension: 3,
            covectors: [[1i64, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]
                .iter()
                .enumerate()
                .map(|(i, d)| ConcreteCovector {
                    label: format!("c{i}"),
                    radicand: Rational::one(),
                    direction: Vector::from_ints(d),
                })
                .collect(),
            dropped: vec![],
        };
        let data = FrobeniusData::from_system(&sys).unwrap();
        let u = Vector::from_ints(&[1, 2, 5]);
        assert!(!data.associativity_at(&u).unwrap());
        // potentiality and the symmetric-derivative identity hold for any
        // covector-generated data; associativity is the real constraint
        assert!(data.potentiality_at(&u).unwrap());
        assert!(data.nabla_c_symmetry_at(&u).unwrap());
    }

    #[test]
    fn tampered_metric_breaks_potentiality() {
        let data = d21_at_ones();
        let u = Vector::from_ints(&[1, 2, 4]);
        let c = data.structure_constants_at(&u).unwrap();
        let f3 = data.third_derivative_at(&u).unwrap();
        let mut bad = data.metric.clone();
        bad[(0, 0)] = &bad[(0, 0)] + &Rational::one();
        assert!(potentiality_of(&data.metric, &c, &f3));
        assert!(!potentiality_of(&bad, &c, &f3));
    }

    #[test]
    fn random_tensor_fails_hertling_manin() {
        // a deterministic "random-looking" non-product tensor
        let n = 3;
        let c = Tensor3::from_fn(n, |i, j, k| q((i * 7 + j * 3 + k + 1) as i64, 2));
        let dc = Tensor4::from_fn(n, |m, i, j, k| q((m + 2 * i + 5 * j + k + 1) as i64, 3));
        assert!(!hertling_manin_of(&c, &dc));
        assert!(!nabla_c_symmetric(&dc));
    }

    #[test]
    fn finite_difference_oracle_for_dc() {
        let data = d21_at_ones();
        let kernel = data.float_kernel();
        let u = Vector::from_ints(&[1, 2, 4]);
        let dc = data.d_structure_constants_at(&u).unwrap();
        let n = data.dimension;
        let h = 1e-5;
        let uf = u.to_f64();
        for m in 0..n {
            let mut up = uf.clone();
            let mut dn = uf.clone();
            up[m] += h;
            dn[m] -= h;
            let cp = kernel.structure_constants(&up);
            let cm = kernel.structure_constants(&dn);
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let fd = (cp[(i * n + j) * n + k] - cm[(i * n + j) * n + k]) / (2.0 * h);
                        let exact = dc.get(m, i, j, k).to_f64();
                        let denom = exact.abs().max(1.0);
                        assert!(
                            (fd - exact).abs() / denom < 1e-6,
                            "fd {fd} vs exact {exact}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn radicand_scaling_leaves_product_unchanged() {
        let data = d21_at_ones();
        let scale = q(7, 3);
        let sys = crate::vee::ConcreteSystem {
            dimension: 3,
            covectors: data
                .covectors
                .iter()
                .map(|c| ConcreteCovector {
                    label: c.label.clone(),
                    radicand: &c.radicand * &scale,
                    direction: c.direction.clone(),
                })
                .collect(),
            dropped: vec![],
        };
        let scaled = FrobeniusData::from_system(&sys).unwrap();
        assert_eq!(scaled.metric, data.metric.scale(&scale));
        let u = Vector::from_ints(&[1, 2, 4]);
        let c0 = data.structure_constants_at(&u).unwrap();
        let c1 = scaled.structure_constants_at(&u).unwrap();
        assert!(c0 == c1);
    }

    #[test]
    fn regularize_d21_along_path() {
        // pin t, leave s free; the family degenerates at s = -t-1
        for tv in [1i64, 2, 3] {
            let t = Rational::from_int(tv);
            let family = d21lambda().bind(&BTreeMap::from([("t".to_string(), t.clone())]));
            let s0 = -&t - &Rational::one();
            let data = FrobeniusData::regularize(&family, &s0, &Rational::one()).unwrap();
            let expected = Matrix::from_rows(vec![
                vec![q(2, 1), q(0, 1), q(0, 1)],
                vec![q(0, 1), &q(2, 1) / &t, q(0, 1)],
                vec![
                    q(0, 1),
                    q(0, 1),
                    -(&q(2, 1) / &(&Rational::one() + &t)),
                ],
            ]);
            assert_eq!(data.metric, expected, "t = {tv}");
            assert!(data.dropped.is_empty());
            assert_eq!(data.covectors.len(), 7);
            // the product loses the unity
            assert!(data.rho_sum().is_zero());
            assert_eq!(data.unity_at(&Vector::from_ints(&[1, 2, 3]), &Rational::zero()), Err(Error::NoUnity));
        }
    }

    #[test]
    fn regularize_g12_at_minus_half() {
        let t0 = q(-1, 2);
        let monic = FrobeniusData::regularize(&g12(), &t0, &Rational::one()).unwrap();
        assert_eq!(
            monic.metric,
            Matrix::from_int_rows(&[&[8, 4, 0], &[4, 8, 0], &[0, 0, -12]])
        );
        let scaled = FrobeniusData::regularize(&g12(), &t0, &q(1, 8)).unwrap();
        let expected = Matrix::from_rows(vec![
            vec![q(1, 1), q(1, 2), q(0, 1)],
            vec![q(1, 2), q(1, 1), q(0, 1)],
            vec![q(0, 1), q(0, 1), q(-3, 2)],
        ]);
        assert_eq!(scaled.metric, expected);
        assert_eq!(scaled.dropped.len(), 3);
        assert_eq!(scaled.covectors.len(), 10);
        assert!(scaled.rho_sum().is_zero());
    }

    #[test]
    fn regularize_rejects_nondegenerate_values() {
        let family = g12();
        match FrobeniusData::regularize(&family, &Rational::one(), &Rational::one()) {
            Err(Error::NoRegularizationNeeded) => {}
            other => panic!("expected NoRegularizationNeeded, got {other:?}"),
        }
    }

    #[test]
    fn regularized_structures_pass_product_checks() {
        let t0 = q(-1, 2);
        let data = FrobeniusData::regularize(&g12(), &t0, &q(1, 8)).unwrap();
        for u in [Vector::from_ints(&[1, 2, 5]), Vector::from_ints(&[3, -1, 5])] {
            assert!(data.potentiality_at(&u).unwrap());
            assert!(data.associativity_at(&u).unwrap());
            assert!(data.invariance_at(&u).unwrap());
            assert!(data.nabla_c_symmetry_at(&u).unwrap());
            assert!(data.hertling_manin_at(&u).unwrap());
        }
    }

    #[test]
    fn builtin_root_systems_pass_wdvv_checks() {
        for name in ["A3", "B3", "G2"] {
            let sys = covector_builtin(name)
                .unwrap()
                .instantiate(&BTreeMap::new())
                .unwrap();
            let data = FrobeniusData::from_system(&sys).unwrap();
            let dim = data.dimension;
            let u = Vector::from_ints(&(1..=dim as i64).map(|k| 2 * k + 1).collect::<Vec<_>>());
            assert!(data.associativity_at(&u).unwrap(), "{name}");
            assert!(data.invariance_at(&u).unwrap(), "{name}");
            assert!(data.hertling_manin_at(&u).unwrap(), "{name}");
        }
    }
}
