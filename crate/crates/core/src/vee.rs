//! Covector systems and the ∨-condition decision procedure.
//!
//! A scaled covector is stored as a radicand `r` and a rational direction
//! `v`, representing `α = √r · v`. Every derived quantity — the Gram form
//! `G = Σ r v vᵀ`, the pairing core `B_{αβ} = v_αᵀ G⁻¹ v_β`, the rank-one
//! endomorphisms and the structure constants — is then rational, so all
//! checks are exact. Negative radicands (complex covectors) are allowed.

use std::collections::BTreeMap;

use crate::expr::Expr;
use crate::matrix::{Matrix, Vector};
use crate::rational::Rational;
use crate::{Error, Result};

/// `α = √radicand · direction`, with a possibly parametric radicand.
#[derive(Clone, Debug)]
pub struct ScaledCovector {
    pub label: String,
    pub radicand: Expr,
    pub direction: Vector,
}

/// A finite set of scaled covectors in a fixed dimension, optionally
/// depending on named parameters.
#[derive(Clone, Debug)]
pub struct CovectorSystem {
    pub dimension: usize,
    pub parameters: Vec<String>,
    pub covectors: Vec<ScaledCovector>,
}

/// A covector with the radicand evaluated to a nonzero rational.
#[derive(Clone, Debug)]
pub struct ConcreteCovector {
    pub label: String,
    pub radicand: Rational,
    pub direction: Vector,
}

/// Fully instantiated system; covectors whose radicand evaluated to zero
/// have been dropped and are reported in `dropped`.
#[derive(Clone, Debug)]
pub struct ConcreteSystem {
    pub dimension: usize,
    pub covectors: Vec<ConcreteCovector>,
    pub dropped: Vec<String>,
}

/// Diagnostics from [`CovectorSystem::validate`] /
/// [`ConcreteSystem::validate`].
#[derive(Clone, Debug, Default)]
pub struct Validation {
    pub zero_directions: Vec<usize>,
    pub collinear_pairs: Vec<(usize, usize)>,
    pub span_rank: usize,
    pub dimension: usize,
}

impl Validation {
    pub fn ok(&self) -> bool {
        self.zero_directions.is_empty()
            && self.collinear_pairs.is_empty()
            && self.span_rank == self.dimension
    }

    pub fn first_error(&self) -> Option<Error> {
        if let Some(&i) = self.zero_directions.first() {
            return Some(Error::Invalid(format!("covector {i} has zero direction")));
        }
        if let Some(&(i, j)) = self.collinear_pairs.first() {
            return Some(Error::CollinearPair(i, j));
        }
        if self.span_rank < self.dimension {
            return Some(Error::NotSpanning {
                rank: self.span_rank,
                dim: self.dimension,
            });
        }
        None
    }
}

fn validate_directions(dimension: usize, directions: &[&Vector]) -> Validation {
    let mut v = Validation {
        dimension,
        ..Validation::default()
    };
    for (i, d) in directions.iter().enumerate() {
        if d.is_zero() {
            v.zero_directions.push(i);
        }
    }
    for i in 0..directions.len() {
        for j in i + 1..directions.len() {
            if directions[i].is_zero() || directions[j].is_zero() {
                continue;
            }
            let m = Matrix::from_rows(vec![directions[i].0.clone(), directions[j].0.clone()]);
            if m.rank() < 2 {
                v.collinear_pairs.push((i, j));
            }
        }
    }
    let span = Matrix::from_rows(directions.iter().map(|d| d.0.clone()).collect());
    v.span_rank = if directions.is_empty() { 0 } else { span.rank() };
    v
}

impl CovectorSystem {
    pub fn new(dimension: usize, parameters: Vec<String>, covectors: Vec<ScaledCovector>) -> Self {
        CovectorSystem {
            dimension,
            parameters,
            covectors,
        }
    }

    pub fn validate(&self) -> Validation {
        let dirs: Vec<&Vector> = self.covectors.iter().map(|c| &c.direction).collect();
        validate_directions(self.dimension, &dirs)
    }

    /// Binds every parameter; covectors whose radicand evaluates to exactly
    /// zero are dropped and reported. A radicand pole is an error.
    pub fn instantiate(&self, values: &BTreeMap<String, Rational>) -> Result<ConcreteSystem> {
        for p in &self.parameters {
            if !values.contains_key(p) {
                return Err(Error::UnboundParameter(p.clone()));
            }
        }
        let mut covectors = Vec::new();
        let mut dropped = Vec::new();
        for c in &self.covectors {
            let r = c.radicand.eval(values).map_err(|e| match e {
                Error::DivisionByZero => Error::RadicandPole {
                    label: c.label.clone(),
                },
                other => other,
            })?;
            if r.is_zero() {
                dropped.push(c.label.clone());
            } else {
                covectors.push(ConcreteCovector {
                    label: c.label.clone(),
                    radicand: r,
                    direction: c.direction.clone(),
                });
            }
        }
        Ok(ConcreteSystem {
            dimension: self.dimension,
            covectors,
            dropped,
        })
    }

    /// Binds a subset of the parameters symbolically, keeping the rest free.
    /// Nothing is dropped here; dropping happens at full instantiation.
    pub fn bind(&self, values: &BTreeMap<String, Rational>) -> CovectorSystem {
        let covectors = self
            .covectors
            .iter()
            .map(|c| {
                let mut r = c.radicand.clone();
                for (name, val) in values {
                    r = r.substitute(name, &Expr::Const(val.clone()));
                }
                ScaledCovector {
                    label: c.label.clone(),
                    radicand: r,
                    direction: c.direction.clone(),
                }
            })
            .collect();
        let parameters = self
            .parameters
            .iter()
            .filter(|p| !values.contains_key(*p))
            .cloned()
            .collect();
        CovectorSystem {
            dimension: self.dimension,
            parameters,
            covectors,
        }
    }

    /// Symbolic Gram form `Σ r v vᵀ` with entries as expressions in the
    /// free parameters.
    pub fn symbolic_gram(&self) -> Vec<Vec<Expr>> {
        let n = self.dimension;
        let mut entries = vec![vec![Expr::int(0); n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                let mut acc: Option<Expr> = None;
                for c in &self.covectors {
                    let vivj = &c.direction[i] * &c.direction[j];
                    if vivj.is_zero() {
                        continue;
                    }
                    let term =
                        Expr::Mul(Box::new(Expr::Const(vivj)), Box::new(c.radicand.clone()));
                    acc = Some(match acc {
                        None => term,
                        Some(prev) => Expr::Add(Box::new(prev), Box::new(term)),
                    });
                }
                *e = acc.unwrap_or_else(|| Expr::int(0));
            }
        }
        entries
    }
}

/// `G = Σ r v vᵀ` with its exact inverse (absent when singular).
#[derive(Clone, Debug)]
pub struct GramMetric {
    pub matrix: Matrix,
    pub inverse: Option<Matrix>,
    pub rank: usize,
}

/// A maximal group of covectors whose directions share a 2-dimensional
/// span. The canonical basis is the reduced row echelon form of the span,
/// which makes deduplication order-independent.
#[derive(Clone, Debug)]
pub struct PlaneGroup {
    pub basis: Matrix,
    pub members: Vec<usize>,
}

/// Outcome of the ∨-check on one plane.
#[derive(Clone, Debug)]
pub enum PlaneStatus {
    /// For planes with at least three members all λ agree; a two-member
    /// plane keeps one λ = r B_αα per covector.
    Satisfied { lambdas: Vec<Rational> },
    /// The covector whose weighted dual sum is not the required multiple,
    /// with the residual vector as witness.
    Failed { witness: usize, residual: Vector },
}

impl PlaneStatus {
    pub fn satisfied(&self) -> bool {
        matches!(self, PlaneStatus::Satisfied { .. })
    }
}

#[derive(Clone, Debug)]
pub struct PlaneReport {
    pub plane: PlaneGroup,
    pub status: PlaneStatus,
}

#[derive(Clone, Debug)]
pub struct VeeVerdict {
    pub holds: bool,
    pub planes: Vec<PlaneReport>,
}

impl VeeVerdict {
    pub fn failing_planes(&self) -> impl Iterator<Item = &PlaneReport> {
        self.planes.iter().filter(|p| !p.status.satisfied())
    }
}

impl ConcreteSystem {
    pub fn validate(&self) -> Validation {
        let dirs: Vec<&Vector> = self.covectors.iter().map(|c| &c.direction).collect();
        validate_directions(self.dimension, &dirs)
    }

    pub fn len(&self) -> usize {
        self.covectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covectors.is_empty()
    }

    pub fn gram_metric(&self) -> GramMetric {
        let n = self.dimension;
        let matrix = Matrix::from_fn(n, n, |i, j| {
            self.covectors
                .iter()
                .map(|c| &c.radicand * &(&c.direction[i] * &c.direction[j]))
                .sum()
        });
        match matrix.inverse() {
            Ok(inv) => GramMetric {
                matrix,
                inverse: Some(inv),
                rank: n,
            },
            Err(Error::Singular { rank }) => GramMetric {
                matrix,
                inverse: None,
                rank,
            },
            Err(_) => unreachable!(),
        }
    }

    /// The rational pairing core `B_{αβ} = v_αᵀ G⁻¹ v_β`, so that
    /// `β(α̌) = √(r_α r_β) B_{αβ}`.
    pub fn pairing_matrix(&self, gram: &GramMetric) -> Result<Matrix> {
        let ginv = gram
            .inverse
            .as_ref()
            .ok_or(Error::SingularGram { rank: gram.rank })?;
        let m = self.covectors.len();
        let duals: Vec<Vector> = self
            .covectors
            .iter()
            .map(|c| ginv.mul_vec(&c.direction))
            .collect();
        Ok(Matrix::from_fn(m, m, |a, b| {
            self.covectors[a].direction.dot(&duals[b])
        }))
    }

    /// Groups covectors by the 2-dimensional spans of their directions.
    /// Every non-collinear pair lands in exactly one group; groups are keyed
    /// by the canonical RREF of the span and reported in key order.
    pub fn enumerate_planes(&self) -> Vec<PlaneGroup> {
        let m = self.covectors.len();
        let mut groups: BTreeMap<Vec<Vector>, PlaneGroup> = BTreeMap::new();
        for i in 0..m {
            for j in i + 1..m {
                let pair = Matrix::from_rows(vec![
                    self.covectors[i].direction.0.clone(),
                    self.covectors[j].direction.0.clone(),
                ]);
                let (rref, rank, _) = pair.rref();
                if rank != 2 {
                    continue; // collinear pair; validate() reports these
                }
                let key = vec![rref.row(0), rref.row(1)];
                groups.entry(key).or_insert_with(|| {
                    let members = (0..m)
                        .filter(|&k| in_row_span(&rref, &self.covectors[k].direction))
                        .collect();
                    PlaneGroup {
                        basis: rref.clone(),
                        members,
                    }
                });
            }
        }
        groups.into_values().collect()
    }

    /// The ∨-condition on a single plane. A two-member plane requires
    /// orthogonality of the pair (`B₁₂ = 0`); with three or more members the
    /// weighted sum `Σ_β r_β B_{βα} G⁻¹v_β` must equal `λ · G⁻¹v_α` with a
    /// single shared λ. λ is read off the first nonzero coordinate and the
    /// proportionality verified on all coordinates exactly.
    pub fn check_vee_plane(
        &self,
        gram: &GramMetric,
        pairing: &Matrix,
        plane: &PlaneGroup,
    ) -> PlaneStatus {
        let ginv = gram.inverse.as_ref().expect("nonsingular Gram required");
        let duals: Vec<Vector> = plane
            .members
            .iter()
            .map(|&a| ginv.mul_vec(&self.covectors[a].direction))
            .collect();
        if plane.members.len() == 2 {
            let (a, b) = (plane.members[0], plane.members[1]);
            if pairing[(a, b)].is_zero() {
                let lambdas = vec![
                    &self.covectors[a].radicand * &pairing[(a, a)],
                    &self.covectors[b].radicand * &pairing[(b, b)],
                ];
                return PlaneStatus::Satisfied { lambdas };
            }
            return PlaneStatus::Failed {
                witness: a,
                residual: duals[1].scale(&pairing[(a, b)]),
            };
        }
        let mut shared: Option<Rational> = None;
        for (pos, &alpha) in plane.members.iter().enumerate() {
            let mut sum = Vector::zeros(self.dimension);
            for (qos, &beta) in plane.members.iter().enumerate() {
                let w = &self.covectors[beta].radicand * &pairing[(beta, alpha)];
                sum = sum.add(&duals[qos].scale(&w));
            }
            let target = &duals[pos];
            let Some(k) = (0..self.dimension).find(|&k| !target[k].is_zero()) else {
                unreachable!("dual of a nonzero direction is nonzero");
            };
            let lambda = &sum[k] / &target[k];
            let residual = sum.sub(&target.scale(&lambda));
            if !residual.is_zero() {
                return PlaneStatus::Failed {
                    witness: alpha,
                    residual,
                };
            }
            match &shared {
                None => shared = Some(lambda),
                Some(l) if *l == lambda => {}
                Some(_) => {
                    return PlaneStatus::Failed {
                        witness: alpha,
                        residual,
                    }
                }
            }
        }
        let lambdas = vec![shared.expect("plane has members"); plane.members.len()];
        PlaneStatus::Satisfied { lambdas }
    }

    /// Aggregates the per-plane ∨-checks. Planes containing fewer than two
    /// covectors never arise in the enumeration and are vacuously satisfied.
    pub fn is_vee_system(&self) -> Result<VeeVerdict> {
        let gram = self.gram_metric();
        if gram.inverse.is_none() {
            return Err(Error::SingularGram { rank: gram.rank });
        }
        let pairing = self.pairing_matrix(&gram)?;
        let planes = self.enumerate_planes();
        let mut reports = Vec::with_capacity(planes.len());
        let mut holds = true;
        for plane in planes {
            let status = self.check_vee_plane(&gram, &pairing, &plane);
            holds &= status.satisfied();
            reports.push(PlaneReport { plane, status });
        }
        Ok(VeeVerdict {
            holds,
            planes: reports,
        })
    }
}

fn in_row_span(rref2: &Matrix, v: &Vector) -> bool {
    // With the 2×n basis in RREF, the candidate's coefficients are read off
    // at the pivot columns and the claim is verified on all coordinates.
    let n = v.len();
    let p1 = (0..n).find(|&j| !rref2[(0, j)].is_zero()).unwrap();
    let p2 = (0..n).find(|&j| !rref2[(1, j)].is_zero()).unwrap();
    let a = v[p1].clone();
    let b = v[p2].clone();
    (0..n).all(|j| &a * &rref2[(0, j)] + &b * &rref2[(1, j)] == v[j])
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn simple(dim: usize, dirs: &[&[i64]]) -> ConcreteSystem {
        ConcreteSystem {
            dimension: dim,
            covectors: dirs
                .iter()
                .enumerate()
                .map(|(i, d)| ConcreteCovector {
                    label: format!("c{i}"),
                    radicand: Rational::one(),
                    direction: Vector::from_ints(d),
                })
                .collect(),
            dropped: vec![],
        }
    }

    #[test]
    fn validation_diagnostics() {
        let sys = simple(2, &[&[1, 0], &[2, 0]]);
        let v = sys.validate();
        assert_eq!(v.collinear_pairs, vec![(0, 1)]);
        assert!(!v.ok());

        let sys = simple(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let v = sys.validate();
        assert!(v.collinear_pairs.is_empty());
        assert_eq!(v.span_rank, 2);
        assert!(!v.ok());
        assert_eq!(
            v.first_error(),
            Some(Error::NotSpanning { rank: 2, dim: 3 })
        );
    }

    #[test]
    fn orthonormal_basics() {
        let sys = simple(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let gram = sys.gram_metric();
        assert_eq!(gram.matrix, Matrix::identity(3));
        let b = sys.pairing_matrix(&gram).unwrap();
        assert_eq!(b, Matrix::identity(3));
        let verdict = sys.is_vee_system().unwrap();
        assert!(verdict.holds);
        assert_eq!(verdict.planes.len(), 3);
    }

    #[test]
    fn four_covector_witness_fails() {
        let sys = simple(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        let gram = sys.gram_metric();
        assert_eq!(
            gram.matrix,
            Matrix::from_int_rows(&[&[2, 1, 1], &[1, 2, 1], &[1, 1, 2]])
        );
        let b = sys.pairing_matrix(&gram).unwrap();
        assert_eq!(b[(0, 1)], Rational::ratio(-1, 4));
        assert_eq!(b[(0, 3)], Rational::ratio(1, 4));
        let planes = sys.enumerate_planes();
        assert_eq!(planes.len(), 6);
        assert!(planes.iter().all(|p| p.members.len() == 2));
        let verdict = sys.is_vee_system().unwrap();
        assert!(!verdict.holds);
        // every pair fails: B is -1/4 on (e_i, e_j) and 1/4 on (e_i, e1+e2+e3)
        assert_eq!(verdict.failing_planes().count(), 6);
    }

    #[test]
    fn two_dimensional_systems_always_hold() {
        let sys = simple(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        let planes = sys.enumerate_planes();
        assert_eq!(planes.len(), 1);
        assert_eq!(planes[0].members, vec![0, 1, 2]);
        let verdict = sys.is_vee_system().unwrap();
        assert!(verdict.holds);
        match &verdict.planes[0].status {
            PlaneStatus::Satisfied { lambdas } => {
                assert!(lambdas.iter().all(Rational::is_one));
            }
            s => panic!("unexpected status {s:?}"),
        }
    }

    #[test]
    fn plane_partition_covers_pairs() {
        let sys = simple(
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0], &[1, 2, 3]],
        );
        let planes = sys.enumerate_planes();
        let m = sys.len();
        let mut seen = vec![vec![0usize; m]; m];
        for p in &planes {
            for (a, &i) in p.members.iter().enumerate() {
                for &j in &p.members[a + 1..] {
                    seen[i][j] += 1;
                }
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                assert_eq!(seen[i][j], 1, "pair ({i},{j}) in exactly one plane");
            }
        }
    }

    #[test]
    fn resolution_of_identity() {
        let sys = simple(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        let gram = sys.gram_metric();
        let b = sys.pairing_matrix(&gram).unwrap();
        // Σ_β r_β B_{αβ} B_{βγ} = B_{αγ}
        let m = sys.len();
        for a in 0..m {
            for g in 0..m {
                let sum: Rational = (0..m)
                    .map(|be| &sys.covectors[be].radicand * &(&b[(a, be)] * &b[(be, g)]))
                    .sum();
                assert_eq!(sum, b[(a, g)]);
            }
        }
    }
}
