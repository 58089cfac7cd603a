//! Rank-one endomorphisms `ρ_α = α ⊗ α̌` and the Kohno commutator
//! property over codimension-two intersections of the hyperplane
//! arrangement.
//!
//! In the radicand encoding `ρ_α = r_α (G⁻¹v_α) v_αᵀ` is rational.
//! Codimension-two subspaces are never represented directly: they
//! correspond one-to-one with the 2-plane groups of the dual enumeration,
//! so the combinatorial pass from [`crate::vee`] is reused.

use crate::matrix::Matrix;
use crate::vee::{ConcreteSystem, PlaneGroup};
use crate::{Error, Result};

/// `ρ = r (G⁻¹v) vᵀ` for one covector.
#[derive(Clone, Debug)]
pub struct RankOneEndo {
    pub matrix: Matrix,
    pub covector: usize,
}

/// Builds the endomorphism family; their sum is exactly the identity for
/// any concrete system with nonsingular Gram form.
pub fn endomorphisms(system: &ConcreteSystem) -> Result<Vec<RankOneEndo>> {
    let gram = system.gram_metric();
    let ginv = gram
        .inverse
        .as_ref()
        .ok_or(Error::SingularGram { rank: gram.rank })?;
    Ok(system
        .covectors
        .iter()
        .enumerate()
        .map(|(idx, c)| {
            let dual = ginv.mul_vec(&c.direction);
            let matrix = Matrix::from_fn(system.dimension, system.dimension, |i, j| {
                &c.radicand * &(&dual[i] * &c.direction[j])
            });
            RankOneEndo {
                matrix,
                covector: idx,
            }
        })
        .collect())
}

/// Outcome of the commutator check on one plane group.
#[derive(Clone, Debug)]
pub enum GroupStatus {
    Satisfied,
    /// `[Σ ρ, ρ_witness] ≠ 0`; the nonzero commutator is kept as evidence.
    Failed { witness: usize, commutator: Matrix },
}

impl GroupStatus {
    pub fn satisfied(&self) -> bool {
        matches!(self, GroupStatus::Satisfied)
    }
}

/// `[Σ_{K∈plane} ρ_K, ρ_J] = 0` for every member J, exactly.
pub fn check_kohno_group(endos: &[RankOneEndo], plane: &PlaneGroup) -> GroupStatus {
    let n = endos
        .first()
        .map_or(0, |e| e.matrix.rows());
    let mut sum = Matrix::zeros(n, n);
    for &k in &plane.members {
        sum = sum.add(&endos[k].matrix);
    }
    for &j in &plane.members {
        let comm = sum.commutator(&endos[j].matrix);
        if !comm.is_zero() {
            return GroupStatus::Failed {
                witness: j,
                commutator: comm,
            };
        }
    }
    GroupStatus::Satisfied
}

#[derive(Clone, Debug)]
pub struct GroupReport {
    pub plane: PlaneGroup,
    pub status: GroupStatus,
}

#[derive(Clone, Debug)]
pub struct KohnoVerdict {
    pub holds: bool,
    pub groups: Vec<GroupReport>,
}

/// Conjunction of the per-plane commutator checks. Intersections lying in
/// at most one hyperplane are trivially satisfied and never enumerated.
pub fn has_kohno_property(system: &ConcreteSystem) -> Result<KohnoVerdict> {
    let endos = endomorphisms(system)?;
    let mut groups = Vec::new();
    let mut holds = true;
    for plane in system.enumerate_planes() {
        let status = check_kohno_group(&endos, &plane);
        holds &= status.satisfied();
        groups.push(GroupReport { plane, status });
    }
    Ok(KohnoVerdict { holds, groups })
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub vee: bool,
    pub kohno: bool,
    pub agree: bool,
    /// Plane bases where exactly one of the two checks failed. Any entry is
    /// a bug witness, never a valid outcome.
    pub discrepancies: Vec<Matrix>,
}

/// Runs both decision procedures independently and compares. The two are
/// provably equivalent for spanning systems of non-collinear covectors, so
/// `agree` must always come back true.
pub fn crosscheck_equivalence(system: &ConcreteSystem) -> Result<EquivalenceReport> {
    let vee = system.is_vee_system()?;
    let kohno = has_kohno_property(system)?;
    let mut discrepancies = Vec::new();
    for (vp, kp) in vee.planes.iter().zip(&kohno.groups) {
        if vp.status.satisfied() != kp.status.satisfied() {
            discrepancies.push(vp.plane.basis.clone());
        }
    }
    Ok(EquivalenceReport {
        vee: vee.holds,
        kohno: kohno.holds,
        agree: vee.holds == kohno.holds,
        discrepancies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{covector_builtin, g12};
    use crate::rational::Rational;
    use std::collections::BTreeMap;

    fn concrete(name: &str) -> ConcreteSystem {
        covector_builtin(name)
            .unwrap()
            .instantiate(&BTreeMap::new())
            .unwrap()
    }

    fn witness_system() -> ConcreteSystem {
        use crate::matrix::Vector;
        use crate::vee::ConcreteCovector;
        ConcreteSystem {
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
        }
    }

    #[test]
    fn endomorphism_invariants() {
        let sys = concrete("B3");
        let endos = endomorphisms(&sys).unwrap();
        let gram = sys.gram_metric();
        let n = sys.dimension;
        let mut sum = Matrix::zeros(n, n);
        for e in &endos {
            // self-adjointness: G ρ symmetric
            assert!(gram.matrix.mul(&e.matrix).is_symmetric());
            // ρ² = trace(ρ) ρ and rank ≤ 1
            let trace: Rational = (0..n).map(|i| e.matrix[(i, i)].clone()).sum();
            assert_eq!(e.matrix.mul(&e.matrix), e.matrix.scale(&trace));
            assert!(e.matrix.rank() <= 1);
            sum = sum.add(&e.matrix);
        }
        assert_eq!(sum, Matrix::identity(n));
    }

    #[test]
    fn root_systems_have_the_property() {
        for name in ["A2", "B2", "G2", "A3", "D3"] {
            let verdict = has_kohno_property(&concrete(name)).unwrap();
            assert!(verdict.holds, "{name}");
        }
    }

    #[test]
    fn witness_fails_and_agrees_with_vee() {
        let sys = witness_system();
        let verdict = has_kohno_property(&sys).unwrap();
        assert!(!verdict.holds);
        let report = crosscheck_equivalence(&sys).unwrap();
        assert!(!report.vee);
        assert!(!report.kohno);
        assert!(report.agree);
        assert!(report.discrepancies.is_empty());
    }

    #[test]
    fn g12_at_one_has_the_property() {
        let sys = g12()
            .instantiate(&BTreeMap::from([("t".to_string(), Rational::one())]))
            .unwrap();
        let report = crosscheck_equivalence(&sys).unwrap();
        assert!(report.vee);
        assert!(report.kohno);
        assert!(report.agree);
    }

    #[test]
    fn rescaling_members_preserves_group_status() {
        // (r, v) -> (r/k², k v) leaves every ρ unchanged
        let mut sys = witness_system();
        let endos_before = endomorphisms(&sys).unwrap();
        let k = Rational::ratio(3, 2);
        let k2 = (&k * &k).recip().unwrap();
        sys.covectors[1].radicand = &sys.covectors[1].radicand * &k2;
        sys.covectors[1].direction = sys.covectors[1].direction.scale(&k);
        let endos_after = endomorphisms(&sys).unwrap();
        for (a, b) in endos_before.iter().zip(&endos_after) {
            assert_eq!(a.matrix, b.matrix);
        }
    }
}
