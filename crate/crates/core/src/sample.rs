//! Seeded sampling: admissible rational points, random covector systems
//! for the equivalence fuzz tests, and smooth Fourier loops.

use rand::Rng;

use crate::frobenius::FrobeniusData;
use crate::matrix::Vector;
use crate::rational::Rational;
use crate::vee::{ConcreteCovector, ConcreteSystem};
use crate::{Error, Result};

/// Integer-coordinate point in `[-9, 9]^n` off every hyperplane; retries
/// up to 100 draws. Small numerators keep the exact arithmetic fast.
pub fn admissible_point(rng: &mut impl Rng, data: &FrobeniusData) -> Result<Vector> {
    for _ in 0..100 {
        let u = Vector(
            (0..data.dimension)
                .map(|_| Rational::from_int(rng.gen_range(-9..=9)))
                .collect(),
        );
        if data.check_admissible(&u).is_ok() {
            return Ok(u);
        }
    }
    Err(Error::Invalid(
        "no admissible integer point found in 100 draws".into(),
    ))
}

/// A random concrete system in the given dimension with pairwise
/// non-collinear, spanning directions and a nonsingular Gram form. Every
/// fourth draw is a scaled orthogonal frame, which satisfies the
/// ∨-conditions, so batches exercise both verdicts.
pub fn random_system(rng: &mut impl Rng, dimension: usize, index: usize) -> ConcreteSystem {
    loop {
        let orthogonal_frame = index % 4 == 0;
        let count = if orthogonal_frame {
            dimension
        } else {
            dimension + rng.gen_range(0..=3)
        };
        let mut covectors: Vec<ConcreteCovector> = Vec::new();
        let mut ok = true;
        for i in 0..count {
            let direction = if orthogonal_frame {
                Vector((0..dimension)
                    .map(|j| Rational::from_int(i64::from(i == j)))
                    .collect())
            } else {
                let v = Vector(
                    (0..dimension)
                        .map(|_| Rational::from_int(rng.gen_range(-3..=3)))
                        .collect(),
                );
                if v.is_zero() {
                    ok = false;
                    break;
                }
                v
            };
            let radicand = loop {
                let num = rng.gen_range(-4..=4i64);
                if num != 0 {
                    break Rational::ratio(num, rng.gen_range(1..=2));
                }
            };
            covectors.push(ConcreteCovector {
                label: format!("r{i}"),
                radicand,
                direction,
            });
        }
        if !ok {
            continue;
        }
        let sys = ConcreteSystem {
            dimension,
            covectors,
            dropped: vec![],
        };
        let v = sys.validate();
        if !v.ok() {
            continue;
        }
        if sys.gram_metric().inverse.is_none() {
            continue;
        }
        return sys;
    }
}

/// A smooth loop specification per coordinate: mean plus a short cosine /
/// sine series with geometrically decaying amplitudes.
#[derive(Clone, Debug)]
pub struct LoopSpec {
    pub means: Vec<f64>,
    pub cos: Vec<Vec<f64>>,
    pub sin: Vec<Vec<f64>>,
}

impl LoopSpec {
    pub fn dimension(&self) -> usize {
        self.means.len()
    }

    /// Samples the loop on `n` uniform points of `[0, 2π)`.
    pub fn sample(&self, n: usize) -> Vec<Vec<f64>> {
        let mut out = vec![vec![0.0; n]; self.dimension()];
        for (i, coord) in out.iter_mut().enumerate() {
            for (k, value) in coord.iter_mut().enumerate() {
                let x = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                let mut acc = self.means[i];
                for (m, &a) in self.cos[i].iter().enumerate() {
                    acc += a * ((m + 1) as f64 * x).cos();
                }
                for (m, &b) in self.sin[i].iter().enumerate() {
                    acc += b * ((m + 1) as f64 * x).sin();
                }
                *value = acc;
            }
        }
        out
    }
}

/// Draws a loop around `base` with `modes` harmonics at amplitude
/// `amplitude · decay^m`.
pub fn random_loop(
    rng: &mut impl Rng,
    base: &[f64],
    modes: usize,
    amplitude: f64,
    decay: f64,
) -> LoopSpec {
    let dim = base.len();
    let mut cos = vec![vec![0.0; modes]; dim];
    let mut sin = vec![vec![0.0; modes]; dim];
    for i in 0..dim {
        for m in 0..modes {
            let scale = amplitude * decay.powi(m as i32);
            cos[i][m] = scale * rng.gen_range(-1.0..1.0);
            sin[i][m] = scale * rng.gen_range(-1.0..1.0);
        }
    }
    LoopSpec {
        means: base.to_vec(),
        cos,
        sin,
    }
}

/// A loop all of whose grid points stay clearly off the hyperplanes of
/// `data`: `|v_α · u(x)| > margin` for every covector and grid point.
pub fn admissible_loop(
    rng: &mut impl Rng,
    data: &FrobeniusData,
    grid: usize,
    modes: usize,
    amplitude: f64,
    margin: f64,
) -> Result<LoopSpec> {
    let kernel = data.float_kernel();
    'outer: for _ in 0..200 {
        let base = admissible_point(rng, data)?;
        let spec = random_loop(rng, &base.to_f64(), modes, amplitude, 0.55);
        let values = spec.sample(grid);
        for v in &kernel.directions {
            for k in 0..grid {
                let p: f64 = v.iter().enumerate().map(|(i, c)| c * values[i][k]).sum();
                if p.abs() <= margin {
                    continue 'outer;
                }
            }
        }
        return Ok(spec);
    }
    Err(Error::Invalid(
        "no admissible loop found within 200 draws".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeMap;

    #[test]
    fn admissible_points_avoid_hyperplanes() {
        let sys = crate::catalog::covector_builtin("B3")
            .unwrap()
            .instantiate(&BTreeMap::new())
            .unwrap();
        let data = FrobeniusData::from_system(&sys).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..20 {
            let u = admissible_point(&mut rng, &data).unwrap();
            assert!(data.check_admissible(&u).is_ok());
        }
    }

    #[test]
    fn random_systems_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for i in 0..12 {
            let dim = 3 + (i % 3);
            let sys = random_system(&mut rng, dim, i);
            assert!(sys.validate().ok());
            assert!(sys.gram_metric().inverse.is_some());
        }
    }

    #[test]
    fn loops_are_deterministic_per_seed() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        let la = random_loop(&mut a, &[2.0, 3.0], 3, 0.3, 0.5);
        let lb = random_loop(&mut b, &[2.0, 3.0], 3, 0.3, 0.5);
        assert_eq!(la.sample(16), lb.sample(16));
    }
}
