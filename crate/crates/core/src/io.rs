//! JSON file formats: covector systems and loop specifications.
//!
//! Rationals travel as strings `"p/q"` or `"p"`; radicands are expression
//! strings over the declared parameters.

use serde::{Deserialize, Serialize};

use crate::expr::Expr;
use crate::matrix::Vector;
use crate::rational::Rational;
use crate::sample::LoopSpec;
use crate::vee::{CovectorSystem, ScaledCovector};
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SystemFile {
    pub dimension: usize,
    #[serde(default)]
    pub parameters: Vec<String>,
    pub covectors: Vec<CovectorEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CovectorEntry {
    #[serde(default)]
    pub label: Option<String>,
    pub radicand: String,
    pub direction: Vec<String>,
}

impl SystemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("system file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn into_system(self) -> Result<CovectorSystem> {
        let mut covectors = Vec::with_capacity(self.covectors.len());
        for (i, entry) in self.covectors.into_iter().enumerate() {
            if entry.direction.len() != self.dimension {
                return Err(Error::DimensionMismatch(format!(
                    "covector {i} has {} direction entries, expected {}",
                    entry.direction.len(),
                    self.dimension
                )));
            }
            let radicand = Expr::parse(&entry.radicand, &self.parameters)?;
            let direction = Vector(
                entry
                    .direction
                    .iter()
                    .map(|s| s.parse())
                    .collect::<Result<_>>()?,
            );
            covectors.push(ScaledCovector {
                label: entry.label.unwrap_or_else(|| format!("c{i}")),
                radicand,
                direction,
            });
        }
        Ok(CovectorSystem::new(self.dimension, self.parameters, covectors))
    }

    pub fn from_system(system: &CovectorSystem) -> Self {
        SystemFile {
            dimension: system.dimension,
            parameters: system.parameters.clone(),
            covectors: system
                .covectors
                .iter()
                .map(|c| CovectorEntry {
                    label: Some(c.label.clone()),
                    radicand: c.radicand.to_string(),
                    direction: c.direction.iter().map(Rational::to_string).collect(),
                })
                .collect(),
        }
    }
}

/// Loop input: Fourier coefficients per coordinate. `mean` is a rational
/// string so that admissible base points can be stated exactly.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LoopFile {
    pub coordinates: Vec<LoopCoord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LoopCoord {
    pub coord: usize,
    #[serde(default)]
    pub cos: Vec<f64>,
    #[serde(default)]
    pub sin: Vec<f64>,
    pub mean: String,
}

impl LoopFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("loop file: {e}")))
    }

    pub fn into_spec(self, dimension: usize) -> Result<LoopSpec> {
        let mut means = vec![0.0; dimension];
        let mut cos = vec![vec![]; dimension];
        let mut sin = vec![vec![]; dimension];
        for c in self.coordinates {
            if c.coord == 0 || c.coord > dimension {
                return Err(Error::Invalid(format!(
                    "loop coordinate {} out of range 1..={dimension}",
                    c.coord
                )));
            }
            let mean: Rational = c.mean.parse()?;
            means[c.coord - 1] = mean.to_f64();
            cos[c.coord - 1] = c.cos;
            sin[c.coord - 1] = c.sin;
        }
        Ok(LoopSpec { means, cos, sin })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn system_round_trip() {
        let text = r#"{
            "dimension": 2,
            "parameters": ["t"],
            "covectors": [
                {"label": "a", "radicand": "2*t+1", "direction": ["1", "0"]},
                {"radicand": "1", "direction": ["1/2", "-1"]}
            ]
        }"#;
        let sys = SystemFile::from_json(text).unwrap().into_system().unwrap();
        assert_eq!(sys.dimension, 2);
        assert_eq!(sys.covectors[1].label, "c1");
        let back = SystemFile::from_system(&sys);
        let again = SystemFile::from_json(&back.to_json())
            .unwrap()
            .into_system()
            .unwrap();
        let vals = BTreeMap::from([("t".to_string(), Rational::from_int(3))]);
        let a = sys.instantiate(&vals).unwrap();
        let b = again.instantiate(&vals).unwrap();
        for (x, y) in a.covectors.iter().zip(&b.covectors) {
            assert_eq!(x.radicand, y.radicand);
            assert_eq!(x.direction, y.direction);
        }
    }

    #[test]
    fn bad_files_are_rejected() {
        assert!(SystemFile::from_json("{").is_err());
        let text = r#"{"dimension": 3, "covectors": [{"radicand": "1", "direction": ["1"]}]}"#;
        let err = SystemFile::from_json(text).unwrap().into_system();
        assert!(matches!(err, Err(Error::DimensionMismatch(_))));
        let text = r#"{"dimension": 1, "covectors": [{"radicand": "2*q", "direction": ["1"]}]}"#;
        let err = SystemFile::from_json(text).unwrap().into_system();
        assert!(matches!(err, Err(Error::UnknownSymbol { .. })));
    }

    #[test]
    fn loop_file_maps_coordinates() {
        let text = r#"{"coordinates": [
            {"coord": 1, "cos": [0.5], "sin": [], "mean": "2"},
            {"coord": 2, "cos": [], "sin": [0.25], "mean": "5/2"}
        ]}"#;
        let spec = LoopFile::from_json(text).unwrap().into_spec(2).unwrap();
        assert_eq!(spec.means, vec![2.0, 2.5]);
        assert_eq!(spec.cos[0], vec![0.5]);
        assert_eq!(spec.sin[1], vec![0.25]);
    }
}
