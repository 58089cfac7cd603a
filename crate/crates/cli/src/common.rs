//! Shared input handling: system sources, parameter binding, the
//! regularization path, and report emission.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use veesys_core::catalog;
use veesys_core::expr::Expr;
use veesys_core::frobenius::FrobeniusData;
use veesys_core::io::SystemFile;
use veesys_core::rational::Rational;
use veesys_core::vee::{ConcreteSystem, CovectorSystem};

/// Input/usage problems exit with code 2, failed checks with code 1.
pub enum CliError {
    Input(String),
    CheckFailed,
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }
}

impl From<veesys_core::Error> for CliError {
    fn from(e: veesys_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult = Result<(), CliError>;

#[derive(Args, Debug)]
pub struct SourceArgs {
    /// Covector-system JSON file
    #[arg(long, value_name = "FILE", conflicts_with = "builtin")]
    pub input: Option<PathBuf>,
    /// Name of a builtin system (see `list-builtin`)
    #[arg(long, value_name = "NAME")]
    pub builtin: Option<String>,
    /// Bind a parameter, e.g. `--param t=1/2` (repeatable)
    #[arg(long = "param", value_name = "NAME=P/Q")]
    pub params: Vec<String>,
}

impl SourceArgs {
    pub fn load_system(&self) -> Result<CovectorSystem, CliError> {
        match (&self.input, &self.builtin) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
                Ok(SystemFile::from_json(&text)?.into_system()?)
            }
            (None, Some(name)) => Ok(catalog::covector_builtin(name)?),
            _ => Err(CliError::input(
                "exactly one of --input or --builtin is required",
            )),
        }
    }

    pub fn parameter_values(&self) -> Result<BTreeMap<String, Rational>, CliError> {
        parse_bindings(&self.params)
    }

    /// Loads, validates and instantiates. Validation failures are input
    /// errors: the data cannot feed any check.
    pub fn concrete(&self) -> Result<ConcreteSystem, CliError> {
        let system = self.load_system()?;
        if let Some(err) = system.validate().first_error() {
            return Err(CliError::Input(err.to_string()));
        }
        let sys = system.instantiate(&self.parameter_values()?)?;
        Ok(sys)
    }
}

pub fn parse_bindings(raw: &[String]) -> Result<BTreeMap<String, Rational>, CliError> {
    let mut out = BTreeMap::new();
    for item in raw {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::input(format!("expected NAME=P/Q, got `{item}`")))?;
        let value: Rational = value
            .trim()
            .parse()
            .map_err(|e: veesys_core::Error| CliError::Input(e.to_string()))?;
        out.insert(name.trim().to_string(), value);
    }
    Ok(out)
}

#[derive(Args, Debug)]
pub struct RegularizeArgs {
    /// Degenerate path `name=expression`, e.g. `s=-t-1`; the left-hand
    /// parameter stays free and approaches the evaluated right-hand side
    #[arg(long, value_name = "NAME=EXPR")]
    pub path: Option<String>,
    /// Pin remaining parameters for the path, e.g. `--at t=1` (repeatable)
    #[arg(long = "at", value_name = "NAME=P/Q")]
    pub at: Vec<String>,
    /// Rational rescaling of the limit metric (default 1)
    #[arg(long, value_name = "P/Q")]
    pub scale: Option<String>,
}

impl RegularizeArgs {
    pub fn is_active(&self) -> bool {
        self.path.is_some()
    }

    pub fn scale_value(&self) -> Result<Rational, CliError> {
        match &self.scale {
            None => Ok(Rational::one()),
            Some(s) => s
                .parse()
                .map_err(|e: veesys_core::Error| CliError::Input(e.to_string())),
        }
    }

    /// Builds the regularized data: pins the `--at` values, evaluates the
    /// path equation to the degenerate parameter value, and extracts the
    /// limit metric.
    pub fn regularize(&self, system: &CovectorSystem) -> Result<FrobeniusData, CliError> {
        let Some(path) = &self.path else {
            return Err(CliError::input("--path is required for regularization"));
        };
        let (name, rhs) = path
            .split_once('=')
            .ok_or_else(|| CliError::input(format!("expected NAME=EXPR, got `{path}`")))?;
        let name = name.trim();
        if !system.parameters.iter().any(|p| p == name) {
            return Err(CliError::input(format!(
                "path parameter `{name}` is not a parameter of the system"
            )));
        }
        let pinned = parse_bindings(&self.at)?;
        if pinned.contains_key(name) {
            return Err(CliError::input(format!(
                "path parameter `{name}` must not be pinned by --at"
            )));
        }
        let rhs = Expr::parse(rhs, &system.parameters)?;
        let t0 = rhs.eval(&pinned).map_err(|e| match e {
            veesys_core::Error::UnboundParameter(p) => {
                CliError::input(format!("path value still depends on `{p}`; pin it with --at"))
            }
            other => CliError::Input(other.to_string()),
        })?;
        let family = system.bind(&pinned);
        if family.parameters.len() != 1 {
            return Err(CliError::input(format!(
                "after --at bindings the family must have exactly one free parameter, found {}",
                family.parameters.len()
            )));
        }
        Ok(FrobeniusData::regularize(&family, &t0, &self.scale_value()?)?)
    }
}

/// Loads Frobenius data from a source, taking the regularized route when
/// `--path` is given.
pub fn load_frobenius(
    source: &SourceArgs,
    reg: &RegularizeArgs,
) -> Result<FrobeniusData, CliError> {
    if reg.is_active() {
        let system = source.load_system()?;
        if let Some(err) = system.validate().first_error() {
            return Err(CliError::Input(err.to_string()));
        }
        reg.regularize(&system)
    } else {
        let sys = source.concrete()?;
        Ok(FrobeniusData::from_system(&sys)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

impl OutputArgs {
    /// Prints either the serialized report or the rendered text lines.
    pub fn emit<R: Serialize>(&self, report: &R, text: impl FnOnce() -> String) {
        match self.format {
            Format::Json => {
                println!(
                    "{}",
                    serde_json::to_string_pretty(report).expect("report is serializable")
                );
            }
            Format::Text => println!("{}", text()),
        }
    }
}

/// Matrix of rational strings for reports.
pub fn matrix_strings(m: &veesys_core::matrix::Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect())
        .collect()
}

pub fn render_matrix(rows: &[Vec<String>]) -> String {
    rows.iter()
        .map(|row| format!("  [{}]", row.join(", ")))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn gate(pass: bool) -> CliResult {
    if pass {
        Ok(())
    } else {
        Err(CliError::CheckFailed)
    }
}
