//! Exact-arithmetic toolkit for finite covector configurations and the
//! integrable-systems structures they induce.
//!
//! The crate is organised bottom-up:
//!
//! * [`rational`], [`poly`], [`ratfunc`], [`expr`] — arbitrary-precision
//!   rationals, univariate polynomials/rational functions and a small
//!   expression language for parametric radicands;
//! * [`matrix`], [`tensor`] — dense exact linear algebra (fraction-free
//!   elimination) and the rank-3/4 tensors used by the product checks;
//! * [`vee`], [`kohno`] — the covector-system model, the ∨-condition
//!   decision procedure and the Kohno commutator property;
//! * [`frobenius`] — structure constants, potential third derivatives,
//!   exact point checks (WDVV, invariance, Hertling–Manin, unity) and
//!   regularization of degenerate one-parameter families;
//! * [`hamiltonian`], [`spectral`] — the Poisson-bivector conditions for
//!   purely non-local operators and their discrete-loop numerics;
//! * [`multipoly`], [`hierarchy`] — polynomial flat Riemannian
//!   F-manifolds, the principal-hierarchy recursion and the even/odd
//!   Lenard–Magri splitting;
//! * [`catalog`], [`io`], [`sample`] — builtin systems, JSON formats and
//!   seeded sampling helpers.

pub mod catalog;
pub mod expr;
pub mod frobenius;
pub mod hamiltonian;
pub mod hierarchy;
pub mod io;
pub mod kohno;
pub mod matrix;
pub mod multipoly;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod sample;
pub mod spectral;
pub mod tensor;
pub mod vee;

use thiserror::Error;

/// Crate-wide error type. Exact checks never fail silently: every
/// precondition violation carries enough context to report a witness.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown symbol `{name}` at position {pos}")]
    UnknownSymbol { name: String, pos: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational function is identically zero")]
    ZeroFunction,
    #[error("expression still depends on parameter `{0}`")]
    UnboundParameter(String),
    #[error("singular matrix (rank {rank})")]
    Singular { rank: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("covector `{label}`: radicand has a pole at the requested value")]
    RadicandPole { label: String },
    #[error("covectors {0} and {1} are collinear")]
    CollinearPair(usize, usize),
    #[error("directions span only rank {rank} < dimension {dim}")]
    NotSpanning { rank: usize, dim: usize },
    #[error("Gram metric is singular (rank {rank}); use the regularization workflow")]
    SingularGram { rank: usize },
    #[error("point lies on the hyperplane of covector `{label}`")]
    HyperplaneHit { label: String },
    #[error("metric is nonsingular at the requested value; no regularization needed")]
    NoRegularizationNeeded,
    #[error("limit metric is singular; family is not regularizable along this path")]
    Unregularizable,
    #[error("product has no unity (scale factor is zero)")]
    NoUnity,
    #[error("integrand for covector `{label}` has grid mean {mean:e} above tolerance")]
    NonZeroMean { label: String, mean: f64 },
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("recursion compatibility failure: Hessian closedness broken at ({0}, {1}, {2})")]
    Compatibility(usize, usize, usize),
    #[error("WDVV identity fails for the given potential")]
    WdvvFailure,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
