//! Exact-arithmetic toolkit for the odd unitary analogue of the Gram–Schmidt
//! construction: rings with a pseudo-involution, dense exact matrices, odd
//! quadratic spaces with ESD transvections, the Vaserstein-type matrices
//! θ(v)/η(v) with their elementary factorizations, and a seeded verification
//! harness that checks every identity over multiple ring instances.
//!
//! Entry points:
//! - [`ring::Ring`] — shipped ring instances (`int`, `mod:n`, `quad:D`, `twisted`).
//! - [`matrix::Mat`] — dense exact matrices, elementary matrices, division-free inversion.
//! - [`quadratic::OddQuadraticSpace`] — forms, Heisenberg group, ESD transvections.
//! - [`vaserstein::HyperbolicFormData`] — Ψ block data, θ(v), η(v), L(v); symplectic α/β.
//! - [`words`] — factorizations into elementary matrices and θ/η generator words.
//! - [`campaign`] — seeded, parallel verification campaigns with replayable reports.
//!
//! Runnable walkthroughs for each capability live under `examples/`.

pub mod campaign;
pub mod cli;
pub mod io;
pub mod matrix;
pub mod quadratic;
pub mod ring;
pub mod vaserstein;
pub mod words;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ring descriptor: {0}")]
    Descriptor(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("ring mismatch: operation mixes `{left}` and `{right}`")]
    RingMismatch { left: String, right: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("elementary position ({i},{i}) is on the diagonal")]
    DiagonalIndex { i: usize },
    #[error("not invertible over this ring: determinant {determinant} is not a unit")]
    NotInvertible { determinant: String },
    #[error("undecidable parameter membership: no L_min decider for ring `{ring}`")]
    UndecidableParam { ring: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("file format error: {0}")]
    Format(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
