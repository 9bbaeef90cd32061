//! Exact decision procedures for local unitary (LU) equivalence of bipartite
//! quantum states.
//!
//! A state ρ on C^{d₁}⊗C^{d₂} is represented by its Bloch triple
//! `(W, u, v)` — the correlation matrix and the two local Bloch vectors in a
//! tensor Gell-Mann basis. Local unitary action turns into orthogonal action
//! on the triple, and the crate decides *quasi-LU equivalence* (orthogonal
//! equivalence of triples, necessary for LU and equivalent to it for two
//! qubits) with four independent criteria:
//!
//! - the norm condition `|u₁| = |u₂|` or `|v₁| = |v₂|`,
//! - Smith normal form of the Kronecker pencil `λW + uvᵗ` over K[λ],
//! - the Albert invariant polynomial `det(xI − x₁WWᵗ − x₂uuᵗ − x₃Wvuᵗ)`,
//! - trace identities over the derived family `{WWᵗ, Wvuᵗ, uuᵗ}`, directly
//!   and through the GHS nilpotent block embedding.
//!
//! All computation runs over multi-quadratic extension fields
//! Q(√n₁,…,√nₖ), so every verdict is exact; a floating backend with
//! explicit tolerances is available for approximate comparisons.

pub mod adjoint;
pub mod basis;
pub mod bloch;
pub mod check;
pub mod harness;
pub mod invariants;
pub mod json;
pub mod mat;
pub mod multipoly;
pub mod pencil;
pub mod scalar;

pub use adjoint::{LocalUnitary, OrthogonalWitness, WitnessConvention};
pub use basis::HermitianBasis;
pub use bloch::{BlochTriple, DensityMatrix};
pub use check::{CheckOptions, CheckReport, CriterionKind};
pub use invariants::{Outcome, Verdict, Witness, WordComposition};
pub use mat::Mat;
pub use pencil::{Poly, SmithForm};
pub use scalar::{Backend, ComplexScalar, ExactScalar, Tolerance};

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    ScalarSyntax { position: usize, message: String },

    #[error("zero denominator in rational literal")]
    ZeroDenominator,

    #[error("sqrt(0) is not a field generator")]
    ZeroRadicand,

    #[error("division by zero in the scalar field")]
    DivisionByZero,

    #[error("division by the zero polynomial")]
    ZeroPolynomialDivision,

    #[error("basis dimension must be at least 2, got {0}")]
    BasisDimension(usize),

    #[error("basis element {index} is not Hermitian")]
    NotHermitian { index: usize },

    #[error("basis elements {i} and {j} violate orthonormality: tr(λ_i λ_j) = {value}")]
    NotOrthonormal { i: usize, j: usize, value: String },

    #[error("matrix is not unitary")]
    NotUnitary,

    #[error("matrix is not orthogonal")]
    NotOrthogonal,

    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    #[error("coefficient ({i}, {j}) has nonzero imaginary part {im}; input is not Hermitian")]
    NonRealCoefficient { i: usize, j: usize, im: String },

    #[error("trace must be 1, got {0}")]
    TraceNotOne(String),

    #[error("word index pair ({i}, {j}) violates 1 ≤ i ≤ j ≤ 3")]
    BadWordPair { i: u8, j: u8 },

    #[error("word addresses matrix {index} outside the family of size {len}")]
    WordIndexOutOfRange { index: usize, len: usize },

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim_mismatch<T>(context: impl Into<String>) -> Result<T> {
    Err(Error::DimensionMismatch {
        context: context.into(),
    })
}
