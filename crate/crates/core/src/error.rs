use thiserror::Error;

use crate::weyl::{AlgebraId, Weight};

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown algebra `{0}` (expected one of A1, A2, C2, G2)")]
    UnknownAlgebra(String),

    #[error("generator index {index} is out of range for {algebra} (rank {rank})")]
    GeneratorOutOfRange {
        algebra: AlgebraId,
        index: usize,
        rank: usize,
    },

    #[error("Weyl group closure for {algebra} exceeded {cap} elements")]
    ClosureOverflow { algebra: AlgebraId, cap: usize },

    #[error("weight {weight} has {got} coordinates, {algebra} needs {rank}")]
    RankMismatch {
        algebra: AlgebraId,
        weight: Weight,
        got: usize,
        rank: usize,
    },

    #[error("weight {0} is not dominant")]
    NonDominant(Weight),

    #[error("dominance reduction of {0} did not terminate")]
    DominanceGuard(Weight),

    #[error("grading of {algebra} does not make {index} the strict top term")]
    Grading { algebra: AlgebraId, index: Weight },

    #[error("trigonometric polynomial is not Weyl invariant: {0}")]
    NotInvariant(String),

    #[error("lifting left an imaginary residue on orbit {0}")]
    ImaginaryResidue(Weight),

    #[error("cannot canonicalize the zero vector")]
    ZeroVector,

    #[error("operator order must be at least {min}, got {got}")]
    OrderTooSmall { min: usize, got: usize },

    #[error("symbol vector has length {got}, order {order} on {algebra} needs {expected}")]
    SymbolLength {
        algebra: AlgebraId,
        order: usize,
        got: usize,
        expected: usize,
    },

    #[error("symbol {symbol} is not fixed by the Weyl group of {algebra}")]
    NotFixed { algebra: AlgebraId, symbol: String },

    #[error("chain-rule derivation is implemented for second-order operators only, got order {0}")]
    ChainRuleOrder(usize),

    #[error("degree bound must be at least 1, got {0}")]
    InvalidDegreeBound(usize),

    #[error("no operator with coefficient degree <= {cap} (needs degree {needed})")]
    DegreeCap { needed: usize, cap: usize },

    #[error("eigen-relation fails at index {index}: residual {residual}")]
    Inconsistent { index: Weight, residual: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("reference data: {0}")]
    Reference(String),
}

pub type Result<T> = std::result::Result<T, Error>;
