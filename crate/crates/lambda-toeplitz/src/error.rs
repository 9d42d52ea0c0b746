use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: character touches coordinate {coord} but the group has dimension {dim}")]
    DimensionMismatch { coord: u32, dim: usize },

    #[error("incompatible group point: {0}")]
    VariantMismatch(String),

    #[error("order comparison ambiguous: real images differ by {diff:e}, within guard tolerance {guard:e}")]
    AmbiguousOrder { diff: f64, guard: f64 },

    #[error("character lies outside the positive cone")]
    CharacterOutsideCone,

    #[error("symbols live over different groups")]
    SpecMismatch,

    #[error("operation requires an analytic symbol (support inside the positive cone)")]
    NonAnalyticSymbol,

    #[error("symbol modulus {value:e} below {tol:e} at grid sample {sample:?}")]
    SymbolVanishesOnGrid {
        value: f64,
        tol: f64,
        sample: Vec<f64>,
    },

    #[error("winding computation failed: {0}")]
    WindingUnresolved(String),

    #[error("formula not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid truncation window: {0}")]
    InvalidWindow(String),

    #[error("probe window too small: symbol support not covered by the window and its inverse")]
    ProbeTooSmall,

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("unknown check: {0}")]
    UnknownCheck(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
