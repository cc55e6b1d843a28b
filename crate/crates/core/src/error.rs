use thiserror::Error;

/// Errors raised anywhere in the analysis pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Network file could not be parsed.
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },

    /// Matrix shapes incompatible with the requested operation.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// Input violates an operation precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Sampled rate constants kept producing disagreeing ranks.
    #[error("non-generic rate constants: {0}")]
    NonGeneric(String),

    /// Liftings kept producing ties in the cell feasibility tests.
    #[error("lifting retry budget exhausted after {0} attempts")]
    RetryBudgetExhausted(usize),

    /// Input exceeds a documented size cap.
    #[error("capability cap exceeded: {0}")]
    Capability(String),

    /// Fixed-width integer arithmetic in the hull code overflowed.
    #[error("integer overflow in exact geometry")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown species `{0}`")]
    UnknownSpecies(String),
    #[error("duplicate species `{0}`")]
    DuplicateSpecies(String),
    #[error("stoichiometric coefficient must be a positive integer, got `{0}`")]
    NonPositiveCoefficient(String),
    #[error("reaction source equals target (loop)")]
    Loop,
    #[error("duplicate reaction between the same ordered pair of complexes")]
    DuplicateReaction,
    #[error("missing `species:` header")]
    MissingHeader,
    #[error("complex lists the same species twice: `{0}`")]
    RepeatedSpeciesInComplex(String),
}

pub type Result<T> = std::result::Result<T, Error>;
