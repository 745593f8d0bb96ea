use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("relation of length < 2: {0}")]
    ShortRelation(String),
    #[error("non-admissible ideal: path basis exceeds {cap} paths")]
    NonAdmissible { cap: usize },
}

/// Error from reading a quiver file, positioned at a 1-based line and column.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("modules live over different algebras")]
    AlgebraMismatch,

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid module map: {0}")]
    InvalidMap(String),

    #[error("inventory cap exceeded: more than {cap} indecomposables (algebra presumed representation-infinite)")]
    InventoryCapExceeded { cap: usize },

    #[error("could not split a decomposable module over this field")]
    SplittingFailed,

    #[error("module is not a direct sum of inventory members")]
    NotInInventory,

    #[error("unknown subcategory member `{0}`")]
    UnknownMember(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not hereditary: Ext^2 does not vanish")]
    NotHereditary,

    #[error("internal check failed: {0}")]
    CheckFailed(String),

    #[error("too many subsets to enumerate: inventory has {0} members")]
    EnumerationTooLarge(usize),

    #[error("json: {0}")]
    Json(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
