//! Error type shared across the library and the CLI exit-code mapping.

use thiserror::Error;

/// Everything that can go wrong, grouped so the CLI can map each variant
/// to a stable exit code: input errors (1), exceeded caps (2), and
/// violated structural guarantees (3).
#[derive(Debug, Error)]
pub enum Error {
    #[error("poset must have at least one element")]
    EmptyPoset,

    #[error("element {element} out of range 1..={n}")]
    ElementOutOfRange { element: u32, n: u32 },

    #[error("cover relations contain a cycle through element {element}")]
    CycleDetected { element: u32 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{msg}")]
    Invalid { msg: String },

    #[error("set {set} is not down-closed (missing {missing})")]
    NotDownClosed { set: String, missing: u32 },

    #[error("{context}: ideal must be nonempty")]
    EmptyIdeal { context: &'static str },

    #[error("{set} is not a connected order ideal of the poset")]
    NotAConnectedIdeal { set: String },

    #[error("{set} is not a member of the independent set")]
    NotAMember { set: String },

    #[error("component id {id} out of range (graph has {count} components)")]
    BadComponent { id: usize, count: usize },

    #[error("operation requires a naturally labeled poset; relabel first")]
    NotNaturallyLabeled,

    #[error("{op} requires a global maximum independent set")]
    RequiresGlobalSet { op: &'static str },

    #[error("ideal graph is not a forest with duplications (a vertex has degree > 1)")]
    NotForestWithDuplications,

    #[error("not a valid forest over the poset: {reason}")]
    InvalidForest { reason: String },

    #[error("{stage}: cap of {limit} exceeded (reached {reached})")]
    CapExceeded {
        stage: &'static str,
        limit: u64,
        reached: u64,
    },

    #[error("structural guarantee violated in {check}: {details}")]
    TheoremViolation { check: &'static str, details: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code the CLI reports for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } => 2,
            Error::TheoremViolation { .. } => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
