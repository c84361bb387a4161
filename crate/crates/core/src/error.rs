use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("fresh atom `{0}` already occurs in the formula")]
    FreshCollision(String),
    #[error("encoding template `{0}` must be implicational over atoms a and b")]
    BadEncoding(String),
    #[error("{count} atoms exceed the truth-table limit of {limit}")]
    TooManyAtoms { count: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequentError {
    #[error("malformed instantiation at {path:?}: {reason}")]
    MalformedInstantiation { path: Vec<usize>, reason: String },
    #[error("rule {rule} cannot be applied backwards: {reason}")]
    NotApplicable { rule: &'static str, reason: String },
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("unknown calculus `{0}`")]
    UnknownCalculus(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NdError {
    #[error("plug concludes `{found}` but the assumption is `{expected}`")]
    RootMismatch { expected: String, found: String },
    #[error("label {0} would be captured after grafting")]
    LabelCapture(u32),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("unknown profile `{0}`")]
    UnknownProfile(String),
    #[error("malformed derivation: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("input derivation is not valid: {0}")]
    InvalidInput(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DagError {
    #[error("cycle through node {0}")]
    Cycle(usize),
    #[error("node {node} references missing child {child}")]
    MissingChild { node: usize, child: usize },
    #[error("malformed dag: {0}")]
    Malformed(String),
}

/// Errors surfaced at the library boundary (file formats, CLI).
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Sequent(#[from] SequentError),
    #[error(transparent)]
    Nd(#[from] NdError),
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Dag(#[from] DagError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
