use thiserror::Error;

#[derive(Error, Debug, Clone)]
pub enum CkError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("undeclared generator '{name}' at line {line}")]
    UndeclaredGenerator { line: usize, name: String },

    #[error("{0}")]
    Domain(String),

    #[error("nilpotency class {requested} exceeds the configured bound {bound}")]
    ClassBound { requested: usize, bound: usize },

    #[error("no certificate: {0}")]
    NoCertificate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("cancelled")]
    Cancelled,
}

impl CkError {
    pub fn syntax(line: usize, col: usize, msg: &str) -> Self {
        CkError::Syntax { line, col, msg: msg.to_string() }
    }
}
