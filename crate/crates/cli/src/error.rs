use std::fmt;

#[derive(Debug)]
pub enum CliError {
    Parse { line: usize, msg: String },
    Name { line: usize, msg: String },
    Core { line: usize, err: fibercone_core::Error },
    Io(std::io::Error),
    Json(serde_json::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { line, msg } => write!(f, "line {}: {}", line, msg),
            CliError::Name { line, msg } => write!(f, "line {}: {}", line, msg),
            CliError::Core { line, err } => write!(f, "line {}: {}", line, err),
            CliError::Io(e) => write!(f, "io: {}", e),
            CliError::Json(e) => write!(f, "report: {}", e),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e)
    }
}
