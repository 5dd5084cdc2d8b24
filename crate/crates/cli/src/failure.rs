use std::fmt;

/// Why a subcommand stopped; each variant maps to an exit code.
#[derive(Debug)]
pub enum Failure {
    /// Invalid option values (exit 1).
    Usage(String),
    /// Unreadable input, malformed script, out-of-range argument (exit 2).
    Data(String),
    /// An internal guard tripped or the self-check found a mismatch (exit 3).
    Internal(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Data(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    /// Classifies a library error raised while serving `context`.
    pub fn from_index(context: impl fmt::Display, e: dynsa::Error) -> Self {
        if e.is_guard() {
            Failure::Internal(format!("{context}: {e}"))
        } else {
            Failure::Data(format!("{context}: {e}"))
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Data(m) | Failure::Internal(m) => f.write_str(m),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Data(e.to_string())
    }
}
