use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("text must contain at least one symbol")]
    EmptyText,

    #[error("position {pos} out of range [{lo}, {hi}]")]
    PositionOutOfRange { pos: usize, lo: usize, hi: usize },

    #[error("rank {rank} out of range [{lo}, {hi}]")]
    RankOutOfRange { rank: usize, lo: usize, hi: usize },

    #[error("the sentinel cannot be written into the text")]
    SentinelSubstitution,

    #[error("version mismatch: index is at version {found}, change expects {expected}")]
    VersionMismatch { expected: u64, found: u64 },

    #[error("invalid suffix-array range ({lo}, {hi})")]
    InvalidRange { lo: usize, hi: usize },

    #[error("the root has no parent")]
    RootHasNoParent,

    #[error("LCP array entry 1 is undefined")]
    UndefinedLcpEntry,

    #[error("empty element set")]
    EmptyElements,

    #[error("not a permutation of 1..={0}")]
    NotAPermutation(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A structural guarantee of the index failed to hold. Never expected to fire.
    #[error("internal guard tripped: {0}")]
    Guard(String),
}

impl Error {
    /// True for errors that signal a broken internal invariant rather than bad input.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_pos(pos: usize, lo: usize, hi: usize) -> Result<()> {
    if pos < lo || pos > hi {
        Err(Error::PositionOutOfRange { pos, lo, hi })
    } else {
        Ok(())
    }
}

pub(crate) fn check_rank(rank: usize, lo: usize, hi: usize) -> Result<()> {
    if rank < lo || rank > hi {
        Err(Error::RankOutOfRange { rank, lo, hi })
    } else {
        Ok(())
    }
}
