//! The mutable text and its padding convention.
//!
//! Positions are 1-based. A text of length `n` with trade-off parameter `k`
//! is conceptually followed by `k` copies of a sentinel that orders above
//! every byte, so each position `1..=n` starts a full `k`-symbol word.

use std::fmt;

use crate::error::{check_pos, Error, Result};

/// A byte widened to make room for the sentinel.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u16);

impl Symbol {
    pub const SENTINEL: Symbol = Symbol(256);

    pub const fn byte(b: u8) -> Self {
        Symbol(b as u16)
    }

    pub const fn ordinal(self) -> u16 {
        self.0
    }

    pub const fn is_sentinel(self) -> bool {
        self.0 == 256
    }

    pub fn as_byte(self) -> Option<u8> {
        u8::try_from(self.0).ok()
    }
}

impl From<u8> for Symbol {
    fn from(b: u8) -> Self {
        Symbol::byte(b)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_byte() {
            None => f.write_str("$"),
            // `$` and `\` are escaped so the output parses back unambiguously.
            Some(b) if b.is_ascii_graphic() && b != b'$' && b != b'\\' => write!(f, "{}", b as char),
            Some(b) => write!(f, "\\x{b:02x}"),
        }
    }
}

/// Emitted by [`DynamicText::substitute`] and consumed by the indexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChangeRecord {
    pub pos: usize,
    pub old: Symbol,
    pub new: Symbol,
    pub version: u64,
}

#[derive(Debug, Clone)]
pub struct DynamicText {
    // padded[0] is position 1; length n + k.
    padded: Vec<Symbol>,
    n: usize,
    k: usize,
    version: u64,
}

impl DynamicText {
    /// Builds a text; `k` is clamped to `[1, n]`.
    pub fn new(bytes: &[u8], k: usize) -> Result<Self> {
        if bytes.is_empty() {
            return Err(Error::EmptyText);
        }
        let n = bytes.len();
        let k = k.clamp(1, n);
        let mut padded: Vec<Symbol> = bytes.iter().copied().map(Symbol::byte).collect();
        padded.resize(n + k, Symbol::SENTINEL);
        Ok(DynamicText {
            padded,
            n,
            k,
            version: 0,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn padded_len(&self) -> usize {
        self.n + self.k
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn char_at(&self, pos: usize) -> Result<Symbol> {
        check_pos(pos, 1, self.padded_len())?;
        Ok(self.padded[pos - 1])
    }

    /// The padded symbol sequence, position 1 at index 0.
    pub fn padded(&self) -> &[Symbol] {
        &self.padded
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        self.padded[..self.n]
            .iter()
            .map(|s| s.as_byte().expect("sentinel inside text body"))
            .collect()
    }

    pub fn substitute(&mut self, pos: usize, sym: Symbol) -> Result<ChangeRecord> {
        if sym.is_sentinel() {
            return Err(Error::SentinelSubstitution);
        }
        check_pos(pos, 1, self.n)?;
        let old = std::mem::replace(&mut self.padded[pos - 1], sym);
        self.version += 1;
        Ok(ChangeRecord {
            pos,
            old,
            new: sym,
            version: self.version,
        })
    }
}
