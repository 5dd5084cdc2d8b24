//! BWT lookup, LCP-array lookup and suffix-tree navigation, each a handful
//! of suffix-array lookups plus LCE calls.
//!
//! A suffix-tree node is addressed by its range of suffix-array ranks.

use std::fmt;

use crate::engine::SaEngine;
use crate::error::{check_pos, check_rank, Error, Result};
use crate::lce::WindowOrder;
use crate::text::Symbol;

/// Inclusive, 1-based range of suffix-array ranks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SaRange {
    pub lo: usize,
    pub hi: usize,
}

impl SaRange {
    pub fn new(lo: usize, hi: usize) -> Self {
        SaRange { lo, hi }
    }

    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_leaf(&self) -> bool {
        self.lo == self.hi
    }
}

impl fmt::Display for SaRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.lo, self.hi)
    }
}

/// First index in `lo..hi` where `pred` turns false, assuming it is
/// monotone true-then-false; `hi` if it never does.
fn partition_point(mut lo: usize, mut hi: usize, mut pred: impl FnMut(usize) -> Result<bool>) -> Result<usize> {
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid)? {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

impl SaEngine<'_> {
    fn check_range(&self, range: SaRange) -> Result<()> {
        if range.lo < 1 || range.lo > range.hi || range.hi > self.len() {
            return Err(Error::InvalidRange {
                lo: range.lo,
                hi: range.hi,
            });
        }
        Ok(())
    }

    /// Symbol preceding the rank-`r` suffix; the sentinel for position 1.
    pub fn bwt_at(&self, r: usize) -> Result<Symbol> {
        let p = self.suffix_array(r)?;
        Ok(if p > 1 {
            self.lce().sym(p - 1)
        } else {
            Symbol::SENTINEL
        })
    }

    /// LCP of the suffixes at ranks `r - 1` and `r`, sentinel padding excluded.
    pub fn lcp_array_at(&self, r: usize) -> Result<usize> {
        check_rank(r, 1, self.len())?;
        if r == 1 {
            return Err(Error::UndefinedLcpEntry);
        }
        let a = self.suffix_array(r - 1)?;
        let b = self.suffix_array(r)?;
        let l = self.lce().lcp(a, b)?;
        Ok(l.min(self.len() + 1 - a.max(b)))
    }

    /// Rank range of all suffixes that start with `S[i..=j]`.
    pub fn st_locate(&self, i: usize, j: usize) -> Result<SaRange> {
        let n = self.len();
        check_pos(i, 1, n)?;
        check_pos(j, i, n)?;
        let anchor = self.inverse_suffix_array(i)?;
        let has_prefix = |r: usize| -> Result<bool> {
            let p = self.suffix_array(r)?;
            Ok(self.lce().compare_suffix_with_window(p, i, j)?.order == WindowOrder::Prefix)
        };
        // Ranks below the anchor: false (no prefix) then true.
        let lo = partition_point(1, anchor, |r| Ok(!has_prefix(r)?))?;
        let hi = partition_point(anchor + 1, n + 1, has_prefix)? - 1;
        Ok(SaRange { lo, hi })
    }

    /// String depth of the node: the common prefix of its extreme suffixes.
    fn node_depth(&self, range: SaRange) -> Result<(usize, usize)> {
        let a = self.suffix_array(range.lo)?;
        if range.is_leaf() {
            return Ok((a, self.len() + 1 - a));
        }
        let b = self.suffix_array(range.hi)?;
        Ok((a, self.lce().lcp(a, b)?))
    }

    /// Child reached by the edge whose label starts with `sym`. Leaves have
    /// no children.
    pub fn st_child(&self, range: SaRange, sym: Symbol) -> Result<Option<SaRange>> {
        self.check_range(range)?;
        if range.is_leaf() {
            return Ok(None);
        }
        let (_, depth) = self.node_depth(range)?;
        let symbol_at = |r: usize| -> Result<Symbol> {
            let p = self.suffix_array(r)?;
            Ok(self.lce().sym(p + depth))
        };
        let lo = partition_point(range.lo, range.hi + 1, |r| Ok(symbol_at(r)? < sym))?;
        if lo > range.hi || symbol_at(lo)? != sym {
            return Ok(None);
        }
        let hi = partition_point(lo + 1, range.hi + 1, |r| Ok(symbol_at(r)? == sym))? - 1;
        Ok(Some(SaRange { lo, hi }))
    }

    pub fn st_parent(&self, range: SaRange) -> Result<SaRange> {
        self.check_range(range)?;
        let n = self.len();
        if range.lo == 1 && range.hi == n {
            return Err(Error::RootHasNoParent);
        }
        let x = self.suffix_array(range.lo)?;
        let mut depth = 0;
        if range.lo > 1 {
            depth = depth.max(self.lce().lcp(self.suffix_array(range.lo - 1)?, x)?);
        }
        if range.hi < n {
            depth = depth.max(self.lce().lcp(self.suffix_array(range.hi + 1)?, x)?);
        }
        if depth == 0 {
            return Ok(SaRange { lo: 1, hi: n });
        }
        self.st_locate(x, x + depth - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::QueryBudget;
    use crate::kwords::KWordsTree;
    use crate::lce::LceIndex;
    use crate::text::DynamicText;

    fn with_engine(bytes: &[u8], k: usize, f: impl FnOnce(SaEngine<'_>)) {
        let t = DynamicText::new(bytes, k).unwrap();
        let l = LceIndex::new(&t);
        let kt = KWordsTree::build(&t, &l).unwrap();
        f(SaEngine::new(&kt, &l, QueryBudget::default()).unwrap());
    }

    #[test]
    fn banana_bwt_and_lcp_array() {
        with_engine(b"banana", 2, |e| {
            assert_eq!(e.bwt_at(4).unwrap(), Symbol::SENTINEL);
            assert_eq!(e.bwt_at(1).unwrap(), Symbol::byte(b'b'));
            assert_eq!(e.lcp_array_at(2).unwrap(), 3);
            assert_eq!(e.lcp_array_at(4).unwrap(), 0);
            assert_eq!(e.lcp_array_at(1).unwrap_err(), Error::UndefinedLcpEntry);
            assert!(e.lcp_array_at(7).is_err());
        });
        with_engine(b"a", 1, |e| {
            assert_eq!(e.bwt_at(1).unwrap(), Symbol::SENTINEL);
        });
    }

    #[test]
    fn banana_locate() {
        with_engine(b"banana", 2, |e| {
            assert_eq!(e.st_locate(2, 4).unwrap(), SaRange::new(1, 2));
            assert_eq!(e.st_locate(1, 1).unwrap(), SaRange::new(4, 4));
            // A whole suffix is a singleton unless it prefixes a longer one.
            for i in [1, 2, 3] {
                let r = e.inverse_suffix_array(i).unwrap();
                assert_eq!(e.st_locate(i, 6).unwrap(), SaRange::new(r, r));
            }
            assert_eq!(e.st_locate(4, 6).unwrap(), SaRange::new(1, 2));
            assert_eq!(e.st_locate(6, 6).unwrap(), SaRange::new(1, 3));
            assert!(e.st_locate(3, 2).is_err());
        });
    }

    #[test]
    fn banana_navigation() {
        with_engine(b"banana", 2, |e| {
            let a = SaRange::new(1, 3);
            assert_eq!(e.st_child(a, Symbol::byte(b'n')).unwrap(), Some(SaRange::new(1, 2)));
            assert_eq!(e.st_child(a, Symbol::SENTINEL).unwrap(), Some(SaRange::new(3, 3)));
            assert_eq!(e.st_child(a, Symbol::byte(b'z')).unwrap(), None);
            assert_eq!(e.st_child(SaRange::new(4, 4), Symbol::SENTINEL).unwrap(), None);

            assert_eq!(e.st_parent(SaRange::new(1, 2)).unwrap(), SaRange::new(1, 3));
            assert_eq!(e.st_parent(SaRange::new(4, 4)).unwrap(), SaRange::new(1, 6));
            assert_eq!(e.st_parent(SaRange::new(1, 6)).unwrap_err(), Error::RootHasNoParent);
            assert!(e.st_parent(SaRange::new(3, 2)).is_err());
            assert!(e.st_child(SaRange::new(0, 2), Symbol::byte(b'a')).is_err());
        });
    }
}
