//! Brute-force reference implementations.
//!
//! Nothing here touches the LCE index, the k-words tree or the engine: every
//! answer comes from direct symbol scans and full sorts of a copied text.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Where the sentinel sorts relative to the bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SentinelOrder {
    #[default]
    Greatest,
    /// Flipped convention, for negative controls only.
    Smallest,
}

/// Immutable copy of a text with `pad` trailing sentinels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSnapshot {
    // Sort keys, index 0 = position 1.
    keys: Vec<u16>,
    bytes: Vec<u8>,
    sentinel: u16,
}

impl OracleSnapshot {
    pub fn new(bytes: &[u8], pad: usize) -> Self {
        Self::with_order(bytes, pad, SentinelOrder::Greatest)
    }

    pub fn with_order(bytes: &[u8], pad: usize, order: SentinelOrder) -> Self {
        let (sentinel, shift) = match order {
            SentinelOrder::Greatest => (256u16, 0u16),
            SentinelOrder::Smallest => (0u16, 1u16),
        };
        let mut keys: Vec<u16> = bytes.iter().map(|&b| b as u16 + shift).collect();
        keys.extend(std::iter::repeat_n(sentinel, pad.max(1)));
        OracleSnapshot {
            keys,
            bytes: bytes.to_vec(),
            sentinel,
        }
    }

    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bytes.is_empty()
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    fn check(&self, pos: usize, hi: usize) -> Result<()> {
        if pos == 0 || pos > hi {
            Err(Error::PositionOutOfRange { pos, lo: 1, hi })
        } else {
            Ok(())
        }
    }

    fn suffix(&self, i: usize) -> &[u16] {
        &self.keys[i - 1..]
    }

    /// Byte at a text position, or `None` for the sentinel.
    pub fn byte_at(&self, pos: usize) -> Option<u8> {
        self.bytes.get(pos.wrapping_sub(1)).copied()
    }

    pub fn lcp(&self, i: usize, j: usize) -> Result<usize> {
        let hi = self.keys.len();
        self.check(i, hi)?;
        self.check(j, hi)?;
        Ok(self
            .suffix(i)
            .iter()
            .zip(self.suffix(j))
            .take_while(|(a, b)| a == b)
            .count())
    }

    pub fn lcs(&self, i: usize, j: usize) -> Result<usize> {
        self.check(i, self.len())?;
        self.check(j, self.len())?;
        Ok(self.keys[..i]
            .iter()
            .rev()
            .zip(self.keys[..j].iter().rev())
            .take_while(|(a, b)| a == b)
            .count())
    }

    pub fn compare(&self, i: usize, j: usize) -> Result<Ordering> {
        self.check(i, self.len())?;
        self.check(j, self.len())?;
        Ok(self.suffix(i).cmp(self.suffix(j)))
    }

    pub fn suffix_array(&self) -> Vec<usize> {
        let mut sa: Vec<usize> = (1..=self.len()).collect();
        sa.sort_by(|&a, &b| self.suffix(a).cmp(self.suffix(b)));
        sa
    }

    /// Symbol preceding each suffix in SA order; `None` is the sentinel.
    pub fn bwt(&self) -> Vec<Option<u8>> {
        self.suffix_array()
            .into_iter()
            .map(|p| if p == 1 { None } else { Some(self.bytes[p - 2]) })
            .collect()
    }

    /// `H[r]` for `r` in `2..=n` (index 0 holds `H[2]`), padding excluded.
    pub fn lcp_array(&self) -> Vec<usize> {
        let sa = self.suffix_array();
        sa.windows(2)
            .map(|w| {
                let mut l = 0;
                while w[0] + l <= self.len()
                    && w[1] + l <= self.len()
                    && self.bytes[w[0] + l - 1] == self.bytes[w[1] + l - 1]
                {
                    l += 1;
                }
                l
            })
            .collect()
    }

    /// Rank range of suffixes starting with `S[i..=j]`, by scanning every
    /// suffix. Panics if the matching ranks are not contiguous.
    pub fn locate(&self, i: usize, j: usize) -> (usize, usize) {
        let pattern = &self.keys[i - 1..j];
        let ranks: Vec<usize> = self
            .suffix_array()
            .into_iter()
            .enumerate()
            .filter(|(_, p)| self.suffix(*p).starts_with(pattern))
            .map(|(r, _)| r + 1)
            .collect();
        let (lo, hi) = (ranks[0], *ranks.last().unwrap());
        assert_eq!(hi - lo + 1, ranks.len(), "prefix matches are not contiguous");
        (lo, hi)
    }

    /// Every node of the suffix tree of the sentinel-terminated suffixes, as
    /// a rank range: the root, each leaf, and each branching prefix.
    pub fn suffix_tree_nodes(&self) -> BTreeSet<(usize, usize)> {
        let n = self.len();
        let sa = self.suffix_array();
        // Terminated suffixes: the suffix plus one sentinel.
        let terminated: Vec<&[u16]> = sa.iter().map(|&p| &self.keys[p - 1..=n]).collect();
        // Common prefix of rank-adjacent terminated suffixes, by scanning.
        let adjacent: Vec<usize> = terminated
            .windows(2)
            .map(|w| w[0].iter().zip(w[1]).take_while(|(a, b)| a == b).count())
            .collect();
        let mut nodes = BTreeSet::new();
        nodes.insert((1, n));
        for (r, s) in terminated.iter().enumerate() {
            nodes.insert((r + 1, r + 1));
            for depth in 1..s.len() {
                // Suffixes sharing the first `depth` symbols are contiguous.
                let mut lo = r;
                while lo > 0 && adjacent[lo - 1] >= depth {
                    lo -= 1;
                }
                let mut hi = r;
                while hi + 1 < n && adjacent[hi] >= depth {
                    hi += 1;
                }
                // Branching iff two members part ways right after `depth`.
                if (lo..hi).any(|q| adjacent[q] == depth) {
                    nodes.insert((lo + 1, hi + 1));
                }
            }
        }
        nodes
    }

    /// Word-class id of each position: positions share an id iff their
    /// padded `k`-symbol words are equal. Ids follow lexicographic word order.
    pub fn kword_classes(&self, k: usize) -> Vec<usize> {
        let n = self.len();
        let word = |p: usize| -> Vec<u16> {
            (0..k)
                .map(|t| self.keys.get(p - 1 + t).copied().unwrap_or(self.sentinel))
                .collect()
        };
        let mut words: Vec<(Vec<u16>, usize)> = (1..=n).map(|p| (word(p), p)).collect();
        words.sort();
        let mut ids = vec![0; n];
        let mut id = 0;
        for (idx, (w, p)) in words.iter().enumerate() {
            if idx > 0 && *w != words[idx - 1].0 {
                id += 1;
            }
            ids[p - 1] = id;
        }
        ids
    }
}

/// Inverse permutation of a 1-based suffix array.
pub fn inverse(sa: &[usize]) -> Result<Vec<usize>> {
    let n = sa.len();
    let mut inv = vec![0; n];
    for (r, &p) in sa.iter().enumerate() {
        if p == 0 || p > n || inv[p - 1] != 0 {
            return Err(Error::NotAPermutation(n));
        }
        inv[p - 1] = r + 1;
    }
    Ok(inv)
}
