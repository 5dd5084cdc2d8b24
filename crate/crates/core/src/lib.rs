//! A suffix array over a text that changes by single-symbol substitutions.
//!
//! The index trades update time against query time through a parameter `k`:
//! a substitution re-indexes `k` words in the k-words tree, and `SA[r]` /
//! `iSA[i]` queries cost roughly `n/k` LCE calls (up to polylogarithmic
//! factors). BWT symbols, LCP-array entries and suffix-tree navigation are
//! built on top of those two queries.
//!
//! Conventions: positions and ranks are 1-based; the text is followed by `k`
//! sentinels that order above every byte; the suffix array covers the `n`
//! non-empty suffixes.
//!
//! ```
//! use dynsa::{DynamicSuffixArray, Symbol};
//!
//! let mut index = DynamicSuffixArray::new(b"banana", 2).unwrap();
//! assert_eq!(index.suffix_array(1).unwrap(), 2);
//! index.substitute(6, Symbol::byte(b'o')).unwrap();
//! assert_eq!(index.inverse_suffix_array(6).unwrap(), 6);
//! ```

pub mod clusters;
pub mod derived;
pub mod engine;
pub mod error;
pub mod kwords;
pub mod lce;
pub mod oracle;
pub mod text;
mod treap;

pub use derived::SaRange;
pub use engine::{NoProbe, QueryBudget, QueryProbe, SaEngine};
pub use error::{Error, Result};
pub use kwords::{KWordsTree, NodeRef, UpdateStats};
pub use lce::{CounterSnapshot, LceIndex, WindowMatch, WindowOrder, DEFAULT_SEED};
pub use text::{ChangeRecord, DynamicText, Symbol};

/// Text, LCE index and k-words tree kept in lockstep.
#[derive(Debug)]
pub struct DynamicSuffixArray {
    text: DynamicText,
    lce: LceIndex,
    tree: KWordsTree,
    budget: QueryBudget,
}

impl DynamicSuffixArray {
    pub fn new(bytes: &[u8], k: usize) -> Result<Self> {
        Self::with_seed(bytes, k, DEFAULT_SEED)
    }

    pub fn with_seed(bytes: &[u8], k: usize, seed: u64) -> Result<Self> {
        let text = DynamicText::new(bytes, k)?;
        let lce = LceIndex::with_seed(&text, seed);
        let tree = KWordsTree::build(&text, &lce)?;
        Ok(DynamicSuffixArray {
            text,
            lce,
            tree,
            budget: QueryBudget::default(),
        })
    }

    pub fn set_budget(&mut self, budget: QueryBudget) {
        self.budget = budget;
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn k(&self) -> usize {
        self.text.k()
    }

    pub fn version(&self) -> u64 {
        self.text.version()
    }

    pub fn text(&self) -> &DynamicText {
        &self.text
    }

    pub fn lce(&self) -> &LceIndex {
        &self.lce
    }

    pub fn tree(&self) -> &KWordsTree {
        &self.tree
    }

    pub fn counters(&self) -> CounterSnapshot {
        self.lce.counters().snapshot()
    }

    pub fn reset_counters(&self) {
        self.lce.counters().reset();
    }

    pub fn engine(&self) -> SaEngine<'_> {
        SaEngine::new(&self.tree, &self.lce, self.budget).expect("components share a version")
    }

    pub fn substitute(&mut self, pos: usize, sym: Symbol) -> Result<UpdateStats> {
        let change = self.text.substitute(pos, sym)?;
        self.lce.apply_change(&change)?;
        self.tree.apply_change(&change, &self.lce)
    }

    pub fn suffix_array(&self, r: usize) -> Result<usize> {
        self.engine().suffix_array(r)
    }

    pub fn inverse_suffix_array(&self, i: usize) -> Result<usize> {
        self.engine().inverse_suffix_array(i)
    }

    pub fn bwt_at(&self, r: usize) -> Result<Symbol> {
        self.engine().bwt_at(r)
    }

    pub fn lcp_array_at(&self, r: usize) -> Result<usize> {
        self.engine().lcp_array_at(r)
    }

    pub fn st_locate(&self, i: usize, j: usize) -> Result<SaRange> {
        self.engine().st_locate(i, j)
    }

    pub fn st_child(&self, range: SaRange, sym: Symbol) -> Result<Option<SaRange>> {
        self.engine().st_child(range, sym)
    }

    pub fn st_parent(&self, range: SaRange) -> Result<SaRange> {
        self.engine().st_parent(range)
    }

    /// The whole suffix array, one query per rank.
    pub fn full_suffix_array(&self) -> Result<Vec<usize>> {
        let e = self.engine();
        (1..=self.len()).map(|r| e.suffix_array(r)).collect()
    }

    /// The whole inverse suffix array, one query per position.
    pub fn full_inverse_suffix_array(&self) -> Result<Vec<usize>> {
        let e = self.engine();
        (1..=self.len()).map(|i| e.inverse_suffix_array(i)).collect()
    }
}
