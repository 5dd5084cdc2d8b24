//! The k-words tree: a balanced order-statistics tree over the distinct
//! `k`-symbol words of the padded text. Each node keeps the ordered set of
//! positions where its word occurs; subtree sums count those positions.
//!
//! Words are never stored. A node compares through a representative
//! occurrence and the LCE index: two words are equal iff their LCP is at
//! least `k`.

use std::cmp::Ordering;

use crate::error::{check_pos, check_rank, Error, Result};
use crate::lce::LceIndex;
use crate::text::{ChangeRecord, DynamicText};
use crate::treap::{OrderedSet, Treap, NIL};

/// Orders the word at `i` against the word at `rep`: one LCP call capped at
/// `k`, then one symbol comparison.
fn word_order(i: usize, rep: usize, k: usize, lce: &LceIndex) -> Ordering {
    lce.counters().add_node_visits(1);
    let l = lce.lcp(i, rep).expect("positions in range");
    if l >= k {
        Ordering::Equal
    } else {
        lce.sym(i + l).cmp(&lce.sym(rep + l))
    }
}

/// Opaque handle to a word node, valid until the next update.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeRef(usize);

#[derive(Debug, Clone)]
pub(crate) struct WordNode {
    representative: usize,
    occ: OrderedSet,
}

/// Word removals and insertions performed by one update.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct UpdateStats {
    pub removed: usize,
    pub inserted: usize,
}

#[derive(Debug, Clone)]
pub struct KWordsTree {
    tree: Treap<WordNode>,
    // Arena id of the node holding each position, index 0 = position 1.
    node_of: Vec<usize>,
    k: usize,
    version: u64,
    set_seed: u64,
}

impl KWordsTree {
    pub fn build(text: &DynamicText, lce: &LceIndex) -> Result<Self> {
        if text.version() != lce.version() {
            return Err(Error::VersionMismatch {
                expected: text.version(),
                found: lce.version(),
            });
        }
        let n = text.len();
        let mut t = KWordsTree {
            tree: Treap::new(0x9e37_79b9_7f4a_7c15),
            node_of: vec![NIL; n],
            k: text.k(),
            version: text.version(),
            set_seed: 1,
        };
        for i in 1..=n {
            t.insert_position(i, lce);
        }
        Ok(t)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn text_len(&self) -> usize {
        self.node_of.len()
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn node_count(&self) -> usize {
        self.tree.len()
    }

    /// Sum of all occurrence sets; equals `n` for a consistent tree.
    pub fn item_count(&self) -> usize {
        self.tree.total()
    }

    fn insert_position(&mut self, i: usize, lce: &LceIndex) {
        let k = self.k;
        let fresh = WordNode {
            representative: i,
            occ: OrderedSet::new(self.next_set_seed()),
        };
        let inserted = self
            .tree
            .insert_by(fresh, 1, |node| word_order(i, node.representative, k, lce));
        let id = match inserted {
            Ok(id) => id,
            Err(id) => {
                let w = self.tree.weight(id);
                self.tree.set_weight(id, w + 1);
                id
            }
        };
        self.tree.get_mut(id).occ.insert(i);
        self.node_of[i - 1] = id;
    }

    fn remove_position(&mut self, i: usize) {
        let id = self.node_of[i - 1];
        self.node_of[i - 1] = NIL;
        let node = self.tree.get_mut(id);
        node.occ.remove(i);
        if node.occ.is_empty() {
            self.tree.remove(id);
            return;
        }
        if node.representative == i {
            node.representative = node.occ.first().expect("non-empty");
        }
        let w = self.tree.weight(id);
        self.tree.set_weight(id, w - 1);
    }

    fn next_set_seed(&mut self) -> u64 {
        self.set_seed = self.set_seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.set_seed
    }

    /// Re-indexes the words that start within `k` positions before the edit.
    /// `lce` must already reflect the change.
    pub fn apply_change(&mut self, change: &ChangeRecord, lce: &LceIndex) -> Result<UpdateStats> {
        if change.version != self.version + 1 {
            return Err(Error::VersionMismatch {
                expected: change.version,
                found: self.version,
            });
        }
        if lce.version() != change.version {
            return Err(Error::VersionMismatch {
                expected: change.version,
                found: lce.version(),
            });
        }
        check_pos(change.pos, 1, self.text_len())?;
        let x = change.pos;
        let lo = (x + 1).saturating_sub(self.k).max(1);
        let mut stats = UpdateStats::default();
        // Removal goes through the position map, so no comparison ever sees
        // a word from the old text. Surviving nodes keep representatives
        // outside lo..=x, whose words are unchanged.
        for i in lo..=x {
            self.remove_position(i);
            stats.removed += 1;
        }
        for i in lo..=x {
            self.insert_position(i, lce);
            stats.inserted += 1;
        }
        self.version = change.version;
        Ok(stats)
    }

    /// Locates the node holding position `i` by descending with word
    /// comparisons and sums the occurrences of all lexicographically smaller
    /// words along the way.
    pub fn find_node_and_far_count(&self, i: usize, lce: &LceIndex) -> Result<(NodeRef, usize)> {
        check_pos(i, 1, self.text_len())?;
        let mut far = 0;
        let mut cur = self.tree.root();
        while let Some(id) = cur {
            match word_order(i, self.tree.get(id).representative, self.k, lce) {
                Ordering::Equal => {
                    far += self.tree.left_sum(id);
                    return Ok((NodeRef(id), far));
                }
                Ordering::Less => cur = self.tree.left(id),
                Ordering::Greater => {
                    far += self.tree.left_sum(id) + self.tree.weight(id);
                    cur = self.tree.right(id);
                }
            }
        }
        Err(Error::Guard(format!("position {i} has no word node")))
    }

    /// Node holding the `r`-th smallest suffix and that suffix's rank among
    /// the node's occurrences.
    pub fn select_node(&self, r: usize) -> Result<(NodeRef, usize)> {
        check_rank(r, 1, self.text_len())?;
        self.tree
            .select(r)
            .map(|(id, residual)| (NodeRef(id), residual))
            .ok_or_else(|| Error::Guard(format!("subtree sums do not cover rank {r}")))
    }

    /// Node currently holding position `i`, via the position map.
    pub fn node_of(&self, i: usize) -> Result<NodeRef> {
        check_pos(i, 1, self.text_len())?;
        Ok(NodeRef(self.node_of[i - 1]))
    }

    /// Occurrences in all nodes strictly to the left of `node`.
    pub fn items_before(&self, node: NodeRef) -> usize {
        self.tree.rank_of(node.0)
    }

    fn occ(&self, node: NodeRef) -> &OrderedSet {
        &self.tree.get(node.0).occ
    }

    pub fn representative(&self, node: NodeRef) -> usize {
        self.tree.get(node.0).representative
    }

    pub fn occ_len(&self, node: NodeRef) -> usize {
        self.occ(node).len()
    }

    pub fn occ_count_in_range(&self, node: NodeRef, lo: usize, hi: usize) -> usize {
        if lo > hi {
            return 0;
        }
        let occ = self.occ(node);
        occ.count_less(hi + 1) - occ.count_less(lo)
    }

    pub fn occ_first(&self, node: NodeRef) -> usize {
        self.occ(node).first().expect("word nodes are non-empty")
    }

    pub fn occ_successor(&self, node: NodeRef, x: usize) -> Option<usize> {
        self.occ(node).successor(x)
    }

    pub fn occ_contains(&self, node: NodeRef, x: usize) -> bool {
        self.occ(node).contains(x)
    }

    pub fn occurrences(&self, node: NodeRef) -> Vec<usize> {
        self.occ(node).to_vec()
    }

    /// Nodes in lexicographic word order.
    pub fn nodes(&self) -> Vec<NodeRef> {
        self.tree.in_order().into_iter().map(NodeRef).collect()
    }
}
