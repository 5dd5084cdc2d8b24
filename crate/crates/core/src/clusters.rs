//! Compressed view of one word node's occurrences.
//!
//! Scanning the occurrence set in increasing order, two neighbours closer
//! than `k/2` lie in a run whose period is their gap; every occurrence of the
//! word inside that run is then an arithmetic progression and is emitted as a
//! single [`Cluster`]. Consecutive elements start at least `ceil(k/2)` apart,
//! so a node decomposes into `O(n/k)` elements.
//!
//! The suffixes of a cluster are lexicographically monotone along the
//! progression, and comparing a query suffix against every member takes a
//! constant number of LCE calls.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::kwords::{KWordsTree, NodeRef};
use crate::lce::LceIndex;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Suffix order increases with start position.
    Increasing,
    Decreasing,
}

/// Occurrences `first, first + period, ...` (`count` of them) inside one
/// maximal run of the given period ending at `run_end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cluster {
    pub first: usize,
    pub period: usize,
    pub count: usize,
    pub run_end: usize,
    pub direction: Direction,
}

impl Cluster {
    pub fn member(&self, t: usize) -> usize {
        self.first + t * self.period
    }

    pub fn last(&self) -> usize {
        self.member(self.count - 1)
    }

    /// Index of `pos` in the progression, if it is a member.
    pub fn index_of(&self, pos: usize) -> Option<usize> {
        if pos < self.first || !(pos - self.first).is_multiple_of(self.period) {
            return None;
        }
        let t = (pos - self.first) / self.period;
        (t < self.count).then_some(t)
    }

    /// Positional middle of the progression, which is also a lexicographic
    /// median because the member suffixes are monotone.
    pub fn median(&self) -> usize {
        self.member((self.count - 1) / 2)
    }

    /// Members `t0 .. t0 + count` as a cluster over the same run.
    fn slice(&self, t0: usize, count: usize) -> Option<Element> {
        (count > 0).then(|| {
            Element::Cluster(Cluster {
                first: self.member(t0),
                count,
                ..*self
            })
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Element {
    Singleton(usize),
    Cluster(Cluster),
}

impl Element {
    pub fn size(&self) -> usize {
        match self {
            Element::Singleton(_) => 1,
            Element::Cluster(c) => c.count,
        }
    }

    pub fn smallest(&self) -> usize {
        match self {
            Element::Singleton(p) => *p,
            Element::Cluster(c) => c.first,
        }
    }

    pub fn largest(&self) -> usize {
        match self {
            Element::Singleton(p) => *p,
            Element::Cluster(c) => c.last(),
        }
    }

    pub fn contains(&self, pos: usize) -> bool {
        match self {
            Element::Singleton(p) => *p == pos,
            Element::Cluster(c) => c.index_of(pos).is_some(),
        }
    }

    pub fn members(&self) -> Vec<usize> {
        match self {
            Element::Singleton(p) => vec![*p],
            Element::Cluster(c) => (0..c.count).map(|t| c.member(t)).collect(),
        }
    }

    /// Pivot candidate: the position itself, or a cluster's median.
    pub fn candidate(&self) -> usize {
        match self {
            Element::Singleton(p) => *p,
            Element::Cluster(c) => c.median(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterRepr {
    pub elements: Vec<Element>,
    pub total: usize,
}

impl ClusterRepr {
    pub fn members(&self) -> Vec<usize> {
        self.elements.iter().flat_map(|e| e.members()).collect()
    }

    /// Upper bound on the element count for a text of length `n`.
    pub fn size_bound(n: usize, k: usize) -> usize {
        2 * n.div_ceil(k) + 2
    }
}

/// Number of positions from `i` that stay inside the maximal period-`p` run
/// through `i`: `lcp(i, i + p) + p`.
pub fn run_extent_from(i: usize, p: usize, lce: &LceIndex) -> Result<usize> {
    if p == 0 {
        return Err(Error::Precondition("period must be positive".into()));
    }
    Ok(lce.lcp(i, i + p)? + p)
}

pub fn decompose(tree: &KWordsTree, node: NodeRef, lce: &LceIndex) -> Result<ClusterRepr> {
    let k = tree.k();
    let mut elements = Vec::new();
    let mut total = 0;
    let mut cur = Some(tree.occ_first(node));
    while let Some(a) = cur {
        let next = tree.occ_successor(node, a);
        let Some(b) = next.filter(|&b| 2 * (b - a) < k) else {
            elements.push(Element::Singleton(a));
            total += 1;
            cur = next;
            continue;
        };
        let p = b - a;
        let run_end = a + run_extent_from(a, p, lce)? - 1;
        if a > 1 {
            // The run may reach left of `a`, but never far enough to hold
            // another occurrence, which the scan would have met first.
            let left = lce.lcs(a - 1, a + p - 1)?;
            if left >= p {
                return Err(Error::Guard(format!(
                    "occurrence {a} is not the leftmost of its period-{p} run"
                )));
            }
        }
        if run_end + 1 < a + k {
            return Err(Error::Guard(format!(
                "run of period {p} at {a} ends at {run_end}, shorter than a word"
            )));
        }
        let count = (run_end + 1 - k - a) / p + 1;
        let last = a + (count - 1) * p;
        if tree.occ_count_in_range(node, a, last) != count
            || !tree.occ_contains(node, last)
        {
            return Err(Error::Guard(format!(
                "cluster ({a}, p={p}, count={count}) disagrees with the occurrence set"
            )));
        }
        let direction = if lce.sym(run_end + 1 - p) < lce.sym(run_end + 1) {
            Direction::Increasing
        } else {
            Direction::Decreasing
        };
        elements.push(Element::Cluster(Cluster {
            first: a,
            period: p,
            count,
            run_end,
            direction,
        }));
        total += count;
        cur = tree.occ_successor(node, last);
    }
    lce.counters().add_elements_scanned(elements.len() as u64);
    Ok(ClusterRepr { elements, total })
}

/// Members of `c` other than `i` whose suffix is smaller than suffix `i`.
///
/// With `m_i` the run extent from `i` and `m_t = run_end - i_t + 1`, a member
/// with `m_t > m_i` first differs from `i` at offset `m_i`, one with
/// `m_t < m_i` at offset `m_t`; each class is decided by one symbol pair. At
/// most one member has `m_t = m_i` and it is compared directly.
pub fn count_smaller_in_cluster(i: usize, c: &Cluster, lce: &LceIndex) -> Result<usize> {
    let k = lce.k();
    if lce.lcp(i, c.first)? < k {
        return Err(Error::Precondition(format!(
            "suffix {i} does not share the word of cluster at {}",
            c.first
        )));
    }
    let p = c.period;
    let m_i = run_extent_from(i, p, lce)?;
    let base = c.run_end + 1 - c.first;

    // Members with m_t > m_i are t < ceil((base - m_i) / p).
    let (longer, equal) = if base > m_i {
        let d = base - m_i;
        let longer = d.div_ceil(p).min(c.count);
        let equal = (d.is_multiple_of(p) && d / p < c.count).then_some(d / p);
        (longer, equal)
    } else if base == m_i {
        (0, Some(0))
    } else {
        (0, None)
    };
    let shorter = c.count - longer - usize::from(equal.is_some());

    let mut smaller = 0;
    if longer > 0 {
        let rep = c.first;
        let ours = lce.sym(i + m_i);
        let theirs = lce.sym(rep + m_i);
        match theirs.cmp(&ours) {
            Ordering::Less => smaller += longer,
            Ordering::Greater => {}
            Ordering::Equal => {
                return Err(Error::Guard(format!(
                    "no mismatch at run end for {i} against {rep} (p={p})"
                )))
            }
        }
    }
    if shorter > 0 {
        let rep_t = c.count - 1;
        let m_t = base - rep_t * p;
        let theirs = lce.sym(c.run_end + 1);
        let ours = lce.sym(i + m_t);
        match theirs.cmp(&ours) {
            Ordering::Less => smaller += shorter,
            Ordering::Greater => {}
            Ordering::Equal => {
                return Err(Error::Guard(format!(
                    "no mismatch at run end {} for {i} (p={p})",
                    c.run_end
                )))
            }
        }
    }
    if let Some(t) = equal {
        let j = c.member(t);
        if j != i && lce.compare_suffixes(j, i)? == Ordering::Less {
            smaller += 1;
        }
    }
    Ok(smaller)
}

/// Outcome of splitting an element around a pivot suffix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PivotSplit {
    pub smaller_count: usize,
    pub contains_pivot: bool,
    pub smaller: Option<Element>,
    pub larger: Option<Element>,
}

pub fn split_by_pivot(e: &Element, pivot: usize, lce: &LceIndex) -> Result<PivotSplit> {
    match *e {
        Element::Singleton(s) => {
            if s == pivot {
                return Ok(PivotSplit {
                    smaller_count: 0,
                    contains_pivot: true,
                    smaller: None,
                    larger: None,
                });
            }
            let less = lce.compare_suffixes(s, pivot)? == Ordering::Less;
            Ok(PivotSplit {
                smaller_count: usize::from(less),
                contains_pivot: false,
                smaller: less.then_some(*e),
                larger: (!less).then_some(*e),
            })
        }
        Element::Cluster(c) => {
            let s = count_smaller_in_cluster(pivot, &c, lce)?;
            let pivot_at = c.index_of(pivot);
            let contains = pivot_at.is_some();
            let rest = c.count - s - usize::from(contains);
            // Monotone members: the smaller ones are a prefix or a suffix.
            let (smaller, larger, expected_at) = match c.direction {
                Direction::Increasing => (c.slice(0, s), c.slice(c.count - rest, rest), s),
                Direction::Decreasing => (c.slice(c.count - s, s), c.slice(0, rest), rest),
            };
            if let Some(t) = pivot_at {
                if t != expected_at {
                    return Err(Error::Guard(format!(
                        "pivot {pivot} sits at index {t} of a monotone cluster, expected {expected_at}"
                    )));
                }
            }
            Ok(PivotSplit {
                smaller_count: s,
                contains_pivot: contains,
                smaller,
                larger,
            })
        }
    }
}
