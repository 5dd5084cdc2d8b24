//! Suffix-array and inverse-suffix-array queries over the k-words tree.
//!
//! `iSA[i]` is the number of far suffixes below `i` (read off the tree) plus
//! the number of close suffixes below `i` (counted over the compressed
//! occurrence set of `i`'s node) plus one.
//!
//! `SA[r]` picks the node through an order-statistics select and then runs a
//! pivot search inside the node: each round sorts one candidate per element
//! (cluster medians and singletons), picks a 1/4-good pivot, ranks it within
//! the remaining set, and keeps the side that holds the target rank.

use std::cmp::Ordering;

use crate::clusters::{count_smaller_in_cluster, decompose, split_by_pivot, ClusterRepr, Element};
use crate::error::{check_pos, check_rank, Error, Result};
use crate::kwords::{KWordsTree, NodeRef};
use crate::lce::LceIndex;

/// Observation hooks for the inner steps of a query. All methods default to
/// no-ops; the test suites use them to audit every intermediate result.
pub trait QueryProbe {
    fn on_decompose(&mut self, _repr: &ClusterRepr) {}
    /// `count` members of `cluster` were reported smaller than suffix `query`.
    fn on_cluster_count(&mut self, _query: usize, _cluster: &crate::clusters::Cluster, _count: usize) {}
    fn on_pivot(&mut self, _elements: &[Element], _pivot: usize) {}
    fn on_round(&mut self, _before: usize, _after: usize) {}
}

/// A probe that ignores everything.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoProbe;

impl QueryProbe for NoProbe {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryBudget {
    /// Upper limit on pivot rounds; `None` derives `ceil(log_{4/3} n) + 8`.
    pub max_pivot_rounds: Option<usize>,
    /// Element sets with at most this many members are sorted outright.
    pub small_set_threshold: usize,
}

impl Default for QueryBudget {
    fn default() -> Self {
        QueryBudget {
            max_pivot_rounds: None,
            small_set_threshold: 32,
        }
    }
}

impl QueryBudget {
    pub fn rounds_for(&self, n: usize) -> usize {
        let floor = ((n.max(2) as f64).ln() / (4.0f64 / 3.0).ln()).ceil() as usize + 8;
        self.max_pivot_rounds.map_or(floor, |m| m.max(floor))
    }
}

/// Read-only query view over a consistent (tree, LCE) pair.
#[derive(Debug, Clone, Copy)]
pub struct SaEngine<'a> {
    tree: &'a KWordsTree,
    lce: &'a LceIndex,
    budget: QueryBudget,
}

impl<'a> SaEngine<'a> {
    pub fn new(tree: &'a KWordsTree, lce: &'a LceIndex, budget: QueryBudget) -> Result<Self> {
        if tree.version() != lce.version() {
            return Err(Error::VersionMismatch {
                expected: lce.version(),
                found: tree.version(),
            });
        }
        Ok(SaEngine { tree, lce, budget })
    }

    pub fn tree(&self) -> &'a KWordsTree {
        self.tree
    }

    pub fn lce(&self) -> &'a LceIndex {
        self.lce
    }

    pub fn len(&self) -> usize {
        self.tree.text_len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn inverse_suffix_array(&self, i: usize) -> Result<usize> {
        self.inverse_suffix_array_with(i, &mut NoProbe)
    }

    pub fn inverse_suffix_array_with(&self, i: usize, probe: &mut dyn QueryProbe) -> Result<usize> {
        check_pos(i, 1, self.len())?;
        let (node, far) = self.tree.find_node_and_far_count(i, self.lce)?;
        let close = self.close_smaller_count_with(i, node, probe)?;
        Ok(far + close + 1)
    }

    /// Suffixes in `node` (other than `i`) that sort below suffix `i`.
    pub fn close_smaller_count(&self, i: usize, node: NodeRef) -> Result<usize> {
        self.close_smaller_count_with(i, node, &mut NoProbe)
    }

    pub fn close_smaller_count_with(
        &self,
        i: usize,
        node: NodeRef,
        probe: &mut dyn QueryProbe,
    ) -> Result<usize> {
        let repr = decompose(self.tree, node, self.lce)?;
        probe.on_decompose(&repr);
        let mut smaller = 0;
        for e in &repr.elements {
            match e {
                Element::Singleton(s) => {
                    if *s != i && self.lce.compare_suffixes(*s, i)? == Ordering::Less {
                        smaller += 1;
                    }
                }
                Element::Cluster(c) => {
                    let cnt = count_smaller_in_cluster(i, c, self.lce)?;
                    probe.on_cluster_count(i, c, cnt);
                    smaller += cnt;
                }
            }
        }
        Ok(smaller)
    }

    pub fn suffix_array(&self, r: usize) -> Result<usize> {
        self.suffix_array_with(r, &mut NoProbe)
    }

    pub fn suffix_array_with(&self, r: usize, probe: &mut dyn QueryProbe) -> Result<usize> {
        check_rank(r, 1, self.len())?;
        let (node, residual) = self.tree.select_node(r)?;
        self.select_in_node_with(node, residual, probe)
    }

    /// Sorts by suffix order, charging one LCE call per comparison.
    fn sort_positions_by<T>(&self, items: &mut [T], pos: impl Fn(&T) -> usize) {
        let mut comparisons = 0u64;
        items.sort_by(|a, b| {
            comparisons += 1;
            self.lce.compare_raw(pos(a), pos(b))
        });
        self.lce.counters().add_lce_calls(comparisons);
    }

    /// A 1/4-good pivot for the members of `elements`.
    pub fn find_pivot(&self, elements: &[Element]) -> Result<usize> {
        if elements.is_empty() {
            return Err(Error::EmptyElements);
        }
        let total: usize = elements.iter().map(Element::size).sum();
        let mut candidates: Vec<(usize, usize)> = elements
            .iter()
            .map(|e| (e.candidate(), e.size().div_ceil(2)))
            .collect();
        self.sort_positions_by(&mut candidates, |c| c.0);
        let mut c = 0;
        for (pos, weight) in candidates {
            c += weight;
            if 4 * c > total {
                return Ok(pos);
            }
        }
        Err(Error::Guard(format!(
            "median weights {c} never exceeded a quarter of {total}"
        )))
    }

    /// The `r`-th smallest suffix among the occurrences of `node`.
    pub fn select_in_node(&self, node: NodeRef, r: usize) -> Result<usize> {
        self.select_in_node_with(node, r, &mut NoProbe)
    }

    pub fn select_in_node_with(
        &self,
        node: NodeRef,
        r: usize,
        probe: &mut dyn QueryProbe,
    ) -> Result<usize> {
        check_rank(r, 1, self.tree.occ_len(node))?;
        let repr = decompose(self.tree, node, self.lce)?;
        probe.on_decompose(&repr);
        let mut elements = repr.elements;
        let mut total = repr.total;
        let mut r = r;
        let max_rounds = self.budget.rounds_for(self.len());
        for _ in 0..max_rounds {
            if total <= self.budget.small_set_threshold {
                let mut members: Vec<usize> = elements.iter().flat_map(|e| e.members()).collect();
                self.sort_positions_by(&mut members, |&m| m);
                return Ok(members[r - 1]);
            }
            let pivot = self.find_pivot(&elements)?;
            probe.on_pivot(&elements, pivot);

            let mut rho = 1;
            let mut smaller = Vec::new();
            let mut larger = Vec::new();
            for e in &elements {
                let split = split_by_pivot(e, pivot, self.lce)?;
                if let Element::Cluster(c) = e {
                    probe.on_cluster_count(pivot, c, split.smaller_count);
                }
                rho += split.smaller_count;
                smaller.extend(split.smaller);
                larger.extend(split.larger);
            }
            let next_total;
            match r.cmp(&rho) {
                Ordering::Equal => return Ok(pivot),
                Ordering::Less => {
                    next_total = rho - 1;
                    elements = smaller;
                }
                Ordering::Greater => {
                    next_total = total - rho;
                    elements = larger;
                    r -= rho;
                }
            }
            probe.on_round(total, next_total);
            total = next_total;
            if elements.iter().map(Element::size).sum::<usize>() != total {
                return Err(Error::Guard("pivot split lost members".into()));
            }
        }
        Err(Error::Guard(format!(
            "pivot search exceeded {max_rounds} rounds"
        )))
    }
}
