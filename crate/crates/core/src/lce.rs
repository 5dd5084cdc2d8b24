//! Dynamic longest-common-extension queries over the padded text.
//!
//! Two polynomial fingerprints modulo the Mersenne prime 2^61 - 1, with
//! independently drawn bases, are kept in Fenwick trees of prefix sums.
//! A range comparison is accepted as equal only when both fingerprints agree.
//! An update touches `O(log n)` cells; `lcp`/`lcs` gallop and then binary
//! search over range comparisons, `O(log^2 n)` per query.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_pos, Error, Result};
use crate::text::{ChangeRecord, DynamicText, Symbol};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed_d15a_0001;

const MODULUS: u64 = (1 << 61) - 1;

// Matches shorter than this are resolved by a direct scan.
const SCAN_PREFIX: usize = 8;

fn mul_mod(a: u64, b: u64) -> u64 {
    let prod = a as u128 * b as u128;
    let lo = (prod as u64) & MODULUS;
    let hi = (prod >> 61) as u64;
    let s = lo + hi;
    if s >= MODULUS {
        s - MODULUS
    } else {
        s
    }
}

fn add_mod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= MODULUS {
        s - MODULUS
    } else {
        s
    }
}

fn sub_mod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + MODULUS - b
    }
}

fn symbol_value(s: Symbol) -> u64 {
    s.ordinal() as u64 + 1
}

/// Operation counters shared by every component that works off an [`LceIndex`].
#[derive(Debug, Default)]
pub struct InstrumentationCounters {
    lce_calls: AtomicU64,
    tree_node_visits: AtomicU64,
    elements_scanned: AtomicU64,
    fingerprint_disagreements: AtomicU64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CounterSnapshot {
    pub lce_calls: u64,
    pub tree_node_visits: u64,
    pub elements_scanned: u64,
    pub fingerprint_disagreements: u64,
}

impl std::ops::Sub for CounterSnapshot {
    type Output = CounterSnapshot;

    fn sub(self, rhs: Self) -> Self {
        CounterSnapshot {
            lce_calls: self.lce_calls - rhs.lce_calls,
            tree_node_visits: self.tree_node_visits - rhs.tree_node_visits,
            elements_scanned: self.elements_scanned - rhs.elements_scanned,
            fingerprint_disagreements: self.fingerprint_disagreements
                - rhs.fingerprint_disagreements,
        }
    }
}

impl InstrumentationCounters {
    pub fn snapshot(&self) -> CounterSnapshot {
        CounterSnapshot {
            lce_calls: self.lce_calls.load(AtomicOrdering::Relaxed),
            tree_node_visits: self.tree_node_visits.load(AtomicOrdering::Relaxed),
            elements_scanned: self.elements_scanned.load(AtomicOrdering::Relaxed),
            fingerprint_disagreements: self.fingerprint_disagreements.load(AtomicOrdering::Relaxed),
        }
    }

    pub fn reset(&self) {
        self.lce_calls.store(0, AtomicOrdering::Relaxed);
        self.tree_node_visits.store(0, AtomicOrdering::Relaxed);
        self.elements_scanned.store(0, AtomicOrdering::Relaxed);
        self.fingerprint_disagreements.store(0, AtomicOrdering::Relaxed);
    }

    pub(crate) fn add_lce_calls(&self, v: u64) {
        self.lce_calls.fetch_add(v, AtomicOrdering::Relaxed);
    }

    pub(crate) fn add_node_visits(&self, v: u64) {
        self.tree_node_visits.fetch_add(v, AtomicOrdering::Relaxed);
    }

    pub(crate) fn add_elements_scanned(&self, v: u64) {
        self.elements_scanned.fetch_add(v, AtomicOrdering::Relaxed);
    }

    fn add_disagreement(&self) {
        self.fingerprint_disagreements.fetch_add(1, AtomicOrdering::Relaxed);
    }
}

/// Fenwick tree of `value(t) * base^t` over positions `1..=len`.
#[derive(Debug, Clone)]
struct Fingerprint {
    base: u64,
    powers: Vec<u64>,
    tree: Vec<u64>,
}

impl Fingerprint {
    fn new(base: u64, symbols: &[Symbol]) -> Self {
        let len = symbols.len();
        let mut powers = Vec::with_capacity(len + 1);
        let mut p = 1u64;
        for _ in 0..=len {
            powers.push(p);
            p = mul_mod(p, base);
        }
        // Linear-time Fenwick construction.
        let mut tree = vec![0u64; len + 1];
        for (idx, &s) in symbols.iter().enumerate() {
            let t = idx + 1;
            tree[t] = add_mod(tree[t], mul_mod(symbol_value(s), powers[t]));
            let parent = t + (t & t.wrapping_neg());
            if parent <= len {
                tree[parent] = add_mod(tree[parent], tree[t]);
            }
        }
        Fingerprint { base, powers, tree }
    }

    fn add(&mut self, pos: usize, delta: u64) {
        let mut t = pos;
        while t < self.tree.len() {
            self.tree[t] = add_mod(self.tree[t], delta);
            t += t & t.wrapping_neg();
        }
    }

    fn prefix(&self, pos: usize) -> u64 {
        let mut acc = 0;
        let mut t = pos;
        while t > 0 {
            acc = add_mod(acc, self.tree[t]);
            t &= t - 1;
        }
        acc
    }

    /// Compares `[a, a+len)` and `[b, b+len)` without modular inverses:
    /// `H(a) * base^b == H(b) * base^a`.
    fn ranges_equal(&self, a: usize, b: usize, len: usize) -> bool {
        let ha = sub_mod(self.prefix(a + len - 1), self.prefix(a - 1));
        let hb = sub_mod(self.prefix(b + len - 1), self.prefix(b - 1));
        mul_mod(ha, self.powers[b]) == mul_mod(hb, self.powers[a])
    }
}

/// Result of comparing a suffix against a finite window of the text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowOrder {
    /// The suffix sorts before the window.
    Less,
    /// The window is a prefix of the suffix.
    Prefix,
    /// The suffix sorts after the window and does not start with it.
    Greater,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowMatch {
    pub order: WindowOrder,
    pub matched_len: usize,
}

#[derive(Debug)]
pub struct LceIndex {
    symbols: Vec<Symbol>,
    n: usize,
    fingerprints: [Fingerprint; 2],
    version: u64,
    counters: InstrumentationCounters,
}

impl LceIndex {
    pub fn new(text: &DynamicText) -> Self {
        Self::with_seed(text, DEFAULT_SEED)
    }

    pub fn with_seed(text: &DynamicText, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let symbols = text.padded().to_vec();
        let b1 = rng.gen_range(1u64 << 20..MODULUS - 1);
        let mut b2 = rng.gen_range(1u64 << 20..MODULUS - 1);
        while b2 == b1 {
            b2 = rng.gen_range(1u64 << 20..MODULUS - 1);
        }
        let fingerprints = [Fingerprint::new(b1, &symbols), Fingerprint::new(b2, &symbols)];
        LceIndex {
            n: text.len(),
            symbols,
            fingerprints,
            version: text.version(),
            counters: InstrumentationCounters::default(),
        }
    }

    pub fn text_len(&self) -> usize {
        self.n
    }

    pub fn padded_len(&self) -> usize {
        self.symbols.len()
    }

    pub fn k(&self) -> usize {
        self.symbols.len() - self.n
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn bases(&self) -> (u64, u64) {
        (self.fingerprints[0].base, self.fingerprints[1].base)
    }

    pub fn counters(&self) -> &InstrumentationCounters {
        &self.counters
    }

    /// Symbol at a 1-based padded position. Panics outside `1..=n+k`.
    #[inline]
    pub fn sym(&self, pos: usize) -> Symbol {
        self.symbols[pos - 1]
    }

    fn ranges_equal(&self, a: usize, b: usize, len: usize) -> bool {
        self.counters.add_node_visits(1);
        let first = self.fingerprints[0].ranges_equal(a, b, len);
        let second = self.fingerprints[1].ranges_equal(a, b, len);
        if first != second {
            self.counters.add_disagreement();
        }
        first && second
    }

    /// Longest `l <= cap` with `eq(l)` true, where `eq` is monotone and
    /// `step(t)` compares the single pair at offset `t`.
    fn extend(
        &self,
        cap: usize,
        step: impl Fn(usize) -> bool,
        chunk_equal: impl Fn(usize, usize) -> bool,
    ) -> usize {
        let mut len = 0;
        while len < cap && len < SCAN_PREFIX {
            if !step(len) {
                return len;
            }
            len += 1;
        }
        if len == cap {
            return cap;
        }
        // Gallop from the scanned prefix, then binary search.
        let mut lo = len;
        let mut stride = len.max(1);
        let hi;
        loop {
            let probe = (lo + stride).min(cap);
            if chunk_equal(lo, probe - lo) {
                lo = probe;
                if lo == cap {
                    return cap;
                }
                stride *= 2;
            } else {
                hi = probe;
                break;
            }
        }
        let (mut lo, mut hi) = (lo, hi);
        while hi - lo > SCAN_PREFIX {
            let mid = lo + (hi - lo) / 2;
            if chunk_equal(lo, mid - lo) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        while lo < hi && step(lo) {
            lo += 1;
        }
        lo
    }

    pub(crate) fn lcp_raw(&self, i: usize, j: usize) -> usize {
        let cap = self.symbols.len() + 1 - i.max(j);
        if i == j {
            return cap;
        }
        self.extend(
            cap,
            |t| self.symbols[i + t - 1] == self.symbols[j + t - 1],
            |off, len| self.ranges_equal(i + off, j + off, len),
        )
    }

    fn lcs_raw(&self, i: usize, j: usize) -> usize {
        let cap = i.min(j);
        if i == j {
            return cap;
        }
        self.extend(
            cap,
            |t| self.symbols[i - t - 1] == self.symbols[j - t - 1],
            |off, len| self.ranges_equal(i - off - len + 1, j - off - len + 1, len),
        )
    }

    pub(crate) fn compare_raw(&self, i: usize, j: usize) -> Ordering {
        if i == j {
            return Ordering::Equal;
        }
        let l = self.lcp_raw(i, j);
        // Distinct suffixes of the padded text mismatch before either ends.
        self.sym(i + l).cmp(&self.sym(j + l))
    }

    /// Longest common prefix of the padded suffixes at `i` and `j`,
    /// capped at the end of the padded text.
    pub fn lcp(&self, i: usize, j: usize) -> Result<usize> {
        let hi = self.padded_len();
        check_pos(i, 1, hi)?;
        check_pos(j, 1, hi)?;
        self.counters.add_lce_calls(1);
        Ok(self.lcp_raw(i, j))
    }

    /// Longest common suffix of the prefixes ending at `i` and `j`.
    pub fn lcs(&self, i: usize, j: usize) -> Result<usize> {
        check_pos(i, 1, self.n)?;
        check_pos(j, 1, self.n)?;
        self.counters.add_lce_calls(1);
        Ok(self.lcs_raw(i, j))
    }

    pub fn compare_suffixes(&self, i: usize, j: usize) -> Result<Ordering> {
        check_pos(i, 1, self.n)?;
        check_pos(j, 1, self.n)?;
        self.counters.add_lce_calls(1);
        Ok(self.compare_raw(i, j))
    }

    /// Compares the padded suffix at `i` with the window `S[w_start..=w_end]`.
    pub fn compare_suffix_with_window(
        &self,
        i: usize,
        w_start: usize,
        w_end: usize,
    ) -> Result<WindowMatch> {
        check_pos(i, 1, self.n)?;
        check_pos(w_start, 1, self.n)?;
        check_pos(w_end, w_start, self.n)?;
        self.counters.add_lce_calls(1);
        let wlen = w_end - w_start + 1;
        let l = self.lcp_raw(i, w_start).min(wlen);
        if l == wlen {
            return Ok(WindowMatch {
                order: WindowOrder::Prefix,
                matched_len: l,
            });
        }
        let order = match self.sym(i + l).cmp(&self.sym(w_start + l)) {
            Ordering::Less => WindowOrder::Less,
            _ => WindowOrder::Greater,
        };
        Ok(WindowMatch {
            order,
            matched_len: l,
        })
    }

    pub fn apply_change(&mut self, change: &ChangeRecord) -> Result<()> {
        if change.version != self.version + 1 {
            return Err(Error::VersionMismatch {
                expected: change.version,
                found: self.version,
            });
        }
        check_pos(change.pos, 1, self.n)?;
        let current = self.symbols[change.pos - 1];
        if current != change.old {
            return Err(Error::Precondition(format!(
                "change at {} expects old symbol {} but index holds {}",
                change.pos, change.old, current
            )));
        }
        let old_v = symbol_value(change.old);
        let new_v = symbol_value(change.new);
        for fp in &mut self.fingerprints {
            let delta = mul_mod(sub_mod(new_v, old_v), fp.powers[change.pos]);
            fp.add(change.pos, delta);
        }
        self.symbols[change.pos - 1] = change.new;
        self.version = change.version;
        Ok(())
    }
}
