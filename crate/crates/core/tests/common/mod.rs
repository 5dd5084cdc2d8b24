#![allow(dead_code)]

use std::collections::BTreeMap;

use dynsa::clusters::{Cluster, ClusterRepr, Direction, Element};
use dynsa::oracle::{inverse, OracleSnapshot};
use dynsa::{DynamicSuffixArray, QueryProbe};
use rand::Rng;

pub fn unary(n: usize) -> Vec<u8> {
    vec![b'a'; n]
}

pub fn alternating(n: usize) -> Vec<u8> {
    (0..n).map(|i| if i % 2 == 0 { b'a' } else { b'b' }).collect()
}

pub fn fibonacci(n: usize) -> Vec<u8> {
    let (mut prev, mut cur) = (b"a".to_vec(), b"ab".to_vec());
    while cur.len() < n {
        let next = [cur.as_slice(), prev.as_slice()].concat();
        prev = cur;
        cur = next;
    }
    cur.truncate(n);
    cur
}

pub fn thue_morse(n: usize) -> Vec<u8> {
    (0..n)
        .map(|i: usize| if i.count_ones().is_multiple_of(2) { b'a' } else { b'b' })
        .collect()
}

pub fn adversarial_texts(n: usize) -> Vec<(&'static str, Vec<u8>)> {
    vec![
        ("a^n", unary(n)),
        ("(ab)^(n/2)", alternating(n)),
        ("fibonacci", fibonacci(n)),
        ("thue-morse", thue_morse(n)),
    ]
}

pub fn random_text(rng: &mut impl Rng, n: usize, sigma: u8) -> Vec<u8> {
    (0..n).map(|_| b'a' + rng.gen_range(0..sigma)).collect()
}

/// Per-criterion failure log.
#[derive(Debug, Default)]
pub struct Findings {
    failures: BTreeMap<u32, (usize, Vec<String>)>,
}

impl Findings {
    pub fn fail(&mut self, criterion: u32, msg: impl FnOnce() -> String) {
        let entry = self.failures.entry(criterion).or_default();
        entry.0 += 1;
        if entry.1.len() < 3 {
            entry.1.push(msg());
        }
    }

    pub fn count(&self, criterion: u32) -> usize {
        self.failures.get(&criterion).map_or(0, |e| e.0)
    }

    pub fn examples(&self, criterion: u32) -> Vec<String> {
        self.failures
            .get(&criterion)
            .map(|e| e.1.clone())
            .unwrap_or_default()
    }

    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn absorb(&mut self, other: Findings) {
        for (criterion, (count, examples)) in other.failures {
            let entry = self.failures.entry(criterion).or_default();
            entry.0 += count;
            for e in examples {
                if entry.1.len() < 3 {
                    entry.1.push(e);
                }
            }
        }
    }
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct AuditCounts {
    pub decompositions: u64,
    pub cluster_counts: u64,
    pub clusters_seen: u64,
    pub pivots: u64,
    pub rounds: u64,
}

impl std::ops::AddAssign for AuditCounts {
    fn add_assign(&mut self, o: Self) {
        self.decompositions += o.decompositions;
        self.cluster_counts += o.cluster_counts;
        self.clusters_seen += o.clusters_seen;
        self.pivots += o.pivots;
        self.rounds += o.rounds;
    }
}

/// Checks every intermediate result of a query against oracle ranks.
pub struct Auditor<'a> {
    ranks: Vec<usize>,
    classes: Vec<usize>,
    members: Vec<Vec<usize>>,
    n: usize,
    k: usize,
    pub counts: AuditCounts,
    pub findings: &'a mut Findings,
}

impl<'a> Auditor<'a> {
    pub fn new(oracle: &OracleSnapshot, k: usize, findings: &'a mut Findings) -> Self {
        let sa = oracle.suffix_array();
        let ranks = inverse(&sa).unwrap();
        let classes = oracle.kword_classes(k);
        let mut members = vec![Vec::new(); classes.iter().max().map_or(0, |m| m + 1)];
        for (idx, &c) in classes.iter().enumerate() {
            members[c].push(idx + 1);
        }
        Auditor {
            ranks,
            classes,
            members,
            n: oracle.len(),
            k,
            counts: AuditCounts::default(),
            findings,
        }
    }

    fn rank(&self, p: usize) -> usize {
        self.ranks[p - 1]
    }

    fn check_cluster_shape(&mut self, c: &Cluster) {
        let k = self.k;
        if 2 * c.period >= k || c.last() + k - 1 > c.run_end || c.run_end > self.n {
            let c = *c;
            self.findings
                .fail(3, || format!("cluster shape violated: {c:?} (k={k})"));
        }
        let ranks: Vec<usize> = (0..c.count).map(|t| self.rank(c.member(t))).collect();
        let monotone = match c.direction {
            Direction::Increasing => ranks.windows(2).all(|w| w[0] < w[1]),
            Direction::Decreasing => ranks.windows(2).all(|w| w[0] > w[1]),
        };
        if !monotone {
            let c = *c;
            self.findings
                .fail(3, || format!("cluster not monotone: {c:?}, ranks {ranks:?}"));
        }
    }
}

impl QueryProbe for Auditor<'_> {
    fn on_decompose(&mut self, repr: &ClusterRepr) {
        self.counts.decompositions += 1;
        let bound = ClusterRepr::size_bound(self.n, self.k);
        if repr.elements.len() > bound {
            let (len, n, k) = (repr.elements.len(), self.n, self.k);
            self.findings
                .fail(4, || format!("{len} elements exceed bound {bound} (n={n}, k={k})"));
        }
        let mut flat = repr.members();
        flat.sort_unstable();
        let class = self.classes[repr.elements[0].smallest() - 1];
        if flat != self.members[class] || repr.total != flat.len() {
            let expected = self.members[class].clone();
            self.findings.fail(4, || {
                format!("membership {flat:?} differs from occurrence set {expected:?}")
            });
        }
        let half_k = self.k.div_ceil(2);
        for w in repr.elements.windows(2) {
            if w[1].smallest() < w[0].largest() + half_k {
                let (a, b) = (w[0], w[1]);
                self.findings
                    .fail(4, || format!("elements {a:?} and {b:?} closer than ceil(k/2)"));
            }
        }
        for e in &repr.elements {
            if let Element::Cluster(c) = e {
                self.counts.clusters_seen += 1;
                self.check_cluster_shape(c);
            }
        }
    }

    fn on_cluster_count(&mut self, query: usize, cluster: &Cluster, count: usize) {
        self.counts.cluster_counts += 1;
        let rq = self.rank(query);
        let brute = (0..cluster.count)
            .map(|t| cluster.member(t))
            .filter(|&j| j != query && self.rank(j) < rq)
            .count();
        if brute != count {
            let c = *cluster;
            self.findings.fail(6, || {
                format!("cluster {c:?} vs query {query}: counted {count}, brute force {brute}")
            });
        }
    }

    fn on_pivot(&mut self, elements: &[Element], pivot: usize) {
        self.counts.pivots += 1;
        let rp = self.rank(pivot);
        let all: Vec<usize> = elements.iter().flat_map(|e| e.members()).collect();
        let s = all.len();
        let le = all.iter().filter(|&&m| self.rank(m) <= rp).count();
        let ge = all.iter().filter(|&&m| self.rank(m) >= rp).count();
        let need = s.div_ceil(4);
        if !all.contains(&pivot) || le < need || ge < need {
            self.findings.fail(5, || {
                format!("pivot {pivot} not 1/4-good: {le} <= / {ge} >= of {s}")
            });
        }
    }

    fn on_round(&mut self, before: usize, after: usize) {
        self.counts.rounds += 1;
        // after <= 3/4 * before + 1
        if 4 * after > 3 * before + 4 {
            self.findings
                .fail(5, || format!("round kept {after} of {before} members"));
        }
    }
}

/// Extracts SA and iSA through audited queries and compares them with the
/// oracle. Returns the number of mismatching entries (criterion 1) and
/// round-trip failures (criterion 2) via `findings`.
pub fn check_full_arrays(
    index: &DynamicSuffixArray,
    oracle: &OracleSnapshot,
    findings: &mut Findings,
    label: &str,
) -> AuditCounts {
    let n = index.len();
    let expected_sa = oracle.suffix_array();
    let expected_isa = inverse(&expected_sa).unwrap();
    let mut auditor = Auditor::new(oracle, index.k(), findings);
    let engine = index.engine();
    let mut sa = Vec::with_capacity(n);
    for r in 1..=n {
        match engine.suffix_array_with(r, &mut auditor) {
            Ok(p) => sa.push(p),
            Err(e) => {
                auditor
                    .findings
                    .fail(1, || format!("{label}: SA[{r}] errored: {e}"));
                sa.push(0);
            }
        }
    }
    let mut isa = Vec::with_capacity(n);
    for i in 1..=n {
        match engine.inverse_suffix_array_with(i, &mut auditor) {
            Ok(r) => isa.push(r),
            Err(e) => {
                auditor
                    .findings
                    .fail(1, || format!("{label}: iSA[{i}] errored: {e}"));
                isa.push(0);
            }
        }
    }
    let counts = auditor.counts;
    if sa != expected_sa || isa != expected_isa {
        findings.fail(1, || {
            let r = (0..n).find(|&r| sa[r] != expected_sa[r]);
            let i = (0..n).find(|&i| isa[i] != expected_isa[i]);
            format!(
                "{label}: SA/iSA mismatch (first SA rank {:?}, first iSA pos {:?}) on {:?}",
                r.map(|r| r + 1),
                i.map(|i| i + 1),
                String::from_utf8_lossy(oracle.bytes())
            )
        });
    }
    for r in 1..=n {
        let p = sa[r - 1];
        if p == 0 || p > n || isa[p - 1] != r {
            findings.fail(2, || format!("{label}: iSA[SA[{r}]] != {r}"));
            break;
        }
    }
    for i in 1..=n {
        let r = isa[i - 1];
        if r == 0 || r > n || sa[r - 1] != i {
            findings.fail(2, || format!("{label}: SA[iSA[{i}]] != {i}"));
            break;
        }
    }
    counts
}
